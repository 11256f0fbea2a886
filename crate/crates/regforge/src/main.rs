fn main() {
    std::process::exit(regforge::main_with(std::env::args_os()));
}
