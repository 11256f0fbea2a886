//! Exact arithmetic for the Ackermann-scale growth functions.
//!
//! Every quantity is a power of two, an integer a little above one, or the
//! reciprocal of one. [`TowerInt`] stores such values exactly, switching from
//! a big integer to a nested `2^E` form above a fixed bit budget.
//! Values too deep to expand (for example `t(A_3(1))`) become
//! [`GrowthValue::Bounded`], carrying the defining expression and an exact
//! lower bound derived from monotonicity; they are never approximated.

mod functions;
mod tower;
mod verify;

pub use functions::{
    a_fn, a_star, ack, alpha_fn, c_fn, delta_fn, e_fn, f_star, m_fn, t_fn, t_of, GrowthValue, A_CAP, DEPTH_CAP,
    ITER_CAP, T_CAP,
};
pub use tower::{TowerInt, BUDGET_BITS};
pub use verify::{verify_inequalities, CheckStatus, InequalityCheck, InequalityReport};
