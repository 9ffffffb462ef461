//! Quadrature, special functions and root finding.

mod quadrature;
mod roots;
mod special;
pub mod poly;

pub use quadrature::{
    integrate, integrate_quartic_weight, integrate_singular, integrate_singular_with_budget, Endpoint,
    QuadratureResult, SingularitySpec, DEFAULT_BUDGET, DEFAULT_TOL,
};
pub use roots::{find_root, Bracket};
pub use special::{beta, gamma};
