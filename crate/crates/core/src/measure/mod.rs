//! Numerical certification of the continuous orthogonality of `Q_n`.

mod gamma;
mod ortho;
mod quadrature;

pub use gamma::{complex_from_rational, log_abs_gamma, log_gamma};
pub use ortho::*;
pub use quadrature::{panel_bounds, GaussLegendre};
