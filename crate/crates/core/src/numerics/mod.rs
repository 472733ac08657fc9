//! Adaptive quadrature and bracketed root finding.

mod quadrature;
mod roots;

pub use quadrature::{integrate_adaptive, integrate_clustered, QuadratureResult, DEFAULT_REL_TOL, SCAN_REL_TOL};
pub use roots::{find_root_bracketed, scan_sign_changes, Bracket, SignScan, DEFAULT_X_TOL};
pub(crate) use roots::scan_values;
