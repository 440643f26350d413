//! Offline optima to compare online runs against.

mod integral;
mod lp;

pub use integral::{disjoint_lower_bound, opt_integral, opt_integral_with_cap, INTEGRAL_EDGE_CAP};
pub use lp::{
    opt_fractional, opt_fractional_exact, ExactLpSolution, LpSolution, Scalar, EXACT_EDGE_CAP, LP_EDGE_CAP,
    LP_INCIDENCE_CAP,
};

/// Default optimality tolerance for [`opt_fractional`].
pub const LP_TOL: f64 = 1e-7;
