//! Percolation profiles: empirical `θ(p)`, its pseudo-inverse, the
//! branching-process value for regular graphs, and assumption diagnostics.

mod analytic;
mod isotonic;
mod profile;
mod report;
mod sweep;

pub use analytic::analytic_theta_regular;
pub use isotonic::isotonic_increasing;
pub use profile::{
    default_p_grid, empirical_theta, empirical_theta_with, theta_inverse, ThetaOptions, ThetaProfile, DEFAULT_EPS0,
};
pub use report::{assumption_report, AssumptionEntry, AssumptionReport, SUSPECT_FLOOR};
pub use sweep::largest_two_sweep;
