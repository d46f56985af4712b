//! Executable region-wise checks of the monotonicity and logarithmic
//! convexity properties, with finite-difference cross-validation.

mod checks;
mod engine;
mod registry;
mod report;
mod spec;

pub use checks::{
    check_integrand_shape, check_thm1, check_thm2_h, check_thm2_k, check_thm3, fd_validate,
    fd_validate_with, thm3_interval, JetFn, DEFAULT_FD_STEP, FD_SATURATION, FD_TOL, Q_SYMMETRY_TOL,
    XY_IDENTITY_TOL,
};
pub use engine::{run_property, Probe, Sampler};
pub use registry::{counterexample_search, PropertyId};
pub use report::{Inputs, PropertyReport, Violation};
pub use spec::{Interval, ScanSpec};
