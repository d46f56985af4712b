//! Gini (sum) means `G(r, s; x, y)` with stable log-space evaluation, the
//! shifted family `H(t) = G(r + t, s + t)`, the product `K(t) = H(t) H(-t)`,
//! and a verifier that checks their monotonicity and log-convexity
//! properties over sampled parameter regions.

pub mod error;
pub mod extended;
pub mod gini;
pub mod kernels;
pub mod params;
pub mod quadrature;
pub mod verify;

pub use error::{GiniError, Result};
pub use gini::{d1_ln_k, d2_t_ln_h, gini_mean, h_jet, k_value, ln_gini, ln_k, HJet};
pub use kernels::{weighted_log_mean, weighted_log_mean_d1, weighted_log_mean_d2, Integrand};
pub use params::{EvalConfig, ParamPair, PositivePair};
pub use quadrature::{adaptive_simpson, ln_gini_quadrature};
pub use verify::{
    check_integrand_shape, check_thm1, check_thm2_h, check_thm2_k, check_thm3,
    counterexample_search, fd_validate, Inputs, Interval, PropertyId, PropertyReport, ScanSpec,
    Violation,
};
