use std::fmt;
use std::str::FromStr;

use super::checks::{
    check_integrand_shape, check_thm1, check_thm2_h, check_thm2_k, check_thm3, fd_validate,
    DEFAULT_FD_STEP,
};
use super::report::PropertyReport;
use super::spec::ScanSpec;
use crate::error::{GiniError, Result};
use crate::params::EvalConfig;

/// Registered property checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropertyId {
    Integrand,
    Thm1,
    Thm2H,
    Thm2K,
    Thm3,
    Fd,
}

impl PropertyId {
    pub const ALL: [PropertyId; 6] = [
        PropertyId::Integrand,
        PropertyId::Thm1,
        PropertyId::Thm2H,
        PropertyId::Thm2K,
        PropertyId::Thm3,
        PropertyId::Fd,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PropertyId::Integrand => "integrand",
            PropertyId::Thm1 => "thm1",
            PropertyId::Thm2H => "thm2_h",
            PropertyId::Thm2K => "thm2_k",
            PropertyId::Thm3 => "thm3",
            PropertyId::Fd => "fd",
        }
    }

    pub fn run(&self, spec: &ScanSpec, cfg: &EvalConfig) -> Result<PropertyReport> {
        match self {
            PropertyId::Integrand => check_integrand_shape(spec, cfg),
            PropertyId::Thm1 => check_thm1(spec, cfg),
            PropertyId::Thm2H => check_thm2_h(spec, cfg),
            PropertyId::Thm2K => check_thm2_k(spec, cfg),
            PropertyId::Thm3 => check_thm3(spec, cfg),
            PropertyId::Fd => fd_validate(spec, cfg, DEFAULT_FD_STEP),
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Accepts `thm2_h` and `thm2-h` spellings.
impl FromStr for PropertyId {
    type Err = GiniError;

    fn from_str(name: &str) -> Result<Self> {
        let normalized = name.replace('-', "_");
        PropertyId::ALL
            .into_iter()
            .find(|p| p.as_str() == normalized)
            .ok_or_else(|| GiniError::UnknownProperty(name.to_string()))
    }
}

/// Runs the named check over the grid plus `random_samples` seeded draws.
pub fn counterexample_search(
    property_id: &str,
    spec: &ScanSpec,
    cfg: &EvalConfig,
) -> Result<PropertyReport> {
    property_id.parse::<PropertyId>()?.run(spec, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in PropertyId::ALL {
            assert_eq!(p.as_str().parse::<PropertyId>().unwrap(), p);
        }
        assert_eq!("thm2-k".parse::<PropertyId>().unwrap(), PropertyId::Thm2K);
        assert!(matches!(
            "no_such".parse::<PropertyId>(),
            Err(GiniError::UnknownProperty(_))
        ));
    }
}
