//! Argument types shared by every kernel.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, GiniError, Result};

/// The two positive variables of the mean, stored with their logarithms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivePair {
    x: f64,
    y: f64,
    log_x: f64,
    log_y: f64,
    log_ratio: f64,
}

impl PositivePair {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        for (name, v) in [("x", x), ("y", y)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(GiniError::Domain(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        let log_x = x.ln();
        let log_y = y.ln();
        Ok(Self {
            x,
            y,
            log_x,
            log_y,
            log_ratio: log_x - log_y,
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn log_x(&self) -> f64 {
        self.log_x
    }

    pub fn log_y(&self) -> f64 {
        self.log_y
    }

    /// `ln x - ln y`; zero exactly when `x == y`.
    pub fn log_ratio(&self) -> f64 {
        self.log_ratio
    }

    pub fn is_degenerate(&self) -> bool {
        self.log_ratio == 0.0
    }

    pub fn swapped(&self) -> Self {
        Self {
            x: self.y,
            y: self.x,
            log_x: self.log_y,
            log_y: self.log_x,
            log_ratio: -self.log_ratio,
        }
    }

    /// Orientation with the larger logarithm first: `(log_hi, log_lo, |L|)`.
    ///
    /// Every kernel is symmetric in `x <-> y`, so evaluating through this
    /// view makes the swap symmetry hold bit-for-bit.
    pub(crate) fn oriented(&self) -> (f64, f64, f64) {
        if self.log_ratio >= 0.0 {
            (self.log_x, self.log_y, self.log_ratio)
        } else {
            (self.log_y, self.log_x, -self.log_ratio)
        }
    }
}

/// Exponent parameters `(r, s)`; no ordering is required.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamPair {
    pub r: f64,
    pub s: f64,
}

impl ParamPair {
    pub fn new(r: f64, s: f64) -> Result<Self> {
        ensure_finite("r", r)?;
        ensure_finite("s", s)?;
        Ok(Self { r, s })
    }

    pub fn swapped(&self) -> Self {
        Self {
            r: self.s,
            s: self.r,
        }
    }

    pub fn shifted(&self, t: f64) -> Self {
        Self {
            r: self.r + t,
            s: self.s + t,
        }
    }

    pub fn sum(&self) -> f64 {
        self.r + self.s
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.r + self.s)
    }

    pub(crate) fn check(&self) -> Result<()> {
        ensure_finite("r", self.r)?;
        ensure_finite("s", self.s)
    }
}

/// Numerical policy knobs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalConfig {
    /// Relative threshold on `|s - r|` below which the midpoint Taylor branch is used.
    pub near_equal_rel_tol: f64,
    /// `|u L|` beyond which the logistic weight is exactly 0 or 1.
    pub exp_saturation: f64,
    /// Absolute tolerance of the quadrature oracle.
    pub quad_tol: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            near_equal_rel_tol: 1e-8,
            exp_saturation: 745.0,
            quad_tol: 1e-12,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("near_equal_rel_tol", self.near_equal_rel_tol),
            ("exp_saturation", self.exp_saturation),
            ("quad_tol", self.quad_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(GiniError::InvalidConfig(format!(
                    "{name} must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Whether `(r, s)` falls in the near-equal branch.
    pub fn is_near_equal(&self, params: &ParamPair) -> bool {
        let gap = (params.s - params.r).abs();
        gap <= self.near_equal_rel_tol * (params.r.abs() + params.s.abs()).max(1.0)
    }
}
