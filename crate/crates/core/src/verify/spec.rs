use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GiniError, Result};

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    fn check(&self, name: &str) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite()) {
            return Err(GiniError::InvalidSpec(format!(
                "{name} bounds must be finite"
            )));
        }
        if self.lo > self.hi {
            return Err(GiniError::InvalidSpec(format!(
                "{name} lower bound {} exceeds upper bound {}",
                self.lo, self.hi
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

/// Parses the `a:b` range syntax (plain decimal literals, no expressions).
impl FromStr for Interval {
    type Err = GiniError;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || GiniError::InvalidSpec(format!("expected a range `a:b`, got `{text}`"));
        let (a, b) = text.split_once(':').ok_or_else(bad)?;
        let lo: f64 = a.trim().parse().map_err(|_| bad())?;
        let hi: f64 = b.trim().parse().map_err(|_| bad())?;
        let iv = Interval { lo, hi };
        iv.check("range")?;
        Ok(iv)
    }
}

/// Sampling region and budget for a property scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub r_range: Interval,
    pub s_range: Interval,
    pub x_range: Interval,
    pub y_range: Interval,
    pub t_range: Interval,
    pub grid_points_per_axis: usize,
    pub random_samples: usize,
    pub seed: u64,
    /// Half-width of the band excluded around sign-change loci.
    pub boundary_band: f64,
    /// Slack on sign assertions.
    pub sign_tol: f64,
}

impl Default for ScanSpec {
    fn default() -> Self {
        Self {
            r_range: Interval::new(-5.0, 5.0),
            s_range: Interval::new(-5.0, 5.0),
            x_range: Interval::new(0.1, 10.0),
            y_range: Interval::new(0.1, 10.0),
            t_range: Interval::new(-8.0, 8.0),
            grid_points_per_axis: 9,
            random_samples: 1000,
            seed: 0,
            boundary_band: 1e-6,
            sign_tol: 1e-11,
        }
    }
}

impl ScanSpec {
    pub fn validate(&self) -> Result<()> {
        self.r_range.check("r_range")?;
        self.s_range.check("s_range")?;
        self.x_range.check("x_range")?;
        self.y_range.check("y_range")?;
        self.t_range.check("t_range")?;
        if self.x_range.lo <= 0.0 || self.y_range.lo <= 0.0 {
            return Err(GiniError::InvalidSpec(
                "x_range and y_range must lie in (0, inf)".into(),
            ));
        }
        if self.grid_points_per_axis < 2 {
            return Err(GiniError::InvalidSpec(
                "grid_points_per_axis must be at least 2".into(),
            ));
        }
        for (name, v) in [
            ("boundary_band", self.boundary_band),
            ("sign_tol", self.sign_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(GiniError::InvalidSpec(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Every exponent the shifted family touches: `[min(r, s) + t, max(r, s) + t]`.
    pub fn exponent_hull(&self) -> Interval {
        Interval {
            lo: self.r_range.lo.min(self.s_range.lo) + self.t_range.lo,
            hi: self.r_range.hi.max(self.s_range.hi) + self.t_range.hi,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges() {
        assert_eq!(
            "-4:4".parse::<Interval>().unwrap(),
            Interval::new(-4.0, 4.0)
        );
        assert_eq!(
            "0.5:1e1".parse::<Interval>().unwrap(),
            Interval::new(0.5, 10.0)
        );
        assert!("2:-2".parse::<Interval>().is_err());
        assert!("3".parse::<Interval>().is_err());
        assert!("a:b".parse::<Interval>().is_err());
        assert!("1+1:3".parse::<Interval>().is_err());
    }

    #[test]
    fn validates_spec() {
        assert!(ScanSpec::default().validate().is_ok());
        for bad in [
            ScanSpec {
                x_range: Interval::new(0.0, 1.0),
                ..ScanSpec::default()
            },
            ScanSpec {
                grid_points_per_axis: 1,
                ..ScanSpec::default()
            },
            ScanSpec {
                t_range: Interval::new(1.0, -1.0),
                ..ScanSpec::default()
            },
        ] {
            assert!(bad.validate().is_err());
        }
    }
}
