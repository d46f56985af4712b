//! JSON scan configuration; keys mirror the `scan` flags.

use std::path::Path;

use gini_core::Interval;
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RangeValue {
    Text(String),
    Pair([f64; 2]),
}

impl RangeValue {
    pub fn to_interval(&self) -> Result<Interval, String> {
        match self {
            RangeValue::Text(t) => t.parse().map_err(|e: gini_core::GiniError| e.to_string()),
            RangeValue::Pair([lo, hi]) => {
                if lo <= hi && lo.is_finite() && hi.is_finite() {
                    Ok(Interval::new(*lo, *hi))
                } else {
                    Err(format!("invalid range [{lo}, {hi}]"))
                }
            }
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub struct ScanFile {
    pub property: Option<String>,
    #[serde(alias = "r-range")]
    pub r_range: Option<RangeValue>,
    #[serde(alias = "s-range")]
    pub s_range: Option<RangeValue>,
    #[serde(alias = "x-range")]
    pub x_range: Option<RangeValue>,
    #[serde(alias = "y-range")]
    pub y_range: Option<RangeValue>,
    #[serde(alias = "t-range")]
    pub t_range: Option<RangeValue>,
    pub grid: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    #[serde(alias = "boundary-band")]
    pub boundary_band: Option<f64>,
    #[serde(alias = "sign-tol")]
    pub sign_tol: Option<f64>,
    pub h: Option<f64>,
    pub threads: Option<usize>,
    #[serde(alias = "near-equal-rel-tol")]
    pub near_equal_rel_tol: Option<f64>,
    #[serde(alias = "exp-saturation")]
    pub exp_saturation: Option<f64>,
    #[serde(alias = "quad-tol")]
    pub quad_tol: Option<f64>,
}

impl ScanFile {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }
}
