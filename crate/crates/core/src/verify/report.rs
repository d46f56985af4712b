use serde::{Deserialize, Serialize};

/// Coordinates of a sample. `r2`/`s2` carry the second parameter point of
/// two-point predicates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    pub r: f64,
    pub s: f64,
    pub x: f64,
    pub y: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s2: Option<f64>,
}

impl Inputs {
    pub fn new(r: f64, s: f64, x: f64, y: f64) -> Self {
        Self {
            r,
            s,
            x,
            y,
            t: None,
            r2: None,
            s2: None,
        }
    }

    pub fn at(mut self, t: f64) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_second(mut self, r2: f64, s2: f64) -> Self {
        self.r2 = Some(r2);
        self.s2 = Some(s2);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub property_id: String,
    pub inputs: Inputs,
    pub observed: f64,
    pub required: String,
    /// Distance past the tolerance; always positive.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property_id: String,
    /// Sample points at which at least one predicate was asserted.
    pub samples_checked: u64,
    /// Predicate evaluations withheld (boundary bands, out-of-region, saturation).
    pub skipped: u64,
    pub passed: bool,
    /// Set when nothing was asserted; `passed` is then trivially true.
    pub vacuous: bool,
    pub worst_margin: f64,
    pub violations: Vec<Violation>,
}

impl PropertyReport {
    pub(crate) fn from_tally(property_id: &str, tally: Tally) -> Self {
        let worst_margin = tally
            .violations
            .iter()
            .map(|v| v.margin)
            .fold(0.0, f64::max);
        Self {
            property_id: property_id.to_string(),
            samples_checked: tally.checked,
            skipped: tally.skipped,
            passed: tally.violations.is_empty(),
            vacuous: tally.checked == 0,
            worst_margin,
            violations: tally.violations,
        }
    }
}

#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub checked: u64,
    pub skipped: u64,
    pub violations: Vec<Violation>,
}

impl Tally {
    pub fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.violations.extend(other.violations);
    }
}
