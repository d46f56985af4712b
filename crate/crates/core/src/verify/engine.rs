//! Grid + seeded random sampling with order-independent merging.
//!
//! Points are numbered canonically (grid first, in row-major order with the
//! last axis fastest, then random draws in generation order). Chunks may be
//! evaluated on any number of threads; their tallies are concatenated in
//! chunk order, so a report never depends on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{Inputs, PropertyReport, Tally, Violation};
use super::spec::Interval;
use crate::error::{GiniError, Result};

const CHUNK: usize = 1024;
const MAX_POINTS: usize = 50_000_000;

pub const MAX_AXES: usize = 8;

/// Sample points over a box: the full grid followed by uniform random draws.
#[derive(Debug, Clone)]
pub struct Sampler {
    axes: Vec<Interval>,
    grid: usize,
    grid_total: usize,
    random: Vec<f64>,
}

impl Sampler {
    pub fn new(axes: &[Interval], grid: usize, random_samples: usize, seed: u64) -> Result<Self> {
        if axes.is_empty() || axes.len() > MAX_AXES {
            return Err(GiniError::InvalidSpec(format!(
                "between 1 and {MAX_AXES} axes required"
            )));
        }
        if grid < 2 {
            return Err(GiniError::InvalidSpec(
                "grid needs at least 2 points per axis".into(),
            ));
        }
        let grid_total = u32::try_from(axes.len())
            .ok()
            .and_then(|k| grid.checked_pow(k))
            .filter(|&n| n.saturating_add(random_samples) <= MAX_POINTS)
            .ok_or_else(|| {
                GiniError::InvalidSpec(format!(
                    "{grid}^{} grid points plus {random_samples} draws exceeds {MAX_POINTS}",
                    axes.len()
                ))
            })?;

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut random = Vec::with_capacity(random_samples * axes.len());
        for _ in 0..random_samples {
            for axis in axes {
                let u: f64 = rng.gen();
                random.push(if axis.lo == axis.hi {
                    axis.lo
                } else {
                    axis.lo + axis.width() * u
                });
            }
        }
        Ok(Self {
            axes: axes.to_vec(),
            grid,
            grid_total,
            random,
        })
    }

    pub fn dims(&self) -> usize {
        self.axes.len()
    }

    pub fn grid_len(&self) -> usize {
        self.grid_total
    }

    pub fn len(&self) -> usize {
        self.grid_total + self.random.len() / self.axes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Writes the coordinates of point `idx` into `out[..dims]`.
    pub fn coords(&self, idx: usize, out: &mut [f64]) {
        let k = self.axes.len();
        if idx < self.grid_total {
            let mut rest = idx;
            for i in (0..k).rev() {
                let j = rest % self.grid;
                rest /= self.grid;
                let axis = self.axes[i];
                out[i] = if j + 1 == self.grid {
                    axis.hi
                } else {
                    axis.lo + axis.width() * (j as f64 / (self.grid - 1) as f64)
                };
            }
        } else {
            let row = idx - self.grid_total;
            out[..k].copy_from_slice(&self.random[row * k..(row + 1) * k]);
        }
    }
}

/// Collects the outcome of every predicate asserted at one sample point.
pub struct Probe<'a> {
    tally: &'a mut Tally,
    asserted: bool,
}

impl Probe<'_> {
    fn record(&mut self, id: &str, inputs: Inputs, observed: f64, required: String, margin: f64) {
        self.tally.violations.push(Violation {
            property_id: id.to_string(),
            inputs,
            observed,
            required,
            margin: if margin.is_nan() {
                f64::INFINITY
            } else {
                margin
            },
        });
    }

    /// Asserts `observed >= bound`.
    pub fn at_least(&mut self, id: &str, inputs: Inputs, observed: f64, bound: f64, what: &str) {
        self.asserted = true;
        // NaN fails the comparison and is recorded as a violation
        if observed.partial_cmp(&bound).is_none_or(|o| o.is_lt()) {
            let margin = bound - observed;
            self.record(id, inputs, observed, format!("{what} >= {bound:e}"), margin);
        }
    }

    /// Asserts `observed <= bound`.
    pub fn at_most(&mut self, id: &str, inputs: Inputs, observed: f64, bound: f64, what: &str) {
        self.asserted = true;
        if observed.partial_cmp(&bound).is_none_or(|o| o.is_gt()) {
            let margin = observed - bound;
            self.record(id, inputs, observed, format!("{what} <= {bound:e}"), margin);
        }
    }

    pub fn skip(&mut self) {
        self.tally.skipped += 1;
    }
}

/// Runs `predicate` on every sample point and merges the results canonically.
pub fn run_property<F>(property_id: &str, sampler: &Sampler, predicate: F) -> PropertyReport
where
    F: Fn(&[f64], &mut Probe<'_>) + Sync,
{
    let n = sampler.len();
    let dims = sampler.dims();
    let chunks = n.div_ceil(CHUNK);
    let partials: Vec<Tally> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut tally = Tally::default();
            let mut coords = [0.0; MAX_AXES];
            for idx in c * CHUNK..((c + 1) * CHUNK).min(n) {
                sampler.coords(idx, &mut coords);
                let mut probe = Probe {
                    tally: &mut tally,
                    asserted: false,
                };
                predicate(&coords[..dims], &mut probe);
                if probe.asserted {
                    tally.checked += 1;
                }
            }
            tally
        })
        .collect();
    let mut total = Tally::default();
    for part in partials {
        total.absorb(part);
    }
    PropertyReport::from_tally(property_id, total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_covers_endpoints_in_canonical_order() {
        let axes = [Interval::new(0.0, 1.0), Interval::new(-2.0, 2.0)];
        let s = Sampler::new(&axes, 3, 0, 1).unwrap();
        assert_eq!(s.len(), 9);
        let mut c = [0.0; 2];
        s.coords(0, &mut c);
        assert_eq!(c, [0.0, -2.0]);
        s.coords(1, &mut c);
        assert_eq!(c, [0.0, 0.0]);
        s.coords(8, &mut c);
        assert_eq!(c, [1.0, 2.0]);
    }

    #[test]
    fn random_draws_are_seeded_and_in_range() {
        let axes = [Interval::new(0.1, 10.0), Interval::point(3.0)];
        let a = Sampler::new(&axes, 2, 50, 42).unwrap();
        let b = Sampler::new(&axes, 2, 50, 42).unwrap();
        let c = Sampler::new(&axes, 2, 50, 43).unwrap();
        assert_eq!(a.random, b.random);
        assert_ne!(a.random, c.random);
        let mut p = [0.0; 2];
        for i in a.grid_len()..a.len() {
            a.coords(i, &mut p);
            assert!((0.1..=10.0).contains(&p[0]));
            assert_eq!(p[1], 3.0);
        }
    }

    #[test]
    fn rejects_oversized_grids() {
        let axes = [Interval::new(0.0, 1.0); 8];
        assert!(Sampler::new(&axes, 100, 0, 0).is_err());
    }

    #[test]
    fn counts_asserted_points_and_skips() {
        let axes = [Interval::new(-1.0, 1.0)];
        let s = Sampler::new(&axes, 5, 0, 0).unwrap();
        let report = run_property("toy", &s, |c, probe| {
            if c[0] == 0.0 {
                probe.skip();
            } else {
                probe.at_least("toy", Inputs::new(c[0], c[0], 1.0, 1.0), c[0], 0.0, "u");
            }
        });
        assert_eq!(report.samples_checked, 4);
        assert_eq!(report.skipped, 1);
        assert_eq!(report.violations.len(), 2);
        assert_eq!(report.worst_margin, 1.0);
        assert!(!report.passed);
    }

    #[test]
    fn nan_is_a_violation() {
        let s = Sampler::new(&[Interval::point(0.0)], 2, 0, 0).unwrap();
        let report = run_property("nan", &s, |_, probe| {
            probe.at_most("nan", Inputs::new(0.0, 0.0, 1.0, 1.0), f64::NAN, 0.0, "v");
        });
        assert!(!report.passed);
        assert!(report.violations.iter().all(|v| v.margin > 0.0));
    }
}
