//! The monotonicity and log-convexity properties as region-wise predicates.

use super::engine::{run_property, Sampler};
use super::report::{Inputs, PropertyReport};
use super::spec::{Interval, ScanSpec};
use crate::error::Result;
use crate::extended::ln_h_central_differences;
use crate::gini::{h_jet_raw, ln_gini_raw, HJet};
use crate::kernels::Integrand;
use crate::params::{EvalConfig, ParamPair, PositivePair};

/// Residual allowed on `[ln H]'(t) = [ln H]'(-t - (r + s))`.
pub const Q_SYMMETRY_TOL: f64 = 1e-12;
/// Residual allowed on `ln K(t) = ln x + ln y + ln H(t) - ln H(t - (r + s))`.
pub const XY_IDENTITY_TOL: f64 = 1e-11;
/// Mixed absolute/relative tolerance of the finite-difference comparison.
pub const FD_TOL: f64 = 1e-6;
/// Samples with `|(r + t) L|` or `|(s + t) L|` at or above this are not
/// finite-difference checked.
pub const FD_SATURATION: f64 = 30.0;
pub const DEFAULT_FD_STEP: f64 = 1e-5;

fn prepare(spec: &ScanSpec, cfg: &EvalConfig, axes: &[Interval]) -> Result<Sampler> {
    spec.validate()?;
    cfg.validate()?;
    Sampler::new(
        axes,
        spec.grid_points_per_axis,
        spec.random_samples,
        spec.seed,
    )
}

fn pair(x: f64, y: f64) -> PositivePair {
    PositivePair::new(x, y).expect("scan spec guarantees positive x, y")
}

fn sample_axes(spec: &ScanSpec) -> [Interval; 5] {
    [
        spec.r_range,
        spec.s_range,
        spec.x_range,
        spec.y_range,
        spec.t_range,
    ]
}

/// `g' >= 0` everywhere; `g'' >= 0` for `u < 0` and `g'' <= 0` for `u > 0`.
pub fn check_integrand_shape(spec: &ScanSpec, cfg: &EvalConfig) -> Result<PropertyReport> {
    let sampler = prepare(
        spec,
        cfg,
        &[spec.exponent_hull(), spec.x_range, spec.y_range],
    )?;
    let (tol, band) = (spec.sign_tol, spec.boundary_band);
    Ok(run_property("integrand", &sampler, |c, probe| {
        let (u, x, y) = (c[0], c[1], c[2]);
        let g = Integrand::new(&pair(x, y), cfg);
        let at = Inputs::new(u, u, x, y);
        probe.at_least("integrand.d1", at, g.d1(u), -tol, "g'(u)");
        if u < -band {
            probe.at_least("integrand.d2_convex", at, g.d2(u), -tol, "g''(u) for u < 0");
        } else if u > band {
            probe.at_most("integrand.d2_concave", at, g.d2(u), tol, "g''(u) for u > 0");
        } else {
            probe.skip();
        }
    }))
}

/// Monotonicity of `ln G` in each parameter, joint midpoint log-convexity on
/// the open negative quadrant and log-concavity on the open positive one.
pub fn check_thm1(spec: &ScanSpec, cfg: &EvalConfig) -> Result<PropertyReport> {
    let axes = [
        spec.r_range,
        spec.s_range,
        spec.r_range,
        spec.s_range,
        spec.x_range,
        spec.y_range,
    ];
    let sampler = prepare(spec, cfg, &axes)?;
    let (tol, band) = (spec.sign_tol, spec.boundary_band);
    Ok(run_property("thm1", &sampler, |c, probe| {
        let (r1, s1, r2, s2, x, y) = (c[0], c[1], c[2], c[3], c[4], c[5]);
        let p = pair(x, y);
        let lg = |r: f64, s: f64| ln_gini_raw(&ParamPair { r, s }, &p, cfg);

        if r1 != r2 {
            let (lo, hi) = (r1.min(r2), r1.max(r2));
            let at = Inputs::new(lo, s1, x, y).with_second(hi, s1);
            let observed = lg(lo, s1) - lg(hi, s1);
            probe.at_most(
                "thm1.increasing_r",
                at,
                observed,
                tol,
                "lnG(r1,s) - lnG(r2,s), r1 < r2",
            );
        }
        if s1 != s2 {
            let (lo, hi) = (s1.min(s2), s1.max(s2));
            let at = Inputs::new(r1, lo, x, y).with_second(r1, hi);
            let observed = lg(r1, lo) - lg(r1, hi);
            probe.at_most(
                "thm1.increasing_s",
                at,
                observed,
                tol,
                "lnG(r,s1) - lnG(r,s2), s1 < s2",
            );
        }

        let at = Inputs::new(r1, s1, x, y).with_second(r2, s2);
        let negative = [r1, s1, r2, s2].iter().all(|&v| v < -band);
        let positive = [r1, s1, r2, s2].iter().all(|&v| v > band);
        if negative || positive {
            let mid = lg(0.5 * (r1 + r2), 0.5 * (s1 + s2));
            let chord = 0.5 * (lg(r1, s1) + lg(r2, s2));
            if negative {
                probe.at_most("thm1.log_convex", at, mid - chord, tol, "lnG(mid) - chord");
            } else {
                probe.at_most("thm1.log_concave", at, chord - mid, tol, "chord - lnG(mid)");
            }
        } else {
            probe.skip();
        }
    }))
}

/// `H` increasing, log-convex below `t = -(r+s)/2`, log-concave above, and
/// the reflection identity `[ln H]'(t) = [ln H]'(-t - (r + s))`.
pub fn check_thm2_h(spec: &ScanSpec, cfg: &EvalConfig) -> Result<PropertyReport> {
    let sampler = prepare(spec, cfg, &sample_axes(spec))?;
    let (tol, band) = (spec.sign_tol, spec.boundary_band);
    Ok(run_property("thm2_h", &sampler, |c, probe| {
        let (r, s, x, y, t) = (c[0], c[1], c[2], c[3], c[4]);
        let (params, p) = (ParamPair { r, s }, pair(x, y));
        let at = Inputs::new(r, s, x, y).at(t);
        let jet = h_jet_raw(t, &params, &p, cfg);

        probe.at_least("thm2_h.increasing", at, jet.d1, -tol, "[ln H]'(t)");
        let split = -0.5 * (r + s);
        if t < split - band {
            probe.at_least(
                "thm2_h.log_convex",
                at,
                jet.d2,
                -tol,
                "[ln H]''(t) below -(r+s)/2",
            );
        } else if t > split + band {
            probe.at_most(
                "thm2_h.log_concave",
                at,
                jet.d2,
                tol,
                "[ln H]''(t) above -(r+s)/2",
            );
        } else {
            probe.skip();
        }

        let mirror = h_jet_raw(-t - (s + r), &params, &p, cfg);
        let residual = (jet.d1 - mirror.d1).abs();
        probe.at_most(
            "thm2_h.reflection",
            at,
            residual,
            Q_SYMMETRY_TOL,
            "|[ln H]'(t) - [ln H]'(-t-(r+s))|",
        );
    }))
}

/// `K` increasing on `t < 0`, decreasing on `t > 0`, maximal at zero, and
/// `K(t) = xy H(t) / H(t - (r + s))`.
pub fn check_thm2_k(spec: &ScanSpec, cfg: &EvalConfig) -> Result<PropertyReport> {
    let sampler = prepare(spec, cfg, &sample_axes(spec))?;
    let (tol, band) = (spec.sign_tol, spec.boundary_band);
    Ok(run_property("thm2_k", &sampler, |c, probe| {
        let (r, s, x, y, t) = (c[0], c[1], c[2], c[3], c[4]);
        let (params, p) = (ParamPair { r, s }, pair(x, y));
        let at = Inputs::new(r, s, x, y).at(t);
        let a = t.abs();

        let d1_plus = h_jet_raw(a, &params, &p, cfg).d1 - h_jet_raw(-a, &params, &p, cfg).d1;
        let d1_ln_k = if t < 0.0 { -d1_plus } else { d1_plus };
        if t < -band {
            probe.at_least(
                "thm2_k.increasing",
                at,
                d1_ln_k,
                -tol,
                "[ln K]'(t) for t < 0",
            );
        } else if t > band {
            probe.at_most(
                "thm2_k.decreasing",
                at,
                d1_ln_k,
                tol,
                "[ln K]'(t) for t > 0",
            );
        } else {
            probe.skip();
        }

        let lg = |shift: f64| ln_gini_raw(&params.shifted(shift), &p, cfg);
        let ln_k = lg(a) + lg(-a);
        let k0 = (2.0 * lg(0.0)).exp();
        probe.at_most(
            "thm2_k.max_at_zero",
            at,
            ln_k.exp() - k0,
            tol,
            "K(t) - K(0)",
        );

        let via_identity = p.log_x() + p.log_y() + lg(t) - lg(t - (s + r));
        probe.at_most(
            "thm2_k.xy_identity",
            at,
            (ln_k - via_identity).abs(),
            XY_IDENTITY_TOL,
            "|ln K(t) - (ln xy + ln H(t) - ln H(t-(r+s)))|",
        );
    }))
}

/// Interval on which `t ln H(t)` is claimed convex, shrunk by `band` at both
/// ends and clipped to `t_range`; `None` when empty.
pub fn thm3_interval(r: f64, s: f64, band: f64, t_range: Interval) -> Option<(f64, f64)> {
    let split = -0.5 * (r + s);
    let (lo, hi) = if r + s > 0.0 {
        (split, 0.0)
    } else if r + s < 0.0 {
        (0.0, split)
    } else {
        return None;
    };
    let lo = (lo + band).max(t_range.lo);
    let hi = (hi - band).min(t_range.hi);
    (lo <= hi).then_some((lo, hi))
}

/// Convexity of `t ln H(t)` between `-(r+s)/2` and `0`. The last sampled axis
/// is a fraction in `[0, 1]` placing `t` inside that interval.
pub fn check_thm3(spec: &ScanSpec, cfg: &EvalConfig) -> Result<PropertyReport> {
    let axes = [
        spec.r_range,
        spec.s_range,
        spec.x_range,
        spec.y_range,
        Interval::new(0.0, 1.0),
    ];
    let sampler = prepare(spec, cfg, &axes)?;
    let (tol, band) = (spec.sign_tol, spec.boundary_band);
    Ok(run_property("thm3", &sampler, |c, probe| {
        let (r, s, x, y, frac) = (c[0], c[1], c[2], c[3], c[4]);
        let Some((lo, hi)) = thm3_interval(r, s, band, spec.t_range) else {
            probe.skip();
            return;
        };
        let t = if frac >= 1.0 {
            hi
        } else {
            lo + (hi - lo) * frac
        };
        let (params, p) = (ParamPair { r, s }, pair(x, y));
        let at = Inputs::new(r, s, x, y).at(t);

        let jet = h_jet_raw(t, &params, &p, cfg);
        probe.at_least(
            "thm3.d2",
            at,
            2.0 * jet.d1 + t * jet.d2,
            -tol,
            "[t ln H]''(t)",
        );

        let phi = |u: f64| u * ln_gini_raw(&params.shifted(u), &p, cfg);
        let phi_t = phi(t);
        for end in [lo, hi] {
            let gap = phi(0.5 * (end + t)) - 0.5 * (phi(end) + phi_t);
            probe.at_most("thm3.midpoint", at, gap, tol, "phi(mid) - chord");
        }
    }))
}

/// Analytic jet of `ln H` used by [`fd_validate_with`].
pub type JetFn = dyn Fn(f64, &ParamPair, &PositivePair, &EvalConfig) -> HJet + Sync;

/// Compares `h_jet` against central differences of `ln H` with step
/// `h * max(1, |t|)`.
pub fn fd_validate(spec: &ScanSpec, cfg: &EvalConfig, h: f64) -> Result<PropertyReport> {
    fd_validate_with(spec, cfg, h, &h_jet_raw)
}

/// [`fd_validate`] against an arbitrary jet implementation.
pub fn fd_validate_with(
    spec: &ScanSpec,
    cfg: &EvalConfig,
    h: f64,
    jet_fn: &JetFn,
) -> Result<PropertyReport> {
    if !(h.is_finite() && h > 0.0) {
        return Err(crate::GiniError::InvalidSpec(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let sampler = prepare(spec, cfg, &sample_axes(spec))?;
    Ok(run_property("fd", &sampler, |c, probe| {
        let (r, s, x, y, t) = (c[0], c[1], c[2], c[3], c[4]);
        let (params, p) = (ParamPair { r, s }, pair(x, y));
        let ratio = p.log_ratio();
        if ((r + t) * ratio).abs() >= FD_SATURATION || ((s + t) * ratio).abs() >= FD_SATURATION {
            probe.skip();
            return;
        }
        let step = h * t.abs().max(1.0);
        let jet = jet_fn(t, &params, &p, cfg);
        let (fd1, fd2) = ln_h_central_differences(r, s, x, y, t, step);
        let at = Inputs::new(r, s, x, y).at(t);
        probe.at_most(
            "fd.d1",
            at,
            (jet.d1 - fd1).abs(),
            FD_TOL * jet.d1.abs().max(1.0),
            "|d1 - central difference|",
        );
        probe.at_most(
            "fd.d2",
            at,
            (jet.d2 - fd2).abs(),
            FD_TOL * jet.d2.abs().max(1.0),
            "|d2 - second central difference|",
        );
    }))
}
