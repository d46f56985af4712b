//! Adaptive Simpson quadrature, used as an independent oracle for `ln_gini`.

use crate::error::{GiniError, Result};
use crate::gini::ln_gini;
use crate::kernels::Integrand;
use crate::params::{EvalConfig, ParamPair, PositivePair};

pub const MAX_DEPTH: u32 = 60;
const INITIAL_PANELS: usize = 16;

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn refine<F: Fn(f64) -> f64>(f: &F, p: Panel, tol: f64, depth: u32) -> Result<f64> {
    let m = 0.5 * (p.a + p.b);
    let (lm, rm) = (0.5 * (p.a + m), 0.5 * (m + p.b));
    if depth >= MAX_DEPTH || !(p.a < lm && lm < m && m < rm && rm < p.b) {
        return Err(GiniError::Quadrature {
            lo: p.a,
            hi: p.b,
            max_depth: MAX_DEPTH,
        });
    }
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(p.a, m, p.fa, flm, p.fm);
    let right = simpson(m, p.b, p.fm, frm, p.fb);
    let diff = left + right - p.whole;
    if diff.abs() <= 15.0 * tol {
        return Ok(left + right + diff / 15.0);
    }
    let l = Panel {
        a: p.a,
        b: m,
        fa: p.fa,
        fm: flm,
        fb: p.fm,
        whole: left,
    };
    let r = Panel {
        a: m,
        b: p.b,
        fa: p.fm,
        fm: frm,
        fb: p.fb,
        whole: right,
    };
    Ok(refine(f, l, 0.5 * tol, depth + 1)? + refine(f, r, 0.5 * tol, depth + 1)?)
}

/// Integral of `f` over `[a, b]` (`a < b`) with absolute error target `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && a < b && tol > 0.0) {
        return Err(GiniError::Domain(format!(
            "quadrature needs finite a < b and tol > 0, got [{a}, {b}], tol {tol}"
        )));
    }
    let width = (b - a) / INITIAL_PANELS as f64;
    let panel_tol = tol / INITIAL_PANELS as f64;
    let mut total = 0.0;
    let mut fa = f(a);
    for i in 0..INITIAL_PANELS {
        let pa = a + width * i as f64;
        let pb = if i + 1 == INITIAL_PANELS {
            b
        } else {
            a + width * (i + 1) as f64
        };
        let fm = f(0.5 * (pa + pb));
        let fb = f(pb);
        let whole = simpson(pa, pb, fa, fm, fb);
        total += refine(
            &f,
            Panel {
                a: pa,
                b: pb,
                fa,
                fm,
                fb,
                whole,
            },
            panel_tol,
            0,
        )?;
        fa = fb;
    }
    Ok(total)
}

/// `(1 / (s - r)) * integral of g(u) over [r, s]`, i.e. `ln G` by quadrature.
/// Returns `g(r)` when `r == s`.
pub fn ln_gini_quadrature(params: &ParamPair, p: &PositivePair, cfg: &EvalConfig) -> Result<f64> {
    params.check()?;
    cfg.validate()?;
    let g = Integrand::new(p, cfg);
    let (lo, hi) = (params.r.min(params.s), params.r.max(params.s));
    if lo == hi {
        return Ok(g.value(lo));
    }
    let width = hi - lo;
    let integral = adaptive_simpson(|u| g.value(u), lo, hi, cfg.quad_tol * width)?;
    Ok(integral / width)
}

/// Convenience: absolute gap between the closed form and the quadrature oracle.
pub fn oracle_gap(params: &ParamPair, p: &PositivePair, cfg: &EvalConfig) -> Result<f64> {
    Ok((ln_gini(params, p, cfg)? - ln_gini_quadrature(params, p, cfg)?).abs())
}
