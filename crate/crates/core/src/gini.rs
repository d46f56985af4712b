//! The Gini mean `G(r, s; x, y)`, its shifted family `H(t) = G(r+t, s+t)`,
//! the product `K(t) = H(t) H(-t)`, and their log-derivatives.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Result};
use crate::kernels::{
    log_add_exp, logistic_diff, logistic_pair, logistic_variance_diff, softplus, Integrand,
};
use crate::params::{EvalConfig, ParamPair, PositivePair};

/// Value and first two derivatives of `t -> ln H(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HJet {
    pub ln_h: f64,
    pub d1: f64,
    pub d2: f64,
}

/// Closed form without argument checks.
///
/// With `L >= 0` and `r < s` (both orientations are free by symmetry),
/// `G = x^d (w + (1 - w) e^{-dL})^{1/d}` where `d = s - r` and
/// `w = x^r / (x^r + y^r)`, so `ln G = ln x + A / d` with `A <= 0`.
pub(crate) fn ln_gini_raw(params: &ParamPair, pair: &PositivePair, cfg: &EvalConfig) -> f64 {
    if pair.is_degenerate() {
        return pair.log_x();
    }
    let g = Integrand::new(pair, cfg);
    let ParamPair { r, s } = *params;
    if r == s {
        return g.value(r);
    }
    if cfg.is_near_equal(params) {
        let m = params.midpoint();
        let d = s - r;
        return g.value(m) + d * d / 24.0 * g.d2(m);
    }

    let (log_hi, log_lo, ratio) = pair.oriented();
    let (lo, hi) = if r < s { (r, s) } else { (s, r) };
    let d = hi - lo;
    let z = lo * ratio;
    let delta = d * ratio;
    let (_, wc) = logistic_pair(z, f64::INFINITY);
    let v = wc * (-delta).exp_m1();
    let a = if v >= -0.5 {
        v.ln_1p()
    } else {
        // ln(w + (1 - w) e^{-delta}) with both logs exact; delta >= ln 2 here
        log_add_exp(-softplus(-z), -softplus(z) - delta)
    };
    (log_hi + a / d).clamp(log_lo, log_hi)
}

/// `ln G(r, s; x, y)`.
pub fn ln_gini(params: &ParamPair, p: &PositivePair, cfg: &EvalConfig) -> Result<f64> {
    params.check()?;
    cfg.validate()?;
    Ok(ln_gini_raw(params, p, cfg))
}

/// `G(r, s; x, y)`; always within `[min(x, y), max(x, y)]`.
pub fn gini_mean(params: &ParamPair, p: &PositivePair, cfg: &EvalConfig) -> Result<f64> {
    let v = ln_gini(params, p, cfg)?.exp();
    Ok(v.clamp(p.x().min(p.y()), p.x().max(p.y())))
}

pub(crate) fn h_jet_raw(t: f64, params: &ParamPair, pair: &PositivePair, cfg: &EvalConfig) -> HJet {
    let shifted = params.shifted(t);
    let ln_h = ln_gini_raw(&shifted, pair, cfg);
    if pair.is_degenerate() {
        return HJet {
            ln_h,
            d1: 0.0,
            d2: 0.0,
        };
    }
    if shifted.r == shifted.s || cfg.is_near_equal(&shifted) {
        let g = Integrand::new(pair, cfg);
        let m = shifted.midpoint();
        return HJet {
            ln_h,
            d1: g.d1(m),
            d2: g.d2(m),
        };
    }

    let (_, _, ratio) = pair.oriented();
    let (lo, hi) = if shifted.r < shifted.s {
        (shifted.r, shifted.s)
    } else {
        (shifted.s, shifted.r)
    };
    let d = hi - lo;
    let (p, q) = (hi * ratio, lo * ratio);
    let delta = d * ratio;
    let sum = (hi + lo) * ratio;
    HJet {
        ln_h,
        d1: ratio * logistic_diff(p, q, delta) / d,
        d2: ratio * ratio * logistic_variance_diff(p, q, sum, delta) / d,
    }
}

/// `ln H(t)` together with its first two derivatives in `t`.
pub fn h_jet(t: f64, params: &ParamPair, p: &PositivePair, cfg: &EvalConfig) -> Result<HJet> {
    ensure_finite("t", t)?;
    params.check()?;
    cfg.validate()?;
    Ok(h_jet_raw(t, params, p, cfg))
}

/// `K(t) = H(t) H(-t)`, evaluated through `|t|` so that `K(t) == K(-t)` exactly.
pub fn k_value(t: f64, params: &ParamPair, p: &PositivePair, cfg: &EvalConfig) -> Result<f64> {
    Ok(ln_k(t, params, p, cfg)?.exp())
}

/// `ln K(t)`.
pub fn ln_k(t: f64, params: &ParamPair, p: &PositivePair, cfg: &EvalConfig) -> Result<f64> {
    ensure_finite("t", t)?;
    params.check()?;
    cfg.validate()?;
    let a = t.abs();
    Ok(ln_gini_raw(&params.shifted(a), p, cfg) + ln_gini_raw(&params.shifted(-a), p, cfg))
}

/// `[ln K]'(t) = [ln H]'(t) - [ln H]'(-t)`; odd in `t` by construction.
pub fn d1_ln_k(t: f64, params: &ParamPair, p: &PositivePair, cfg: &EvalConfig) -> Result<f64> {
    ensure_finite("t", t)?;
    params.check()?;
    cfg.validate()?;
    let a = t.abs();
    let v = h_jet_raw(a, params, p, cfg).d1 - h_jet_raw(-a, params, p, cfg).d1;
    Ok(if t < 0.0 { -v } else { v })
}

/// `[t ln H]''(t) = 2 [ln H]'(t) + t [ln H]''(t)`.
pub fn d2_t_ln_h(t: f64, params: &ParamPair, p: &PositivePair, cfg: &EvalConfig) -> Result<f64> {
    let jet = h_jet(t, params, p, cfg)?;
    Ok(2.0 * jet.d1 + t * jet.d2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(r: f64, s: f64) -> ParamPair {
        ParamPair::new(r, s).unwrap()
    }

    fn xy(x: f64, y: f64) -> PositivePair {
        PositivePair::new(x, y).unwrap()
    }

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn ln_gini_examples() {
        let c = cfg();
        assert!((ln_gini(&pp(0.0, 1.0), &xy(3.0, 5.0), &c).unwrap() - 4f64.ln()).abs() < 1e-15);
        assert!((ln_gini(&pp(0.0, 0.0), &xy(4.0, 9.0), &c).unwrap() - 6f64.ln()).abs() < 1e-15);
        let v = ln_gini(&pp(1.0, 2.0), &xy(2.0, 3.0), &c).unwrap();
        assert!((v - (13.0f64 / 5.0).ln()).abs() < 1e-15);
        let v = ln_gini(&pp(-1.0, 0.0), &xy(2.0, 6.0), &c).unwrap();
        assert!((v - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn gini_mean_examples() {
        let c = cfg();
        assert!(rel(gini_mean(&pp(0.0, 1.0), &xy(3.0, 5.0), &c).unwrap(), 4.0) < 1e-15);
        assert_eq!(gini_mean(&pp(5.0, -2.0), &xy(7.0, 7.0), &c).unwrap(), 7.0);
        assert!(rel(gini_mean(&pp(1.0, 2.0), &xy(2.0, 3.0), &c).unwrap(), 2.6) < 1e-15);
    }

    #[test]
    fn non_finite_arguments_are_domain_errors() {
        let c = cfg();
        let p = xy(2.0, 3.0);
        assert!(ln_gini(
            &ParamPair {
                r: f64::NAN,
                s: 1.0
            },
            &p,
            &c
        )
        .is_err());
        assert!(h_jet(f64::INFINITY, &pp(0.0, 1.0), &p, &c).is_err());
        assert!(k_value(f64::NAN, &pp(0.0, 1.0), &p, &c).is_err());
        assert!(ParamPair::new(0.0, f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn extreme_exponents_stay_finite() {
        let c = cfg();
        let p = xy(2.0, 3.0);
        for &(r, s) in &[
            (800.0, 801.0),
            (-800.0, -799.0),
            (1e6, -1e6),
            (-5e4, 5e4 + 0.5),
        ] {
            let g = gini_mean(&pp(r, s), &p, &c).unwrap();
            assert!(g.is_finite() && (2.0..=3.0).contains(&g), "{r} {s} -> {g}");
        }
        let g = gini_mean(&pp(800.0, 801.0), &p, &c).unwrap();
        assert!((g - 3.0).abs() < 1e-12);
        let g = gini_mean(&pp(-800.0, -799.0), &p, &c).unwrap();
        assert!((g - 2.0).abs() < 1e-12);
    }

    #[test]
    fn h_jet_examples() {
        let c = cfg();
        let jet = h_jet(0.0, &pp(0.0, 1.0), &xy(3.0, 5.0), &c).unwrap();
        assert!((jet.ln_h - 4f64.ln()).abs() < 1e-15);
        // g(1) - g(0) evaluated in 40-digit arithmetic
        assert!((jet.d1 - 0.063_853_202_970_748_84).abs() < 1e-15);

        let params = pp(-1.3, 2.9);
        let jet = h_jet(-params.midpoint(), &params, &xy(0.4, 6.0), &c).unwrap();
        assert!(jet.d2.abs() < 1e-14);

        let jet = h_jet(2.5, &params, &xy(5.0, 5.0), &c).unwrap();
        assert_eq!(
            jet,
            HJet {
                ln_h: 5f64.ln(),
                d1: 0.0,
                d2: 0.0
            }
        );
    }

    #[test]
    fn h_jet_second_derivative_signs_at_spot_points() {
        let c = cfg();
        let (params, p) = (pp(0.0, 1.0), xy(3.0, 5.0));
        let below = h_jet(-3.0, &params, &p, &c).unwrap().d2;
        let above = h_jet(2.0, &params, &p, &c).unwrap().d2;
        // mirror images about t = -1/2, from 40-digit finite differences
        assert!((below - 0.012_670_881_468_165_39).abs() < 1e-15);
        assert!((above + 0.012_670_881_468_165_39).abs() < 1e-15);
    }

    #[test]
    fn k_examples() {
        let c = cfg();
        let k0 = k_value(0.0, &pp(1.0, 2.0), &xy(2.0, 3.0), &c).unwrap();
        assert!(rel(k0, 6.76) < 1e-14);

        let (params, p) = (pp(0.0, 1.0), xy(3.0, 5.0));
        for &t in &[0.3, 2.0, 7.7] {
            assert_eq!(
                k_value(t, &params, &p, &c).unwrap().to_bits(),
                k_value(-t, &params, &p, &c).unwrap().to_bits()
            );
        }
        let k2 = k_value(2.0, &params, &p, &c).unwrap();
        let h2 = h_jet(2.0, &params, &p, &c).unwrap().ln_h.exp();
        let h1 = h_jet(1.0, &params, &p, &c).unwrap().ln_h.exp();
        assert!(rel(k2, 15.0 * h2 / h1) < 1e-14);
        assert!(rel(k2, 15.778_546_712_802_768) < 1e-14);
    }

    #[test]
    fn d1_ln_k_examples() {
        let c = cfg();
        let (params, p) = (pp(0.0, 1.0), xy(3.0, 5.0));
        assert_eq!(d1_ln_k(0.0, &params, &p, &c).unwrap(), 0.0);
        let plus = d1_ln_k(1.0, &params, &p, &c).unwrap();
        assert!(plus <= 0.0);
        assert!((plus + 0.007_512_141_525_970_451).abs() < 1e-15);
        assert_eq!(d1_ln_k(-1.0, &params, &p, &c).unwrap(), -plus);
    }

    #[test]
    fn d2_t_ln_h_examples() {
        let c = cfg();
        let (params, p) = (pp(0.0, 1.0), xy(3.0, 5.0));
        let at0 = d2_t_ln_h(0.0, &params, &p, &c).unwrap();
        assert_eq!(at0, 2.0 * h_jet(0.0, &params, &p, &c).unwrap().d1);
        let v = d2_t_ln_h(-0.4, &params, &p, &c).unwrap();
        assert!((v - 0.130_016_340_990_178_73).abs() < 1e-14);
        let v = d2_t_ln_h(-0.25, &params, &p, &c).unwrap();
        assert!((v - 0.129_765_348_254_060_9).abs() < 1e-14);
        assert_eq!(d2_t_ln_h(1.7, &params, &xy(2.0, 2.0), &c).unwrap(), 0.0);
    }

    #[test]
    fn near_equal_branch_is_continuous() {
        use crate::extended::{ln_h_reference, DoubleDouble};
        let c = cfg();
        let p = xy(0.1, 70.0);
        for &r in &[-6.0, -0.3, 0.0, 2.5, 9.0] {
            let thr = c.near_equal_rel_tol * (2.0 * f64::abs(r)).max(1.0);
            let (db, da) = (thr * (1.0 - 1e-6), thr * (1.0 + 1e-6));
            assert!(c.is_near_equal(&pp(r, r + db)));
            assert!(!c.is_near_equal(&pp(r, r + da)));
            let below = ln_gini(&pp(r, r + db), &p, &c).unwrap();
            let above = ln_gini(&pp(r, r + da), &p, &c).unwrap();
            assert!((below - above).abs() <= 1e-10, "r={r}: {below} {above}");
            for (v, d) in [(below, db), (above, da)] {
                let exact = ln_h_reference(r, r + d, 0.1, 70.0, DoubleDouble::ZERO).to_f64();
                assert!((v - exact).abs() <= 1e-13, "r={r}, d={d}: {v} vs {exact}");
            }
            let jb = h_jet(0.4, &pp(r, r + db), &p, &c).unwrap();
            let ja = h_jet(0.4, &pp(r, r + da), &p, &c).unwrap();
            assert!((jb.d1 - ja.d1).abs() <= 1e-10);
            assert!((jb.d2 - ja.d2).abs() <= 1e-10);
        }
    }
}
