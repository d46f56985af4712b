//! Saturation-safe logistic kernels.
//!
//! The integrand `g(u) = (x^u ln x + y^u ln y) / (x^u + y^u)` is a logistic
//! blend of `ln x` and `ln y` with weight `w = 1 / (1 + exp(-u L))`,
//! `L = ln x - ln y`. Nothing here ever forms `x^u` directly.

use std::f64::consts::LN_2;

use crate::params::{EvalConfig, PositivePair};

/// `(w, 1 - w)` for `w = logistic(z)`, each computed without cancellation.
/// Beyond `saturation` the pair is exactly `(1, 0)` or `(0, 1)`.
pub(crate) fn logistic_pair(z: f64, saturation: f64) -> (f64, f64) {
    if z > saturation {
        return (1.0, 0.0);
    }
    if z < -saturation {
        return (0.0, 1.0);
    }
    let e = (-z.abs()).exp();
    let big = 1.0 / (1.0 + e);
    let small = e / (1.0 + e);
    if z >= 0.0 {
        (big, small)
    } else {
        (small, big)
    }
}

/// `ln(1 + exp(z))`.
pub(crate) fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

/// `ln(exp(a) + exp(b))`.
pub(crate) fn log_add_exp(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + (-(a - b).abs()).exp().ln_1p()
}

pub(crate) fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

/// `ln sinh(x)` for `x >= 0`; `-inf` at zero.
pub(crate) fn ln_sinh(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x == 0.0 {
        return f64::NEG_INFINITY;
    }
    x + (-(-2.0 * x).exp_m1()).ln() - LN_2
}

// cosh(150)^4 is still far from overflow.
const DIRECT_LIMIT: f64 = 300.0;

/// `logistic(p) - logistic(q)` for `p >= q`, where `delta = p - q` is passed
/// separately so that a small gap keeps its full relative precision.
pub(crate) fn logistic_diff(p: f64, q: f64, delta: f64) -> f64 {
    debug_assert!(delta >= 0.0);
    if delta >= 1.0 {
        // no cancellation once the gap is wide; subtract on the small side
        let (wp, cp) = logistic_pair(p, f64::INFINITY);
        let (wq, cq) = logistic_pair(q, f64::INFINITY);
        return if q >= 0.0 { cq - cp } else { wp - wq };
    }
    if p.abs().max(q.abs()) <= DIRECT_LIMIT {
        (0.5 * delta).sinh() / (2.0 * (0.5 * p).cosh() * (0.5 * q).cosh())
    } else {
        (ln_sinh(0.5 * delta) - LN_2 - ln_cosh(0.5 * p) - ln_cosh(0.5 * q)).exp()
    }
}

/// `w(p)(1-w(p)) - w(q)(1-w(q))` for `p >= q`, given `sum = p + q` and
/// `delta = p - q`. The sign is `-sign(sum)` exactly.
pub(crate) fn logistic_variance_diff(p: f64, q: f64, sum: f64, delta: f64) -> f64 {
    debug_assert!(delta >= 0.0);
    if sum == 0.0 || delta == 0.0 {
        return 0.0;
    }
    if p.abs().max(q.abs()) <= DIRECT_LIMIT {
        let c = (0.5 * p).cosh() * (0.5 * q).cosh();
        -(0.5 * sum).sinh() * (0.5 * delta).sinh() / (4.0 * c * c)
    } else {
        let mag = ln_sinh(0.5 * sum.abs()) + ln_sinh(0.5 * delta)
            - 2.0 * LN_2
            - 2.0 * ln_cosh(0.5 * p)
            - 2.0 * ln_cosh(0.5 * q);
        -sum.signum() * mag.exp()
    }
}

/// The integrand `g` and its first two derivatives for one pair.
#[derive(Debug, Clone, Copy)]
pub struct Integrand {
    log_hi: f64,
    log_lo: f64,
    ratio: f64,
    saturation: f64,
}

impl Integrand {
    pub fn new(pair: &PositivePair, cfg: &EvalConfig) -> Self {
        let (log_hi, log_lo, ratio) = pair.oriented();
        Self {
            log_hi,
            log_lo,
            ratio,
            saturation: cfg.exp_saturation,
        }
    }

    pub fn value(&self, u: f64) -> f64 {
        if self.ratio == 0.0 {
            return self.log_hi;
        }
        let (w, wc) = logistic_pair(u * self.ratio, self.saturation);
        let v = if wc <= w {
            self.log_hi - wc * self.ratio
        } else {
            self.log_lo + w * self.ratio
        };
        v.clamp(self.log_lo, self.log_hi)
    }

    pub fn d1(&self, u: f64) -> f64 {
        if self.ratio == 0.0 {
            return 0.0;
        }
        let (w, wc) = logistic_pair(u * self.ratio, self.saturation);
        w * wc * self.ratio * self.ratio
    }

    pub fn d2(&self, u: f64) -> f64 {
        if self.ratio == 0.0 {
            return 0.0;
        }
        let z = u * self.ratio;
        let (w, wc) = logistic_pair(z, self.saturation);
        // 2w - 1 == tanh(z / 2)
        let l3 = self.ratio * self.ratio * self.ratio;
        -(w * wc * (0.5 * z).tanh() * l3) + 0.0
    }
}

/// `g(u)`: the logistic-weighted mean of `ln x` and `ln y`.
pub fn weighted_log_mean(u: f64, p: &PositivePair) -> f64 {
    Integrand::new(p, &EvalConfig::default()).value(u)
}

/// `g'(u) = w (1 - w) L^2`, never negative.
pub fn weighted_log_mean_d1(u: f64, p: &PositivePair) -> f64 {
    Integrand::new(p, &EvalConfig::default()).d1(u)
}

/// `g''(u) = -w (1 - w) (2w - 1) L^3`; non-negative for `u <= 0`,
/// non-positive for `u >= 0`.
pub fn weighted_log_mean_d2(u: f64, p: &PositivePair) -> f64 {
    Integrand::new(p, &EvalConfig::default()).d2(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn pair(x: f64, y: f64) -> PositivePair {
        PositivePair::new(x, y).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn g_examples() {
        assert_eq!(weighted_log_mean(0.0, &pair(E * E, 1.0)), 1.0);
        assert_eq!(weighted_log_mean(7.0, &pair(4.0, 4.0)), 4f64.ln());
        // e / (e + 1)
        close(
            weighted_log_mean(1.0, &pair(E, 1.0)),
            0.731_058_578_630_004_9,
            1e-15,
        );
    }

    #[test]
    fn g_d1_examples() {
        close(weighted_log_mean_d1(0.0, &pair(E * E, 1.0)), 1.0, 1e-15);
        assert_eq!(weighted_log_mean_d1(3.3, &pair(2.0, 2.0)), 0.0);
        let p = pair(0.2, 9.0);
        close(
            weighted_log_mean_d1(0.0, &p),
            p.log_ratio().powi(2) / 4.0,
            1e-15,
        );
    }

    #[test]
    fn g_d2_examples() {
        assert_eq!(weighted_log_mean_d2(0.0, &pair(3.0, 5.0)), 0.0);
        assert!(weighted_log_mean_d2(0.0, &pair(3.0, 5.0)).is_sign_positive());
        let p = pair(E, 1.0);
        close(
            weighted_log_mean_d2(1.0, &p),
            -0.090_857_747_672_948_41,
            1e-15,
        );
        close(
            weighted_log_mean_d2(-1.0, &p),
            0.090_857_747_672_948_41,
            1e-15,
        );
    }

    #[test]
    fn saturation_gives_exact_zero() {
        let p = pair(1e3, 1e-3);
        assert_eq!(weighted_log_mean_d1(200.0, &p), 0.0);
        assert_eq!(weighted_log_mean_d2(-200.0, &p), 0.0);
        assert_eq!(weighted_log_mean(200.0, &p), 1e3f64.ln());
        assert_eq!(weighted_log_mean(-200.0, &p), 1e-3f64.ln());
    }

    #[test]
    fn logistic_diff_matches_direct_difference() {
        for &(p, q) in &[(1.0, -2.0), (0.3, 0.1), (5.0, 4.999), (40.0, -3.0)] {
            let (wp, _) = logistic_pair(p, 745.0);
            let (wq, _) = logistic_pair(q, 745.0);
            close(logistic_diff(p, q, p - q), wp - wq, 1e-15);
        }
        // the log form agrees with the direct form where both are valid
        let direct = logistic_diff(250.0, 249.0, 1.0);
        let logged = (ln_sinh(0.5) - LN_2 - ln_cosh(125.0) - ln_cosh(124.5)).exp();
        assert!((direct - logged).abs() <= 1e-12 * direct);
        assert!(logistic_diff(700.0, 650.0, 50.0) > 0.0);
        assert!((logistic_diff(1000.0, -999.0, 1999.0) - 1.0).abs() < 1e-15);
        assert_eq!(logistic_diff(3.0, 3.0, 0.0), 0.0);
    }

    #[test]
    fn logistic_variance_diff_matches_direct_difference() {
        for &(p, q) in &[(1.0, -2.0), (0.3, 0.1), (2.0, -2.0), (7.0, 1.5)] {
            let (wp, cp) = logistic_pair(p, 745.0);
            let (wq, cq) = logistic_pair(q, 745.0);
            close(
                logistic_variance_diff(p, q, p + q, p - q),
                wp * cp - wq * cq,
                1e-15,
            );
        }
        assert_eq!(logistic_variance_diff(2.0, -2.0, 0.0, 4.0), 0.0);
        let v = logistic_variance_diff(1000.0, -400.0, 600.0, 1400.0);
        assert!(v <= 0.0);
    }

    #[test]
    fn softplus_and_lae() {
        close(softplus(0.0), LN_2, 1e-16);
        assert_eq!(softplus(800.0), 800.0);
        assert_eq!(softplus(-800.0), 0.0);
        close(log_add_exp(1.0, 2.0), (1f64.exp() + 2f64.exp()).ln(), 1e-15);
        assert_eq!(
            log_add_exp(f64::NEG_INFINITY, f64::NEG_INFINITY),
            f64::NEG_INFINITY
        );
    }
}
