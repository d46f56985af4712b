//! Double-double arithmetic (about 32 significant digits) and a direct
//! evaluation of `ln H(t)` from the power-sum definition.
//!
//! This is the reference route for finite-difference checks. Second
//! differences with a step of 1e-5 amplify the rounding of each function
//! value by 1e10, so double precision alone cannot resolve 1e-6.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

const LN2: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    pub fn from_f64(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Self { hi, lo }
    }

    fn scale_pow2(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        Self {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.0 {
            return Self::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Self::ZERO;
        }
        let k = (self.hi / LN2.hi).round();
        // |r| <= ln2 / 2, then scaled down by 2^9 before the series
        let r = (self - LN2.mul_f64(k)).scale_pow2(-9);
        let mut term = r;
        let mut sum = r;
        for n in 2..=14 {
            term = (term * r) / Self::from_f64(n as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        // (1 + s)^2 - 1 = 2s + s^2, nine times
        for _ in 0..9 {
            sum = sum.scale_pow2(1) + sum * sum;
        }
        (sum + Self::ONE).scale_pow2(k as i32)
    }

    /// Natural log via one Newton step on `exp`, from a double-precision start.
    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from_f64(f64::NAN);
        }
        let a = Self::from_f64(self.hi.ln());
        a + self * (-a).exp() - Self::ONE
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * b.lo + self.lo * b.hi));
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::from_f64(q3)
    }
}

/// `ln(x^a + y^a)` in double-double, factoring out the larger term.
fn log_power_sum(a: DoubleDouble, log_x: DoubleDouble, log_y: DoubleDouble) -> DoubleDouble {
    let (ax, ay) = (a * log_x, a * log_y);
    let (big, small) = if ax.hi >= ay.hi { (ax, ay) } else { (ay, ax) };
    big + (DoubleDouble::ONE + (small - big).exp()).ln()
}

/// Reference `ln H(t) = ln G(r + t, s + t; x, y)` in double-double, with `t`
/// itself in double-double so that `t +/- step` is represented exactly.
pub fn ln_h_reference(r: f64, s: f64, x: f64, y: f64, t: DoubleDouble) -> DoubleDouble {
    let log_x = DoubleDouble::from_f64(x).ln();
    let log_y = DoubleDouble::from_f64(y).ln();
    if x == y {
        return log_x;
    }
    let a = DoubleDouble::from_f64(r) + t;
    if r == s {
        // g(a) = ln y + w L with w = x^a / (x^a + y^a)
        let l = log_x - log_y;
        let z = a * l;
        let w = if z.hi >= 0.0 {
            DoubleDouble::ONE / (DoubleDouble::ONE + (-z).exp())
        } else {
            let e = z.exp();
            e / (DoubleDouble::ONE + e)
        };
        return log_y + w * l;
    }
    let b = DoubleDouble::from_f64(s) + t;
    let num = log_power_sum(b, log_x, log_y) - log_power_sum(a, log_x, log_y);
    num / (DoubleDouble::from_f64(s) - DoubleDouble::from_f64(r))
}

/// Central first and second differences of `ln H` around `t` with step `h`:
/// `(f(t+h) - f(t-h)) / 2h` and `(f(t+h) - 2f(t) + f(t-h)) / h^2`.
pub fn ln_h_central_differences(r: f64, s: f64, x: f64, y: f64, t: f64, h: f64) -> (f64, f64) {
    let tc = DoubleDouble::from_f64(t);
    let step = DoubleDouble::from_f64(h);
    let fp = ln_h_reference(r, s, x, y, tc + step);
    let f0 = ln_h_reference(r, s, x, y, tc);
    let fm = ln_h_reference(r, s, x, y, tc - step);
    let d1 = (fp - fm) / step.scale_pow2(1);
    let d2 = (fp - f0.scale_pow2(1) + fm) / (step * step);
    (d1.to_f64(), d2.to_f64())
}

#[cfg(test)]
#[allow(clippy::excessive_precision, clippy::approx_constant)]
mod tests {
    use super::*;

    type Dd = DoubleDouble;

    fn assert_dd(v: Dd, hi: f64, lo: f64, tol: f64) {
        let err = (v - Dd { hi, lo }).to_f64().abs();
        assert!(err <= tol * hi.abs(), "{v:?} vs {hi} + {lo}: {err:e}");
    }

    #[test]
    fn known_constants() {
        assert_dd(
            Dd::ONE.exp(),
            2.718_281_828_459_045_091,
            1.445_646_891_729_250_158e-16,
            1e-30,
        );
        assert_dd(
            Dd::from_f64(10.0).ln(),
            2.302_585_092_994_045_901,
            -2.170_756_223_382_249_351e-16,
            1e-30,
        );
        assert_dd(Dd::from_f64(2.0).ln(), LN2.hi, LN2.lo, 1e-30);
    }

    #[test]
    fn exp_ln_round_trip() {
        for &v in &[1e-3, 0.37, 1.0, 2.5, 99.0, 1e5] {
            let x = Dd::from_f64(v);
            assert_dd(x.ln().exp(), v, 0.0, 1e-30);
        }
        for &v in &[-30.0, -1.5, 0.001, 4.0, 60.0] {
            let x = Dd::from_f64(v);
            assert_dd(x.exp().ln(), v, 0.0, 1e-30);
        }
    }

    #[test]
    fn arithmetic() {
        let third = Dd::ONE / Dd::from_f64(3.0);
        assert_dd(third * Dd::from_f64(3.0), 1.0, 0.0, 1e-31);
        let tiny = Dd::from_f64(1e-20);
        assert_eq!((Dd::ONE + tiny - Dd::ONE).to_f64(), 1e-20);
    }

    #[test]
    fn reference_matches_closed_forms() {
        let v = ln_h_reference(0.0, 1.0, 3.0, 5.0, Dd::ZERO).to_f64();
        assert!((v - 4f64.ln()).abs() < 1e-16);
        let v = ln_h_reference(-1.0, 0.0, 2.0, 6.0, Dd::ZERO).to_f64();
        assert!((v - 3f64.ln()).abs() < 1e-16);
        // r == s branch: g(2) for x=2, y=3
        let v = ln_h_reference(1.0, 1.0, 2.0, 3.0, Dd::ONE).to_f64();
        assert!((v - 0.973_853_793_865_597_6).abs() < 1e-16);
    }

    #[test]
    fn central_differences_at_spot_point() {
        let (d1, d2) = ln_h_central_differences(0.0, 1.0, 3.0, 5.0, -3.0, 1e-5);
        let d2_exact = 0.012_670_881_468_165_39;
        assert!((d2 - d2_exact).abs() < 1e-9, "{d2}");
        assert!(d1 > 0.0);
    }
}
