//! Scalar abstraction shared by the f64 fast path and the double-double path.
//!
//! Everything height-critical (ζ, log Γ, ϑ) is written once, generically over
//! [`Real`], and instantiated at both precisions. `f64` backs the default
//! budgets; [`crate::dd::Dd`] (≈31 significant digits) backs requests with
//! `abs_tol ≤ 1e-10`, where plain doubles lose too much to oscillation.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::sync::OnceLock;

pub trait Real:
    Copy
    + PartialEq
    + PartialOrd
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    /// Decimal digits the type can actually carry.
    const DIGITS: u32;
    /// Magnitude of one unit of relative rounding (≈ 10^−DIGITS).
    const EPS: f64;

    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn pi() -> Self;
    fn two_pi() -> Self;
    fn frac_pi_2() -> Self;
    fn ln_2pi() -> Self;
    fn ln_pi() -> Self;
    fn ln_2() -> Self;

    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin_cos(self) -> (Self, Self);
    /// Four-quadrant arctangent; `self` is the ordinate (y), `x` the abscissa.
    fn atan2(self, x: Self) -> Self;

    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { Self::one() / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// ln n for integer n ≥ 1 (table-backed where it pays off).
    fn ln_int(n: u64) -> Self;

    /// n^{−1/2} for integer n ≥ 1 (hot path of ζ on the critical line).
    fn inv_sqrt_int(n: u64) -> Self {
        Self::one() / Self::from_f64(n as f64).sqrt()
    }

    /// B_{2k}/(2k)! — Euler–Maclaurin tail coefficients, k ≥ 1.
    fn bern_over_fact(k: usize) -> Self;
    /// Largest k served by `bern_over_fact`.
    const BERN_MAX: usize;
}

// Number of integers with precomputed ln / 1/√n. 2^16 entries ≈ 0.5 MB each;
// Euler–Maclaurin cutoffs stay below this for heights up to ~10^5.
const TABLE_N: usize = 1 << 16;

fn ln_table() -> &'static [f64] {
    static T: OnceLock<Vec<f64>> = OnceLock::new();
    T.get_or_init(|| (0..=TABLE_N).map(|n| (n.max(1) as f64).ln()).collect())
}

fn inv_sqrt_table() -> &'static [f64] {
    static T: OnceLock<Vec<f64>> = OnceLock::new();
    T.get_or_init(|| {
        (0..=TABLE_N)
            .map(|n| 1.0 / (n.max(1) as f64).sqrt())
            .collect()
    })
}

/// Plain B_{2k} for k = 1..=15, enough for every f64 Stirling/EM tail here.
pub(crate) const BERNOULLI_2K: [f64; 15] = [
    0.16666666666666666,
    -0.03333333333333333,
    0.023809523809523808,
    -0.03333333333333333,
    0.07575757575757576,
    -0.2531135531135531,
    1.1666666666666667,
    -7.092156862745098,
    54.971177944862156,
    -529.1242424242424,
    6192.123188405797,
    -86580.25311355312,
    1425517.1666666667,
    -27298231.067816094,
    601580873.9006424,
];

impl Real for f64 {
    const DIGITS: u32 = 15;
    const EPS: f64 = 2.220446049250313e-16;
    const BERN_MAX: usize = 15;

    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }

    #[inline]
    fn pi() -> Self {
        std::f64::consts::PI
    }
    #[inline]
    fn two_pi() -> Self {
        std::f64::consts::TAU
    }
    #[inline]
    fn frac_pi_2() -> Self {
        std::f64::consts::FRAC_PI_2
    }
    #[inline]
    fn ln_2pi() -> Self {
        1.8378770664093456
    }
    #[inline]
    fn ln_pi() -> Self {
        1.1447298858494002
    }
    #[inline]
    fn ln_2() -> Self {
        std::f64::consts::LN_2
    }

    #[inline]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn exp(self) -> Self {
        f64::exp(self)
    }
    #[inline]
    fn ln(self) -> Self {
        f64::ln(self)
    }
    #[inline]
    fn sin_cos(self) -> (Self, Self) {
        f64::sin_cos(self)
    }
    #[inline]
    fn atan2(self, x: Self) -> Self {
        f64::atan2(self, x)
    }
    #[inline]
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }

    #[inline]
    fn ln_int(n: u64) -> Self {
        debug_assert!(n >= 1);
        if (n as usize) <= TABLE_N {
            ln_table()[n as usize]
        } else {
            (n as f64).ln()
        }
    }

    #[inline]
    fn inv_sqrt_int(n: u64) -> Self {
        debug_assert!(n >= 1);
        if (n as usize) <= TABLE_N {
            inv_sqrt_table()[n as usize]
        } else {
            1.0 / (n as f64).sqrt()
        }
    }

    #[inline]
    fn bern_over_fact(k: usize) -> Self {
        crate::dd::B2K_OVER_FACT[k - 1].hi
    }
}

/// Complex number over any [`Real`] scalar.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Cx<T> {
    pub re: T,
    pub im: T,
}

pub type C64 = Cx<f64>;

impl<T: Real> Cx<T> {
    #[inline]
    pub fn new(re: T, im: T) -> Self {
        Cx { re, im }
    }
    #[inline]
    pub fn real(re: T) -> Self {
        Cx {
            re,
            im: T::zero(),
        }
    }
    #[inline]
    pub fn zero() -> Self {
        Self::real(T::zero())
    }
    #[inline]
    pub fn one() -> Self {
        Self::real(T::one())
    }
    #[inline]
    pub fn i() -> Self {
        Cx {
            re: T::zero(),
            im: T::one(),
        }
    }
    #[inline]
    pub fn from_f64s(re: f64, im: f64) -> Self {
        Cx {
            re: T::from_f64(re),
            im: T::from_f64(im),
        }
    }
    #[inline]
    pub fn to_c64(self) -> C64 {
        Cx {
            re: self.re.to_f64(),
            im: self.im.to_f64(),
        }
    }

    #[inline]
    pub fn conj(self) -> Self {
        Cx {
            re: self.re,
            im: -self.im,
        }
    }
    #[inline]
    pub fn norm_sqr(self) -> T {
        self.re * self.re + self.im * self.im
    }
    #[inline]
    pub fn abs(self) -> T {
        // Hypot without the overflow ceremony: our magnitudes stay far from
        // the extremes, and Dd has no subnormal cliff to worry about.
        self.norm_sqr().sqrt()
    }
    #[inline]
    pub fn arg(self) -> T {
        self.im.atan2(self.re)
    }

    #[inline]
    pub fn scale(self, k: T) -> Self {
        Cx {
            re: self.re * k,
            im: self.im * k,
        }
    }

    pub fn recip(self) -> Self {
        // Scale by the larger component to dodge spurious overflow.
        if self.re.abs() >= self.im.abs() {
            let r = self.im / self.re;
            let d = self.re + self.im * r;
            Cx {
                re: T::one() / d,
                im: -r / d,
            }
        } else {
            let r = self.re / self.im;
            let d = self.re * r + self.im;
            Cx {
                re: r / d,
                im: -(T::one() / d),
            }
        }
    }

    pub fn exp(self) -> Self {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Cx {
            re: m * c,
            im: m * s,
        }
    }

    /// Principal branch: ln|z| + i·arg z, arg ∈ (−π, π].
    pub fn ln(self) -> Self {
        Cx {
            re: self.norm_sqr().ln() * T::from_f64(0.5),
            im: self.arg(),
        }
    }

    pub fn sin(self) -> Self {
        let (sa, ca) = self.re.sin_cos();
        let eb = self.im.exp();
        let enb = T::one() / eb;
        let half = T::from_f64(0.5);
        let cosh = (eb + enb) * half;
        let sinh = (eb - enb) * half;
        Cx {
            re: sa * cosh,
            im: ca * sinh,
        }
    }

    pub fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<T: Real> Add for Cx<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Cx {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}
impl<T: Real> Sub for Cx<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Cx {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}
impl<T: Real> Mul for Cx<T> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Cx {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}
impl<T: Real> Div for Cx<T> {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}
impl<T: Real> Neg for Cx<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Cx {
            re: -self.re,
            im: -self.im,
        }
    }
}
impl<T: Real> AddAssign for Cx<T> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        self.re += o.re;
        self.im += o.im;
    }
}
impl<T: Real> SubAssign for Cx<T> {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        self.re -= o.re;
        self.im -= o.im;
    }
}

impl C64 {
    /// Parallel error-tracking helper: |z| with NaN deflected to +inf so a
    /// poisoned bound can never pass a `<` test.
    pub fn abs_or_inf(self) -> f64 {
        let a = self.abs();
        if a.is_nan() {
            f64::INFINITY
        } else {
            a
        }
    }
}

impl std::fmt::Display for C64 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im >= 0.0 {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}{}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_field_ops() {
        let a = Cx::new(3.0, -2.0);
        let b = Cx::new(-1.5, 0.25);
        let p = a * b;
        assert!((p.re - (3.0 * -1.5 - -2.0 * 0.25)).abs() < 1e-15);
        assert!((p.im - (3.0 * 0.25 + -2.0 * -1.5)).abs() < 1e-15);
        let q = p / b;
        assert!((q.re - a.re).abs() < 1e-12 && (q.im - a.im).abs() < 1e-12);
    }

    #[test]
    fn complex_exp_ln_roundtrip() {
        let z = Cx::new(0.3, 2.2);
        let w = z.exp().ln();
        assert!((w.re - z.re).abs() < 1e-14);
        assert!((w.im - z.im).abs() < 1e-14);
    }

    #[test]
    fn powi_matches_repeated_mul() {
        let z = Cx::new(1.1, -0.4);
        let mut acc = Cx::one();
        for _ in 0..7 {
            acc = acc * z;
        }
        let p = z.powi(7);
        assert!((p - acc).abs() < 1e-12);
    }

    #[test]
    fn int_tables_agree_with_direct() {
        for n in [1u64, 2, 17, 65536, 70000] {
            assert!((f64::ln_int(n) - (n as f64).ln()).abs() < 1e-15);
            assert!((f64::inv_sqrt_int(n) - 1.0 / (n as f64).sqrt()).abs() < 1e-16);
        }
    }
}
