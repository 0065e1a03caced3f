//! ζ(s), the functional-equation factor χ(s), the Riemann–Siegel ϑ(t),
//! Hardy's Z(t), and the O(1/t) correction f(t).
//!
//! ζ is evaluated by Euler–Maclaurin summation with an explicit remainder
//! bound checked on every call (the cutoff grows automatically if the bound
//! cannot meet the requested tolerance). The whole core is generic over
//! [`Real`], so the same code runs in f64 for scanning-grade tolerances and
//! in double-double when `abs_tol ≤ 1e-10` demands ≥25 working digits.
//!
//! ϑ(t) uses the exact ℑ log Γ(¼+it/2) − (t/2)·log π definition below the
//! splice height and its Stirling expansion above it; the two branches agree
//! to 1e-12 at the splice (tested).

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::num::{Cx, Real, C64};

/// Largest |t| the evaluators accept.
pub const HEIGHT_CAP: f64 = 2.0e5;

/// A point s = σ + it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexPoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !sigma.is_finite() || !t.is_finite() {
            return Err(Error::InvalidInput(format!(
                "non-finite point sigma={sigma}, t={t}"
            )));
        }
        Ok(ComplexPoint { sigma, t })
    }

    pub fn to_c64(self) -> C64 {
        Cx::new(self.sigma, self.t)
    }
}

/// Requested absolute accuracy plus the number of working digits to use.
///
/// Invariant: `abs_tol ≥ 10^(2 − working_digits)` — two guard digits between
/// the arithmetic and the target keep the remainder logic meaningful.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionBudget {
    abs_tol: f64,
    working_digits: u32,
}

impl PrecisionBudget {
    pub fn new(abs_tol: f64, working_digits: u32) -> Result<Self> {
        if !(abs_tol > 0.0) {
            return Err(Error::InvalidInput(format!("abs_tol = {abs_tol} must be > 0")));
        }
        if working_digits < 15 {
            return Err(Error::InvalidInput(format!(
                "working_digits = {working_digits} must be ≥ 15"
            )));
        }
        let floor = 10f64.powi(2 - working_digits as i32);
        if abs_tol < floor {
            return Err(Error::InvalidInput(format!(
                "abs_tol = {abs_tol:.3e} below 10^(2-working_digits) = {floor:.3e}"
            )));
        }
        Ok(PrecisionBudget {
            abs_tol,
            working_digits,
        })
    }

    /// Pick the working precision that serves `abs_tol`: plain doubles above
    /// 1e-10, double-double (≈31 digits) at or below it.
    pub fn for_tol(abs_tol: f64) -> Result<Self> {
        if abs_tol > 1e-10 {
            Self::new(abs_tol, 15)
        } else {
            Self::new(abs_tol, 30)
        }
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn working_digits(&self) -> u32 {
        self.working_digits
    }

    pub(crate) fn wants_extended(&self) -> bool {
        self.working_digits >= 25 || self.abs_tol <= 1e-10
    }
}

impl Default for PrecisionBudget {
    fn default() -> Self {
        PrecisionBudget {
            abs_tol: 1e-9,
            working_digits: 15,
        }
    }
}

// ---------------------------------------------------------------------------
// log Γ and ψ (digamma), generic.
// ---------------------------------------------------------------------------

/// Continuous log Γ on the right half plane: each recurrence step adds a
/// principal log with |arg| < π/2, so the accumulated imaginary part is the
/// continuously-varied one (what ϑ needs), not the mod-2π principal value.
pub(crate) fn lgamma<T: Real>(z: Cx<T>) -> Cx<T> {
    // Below this radius, Stirling's tail stalls before reaching the type's
    // precision; shift up by Γ(z+1) = z·Γ(z) until safe.
    let thresh = if T::DIGITS > 20 { 36.0 } else { 14.0 };
    let mut zz = z;
    let mut acc = Cx::zero();
    while zz.abs().to_f64() < thresh {
        acc += zz.ln();
        zz = Cx::new(zz.re + T::one(), zz.im);
    }
    let ln_z = zz.ln();
    let half = T::from_f64(0.5);
    let mut lg = (zz - Cx::real(half)) * ln_z - zz
        + Cx::real(T::ln_2pi() * half);
    // Σ B_{2k} / ((2k)(2k−1) z^{2k−1}); coefficients rebuilt from the
    // B_{2k}/(2k)! table via an exact running factorial (2k−2)!.
    let w2 = (zz * zz).recip();
    let mut pow = zz.recip();
    let mut fact = T::one(); // (2k−2)! for k = 1
    let limit = if T::DIGITS > 20 { 16 } else { 9 };
    for k in 1..=limit {
        let c = T::bern_over_fact(k) * fact;
        let term = pow.scale(c);
        lg += term;
        if term.abs().to_f64() < 10f64.powi(-(T::DIGITS as i32) - 2) {
            break;
        }
        // (2k)! / (2k(2k−1)) step: multiply by (2k−1)(2k) for the next k.
        fact = fact * T::from_f64((2 * k) as f64 * (2 * k - 1) as f64);
        pow = pow * w2;
    }
    lg - acc
}

/// Digamma ψ(z) on the right half plane.
pub(crate) fn digamma<T: Real>(z: Cx<T>) -> Cx<T> {
    let thresh = if T::DIGITS > 20 { 36.0 } else { 14.0 };
    let mut zz = z;
    let mut acc = Cx::zero();
    while zz.abs().to_f64() < thresh {
        acc += zz.recip();
        zz = Cx::new(zz.re + T::one(), zz.im);
    }
    let half = T::from_f64(0.5);
    let mut ps = zz.ln() - zz.recip().scale(half);
    let w2 = (zz * zz).recip();
    let mut pow = w2;
    let mut fact = T::one();
    let limit = if T::DIGITS > 20 { 16 } else { 9 };
    for k in 1..=limit {
        // B_{2k}/(2k) = (B_{2k}/(2k)!) · (2k−1)!
        let c = T::bern_over_fact(k) * fact * T::from_f64((2 * k - 1) as f64);
        let term = pow.scale(c);
        ps -= term;
        if term.abs().to_f64() < 10f64.powi(-(T::DIGITS as i32) - 2) {
            break;
        }
        fact = fact * T::from_f64((2 * k) as f64 * (2 * k - 1) as f64);
        pow = pow * w2;
    }
    ps - acc
}

// ---------------------------------------------------------------------------
// Euler–Maclaurin ζ.
// ---------------------------------------------------------------------------

struct EmResult<T: Real> {
    value: Cx<T>,
    /// Rigorous truncation remainder bound plus a rounding-noise estimate.
    err: f64,
}

/// One Euler–Maclaurin pass at cutoff N. Returns the value and the remainder
/// bound, or None if the Bernoulli tail failed to meet `tol` before the
/// coefficient table ran out (caller should enlarge N).
fn em_pass<T: Real>(sigma: f64, t: f64, n_cut: u64, tol: f64) -> Option<EmResult<T>> {
    let sig = T::from_f64(sigma);
    let tt = T::from_f64(t);
    let half_sigma = sigma == 0.5;

    // Main sum Σ_{n<N} n^{−s} = Σ e^{−σ ln n}·(cos(t ln n) − i sin(t ln n)).
    let mut sum = Cx::<T>::zero();
    for n in 1..n_cut {
        let ln_n = T::ln_int(n);
        let amp = if half_sigma {
            T::inv_sqrt_int(n)
        } else {
            (-(sig * ln_n)).exp()
        };
        let (sn, cn) = (tt * ln_n).sin_cos();
        sum += Cx::new(amp * cn, -(amp * sn));
    }
    em_finish(sigma, t, n_cut, tol, sum)
}

/// Boundary + Bernoulli tail on top of a finished main sum.
fn em_finish<T: Real>(
    sigma: f64,
    t: f64,
    n_cut: u64,
    tol: f64,
    mut sum: Cx<T>,
) -> Option<EmResult<T>> {
    let s = Cx::<T>::from_f64s(sigma, t);

    // Boundary terms: N^{1−s}/(s−1) + N^{−s}/2.
    let ln_n = T::ln_int(n_cut);
    let n_pow_ms = (-(s * Cx::real(ln_n))).exp(); // N^{−s}
    let n_real = T::from_f64(n_cut as f64);
    let s_m1 = s - Cx::one();
    sum += n_pow_ms * Cx::real(n_real) / s_m1;
    sum += n_pow_ms.scale(T::from_f64(0.5));

    // Bernoulli tail with ratio recurrence (keeps factors O(1), no overflow):
    // term_1 = B₂/2! · s · N^{−s−1};
    // term_{k+1} = term_k · (b_{k+1}/b_k) · (s+2k−1)(s+2k) / N².
    let inv_n2 = T::one() / (n_real * n_real);
    let mut term = (n_pow_ms * s).scale(T::bern_over_fact(1) / n_real);
    let mut tail = Cx::<T>::zero();
    let mut k = 1usize;
    let mut rem_bound;
    loop {
        tail += term;
        // Peek at term_{k+1} to bound the remainder:
        // |R_K| ≤ |term_{K+1}| · |(s + 2K + 1)/(σ + 2K + 1)|.
        if k + 1 > T::BERN_MAX {
            return None;
        }
        let ratio = T::bern_over_fact(k + 1) / T::bern_over_fact(k);
        let f1 = s + Cx::real(T::from_f64((2 * k - 1) as f64));
        let f2 = s + Cx::real(T::from_f64((2 * k) as f64));
        let next = term * f1 * f2 * Cx::real(ratio * inv_n2);
        let next_mag = next.to_c64().abs_or_inf();
        let amp_ratio = {
            let num = ((sigma + (2 * k + 1) as f64).powi(2) + t * t).sqrt();
            let den = (sigma + (2 * k + 1) as f64).abs().max(1e-300);
            num / den
        };
        rem_bound = next_mag * amp_ratio;
        if rem_bound <= tol * 0.25 {
            break;
        }
        // An asymptotic series that has started growing will not recover.
        if next_mag > term.to_c64().abs_or_inf() {
            return None;
        }
        term = next;
        k += 1;
    }
    let value = sum + tail;

    // Rounding-noise estimate (not a bound): phase errors t·ln n·ε dominate;
    // their rms accumulation over the main sum is ε·t·ln N·√(Σ n^{−2σ}).
    let sum_sq = if 2.0 * sigma > 1.05 {
        2.0 * sigma / (2.0 * sigma - 1.0)
    } else if (2.0 * sigma - 1.0).abs() <= 0.05 {
        (n_cut as f64).ln() + 1.0
    } else {
        (n_cut as f64).powf(1.0 - 2.0 * sigma) / (1.0 - 2.0 * sigma).max(0.05) + 1.0
    };
    let noise = T::EPS
        * (4.0 + t.abs() * (n_cut as f64).ln() * sum_sq.sqrt() + value.to_c64().abs_or_inf());
    Some(EmResult {
        value,
        err: rem_bound + noise,
    })
}

fn zeta_generic<T: Real>(sigma: f64, t: f64, tol: f64) -> Result<(Cx<T>, f64)> {
    debug_assert!(t >= 0.0);
    // Smallest cutoff whose Bernoulli tail still converges fast enough to
    // meet the tolerance within the coefficient table (the per-step ratio is
    // ≈ (t/2πN)²); the remainder bound check below catches any shortfall and
    // doubles N, so this is a speed knob, not a correctness one.
    let mut n_cut = if T::DIGITS > 20 {
        30.0f64.max(0.62 * t).ceil() as u64
    } else {
        20.0f64.max(0.30 * t).ceil() as u64
    };
    for _ in 0..6 {
        if let Some(r) = em_pass::<T>(sigma, t, n_cut, tol) {
            return Ok((r.value, r.err));
        }
        n_cut *= 2;
    }
    Err(Error::BudgetExceeded(format!(
        "Euler–Maclaurin cutoff exceeded {n_cut} at s = {sigma}+{t}i without meeting tol {tol:.1e}"
    )))
}

/// |ζ(½+it)|² at many nearby heights in one pass (the hot path of every
/// second-moment quadrature): the n-loop runs outermost so each ln n /
/// n^{−1/2} load is shared by all nodes of a panel. Returns (|ζ|², error
/// report on |ζ|²) per node.
pub(crate) fn zeta_half_sq_batch(ts: &[f64], out: &mut Vec<(f64, f64)>) {
    let t_max = ts.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let mut n_cut = 20.0f64.max(0.30 * t_max).ceil() as u64;
    'grow: for _ in 0..6 {
        out.clear();
        let mut re = vec![0.0f64; ts.len()];
        let mut im = vec![0.0f64; ts.len()];
        for n in 1..n_cut {
            let ln_n = f64::ln_int(n);
            let amp = f64::inv_sqrt_int(n);
            for (j, &t) in ts.iter().enumerate() {
                let (sn, cn) = (t.abs() * ln_n).sin_cos();
                re[j] += amp * cn;
                im[j] -= amp * sn;
            }
        }
        for (j, &t) in ts.iter().enumerate() {
            match em_finish::<f64>(0.5, t.abs(), n_cut, 1e-9, Cx::new(re[j], im[j])) {
                Some(r) => {
                    let a = r.value.abs();
                    out.push((r.value.norm_sqr(), 2.0 * a * r.err));
                }
                None => {
                    n_cut *= 2;
                    continue 'grow;
                }
            }
        }
        return;
    }
    unreachable!("batched Euler–Maclaurin cannot fail to converge on the critical line");
}

/// ζ(s) to `prec.abs_tol` absolute accuracy.
pub fn zeta(s: ComplexPoint, prec: &PrecisionBudget) -> Result<C64> {
    zeta_with_err(s, prec).map(|(v, _)| v)
}

/// ζ(s) plus the evaluator's internal error report (remainder bound + noise
/// estimate).
pub fn zeta_with_err(s: ComplexPoint, prec: &PrecisionBudget) -> Result<(C64, f64)> {
    if s.sigma == 1.0 && s.t == 0.0 {
        return Err(Error::PoleAtOne);
    }
    if s.t.abs() > HEIGHT_CAP {
        return Err(Error::HeightCap {
            t: s.t,
            cap: HEIGHT_CAP,
        });
    }
    let conj = s.t < 0.0;
    let t = s.t.abs();
    let (v, err) = if prec.wants_extended() {
        let (v, err) = zeta_generic::<Dd>(s.sigma, t, prec.abs_tol)?;
        (v.to_c64(), err)
    } else {
        zeta_generic::<f64>(s.sigma, t, prec.abs_tol)?
    };
    Ok((if conj { v.conj() } else { v }, err))
}

// ---------------------------------------------------------------------------
// ϑ(t) and f(t).
// ---------------------------------------------------------------------------

/// ϑ's Stirling coefficients c_n = (1 − 2^{1−2n}) |B_{2n}| / (4n(2n−1)):
/// ϑ(t) ≈ (t/2)·ln(t/2π) − t/2 − π/8 + Σ c_n t^{1−2n}.
pub(crate) fn theta_coeff(n: usize) -> f64 {
    let b = crate::num::BERNOULLI_2K[n - 1].abs();
    (1.0 - 2f64.powi(1 - 2 * n as i32)) * b / ((4 * n * (2 * n - 1)) as f64)
}

/// Splice height between the exact log Γ branch and the Stirling branch.
pub(crate) const THETA_SPLICE: f64 = 20.0;

/// |ζ(½+it)|² with the evaluator's error report on |ζ|² — the hot integrand
/// of the second-moment quadratures, skipping the ϑ phase entirely.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn zeta_half_sq(t: f64) -> (f64, f64) {
    let (v, err) = zeta_generic::<f64>(0.5, t.abs(), 1e-9)
        .expect("default budget attainable on the critical line");
    let a = v.abs();
    (v.norm_sqr(), 2.0 * a * err)
}

fn theta_exact<T: Real>(t: f64) -> T {
    let z = Cx::<T>::from_f64s(0.25, 0.5 * t);
    let lg = lgamma(z);
    lg.im - T::from_f64(0.5 * t) * T::ln_pi()
}

fn theta_stirling<T: Real>(t: f64) -> T {
    let tt = T::from_f64(t);
    let half_t = tt * T::from_f64(0.5);
    let mut v = half_t * (tt / T::two_pi()).ln() - half_t - T::pi() * T::from_f64(0.125);
    let t2 = T::one() / (tt * tt);
    let mut pow = T::one() / tt;
    let n_max = if T::DIGITS > 20 { 14 } else { 5 };
    for n in 1..=n_max {
        v += T::from_f64(theta_coeff(n)) * pow;
        pow = pow * t2;
    }
    v
}

fn theta_generic<T: Real>(t: f64) -> T {
    // The double-double exact branch reaches where its Stirling tail is
    // already at full rank, so a single splice constant serves both types.
    let splice = if T::DIGITS > 20 { 40.0 } else { THETA_SPLICE };
    if t < splice {
        theta_exact::<T>(t)
    } else {
        theta_stirling::<T>(t)
    }
}

/// Riemann–Siegel ϑ(t) = ℑ log Γ(¼ + it/2) − (t/2)·log π, for t ≥ 0.
pub fn theta(t: f64) -> f64 {
    theta_generic::<f64>(t)
}

/// ϑ at double-double rank (used wherever `abs_tol ≤ 1e-10`).
pub fn theta_dd(t: f64) -> Dd {
    theta_generic::<Dd>(t)
}

/// ϑ′(t) = ½·ℜ ψ(¼ + it/2) − ½·log π (analytic, both branches).
pub fn theta_deriv(t: f64) -> f64 {
    if t >= THETA_SPLICE {
        let mut v = 0.5 * (t / std::f64::consts::TAU).ln();
        let t2 = 1.0 / (t * t);
        let mut pow = t2;
        for n in 1..=5 {
            v += theta_coeff(n) * (1.0 - 2.0 * n as f64) * pow;
            pow *= t2;
        }
        v
    } else {
        let ps = digamma::<f64>(Cx::new(0.25, 0.5 * t));
        0.5 * ps.re - 0.5 * std::f64::consts::PI.ln()
    }
}

/// The O(1/t) Stirling correction in the zero-counting formula:
/// f(t) = ϑ(t)/π + 1/8 − (t/2π)·log(t/2π) + t/2π.
///
/// Above the splice this is the pure odd-power series (cancellation-free);
/// below it the definition is evaluated directly.
pub fn f_correction(t: f64) -> f64 {
    if t >= THETA_SPLICE {
        let t2 = 1.0 / (t * t);
        let mut pow = 1.0 / t;
        let mut v = 0.0;
        for n in 1..=5 {
            v += theta_coeff(n) * pow;
            pow *= t2;
        }
        v / std::f64::consts::PI
    } else {
        let x = t / std::f64::consts::TAU;
        theta(t) / std::f64::consts::PI + 0.125 - x * x.max(1e-300).ln() + x
    }
}

/// f′(t), from the term-wise derivative of the same series.
pub fn f_correction_deriv(t: f64) -> f64 {
    if t >= THETA_SPLICE {
        let t2 = 1.0 / (t * t);
        let mut pow = t2;
        let mut v = 0.0;
        for n in 1..=5 {
            v += theta_coeff(n) * (1.0 - 2.0 * n as f64) * pow;
            pow *= t2;
        }
        v / std::f64::consts::PI
    } else {
        theta_deriv(t) / std::f64::consts::PI - (t / std::f64::consts::TAU).max(1e-300).ln()
            / std::f64::consts::TAU
    }
}

// ---------------------------------------------------------------------------
// χ(s) and Hardy's Z.
// ---------------------------------------------------------------------------

/// log sin z, stable for large |ℑ z| (the direct product would overflow the
/// exponent range long before t does).
fn ln_sin<T: Real>(z: Cx<T>) -> Cx<T> {
    let b = z.im.to_f64();
    if b > 8.0 {
        // sin z ≈ e^{−iz}·(i/2)·(1 − e^{2iz})
        let two_iz = Cx::new(-(z.im + z.im), z.re + z.re); // 2iz
        let corr = (Cx::one() - two_iz.exp()).ln();
        Cx::new(z.im - T::ln_2(), -z.re + T::frac_pi_2()) + corr
    } else if b < -8.0 {
        let zc = z.conj();
        let two_iz = Cx::new(-(zc.im + zc.im), zc.re + zc.re);
        let corr = (Cx::one() - two_iz.exp()).ln();
        (Cx::new(zc.im - T::ln_2(), -zc.re + T::frac_pi_2()) + corr).conj()
    } else {
        z.sin().ln()
    }
}

fn chi_generic<T: Real>(sigma: f64, t: f64) -> Cx<T> {
    // log χ = s·ln2 + (s−1)·ln π + ln sin(πs/2) + log Γ(1−s), valid where
    // ℜ(1−s) > 0; otherwise use χ(s) = 1/χ(1−s). Branch choices are free:
    // exp() collapses them all to the same value.
    if sigma <= 0.5 {
        let s = Cx::<T>::from_f64s(sigma, t);
        let one_m_s = Cx::one() - s;
        let l = s.scale(T::ln_2())
            + (s - Cx::one()).scale(T::ln_pi())
            + ln_sin(s.scale(T::frac_pi_2()))
            + lgamma(one_m_s);
        l.exp()
    } else {
        chi_generic::<T>(1.0 - sigma, -t).recip()
    }
}

/// χ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s), the factor in ζ(s) = χ(s) ζ(1−s).
pub fn chi(s: ComplexPoint, prec: &PrecisionBudget) -> Result<C64> {
    // Poles at the odd integers s = 3, 5, … (and the χ(1−s) images of the
    // even ones); ζ(1−s) vanishes there to keep ζ finite, but χ itself blows
    // up. Detect the real-axis singular set explicitly.
    if s.t == 0.0 {
        let x = s.sigma;
        if x >= 0.999 && (x - x.round()).abs() < 1e-9 && (x.round() as i64) % 2 == 1 {
            return Err(Error::ChiSingular {
                sigma: s.sigma,
                t: s.t,
            });
        }
    }
    if s.t.abs() > HEIGHT_CAP {
        return Err(Error::HeightCap {
            t: s.t,
            cap: HEIGHT_CAP,
        });
    }
    Ok(if prec.wants_extended() {
        chi_generic::<Dd>(s.sigma, s.t).to_c64()
    } else {
        chi_generic::<f64>(s.sigma, s.t)
    })
}

fn hardy_z_generic<T: Real>(t: f64, tol: f64) -> Result<(f64, f64)> {
    let (zv, err) = zeta_generic::<T>(0.5, t.abs(), tol)?;
    let th = theta_generic::<T>(t.abs());
    let (sn, cn) = th.sin_cos();
    // Z = e^{iϑ} ζ(½+it); the imaginary part is numerical noise and folds
    // into the error report.
    let re = cn * zv.re - sn * zv.im;
    let im = sn * zv.re + cn * zv.im;
    Ok((re.to_f64(), err + im.to_f64().abs()))
}

/// Hardy's Z(t) = e^{iϑ(t)} ζ(½+it): real, with |Z(t)| = |ζ(½+it)|, and its
/// sign changes mark the critical-line zeros.
pub fn hardy_z(t: f64) -> Result<f64> {
    hardy_z_prec(t, &PrecisionBudget::default()).map(|(v, _)| v)
}

/// Z(t) under an explicit budget; returns (value, error report).
pub fn hardy_z_prec(t: f64, prec: &PrecisionBudget) -> Result<(f64, f64)> {
    if t.abs() > HEIGHT_CAP {
        return Err(Error::HeightCap {
            t,
            cap: HEIGHT_CAP,
        });
    }
    if prec.wants_extended() {
        hardy_z_generic::<Dd>(t, prec.abs_tol)
    } else {
        hardy_z_generic::<f64>(t, prec.abs_tol)
    }
}

/// Z′(t) by central differences with one Richardson extrapolation step.
/// Returns (derivative, error estimate).
pub fn hardy_z_prime(t: f64, h: f64) -> Result<(f64, f64)> {
    if !(h > 0.0 && h <= 1e-3) {
        return Err(Error::InvalidInput(format!(
            "step h = {h} outside (0, 1e-3]"
        )));
    }
    let prec = PrecisionBudget::default();
    let z = |x: f64| hardy_z_prec(x, &prec).map(|(v, _)| v);
    let d_h = (z(t + h)? - z(t - h)?) / (2.0 * h);
    let h2 = 0.5 * h;
    let d_h2 = (z(t + h2)? - z(t - h2)?) / (2.0 * h2);
    let richardson = (4.0 * d_h2 - d_h) / 3.0;
    // Cancellation noise: each Z carries ~1e-12·(1+t/1000) of evaluation
    // noise, amplified by 1/h.
    let eval_noise = 1e-12 * (1.0 + t.abs() / 1000.0);
    let noise = 2.0 * eval_noise / h2;
    let budget = 0.05 * richardson.abs() + 1e-4;
    if noise > budget {
        return Err(Error::StepTooSmall { noise, budget });
    }
    let err = (d_h2 - d_h).abs() / 3.0 + noise;
    Ok((richardson, err))
}
