//! The argument function S(T), its iterated integrals S₁, S₂, S₃, moments of
//! S, and the second-moment error term E(T).
//!
//! S comes in two independent flavours: the cheap, branch-exact route through
//! the zero table (S = N − ϑ/π − 1) and the classical continuous-argument
//! tracking of ζ along 2 → 2+iT → ½+iT, retained as cross-validation.
//!
//! The iterated integrals exploit the step-minus-smooth structure of S: the
//! step part integrates to exact power sums over the ordinates, the smooth
//! part to closed-form antiderivatives of ϑ's Stirling expansion, so S₁ and
//! S₂ involve no numerical quadrature at all above the ϑ splice height.

use crate::error::{Error, Result};
use crate::num::C64;
use crate::quad::{self, QuadResult};
use crate::zerofinder::ZeroTable;
use crate::zetacore::{
    self, theta, theta_coeff, zeta, ComplexPoint, PrecisionBudget, HEIGHT_CAP,
    THETA_SPLICE,
};

use std::f64::consts::{PI, TAU};

/// Euler's constant, for the second-moment main term.
pub const C0: f64 = 0.57721566490153286061;

/// ∫₀²⁰ ϑ(u) du and ∫₀²⁰ ∫₀^t ϑ(u) du dt, fixing the constants of the
/// closed-form antiderivatives above the splice. (25-digit quadrature of the
/// exact log Γ branch.)
const THETA_INT_20: f64 = -41.81252284516402408759;
const THETA_INT2_20: f64 = -524.205498917239143051;

/// Step control for the continuous-argument path 2 → 2+iT → ½+iT.
#[derive(Clone, Copy, Debug)]
pub struct ArgPath {
    /// Largest parameter step attempted along either segment.
    pub max_step: f64,
    /// Smallest step the halving control may reach before giving up.
    pub min_step: f64,
}

impl Default for ArgPath {
    fn default() -> Self {
        ArgPath {
            max_step: 0.25,
            min_step: 1e-9,
        }
    }
}

/// S(T) = N(T) − ϑ(T)/π − 1 from the zero table (right-continuous at the
/// ordinates, matching the S(T) = S(T+0) convention).
pub fn s_of(t: f64, table: &ZeroTable) -> Result<f64> {
    let n = crate::zerofinder::n_of(t, table)?;
    Ok(n as f64 - theta(t) / PI - 1.0)
}

/// S(T) by continuous variation of arg ζ along 2 → 2+iT → ½+iT, with
/// default step control.
pub fn s_direct(t: f64) -> Result<f64> {
    s_direct_with(t, &ArgPath::default())
}

/// As [`s_direct`], with explicit step control.
pub fn s_direct_with(t: f64, path: &ArgPath) -> Result<f64> {
    if !(t > 0.0) || t > HEIGHT_CAP {
        return Err(Error::InvalidInput(format!(
            "height {t} outside (0, {HEIGHT_CAP}]"
        )));
    }
    if !(path.min_step > 0.0 && path.min_step <= path.max_step) {
        return Err(Error::InvalidInput(format!(
            "step control 0 < min_step ≤ max_step violated: {path:?}"
        )));
    }
    let prec = PrecisionBudget::default();
    let zeta_at = |sigma: f64, tt: f64| -> Result<C64> {
        zeta(ComplexPoint::new(sigma, tt)?, &prec)
    };

    // arg ζ(2) = 0; walk each segment accumulating principal-branch argument
    // increments, certified < π/2 each (else the branch is ambiguous).
    let mut total = 0.0;
    let mut z_prev = zeta_at(2.0, 0.0)?;

    // Segment parameterizations: (σ(u), t(u)) for u from 0 to `len`.
    let vertical = |u: f64| (2.0, u);
    let horizontal = |u: f64| (2.0 - u, t);
    let segments: [(&dyn Fn(f64) -> (f64, f64), f64); 2] =
        [(&vertical, t), (&horizontal, 1.5)];

    for (param, len) in segments {
        let mut u = 0.0;
        let mut step = path.max_step;
        while u < len {
            let trial = (u + step).min(len);
            let (sig, tt) = param(trial);
            let z_new = zeta_at(sig, tt)?;
            let delta = (z_new / z_prev).arg();
            if delta.abs() >= 0.45 * PI {
                step *= 0.5;
                if step < path.min_step {
                    return Err(Error::BranchAmbiguity { t: tt, step });
                }
                continue;
            }
            total += delta;
            u = trial;
            z_prev = z_new;
            step = (step * 1.9).min(path.max_step);
        }
    }
    Ok(total / PI)
}

// ---------------------------------------------------------------------------
// Antiderivatives of ϑ.
// ---------------------------------------------------------------------------

/// Closed-form ∫ of the ϑ Stirling expansion, valid t ≥ splice:
/// F(t) = t²/4·ln(t/2π) − 3t²/8 − πt/8 + c₁ ln t + Σ_{n≥2} c_n t^{2−2n}/(2−2n).
fn theta_stirling_int(t: f64) -> f64 {
    let mut v = t * t / 4.0 * (t / TAU).ln() - 3.0 * t * t / 8.0 - PI * t / 8.0
        + theta_coeff(1) * t.ln();
    for n in 2..=5 {
        v += theta_coeff(n) * t.powi(2 - 2 * n as i32) / (2.0 - 2.0 * n as f64);
    }
    v
}

/// ∫ of [`theta_stirling_int`] (again closed form; the constant of the outer
/// antiderivative is carried by the caller).
fn theta_stirling_int2(t: f64) -> f64 {
    let t2 = t * t;
    let t3 = t2 * t;
    let mut v = t3 / 12.0 * (t / TAU).ln() - t3 / 36.0 - t3 / 8.0 - PI * t2 / 16.0
        + theta_coeff(1) * (t * t.ln() - t);
    for n in 2..=5 {
        let p = 2.0 - 2.0 * n as f64;
        v += theta_coeff(n) * t.powi(3 - 2 * n as i32) / (p * (p + 1.0));
    }
    v
}

/// Θ(t) = ∫₀ᵗ ϑ(u) du: direct quadrature of the exact branch below the
/// splice, closed form (constant-matched at the splice) above it.
pub fn theta_integral(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t < THETA_SPLICE {
        quad::integrate(theta, 0.0, t, 1e-11)
            .expect("theta is smooth on [0, 20]")
            .value
    } else {
        THETA_INT_20 + theta_stirling_int(t) - theta_stirling_int(THETA_SPLICE)
    }
}

/// Θ₂(t) = ∫₀ᵗ Θ(u) du, same strategy one level up.
pub fn theta_integral2(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t < THETA_SPLICE {
        quad::integrate(theta_integral, 0.0, t, 1e-10)
            .expect("theta_integral is smooth on [0, 20]")
            .value
    } else {
        // Θ(u) = F(u) + K above the splice, so ∫ Θ = F₂(u) + K·u + const.
        let k = THETA_INT_20 - theta_stirling_int(THETA_SPLICE);
        THETA_INT2_20 + (theta_stirling_int2(t) + k * t)
            - (theta_stirling_int2(THETA_SPLICE) + k * THETA_SPLICE)
    }
}

/// Fused compensated power sums Σ_{γ ≤ T} (T−γ)^k for k = 1, 2, 3.
fn gap_power_sums(t: f64, table: &ZeroTable) -> (f64, f64, f64) {
    let mut s = [0.0f64; 3];
    let mut c = [0.0f64; 3]; // Kahan compensations
    for z in &table.ordinates()[..table.count_up_to(t)] {
        let d = t - z.gamma;
        let mut term = d;
        for k in 0..3 {
            let y = term - c[k];
            let sum = s[k] + y;
            c[k] = (sum - s[k]) - y;
            s[k] = sum;
            term *= d;
        }
    }
    (s[0], s[1], s[2])
}

/// S_n(T) = ∫₀ᵀ S_{n−1}, n ∈ {1, 2, 3} (S₀ = S).
///
/// Exact decomposition: integrating N's step part gives power sums over the
/// ordinates; integrating the smooth part gives Θ and its antiderivatives:
///   S₁ = Σ(T−γ) − Θ/π − T,
///   S₂ = Σ(T−γ)²/2 − Θ₂/π − T²/2,
///   S₃ = Σ(T−γ)³/6 − Θ₃/π − T³/6 with Θ₃(T) = ∫₀ᵀ (T−u) Θ(u) du.
pub fn s_iter(n: u32, t: f64, table: &ZeroTable) -> Result<f64> {
    if !(1..=3).contains(&n) {
        return Err(Error::InvalidInput(format!("iteration order {n} not in 1..=3")));
    }
    if t > table.height() {
        return Err(Error::HeightExceeded {
            t,
            height: table.height(),
        });
    }
    if t <= 0.0 {
        return Ok(0.0);
    }
    let (p1, p2, p3) = gap_power_sums(t, table);
    Ok(match n {
        1 => p1 - theta_integral(t) / PI - t,
        2 => p2 / 2.0 - theta_integral2(t) / PI - t * t / 2.0,
        _ => {
            // Θ₃ by a single flattened quadrature (Θ itself is closed-form
            // above the splice, so the integrand is cheap and smooth).
            let tol = 1e-7f64.max(2e-16 * t.powi(4));
            let theta3 = quad::integrate(|u| (t - u) * theta_integral(u), 0.0, t, tol)
                .expect("smooth integrand")
                .value;
            p3 / 6.0 - theta3 / PI - t * t * t / 6.0
        }
    })
}

/// ∫_T^{2T} S(t)^{2k} dt by exact-node quadrature: between consecutive
/// ordinates S is smooth (N constant), so each gap takes one fixed
/// Gauss–Legendre panel.
pub fn s_moment(t: f64, k: u32, table: &ZeroTable) -> Result<f64> {
    if !(k >= 1) {
        return Err(Error::InvalidInput("moment order k must be ≥ 1".into()));
    }
    if 2.0 * t > table.height() {
        return Err(Error::HeightExceeded {
            t: 2.0 * t,
            height: table.height(),
        });
    }
    if !(t > 0.0) {
        return Err(Error::InvalidInput(format!("T = {t} must be positive")));
    }
    let lo_idx = table.count_up_to(t);
    let hi_idx = table.count_up_to(2.0 * t);
    let mut nodes = Vec::with_capacity(hi_idx - lo_idx + 2);
    nodes.push(t);
    nodes.extend(
        table.ordinates()[lo_idx..hi_idx]
            .iter()
            .map(|z| z.gamma),
    );
    nodes.push(2.0 * t);
    let mut acc = 0.0;
    for w in nodes.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a < 1e-12 {
            continue;
        }
        let n_const = table.count_up_to(0.5 * (a + b)) as f64;
        let integrand = |u: f64| (n_const - theta(u) / PI - 1.0).powi(2 * k as i32);
        acc += quad::gl_fixed(integrand, a, b, &quad::GL16_X, &quad::GL16_W);
    }
    Ok(acc)
}

/// E(T): the error term in ∫₀ᵀ |ζ(½+it)|² dt = T log(T/2π) + (2C₀−1)T + E(T).
pub fn e_of(t: f64) -> Result<f64> {
    let q = zeta_sq_integral(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    Ok(q.value - t * (t / TAU).ln() - (2.0 * C0 - 1.0) * t)
}

/// ∫₀ᵀ |ζ(½+it)|² dt with panels at most ¼ of the local mean zero spacing,
/// each integrated by a GL8/GL4 pair; the accumulated error estimate must
/// stay within the 10⁻⁴·√T budget.
pub fn zeta_sq_integral(t: f64) -> Result<QuadResult> {
    if !(t >= 0.0) || t > HEIGHT_CAP {
        return Err(Error::InvalidInput(format!(
            "upper limit {t} outside [0, {HEIGHT_CAP}]"
        )));
    }
    if t == 0.0 {
        return Ok(QuadResult {
            value: 0.0,
            err: 0.0,
            panels: 1,
        });
    }
    let mut value = 0.0;
    let mut err = 0.0;
    let mut panels = 0u32;
    let mut lo = 0.0f64;
    let mut ts: Vec<f64> = Vec::with_capacity(12);
    let mut vals: Vec<(f64, f64)> = Vec::with_capacity(12);
    while lo < t {
        let spacing = TAU / (lo / TAU).max(1.5).ln().max(0.25);
        // The integrand is analytic in t only up to the image of the s = 1
        // pole at t = ±i/2; panels hugging the origin must stay well inside
        // that radius or the Gauss pair loses its accuracy margin.
        let cap = (0.25 + 0.5 * lo).min(1.0);
        let hi = (lo + (spacing / 4.0).min(cap)).min(t);
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        ts.clear();
        ts.extend(quad::GL8_X.iter().map(|x| mid + half * x));
        ts.extend(quad::GL4_X.iter().map(|x| mid + half * x));
        zetacore::zeta_half_sq_batch(&ts, &mut vals);
        let mut i8 = 0.0;
        let mut e_eval = 0.0;
        for (j, w) in quad::GL8_W.iter().enumerate() {
            i8 += w * vals[j].0;
            e_eval += w * vals[j].1;
        }
        let mut i4 = 0.0;
        for (j, w) in quad::GL4_W.iter().enumerate() {
            i4 += w * vals[8 + j].0;
        }
        value += i8 * half;
        err += ((i8 - i4).abs() + e_eval) * half;
        panels += 1;
        lo = hi;
    }
    let budget = 1e-4 * t.sqrt();
    if err > budget {
        return Err(Error::BudgetExceeded(format!(
            "second-moment quadrature error {err:.3e} exceeds budget {budget:.3e} at T = {t}"
        )));
    }
    Ok(QuadResult { value, err, panels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zerofinder::ZeroTable;
    use crate::zetacore::theta_deriv;
    use std::sync::OnceLock;

    const GAMMA_1: f64 = 14.134725141734694;

    fn table200() -> &'static ZeroTable {
        static T: OnceLock<ZeroTable> = OnceLock::new();
        T.get_or_init(|| ZeroTable::build(200.0, 1).unwrap())
    }

    #[test]
    fn s_of_against_first_principles() {
        let tab = table200();
        // Below γ₁ the count is 0, so S = −ϑ/π − 1 and |S| < 1 there.
        let s14 = s_of(14.0, tab).unwrap();
        assert!((s14 - (-theta(14.0) / PI - 1.0)).abs() < 1e-14);
        assert!(s14.abs() < 1.0);

        // Jump of +1 across γ₁ (ϑ continuous).
        let below = s_of(GAMMA_1 - 1e-4, tab).unwrap();
        let above = s_of(GAMMA_1 + 1e-4, tab).unwrap();
        assert!((above - below - 1.0).abs() < 1e-3);

        // Between zeros, S′ = −ϑ′/π.
        let h = 1e-5;
        let fd = (s_of(17.0 + h, tab).unwrap() - s_of(17.0 - h, tab).unwrap()) / (2.0 * h);
        assert!((fd + theta_deriv(17.0) / PI).abs() < 1e-6);

        // Envelope on modest heights.
        for t in [20.0, 50.0, 113.3, 199.0] {
            let s = s_of(t, tab).unwrap();
            assert!(s.abs() <= 1.0 + 0.5 * t.ln(), "|S({t})| = {}", s.abs());
        }

        assert!(matches!(
            s_of(1000.0, tab),
            Err(Error::HeightExceeded { .. })
        ));
    }

    #[test]
    fn s_direct_agrees_with_table_route() {
        let tab = table200();
        for t in [30.0, 100.0, 163.5] {
            let a = s_of(t, tab).unwrap();
            let b = s_direct(t).unwrap();
            assert!(
                (a - b).abs() < 1e-6,
                "S mismatch at {t}: table {a} vs path {b}"
            );
        }
        // Low heights have no zeros; |S| < 1 there.
        assert!(s_direct(2.0).unwrap().abs() < 1.0);
    }

    #[test]
    fn coarse_path_raises_branch_ambiguity() {
        // With step halving disabled, the single-step horizontal leg at
        // T = 0.5 sweeps arg ζ by the pole's ≈1.9 rad — an uncertifiable
        // increment.
        let coarse = ArgPath {
            max_step: 1.5,
            min_step: 1.5,
        };
        assert!(matches!(
            s_direct_with(0.5, &coarse),
            Err(Error::BranchAmbiguity { .. })
        ));
    }

    #[test]
    fn theta_antiderivatives_match_reference() {
        // ∫₀¹⁰⁰ ϑ: 25-digit independent quadrature.
        assert!((theta_integral(100.0) - 3129.252360266781054207).abs() < 1e-8);
        // Continuity and slope at the splice.
        assert!((theta_integral(20.0) - THETA_INT_20).abs() < 1e-10);
        let h = 1e-4;
        for t in [15.0, 20.0, 25.0, 60.0] {
            let fd = (theta_integral(t + h) - theta_integral(t - h)) / (2.0 * h);
            assert!((fd - theta(t)).abs() < 1e-6, "Θ′ ≠ ϑ at {t}");
            let fd2 = (theta_integral2(t + h) - theta_integral2(t - h)) / (2.0 * h);
            assert!((fd2 - theta_integral(t)).abs() < 1e-5, "Θ₂′ ≠ Θ at {t}");
        }
        assert!((theta_integral2(20.0) - THETA_INT2_20).abs() < 1e-9);
    }

    #[test]
    fn iterated_integrals_reference_values() {
        let tab = table200();
        // Independent 25-digit values of S₁ = ∫₀ᵀ S.
        assert!((s_iter(1, 1.0, tab).unwrap() - -0.66855786984290092723).abs() < 1e-9);
        assert!((s_iter(1, 100.0, tab).unwrap() - -0.52401938816560839829).abs() < 1e-8);

        // S₁(ε) → 0.
        assert!(s_iter(1, 1e-3, tab).unwrap().abs() < 2e-3);

        // Continuity across γ₁.
        let a = s_iter(1, GAMMA_1 - 1e-4, tab).unwrap();
        let b = s_iter(1, GAMMA_1 + 1e-4, tab).unwrap();
        assert!((a - b).abs() < 1e-3);
    }

    #[test]
    fn iterated_integrals_chain_rule() {
        // S₂′ = S₁ and S₃′ = S₂ by central differences — an independent
        // check on the closed-form Θ antiderivative chain.
        let tab = table200();
        let h = 1e-3;
        for t in [30.0, 100.0, 150.0] {
            let d2 = (s_iter(2, t + h, tab).unwrap() - s_iter(2, t - h, tab).unwrap()) / (2.0 * h);
            assert!(
                (d2 - s_iter(1, t, tab).unwrap()).abs() < 1e-5,
                "S₂′ ≠ S₁ at {t}"
            );
            let d3 = (s_iter(3, t + h, tab).unwrap() - s_iter(3, t - h, tab).unwrap()) / (2.0 * h);
            assert!(
                (d3 - s_iter(2, t, tab).unwrap()).abs() < 1e-4,
                "S₃′ ≠ S₂ at {t}"
            );
        }
    }

    #[test]
    fn moment_against_adaptive_oracle() {
        let tab = table200();
        let t = 60.0;
        let m1 = s_moment(t, 1, tab).unwrap();
        // The oracle integrates S² adaptively, grinding through the jump
        // discontinuities the exact-node route never sees.
        let oracle = quad::integrate(
            |u| s_of(u, tab).unwrap().powi(2),
            t,
            2.0 * t,
            m1 * 1e-5,
        )
        .unwrap();
        assert!(
            (m1 - oracle.value).abs() / m1 < 1e-4,
            "moment {m1} vs oracle {}",
            oracle.value
        );
        // Where sup|S| < 1 on the range, higher moments shrink.
        let m2 = s_moment(t, 2, tab).unwrap();
        assert!(m2 < m1);

        assert!(matches!(
            s_moment(150.0, 1, tab),
            Err(Error::HeightExceeded { .. })
        ));
    }

    #[test]
    fn second_moment_error_term() {
        // Independent 20-digit values: ∫₀³⁰ |ζ(½+it)|² dt = 59.0844292…,
        // E(30) = 7.5518798…, E(100) = 3.4626541….
        let q = zeta_sq_integral(30.0).unwrap();
        assert!((q.value - 59.0844292003423856).abs() < 5e-5);
        assert!(q.err < 1e-4 * 30.0f64.sqrt());

        assert!((e_of(30.0).unwrap() - 7.55187984866612).abs() < 1e-4);
        assert!((e_of(100.0).unwrap() - 3.46265411653797).abs() < 1e-4);
        assert_eq!(e_of(0.0).unwrap(), 0.0);
        assert!(e_of(-1.0).is_err());
    }
}
