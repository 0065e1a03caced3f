//! The secondary zeta function G(s) = Σ_{γ>0} γ^{−s} by three routes with
//! overlapping validity, its Laurent expansion at s = 1, the constant C₁,
//! and the companions R(s) = Σ_ρ |ρ|^{−s} and H(s) = R − 2G.
//!
//! Everything rests on one engine: integrals of S(x) against x-powers (and
//! log weights) are computed *exactly* over the table range by splitting
//! S = N − M − f, where M(x) = (x/2π)log(x/2π) − x/2π + 7/8 is the smooth
//! zero-counting main term:
//!   · the step part N telescopes into power sums over the ordinates,
//!   · M and the Stirling series of f have closed-form antiderivatives
//!     against x^{−p}(log x)^m,
//! so the only numerical quadrature left is f on [1, 20] (tiny and smooth).
//! Beyond the table the S-part is bounded by the triangle inequality with
//! |S(x)| ≤ 1 + ½ log x, while the f-part stays closed-form; the bound goes
//! into `err`, never silently into the value.

use crate::error::{Error, Result};
use crate::num::{Cx, C64};
use crate::quad;
use crate::sfuncs;
use crate::zerofinder::ZeroTable;
use crate::zetacore::{f_correction, ComplexPoint};

use std::f64::consts::{PI, TAU};

/// Which formula produced a [`GValue`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Partial sum over the table plus an integral tail from X.
    Hybrid,
    /// Pole terms + C₁ + s∫₁^∞ (S+f) x^{−s−1} dx (valid σ > 0).
    Continuation,
    /// The once-more-integrated form through S₁ (valid σ > −1).
    ContinuationIterated,
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Route::Hybrid => "hybrid",
            Route::Continuation => "cont14",
            Route::ContinuationIterated => "cont15",
        })
    }
}

/// A G-type value with an explicit error bound and its provenance.
#[derive(Clone, Copy, Debug)]
pub struct GValue {
    pub value: C64,
    pub err: f64,
    pub route: Route,
}

/// The additive constant in the continuation of G:
/// C₁ = 7/8 − (1 + log 2π)/(2π).
///
/// It is the boundary contribution of the partial integration at x = 1,
/// i.e. −(S(1) + f(1)), pinned by N(1) = 0 in the counting formula.
pub fn c1() -> f64 {
    0.875 - (1.0 + TAU.ln()) / TAU
}

// ---------------------------------------------------------------------------
// Closed-form primitives.
// ---------------------------------------------------------------------------

/// x^e for x > 0 and complex e.
fn cpow(x: f64, e: C64) -> C64 {
    (e.scale(x.ln())).exp()
}

/// ∫_a^b x^{−p} (log x)^m dx, complex p; `b = None` means ∞ and requires
/// Re p > 1. Recursion on m:
///   ∫ x^{−p} L^m = [x^{1−p} L^m/(1−p)] + m/(p−1) ∫ x^{−p} L^{m−1}.
fn int_power_log(p: C64, m: u32, a: f64, b: Option<f64>) -> C64 {
    // For b = None with Re p ≤ 1 the vanishing upper boundary makes this the
    // analytic continuation of the integral — exactly what the G formulas
    // combine into convergent expressions.
    let pm1 = p - Cx::one();
    if pm1.abs() < 1e-300 {
        // ∫ x^{−1} (log x)^m dx = (log x)^{m+1}/(m+1); finite b only.
        let bb = b.expect("logarithmic case diverges at ∞");
        return Cx::real(
            (bb.ln().powi(m as i32 + 1) - a.ln().powi(m as i32 + 1)) / (m as f64 + 1.0),
        );
    }
    let boundary = |m: u32| -> C64 {
        // [x^{1−p} (log x)^m]_a^b / (1−p)
        let at = |x: f64| cpow(x, -pm1).scale(x.ln().powi(m as i32));
        let hi = match b {
            Some(bb) => at(bb),
            None => Cx::zero(),
        };
        (hi - at(a)) / -pm1
    };
    let mut val = boundary(0);
    for mm in 1..=m {
        val = boundary(mm) + val.scale(mm as f64) / pm1;
    }
    val
}

/// Real-p version for remainder bounds.
fn int_power_log_real(p: f64, m: u32, a: f64, b: Option<f64>) -> f64 {
    int_power_log(Cx::real(p), m, a, b).re
}

/// Cut [a, b] into panels short enough that x^{−it} turns by ≲ 2 radians on
/// each (wavelength 2πx/|t|), so a fixed Gauss rule resolves the twist.
fn oscillatory_panels(a: f64, b: f64, t: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut lo = a;
    let speed = t.abs().max(1.0);
    while lo < b {
        // Two resolution caps: a few radians of x^{−it} phase per panel,
        // and width ≤ lo/2 so the power singularity at x = 0 stays far
        // outside each panel's convergence ellipse.
        let width = (2.0 * lo / speed).min(0.5 * lo).max(1e-3);
        let hi = (lo + width).min(b);
        out.push((lo, hi));
        lo = hi;
    }
    out
}

/// s·∫_a^b M(x) x^{−s−1} dx in closed form (b = None → ∞, needs σ > 0),
/// M(x) = (x/2π)·log(x/2π) − x/2π + 7/8.
fn m_smooth_integral(s: C64, a: f64, b: Option<f64>) -> C64 {
    // M(x)·x^{−s−1} = (1/2π)[x^{−s} log x − (1 + log 2π) x^{−s}] + (7/8) x^{−s−1}
    let i_s_1 = int_power_log(s, 1, a, b);
    let i_s_0 = int_power_log(s, 0, a, b);
    let i_s1_0 = int_power_log(s + Cx::one(), 0, a, b);
    let v = (i_s_1 - i_s_0.scale(1.0 + TAU.ln())).scale(1.0 / TAU) + i_s1_0.scale(0.875);
    s * v
}

/// s·∫_a^b f(x) x^{−s−1} dx: Gauss panels below the Stirling splice, exact
/// power integrals above it (b = None → ∞, fine for σ > −1).
fn f_weighted_integral(s: C64, a: f64, b: Option<f64>) -> C64 {
    let splice = crate::zetacore::THETA_SPLICE;
    let mut v = Cx::zero();
    let b_low = b.unwrap_or(f64::INFINITY).min(splice);
    if a < b_low {
        for (lo, hi) in oscillatory_panels(a, b_low, s.im) {
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            let mut acc = Cx::zero();
            for (x, w) in quad::GL16_X.iter().zip(&quad::GL16_W) {
                let u = mid + half * x;
                acc += cpow(u, -(s + Cx::one())).scale(w * f_correction(u));
            }
            v += acc.scale(half);
        }
    }
    let a_high = a.max(splice);
    let past_splice = match b {
        Some(bb) => a_high < bb,
        None => true,
    };
    if past_splice {
        // f(x) = (1/π) Σ c_n x^{1−2n} termwise against x^{−s−1}.
        for n in 1..=5u32 {
            let c = crate::zetacore::theta_coeff(n as usize) / PI;
            v += int_power_log(s + Cx::real(2.0 * n as f64), 0, a_high, b).scale(c);
        }
    }
    s * v
}

/// Σ_{a < γ ≤ b} γ^{−s} over the table (summed small-to-large), plus the
/// first-order sensitivity of that sum to the tabulated γ errors.
fn zero_power_sum(s: C64, a: f64, b: f64, table: &ZeroTable) -> (C64, f64) {
    let lo = table.count_up_to(a);
    let hi = table.count_up_to(b);
    let mut sum = Cx::zero();
    let mut sens = 0.0;
    for z in table.ordinates()[lo..hi].iter().rev() {
        sum += cpow(z.gamma, -s);
        sens += s.abs() * z.gamma.powf(-s.re - 1.0) * z.err;
    }
    (sum, sens)
}

/// The exact engine: s·∫_a^b S(x) x^{−s−1} dx for 1 ≤ a < b ≤ table.height,
/// with S = N − M − f. Returns (value, error report).
///
/// The N part telescopes: s∫_a^b N x^{−s−1} = N(a)a^{−s} − N(b)b^{−s} +
/// Σ_{a<γ≤b} γ^{−s}; the M and f parts are the closed forms above.
fn s_weighted_integral(s: C64, a: f64, b: f64, table: &ZeroTable) -> (C64, f64) {
    let n_a = table.count_up_to(a) as f64;
    let n_b = table.count_up_to(b) as f64;
    let (zsum, sens) = zero_power_sum(s, a, b, table);
    let n_part = cpow(a, -s).scale(n_a) - cpow(b, -s).scale(n_b) + zsum;
    let v = n_part - m_smooth_integral(s, a, Some(b)) - f_weighted_integral(s, a, Some(b));
    // Error report: table sensitivity plus rounding on the telescoped pieces.
    (v, sens + 1e-14 * (1.0 + v.abs_or_inf() + n_b))
}

/// Bound for |s·∫_H^∞ S(x) x^{−s−1} dx| after integrating by parts through
/// S₁(x) = ∫₀ˣ S, whose envelope |S₁(x)| ≤ 1 + log x holds with lots of
/// room (explicit bounds put it under 0.3 log x for large x):
/// ≤ |s|(1+log H)H^{−σ−1} + |s||s+1|·[I(σ+2,0) + I(σ+2,1)],
/// with I(p,m) = ∫_H^∞ x^{−p} logᵐx dx. Unlike the triangle bound on S
/// itself this does not scale with H^{−σ} and stays usable down to σ > −1.
fn s_tail_bound(s: C64, h: f64) -> f64 {
    if s == Cx::zero() {
        return 0.0;
    }
    let sigma = s.re;
    if sigma <= -1.0 {
        return f64::INFINITY;
    }
    let boundary = s.abs() * (1.0 + h.ln()) * h.powf(-sigma - 1.0);
    boundary
        + s.abs()
            * (s + Cx::one()).abs()
            * (int_power_log_real(sigma + 2.0, 0, h, None)
                + int_power_log_real(sigma + 2.0, 1, h, None))
}

// ---------------------------------------------------------------------------
// The three routes.
// ---------------------------------------------------------------------------

fn check_point(s: ComplexPoint) -> Result<C64> {
    if s.sigma == 1.0 && s.t == 0.0 {
        return Err(Error::PoleAtOne);
    }
    Ok(s.to_c64())
}

/// Beyond this S-tail bound a value is meaningless (σ too close to 0 for
/// the table height); fail loudly and advise a taller table instead.
const TAIL_ERR_CEILING: f64 = 4.0;
/// Radius around s = 1 inside which G is served from the Laurent expansion.
const LAURENT_RADIUS: f64 = 1e-3;

/// Default truncation height for the hybrid route: the analogue of matching
/// the cut to the height of interest.
pub fn default_hybrid_cut(s: ComplexPoint, table: &ZeroTable) -> f64 {
    table.height().min((2.0 * s.t.abs()).max(100.0))
}

/// G by partial sum up to X plus the integral tail (σ > 0):
/// Σ_{γ≤X} γ^{−s} − N(X)X^{−s} + s∫_X^∞ (M + S + f) x^{−s−1} dx.
pub fn g_hybrid(s: ComplexPoint, table: &ZeroTable, x: f64) -> Result<GValue> {
    let sc = check_point(s)?;
    if !(s.sigma > 0.0) {
        return Err(Error::InvalidInput(format!(
            "hybrid route needs σ > 0, got {}",
            s.sigma
        )));
    }
    if x > table.height() {
        return Err(Error::HeightExceeded {
            t: x,
            height: table.height(),
        });
    }
    if !(x >= 1.0) {
        return Err(Error::InvalidInput(format!("cut X = {x} below 1")));
    }
    let h = table.height();
    let (partial, sens1) = zero_power_sum(sc, 0.0, x, table);
    let n_x = table.count_up_to(x) as f64;
    let (exact, err_exact) = s_weighted_integral(sc, x, h, table);
    let value = partial - cpow(x, -sc).scale(n_x)
        + m_smooth_integral(sc, x, None)
        + f_weighted_integral(sc, x, None)
        + exact;
    let bound = s_tail_bound(sc, h);
    let err = bound + err_exact + sens1 + 1e-13 * (1.0 + value.abs_or_inf());
    if bound > TAIL_ERR_CEILING {
        return Err(Error::TailDominates {
            bound,
            tol: TAIL_ERR_CEILING,
        });
    }
    Ok(GValue {
        value,
        err,
        route: Route::Hybrid,
    })
}

/// G with the default cut.
pub fn g_hybrid_default(s: ComplexPoint, table: &ZeroTable) -> Result<GValue> {
    g_hybrid(s, table, default_hybrid_cut(s, table))
}

/// Assemble G(s) from a precomputed Σ_{γ≤H} γ^{−s} over the whole table.
/// The hybrid value telescopes to the same thing for every cut, so this is
/// the cheapest form once the power sum is in hand:
/// Σ γ^{−s} − N(H)H^{−s} + s∫_H^∞ (M + f) x^{−s−1} dx.
///
/// No oscillatory-tail ceiling is enforced — a caller sweeping t along a
/// vertical line must keep the resonant region inside the table (height at
/// least twice the largest |t|), where the true tail is negligible even
/// though the triangle bound grows with |s|.
pub(crate) fn g_on_line_from_sums(s: C64, full_sum: C64, table: &ZeroTable) -> C64 {
    let h = table.height();
    let n_h = table.count() as f64;
    full_sum - cpow(h, -s).scale(n_h)
        + m_smooth_integral(s, h, None)
        + f_weighted_integral(s, h, None)
}

/// G by the pole-form continuation (σ > 0):
/// 1/(2π(s−1)²) − log 2π/(2π(s−1)) + C₁ + s∫₁^∞ (S+f) x^{−s−1} dx.
pub fn g_cont(s: ComplexPoint, table: &ZeroTable) -> Result<GValue> {
    let sc = check_point(s)?;
    if s.sigma == 0.0 && s.t == 0.0 {
        // The s-multiplied integral vanishes identically at s = 0, leaving
        // 1/(2π) + log 2π/(2π) + C₁ = 7/8 exactly.
        return Ok(GValue {
            value: Cx::real(0.875),
            err: 1e-15,
            route: Route::Continuation,
        });
    }
    if !(s.sigma > 0.0) {
        return Err(Error::InvalidInput(format!(
            "this continuation needs σ > 0, got {}",
            s.sigma
        )));
    }
    if (sc - Cx::one()).abs() < LAURENT_RADIUS {
        return laurent_eval(sc, table, Route::Continuation);
    }
    let h = table.height();
    let sm1 = sc - Cx::one();
    let poles = (sm1 * sm1).recip().scale(1.0 / TAU) - sm1.recip().scale(TAU.ln() / TAU);
    let (s_part, err_s) = s_weighted_integral(sc, 1.0, h, table);
    let f_part = f_weighted_integral(sc, 1.0, None);
    let value = poles + Cx::real(c1()) + s_part + f_part;
    let bound = s_tail_bound(sc, h);
    if bound > TAIL_ERR_CEILING {
        return Err(Error::TailDominates {
            bound,
            tol: TAIL_ERR_CEILING,
        });
    }
    Ok(GValue {
        value,
        err: bound + err_s + 1e-13 * (1.0 + value.abs_or_inf()),
        route: Route::Continuation,
    })
}

/// G by the twice-integrated continuation (σ > −1):
/// pole terms + C₁ + s[−S₁(1) + (s+1)∫₁^∞ S₁(x) x^{−s−2} dx] + s∫₁^∞ f x^{−s−1},
/// with S₁(x) = ∫₀^x S(u) du.
pub fn g_cont2(s: ComplexPoint, table: &ZeroTable) -> Result<GValue> {
    let sc = check_point(s)?;
    if s.sigma == 0.0 && s.t == 0.0 {
        return Ok(GValue {
            value: Cx::real(0.875),
            err: 1e-15,
            route: Route::ContinuationIterated,
        });
    }
    if !(s.sigma > -1.0) {
        return Err(Error::InvalidInput(format!(
            "iterated continuation needs σ > −1, got {}",
            s.sigma
        )));
    }
    if (sc - Cx::one()).abs() < LAURENT_RADIUS {
        return laurent_eval(sc, table, Route::ContinuationIterated);
    }
    let h = table.height();
    let sm1 = sc - Cx::one();
    let poles = (sm1 * sm1).recip().scale(1.0 / TAU) - sm1.recip().scale(TAU.ln() / TAU);

    let s1_at_1 = sfuncs::s_iter(1, 1.0, table).expect("height ≥ 1");
    let (iter_int, q_err) = s1_weighted_integral(sc, h, table);
    let s_terms = sc * (iter_int * (sc + Cx::one()) - Cx::real(s1_at_1));
    let f_part = f_weighted_integral(sc, 1.0, None);
    let value = poles + Cx::real(c1()) + s_terms + f_part;

    // Tail bound via |S₁(x)| ≤ 1 + log x (checked empirically on the table):
    // |s(s+1)∫_H^∞ S₁ x^{−s−2}| ≤ |s||s+1|·[I(σ+2,0) + I(σ+2,1)].
    let bound = sc.abs()
        * (sc + Cx::one()).abs()
        * (int_power_log_real(s.sigma + 2.0, 0, h, None)
            + int_power_log_real(s.sigma + 2.0, 1, h, None));
    if bound > TAIL_ERR_CEILING {
        return Err(Error::TailDominates {
            bound,
            tol: TAIL_ERR_CEILING,
        });
    }
    Ok(GValue {
        value,
        err: bound + q_err + 1e-13 * (1.0 + value.abs_or_inf()),
        route: Route::ContinuationIterated,
    })
}

/// ∫₁^H S₁(x) x^{−s−2} dx by per-gap Gauss panels with S₁ carried
/// incrementally (S is smooth inside each gap, so S₁ is one closed
/// expression there).
fn s1_weighted_integral(s: C64, h: f64, table: &ZeroTable) -> (C64, f64) {
    let mut nodes: Vec<f64> = vec![1.0];
    nodes.extend(
        table.ordinates()[table.count_up_to(1.0)..table.count_up_to(h)]
            .iter()
            .map(|z| z.gamma),
    );
    nodes.push(h);
    let mut acc = Cx::zero();
    let mut err = 0.0;
    // Running S₁ at the left edge of the current gap.
    let mut s1_base = sfuncs::s_iter(1, 1.0, table).expect("in range");
    let mut n_left = table.count_up_to(1.0) as f64;
    for w in nodes.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a < 1e-12 {
            continue;
        }
        let th_a = sfuncs::theta_integral(a);
        // Inside the gap: S(u) = n − ϑ(u)/π − 1, so
        // S₁(x) = S₁(a) + n(x−a) − (Θ(x)−Θ(a))/π − (x−a).
        let s1_at = |x: f64| {
            s1_base + (n_left - 1.0) * (x - a) - (sfuncs::theta_integral(x) - th_a) / PI
        };
        for (lo, hi) in oscillatory_panels(a, b, s.im) {
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            let mut panel = Cx::zero();
            let mut audit = Cx::zero();
            for (x, wt) in quad::GL8_X.iter().zip(&quad::GL8_W) {
                let u = mid + half * x;
                panel += cpow(u, -(s + Cx::real(2.0))).scale(wt * s1_at(u));
            }
            for (x, wt) in quad::GL4_X.iter().zip(&quad::GL4_W) {
                let u = mid + half * x;
                audit += cpow(u, -(s + Cx::real(2.0))).scale(wt * s1_at(u));
            }
            acc += panel.scale(half);
            err += half * ((panel - audit).abs() + 1e-13 * (1.0 + panel.abs_or_inf()));
        }
        s1_base = s1_at(b);
        n_left += 1.0;
    }
    (acc, err)
}

// ---------------------------------------------------------------------------
// Laurent expansion at s = 1.
// ---------------------------------------------------------------------------

/// Laurent data for G at s = 1: orders −2 … max_order.
#[derive(Clone, Debug)]
pub struct LaurentExpansion {
    center: f64,
    /// coeffs[i] is the coefficient of (s−1)^(i−2).
    coeffs: Vec<f64>,
    errs: Vec<f64>,
    max_order: i32,
}

impl LaurentExpansion {
    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn max_order(&self) -> i32 {
        self.max_order
    }

    pub fn coeff(&self, k: i32) -> Result<f64> {
        if k < -2 || k > self.max_order {
            return Err(Error::InsufficientLaurentOrder {
                have: self.max_order,
                need: k,
            });
        }
        Ok(self.coeffs[(k + 2) as usize])
    }

    pub fn coeff_err(&self, k: i32) -> Result<f64> {
        if k < -2 || k > self.max_order {
            return Err(Error::InsufficientLaurentOrder {
                have: self.max_order,
                need: k,
            });
        }
        Ok(self.errs[(k + 2) as usize])
    }

    /// Evaluate the expansion at s, returning (value, error report including
    /// a crude truncation estimate).
    pub fn eval(&self, s: C64) -> (C64, f64) {
        let u = s - Cx::real(self.center);
        let mut v = (u * u).recip().scale(self.coeffs[0]) + u.recip().scale(self.coeffs[1]);
        let mut err = self.errs[0] / u.norm_sqr() + self.errs[1] / u.abs();
        let mut pow = Cx::one();
        for k in 0..=self.max_order {
            v += pow.scale(self.coeffs[(k + 2) as usize]);
            err += self.errs[(k + 2) as usize] * pow.abs_or_inf();
            pow = pow * u;
        }
        // Truncation: the regular coefficients are O(1) in this expansion.
        err += pow.abs_or_inf();
        (v, err)
    }
}

/// K_m = ∫₁^H (S(x)+f(x)) (log x)^m x^{−2} dx exactly (S = N − M − f makes
/// the f term cancel into the N/M closed forms except for its own exact
/// integrals), plus the exact f-tail beyond H; second return is the bound on
/// the unknowable S-tail beyond H.
fn k_weight(m: u32, table: &ZeroTable) -> (f64, f64) {
    let h = table.height();
    // N part: Σ over gaps of n·∫ (log x)^m x^{−2}.
    let mut nodes: Vec<f64> = vec![1.0];
    nodes.extend(
        table.ordinates()[table.count_up_to(1.0)..table.count_up_to(h)]
            .iter()
            .map(|z| z.gamma),
    );
    nodes.push(h);
    let mut n_val = 0.0;
    let mut n_left = table.count_up_to(1.0) as f64;
    for w in nodes.windows(2) {
        if n_left > 0.0 && w[1] - w[0] > 1e-12 {
            n_val += n_left * int_power_log_real(2.0, m, w[0], Some(w[1]));
        }
        n_left += 1.0;
    }

    // M part over [1, H].
    let m_val = (int_power_log_real(1.0, m + 1, 1.0, Some(h))
        - (1.0 + TAU.ln()) * int_power_log_real(1.0, m, 1.0, Some(h)))
        / TAU
        + 0.875 * int_power_log_real(2.0, m, 1.0, Some(h));

    // On [1, H] the integrand S + f = N − M needs no f at all; beyond H the
    // f part stays exact (closed forms, plus a quadrature stub if the table
    // somehow ends below the Stirling splice).
    let splice = crate::zetacore::THETA_SPLICE;
    let mut f_val = 0.0;
    if h < splice {
        f_val += quad::integrate(
            |u| f_correction(u) * u.ln().powi(m as i32) / (u * u),
            h,
            splice,
            1e-13,
        )
        .expect("smooth")
        .value;
    }
    let cut = h.max(splice);
    for n in 1..=5u32 {
        f_val += crate::zetacore::theta_coeff(n as usize) / PI
            * int_power_log_real(2.0 * n as f64 + 2.0, m, cut, None);
    }

    // S-tail bound beyond H by parts through S₁ with |S₁(x)| ≤ 1 + log x:
    // |∫_H^∞ S L^m x^{−2}| ≤ (1+log H)(log H)^m H^{−2}
    //   + ∫_H^∞ (1+L)(2L^m + mL^{m−1}) x^{−3} dx.
    let lh = h.ln();
    let i3 = |j: u32| int_power_log_real(3.0, j, h, None);
    let mut bound = (1.0 + lh) * lh.powi(m as i32) / (h * h) + 2.0 * i3(m + 1)
        + (m as f64 + 2.0) * i3(m);
    if m >= 1 {
        bound += m as f64 * i3(m - 1);
    }

    (n_val - m_val + f_val, bound)
}

/// Laurent expansion of G at s = 1 up to `order` ≤ 6.
///
/// coeff(−2) and coeff(−1) are the closed-form pole terms; for k ≥ 0,
/// differentiating s·∫₁^∞ (S+f) x^{−s−1} dx under the integral gives
/// coeff(k) = C₁·[k=0] + ((−1)^k/k!)(K_k − k·K_{k−1}).
pub fn laurent_g(order: i32, table: &ZeroTable) -> Result<LaurentExpansion> {
    if !(0..=6).contains(&order) {
        return Err(Error::InvalidInput(format!(
            "Laurent order {order} outside 0..=6"
        )));
    }
    let mut coeffs = vec![1.0 / TAU, -TAU.ln() / TAU];
    let mut errs = vec![0.0, 0.0];
    let mut k_prev = 0.0;
    let mut b_prev = 0.0;
    let mut fact = 1.0;
    for k in 0..=order as u32 {
        let (k_val, k_bound) = k_weight(k, table);
        if k > 0 {
            fact *= k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let mut c = sign / fact * (k_val - k as f64 * k_prev);
        let e = (k_bound + k as f64 * b_prev) / fact;
        if k == 0 {
            c += c1();
        }
        if e > 0.05 {
            return Err(Error::RemainderTooLarge { bound: e });
        }
        coeffs.push(c);
        errs.push(e + 1e-12);
        k_prev = k_val;
        b_prev = k_bound;
    }
    Ok(LaurentExpansion {
        center: 1.0,
        coeffs,
        errs,
        max_order: order,
    })
}

/// Serve G near s = 1 from the Laurent expansion (both continuations
/// delegate here inside the cancellation radius).
fn laurent_eval(s: C64, table: &ZeroTable, route: Route) -> Result<GValue> {
    let exp = laurent_g(4, table)?;
    let (value, err) = exp.eval(s);
    Ok(GValue { value, err, route })
}

// ---------------------------------------------------------------------------
// R(s) and H(s).
// ---------------------------------------------------------------------------

/// Bound on Σ_{γ>H} γ^{−p} through the counting-density integral
/// (1/2π)∫ x^{−p} log(x/2π) dx with a generous fluctuation slack.
fn zero_sum_tail_bound(p: f64, h: f64) -> f64 {
    (int_power_log_real(p, 1, h, None) - TAU.ln() * int_power_log_real(p, 0, h, None)) / TAU
        + (3.0 + 0.5 * h.ln()) * h.powf(-p)
}

/// Per-term envelope for |ρ|^{−s} − γ^{−s}: the bracket is |e^w − 1| with
/// |w| = |s|·δ ≤ |s| γ^{−2}/8, so |term| ≤ 0.3|s| γ^{−σ−2} (the 0.3 absorbs
/// the e^{|w|} slack for every γ ≥ γ₁). Vanishes with s, as it must.
fn h_term_coef(s: C64) -> f64 {
    0.3 * s.abs() * (1.0 + 0.01 * s.abs())
}

/// Truncation bound for H(s) summed over the table up to its height.
fn h_tail_bound(s: C64, table: &ZeroTable) -> f64 {
    2.0 * h_term_coef(s) * zero_sum_tail_bound(s.re + 2.0, table.height())
}

/// H(s) = 2 Σ_{γ>0} (|ρ|^{−s} − γ^{−s}), the correction relating R to G,
/// analytic for σ > −1.
pub fn h_of(s: ComplexPoint, table: &ZeroTable) -> Result<C64> {
    let sc = check_point(s)?;
    if !(s.sigma > -1.0) {
        return Err(Error::InvalidInput(format!(
            "H needs σ > −1, got {}",
            s.sigma
        )));
    }
    let mut sum = Cx::zero();
    for z in table.ordinates().iter().rev() {
        // |ρ|^{−s} − γ^{−s} = γ^{−s}·(e^{−s·δ} − 1), δ = ½ log(1 + ¼γ^{−2});
        // the bracket is evaluated by series to dodge the cancellation.
        let delta = 0.5 * (0.25 / (z.gamma * z.gamma)).ln_1p();
        let w = -(sc.scale(delta));
        let em1 = w * (Cx::one()
            + w.scale(0.5)
            + (w * w).scale(1.0 / 6.0)
            + (w * w * w).scale(1.0 / 24.0));
        sum += cpow(z.gamma, -sc) * em1;
    }
    let bound = h_tail_bound(sc, table);
    if bound > 1e-3 {
        return Err(Error::RemainderTooLarge { bound });
    }
    Ok(sum.scale(2.0))
}

/// k-th derivative of H at s = 1 (real), with its truncation bound — feeds
/// Laurent data for R = 2G + H.
pub fn h_derivative_at_one(k: u32, table: &ZeroTable) -> Result<(f64, f64)> {
    if k > 8 {
        return Err(Error::InvalidInput(format!("derivative order {k} > 8")));
    }
    let mut sum = 0.0;
    for z in table.ordinates().iter().rev() {
        // d^k/ds^k [|ρ|^{−s} − γ^{−s}] at s=1, written as
        // (−1)^k l^k γ^{−1} (e^w − 1), w = k·log(L/l) − δ, L = log|ρ|,
        // l = log γ, δ = L − l — again series-safe.
        let l = z.gamma.ln();
        let delta = 0.5 * (0.25 / (z.gamma * z.gamma)).ln_1p();
        let w = k as f64 * (delta / l).ln_1p() - delta;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * l.powi(k as i32) / z.gamma * w.exp_m1();
    }
    // Tail: per-term ≤ (1+k) (log γ)^k γ^{−3}/8, summed against the density.
    let h = table.height();
    let lh = h.ln();
    let bound = 2.0 * (1.0 + k as f64) / 8.0
        * ((int_power_log_real(3.0, k + 1, h, None)
            - TAU.ln() * int_power_log_real(3.0, k, h, None))
            / TAU
            + (3.0 + 0.5 * lh) * lh.powi(k as i32) * h.powi(-3));
    Ok((2.0 * sum, bound))
}

/// R(s) = Σ_ρ |ρ|^{−s} = 2 Σ_{γ>0} |ρ|^{−s} = 2G(s) + H(s).
pub fn r_of(s: ComplexPoint, table: &ZeroTable) -> Result<GValue> {
    let g = if s.sigma > 0.0 {
        g_hybrid_default(s, table)?
    } else {
        g_cont2(s, table)?
    };
    let h = h_of(s, table)?;
    Ok(GValue {
        value: g.value.scale(2.0) + h,
        err: 2.0 * g.err + h_tail_bound(s.to_c64(), table),
        route: g.route,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn table500() -> &'static ZeroTable {
        static T: OnceLock<ZeroTable> = OnceLock::new();
        T.get_or_init(|| ZeroTable::build(500.0, 1).unwrap())
    }

    fn pt(sigma: f64, t: f64) -> ComplexPoint {
        ComplexPoint::new(sigma, t).unwrap()
    }

    // Independent 20+-digit anchors (mpmath over 10⁶-zero partial sums with
    // integral tails).
    const G2: f64 = 0.023104993122987;
    const G3: f64 = 0.000729548232064;
    const R2: f64 = 0.046191417932242067628620;
    const H2: f64 = -1.85683137319172e-5;

    #[test]
    fn c1_closed_form() {
        assert!((c1() - 0.42333783699382573900809).abs() < 1e-15);
        // The defining identity.
        assert_eq!(c1() + (1.0 + TAU.ln()) / TAU, 0.875);
    }

    #[test]
    fn power_log_primitive() {
        // ∫₁^e x^{−2} log x dx = 1 − 2/e.
        let v = int_power_log_real(2.0, 1, 1.0, Some(std::f64::consts::E));
        assert!((v - (1.0 - 2.0 / std::f64::consts::E)).abs() < 1e-14);
        // ∫₁^∞ x^{−2} (log x)^2 dx = 2.
        assert!((int_power_log_real(2.0, 2, 1.0, None) - 2.0).abs() < 1e-13);
        // Complex spot check against adaptive quadrature.
        let p = Cx::new(1.5, 2.0);
        let exact = int_power_log(p, 1, 2.0, Some(9.0));
        let re = quad::integrate(|x| x.powf(-1.5) * (2.0 * x.ln()).cos() * x.ln(), 2.0, 9.0, 1e-11)
            .unwrap()
            .value;
        let im = quad::integrate(|x| x.powf(-1.5) * (2.0 * x.ln()).sin() * x.ln(), 2.0, 9.0, 1e-11)
            .unwrap()
            .value;
        assert!((exact.re - re).abs() < 1e-10 && (exact.im + im).abs() < 1e-10);
    }

    #[test]
    fn smooth_main_term_integral_reproduces_pole_form() {
        // s∫₁^∞ M x^{−s−1} dx = 1/(2π(s−1)²) − log2π/(2π(s−1)) + C₁ — the
        // algebraic identity the continuation rests on.
        for s in [Cx::new(2.0, 0.0), Cx::new(0.6, 5.0), Cx::new(1.5, -3.0)] {
            let lhs = m_smooth_integral(s, 1.0, None);
            let sm1 = s - Cx::one();
            let rhs = (sm1 * sm1).recip().scale(1.0 / TAU)
                - sm1.recip().scale(TAU.ln() / TAU)
                + Cx::real(c1());
            assert!(
                (lhs - rhs).abs() < 1e-12,
                "identity fails at {s:?}: {:.3e}",
                (lhs - rhs).abs()
            );
        }
    }

    #[test]
    fn g_at_two_and_three() {
        let tab = table500();
        let g2 = g_hybrid_default(pt(2.0, 0.0), tab).unwrap();
        assert!(
            (g2.value.re - G2).abs() < g2.err + 1e-9,
            "G(2) = {} vs {G2} (err {:.2e})",
            g2.value.re,
            g2.err
        );
        assert!(g2.value.im.abs() < 1e-12);
        assert!(g2.value.re > 0.0);

        let g3 = g_hybrid_default(pt(3.0, 0.0), tab).unwrap();
        assert!((g3.value.re - G3).abs() < g3.err + 1e-9);

        // err really bounds at σ=2 with a 500-table: tail ~ 3e-5.
        assert!(g2.err < 1e-3);
    }

    #[test]
    fn routes_agree_pairwise() {
        let tab = table500();
        for (sigma, t) in [
            (0.25, 0.0),
            (0.5, 5.0),
            (0.75, 20.0),
            (1.5, 0.0),
            (1.5, 20.0),
            (2.0, 0.0),
            (0.6, 5.0),
        ] {
            let s = pt(sigma, t);
            let a = g_hybrid_default(s, tab).unwrap();
            let b = g_cont(s, tab).unwrap();
            let c = g_cont2(s, tab).unwrap();
            let ab = (a.value - b.value).abs();
            let ac = (a.value - c.value).abs();
            assert!(
                ab <= a.err + b.err + 1e-10,
                "hybrid vs cont at σ={sigma}, t={t}: gap {ab:.3e} vs errs {:.3e}",
                a.err + b.err
            );
            assert!(
                ac <= a.err + c.err + 1e-10,
                "hybrid vs iterated at σ={sigma}, t={t}: gap {ac:.3e} vs errs {:.3e}",
                a.err + c.err
            );
        }
    }

    #[test]
    fn continuation_beyond_the_strip() {
        let tab = table500();
        // σ = −0.5 only the iterated route can reach.
        let g = g_cont2(pt(-0.5, 0.0), tab).unwrap();
        assert!(g.value.re.is_finite() && g.err.is_finite());
        // Growth bound scale: |G(−½)| should be a small number, nowhere near
        // the t² envelope scale.
        assert!(g.value.abs() < 10.0);
    }

    #[test]
    fn g_at_zero_is_seven_eighths() {
        let tab = table500();
        let g = g_cont(pt(0.0, 0.0), tab).unwrap();
        assert!((g.value.re - 0.875).abs() < 1e-12 && g.value.im == 0.0);
        let g2 = g_cont2(pt(0.0, 0.0), tab).unwrap();
        assert!((g2.value.re - 0.875).abs() < 1e-12);
    }

    #[test]
    fn pole_and_laurent_structure() {
        let tab = table500();
        // (s−1)²·G → 1/(2π) along the reals.
        let mut prev_gap = f64::INFINITY;
        for h in [0.1, 0.03, 0.01] {
            let g = g_cont(pt(1.0 + h, 0.0), tab).unwrap();
            let gap = (g.value.re * h * h - 1.0 / TAU).abs();
            assert!(gap < prev_gap, "pole factor not converging at h={h}");
            prev_gap = gap;
        }

        let exp = laurent_g(3, tab).unwrap();
        assert!((exp.coeff(-2).unwrap() - 1.0 / TAU).abs() < 1e-10);
        assert!((exp.coeff(-1).unwrap() + TAU.ln() / TAU).abs() < 1e-10);

        // coeff(0) against a Richardson limit of G_cont − poles (the
        // continuation engine near s = 1 is an independent path: complex
        // pole cancellation vs differentiation under the integral).
        let finite_part = |h: f64| {
            let g = g_cont(pt(1.0 + h, 0.0), tab).unwrap().value;
            g.re - 1.0 / (TAU * h * h) + TAU.ln() / (TAU * h)
        };
        // Second-order Richardson on h, 2h, 4h kills the c₁, c₂ slopes.
        let limit =
            (8.0 * finite_part(0.01) - 6.0 * finite_part(0.02) + finite_part(0.04)) / 3.0;
        let c0 = exp.coeff(0).unwrap();
        assert!(
            (c0 - limit).abs() < 1e-4 + exp.coeff_err(0).unwrap(),
            "coeff(0) = {c0} vs limit {limit}"
        );

        // Near-pole evaluations are served by the expansion and stay finite.
        let near = g_cont(pt(1.0 + 1e-5, 0.0), tab).unwrap();
        assert!(near.value.re.is_finite());
        assert!((near.value.re * 1e-10 - 1.0 / TAU).abs() < 1e-3);

        assert!(matches!(
            exp.coeff(9),
            Err(Error::InsufficientLaurentOrder { .. })
        ));
        assert!(laurent_g(7, tab).is_err());
    }

    #[test]
    fn r_and_h_companions() {
        let tab = table500();
        // R(2) has the closed form 2 + γ_E − log 4π.
        let r2 = r_of(pt(2.0, 0.0), tab).unwrap();
        assert!(
            (r2.value.re - R2).abs() < r2.err + 1e-9,
            "R(2) = {} vs {R2} ± {:.2e}",
            r2.value.re,
            r2.err
        );

        // H(2) anchor and the |H| ≤ |s|·Σγ^{−σ−2} envelope.
        let h2 = h_of(pt(2.0, 0.0), tab).unwrap();
        assert!((h2.re - H2).abs() < 1e-7, "H(2) = {}", h2.re);
        let g4 = g_hybrid_default(pt(4.0, 0.0), tab).unwrap();
        assert!(h2.abs() <= 2.0 * g4.value.re * 1.05 + 1e-9);

        // R − 2G shrinks as σ grows.
        let d3 = (r_of(pt(3.0, 0.0), tab).unwrap().value
            - g_hybrid_default(pt(3.0, 0.0), tab).unwrap().value.scale(2.0))
        .abs();
        let d6 = (r_of(pt(6.0, 0.0), tab).unwrap().value
            - g_hybrid_default(pt(6.0, 0.0), tab).unwrap().value.scale(2.0))
        .abs();
        assert!(d6 < d3 && d3 < 1e-4);

        // Derivative of H at 1 matches central differences of h_of.
        let (d1, _) = h_derivative_at_one(1, tab).unwrap();
        let hh = 1e-3;
        let fd = (h_of(pt(1.0 + hh, 0.0), tab).unwrap().re
            - h_of(pt(1.0 - hh, 0.0), tab).unwrap().re)
            / (2.0 * hh);
        assert!((d1 - fd).abs() < 1e-8, "H′(1) {d1} vs fd {fd}");
    }

    #[test]
    fn hybrid_consistency_solves_for_c1() {
        // Treating C₁ as unknown in G_cont(s) = G_hybrid(s) recovers it.
        let tab = table500();
        for (s, tol) in [(pt(2.0, 0.0), 2e-4f64), (pt(3.0, 0.0), 1e-5f64)] {
            let hy = g_hybrid_default(s, tab).unwrap();
            let co = g_cont(s, tab).unwrap();
            let solved = c1() + (hy.value.re - co.value.re);
            assert!(
                (solved - c1()).abs() < tol.max(hy.err + co.err),
                "C₁ solved at {s:?}: {solved}"
            );
        }
    }

    #[test]
    fn invalid_inputs_and_poles() {
        let tab = table500();
        assert!(matches!(
            g_cont(pt(1.0, 0.0), tab),
            Err(Error::PoleAtOne)
        ));
        assert!(g_cont(pt(-0.2, 0.0), tab).is_err());
        assert!(g_cont2(pt(-1.5, 0.0), tab).is_err());
        assert!(matches!(
            g_hybrid(pt(2.0, 0.0), tab, 600.0),
            Err(Error::HeightExceeded { .. })
        ));
    }
}
