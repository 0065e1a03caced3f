//! Exponentially weighted multiple sums over zero ordinates,
//!   Σ e^{−γ⁽¹⁾⋯γ⁽ⁿ⁾/X}  =  X·P_{2n−1}(log X) + Gⁿ(0) + o(1),
//! their main-term coefficients A_{j,n} from the residue of Γ(s)Gⁿ(s)Xˢ at
//! s = 1, and the analogous expansion for R(s) = Σ_ρ |ρ|^{−s}.
//!
//! The Mellin picture: the sum is (1/2πi)∫_{(2)} Γ(w)Gⁿ(w)X^w dw; shifting
//! the line left picks up the double-order-2n pole at w = 1 (the main term,
//! a degree-(2n−1) polynomial in log X times X) and Γ's simple pole at
//! w = 0 (the constant Gⁿ(0)).

use crate::error::{Error, Result};
use crate::gfun;
use crate::num::{Cx, C64};
use crate::zerofinder::ZeroTable;
use crate::zetacore::{self, ComplexPoint};

use std::f64::consts::{PI, TAU};

/// Euler's constant.
const GAMMA_E: f64 = 0.57721566490153286061;

/// One row of the truncated-sum vs main-term comparison.
#[derive(Clone, Copy, Debug)]
pub struct Thm2Report {
    pub n: u32,
    pub x: f64,
    pub lhs: f64,
    /// X times the residue polynomial in log X.
    pub main: f64,
    /// Gⁿ(0) (or R(0) for the |ρ| variant).
    pub const_term: f64,
    pub residual: f64,
}

impl Thm2Report {
    pub fn csv_header() -> &'static str {
        "n,X,lhs,main,const,residual"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.6e},{:.12e},{:.12e},{:.12e},{:.6e}",
            self.n, self.x, self.lhs, self.main, self.const_term, self.residual
        )
    }
}

// ---------------------------------------------------------------------------
// Truncated Laurent/power-series arithmetic (value + error per coefficient).
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
struct Series {
    /// Exponent of the first stored coefficient (of u = s−1).
    lo: i32,
    v: Vec<f64>,
    e: Vec<f64>,
}

impl Series {
    fn coeff(&self, k: i32) -> (f64, f64) {
        let i = k - self.lo;
        if i < 0 || i as usize >= self.v.len() {
            (0.0, 0.0)
        } else {
            (self.v[i as usize], self.e[i as usize])
        }
    }

    /// Product truncated to orders ≤ hi.
    fn mul(&self, other: &Series, hi: i32) -> Series {
        let lo = self.lo + other.lo;
        let len = (hi - lo + 1).max(0) as usize;
        let mut v = vec![0.0; len];
        let mut e = vec![0.0; len];
        for (i, (&a, &ea)) in self.v.iter().zip(&self.e).enumerate() {
            for (j, (&b, &eb)) in other.v.iter().zip(&other.e).enumerate() {
                let k = i + j;
                if k < len {
                    v[k] += a * b;
                    e[k] += a.abs() * eb + b.abs() * ea + ea * eb;
                }
            }
        }
        Series { lo, v, e }
    }
}

/// Γ(1+u) as a power series in u to order 8, via
/// log Γ(1+u) = −γ_E u + Σ_{k≥2} (−1)^k ζ(k) u^k / k and a series exp.
fn gamma_series() -> Series {
    let zeta = [
        0.0,
        0.0,
        PI * PI / 6.0,
        1.2020569031595942854,
        PI.powi(4) / 90.0,
        1.0369277551433699263,
        PI.powi(6) / 945.0,
        1.0083492773819228268,
        PI.powi(8) / 9450.0,
    ];
    let mut a = vec![0.0; 9]; // log Γ(1+u), a[0] = 0
    a[1] = -GAMMA_E;
    for (k, z) in zeta.iter().enumerate().skip(2) {
        a[k] = if k % 2 == 0 { z / k as f64 } else { -z / k as f64 };
    }
    // b = exp(a): b₀ = 1, k·b_k = Σ_{j=1..k} j·a_j·b_{k−j}.
    let mut b = vec![0.0; 9];
    b[0] = 1.0;
    for k in 1..9 {
        let mut s = 0.0;
        for j in 1..=k {
            s += j as f64 * a[j] * b[k - j];
        }
        b[k] = s / k as f64;
    }
    Series {
        lo: 0,
        e: vec![1e-16; b.len()],
        v: b,
    }
}

fn g_series(order: i32, table: &ZeroTable) -> Result<Series> {
    let exp = gfun::laurent_g(order, table)?;
    let mut v = Vec::new();
    let mut e = Vec::new();
    for k in -2..=order {
        v.push(exp.coeff(k)?);
        e.push(exp.coeff_err(k)?);
    }
    Ok(Series { lo: -2, v, e })
}

/// Main-term coefficients [A_{2n−1,n}, …, A_{0,n}] (descending powers of
/// log X): the residue of Γ(s)Gⁿ(s)Xˢ at s = 1 is
/// X·Σ_j A_{j,n} (log X)^j with A_{j,n} = c_{−1−j}/j!, c the Laurent
/// coefficients of Γ·Gⁿ.
pub fn a_coeffs(n: u32, table: &ZeroTable) -> Result<Vec<f64>> {
    Ok(a_coeffs_err(n, table)?.into_iter().map(|(v, _)| v).collect())
}

/// Same с per-coefficient error bounds.
pub fn a_coeffs_err(n: u32, table: &ZeroTable) -> Result<Vec<(f64, f64)>> {
    if !(1..=3).contains(&n) {
        return Err(Error::InvalidInput(format!("tuple length {n} not in 1..=3")));
    }
    let order = (2 * n as i32 + 2).min(6);
    let g = g_series(order, table)?;
    let mut prod = gamma_series();
    for _ in 0..n {
        prod = prod.mul(&g, 2);
    }
    let mut coeffs = Vec::new();
    for j in (0..2 * n as i32).rev() {
        let fact = (1..=j).map(|i| i as f64).product::<f64>().max(1.0);
        let (c, ce) = prod.coeff(-1 - j);
        coeffs.push((c / fact, ce / fact));
    }
    Ok(coeffs)
}

// ---------------------------------------------------------------------------
// Truncated multiple sums.
// ---------------------------------------------------------------------------

/// Bound on Σ_{γ>H} e^{−γ/X} (density integral plus fluctuation slack).
pub fn single_tail_bound(x: f64, h: f64) -> f64 {
    let decay = (-h / x).exp();
    decay * (x * ((h / TAU).ln() + 2.0 * x / h) / TAU + 2.0 + 0.5 * h.ln())
}

/// Σ over n-tuples of ordinates of e^{−γ⁽¹⁾⋯γ⁽ⁿ⁾/X}, over the table.
///
/// n = 1 is a plain compensated sum; the beyond-table tail must be below
/// 10⁻⁸ or the call fails. n = 2 iterates the outer index with a per-outer
/// truncated inner sum (early-exit error below 10⁻⁹ relative to the full
/// within-table product); the beyond-table tail is the caller's concern —
/// `verify_thm2` enforces it for report generation, while direct calls may
/// deliberately study truncated tables.
pub fn lhs_sum(n: u32, x: f64, table: &ZeroTable) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::InvalidInput(format!("X = {x} must be > 0")));
    }
    let h = table.height();
    match n {
        1 => {
            let bound = single_tail_bound(x, h);
            if bound > 1e-8 {
                return Err(Error::TableTooShort {
                    needed: x * (1e8f64).ln() * 1.4,
                    height: h,
                });
            }
            let mut acc = 0.0;
            let mut c = 0.0;
            for z in table.ordinates().iter().rev() {
                let y = (-z.gamma / x).exp() - c;
                let t = acc + y;
                c = (t - acc) - y;
                acc = t;
            }
            Ok(acc)
        }
        2 => {
            let ords = table.ordinates();
            let g1 = match ords.first() {
                Some(z) => z.gamma,
                None => return Ok(0.0),
            };
            let mut total = 0.0;
            let mut c = 0.0;
            for zo in ords {
                // Inner sum over γ' at fixed outer γ.
                let mut inner = 0.0;
                for zi in ords {
                    let term = (-zo.gamma * zi.gamma / x).exp();
                    inner += term;
                    // Remaining inner tail ≤ term · (1 + X·log(H/2π)/(2πγ)).
                    if term * (1.0 + x * (h / TAU).ln() / (TAU * zo.gamma)) < 1e-13 {
                        break;
                    }
                }
                let y = inner - c;
                let t = total + y;
                c = (t - total) - y;
                total = t;
                // Remaining outer tail ≤ inner · (1 + X·log(H/2π)/(2πγ₁)).
                if inner * (1.0 + x * (h / TAU).ln() / (TAU * g1)) < 1e-12 {
                    break;
                }
            }
            Ok(total)
        }
        _ => Err(Error::InvalidInput(format!(
            "tuple length {n} not in {{1, 2}}"
        ))),
    }
}

/// Evaluate X·Σ A_j (log X)^j from descending coefficients.
pub fn main_term(x: f64, coeffs: &[f64]) -> f64 {
    let lx = x.ln();
    let mut p = 0.0;
    for &a in coeffs {
        p = p * lx + a;
    }
    x * p
}

/// Compare the n-tuple sums against their main terms across `x_list`.
pub fn verify_thm2(n: u32, x_list: &[f64], table: &ZeroTable) -> Result<Vec<Thm2Report>> {
    let coeffs = a_coeffs(n, table)?;
    let g0 = gfun::g_cont(ComplexPoint::new(0.0, 0.0)?, table)?.value.re;
    let const_term = g0.powi(n as i32);
    let h = table.height();
    let mut out = Vec::new();
    for &x in x_list {
        // Beyond-table mass must be invisible at report precision.
        let ok = match n {
            1 => single_tail_bound(x, h) <= 1e-8,
            _ => {
                let g1 = table.ordinates().first().map_or(f64::MAX, |z| z.gamma);
                g1 * h / x >= 30.0
            }
        };
        if !ok {
            return Err(Error::TableTooShort {
                needed: if n == 1 { x * 26.0 } else { 30.0 * x / 14.0 },
                height: h,
            });
        }
        let lhs = lhs_sum(n, x, table)?;
        let main = main_term(x, &coeffs);
        out.push(Thm2Report {
            n,
            x,
            lhs,
            main,
            const_term,
            residual: lhs - main - const_term,
        });
    }
    Ok(out)
}

/// The |ρ|-weighted analogue: Σ_ρ e^{−|ρ|/X} over both half-planes, with
/// main term from the residue of Γ(s)R(s)Xˢ at s = 1. R = 2G + H with H
/// regular at 1, so R's pole coefficients are exactly twice G's; the
/// constant picked up at w = 0 is R(0) = 2G(0) + H(0) = 7/4.
pub fn verify_eq33(x_list: &[f64], table: &ZeroTable) -> Result<Vec<Thm2Report>> {
    let g = g_series(4, table)?;
    let gamma = gamma_series();
    // R-series: twice the G poles, plus the regular H Taylor coefficients.
    let mut v = Vec::new();
    let mut e = Vec::new();
    let mut fact = 1.0;
    for k in -2..=2i32 {
        let (gv, ge) = g.coeff(k);
        if k < 0 {
            v.push(2.0 * gv);
            e.push(2.0 * ge);
        } else {
            if k > 0 {
                fact *= k as f64;
            }
            let (hk, hb) = gfun::h_derivative_at_one(k as u32, table)?;
            v.push(2.0 * gv + hk / fact);
            e.push(2.0 * ge + hb / fact);
        }
    }
    let r_series = Series { lo: -2, v, e };
    let prod = gamma.mul(&r_series, 2);
    let coeffs: Vec<f64> = (0..2).rev().map(|j| {
        let fact = if j == 0 { 1.0 } else { j as f64 };
        prod.coeff(-1 - j).0 / fact
    }).collect();

    let r0 = gfun::r_of(ComplexPoint::new(0.0, 0.0)?, table)?.value.re;
    let h = table.height();
    let mut out = Vec::new();
    for &x in x_list {
        if single_tail_bound(x, h) > 1e-8 {
            return Err(Error::TableTooShort {
                needed: x * 26.0,
                height: h,
            });
        }
        let mut lhs = 0.0;
        for z in table.ordinates().iter().rev() {
            let rho = (z.gamma * z.gamma + 0.25).sqrt();
            lhs += 2.0 * (-rho / x).exp();
        }
        let main = main_term(x, &coeffs);
        out.push(Thm2Report {
            n: 1,
            x,
            lhs,
            main,
            const_term: r0,
            residual: lhs - main - r0,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Mellin / residue oracles.
// ---------------------------------------------------------------------------

fn gamma_at(s: C64) -> C64 {
    zetacore::lgamma(s).exp()
}

/// (1/2πi)∫_{(2)} Γ(w) z^{−w} dw by trapezoid on |Im w| ≤ 40, step 0.05 —
/// should reproduce e^{−z}.
pub fn mellin_exp(z: f64) -> Result<f64> {
    if z <= 0.0 {
        return Err(Error::InvalidInput(format!("z = {z} must be > 0")));
    }
    let hstep = 0.05;
    let vmax = 40.0;
    let n = (vmax / hstep) as i64;
    let mut acc = Cx::zero();
    for k in -n..=n {
        let v = k as f64 * hstep;
        let w = Cx::new(2.0, v);
        let term = gamma_at(w) * (-w.scale(z.ln())).exp();
        acc += if k == -n || k == n {
            term.scale(0.5)
        } else {
            term
        };
    }
    // dw = i dv; the 1/2πi cancels the i.
    Ok(acc.scale(hstep / TAU).re)
}

/// (1/2πi)∮ Γ(s) G(s) X^s ds on a radius-0.1 circle around s = 1 by
/// trapezoid (exact for periodic integrands up to the analyticity radius) —
/// an independent oracle for the n = 1 residue polynomial.
pub fn contour_residue(x: f64, table: &ZeroTable) -> Result<f64> {
    const NODES: usize = 256;
    const R: f64 = 0.1;
    let mut acc = Cx::zero();
    for k in 0..NODES {
        let th = TAU * k as f64 / NODES as f64;
        let (sin, cos) = th.sin_cos();
        let s = Cx::new(1.0 + R * cos, R * sin);
        let g = gfun::g_cont(ComplexPoint::new(s.re, s.im)?, table)?.value;
        let xs = (s.scale(x.ln())).exp();
        acc += (gamma_at(s) * g * xs) * Cx::new(cos, sin);
    }
    Ok(acc.scale(R / NODES as f64).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn table500() -> &'static ZeroTable {
        static T: OnceLock<ZeroTable> = OnceLock::new();
        T.get_or_init(|| ZeroTable::build(500.0, 1).unwrap())
    }

    #[test]
    fn gamma_series_matches_lgamma() {
        let g = gamma_series();
        // Γ(1) = 1, Γ′(1) = −γ_E, Γ″(1) = γ² + π²/6.
        assert!((g.v[0] - 1.0).abs() < 1e-15);
        assert!((g.v[1] + GAMMA_E).abs() < 1e-15);
        assert!((2.0 * g.v[2] - (GAMMA_E * GAMMA_E + PI * PI / 6.0)).abs() < 1e-14);
        // Series vs direct Γ near 1 (truncation at order 8 ⇒ ~|u|⁹ error).
        for u in [0.1, -0.1] {
            let series: f64 = g.v.iter().rev().fold(0.0, |p, &c| p * u + c);
            let direct = gamma_at(Cx::new(1.0 + u, 0.0)).re;
            assert!(
                (series - direct).abs() < 1e-8,
                "Γ(1+{u}): {series} vs {direct}"
            );
        }
    }

    #[test]
    fn residue_coefficients_level_one() {
        let tab = table500();
        let a = a_coeffs_err(1, tab).unwrap();
        assert_eq!(a.len(), 2);
        // A_{1,1} = 1/2π and A_{0,1} = −(γ_E + log 2π)/(2π): closed forms.
        assert!((a[0].0 - 1.0 / TAU).abs() < 1e-12, "A11 = {}", a[0].0);
        assert!(
            (a[1].0 + (GAMMA_E + TAU.ln()) / TAU).abs() < 1e-12,
            "A01 = {}",
            a[1].0
        );
        assert!((a[1].0 + 0.384373946213432915602664).abs() < 1e-12);

        // Leading coefficients stay nonzero and the degree is 2n−1.
        for n in 1..=3 {
            let c = a_coeffs(n, tab).unwrap();
            assert_eq!(c.len(), 2 * n as usize);
            assert!(c[0].abs() > 1e-6);
        }
    }

    #[test]
    fn residue_against_contour() {
        let tab = table500();
        let x = 100.0;
        let a = a_coeffs(1, tab).unwrap();
        let main = main_term(x, &a);
        let contour = contour_residue(x, tab).unwrap();
        assert!(
            ((main - contour) / main).abs() < 1e-6,
            "residue {main} vs contour {contour}"
        );
    }

    #[test]
    fn mellin_line_gives_exponential() {
        for z in [0.5, 1.0, 2.0] {
            let v = mellin_exp(z).unwrap();
            assert!(
                (v - (-z).exp()).abs() < 1e-6,
                "Mellin at z={z}: {v} vs {}",
                (-z).exp()
            );
        }
    }

    #[test]
    fn single_sum_matches_brute_force() {
        let tab = table500();
        // X small enough that the beyond-table tail is ≪ 1e-8.
        let x = 15.0;
        let brute: f64 = tab
            .ordinates()
            .iter()
            .map(|z| (-z.gamma / x).exp())
            .sum();
        let v = lhs_sum(1, x, tab).unwrap();
        assert!((v - brute).abs() < 1e-12);
        // X → 0⁺ drives the sum to 0.
        assert!(lhs_sum(1, 0.05, tab).unwrap() < 1e-100);
        // Too large an X for this table must refuse.
        assert!(matches!(
            lhs_sum(1, 100.0, tab),
            Err(Error::TableTooShort { .. })
        ));
    }

    #[test]
    fn double_sum_matches_direct_product() {
        let tab = table500();
        let sub = tab.truncated(300.0).unwrap();
        let x = 2000.0;
        let ords = sub.ordinates();
        let mut direct = 0.0;
        for a in ords {
            for b in ords {
                direct += (-a.gamma * b.gamma / x).exp();
            }
        }
        let v = lhs_sum(2, x, &sub).unwrap();
        assert!(
            (v - direct).abs() < 1e-6 * (1.0 + direct),
            "{v} vs {direct}"
        );
    }

    #[test]
    fn reports_shrink_with_x() {
        let tab = table500();
        let reports = verify_thm2(1, &[5.0, 10.0, 18.0], tab).unwrap();
        assert_eq!(reports.len(), 3);
        for r in &reports {
            assert!((r.residual - (r.lhs - r.main - r.const_term)).abs() < 1e-12);
            assert!((r.const_term - 0.875).abs() < 1e-10);
        }
        assert!(
            reports[2].residual.abs() < reports[0].residual.abs(),
            "residuals {:?}",
            reports.iter().map(|r| r.residual).collect::<Vec<_>>()
        );
        // CSV shape.
        assert_eq!(Thm2Report::csv_header().split(',').count(), 6);
        assert_eq!(reports[0].csv_row().split(',').count(), 6);
    }

    #[test]
    fn rho_variant_doubles_the_pole() {
        let tab = table500();
        let reports = verify_eq33(&[5.0, 10.0, 15.0], tab).unwrap();
        for r in &reports {
            assert!((r.const_term - 1.75).abs() < 1e-6, "R(0) = {}", r.const_term);
        }
        assert!(reports[2].residual.abs() < reports[0].residual.abs() * 1.5);

        // Leading main coefficient = 1/π (twice the G case): extract by
        // comparing main at two X values.
        let m = |x: f64, r: &Thm2Report| r.main / x;
        let (x1, x2) = (reports[0].x, reports[1].x);
        let lead =
            (m(x2, &reports[1]) - m(x1, &reports[0])) / (x2.ln() - x1.ln());
        assert!((lead - 1.0 / PI).abs() < 1e-9, "leading coeff {lead}");
    }

    #[test]
    fn invalid_tuple_lengths() {
        let tab = table500();
        assert!(lhs_sum(3, 10.0, tab).is_err());
        assert!(lhs_sum(0, 10.0, tab).is_err());
        assert!(a_coeffs(4, tab).is_err());
    }
}
