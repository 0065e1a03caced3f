//! The bundled verification suite: every cross-check the crate stands
//! behind, runnable as one batch against a zero table. The CLI `report all`
//! command and the acceptance test target both drive [`run_all`]; each
//! check degrades to `Skip` (with the reason) when the supplied table is
//! too short for its canonical parameters, so the suite is usable at any
//! height.

use crate::asymptotics;
use crate::gfun;
use crate::integrals::{self, MomentTable};
use crate::sfuncs;
use crate::zerofinder::{self, ZeroTable};
use crate::zetacore::{self, ComplexPoint, PrecisionBudget};

use std::f64::consts::TAU;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn pass(name: &'static str, detail: String) -> Check {
        Check {
            name,
            status: Status::Pass,
            detail,
        }
    }
    fn fail(name: &'static str, detail: String) -> Check {
        Check {
            name,
            status: Status::Fail,
            detail,
        }
    }
    fn skip(name: &'static str, detail: String) -> Check {
        Check {
            name,
            status: Status::Skip,
            detail,
        }
    }
    fn of(name: &'static str, ok: bool, detail: String) -> Check {
        if ok {
            Check::pass(name, detail)
        } else {
            Check::fail(name, detail)
        }
    }
}

/// Format with 12 significant digits — the crate-wide output convention,
/// chosen to keep emitted rows diff-stable.
pub fn sig(x: f64) -> String {
    format!("{x:.11e}")
}

const GAMMA_1: f64 = 14.134725141734694;

/// Table height the snapshots and the full check grid are pinned to. At or
/// above it every check must run in full; below it, checks whose canonical
/// parameters exceed the table degrade to `Skip`.
pub const REFERENCE_HEIGHT: f64 = 13000.0;

// ---------------------------------------------------------------------------
// Recorded snapshots. Each is the measured value from the reference run
// (height-13000 table); the checks guard against regressions beyond 2×.
// The underlying statements are asymptotic bounds with unspecified
// constants, so a snapshot-with-guard is the strongest reproducible check.
// ---------------------------------------------------------------------------

/// Max over T ∈ {500, 1000, 2000} of ∫₁ᵀ|G(σ+it)|²dt over its growth bound,
/// per σ, from the reference run.
const MEANSQ_SNAPSHOT: [(f64, f64); 3] = [
    (0.25, 6.078e-2),
    (0.5, 2.533e-2),
    (0.75, 1.482e-1),
];

/// Max over T ∈ {500, 1000, 2000} of |Σ_{γ≤T}E(γ) + ∫₀ᵀS|ζ|² − ½T log T|/T,
/// from the reference run.
const IDENTITY_SNAPSHOT: f64 = 1.4292;

fn meansq_bound(sigma: f64, t: f64) -> f64 {
    if sigma == 0.5 {
        t * t.ln().powi(2)
    } else if sigma > 0.5 {
        t
    } else {
        t.powf(1.5) * t.ln()
    }
}

// ---------------------------------------------------------------------------
// The individual checks.
// ---------------------------------------------------------------------------

fn check_zero_table(table: &ZeroTable) -> Check {
    const NAME: &str = "zero-table";
    if table.count() == 0 {
        return Check::fail(NAME, "table is empty".into());
    }
    let g1_gap = (table.gamma(1) - GAMMA_1).abs();
    if g1_gap > 1e-6 {
        return Check::fail(NAME, format!("γ₁ off by {}", sig(g1_gap)));
    }
    let mut counts = String::new();
    for (t, want) in [(100.0, 29usize), (1000.0, 649)] {
        if table.height() >= t {
            let got = table.count_up_to(t);
            if got != want {
                return Check::fail(NAME, format!("N({t}) = {got}, expected {want}"));
            }
            // Same count through the smooth formula: the residual against
            // ϑ(t)/π + 1 is −S(t) − f(t), comfortably inside (−½, ½) here.
            match zerofinder::verify_count(table, t) {
                Ok(rep) if rep.residual.abs() < 0.5 => {}
                Ok(rep) => {
                    return Check::fail(
                        NAME,
                        format!("N({t}) residual vs smooth count = {:.3}", rep.residual),
                    )
                }
                Err(e) => return Check::fail(NAME, format!("count audit at {t}: {e}")),
            }
            counts.push_str(&format!("N({t}) = {got}, "));
        }
    }
    match zerofinder::verify_count(table, table.height()) {
        Ok(rep) => Check::pass(
            NAME,
            format!(
                "γ₁ within {}, {}count {} certified over {} windows (residual {:.3})",
                sig(g1_gap),
                counts,
                rep.count,
                rep.windows_checked,
                rep.residual
            ),
        ),
        Err(e) => Check::fail(NAME, format!("count certification failed: {e}")),
    }
}

fn check_route_equivalence(table: &ZeroTable) -> Check {
    const NAME: &str = "route-equivalence";
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    let mut compared = 0usize;
    let mut skipped = Vec::new();
    for &sigma in &[0.25, 0.5, 0.75, 1.5] {
        for &t in &[0.0, 5.0, 20.0, 100.0] {
            let s = match ComplexPoint::new(sigma, t) {
                Ok(s) => s,
                Err(e) => return Check::fail(NAME, format!("bad grid point: {e}")),
            };
            let mut vals = Vec::new();
            // The hybrid cut sits at the full table height: at t = 100 the
            // oscillatory tail bound needs every ordinate the table has.
            for r in [
                gfun::g_hybrid(s, table, table.height()),
                gfun::g_cont(s, table),
                gfun::g_cont2(s, table),
            ] {
                match r {
                    Ok(v) => vals.push(v),
                    Err(crate::Error::TailDominates { .. }) => {}
                    Err(e) => {
                        return Check::fail(
                            NAME,
                            format!("route failed at σ={sigma}, t={t}: {e}"),
                        )
                    }
                }
            }
            if vals.len() < 2 {
                skipped.push(format!("σ={sigma},t={t}"));
                continue;
            }
            for i in 0..vals.len() {
                for j in i + 1..vals.len() {
                    compared += 1;
                    let gap = (vals[i].value - vals[j].value).abs();
                    let budget = vals[i].err + vals[j].err;
                    if gap > budget {
                        return Check::fail(
                            NAME,
                            format!(
                                "{} vs {} at σ={sigma}, t={t}: gap {} exceeds combined err {}",
                                vals[i].route,
                                vals[j].route,
                                sig(gap),
                                sig(budget)
                            ),
                        );
                    }
                    let rel = gap / budget.max(1e-300);
                    if rel > worst {
                        worst = rel;
                        worst_at = format!("σ={sigma}, t={t}");
                    }
                }
            }
        }
    }
    let mut detail = format!(
        "{compared} pairwise comparisons within combined error (worst {:.2} of budget at {worst_at})",
        worst
    );
    if skipped.is_empty() {
        return Check::pass(NAME, detail);
    }
    detail.push_str(&format!("; tail-limited points: {}", skipped.join(" ")));
    if table.height() < REFERENCE_HEIGHT {
        Check::skip(NAME, detail)
    } else {
        Check::fail(NAME, detail)
    }
}

fn check_g_at_zero_and_c1(table: &ZeroTable) -> Check {
    const NAME: &str = "g-at-zero";
    for f in [gfun::g_cont, gfun::g_cont2] {
        match f(ComplexPoint::new(0.0, 0.0).unwrap(), table) {
            Ok(v) => {
                if (v.value.re - 0.875).abs() > 1e-6 || v.value.im.abs() > 1e-12 {
                    return Check::fail(
                        NAME,
                        format!("G(0) = {} via {}", sig(v.value.re), v.route),
                    );
                }
            }
            Err(e) => return Check::fail(NAME, format!("G(0) failed: {e}")),
        }
    }
    // Solve for the continuation constant from two hybrid values: the
    // difference hybrid − (continuation − C₁) isolates it.
    let mut solved = Vec::new();
    for sigma in [2.0, 3.0] {
        let s = ComplexPoint::new(sigma, 0.0).unwrap();
        match (gfun::g_hybrid_default(s, table), gfun::g_cont(s, table)) {
            (Ok(h), Ok(c)) => solved.push(gfun::c1() + (h.value.re - c.value.re)),
            (Err(e), _) | (_, Err(e)) => {
                return Check::fail(NAME, format!("constant solve at σ={sigma}: {e}"))
            }
        }
    }
    let spread = (solved[0] - solved[1]).abs();
    Check::of(
        NAME,
        spread <= 1e-6,
        format!(
            "G(0) = 7/8 on both continuations; constant from σ=2 vs σ=3 agrees to {}",
            sig(spread)
        ),
    )
}

fn check_multiple_sum_n1(table: &ZeroTable) -> Check {
    const NAME: &str = "multiple-sum-n1";
    let xs: Vec<f64> = [20.0, 50.0, 100.0, 200.0, 500.0]
        .into_iter()
        .filter(|&x| asymptotics::single_tail_bound(x, table.height()) <= 1e-8)
        .collect();
    if xs.len() < 2 {
        return Check::skip(
            NAME,
            format!("table height {} supports none of the X grid", table.height()),
        );
    }
    let reports = match asymptotics::verify_thm2(1, &xs, table) {
        Ok(r) => r,
        Err(e) => return Check::fail(NAME, format!("{e}")),
    };
    let fitted_c = reports
        .iter()
        .map(|r| r.residual.abs() * r.x.powf(0.8))
        .fold(0.0f64, f64::max);
    let decreasing = reports.last().unwrap().residual.abs() < reports[0].residual.abs();
    // Closed forms of the level-1 expansion coefficients (descending in
    // log X: leading first).
    let coeffs = match asymptotics::a_coeffs(1, table) {
        Ok(c) => c,
        Err(e) => return Check::fail(NAME, format!("{e}")),
    };
    let a11_gap = (coeffs[0] - 1.0 / TAU).abs();
    let a01 = -(sfuncs::C0 + TAU.ln()) / TAU;
    let a01_gap = (coeffs[1] - a01).abs();
    let ok = fitted_c <= 5.0 && decreasing && a11_gap <= 1e-9 && a01_gap <= 1e-9;
    Check::of(
        NAME,
        ok,
        format!(
            "X ∈ {{{}}}: fitted residual constant {:.3} (≤ 5), |r| decreasing = {decreasing}, coefficient gaps {} / {}",
            xs.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(","),
            fitted_c,
            sig(a11_gap),
            sig(a01_gap)
        ),
    )
}

fn check_multiple_sum_n2(table: &ZeroTable) -> Check {
    const NAME: &str = "multiple-sum-n2";
    if table.height() < 2000.0 {
        return Check::skip(NAME, "needs a table of height 2000".into());
    }
    let sub = match table.truncated(2000.0) {
        Ok(s) => s,
        Err(e) => return Check::fail(NAME, format!("{e}")),
    };
    let x = 1e4;
    let fast = match asymptotics::lhs_sum(2, x, &sub) {
        Ok(v) => v,
        Err(e) => return Check::fail(NAME, format!("{e}")),
    };
    let mut direct = 0.0;
    for zi in sub.ordinates() {
        for zj in sub.ordinates() {
            direct += (-zi.gamma * zj.gamma / x).exp();
        }
    }
    let rel = (fast - direct).abs() / direct.abs();
    let g0 = match gfun::g_cont(ComplexPoint::new(0.0, 0.0).unwrap(), &sub) {
        Ok(v) => v.value.re,
        Err(e) => return Check::fail(NAME, format!("{e}")),
    };
    let const_gap = (g0 * g0 - 0.765625).abs();
    Check::of(
        NAME,
        rel <= 1e-6 && const_gap <= 1e-9,
        format!(
            "truncated double sum vs direct product over {} zeros: relative gap {}; constant term (7/8)² gap {}",
            sub.count(),
            sig(rel),
            sig(const_gap)
        ),
    )
}

fn check_zero_values(table: &ZeroTable) -> Check {
    const NAME: &str = "zero-values";
    let t_cap = table.height().min(1e4);
    let n = table.count_up_to(t_cap);
    let mut sum = 0.0;
    for z in &table.ordinates()[..n] {
        match zetacore::hardy_z(z.gamma) {
            Ok(v) => sum += v * v,
            Err(e) => return Check::fail(NAME, format!("Z(γ) failed at {}: {e}", z.gamma)),
        }
    }
    let budget = 1e-10 * n as f64;
    Check::of(
        NAME,
        sum < budget,
        format!(
            "Σ|ζ(½+iγ)|² over γ ≤ {t_cap} = {} (budget {})",
            sig(sum),
            sig(budget)
        ),
    )
}

fn check_mean_square_growth(table: &ZeroTable) -> Check {
    const NAME: &str = "mean-square-growth";
    let ts: Vec<f64> = [500.0, 1000.0, 2000.0]
        .into_iter()
        .filter(|t| 2.0 * t <= table.height())
        .collect();
    if ts.is_empty() {
        return Check::skip(NAME, "needs a table of height 1000".into());
    }
    let mut details = Vec::new();
    let mut ok = true;
    for &(sigma, snapshot) in &MEANSQ_SNAPSHOT {
        let mut max_ratio = 0.0f64;
        for &t in &ts {
            // A table reaching just past the resonant region keeps the sums
            // short without moving the value.
            let sub = match table.truncated(2.0 * t) {
                Ok(s) => s,
                Err(e) => return Check::fail(NAME, format!("{e}")),
            };
            let q = match integrals::meansq_g(sigma, t, &sub) {
                Ok(q) => q,
                Err(e) => return Check::fail(NAME, format!("σ={sigma}, T={t}: {e}")),
            };
            max_ratio = max_ratio.max(q.value / meansq_bound(sigma, t));
        }
        if max_ratio > 2.0 * snapshot {
            ok = false;
        }
        details.push(format!(
            "σ={sigma}: max ratio {} (snapshot {})",
            sig(max_ratio),
            sig(snapshot)
        ));
    }
    Check::of(
        NAME,
        ok,
        format!("T ∈ {{{:?}}}: {}", ts, details.join("; ")),
    )
}

fn check_zero_sum_identity(table: &ZeroTable) -> Check {
    const NAME: &str = "zero-sum-identity";
    let ts: Vec<f64> = [500.0, 1000.0, 2000.0]
        .into_iter()
        .filter(|&t| t <= table.height())
        .collect();
    if ts.is_empty() {
        return Check::skip(NAME, "needs a table of height 500".into());
    }
    let mt = match MomentTable::build(*ts.last().unwrap(), table) {
        Ok(m) => m,
        Err(e) => return Check::fail(NAME, format!("moment table: {e}")),
    };
    let mut max_ratio = 0.0f64;
    for &t in &ts {
        let e_sum = match integrals::sum_e_at_zeros(t, &mt) {
            Ok(v) => v,
            Err(e) => return Check::fail(NAME, format!("{e}")),
        };
        let s_int = match integrals::int_s_zeta2_from_zero(t, &mt) {
            Ok(v) => v.value,
            Err(e) => return Check::fail(NAME, format!("{e}")),
        };
        let residual = (e_sum + s_int - 0.5 * t * t.ln()).abs() / t;
        max_ratio = max_ratio.max(residual);
    }
    Check::of(
        NAME,
        max_ratio <= 2.0 * IDENTITY_SNAPSHOT,
        format!(
            "max |ΣE(γ) + ∫₀ᵀS|ζ|² − ½T log T|/T = {} over T ∈ {:?} (snapshot {})",
            sig(max_ratio),
            ts,
            sig(IDENTITY_SNAPSHOT)
        ),
    )
}

fn check_functional_equation() -> Check {
    const NAME: &str = "functional-equation";
    let prec = match PrecisionBudget::for_tol(1e-12) {
        Ok(p) => p,
        Err(e) => return Check::fail(NAME, format!("{e}")),
    };
    let mut worst = 0.0f64;
    for &sigma in &[0.3, 0.5, 0.8, 1.5, 2.0] {
        for &t in &[0.5, 5.0, 14.0, 50.0, 100.0] {
            let s = ComplexPoint::new(sigma, t).unwrap();
            let s_ref = ComplexPoint::new(1.0 - sigma, -t).unwrap();
            let gap = match (
                zetacore::zeta(s, &prec),
                zetacore::chi(s, &prec),
                zetacore::zeta(s_ref, &prec),
            ) {
                (Ok(z), Ok(x), Ok(zr)) => (z - x * zr).abs(),
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => {
                    return Check::fail(NAME, format!("σ={sigma}, t={t}: {e}"))
                }
            };
            worst = worst.max(gap);
        }
    }
    let mut worst_z = 0.0f64;
    for &t in &[0.5, 5.0, 14.134725, 50.0, 100.0, 500.0] {
        let z = match zetacore::hardy_z(t) {
            Ok(z) => z,
            Err(e) => return Check::fail(NAME, format!("Z({t}): {e}")),
        };
        let zeta = match zetacore::zeta(ComplexPoint::new(0.5, t).unwrap(), &prec) {
            Ok(v) => v,
            Err(e) => return Check::fail(NAME, format!("ζ(½+{t}i): {e}")),
        };
        worst_z = worst_z.max((z.abs() - zeta.abs()).abs());
    }
    Check::of(
        NAME,
        worst < 1e-10 && worst_z < 1e-10,
        format!(
            "max |ζ(s) − χ(s)ζ(1−s)| = {}, max ||Z| − |ζ|| = {} on the grid",
            sig(worst),
            sig(worst_z)
        ),
    )
}

fn check_shifted_zero_sum(table: &ZeroTable) -> Check {
    const NAME: &str = "shifted-zero-sum";
    if table.height() < 2000.0 {
        return Check::skip(NAME, "needs a table of height 2000".into());
    }
    let t = 2000.0;
    let alpha = 0.5;
    let sum = match integrals::gonek_sum(t, alpha, table) {
        Ok(v) => v,
        Err(e) => return Check::fail(NAME, format!("{e}")),
    };
    let main = integrals::gonek_main_term(t, alpha);
    let rel = (sum - main).abs() / main;
    let plain = match integrals::gonek_sum(t, 0.0, table) {
        Ok(v) => v,
        Err(e) => return Check::fail(NAME, format!("{e}")),
    };
    let n = table.count_up_to(t) as f64;
    Check::of(
        NAME,
        rel <= 0.35 && plain < 1e-10 * n,
        format!(
            "α=½ sum within {:.1}% of main term; α=0 sum {} (budget {})",
            100.0 * rel,
            sig(plain),
            sig(1e-10 * n)
        ),
    )
}

fn check_mellin_and_residue(table: &ZeroTable) -> Check {
    const NAME: &str = "mellin-and-residue";
    // A height-500 slice is plenty for σ = 2 machinery and keeps the line
    // integral cheap.
    let sub = match table.truncated(table.height().min(500.0)) {
        Ok(s) => s,
        Err(e) => return Check::fail(NAME, format!("{e}")),
    };
    let mut worst_mellin = 0.0f64;
    for &z in &[0.5, 1.0, 2.0] {
        let got = match asymptotics::mellin_exp(z) {
            Ok(v) => v,
            Err(e) => return Check::fail(NAME, format!("mellin at {z}: {e}")),
        };
        worst_mellin = worst_mellin.max((got - (-z).exp()).abs());
    }
    let x = 100.0;
    let contour = match asymptotics::contour_residue(x, &sub) {
        Ok(v) => v,
        Err(e) => return Check::fail(NAME, format!("contour: {e}")),
    };
    let coeffs = match asymptotics::a_coeffs(1, &sub) {
        Ok(c) => c,
        Err(e) => return Check::fail(NAME, format!("{e}")),
    };
    let closed = asymptotics::main_term(x, &coeffs);
    let rel = (contour - closed).abs() / closed.abs();
    Check::of(
        NAME,
        worst_mellin <= 1e-6 && rel <= 1e-6,
        format!(
            "line-integral e^{{−z}} gap {} (z ∈ {{½,1,2}}); contour residue vs closed coefficients {} relative",
            sig(worst_mellin),
            sig(rel)
        ),
    )
}

/// Run every check against the table. Operational failures inside a check
/// are reported as that check's failure, never a panic.
pub fn run_all(table: &ZeroTable) -> Vec<Check> {
    vec![
        check_zero_table(table),
        check_route_equivalence(table),
        check_g_at_zero_and_c1(table),
        check_multiple_sum_n1(table),
        check_multiple_sum_n2(table),
        check_zero_values(table),
        check_mean_square_growth(table),
        check_zero_sum_identity(table),
        check_functional_equation(),
        check_shifted_zero_sum(table),
        check_mellin_and_residue(table),
    ]
}

/// JSON summary with measured values kept as 12-significant-digit decimal
/// strings for diff stability.
pub fn summary_json(height: f64, checks: &[Check]) -> String {
    let items: Vec<serde_json::Value> = checks
        .iter()
        .map(|c| {
            serde_json::json!({
                "name": c.name,
                "status": c.status.to_string(),
                "detail": c.detail,
            })
        })
        .collect();
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    let v = serde_json::json!({
        "height": sig(height),
        "checks": items,
        "summary": {
            "pass": count(Status::Pass),
            "fail": count(Status::Fail),
            "skip": count(Status::Skip),
        },
    });
    serde_json::to_string_pretty(&v).expect("static structure")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn table300() -> &'static ZeroTable {
        static T: OnceLock<ZeroTable> = OnceLock::new();
        T.get_or_init(|| ZeroTable::build(300.0, 1).unwrap())
    }

    #[test]
    fn short_table_suite_runs_and_degrades() {
        let checks = run_all(table300());
        assert_eq!(checks.len(), 11);
        // Height 300 cannot host the tall-table checks; they must skip, not
        // fail. The height-independent ones must pass outright.
        for c in &checks {
            match c.name {
                "multiple-sum-n2" | "mean-square-growth" | "shifted-zero-sum"
                | "route-equivalence" => {
                    assert_eq!(c.status, Status::Skip, "{}: {}", c.name, c.detail)
                }
                "zero-table" | "g-at-zero" | "zero-values" | "functional-equation"
                | "mellin-and-residue" => {
                    assert_eq!(c.status, Status::Pass, "{}: {}", c.name, c.detail)
                }
                _ => {}
            }
        }
        let json = summary_json(300.0, &checks);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["checks"].as_array().unwrap().len(), 11);
        assert_eq!(parsed["summary"]["fail"], 0, "{json}");
    }
}
