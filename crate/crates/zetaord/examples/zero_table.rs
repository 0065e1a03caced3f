//! Build a certified table of zero ordinates, then read the counting
//! function off it two ways: directly, and through the smooth ϑ/π + 1
//! approximation whose residual is the argument function.

use zetaord::zerofinder::{self, ZeroTable};

fn main() -> zetaord::Result<()> {
    let table = ZeroTable::build(300.0, 1)?;
    println!("scanned to height {}: {} ordinates", table.height(), table.count());

    println!("\nfirst five ordinates:");
    for z in table.ordinates().iter().take(5) {
        println!("  γ_{} = {:.12}  (± {:.0e})", z.index, z.gamma, z.err);
    }

    // Counts at a few heights, against the smooth term. The gap between
    // them is −S(T) − f(T), which stays well inside ±1 this low.
    println!("\n    T    N(T)   ϑ(T)/π + 1   residual");
    for t in [50.0, 100.0, 200.0, 300.0] {
        let rep = zerofinder::verify_count(&table, t)?;
        println!(
            "  {t:5}  {:5}   {:10.4}   {:+.4}",
            rep.count, rep.expected, rep.residual
        );
    }

    // Gram points interleave the ordinates on average — the classical
    // heuristic that seeds sign-change scans.
    println!("\ngram points g_0..g_4 vs ordinates:");
    for n in 0..5u64 {
        println!(
            "  g_{n} = {:9.5}   γ_{} = {:9.5}",
            zerofinder::gram_point(n),
            n + 1,
            table.gamma(n as usize + 1)
        );
    }
    Ok(())
}
