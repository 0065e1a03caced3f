//! Exponentially damped sums over zero ordinates against their main
//! terms: the residuals shrink as X grows, the expansion coefficients
//! match a contour-integral oracle, and the two-fold sum collapses to a
//! product check.

use zetaord::asymptotics;
use zetaord::zerofinder::ZeroTable;

fn main() -> zetaord::Result<()> {
    // X = 100 needs ordinates up to 26·X before the beyond-table mass of
    // Σ e^(−γ/X) drops below report precision.
    let table = ZeroTable::build(2600.0, 1)?;

    println!("Σ e^(−γ/X) vs its main term:");
    println!("  {}", asymptotics::Thm2Report::csv_header());
    for r in asymptotics::verify_thm2(1, &[20.0, 50.0, 100.0], &table)? {
        println!("  {}", r.csv_row());
    }

    // The degree-1 coefficients have closed forms; the contour route
    // integrates around the pole instead and must land on the same main
    // term.
    let coeffs = asymptotics::a_coeffs(1, &table)?;
    println!("\nexpansion coefficients: {:+.12e} (leading), {:+.12e}", coeffs[0], coeffs[1]);
    let x = 100.0;
    let closed = asymptotics::main_term(x, &coeffs);
    let contour = asymptotics::contour_residue(x, &table)?;
    println!("main term at X={x}: closed {closed:.12e} vs contour {contour:.12e}");

    // Mellin line integral reproducing the damping kernel itself.
    println!("\nkernel from the inversion integral:");
    for z in [0.5, 1.0, 2.0] {
        let got = asymptotics::mellin_exp(z)?;
        println!("  z={z}: {got:.12} vs e^(−z) = {:.12}", (-z).exp());
    }

    // Two-fold sums: the fast evaluation (outer loop with truncated inner
    // sums) against the plain quadratic double loop.
    let x = 1e4;
    let fast = asymptotics::lhs_sum(2, x, &table)?;
    let mut direct = 0.0;
    for zi in table.ordinates() {
        for zj in table.ordinates() {
            direct += (-zi.gamma * zj.gamma / x).exp();
        }
    }
    println!("\ntwo-fold sum at X={x:.0}: fast {fast:.12e} vs direct {direct:.12e}");
    println!("relative gap {:.2e}", ((fast - direct) / direct).abs());
    Ok(())
}
