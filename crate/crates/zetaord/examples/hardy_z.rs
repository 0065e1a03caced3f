//! Hardy's Z function and the functional equation: |Z(t)| = |ζ(½+it)|
//! pointwise, ζ(s) = χ(s)ζ(1−s) across the strip, and a zero hunted down
//! by hand with a sign-change bracket.

use zetaord::zerofinder;
use zetaord::zetacore::{self, ComplexPoint, PrecisionBudget};

fn main() -> zetaord::Result<()> {
    let prec = PrecisionBudget::for_tol(1e-12)?;

    println!("|ζ(s) − χ(s)ζ(1−s)| across the strip:");
    for sigma in [0.3, 0.5, 1.5] {
        for t in [5.0, 50.0] {
            let s = ComplexPoint::new(sigma, t)?;
            let mirrored = ComplexPoint::new(1.0 - sigma, -t)?;
            let gap = (zetacore::zeta(s, &prec)?
                - zetacore::chi(s, &prec)? * zetacore::zeta(mirrored, &prec)?)
            .abs();
            println!("  σ={sigma:<4} t={t:<4}  gap = {gap:.2e}");
        }
    }

    println!("\n|Z(t)| vs |ζ(½+it)|:");
    for t in [2.0, 14.0, 100.0] {
        let z = zetacore::hardy_z(t)?;
        let zeta = zetacore::zeta(ComplexPoint::new(0.5, t)?, &prec)?;
        println!(
            "  t={t:<5}  Z = {z:+.12}   |Z| − |ζ| = {:.2e}",
            z.abs() - zeta.abs()
        );
    }

    // Z changes sign across each critical-line zero; bracket and refine.
    let brackets = zerofinder::scan_zeros(14.0, 15.0)?;
    let zero = zerofinder::refine_zero(brackets[0], 1e-10)?;
    println!("\nfirst sign change of Z in [14, 15]:");
    println!("  γ = {:.12} (± {:.0e})", zero.gamma, zero.err);
    println!("  Z(γ) = {:+.3e}", zetacore::hardy_z(zero.gamma)?);
    Ok(())
}
