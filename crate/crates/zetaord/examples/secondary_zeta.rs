//! The ordinate zeta function G(s) = Σ γ^{−s} by its three evaluation
//! routes, its special values, and its Laurent data at the double pole.

use zetaord::gfun;
use zetaord::zerofinder::ZeroTable;
use zetaord::zetacore::ComplexPoint;

fn main() -> zetaord::Result<()> {
    let table = ZeroTable::build(500.0, 1)?;

    // Three independent routes to the same value; each reports an error
    // bound, and the spreads sit inside the combined bounds.
    println!("G(s) by route (value, reported error):");
    for (sigma, t) in [(2.0, 0.0), (0.75, 5.0), (0.5, 0.0)] {
        let s = ComplexPoint::new(sigma, t)?;
        println!("  s = {sigma} + {t}i");
        for v in [
            gfun::g_hybrid_default(s, &table)?,
            gfun::g_cont(s, &table)?,
            gfun::g_cont2(s, &table)?,
        ] {
            println!(
                "    {:<8} {:+.12e} {:+.12e}i   ± {:.1e}",
                v.route.to_string(),
                v.value.re,
                v.value.im,
                v.err
            );
        }
    }

    // G(0) = 7/8 exactly: the s-weighted integrals vanish at s = 0 and only
    // the pole terms plus the continuation constant survive.
    let g0 = gfun::g_cont(ComplexPoint::new(0.0, 0.0)?, &table)?;
    println!("\nG(0) = {:.15} (exact 7/8)", g0.value.re);

    // Solving two evaluation points for the continuation constant recovers
    // the closed form 7/8 − (1 + log 2π)/(2π).
    for sigma in [2.0, 3.0] {
        let s = ComplexPoint::new(sigma, 0.0)?;
        let solved = gfun::c1()
            + (gfun::g_hybrid_default(s, &table)?.value.re - gfun::g_cont(s, &table)?.value.re);
        println!("constant solved at s={sigma}: {solved:.15} (closed {:.15})", gfun::c1());
    }

    // Both-halves sum R(s) = Σ_ρ |ρ|^{−s}: R(0) counts nothing but the
    // constant terms and lands on 7/4.
    let r0 = gfun::r_of(ComplexPoint::new(0.0, 0.0)?, &table)?;
    println!("\nR(0) = {:.15} (exact 7/4)", r0.value.re);

    // Laurent expansion around the double pole at s = 1.
    let exp = gfun::laurent_g(2, &table)?;
    println!("\nLaurent coefficients of G at s = 1:");
    for k in -2..=2 {
        println!(
            "  c_{k:+}: {:+.12e}  ± {:.1e}",
            exp.coeff(k)?,
            exp.coeff_err(k)?
        );
    }
    Ok(())
}
