//! Riemann zeta zeros and the analytic machinery built on top of them.
//!
//! The crate computes, with explicit error control:
//!
//! * ζ(s), the functional-equation factor χ(s), the Riemann–Siegel ϑ(t), and
//!   Hardy's Z(t) — [`zetacore`];
//! * certified tables of the ordinates γ₁ ≤ γ₂ ≤ … of the nontrivial zeros,
//!   with a binary cache format — [`zerofinder`];
//! * the argument function S(T), its iterated integrals, moments, and the
//!   second-moment error term E(T) — [`sfuncs`];
//! * the secondary zeta function G(s) = Σ_{γ>0} γ^{−s} by three independent
//!   routes, its Laurent data at s = 1, and the companions R(s), H(s) —
//!   [`gfun`];
//! * smoothed multiple sums Σ exp(−γ⁽¹⁾⋯γ⁽ⁿ⁾/X) and their main-term
//!   expansions — [`asymptotics`];
//! * moment integrals over zeros: ∫S^r|ζ|², zero sums of |ζ|² and of E, and
//!   shifted-zero mean squares — [`integrals`].
//!
//! Start with the examples directory: each major capability has a runnable
//! example. The `zetaord` binary exposes the same operations as subcommands.

pub mod asymptotics;
pub mod cli;
pub mod dd;
pub mod error;
pub mod gfun;
pub mod integrals;
pub mod num;
pub mod quad;
pub mod report;
pub mod sfuncs;
pub mod zerofinder;
pub mod zetacore;

pub use error::{Error, Result};
pub use num::{Cx, Real, C64};
