//! Exact and numerical verification of Ramanujan's Entry II.16.12 — the
//! continued-fraction evaluation
//! `(a^2 q^3, b^2 q^3; q^4)_inf / (a^2 q, b^2 q; q^4)_inf = 1/(1-ab) + ...`
//! for `|q| < 1`, `|ab| < 1` — together with the J-fraction `H(x)` that
//! generalizes it and the closed form `X(x) = 2 rho F(rho)/G(rho)` of the
//! scaled fraction.
//!
//! The crate is organized around one field contract with two
//! instantiations: exact big rationals for the identities that must vanish
//! exactly, and complex doubles for evaluation, limits and asymptotics.
//!
//! - [`scalar`]: the field contract, exact rationals, complex doubles, and
//!   the power-of-two scaled representation used by deep recurrences.
//! - [`qseries`]: q-Pochhammer symbols, basic hypergeometric series with
//!   rigorous truncation bounds, truncated power series, and the
//!   q-binomial/Heine transformation oracles.
//! - [`cfrac`]: the generic continued-fraction engine.
//! - [`entry12`]: everything specific to the identity — product side,
//!   fractions `C`, `K`, `H(x)`, the sums `D(s)`, the exact splitting
//!   identities, the finite-depth closed form, `H(1)`, and the parameter
//!   inversions.
//! - [`orthopoly`]: polynomial sequences, branch selection, Darboux-type
//!   ratio checks, generating functions, and `X(x)`.
//! - [`harness`]: the batch verification suites behind the `qcfrac`
//!   binary; JSON reports and CSV convergent traces.
//!
//! Runnable demonstrations live in `examples/`; the acceptance suite is
//! `tests/acceptance.rs`.

pub mod cfrac;
pub mod entry12;
pub mod error;
pub mod harness;
pub mod orthopoly;
pub mod qseries;
pub mod scalar;

pub use error::{Error, Result};
