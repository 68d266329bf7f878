//! Certified bounds for relative Lusternik–Schnirelmann-type invariants of
//! simplicial maps.
//!
//! The crate has two halves that meet in the middle:
//!
//! * **Exact cohomology.**  [`simplicial`] models finite complexes, pairs and
//!   simplicial maps; [`cohomology`] builds their (relative) cochain
//!   complexes and cup-product rings over `Q` or `F_p`; [`kunneth`] forms
//!   tensor powers `H^*(X)^{⊗n}` with Koszul signs together with the diagonal
//!   and map-power pullbacks.
//! * **Inequality bookkeeping.**  [`bounds`] searches those rings for
//!   nilpotency witnesses (nilpotency of an image, zero-divisor cup length,
//!   nilpotency of the kernel of `g_n^* = Δ_n^* ∘ (f^n)^*`) and [`propagation`]
//!   narrows intervals for `cat`, `relcat`, `qscat`, `srelcat`, `TC_n` and
//!   `wTC_n` slots to a fixpoint, recording a replayable derivation
//!   certificate for every narrowing.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals or
//! residues mod a prime, and every reported bound carries either a witness
//! (a non-vanishing product of explicit cocycle classes) or a derivation tree
//! whose arithmetic can be re-checked mechanically.

pub mod bounds;
pub mod cohomology;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod kunneth;
pub mod matrix;
pub mod propagation;
pub mod simplicial;

pub use error::Error;
pub use field::{CoefficientField, Scalar};
