//! Computations with twisted group algebras `C_ψG` and twisted symplectic
//! reflection algebras `H_c(G, U, ψ)`.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact`]: rationals, cyclotomic fields and exact linear algebra.
//! * [`groups`]: finite groups as Cayley tables, classes, subgroups, quotients.
//! * [`cocycles`]: 2-cocycle tables, regularity, the shipped cocycle families.
//! * [`twisted_algebra`]: multiplication in `C_ψG`, its center, twisted
//!   character tables, central idempotents and tensor multiplicities.
//! * [`symplectic`]: symplectic actions, reflections, the defining relations,
//!   the PBW overlap check and the scalar by which `Σ c(s) s` acts.
//! * [`modcat`]: the block decomposition of `Rep(G, ψ)` over `Rep(W)`,
//!   matching blocks with `Rep(H, ζ)`, and the parameter transfer `c ↦ c′`.

pub mod cocycles;
pub mod exact;
pub mod groups;
pub mod modcat;
pub mod symplectic;
pub mod twisted_algebra;

mod error;

pub use error::{Error, Result};
