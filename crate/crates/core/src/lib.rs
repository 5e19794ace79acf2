//! Minimal nilpotent orbits, restricted roots and symplectic induction,
//! made computable.
//!
//! - [`rootsys`]: finite root systems in exact integer coordinates.
//! - [`realform`]: catalog of real simple Lie algebras and the invariants
//!   derived from their restricted roots.
//! - [`matmodel`]: explicit matrix realizations with the S-triple and its
//!   Cayley transform.
//! - [`sympver`]: seeded numerical verification of the symplectic statements.

pub mod cli;
pub mod exact;
pub mod rootsys;
pub mod realform;
pub mod report;
pub mod sympver;
pub mod matmodel;
