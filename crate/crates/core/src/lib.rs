//! Exact finite models for metaplectic covers of `GL_r` over a p-adic field.
//!
//! The crate is layered bottom-up:
//! [`finabel`] (finite abelian groups and characters), [`localclass`] (square classes
//! and the tame Hilbert symbol), [`cover`] (the torus cocycle and its finite model),
//! [`heis`] (character theory of class-2 groups, Heisenberg pairs, special pairs,
//! Lagrangian induction), [`mtp`] (product covers and the transfer), and
//! [`segments`] (segment/multisegment combinatorics). [`verify`] aggregates the
//! invariant suites into reports.

pub mod cover;
pub mod finabel;
pub mod heis;
pub mod localclass;
pub mod mtp;
pub mod report;
pub mod segments;
pub mod verify;

pub use report::Report;

/// Default bound on the number of elementary checks an exhaustive scan may perform.
pub const DEFAULT_CAP: u64 = 10_000_000;
