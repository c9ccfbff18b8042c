//! Exact computation in the Stein group F_{2,3} — the group of
//! orientation-preserving piecewise-linear homeomorphisms of [0, 1] whose
//! breakpoints lie in Z[1/6] and whose slopes are products of powers of 2
//! and 3 — together with its character theory and the finiteness
//! classification of its normal subgroups.
//!
//! Everything is decided exactly: rationals are arbitrary-precision, slope
//! and breakpoint membership reduce to integer linear algebra, and signs of
//! log-linear values r + u·ln2 + v·ln3 come from integer power comparisons
//! or rational interval refinement. There is no floating point anywhere in
//! the computation paths.
//!
//! Module map:
//! - [`exactnum`]: rationals, prime-exponent vectors, integer lattices, and
//!   sign-exact log-linear arithmetic;
//! - [`plmap`]: canonical piecewise-linear homeomorphisms and their algebra;
//! - [`stein`]: the groups F_S[lo, hi], membership, abelianization, and
//!   characters;
//! - [`builders`]: constructive witnesses — special elements, transport
//!   conjugators, stable letters, connecting maps;
//! - [`classify`]: character classification into BNSR tiers and finiteness
//!   reports for normal subgroups;
//! - [`verify`]: deterministic certificate suites over the builders, with a
//!   data-parallel driver (the `parallel` feature, on by default).

pub mod builders;
pub mod classify;
pub mod error;
pub mod exactnum;
pub(crate) mod exec;
pub mod plmap;
pub mod stein;
pub mod verify;

pub use classify::{FinitenessReport, HnnCertificate, LatticeSubgroup, SigmaTier};
pub use error::Error;
pub use exactnum::{LogCoord, Rational};
pub use plmap::{IntervalSet, PLMap};
pub use stein::{AbVector, Character, GroupSpec};
