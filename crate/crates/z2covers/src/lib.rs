//! Exact combinatorics of `(Z/2)^s`-covers of weighted projective
//! threefolds.
//!
//! A cover is described by the weights of its base `P(a0, a1, a2, a3)` and
//! a branch-degree function `d` on the group `G = (Z/2)^s`.  From that datum
//! this crate computes
//!
//! * the Walsh spectrum of `d` and the eigensheaf degrees `l(χ)`
//!   ([`walsh`], [`cover`]);
//! * section counts and Euler characteristics on the base ([`wps`]);
//! * the invariants `K³`, `χ(O_X)`, `e(X)` and the Chern-ratio geography
//!   functionals ([`invariants`]);
//! * the classification of flat pluricanonical covers ([`classify`]);
//! * numeric deformation criteria and example families ([`moduli`]).
//!
//! All arithmetic that feeds a decision is exact: machine integers with
//! widening where a bound is known, big integers and big rationals
//! elsewhere.  The crate is `no_std` and needs only `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod classify;
pub mod cover;
pub mod gf2;
pub mod invariants;
pub mod moduli;
pub mod walsh;
pub mod wps;

/// Exact rational numbers used for every non-integral quantity.
pub type Rational = num_rational::BigRational;

pub use num_bigint::BigInt;

pub use classify::{AdmissibleSolution, PluricanonicalReport};
pub use cover::{BranchData, CoverSpec, EigensheafDegrees};
pub use gf2::{Character, GroupElement, GroupFunction, Rank};
pub use invariants::{GeographyPoint, InvariantReport, RatioVector};
pub use walsh::Spectrum;
pub use wps::Weights;
