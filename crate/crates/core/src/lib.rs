//! Exact computational core for quadratic entry locus (LQEL) varieties.
//!
//! The crate is `no_std` (it needs `alloc`). It contains three layers:
//!
//! * an exact substrate: prime-field scalars ([`field`]), dense matrices with
//!   rank and kernel ([`matrix`]), and sparse integer polynomials with
//!   symbolic derivatives ([`poly`]);
//! * geometry probes that evaluate explicit parametrizations at random points
//!   of a large prime field ([`catalog`], [`probe`], [`yx`]);
//! * the classification arithmetic: invariant formulas, the `Y_x` tower and
//!   divisibility ([`invariants`], [`tower`]), admissibility rules and
//!   enumerators ([`classify`]), and special Cremona transformations
//!   ([`cremona`]).
//!
//! Every rule that comes from the theory carries a [`citation::Citation`] so
//! that callers can explain each verdict.
#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod catalog;
pub mod citation;
pub mod classify;
pub mod cremona;
pub mod error;
pub mod field;
pub mod invariants;
pub mod matrix;
pub mod poly;
pub mod probe;
pub mod ratrecon;
pub mod tower;
pub mod yx;

pub use catalog::{Family, VarietyModel};
pub use error::{Error, Result};
pub use field::{FieldScalar, PrimeField};
pub use invariants::LqelInvariants;
pub use matrix::ExactMatrix;
pub use poly::{PolynomialMap, SparsePolynomial};
pub use probe::{GeometryReport, ProbeConfig};
