//! Exact arithmetic for triple-point defectiveness of linear systems on
//! rational surfaces.
//!
//! The crate is `no_std` (it needs `alloc`) and covers four areas:
//!
//! - [`lattice`]: Picard lattices of the plane, Hirzebruch surfaces and
//!   blowups of the plane, with intersection products, canonical classes
//!   and adjunction.
//! - [`sections`]: monomial section bases, fat-point interpolation matrices
//!   and Monte-Carlo modular rank for `dim |L - m1 p1 - ... - mn pn|`.
//! - [`localalg`]: truncated bivariate local algebra (jets, equimultiplicity
//!   ideals, standard bases for local degree orderings, colengths,
//!   Hilbert-Samuel functions).
//! - [`caseanalysis`]: Bogomolov instability, Hodge-index feasibility and
//!   the enumeration of numerical cases for destabilizing divisors.
//!
//! Everything is exact: integers are arbitrary precision, rationals are
//! `BigRational`, and ranks are computed either over `Q` or over prime
//! fields.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;
pub mod caseanalysis;
pub mod lattice;
pub mod linalg;
pub mod localalg;
pub mod modp;
pub mod sections;

pub use error::{Error, Result};
