//! Exact computational toolkit for block designs supported by the unit circle
//! of GF(q²), q = 2^m.
//!
//! The toolkit constructs block sets over the unit circle
//! U_{q+1} = { x ∈ GF(q²) : x^{q+1} = 1 } from vanishing conditions on
//! elementary symmetric polynomials, builds the narrow-sense BCH code of
//! designed distance 4 on U_{q+1} together with its dual (trace) code, and
//! verifies design, weight-distribution, and group-invariance claims by
//! exhaustive counting in exact arithmetic.
//!
//! Modules:
//!
//! * [`field`] — GF(2^{2m}) arithmetic via log/antilog tables, the subfield
//!   GF(2^m), and the unit circle U_{q+1}.
//! * [`subsets`] — binomial coefficients, colexicographic ranking and
//!   enumeration of k-subsets.
//! * [`esp`] — elementary symmetric polynomials σ_{k,l}, shifted evaluation,
//!   and the exceptional sets attached to a quadruple on the unit circle.
//! * [`blocks`] — block-set families cut out by σ-vanishing conditions
//!   (plain, shift variants, and the "some sub-block vanishes" families).
//! * [`design`] — exhaustive t-design verification and the classical design
//!   transforms (derived indices, supplementary and complementary designs).
//! * [`code`] — the [q+1, q−5] BCH code, support enumeration by exact linear
//!   algebra, closed-form weight distributions, the MacWilliams transform,
//!   the dual trace code, and the zero-set classification of trace words.
//! * [`group`] — the setwise stabilizer of U_{q+1} in PGL(2, q²) (a copy of
//!   PGL(2, q)), its orbits on k-subsets, and invariance checks.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature only forwards to the bignum dependencies. Everything is exact:
//! field arithmetic is table-driven, counts use 64-bit or arbitrary-precision
//! integers, and no claim is accepted from a formula alone when an exhaustive
//! check is feasible.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod blocks;
pub mod code;
pub mod design;
mod error;
pub mod esp;
pub mod field;
pub mod group;
pub mod subsets;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
