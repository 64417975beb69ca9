//! Exact machinery for spread-out lattice trees and lattice animals.
//!
//! The crate is organised around four concerns:
//!
//! * [`kernel`] — the spread-out step distribution `D` on `Z^d`, its exact
//!   return-probability convolutions `D^{*n}(o)`, tail sums `S_{>=t}(o)` and
//!   the characteristic function `D̂(k)`;
//! * [`continuum`] — the uniform kernel on the unit sup-norm ball, its
//!   self-convolutions at the origin, and the random-walk constants that
//!   govern the large-`L` expansion of the critical fugacity;
//! * [`census`] — exhaustive, exactly-once enumeration of lattice trees and
//!   lattice animals containing required vertices, and the truncated
//!   generating functions built from the counts;
//! * [`critical`] — the `p·g(p) = 1` fixed point, leading-order evaluators,
//!   the one-point-function decomposition, and series estimators for the
//!   critical fugacity.
//!
//! All quantities that feed constants are kept in exact rational arithmetic;
//! floating point only enters where an irrational factor (powers of `e`) or a
//! root solve makes it unavoidable. The crate is `no_std`-compatible (with
//! `alloc`); float special functions come from `libm` so results are
//! bit-identical with and without the `std` feature.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod census;
pub mod continuum;
pub mod critical;
mod error;
pub mod kernel;
pub mod numeric;
pub mod series;

pub use error::{Error, Result};
pub use numeric::Rational;

/// Which polymer family a computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PolymerModel {
    /// Lattice trees: connected, loop-free edge sets.
    Trees,
    /// Lattice animals: arbitrary connected edge sets.
    Animals,
}

impl core::fmt::Display for PolymerModel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PolymerModel::Trees => f.write_str("trees"),
            PolymerModel::Animals => f.write_str("animals"),
        }
    }
}
