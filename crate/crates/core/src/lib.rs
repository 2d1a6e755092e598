//! Regular upper-triangular subalgebras of `sl(n, C)` spanned by standard
//! basis elements `E_ij` (i < j) and traceless diagonal vectors.
//!
//! Everything here is exact: brackets carry integer structure constants,
//! ranks are computed over the rationals, and conjugacy is certified either
//! by an explicit permutation witness or by a named invariant that differs.
//!
//! Indices in the public API are 1-based, as in `E_ij` and `H_k`.

#![no_std]
#![warn(rust_2018_idioms, unused_qualifications)]

extern crate alloc;

pub mod algebra;
pub mod basis;
pub mod conjugacy;
pub mod descriptor;
pub mod enumerate;
mod error;
pub mod invariants;
pub mod linalg;
pub mod perm;
pub mod star;
pub mod starcalc;

pub use algebra::RegularSubalgebra;
pub use basis::{bracket, BasisElement, BracketResult};
pub use conjugacy::{ClassPartition, ConjugacyVerdict};
pub use enumerate::{DrcKind, FamilyLabel, Labeled};
pub use error::{Error, Result};
pub use invariants::{CartanRecord, Invariant, InvariantSignature};
pub use perm::Permutation;
pub use star::{StarMatrix, SupportVector};

/// Largest matrix size representable by the bitset star matrices.
pub const MAX_N: usize = 64;
