//! Exact-arithmetic toolkit for positive bases of full-rank lattices, the
//! gaps of the conical semigroups they span, restricted successive minima
//! and covering radii, and the lift of all of it to ideals in totally real
//! number fields measured by Weil height.

// Indexed loops over small fixed-dimension matrices read better than
// iterator chains here.
#![allow(clippy::needless_range_loop)]

pub mod enumerate;
pub mod error;
pub mod interval;
pub mod lattice;
pub mod linalg;
pub mod minima;
pub mod nf;
pub mod poly;
pub mod semigroup;
pub mod solid;

pub use error::{Error, Result};
pub use lattice::{
    generate_positive_basis, positive_basis_from_point, Cone, Lattice, PositiveBasis,
};
pub use linalg::{Rat, RationalMatrix, RationalVector};
