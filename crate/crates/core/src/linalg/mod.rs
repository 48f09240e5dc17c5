//! Exact linear algebra over the integers and the rationals.
//!
//! The algorithms are generic over [`EuclideanRing`](crate::scalar::EuclideanRing)
//! and [`Field`](crate::scalar::Field); the concrete entry points at the
//! bottom of this module fix `BigInt` and `BigRational`.

mod abelian;
pub mod field;
mod matrix;
pub mod snf;

pub use abelian::{
    cokernel, induced_kernel, lattice_basis, unimodular_inverse, AbelianStructure,
    AbelianizationMap,
};
pub(crate) use abelian::bigint_list;
pub use field::{nullspace, rank, rref, SparseEchelon, SparseVec};
pub use matrix::Matrix;
pub use snf::{integer_kernel, smith_normal_form, solve_with_smith, Smith};

use crate::{IntMatrix, Integer, Rational};

/// Integer solution of `a · x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[Integer]) -> Option<Vec<Integer>> {
    snf::solve_integer(a, b)
}

/// Rational solution of `a · x = b`, if one exists.
pub fn solve_rational(a: &IntMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    field::solve(&to_rational(a), b)
}

pub fn to_rational(a: &IntMatrix) -> Matrix<Rational> {
    a.map(|x| Rational::from_integer(x.clone()))
}

/// Rank over Q of an integer matrix.
pub fn rational_rank(a: &IntMatrix) -> usize {
    field::rank(&to_rational(a))
}
