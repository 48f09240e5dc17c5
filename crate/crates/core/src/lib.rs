//! Obstructions to a finitely presented group (or a homomorphism between
//! such groups) arising as the fundamental group of a compact Kähler
//! manifold: Betti number parity, quadratic presentation of the Malcev Lie
//! algebra, strictness of induced Malcev maps, and torsion of central
//! extension classes.
//!
//! The linear algebra in [`linalg`] is generic over the scalar type; the
//! group-theoretic layers fix exact integers and rationals, named here.

pub mod extensions;
pub mod homology;
pub mod lieranks;
pub mod linalg;
pub mod presentation;
pub mod report;
pub mod scalar;
pub mod surface;

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;
pub type IntMatrix = linalg::Matrix<Integer>;
pub type QMatrix = linalg::Matrix<Rational>;

pub use presentation::{GroupHom, Presentation, Word};
