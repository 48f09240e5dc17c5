//! Scalar traits shared by the exact linear algebra.
//!
//! Everything numeric in the crate is generic over one of two bounds:
//! [`EuclideanRing`] for integer work (Smith normal form, lattice solving)
//! and [`Field`] for elimination over a field. The crate root fixes the
//! concrete choices (`BigInt`, `BigRational`).

use std::fmt::Debug;
use std::ops::Neg;

use num_integer::Integer;
use num_traits::{Num, Signed};

/// A field with exact equality. `BigRational` and `Ratio<i64>` qualify;
/// `f64` does too, though zero tests are then only as good as the data.
pub trait Field: Num + Clone + Neg<Output = Self> + Debug {}

impl<T> Field for T where T: Num + Clone + Neg<Output = T> + Debug {}

/// Signed integers with floor division, as needed by Smith normal form.
pub trait EuclideanRing: Integer + Signed + Clone + Debug {}

impl<T> EuclideanRing for T where T: Integer + Signed + Clone + Debug {}
