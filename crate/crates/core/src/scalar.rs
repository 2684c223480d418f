//! Integer scalar abstraction.
//!
//! All geometry in this crate is exact: integer data with rational
//! derived quantities. The algorithms are generic over the integer
//! type so that small examples can run on machine integers while the
//! default aliases use arbitrary precision.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{NumAssign, Signed};

/// An exact integer scalar. Implemented by `i64`, `i128` and
/// `num_bigint::BigInt`; rational values are `Ratio<S>` over the same
/// scalar.
pub trait Scalar:
    Integer + Signed + NumAssign + Clone + Hash + Ord + Debug + Display + From<i64> + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + NumAssign
        + Clone
        + Hash
        + Ord
        + Debug
        + Display
        + From<i64>
        + Send
        + Sync
        + 'static
{
}

/// Default arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Exact rational over a generic integer scalar.
pub type Ratio<S> = num_rational::Ratio<S>;

/// Default arbitrary-precision rational.
pub type Rat = Ratio<Int>;
