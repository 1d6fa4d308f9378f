//! Integer scalars the linear algebra is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

/// An exact Euclidean integer ring element.
///
/// Implemented for `BigInt` (the type every domain computation uses) and
/// for the machine integers, which are only safe for small inputs: Smith
/// reduction does not check for overflow.
pub trait IntScalar:
    Integer + Signed + Clone + Debug + Display + FromStr + FromPrimitive + Hash + Send + Sync + 'static
{
    fn of_u64(v: u64) -> Self {
        <Self as FromPrimitive>::from_u64(v).expect("integer scalar cannot represent value")
    }

    fn of_i64(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("integer scalar cannot represent value")
    }
}

impl IntScalar for BigInt {}
impl IntScalar for i64 {}
impl IntScalar for i128 {}

/// Non-negative gcd of a sequence; 0 for an empty or all-zero sequence.
pub fn gcd_all<'a, T: IntScalar>(values: impl IntoIterator<Item = &'a T>) -> T {
    values
        .into_iter()
        .fold(T::zero(), |acc, v| acc.gcd(v))
}

/// Non-negative lcm of a sequence; 1 for an empty sequence.
pub fn lcm_all<'a, T: IntScalar>(values: impl IntoIterator<Item = &'a T>) -> T {
    values.into_iter().fold(T::one(), |acc, v| acc.lcm(v))
}
