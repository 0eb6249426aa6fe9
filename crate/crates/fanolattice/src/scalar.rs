//! The integer scalar abstraction the rest of the crate is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::Signed;

/// An exact integer scalar.
///
/// `num_bigint::BigInt` is the default instantiation (see the crate-root
/// aliases); `i64`/`i128` satisfy the same bounds and back internal hot paths
/// where value growth is bounded and overflow checks are compiled in. Floating
/// point types do not qualify: every bound here is exact.
pub trait Scalar:
    Integer + Signed + Clone + Eq + Ord + Hash + Debug + Display + From<i32> + Send + Sync + 'static
{
    fn to_bigint(&self) -> num_bigint::BigInt;

    /// Exact conversion from a small machine integer.
    fn from_i64(v: i64) -> Self;

    /// Exact conversion from an arbitrary-precision integer; `None` when the
    /// value does not fit this scalar type.
    fn from_bigint(v: &num_bigint::BigInt) -> Option<Self>;
}

impl Scalar for num_bigint::BigInt {
    fn to_bigint(&self) -> num_bigint::BigInt {
        self.clone()
    }

    fn from_i64(v: i64) -> Self {
        v.into()
    }

    fn from_bigint(v: &num_bigint::BigInt) -> Option<Self> {
        Some(v.clone())
    }
}

impl Scalar for i64 {
    fn to_bigint(&self) -> num_bigint::BigInt {
        (*self).into()
    }

    fn from_i64(v: i64) -> Self {
        v
    }

    fn from_bigint(v: &num_bigint::BigInt) -> Option<Self> {
        i64::try_from(v).ok()
    }
}

impl Scalar for i128 {
    fn to_bigint(&self) -> num_bigint::BigInt {
        (*self).into()
    }

    fn from_i64(v: i64) -> Self {
        v.into()
    }

    fn from_bigint(v: &num_bigint::BigInt) -> Option<Self> {
        i128::try_from(v).ok()
    }
}
