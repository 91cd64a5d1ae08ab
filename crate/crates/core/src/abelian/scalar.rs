use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Ring element used by the elimination kernels.
///
/// Every operation is checked: a `None` means the fixed-width representation
/// overflowed and the caller must restart with [`BigInt`].
pub(crate) trait Scalar: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Floor division.
    fn div_floor(&self, other: &Self) -> Option<Self>;
    fn is_multiple_of(&self, other: &Self) -> bool;

    /// `self - q * other`
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        self.sub(&q.mul(other)?)
    }
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_floor(&self, other: &Self) -> Option<Self> {
        if *self == i128::MIN && *other == -1 {
            return None;
        }
        Some(Integer::div_floor(self, other))
    }
    fn is_multiple_of(&self, other: &Self) -> bool {
        if *other == 0 {
            *self == 0
        } else {
            self.checked_rem(*other).is_none_or(|r| r == 0)
        }
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude() == &num_bigint::BigUint::from(1u8)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_floor(&self, other: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, other))
    }
    fn is_multiple_of(&self, other: &Self) -> bool {
        if Zero::is_zero(other) {
            Zero::is_zero(self)
        } else {
            Zero::is_zero(&(self % other))
        }
    }
}
