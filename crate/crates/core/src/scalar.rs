// Z/2 arithmetic is xor and and
#![allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]

//! Coefficient rings.
//!
//! Everything in the linear-algebra and cohomology layers is generic over
//! [`Ring`] / [`EuclideanRing`]. The two rings the library actually computes
//! with are the integers ([`Integer`], arbitrary precision) and the field with
//! two elements ([`Gf2`]); `i64` and `i128` are also implemented so the
//! generic code can be exercised on machine integers in tests.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision integers.
pub type Integer = BigInt;

/// A commutative ring with identity.
pub trait Ring:
    Clone
    + Debug
    + Display
    + Eq
    + Hash
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// 0 for the integers, 2 for `Gf2`.
    const CHARACTERISTIC: u32;

    /// Short name used in reports ("Z", "Z2").
    const NAME: &'static str;

    fn is_unit(&self) -> bool;

    fn unit_inverse(&self) -> Option<Self>;

    /// Image of an integer under the canonical map `Z -> R`.
    fn from_integer(n: &BigInt) -> Self;

    /// Canonical integer representative (for `Gf2`: 0 or 1).
    fn to_integer(&self) -> BigInt;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(&BigInt::from(n))
    }
}

/// A Euclidean domain, which is all Smith normal form needs.
pub trait EuclideanRing: Ring {
    /// Division with remainder; the remainder is strictly smaller than `d`
    /// in the Euclidean size (or zero).
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self);

    /// Compares Euclidean sizes (absolute values for integers).
    fn size_cmp(&self, other: &Self) -> Ordering;

    /// A unit `u` such that `u * self` is the canonical associate
    /// (non-negative for integers).
    fn normalizing_unit(&self) -> Self;

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem_euclid(self).1.is_zero()
    }
}

impl Ring for BigInt {
    const CHARACTERISTIC: u32 = 0;
    const NAME: &'static str = "Z";

    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.is_unit().then(|| self.clone())
    }

    fn from_integer(n: &BigInt) -> Self {
        n.clone()
    }

    fn to_integer(&self) -> BigInt {
        self.clone()
    }
}

impl EuclideanRing for BigInt {
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        self.div_mod_floor(d)
    }

    fn size_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }

    fn normalizing_unit(&self) -> Self {
        if self.sign() == Sign::Minus {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
}

macro_rules! machine_int_ring {
    ($t:ty, $name:expr) => {
        impl Ring for $t {
            const CHARACTERISTIC: u32 = 0;
            const NAME: &'static str = $name;

            fn is_unit(&self) -> bool {
                *self == 1 || *self == -1
            }

            fn unit_inverse(&self) -> Option<Self> {
                self.is_unit().then_some(*self)
            }

            fn from_integer(n: &BigInt) -> Self {
                n.to_i128().and_then(|v| <$t>::try_from(v).ok()).expect("integer does not fit the machine ring")
            }

            fn to_integer(&self) -> BigInt {
                BigInt::from(*self)
            }
        }

        impl EuclideanRing for $t {
            fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
                self.div_mod_floor(d)
            }

            fn size_cmp(&self, other: &Self) -> Ordering {
                self.unsigned_abs().cmp(&other.unsigned_abs())
            }

            fn normalizing_unit(&self) -> Self {
                if *self < 0 {
                    -1
                } else {
                    1
                }
            }
        }
    };
}

machine_int_ring!(i64, "Z");
machine_int_ring!(i128, "Z");

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Gf2(pub bool);

impl Gf2 {
    pub const ZERO: Gf2 = Gf2(false);
    pub const ONE: Gf2 = Gf2(true);
}

impl Debug for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Add for Gf2 {
    type Output = Gf2;
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Sub for Gf2 {
    type Output = Gf2;
    fn sub(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Mul for Gf2 {
    type Output = Gf2;
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

impl Neg for Gf2 {
    type Output = Gf2;
    fn neg(self) -> Gf2 {
        self
    }
}

impl AddAssign for Gf2 {
    fn add_assign(&mut self, rhs: Gf2) {
        self.0 ^= rhs.0;
    }
}

impl SubAssign for Gf2 {
    fn sub_assign(&mut self, rhs: Gf2) {
        self.0 ^= rhs.0;
    }
}

impl MulAssign for Gf2 {
    fn mul_assign(&mut self, rhs: Gf2) {
        self.0 &= rhs.0;
    }
}

impl Zero for Gf2 {
    fn zero() -> Self {
        Gf2::ZERO
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for Gf2 {
    fn one() -> Self {
        Gf2::ONE
    }
}

impl From<bool> for Gf2 {
    fn from(b: bool) -> Self {
        Gf2(b)
    }
}

impl Ring for Gf2 {
    const CHARACTERISTIC: u32 = 2;
    const NAME: &'static str = "Z2";

    fn is_unit(&self) -> bool {
        self.0
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.0.then_some(*self)
    }

    fn from_integer(n: &BigInt) -> Self {
        Gf2(n.is_odd())
    }

    fn to_integer(&self) -> BigInt {
        BigInt::from(u8::from(self.0))
    }
}

impl EuclideanRing for Gf2 {
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        assert!(d.0, "division by zero in Gf2");
        (*self, Gf2::ZERO)
    }

    fn size_cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }

    fn normalizing_unit(&self) -> Self {
        Gf2::ONE
    }
}

/// Reduces `x` into the canonical residue range `[0, m)` for `m > 0`.
pub fn canonical_residue(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    debug_assert!(!r.is_negative());
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_arithmetic() {
        assert_eq!(Gf2::ONE + Gf2::ONE, Gf2::ZERO);
        assert_eq!(Gf2::ONE * Gf2::ONE, Gf2::ONE);
        assert_eq!(-Gf2::ONE, Gf2::ONE);
        assert_eq!(Gf2::from_i64(-3), Gf2::ONE);
        assert_eq!(Gf2::from_i64(4), Gf2::ZERO);
    }

    #[test]
    fn integer_division_has_small_remainder() {
        let a = BigInt::from(-7);
        let d = BigInt::from(3);
        let (q, r) = a.div_rem_euclid(&d);
        assert_eq!(q * &d + &r, a);
        assert_eq!(r.size_cmp(&d), Ordering::Less);
        assert_eq!(canonical_residue(&BigInt::from(-1), &BigInt::from(4)), BigInt::from(3));
    }

    #[test]
    fn units() {
        assert!(BigInt::from(-1).is_unit());
        assert!(!BigInt::from(2).is_unit());
        assert_eq!((-5i64).normalizing_unit() * -5, 5);
        assert!(!Gf2::ZERO.is_unit());
    }
}
