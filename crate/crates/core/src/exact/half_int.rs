use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;

/// An element of (1/2)ℤ, stored as twice its value.
///
/// Keeping the doubled value means every spin computation (triangle sums,
/// index frames, summation bounds) stays in plain integer arithmetic;
/// conversion to [`BigRational`] is explicit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    pub fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn is_nonnegative(self) -> bool {
        self.twice >= 0
    }

    pub fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(self.twice.into(), 2.into())
    }

    /// The value as a nonnegative integer, when it is one. This is the form
    /// factorial arguments take.
    pub fn as_nonneg_integer(self) -> Option<u64> {
        if self.twice >= 0 && self.twice % 2 == 0 {
            Some((self.twice / 2) as u64)
        } else {
            None
        }
    }

    /// `(-1)^h` for integer `h`.
    ///
    /// Panics on a non-integer value: callers only form phases whose exponent
    /// integrality is guaranteed (and separately asserted) by admissibility.
    pub fn phase(self) -> i64 {
        assert!(
            self.is_integer(),
            "phase exponent {} is not an integer",
            self
        );
        if (self.twice / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        iter.fold(HalfInt::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}
