//! Exact number kernel: arbitrary-precision rationals, half-integers,
//! prime-factored factorials, and surd arithmetic.
//!
//! Everything downstream (hypergeometric evaluation, Racah coefficients, the
//! Leonard-pair matrices) is built on the types in this module, so the rules
//! are strict: values are canonical after every operation and immutable after
//! construction.

mod factored;
mod half_int;
mod surd;

use thiserror::Error;

pub use factored::{factored_factorial, FactoredRational};
pub use half_int::HalfInt;
pub use num_rational::BigRational;
pub use surd::{sqrt_to_surd, Surd, SurdSum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("cannot take the square root of a negative value")]
    NegativeSqrt,
}

/// Shorthand for an integer-valued [`BigRational`].
pub fn int_rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `(-1)^n` for a (possibly negative) integer exponent.
pub fn int_phase(n: i64) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::One;

    #[test]
    fn rationals_stay_in_lowest_terms() {
        // the backing type reduces on every operation; spot-check gcd = 1
        let a = BigRational::new(6.into(), 8.into());
        assert_eq!(a.to_string(), "3/4");
        let b = &a * &a + &a / BigRational::new(9.into(), 2.into()) - &a;
        assert!(b.numer().gcd(b.denom()).is_one());
        assert!(b.denom() > &0.into());
        let z = &b - &b;
        assert_eq!((z.numer().to_string(), z.denom().to_string()), ("0".into(), "1".into()));
    }

    #[test]
    fn phases_of_negative_exponents() {
        assert_eq!(int_phase(-3), -1);
        assert_eq!(int_phase(-4), 1);
        assert_eq!(int_phase(0), 1);
        assert_eq!(int_phase(7), -1);
    }
}
