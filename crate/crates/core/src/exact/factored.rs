use std::collections::BTreeMap;
use std::ops::{Div, DivAssign, Mul, MulAssign};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

/// A rational number kept as a sign and a prime-exponent map.
///
/// Factorials and their ratios stay in this form until a final conversion,
/// which makes square-root extraction exact: even exponents move into the
/// rational coefficient, odd exponents into the squarefree radicand.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactoredRational {
    sign: i8,
    factors: BTreeMap<u64, i64>,
}

impl FactoredRational {
    pub fn one() -> Self {
        FactoredRational { sign: 1, factors: BTreeMap::new() }
    }

    pub fn zero() -> Self {
        FactoredRational { sign: 0, factors: BTreeMap::new() }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Prime-to-exponent map; no zero exponents, all keys prime.
    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    /// Build from a sign and explicit exponents. Zero exponents are dropped;
    /// keys must be prime (debug-checked; production callers construct via
    /// [`factored_factorial`]).
    pub fn from_parts(sign: i8, factors: BTreeMap<u64, i64>) -> Self {
        assert!((-1..=1).contains(&sign));
        if sign == 0 {
            return Self::zero();
        }
        let factors: BTreeMap<u64, i64> =
            factors.into_iter().filter(|&(_, e)| e != 0).collect();
        debug_assert!(factors.keys().all(|&p| is_prime_small(p)));
        FactoredRational { sign, factors }
    }

    pub fn negate(&self) -> Self {
        FactoredRational { sign: -self.sign, factors: self.factors.clone() }
    }

    pub fn recip(&self) -> Self {
        assert!(self.sign != 0, "reciprocal of zero");
        FactoredRational {
            sign: self.sign,
            factors: self.factors.iter().map(|(&p, &e)| (p, -e)).collect(),
        }
    }

    /// Exact conversion to a reduced big rational.
    pub fn to_rational(&self) -> BigRational {
        if self.sign == 0 {
            return BigRational::from_integer(0.into());
        }
        let mut numer = BigUint::from(1u32);
        let mut denom = BigUint::from(1u32);
        for (&p, &e) in &self.factors {
            let pw = BigUint::from(p).pow(e.unsigned_abs() as u32);
            if e > 0 {
                numer *= pw;
            } else {
                denom *= pw;
            }
        }
        let mut n = BigInt::from(numer);
        if self.sign < 0 {
            n = -n;
        }
        BigRational::new(n, BigInt::from(denom))
    }
}

impl MulAssign<&FactoredRational> for FactoredRational {
    fn mul_assign(&mut self, rhs: &FactoredRational) {
        if self.sign == 0 || rhs.sign == 0 {
            *self = FactoredRational::zero();
            return;
        }
        self.sign *= rhs.sign;
        for (&p, &e) in &rhs.factors {
            let entry = self.factors.entry(p).or_insert(0);
            *entry += e;
            if *entry == 0 {
                self.factors.remove(&p);
            }
        }
    }
}

impl DivAssign<&FactoredRational> for FactoredRational {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn div_assign(&mut self, rhs: &FactoredRational) {
        *self *= &rhs.recip();
    }
}

impl Mul for FactoredRational {
    type Output = FactoredRational;
    fn mul(mut self, rhs: FactoredRational) -> FactoredRational {
        self *= &rhs;
        self
    }
}

impl Div for FactoredRational {
    type Output = FactoredRational;
    fn div(mut self, rhs: FactoredRational) -> FactoredRational {
        self /= &rhs;
        self
    }
}

/// `n!` in factored form, exponent of `p` via Legendre's formula
/// Σ_{k≥1} ⌊n/p^k⌋.
pub fn factored_factorial(n: u64) -> FactoredRational {
    let mut factors = BTreeMap::new();
    for p in primes_up_to(n) {
        let mut exp = 0i64;
        let mut pk = p;
        loop {
            exp += (n / pk) as i64;
            match pk.checked_mul(p) {
                Some(next) if next <= n => pk = next,
                _ => break,
            }
        }
        if exp != 0 {
            factors.insert(p, exp);
        }
    }
    FactoredRational { sign: 1, factors }
}

/// Eratosthenes sieve. Callers pass factorial arguments, which are small
/// (bounded by the total spin weight), so a fresh sieve per call is fine and
/// keeps the kernel free of global state.
fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

fn is_prime_small(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn factorial_zero_is_empty_product() {
        let f = factored_factorial(0);
        assert!(f.exponents().is_empty());
        assert!(f.to_rational().is_one());
    }

    #[test]
    fn factorial_four() {
        let f = factored_factorial(4);
        let want: BTreeMap<u64, i64> = [(2, 3), (3, 1)].into_iter().collect();
        assert_eq!(f.exponents(), &want);
    }

    #[test]
    fn factorial_ten_legendre_exponents() {
        let f = factored_factorial(10);
        let want: BTreeMap<u64, i64> =
            [(2, 8), (3, 4), (5, 2), (7, 1)].into_iter().collect();
        assert_eq!(f.exponents(), &want);
    }

    #[test]
    fn factorials_match_direct_multiplication_up_to_30() {
        let mut direct = BigRational::from_integer(1.into());
        for n in 1..=30u64 {
            direct *= BigRational::from_integer(i64::try_from(n).unwrap().into());
            assert_eq!(factored_factorial(n).to_rational(), direct, "n = {n}");
        }
    }

    #[test]
    fn mul_div_cancel() {
        let a = factored_factorial(12);
        let b = factored_factorial(7);
        let q = a.clone() / b.clone();
        assert_eq!(q.to_rational(), a.to_rational() / b.to_rational());
        let back = q * b;
        assert_eq!(back, factored_factorial(12));
    }

    #[test]
    fn zero_absorbs() {
        let z = FactoredRational::zero() * factored_factorial(5);
        assert!(z.is_zero());
        assert!(z.exponents().is_empty());
    }
}
