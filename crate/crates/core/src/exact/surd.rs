use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{ExactError, FactoredRational};

/// An exact value `coeff · √radicand` with `radicand` squarefree and ≥ 1.
///
/// Radicands are always produced from factored exponents
/// (see [`sqrt_to_surd`]); no opaque integer is ever factored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    coeff: BigRational,
    radicand: BigUint,
}

impl Surd {
    pub fn zero() -> Self {
        Surd { coeff: BigRational::zero(), radicand: BigUint::one() }
    }

    pub fn rational(q: BigRational) -> Self {
        Surd { coeff: q, radicand: BigUint::one() }
    }

    /// The caller must supply a squarefree radicand.
    pub fn new(coeff: BigRational, radicand: BigUint) -> Self {
        assert!(!radicand.is_zero(), "radicand must be positive");
        debug_assert!(no_small_square_divisor(&radicand));
        if coeff.is_zero() {
            Surd::zero()
        } else {
            Surd { coeff, radicand }
        }
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    pub fn negate(&self) -> Surd {
        Surd { coeff: -self.coeff.clone(), radicand: self.radicand.clone() }
    }

    pub fn scale(&self, q: &BigRational) -> Surd {
        Surd::new(&self.coeff * q, self.radicand.clone())
    }

    /// `√m · √n = g · √((m/g)(n/g))` with `g = gcd(m, n)`; both quotients are
    /// coprime and squarefree, so the product radicand is squarefree without
    /// any factoring.
    pub fn mul(&self, rhs: &Surd) -> Surd {
        if self.is_zero() || rhs.is_zero() {
            return Surd::zero();
        }
        let g = self.radicand.gcd(&rhs.radicand);
        let t = (&self.radicand / &g) * (&rhs.radicand / &g);
        let coeff = &self.coeff * &rhs.coeff * BigRational::from_integer(g.into());
        Surd::new(coeff, t)
    }

    /// Exact square, always rational.
    pub fn square(&self) -> BigRational {
        &self.coeff * &self.coeff * BigRational::from_integer(self.radicand.clone().into())
    }

    /// Display-only approximation; never used in comparisons.
    pub fn to_f64(&self) -> f64 {
        let c = self.coeff.to_f64().unwrap_or(f64::NAN);
        let r = self.radicand.to_f64().unwrap_or(f64::NAN);
        c * r.sqrt()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

/// A finite sum Σ qᵢ·√mᵢ over distinct squarefree radicands, kept canonical:
/// no zero coefficients, so the zero value is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurdSum {
    terms: BTreeMap<BigUint, BigRational>,
}

impl SurdSum {
    pub fn zero() -> Self {
        SurdSum::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_surd(&mut self, s: &Surd) {
        if s.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(s.radicand().clone())
            .or_insert_with(BigRational::zero);
        *entry += s.coeff();
        if entry.is_zero() {
            self.terms.remove(s.radicand());
        }
    }

    pub fn add(&self, rhs: &SurdSum) -> SurdSum {
        let mut out = self.clone();
        for (r, c) in rhs.terms() {
            out.add_surd(&Surd::new(c.clone(), r.clone()));
        }
        out
    }

    pub fn negate(&self) -> SurdSum {
        SurdSum {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, rhs: &SurdSum) -> SurdSum {
        self.add(&rhs.negate())
    }

    pub fn scale(&self, q: &BigRational) -> SurdSum {
        if q.is_zero() {
            return SurdSum::zero();
        }
        SurdSum {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), c * q)).collect(),
        }
    }

    /// Pairwise surd products, recombined canonically.
    pub fn mul(&self, rhs: &SurdSum) -> SurdSum {
        let mut out = SurdSum::zero();
        for (ra, ca) in self.terms() {
            let a = Surd::new(ca.clone(), ra.clone());
            for (rb, cb) in rhs.terms() {
                out.add_surd(&a.mul(&Surd::new(cb.clone(), rb.clone())));
            }
        }
        out
    }

    /// Display-only approximation.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, c)| {
                c.to_f64().unwrap_or(f64::NAN) * r.to_f64().unwrap_or(f64::NAN).sqrt()
            })
            .sum()
    }
}

impl From<Surd> for SurdSum {
    fn from(s: Surd) -> SurdSum {
        let mut sum = SurdSum::zero();
        sum.add_surd(&s);
        sum
    }
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (r, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if r.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*sqrt({r})")?;
            }
        }
        Ok(())
    }
}

/// Exact square root of a nonnegative factored rational: even prime exponents
/// are halved into the coefficient, each odd exponent contributes one factor
/// to the squarefree radicand.
pub fn sqrt_to_surd(x: &FactoredRational) -> Result<Surd, ExactError> {
    if x.sign() < 0 {
        return Err(ExactError::NegativeSqrt);
    }
    if x.is_zero() {
        return Ok(Surd::zero());
    }
    let mut coeff = FactoredRational::one();
    let mut radicand = BigUint::one();
    for (&p, &e) in x.exponents() {
        let half = e.div_euclid(2);
        if e.rem_euclid(2) == 1 {
            radicand *= BigUint::from(p);
        }
        if half != 0 {
            let mut part = std::collections::BTreeMap::new();
            part.insert(p, half);
            coeff *= &FactoredRational::from_parts(1, part);
        }
    }
    Ok(Surd::new(coeff.to_rational(), radicand))
}

fn no_small_square_divisor(r: &BigUint) -> bool {
    // Cheap sanity net for hand-built radicands in tests.
    (2u64..100).all(|d| !(r % (d * d)).is_zero())
}

#[cfg(test)]
mod tests {
    use super::super::{factored_factorial, int_rat};
    use super::*;

    /// n as a factored rational, via n!/(n-1)!, so no test factors an opaque
    /// integer.
    fn fact_int(n: u64) -> FactoredRational {
        factored_factorial(n) / factored_factorial(n - 1)
    }

    #[test]
    fn sqrt_examples() {
        // 1 -> coeff 1, radicand 1
        let one = FactoredRational::one();
        let s = sqrt_to_surd(&one).unwrap();
        assert_eq!(s.coeff(), &int_rat(1));
        assert!(s.is_rational());

        // 4/9 -> coeff 2/3, radicand 1
        let four_ninths = fact_int(4) / fact_int(9);
        let s = sqrt_to_surd(&four_ninths).unwrap();
        assert_eq!(s.coeff(), &BigRational::new(2.into(), 3.into()));
        assert!(s.is_rational());

        // 1/6 -> coeff 1/6, radicand 6
        let sixth = FactoredRational::one() / fact_int(6);
        let s = sqrt_to_surd(&sixth).unwrap();
        assert_eq!(s.coeff(), &BigRational::new(1.into(), 6.into()));
        assert_eq!(s.radicand(), &BigUint::from(6u32));
    }

    #[test]
    fn sqrt_of_negative_is_domain_error() {
        let neg = fact_int(3).negate();
        assert_eq!(sqrt_to_surd(&neg), Err(ExactError::NegativeSqrt));
    }

    #[test]
    fn surd_mul_recombines() {
        // sqrt(2) * sqrt(8): 8 enters as 2^3 via sqrt_to_surd
        let two = fact_int(2);
        let eight = fact_int(2) * fact_int(2) * fact_int(2);
        let r2 = sqrt_to_surd(&two).unwrap();
        let r8 = sqrt_to_surd(&eight).unwrap();
        let prod = r2.mul(&r8);
        assert!(prod.is_rational());
        assert_eq!(prod.coeff(), &int_rat(4));
    }

    #[test]
    fn sum_cancels_to_empty_map() {
        let r2 = sqrt_to_surd(&fact_int(2)).unwrap();
        let mut sum = SurdSum::zero();
        sum.add_surd(&r2);
        sum.add_surd(&r2);
        assert_eq!(sum.to_string(), "2*sqrt(2)");
        sum.add_surd(&r2.negate());
        sum.add_surd(&r2.negate());
        assert!(sum.is_zero());
    }

    #[test]
    fn square_is_rational() {
        let sixth = FactoredRational::one() / fact_int(6);
        let s = sqrt_to_surd(&sixth).unwrap();
        assert_eq!(s.square(), BigRational::new(1.into(), 6.into()));
    }

    mod properties {
        use super::super::super::FactoredRational;
        use super::*;
        use proptest::prelude::*;
        use std::collections::BTreeMap;

        const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

        fn factored(exps: [i64; 6]) -> FactoredRational {
            let map: BTreeMap<u64, i64> = PRIMES.into_iter().zip(exps).collect();
            FactoredRational::from_parts(1, map)
        }

        fn surd_from(exps: [i64; 6], numer: i64) -> Surd {
            sqrt_to_surd(&factored(exps))
                .unwrap()
                .scale(&BigRational::from_integer(numer.into()))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(96))]

            // sqrt squared reproduces the input exactly
            #[test]
            fn sqrt_roundtrip(exps in proptest::array::uniform6(-6i64..=6)) {
                let x = factored(exps);
                let root = sqrt_to_surd(&x).unwrap();
                prop_assert_eq!(root.square(), x.to_rational());
                let self_product = root.mul(&root);
                prop_assert!(self_product.is_rational());
                prop_assert_eq!(self_product.coeff(), &x.to_rational());
            }

            // addition of surd sums is associative and commutative in
            // canonical form
            #[test]
            fn sum_associative_commutative(
                e1 in proptest::array::uniform6(-3i64..=3),
                e2 in proptest::array::uniform6(-3i64..=3),
                e3 in proptest::array::uniform6(-3i64..=3),
                c1 in -9i64..=9,
                c2 in -9i64..=9,
                c3 in -9i64..=9,
            ) {
                let a = SurdSum::from(surd_from(e1, c1));
                let b = SurdSum::from(surd_from(e2, c2));
                let c = SurdSum::from(surd_from(e3, c3));
                prop_assert_eq!(a.add(&b), b.add(&a));
                prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                let abc = a.add(&b).add(&c);
                prop_assert_eq!(abc.sub(&b).sub(&c), a);
            }
        }
    }
}
