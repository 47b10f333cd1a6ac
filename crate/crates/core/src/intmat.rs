//! Cleared-denominator integer matrices for fast exact equality of matrix
//! products.
//!
//! Rational matrix products spend most of their time in gcd reduction. For a
//! pure equality check the reductions are wasted work: scale every matrix by
//! one common denominator, multiply integer matrices, and compare. Two
//! products of same-scale matrices share the same scale, so equality of the
//! integer results is equality of the rational ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::leonard::RationalMatrix;

pub(crate) struct IntMat {
    n: usize,
    num: Vec<BigInt>,
}

/// lcm of every entry denominator across the given matrices.
pub(crate) fn common_denominator(ms: &[&RationalMatrix]) -> BigInt {
    let mut l = BigInt::from(1);
    for m in ms {
        for i in 0..m.order() {
            for j in 0..m.order() {
                l = l.lcm(m[(i, j)].denom());
            }
        }
    }
    l
}

/// `m · den` as an integer matrix; `den` must clear every denominator.
pub(crate) fn scaled(m: &RationalMatrix, den: &BigInt) -> IntMat {
    let n = m.order();
    let mut num = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let e = &m[(i, j)];
            num.push(e.numer() * (den / e.denom()));
        }
    }
    IntMat { n, num }
}

impl IntMat {
    pub(crate) fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.num[i * self.n + j]
    }

    pub(crate) fn mul(&self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut num = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for t in 0..n {
                let left = self.at(i, t);
                if left.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let right = rhs.at(t, j);
                    if right.is_zero() {
                        continue;
                    }
                    num[i * n + j] += left * right;
                }
            }
        }
        IntMat { n, num }
    }

    pub(crate) fn scale(&self, s: &BigInt) -> IntMat {
        IntMat { n: self.n, num: self.num.iter().map(|e| e * s).collect() }
    }

    pub(crate) fn first_diff(&self, rhs: &IntMat) -> Option<(usize, usize)> {
        assert_eq!(self.n, rhs.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.at(i, j) != rhs.at(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leonard::RacahSystem;

    #[test]
    fn scaled_products_match_rational_products() {
        let sys = RacahSystem::new(6).unwrap();
        let p = sys.matrix_p();
        let a = sys.matrix_a();
        let den = common_denominator(&[&p, &a]);
        let pi = scaled(&p, &den);
        let ai = scaled(&a, &den);
        let prod_int = pi.mul(&ai);
        let prod_rat = p.mul(&a);
        let den_sq = &den * &den;
        for i in 0..=6 {
            for j in 0..=6 {
                let expected = &prod_rat[(i, j)] * crate::exact::BigRational::from_integer(den_sq.clone());
                assert!(expected.is_integer());
                assert_eq!(&expected.to_integer(), prod_int.at(i, j));
            }
        }
    }
}
