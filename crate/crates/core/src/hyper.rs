//! Terminating generalized hypergeometric series at unit argument, and the
//! Whipple transformation with exact coefficient tracking.
//!
//! Only the terminating regime is supported: some upper parameter must be a
//! nonpositive integer, and lower-parameter Pochhammers may not vanish within
//! the termination range. A negative-integer lower parameter is legal as long
//! as termination happens first; that is exactly the regime the Racah
//! coefficient and the Kresch-Tamvakis series live in.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::exact::int_rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperError {
    #[error("no upper parameter is a nonpositive integer: the series does not terminate")]
    NonTerminating,
    #[error("lower parameter {0} has a vanishing Pochhammer within the termination range")]
    DivergentLowerParam(String),
    #[error("balance condition q + a1 + a2 + 1 = r + b1 + b2 + p does not hold")]
    BalanceViolation,
    #[error("zero denominator in the Whipple coefficient")]
    ZeroDenominator,
    #[error("invalid role assignment: {0}")]
    InvalidRoles(String),
}

/// Parameter tuple of a terminating ₄F₃ evaluated at z = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypParams {
    pub upper: [BigRational; 4],
    pub lower: [BigRational; 3],
}

impl HypParams {
    pub fn new(upper: [BigRational; 4], lower: [BigRational; 3]) -> Self {
        HypParams { upper, lower }
    }

    pub fn from_i64(upper: [i64; 4], lower: [i64; 3]) -> Self {
        HypParams {
            upper: upper.map(int_rat),
            lower: lower.map(int_rat),
        }
    }
}

/// `(a)_n = a(a+1)...(a+n-1)`; the empty product is 1.
pub fn pochhammer(a: &BigRational, n: u64) -> BigRational {
    let mut prod = BigRational::one();
    let mut factor = a.clone();
    for _ in 0..n {
        prod *= &factor;
        factor += BigRational::one();
    }
    prod
}

/// `-a` when `a` is a nonpositive integer.
fn as_nonpositive_int(a: &BigRational) -> Option<u64> {
    if a.is_integer() && !a.is_positive() {
        (-a).to_integer().to_u64()
    } else {
        None
    }
}

/// Index of the last potentially nonzero term: `N = min{-a}` over the
/// nonpositive-integer upper parameters.
pub fn termination_index(p: &HypParams) -> Result<u64, HyperError> {
    p.upper
        .iter()
        .filter_map(as_nonpositive_int)
        .min()
        .ok_or(HyperError::NonTerminating)
}

/// Exact value of the terminating ₄F₃ at unit argument.
///
/// The running term is updated by the ratio
/// `term_{n+1} = term_n · Π(aᵢ+n) / (Π(bⱼ+n) · (n+1))`, which keeps
/// intermediate sizes linear in `n`.
pub fn eval_4f3_unit(p: &HypParams) -> Result<BigRational, HyperError> {
    let n_max = termination_index(p)?;
    for b in &p.lower {
        if let Some(m) = as_nonpositive_int(b) {
            if m < n_max {
                return Err(HyperError::DivergentLowerParam(b.to_string()));
            }
        }
    }
    let mut sum = BigRational::one();
    let mut term = BigRational::one();
    for n in 0..n_max {
        let nr = int_rat(n as i64);
        for a in &p.upper {
            term *= a + &nr;
        }
        for b in &p.lower {
            term /= b + &nr;
        }
        term /= &nr + BigRational::one();
        sum += &term;
    }
    Ok(sum)
}

/// Which slots of a [`HypParams`] play the roles `-p`, `q` and `r` in a
/// Whipple transformation. The two upper slots not named here are `a1, a2`
/// in slot order; the two remaining lower slots are `b1, b2` in slot order.
///
/// The assignment is explicit input rather than inferred, since the identity
/// family depends on which slot is pivoted on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WhippleRoles {
    pub neg_p_slot: usize,
    pub q_slot: usize,
    pub r_slot: usize,
}

/// The seven role values of a Whipple instance:
/// `(p, q, [a1, a2], r, [b1, b2])`.
type SplitRoles = (u64, BigRational, [BigRational; 2], BigRational, [BigRational; 2]);

impl WhippleRoles {
    fn split(&self, params: &HypParams) -> Result<SplitRoles, HyperError> {
        if self.neg_p_slot > 3 || self.q_slot > 3 || self.r_slot > 2 {
            return Err(HyperError::InvalidRoles("slot index out of range".into()));
        }
        if self.neg_p_slot == self.q_slot {
            return Err(HyperError::InvalidRoles(
                "-p and q must occupy distinct upper slots".into(),
            ));
        }
        let p = as_nonpositive_int(&params.upper[self.neg_p_slot]).ok_or_else(|| {
            HyperError::InvalidRoles("the -p slot must hold a nonpositive integer".into())
        })?;
        let q = params.upper[self.q_slot].clone();
        let a: Vec<BigRational> = (0..4)
            .filter(|s| *s != self.neg_p_slot && *s != self.q_slot)
            .map(|s| params.upper[s].clone())
            .collect();
        let r = params.lower[self.r_slot].clone();
        let b: Vec<BigRational> = (0..3)
            .filter(|s| *s != self.r_slot)
            .map(|s| params.lower[s].clone())
            .collect();
        Ok((p, q, [a[0].clone(), a[1].clone()], r, [b[0].clone(), b[1].clone()]))
    }
}

/// Returns true when no lower parameter has a vanishing Pochhammer `(b)_n`
/// for any `n <= bound`, i.e. no lower parameter is an integer in
/// `(-bound, 0]`. This is stronger than evaluability (which only protects the
/// terminating range) and is the condition under which the Whipple identity
/// is a clean specialization of the underlying polynomial identity.
pub fn lowers_nonvanishing_through(params: &HypParams, bound: u64) -> bool {
    params.lower.iter().all(|b| match as_nonpositive_int(b) {
        Some(m) => m >= bound,
        None => true,
    })
}

/// Whipple's balanced ₄F₃ transformation.
///
/// Given parameters in the roles `(-p, q, a1, a2; r, b1, b2)` with `p ≥ 0`
/// and `q + a1 + a2 + 1 = r + b1 + b2 + p`, returns the coefficient
/// `(b1-q)_p (b2-q)_p / ((b1)_p (b2)_p)` and the transformed parameters
/// `(-p, q, r-a1, r-a2; r, 1+q-b1-p, 1+q-b2-p)`.
///
/// `eval(params) = coefficient · eval(transformed)` holds exactly whenever
/// the lower parameters of both sides stay nonvanishing through the full
/// pivot range `n <= p` (see [`lowers_nonvanishing_through`]). If another
/// upper parameter terminates the series strictly before `p` while a lower
/// parameter vanishes inside the abandoned tail, the two sides are partial
/// sums of a singular specialization and need not agree.
pub fn whipple_transform(
    params: &HypParams,
    roles: &WhippleRoles,
) -> Result<(BigRational, HypParams), HyperError> {
    let (p, q, [a1, a2], r, [b1, b2]) = roles.split(params)?;
    let p_rat = int_rat(p as i64);
    if &q + &a1 + &a2 + BigRational::one() != &r + &b1 + &b2 + &p_rat {
        return Err(HyperError::BalanceViolation);
    }
    for b in [&b1, &b2] {
        if let Some(m) = as_nonpositive_int(b) {
            if m < p {
                return Err(HyperError::ZeroDenominator);
            }
        }
    }
    let coefficient = pochhammer(&(&b1 - &q), p) * pochhammer(&(&b2 - &q), p)
        / (pochhammer(&b1, p) * pochhammer(&b2, p));
    let one = BigRational::one();
    let transformed = HypParams::new(
        [-&p_rat, q.clone(), &r - &a1, &r - &a2],
        [r, &one + &q - &b1 - &p_rat, &one + &q - &b2 - &p_rat],
    );
    Ok((coefficient, transformed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(7, 3), 0), int_rat(1));
        assert_eq!(pochhammer(&int_rat(-3), 2), int_rat(6));
        assert_eq!(pochhammer(&int_rat(2), 3), int_rat(24));
    }

    #[test]
    fn termination_examples() {
        let t = |u: [i64; 4]| termination_index(&HypParams::from_i64(u, [1, 1, 1]));
        assert_eq!(t([-1, 2, -1, 2]), Ok(1));
        assert_eq!(t([0, 1, -5, 6]), Ok(0));
        let p = HypParams::new(
            [int_rat(-3), int_rat(-7), rat(1, 2), int_rat(4)],
            [int_rat(1), int_rat(1), int_rat(1)],
        );
        assert_eq!(termination_index(&p), Ok(3));
        assert_eq!(
            termination_index(&HypParams::from_i64([1, 2, 3, 4], [1, 1, 1])),
            Err(HyperError::NonTerminating)
        );
    }

    #[test]
    fn eval_terminates_at_zero_when_an_upper_is_zero() {
        // u_0(theta_j) = 1 shape: upper (0, 1, -j, j+1), lower (1, D+2, -D)
        for d in 1..6i64 {
            for j in 0..=d {
                let p = HypParams::from_i64([0, 1, -j, j + 1], [1, d + 2, -d]);
                assert_eq!(eval_4f3_unit(&p), Ok(int_rat(1)));
            }
        }
    }

    #[test]
    fn eval_frozen_values() {
        // u_1(theta_1) at D = 2 and D = 1
        let p = HypParams::from_i64([-1, 2, -1, 2], [1, 4, -2]);
        assert_eq!(eval_4f3_unit(&p), Ok(rat(1, 2)));
        let p = HypParams::from_i64([-1, 2, -1, 2], [1, 3, -1]);
        assert_eq!(eval_4f3_unit(&p), Ok(rat(-1, 3)));
    }

    #[test]
    fn eval_divergent_lower() {
        let p = HypParams::from_i64([-3, 2, 5, 7], [1, -2, 4]);
        assert_eq!(
            eval_4f3_unit(&p),
            Err(HyperError::DivergentLowerParam("-2".into()))
        );
        // -3 in a lower slot is fine when termination comes first
        let p = HypParams::from_i64([-3, 2, 5, 7], [1, -3, 4]);
        assert!(eval_4f3_unit(&p).is_ok());
    }

    #[test]
    fn whipple_worked_instance() {
        // The D = 2, i = j = 1 instance: coefficient 8/5, value 4/5 = (8/5)(1/2).
        let params = HypParams::from_i64([-1, -1, -1, -1], [1, -5, 1]);
        let roles = WhippleRoles { neg_p_slot: 0, q_slot: 1, r_slot: 0 };
        let (coeff, transformed) = whipple_transform(&params, &roles).unwrap();
        assert_eq!(coeff, rat(8, 5));
        assert_eq!(
            transformed,
            HypParams::from_i64([-1, -1, 2, 2], [1, 4, -2])
        );
        let lhs = eval_4f3_unit(&params).unwrap();
        let rhs = eval_4f3_unit(&transformed).unwrap();
        assert_eq!(lhs, rat(4, 5));
        assert_eq!(lhs, coeff * rhs);
    }

    #[test]
    fn whipple_with_p_zero_is_identity() {
        let params = HypParams::from_i64([0, -2, 3, 5], [2, 4, 1]);
        let roles = WhippleRoles { neg_p_slot: 0, q_slot: 1, r_slot: 0 };
        let (coeff, transformed) = whipple_transform(&params, &roles).unwrap();
        assert_eq!(coeff, int_rat(1));
        assert_eq!(eval_4f3_unit(&params).unwrap(), int_rat(1));
        assert_eq!(eval_4f3_unit(&transformed).unwrap(), int_rat(1));
    }

    #[test]
    fn whipple_balance_violation() {
        let params = HypParams::from_i64([-1, -1, -1, -1], [1, -5, 2]);
        let roles = WhippleRoles { neg_p_slot: 0, q_slot: 1, r_slot: 0 };
        assert_eq!(
            whipple_transform(&params, &roles),
            Err(HyperError::BalanceViolation)
        );
    }

    #[test]
    fn whipple_zero_denominator() {
        // b1 = -0 ... b in (-p, 0] kills (b)_p
        let params = HypParams::from_i64([-2, 5, 1, 1], [3, 0, 3]);
        let roles = WhippleRoles { neg_p_slot: 0, q_slot: 1, r_slot: 0 };
        assert_eq!(
            whipple_transform(&params, &roles),
            Err(HyperError::ZeroDenominator)
        );
    }

    #[test]
    fn whipple_requires_nonpositive_integer_pivot() {
        let params = HypParams::from_i64([2, -1, -1, -1], [1, -5, 1]);
        let roles = WhippleRoles { neg_p_slot: 0, q_slot: 1, r_slot: 0 };
        assert!(matches!(
            whipple_transform(&params, &roles),
            Err(HyperError::InvalidRoles(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // eval is invariant under permutations of the upper slots and of the
        // lower slots.
        #[test]
        fn permutation_invariance(
            p in 0u64..5,
            q in -5i64..=5,
            a1 in -5i64..=5,
            a2 in -5i64..=5,
            perm_u in 0usize..24,
            perm_l in 0usize..6,
        ) {
            // lower parameters chosen to never vanish within [0, N]
            let params = HypParams::from_i64([-(p as i64), q, a1, a2], [1, 7, 9]);
            let base = eval_4f3_unit(&params).unwrap();

            let mut upper = params.upper.clone();
            upper.swap(perm_u % 4, (perm_u / 4) % 4);
            upper.swap((perm_u / 8) % 4, perm_u % 3);
            let mut lower = params.lower.clone();
            lower.swap(perm_l % 3, (perm_l / 3) % 3);
            let shuffled = HypParams::new(upper, lower);
            prop_assert_eq!(eval_4f3_unit(&shuffled).unwrap(), base);
        }

        // Whipple invariance on balanced tuples whose lower parameters stay
        // nonvanishing through the full pivot range on both sides.
        #[test]
        fn whipple_invariance(
            p in 0i64..4,
            q in -4i64..=4,
            a1 in -4i64..=4,
            a2 in -4i64..=4,
            r in -5i64..=5,
            b1 in -6i64..=6,
        ) {
            let b2 = q + a1 + a2 + 1 - r - b1 - p;
            let params = HypParams::from_i64([-p, q, a1, a2], [r, b1, b2]);
            let roles = WhippleRoles { neg_p_slot: 0, q_slot: 1, r_slot: 0 };
            if let Ok((coeff, transformed)) = whipple_transform(&params, &roles) {
                if lowers_nonvanishing_through(&params, p as u64)
                    && lowers_nonvanishing_through(&transformed, p as u64)
                {
                    let lhs = eval_4f3_unit(&params).unwrap();
                    let rhs = eval_4f3_unit(&transformed).unwrap();
                    prop_assert_eq!(lhs, coeff * rhs);
                }
            }
        }
    }
}
