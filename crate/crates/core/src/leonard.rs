//! The self-dual Racah-type Leonard pair for a given D: coefficient tables,
//! the matrices A, A* and P, the polynomial value tables u and v, and the
//! orthogonality relations.
//!
//! Polynomials are never materialized as coefficient vectors; only their
//! values on the θ grid are stored, which is all any downstream computation
//! needs.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::int_rat;
use crate::hyper::{eval_4f3_unit, HypParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeonardError {
    #[error("D must be a positive integer, got {0}")]
    InvalidDiameter(usize),
}

/// Dense (D+1)×(D+1) matrix of exact rationals, rows and columns indexed
/// from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    order: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(order: usize) -> Self {
        RationalMatrix {
            order,
            entries: vec![BigRational::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = RationalMatrix::zero(order);
        for i in 0..order {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Matrix product, skipping exact zeros on the left factor; the banded
    /// matrices in this crate make that skip worthwhile.
    pub fn mul(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.order, rhs.order);
        let n = self.order;
        let mut out = RationalMatrix::zero(n);
        for i in 0..n {
            for t in 0..n {
                let left = &self[(i, t)];
                if left.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let right = &rhs[(t, j)];
                    if right.is_zero() {
                        continue;
                    }
                    let cell = &mut out[(i, j)];
                    *cell += left * right;
                }
            }
        }
        out
    }

    pub fn scale(&self, q: &BigRational) -> RationalMatrix {
        RationalMatrix {
            order: self.order,
            entries: self.entries.iter().map(|e| e * q).collect(),
        }
    }

    pub fn add(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.order, rhs.order);
        RationalMatrix {
            order: self.order,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.order, rhs.order);
        RationalMatrix {
            order: self.order,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.order).all(|i| {
            (0..self.order).all(|j| i == j || self[(i, j)].is_zero())
        })
    }

    /// Tridiagonal with every sub- and superdiagonal entry nonzero.
    pub fn is_irreducible_tridiagonal(&self) -> bool {
        for i in 0..self.order {
            for j in 0..self.order {
                let e = &self[(i, j)];
                match i.abs_diff(j) {
                    0 => {}
                    1 => {
                        if e.is_zero() {
                            return false;
                        }
                    }
                    _ => {
                        if !e.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.entries[i * self.order + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.entries[i * self.order + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.order {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// All scalar data of the Racah-type Leonard pair for a fixed D:
///
/// ```text
/// c_i = 3(D-i+1) i (D+i+1) / (D(D+2)(2i+1))      (1 <= i <= D)
/// a_i = 3 i (i+1) / (D(D+2))                     (0 <= i <= D)
/// b_i = 3(D-i)(i+1)(D+i+2) / (D(D+2)(2i+1))      (0 <= i <= D-1)
/// θ_i = 3 - 2 a_i,   k_i = 2i+1,   ν = (D+1)²
/// ```
///
/// Immutable after construction; construction asserts every table invariant.
#[derive(Clone, Debug)]
pub struct RacahSystem {
    d: usize,
    a: Vec<BigRational>,
    b: Vec<BigRational>, // b[D] unused, kept zero
    c: Vec<BigRational>, // c[0] unused, kept zero
    theta: Vec<BigRational>,
    k: Vec<BigRational>,
    nu: BigRational,
}

impl RacahSystem {
    pub fn new(d: usize) -> Result<Self, LeonardError> {
        if d < 1 {
            return Err(LeonardError::InvalidDiameter(d));
        }
        let di = d as i64;
        let denom = |i: i64| int_rat(di * (di + 2) * (2 * i + 1));
        let mut a = Vec::with_capacity(d + 1);
        let mut b = vec![BigRational::zero(); d + 1];
        let mut c = vec![BigRational::zero(); d + 1];
        let mut theta = Vec::with_capacity(d + 1);
        for i in 0..=di {
            let ai = int_rat(3 * i * (i + 1)) / int_rat(di * (di + 2));
            theta.push(int_rat(3) - int_rat(2) * &ai);
            a.push(ai);
        }
        for i in 1..=di {
            c[i as usize] = int_rat(3 * (di - i + 1) * i * (di + i + 1)) / denom(i);
        }
        for i in 0..di {
            b[i as usize] = int_rat(3 * (di - i) * (i + 1) * (di + i + 2)) / denom(i);
        }
        let k: Vec<BigRational> = (0..=di).map(|i| int_rat(2 * i + 1)).collect();
        let nu = int_rat((di + 1) * (di + 1));

        let sys = RacahSystem { d, a, b, c, theta, k, nu };
        sys.assert_invariants();
        Ok(sys)
    }

    fn assert_invariants(&self) {
        let d = self.d;
        for i in 1..=d {
            assert!(self.c[i].is_positive(), "c_{i} must be positive");
            assert!(self.b[i - 1].is_positive(), "b_{} must be positive", i - 1);
        }
        // θ strictly decreasing, hence mutually distinct
        for i in 0..d {
            assert!(self.theta[i] > self.theta[i + 1], "theta must be strictly decreasing");
        }
        // k_i = 2i+1 agrees with the product formula b_0...b_{i-1}/(c_1...c_i)
        let mut prod = BigRational::one();
        for i in 1..=d {
            prod *= &self.b[i - 1];
            prod /= &self.c[i];
            assert_eq!(prod, self.k[i], "k_{i} product formula mismatch");
        }
        let total: BigRational = self.k.iter().sum();
        assert_eq!(total, self.nu, "sum of multiplicities must be nu");
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.d + 1
    }

    pub fn a(&self, i: usize) -> &BigRational {
        &self.a[i]
    }

    pub fn b(&self, i: usize) -> &BigRational {
        &self.b[i]
    }

    pub fn c(&self, i: usize) -> &BigRational {
        &self.c[i]
    }

    pub fn theta(&self, i: usize) -> &BigRational {
        &self.theta[i]
    }

    pub fn k(&self, i: usize) -> &BigRational {
        &self.k[i]
    }

    pub fn nu(&self) -> &BigRational {
        &self.nu
    }

    /// The irreducible tridiagonal member of the pair, rows `(c_i, a_i, b_i)`.
    pub fn matrix_a(&self) -> RationalMatrix {
        let n = self.order();
        let mut m = RationalMatrix::zero(n);
        for i in 0..n {
            m[(i, i)] = self.a[i].clone();
            if i >= 1 {
                m[(i, i - 1)] = self.c[i].clone();
            }
            if i + 1 < n {
                m[(i, i + 1)] = self.b[i].clone();
            }
        }
        m
    }

    /// The diagonal member: `A* = diag(θ_0, ..., θ_D)`.
    pub fn matrix_a_star(&self) -> RationalMatrix {
        let n = self.order();
        let mut m = RationalMatrix::zero(n);
        for i in 0..n {
            m[(i, i)] = self.theta[i].clone();
        }
        m
    }

    /// Value table `(i, j) -> u_i(θ_j)` by the three-term recurrence
    /// `λ u_i = b_i u_{i+1} + a_i u_i + c_i u_{i-1}` seeded with
    /// `u_0 = 1, u_1 = λ/3`.
    pub fn u_table(&self) -> RationalMatrix {
        let n = self.order();
        let mut t = RationalMatrix::zero(n);
        for j in 0..n {
            let lambda = &self.theta[j];
            t[(0, j)] = BigRational::one();
            if n > 1 {
                t[(1, j)] = lambda / int_rat(3);
            }
            for i in 1..self.d {
                let next = ((lambda - &self.a[i]) * &t[(i, j)]
                    - &self.c[i] * &t[(i - 1, j)])
                    / &self.b[i];
                t[(i + 1, j)] = next;
            }
        }
        t
    }

    /// Same table through the hypergeometric representation
    /// `u_i(θ_j) = ₄F₃[-i, i+1, -j, j+1; 1, D+2, -D; 1]`; an independent
    /// route cross-checked against [`RacahSystem::u_table`] by tests and
    /// campaigns.
    pub fn u_table_hypergeometric(&self) -> RationalMatrix {
        let n = self.order();
        let di = self.d as i64;
        let mut t = RationalMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let p = HypParams::from_i64(
                    [-(i as i64), i as i64 + 1, -(j as i64), j as i64 + 1],
                    [1, di + 2, -di],
                );
                t[(i, j)] = eval_4f3_unit(&p).expect("terminating with safe lower parameters");
            }
        }
        t
    }

    /// Value table `(i, j) -> v_i(θ_j)` where `v_i = k_i u_i`. The table is
    /// recomputed independently through the v-recurrence
    /// `λ v_i = c_{i+1} v_{i+1} + a_i v_i + b_{i-1} v_{i-1}` and the two
    /// routes must agree exactly.
    pub fn v_table(&self) -> RationalMatrix {
        let n = self.order();
        let u = self.u_table();
        let mut t = RationalMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                t[(i, j)] = &self.k[i] * &u[(i, j)];
            }
        }
        // independent route: v_0 = 1, v_1 = λ, then the recurrence
        for j in 0..n {
            let lambda = &self.theta[j];
            let mut prev = BigRational::one();
            let mut cur = lambda.clone();
            assert_eq!(t[(0, j)], prev, "v-recurrence mismatch at (0, {j})");
            if n > 1 {
                assert_eq!(t[(1, j)], cur, "v-recurrence mismatch at (1, {j})");
            }
            for i in 1..self.d {
                let next = ((lambda - &self.a[i]) * &cur - &self.b[i - 1] * &prev)
                    / &self.c[i + 1];
                assert_eq!(t[(i + 1, j)], next, "v-recurrence mismatch at ({}, {j})", i + 1);
                prev = cur;
                cur = next;
            }
        }
        t
    }

    /// The duality matrix, `P_{i,j} = v_j(θ_i)`; column 0 is all ones and row
    /// 0 is the multiplicity vector k.
    pub fn matrix_p(&self) -> RationalMatrix {
        let n = self.order();
        let v = self.v_table();
        let mut p = RationalMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] = v[(j, i)].clone();
            }
        }
        p
    }

    /// Exact check of one of the four orthogonality relations over all
    /// `0 <= n, m <= D`.
    pub fn orthogonality_check(&self, relation: OrthoRelation) -> bool {
        let size = self.order();
        let u = self.u_table();
        let v = self.v_table();
        for n in 0..size {
            for m in 0..size {
                let mut sum = BigRational::zero();
                for j in 0..size {
                    sum += match relation {
                        OrthoRelation::UFirst => &self.k[j] * &u[(n, j)] * &u[(m, j)],
                        OrthoRelation::USecond => &self.k[j] * &u[(j, n)] * &u[(j, m)],
                        OrthoRelation::VFirst => &self.k[j] * &v[(n, j)] * &v[(m, j)],
                        OrthoRelation::VSecond => &v[(j, n)] * &v[(j, m)] / &self.k[j],
                    };
                }
                let target = if n != m {
                    BigRational::zero()
                } else {
                    match relation {
                        OrthoRelation::UFirst | OrthoRelation::USecond | OrthoRelation::VSecond => {
                            &self.nu / &self.k[n]
                        }
                        OrthoRelation::VFirst => &self.nu * &self.k[n],
                    }
                };
                if sum != target {
                    return false;
                }
            }
        }
        true
    }
}

/// Selector for the four orthogonality relations of the u and v families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrthoRelation {
    /// Σ_j k_j u_n(θ_j) u_m(θ_j) = ν k_n⁻¹ δ_{n,m}
    UFirst,
    /// Σ_j k_j u_j(θ_n) u_j(θ_m) = ν k_n⁻¹ δ_{n,m}
    USecond,
    /// Σ_j k_j v_n(θ_j) v_m(θ_j) = ν k_n δ_{n,m}
    VFirst,
    /// Σ_j k_j⁻¹ v_j(θ_n) v_j(θ_m) = ν k_n⁻¹ δ_{n,m}
    VSecond,
}

impl OrthoRelation {
    pub const ALL: [OrthoRelation; 4] = [
        OrthoRelation::UFirst,
        OrthoRelation::USecond,
        OrthoRelation::VFirst,
        OrthoRelation::VSecond,
    ];
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn mat(order: usize, rows: &[&[BigRational]]) -> RationalMatrix {
        let mut m = RationalMatrix::zero(order);
        for (i, row) in rows.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                m[(i, j)] = e.clone();
            }
        }
        m
    }

    #[test]
    fn d_zero_rejected() {
        assert!(matches!(
            RacahSystem::new(0),
            Err(LeonardError::InvalidDiameter(0))
        ));
    }

    #[test]
    fn tables_d1() {
        let sys = RacahSystem::new(1).unwrap();
        assert_eq!(sys.a(0), &int_rat(0));
        assert_eq!(sys.a(1), &int_rat(2));
        assert_eq!(sys.b(0), &int_rat(3));
        assert_eq!(sys.c(1), &int_rat(1));
        assert_eq!(sys.theta(0), &int_rat(3));
        assert_eq!(sys.theta(1), &int_rat(-1));
        assert_eq!(sys.k(0), &int_rat(1));
        assert_eq!(sys.k(1), &int_rat(3));
        assert_eq!(sys.nu(), &int_rat(4));
    }

    #[test]
    fn tables_d2() {
        let sys = RacahSystem::new(2).unwrap();
        assert_eq!(sys.theta(0), &int_rat(3));
        assert_eq!(sys.theta(1), &rat(3, 2));
        assert_eq!(sys.theta(2), &rat(-3, 2));
        assert_eq!(sys.b(0), &int_rat(3));
        assert_eq!(sys.b(1), &rat(5, 4));
        assert_eq!(sys.c(1), &int_rat(1));
        assert_eq!(sys.c(2), &rat(3, 4));
    }

    #[test]
    fn k_is_odd_integers_for_various_d() {
        for d in 1..=12 {
            let sys = RacahSystem::new(d).unwrap();
            for i in 0..=d {
                assert_eq!(sys.k(i), &int_rat(2 * i as i64 + 1));
            }
        }
    }

    #[test]
    fn matrix_a_examples() {
        let sys = RacahSystem::new(1).unwrap();
        let a = sys.matrix_a();
        assert_eq!(
            a,
            mat(2, &[
                &[int_rat(0), int_rat(3)],
                &[int_rat(1), int_rat(2)],
            ])
        );
        let sys = RacahSystem::new(2).unwrap();
        let a = sys.matrix_a();
        assert_eq!(
            a,
            mat(3, &[
                &[int_rat(0), int_rat(3), int_rat(0)],
                &[int_rat(1), rat(3, 4), rat(5, 4)],
                &[int_rat(0), rat(3, 4), rat(9, 4)],
            ])
        );
        assert!(a.is_irreducible_tridiagonal());
    }

    #[test]
    fn a_star_is_diagonal_with_theta0_three() {
        for d in 1..=8 {
            let sys = RacahSystem::new(d).unwrap();
            let astar = sys.matrix_a_star();
            assert!(astar.is_diagonal());
            assert_eq!(astar[(0, 0)], int_rat(3));
        }
    }

    #[test]
    fn u_table_values() {
        let sys = RacahSystem::new(1).unwrap();
        let u = sys.u_table();
        assert_eq!(u[(1, 1)], rat(-1, 3));
        let sys = RacahSystem::new(2).unwrap();
        let u = sys.u_table();
        assert_eq!(u[(2, 1)], rat(-1, 2));
        assert_eq!(u[(2, 2)], rat(1, 10));
        // row i = 0 and column j = 0 are all ones
        for d in 1..=6 {
            let u = RacahSystem::new(d).unwrap().u_table();
            for x in 0..=d {
                assert_eq!(u[(0, x)], int_rat(1));
                assert_eq!(u[(x, 0)], int_rat(1));
            }
        }
    }

    #[test]
    fn u_routes_agree_and_symmetric() {
        for d in 1..=8 {
            let sys = RacahSystem::new(d).unwrap();
            let rec = sys.u_table();
            let hyp = sys.u_table_hypergeometric();
            assert_eq!(rec, hyp, "route mismatch at D = {d}");
            for i in 0..=d {
                for j in 0..=d {
                    assert_eq!(rec[(i, j)], rec[(j, i)]);
                }
            }
        }
    }

    #[test]
    fn v_table_values() {
        let sys = RacahSystem::new(1).unwrap();
        let v = sys.v_table();
        assert_eq!(v[(1, 1)], int_rat(-1));
        let sys = RacahSystem::new(2).unwrap();
        let v = sys.v_table();
        assert_eq!(v[(2, 2)], rat(1, 2));
        // row i = 1 equals theta
        for d in 1..=6 {
            let sys = RacahSystem::new(d).unwrap();
            let v = sys.v_table();
            for j in 0..=d {
                assert_eq!(&v[(1, j)], sys.theta(j));
            }
        }
    }

    #[test]
    fn p_matrix_values() {
        let sys = RacahSystem::new(1).unwrap();
        assert_eq!(
            sys.matrix_p(),
            mat(2, &[
                &[int_rat(1), int_rat(3)],
                &[int_rat(1), int_rat(-1)],
            ])
        );
        let sys = RacahSystem::new(2).unwrap();
        assert_eq!(
            sys.matrix_p(),
            mat(3, &[
                &[int_rat(1), int_rat(3), int_rat(5)],
                &[int_rat(1), rat(3, 2), rat(-5, 2)],
                &[int_rat(1), rat(-3, 2), rat(1, 2)],
            ])
        );
        // P_{i,0} = 1, P_{0,j} = k_j
        for d in 1..=8 {
            let sys = RacahSystem::new(d).unwrap();
            let p = sys.matrix_p();
            for x in 0..=d {
                assert_eq!(p[(x, 0)], int_rat(1));
                assert_eq!(&p[(0, x)], sys.k(x));
            }
        }
    }

    #[test]
    fn duality_relations() {
        for d in 1..=8 {
            let sys = RacahSystem::new(d).unwrap();
            let p = sys.matrix_p();
            let a = sys.matrix_a();
            let astar = sys.matrix_a_star();
            let nu_i = RationalMatrix::identity(d + 1).scale(sys.nu());
            assert_eq!(p.mul(&p), nu_i, "P^2 = nu I at D = {d}");
            assert_eq!(p.mul(&a), astar.mul(&p), "PA = A*P at D = {d}");
            assert_eq!(p.mul(&astar), a.mul(&p), "PA* = AP at D = {d}");
        }
    }

    #[test]
    fn orthogonality_all_relations() {
        for d in 1..=8 {
            let sys = RacahSystem::new(d).unwrap();
            for rel in OrthoRelation::ALL {
                assert!(sys.orthogonality_check(rel), "{rel:?} failed at D = {d}");
            }
        }
    }

    #[test]
    fn orthogonality_diagonal_value_example() {
        // D = 1, u-first, n = m = 1: sum = 1 + 3·(1/9) = 4/3 = nu / k_1
        let sys = RacahSystem::new(1).unwrap();
        let u = sys.u_table();
        let sum: BigRational = (0..2)
            .map(|j| sys.k(j) * &u[(1, j)] * &u[(1, j)])
            .sum();
        assert_eq!(sum, rat(4, 3));
    }
}
