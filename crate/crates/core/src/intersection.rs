//! The matrices `B_i = v_i(A)`, the intersection numbers `p^h_{i,j}`, and
//! four independent ways to compute them.
//!
//! Each route lives behind the [`TensorRoute`] trait and is registered by
//! name, so callers (tests, campaigns, the CLI `--route` flag) select one at
//! runtime. The four must produce identical tensors; verifying that equality
//! is itself one of the campaign checks.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::{factored_factorial, int_rat, HalfInt};
use crate::hyper::{eval_4f3_unit, HypParams};
use crate::leonard::{RacahSystem, RationalMatrix};
use crate::racah::{racah_w, SpinSextuple};

/// The numbers `p^h_{i,j}` for one D, tagged with the route that produced
/// them. Entries are stored densely, indexed `(h, i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionTensor {
    d: usize,
    route: &'static str,
    p: Vec<BigRational>,
}

impl IntersectionTensor {
    fn zero(d: usize, route: &'static str) -> Self {
        let n = d + 1;
        IntersectionTensor { d, route, p: vec![BigRational::zero(); n * n * n] }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn route(&self) -> &'static str {
        self.route
    }

    pub fn get(&self, h: usize, i: usize, j: usize) -> &BigRational {
        let n = self.d + 1;
        &self.p[(h * n + i) * n + j]
    }

    fn set(&mut self, h: usize, i: usize, j: usize, value: BigRational) {
        let n = self.d + 1;
        self.p[(h * n + i) * n + j] = value;
    }

    /// Entry-wise equality, ignoring the route tag.
    pub fn values_equal(&self, other: &IntersectionTensor) -> bool {
        self.d == other.d && self.p == other.p
    }
}

/// `B_i = v_i(A)`, built by the matrix three-term recurrence
/// `B_{i+1} = (A·B_i - a_i·B_i - b_{i-1}·B_{i-1}) / c_{i+1}` seeded with
/// `B_0 = I`, `B_1 = A`.
pub fn b_matrix(sys: &RacahSystem, i: usize) -> RationalMatrix {
    assert!(i <= sys.d(), "matrix index {} out of range 0..={}", i, sys.d());
    b_matrices_up_to(sys, i).pop().expect("nonempty")
}

/// All of `B_0, ..., B_D` in one recurrence pass.
pub fn b_matrices(sys: &RacahSystem) -> Vec<RationalMatrix> {
    b_matrices_up_to(sys, sys.d())
}

fn b_matrices_up_to(sys: &RacahSystem, imax: usize) -> Vec<RationalMatrix> {
    let n = sys.order();
    let mut out = Vec::with_capacity(imax + 1);
    out.push(RationalMatrix::identity(n));
    if imax >= 1 {
        out.push(sys.matrix_a());
    }
    let a = sys.matrix_a();
    for i in 1..imax {
        let ab = a.mul(&out[i]);
        let next = ab
            .sub(&out[i].scale(sys.a(i)))
            .sub(&out[i - 1].scale(sys.b(i - 1)))
            .scale(&(int_rat(1) / sys.c(i + 1)));
        out.push(next);
    }
    out
}

/// `B*_i = v_i(A*)`: diagonal with entries `v_i(θ_j)`.
pub fn b_star_matrix(sys: &RacahSystem, i: usize) -> RationalMatrix {
    assert!(i <= sys.d(), "matrix index {} out of range 0..={}", i, sys.d());
    let v = sys.v_table();
    let n = sys.order();
    let mut m = RationalMatrix::zero(n);
    for j in 0..n {
        m[(j, j)] = v[(i, j)].clone();
    }
    m
}

/// Exact structure-constant check: `B_i B_j = Σ_h p^h_{i,j} B_h` and the
/// starred version, for all i, j.
pub fn structure_check(sys: &RacahSystem) -> bool {
    let n = sys.order();
    let bs = b_matrices(sys);
    let bstars: Vec<RationalMatrix> = (0..n).map(|i| b_star_matrix(sys, i)).collect();
    let p = MatrixRoute.compute(sys);
    for (i, b_i) in bs.iter().enumerate() {
        for (j, b_j) in bs.iter().enumerate() {
            let mut rhs = RationalMatrix::zero(n);
            let mut rhs_star = RationalMatrix::zero(n);
            for h in 0..n {
                let w = p.get(h, i, j);
                if w.is_zero() {
                    continue;
                }
                rhs = rhs.add(&bs[h].scale(w));
                rhs_star = rhs_star.add(&bstars[h].scale(w));
            }
            if b_i.mul(b_j) != rhs || bstars[i].mul(&bstars[j]) != rhs_star {
                return false;
            }
        }
    }
    true
}

/// One of the interchangeable algorithms that produce the intersection
/// tensor for a system.
pub trait TensorRoute: Sync {
    /// Registry key; also the tag carried by the produced tensor.
    fn name(&self) -> &'static str;
    fn compute(&self, sys: &RacahSystem) -> IntersectionTensor;
}

/// `p^h_{i,j} = (B_i)_{h,j}`.
pub struct MatrixRoute;

/// `p^h_{i,j} = (k_i k_j / ν) Σ_t k_t u_t(θ_i) u_t(θ_j) u_t(θ_h)`.
pub struct TripleSumRoute;

/// `p^h_{i,j} = (2i+1)(2j+1)(D+1) W(D/2, D/2, i, h; j, D/2)²`.
pub struct RacahRoute;

/// Closed-form factorial expression on the canonical cone `i ≤ j ≤ h`,
/// carried to general index order by the tensor symmetries.
pub struct AppendixRoute;

impl TensorRoute for MatrixRoute {
    fn name(&self) -> &'static str {
        "matrix"
    }

    fn compute(&self, sys: &RacahSystem) -> IntersectionTensor {
        let n = sys.order();
        let bs = b_matrices(sys);
        let mut t = IntersectionTensor::zero(sys.d(), self.name());
        for (i, b) in bs.iter().enumerate() {
            for h in 0..n {
                for j in 0..n {
                    t.set(h, i, j, b[(h, j)].clone());
                }
            }
        }
        t
    }
}

impl TensorRoute for TripleSumRoute {
    fn name(&self) -> &'static str {
        "triple_sum"
    }

    fn compute(&self, sys: &RacahSystem) -> IntersectionTensor {
        let n = sys.order();
        let u = sys.u_table();
        let mut t = IntersectionTensor::zero(sys.d(), self.name());
        for h in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut sum = BigRational::zero();
                    for s in 0..n {
                        sum += sys.k(s) * &u[(s, i)] * &u[(s, j)] * &u[(s, h)];
                    }
                    t.set(h, i, j, sum * sys.k(i) * sys.k(j) / sys.nu());
                }
            }
        }
        t
    }
}

impl TensorRoute for RacahRoute {
    fn name(&self) -> &'static str {
        "racah"
    }

    fn compute(&self, sys: &RacahSystem) -> IntersectionTensor {
        let n = sys.order();
        let d = sys.d();
        let half_d = HalfInt::from_twice(d as i64);
        // W² is symmetric in (h, i, j); evaluate once per unordered pattern.
        let mut w_sq: HashMap<[usize; 3], BigRational> = HashMap::new();
        let mut t = IntersectionTensor::zero(d, self.name());
        for h in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut key = [h, i, j];
                    key.sort_unstable();
                    let sq = w_sq
                        .entry(key)
                        .or_insert_with(|| {
                            let s = SpinSextuple::new(
                                half_d,
                                half_d,
                                HalfInt::from_int(i as i64),
                                HalfInt::from_int(h as i64),
                                HalfInt::from_int(j as i64),
                                half_d,
                            )
                            .expect("indices are nonnegative");
                            racah_w(&s).square()
                        })
                        .clone();
                    let weight = int_rat((2 * i as i64 + 1) * (2 * j as i64 + 1) * (d as i64 + 1));
                    t.set(h, i, j, sq * weight);
                }
            }
        }
        t
    }
}

impl TensorRoute for AppendixRoute {
    fn name(&self) -> &'static str {
        "appendix"
    }

    fn compute(&self, sys: &RacahSystem) -> IntersectionTensor {
        let n = sys.order();
        let d = sys.d();
        let mut canonical: HashMap<[usize; 3], BigRational> = HashMap::new();
        let mut t = IntersectionTensor::zero(d, self.name());
        for h in 0..n {
            for i in 0..n {
                for j in 0..n {
                    // Sort (h, i, j) into x <= y <= z. The symmetries
                    // p^h_{i,j} = p^h_{j,i} and k_h p^h_{i,j} = k_j p^j_{h,i}
                    // make k_h p^h_{i,j} fully symmetric, so
                    // p^h_{i,j} = p^z_{x,y} · k_z / k_h.
                    let mut key = [h, i, j];
                    key.sort_unstable();
                    let [x, y, z] = key;
                    if z > x + y {
                        continue; // outside the triangle: exact zero
                    }
                    let base = canonical
                        .entry(key)
                        .or_insert_with(|| appendix_canonical(d, x, y, z))
                        .clone();
                    let value = base * int_rat(2 * z as i64 + 1) / int_rat(2 * h as i64 + 1);
                    t.set(h, i, j, value);
                }
            }
        }
        t
    }
}

/// The closed form for `p^h_{i,j}` on the canonical cone
/// `i <= j <= h <= i + j`, `h <= D`:
///
/// ```text
/// p^h_{i,j} = C^h_{i,j} (2i+1)(2j+1)(D+1)
///             · (₄F₃[-j, -i, h-i-j, h-D; -D-i-j-1, h-j+1, h-i+1; 1])²
/// ```
///
/// with `C^h_{i,j}` the factorial ratio below, kept prime-factored until the
/// final conversion.
fn appendix_canonical(d: usize, i: usize, j: usize, h: usize) -> BigRational {
    debug_assert!(i <= j && j <= h && h <= i + j && h <= d);
    let (di, ii, ji, hi) = (d as i64, i as i64, j as i64, h as i64);
    let f = |x: i64| {
        factored_factorial(u64::try_from(x).expect("nonnegative factorial argument"))
    };
    let mut coeff = f(di - ii);
    coeff *= &f(di - ji);
    coeff *= &f(di - hi);
    coeff *= &f(ji + hi - ii);
    coeff *= &f(hi + ii - ji);
    coeff /= &f(di + ii + 1);
    coeff /= &f(di + ji + 1);
    coeff /= &f(di + hi + 1);
    coeff /= &f(ii + ji + hi + 1);
    coeff /= &f(ii + ji - hi);
    let mut square = f(hi);
    square *= &f(di + ii + ji + 1);
    square /= &f(hi - ii);
    square /= &f(hi - ji);
    square /= &f(di - hi);
    coeff *= &square;
    coeff *= &square;

    let hyp = eval_4f3_unit(&HypParams::from_i64(
        [-ji, -ii, hi - ii - ji, hi - di],
        [-di - ii - ji - 1, hi - ji + 1, hi - ii + 1],
    ))
    .expect("appendix 4F3 terminates before its negative lower parameter");

    coeff.to_rational() * int_rat((2 * ii + 1) * (2 * ji + 1) * (di + 1)) * &hyp * &hyp
}

/// Registered routes, in presentation order.
pub static ROUTES: [&dyn TensorRoute; 4] =
    [&MatrixRoute, &TripleSumRoute, &RacahRoute, &AppendixRoute];

/// Look a route up by registry name. `sum` is accepted as a CLI-friendly
/// alias for `triple_sum`.
pub fn route_by_name(name: &str) -> Option<&'static dyn TensorRoute> {
    match name {
        "sum" => Some(&TripleSumRoute),
        _ => ROUTES.iter().copied().find(|r| r.name() == name),
    }
}

/// Compute the tensor through the named route.
pub fn p_tensor(sys: &RacahSystem, route: &dyn TensorRoute) -> IntersectionTensor {
    route.compute(sys)
}
