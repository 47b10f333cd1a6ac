//! Racah coefficients `W(a,b,c,d;e,f)` over exact surds, plus admissibility,
//! triangle coefficients, and the Biedenharn-Elliott identity evaluator.
//!
//! `W` follows the Biedenharn-Louck normalization verbatim; no particular
//! 6-j phase convention is claimed or used anywhere downstream.

use num_rational::BigRational;
use thiserror::Error;

use crate::exact::{
    factored_factorial, int_phase, int_rat, sqrt_to_surd, FactoredRational, HalfInt, Surd,
    SurdSum,
};
use crate::hyper::{eval_4f3_unit, HypParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RacahError {
    #[error("triple ({0}, {1}, {2}) is not admissible")]
    NotAdmissible(HalfInt, HalfInt, HalfInt),
    #[error("spins must be nonnegative")]
    NegativeSpin,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
}

/// The six spins of a Racah coefficient, each in (1/2)ℕ.
///
/// Non-admissible configurations are legal values; they simply give `W = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinSextuple {
    pub a: HalfInt,
    pub b: HalfInt,
    pub c: HalfInt,
    pub d: HalfInt,
    pub e: HalfInt,
    pub f: HalfInt,
}

impl SpinSextuple {
    pub fn new(
        a: HalfInt,
        b: HalfInt,
        c: HalfInt,
        d: HalfInt,
        e: HalfInt,
        f: HalfInt,
    ) -> Result<Self, RacahError> {
        let s = SpinSextuple { a, b, c, d, e, f };
        if s.spins().iter().all(|x| x.is_nonnegative()) {
            Ok(s)
        } else {
            Err(RacahError::NegativeSpin)
        }
    }

    pub fn from_twices(t: [i64; 6]) -> Result<Self, RacahError> {
        let [a, b, c, d, e, f] = t.map(HalfInt::from_twice);
        SpinSextuple::new(a, b, c, d, e, f)
    }

    fn spins(&self) -> [HalfInt; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    /// The four coupling triples whose admissibility gates `W`.
    pub fn triples(&self) -> [(HalfInt, HalfInt, HalfInt); 4] {
        [
            (self.a, self.b, self.e),
            (self.c, self.d, self.e),
            (self.a, self.c, self.f),
            (self.b, self.d, self.f),
        ]
    }
}

/// The sorted α/β index frame of a Racah coefficient.
///
/// When all four triples are admissible, every entry is a nonnegative
/// integer and `beta[0]` dominates every α; both facts are asserted during
/// evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WIndexFrame {
    pub alpha: [HalfInt; 4],
    pub beta: [HalfInt; 3],
}

impl WIndexFrame {
    pub fn from_sextuple(s: &SpinSextuple) -> Self {
        let mut alpha = [
            s.a + s.b + s.e,
            s.c + s.d + s.e,
            s.a + s.c + s.f,
            s.b + s.d + s.f,
        ];
        alpha.sort();
        let mut beta = [
            s.a + s.b + s.c + s.d,
            s.a + s.d + s.e + s.f,
            s.b + s.c + s.e + s.f,
        ];
        beta.sort();
        WIndexFrame { alpha, beta }
    }
}

/// A triple in (1/2)ℕ is admissible when its sum is an integer and the three
/// triangle inequalities hold.
pub fn is_admissible(a: HalfInt, b: HalfInt, c: HalfInt) -> bool {
    assert!(
        a.is_nonnegative() && b.is_nonnegative() && c.is_nonnegative(),
        "admissibility is defined on nonnegative half-integers"
    );
    (a + b + c).is_integer() && a <= b + c && b <= c + a && c <= a + b
}

/// The square of the triangle coefficient:
/// `Δ(a,b,c)² = (a+b-c)!(b+c-a)!(c+a-b)! / (a+b+c+1)!`, kept factored.
pub fn triangle_delta_sq(
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
) -> Result<FactoredRational, RacahError> {
    if !is_admissible(a, b, c) {
        return Err(RacahError::NotAdmissible(a, b, c));
    }
    let arg = |x: HalfInt| {
        x.as_nonneg_integer()
            .expect("admissible triple gives nonnegative integer factorial arguments")
    };
    let mut d2 = factored_factorial(arg(a + b - c));
    d2 *= &factored_factorial(arg(b + c - a));
    d2 *= &factored_factorial(arg(c + a - b));
    d2 /= &factored_factorial(arg(a + b + c + HalfInt::from_int(1)));
    Ok(d2)
}

/// The Racah coefficient `W(a,b,c,d;e,f)` as an exact surd.
///
/// Zero when any of the four coupling triples is inadmissible; otherwise the
/// Δ-product square root times an exact factorial prefactor, sign, and
/// terminating ₄F₃ value, evaluated on the canonically sorted index frame.
pub fn racah_w(s: &SpinSextuple) -> Surd {
    if !s.triples().iter().all(|&(x, y, z)| is_admissible(x, y, z)) {
        return Surd::zero();
    }
    let frame = WIndexFrame::from_sextuple(s);
    let mut delta2 = FactoredRational::one();
    for (x, y, z) in s.triples() {
        delta2 *= &triangle_delta_sq(x, y, z).expect("triples checked admissible");
    }
    w_from_frame(&frame.alpha, &frame.beta, &delta2, s.a + s.b + s.c + s.d)
}

/// Evaluate the admissible-case formula on a given frame. `alpha` may be in
/// any order and `beta[1], beta[2]` in either order; `beta[0]` must be the
/// minimum. The permutation freedom is exercised by tests, not assumed.
fn w_from_frame(
    alpha: &[HalfInt; 4],
    beta: &[HalfInt; 3],
    delta2: &FactoredRational,
    abcd: HalfInt,
) -> Surd {
    let beta1 = beta[0];
    let as_int = |x: HalfInt, what: &str| -> u64 {
        x.as_nonneg_integer().unwrap_or_else(|| {
            panic!("internal error: {what} = {x} must be a nonnegative integer under admissibility")
        })
    };
    let beta1_int = as_int(beta1, "beta_1");
    let alpha_gaps = alpha.map(|al| as_int(beta1 - al, "beta_1 - alpha_i"));
    let beta_gaps = [beta[1], beta[2]].map(|bt| as_int(bt - beta1, "beta_i - beta_1"));

    // (-1)^(beta_1 - (a+b+c+d)); integrality is the half-integer bookkeeping
    // invariant, so a violation aborts rather than mis-signing.
    let sign = (beta1 - abcd).phase();

    let mut prefactor = factored_factorial(beta1_int + 1);
    for g in beta_gaps {
        prefactor /= &factored_factorial(g);
    }
    for g in alpha_gaps {
        prefactor /= &factored_factorial(g);
    }

    let params = HypParams::new(
        [
            (alpha[0] - beta1).to_rational(),
            (alpha[1] - beta1).to_rational(),
            (alpha[2] - beta1).to_rational(),
            (alpha[3] - beta1).to_rational(),
        ],
        [
            (-beta1 - HalfInt::from_int(1)).to_rational(),
            (beta[1] - beta1 + HalfInt::from_int(1)).to_rational(),
            (beta[2] - beta1 + HalfInt::from_int(1)).to_rational(),
        ],
    );
    let hyp = eval_4f3_unit(&params)
        .expect("the Racah 4F3 is always evaluable for admissible spins");

    let root = sqrt_to_surd(delta2).expect("triangle-coefficient products are nonnegative");
    root.scale(&(prefactor.to_rational() * hyp * int_rat(sign)))
}

/// Closed form for the quarter-spin Racah coefficient
/// `W(D/2, D/2, D/2, D/2; i, j) = (-1)^(i+j-D)/(D+1) · ₄F₃[-i,i+1,-j,j+1; 1,D+2,-D; 1]`.
pub fn w_quarter_closed(d: u64, i: u64, j: u64) -> Result<BigRational, RacahError> {
    if d < 1 || i > d || j > d {
        return Err(RacahError::IndexOutOfRange(format!(
            "need 1 <= D and 0 <= i, j <= D; got D={d}, i={i}, j={j}"
        )));
    }
    let (d, i, j) = (d as i64, i as i64, j as i64);
    let params = HypParams::from_i64([-i, i + 1, -j, j + 1], [1, d + 2, -d]);
    let hyp = eval_4f3_unit(&params).expect("Kresch-Tamvakis parameters are evaluable");
    Ok(hyp * BigRational::new(int_phase(i + j - d).into(), (d + 1).into()))
}

/// LHS minus RHS of the Biedenharn-Elliott identity
///
/// ```text
/// Σ_d (-1)^(c+c'-d) (2d+1) W(b,b',c,c';d,e) W(a,a',c,c';d,f) W(a,a',b,b';d,g)
///   = (-1)^(e+f-g) W(a,b,f,e;g,c) W(a',b',f,e;g,c')
/// ```
///
/// as an exact [`SurdSum`]. The sum over d walks the finite window allowed by
/// the triangle bounds of the pairs (a,a'), (b,b'), (c,c'), stepping by 1;
/// outside that window (or when the pair sums disagree in parity) every term
/// carries a vanishing `W`.
#[allow(clippy::too_many_arguments)]
pub fn be_residual(
    a: HalfInt,
    a_p: HalfInt,
    b: HalfInt,
    b_p: HalfInt,
    c: HalfInt,
    c_p: HalfInt,
    e: HalfInt,
    f: HalfInt,
    g: HalfInt,
) -> SurdSum {
    let w = |a, b, c, d, e, f| {
        racah_w(&SpinSextuple::new(a, b, c, d, e, f).expect("spins nonnegative"))
    };

    let mut lhs = SurdSum::zero();
    let pair_sums = [a + a_p, b + b_p, c + c_p];
    let parity_consistent = pair_sums
        .iter()
        .all(|s| s.twice() % 2 == pair_sums[0].twice() % 2);
    if parity_consistent {
        let lo = [(a - a_p).abs(), (b - b_p).abs(), (c - c_p).abs()]
            .into_iter()
            .max()
            .unwrap();
        let hi = pair_sums.into_iter().min().unwrap();
        let mut d = lo;
        while d <= hi {
            let w1 = w(b, b_p, c, c_p, d, e);
            let w2 = w(a, a_p, c, c_p, d, f);
            let w3 = w(a, a_p, b, b_p, d, g);
            if !(w1.is_zero() || w2.is_zero() || w3.is_zero()) {
                let weight = int_rat(d.twice() + 1) * int_rat((c + c_p - d).phase());
                lhs.add_surd(&w1.mul(&w2).mul(&w3).scale(&weight));
            }
            d = d + HalfInt::from_int(1);
        }
    }

    let mut rhs = SurdSum::zero();
    let w1 = w(a, b, f, e, g, c);
    let w2 = w(a_p, b_p, f, e, g, c_p);
    if !(w1.is_zero() || w2.is_zero()) {
        rhs.add_surd(&w1.mul(&w2).scale(&int_rat((e + f - g).phase())));
    }

    lhs.sub(&rhs)
}
