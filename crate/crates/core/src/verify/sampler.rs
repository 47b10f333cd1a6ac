//! Deterministic sampling for the Biedenharn-Elliott and Whipple campaigns.
//!
//! The generator is ChaCha20 with 64-bit seeding, values drawn as
//! `next_u64 mod n`; the algorithm identifier is recorded in every report so
//! campaigns can be reproduced across implementations.

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::exact::HalfInt;
use crate::hyper::{
    lowers_nonvanishing_through, termination_index, whipple_transform, HypParams, WhippleRoles,
};

/// Identifier recorded in reports for the pseudo-random stream.
pub const RNG_ALGORITHM: &str = "chacha20";

/// Deterministic sample stream description: same spec, same stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    pub seed: u64,
    pub count: u64,
    pub max_twice_spin: i64,
}

pub(crate) struct Sampler {
    rng: ChaCha20Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha20Rng::seed_from_u64(seed) }
    }

    fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.rng.next_u64() % n
    }

    fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// A spin compatible with the pair `(x, y)` (twice-values): drawn from
    /// the triangle window `|x-y| ..= x+y` with the right parity, clamped to
    /// the configured maximum. Degenerate windows fall back to a uniform
    /// draw, which simply produces vanishing-W terms.
    fn compatible_third(&mut self, x: i64, y: i64, max_twice: i64) -> i64 {
        let lo = (x - y).abs();
        let hi = (x + y).min(max_twice);
        if hi < lo {
            return self.range_i64(0, max_twice);
        }
        let steps = (hi - lo) / 2 + 1;
        lo + 2 * self.below(steps as u64) as i64
    }

    /// A 9-tuple (a, a', b, b', c, c', e, f, g) of twice-values, biased
    /// toward admissible configurations: e, f, g are built constructively
    /// from the pairs they couple, with an occasional fully uniform draw to
    /// keep degenerate configurations in the stream.
    pub fn be_tuple(&mut self, max_twice_spin: i64) -> [HalfInt; 9] {
        let m = max_twice_spin;
        let pick = |s: &mut Self| s.range_i64(0, m);
        let a = pick(self);
        let a_p = pick(self);
        let b = pick(self);
        let b_p = pick(self);
        let c = pick(self);
        let c_p = pick(self);
        let uniform = self.below(8) == 0;
        let (e, f, g) = if uniform {
            (pick(self), pick(self), pick(self))
        } else {
            (
                self.compatible_third(b, c, m),
                self.compatible_third(a, c, m),
                self.compatible_third(a, b, m),
            )
        };
        [a, a_p, b, b_p, c, c_p, e, f, g].map(HalfInt::from_twice)
    }

    /// A balanced Whipple instance on which the identity is exact: the lower
    /// parameters of both sides stay nonvanishing through the full pivot
    /// range `n <= p`, not just through the (possibly earlier) termination
    /// index. Candidates are drawn until one passes; the rejection loop is
    /// part of the deterministic stream.
    pub fn whipple_instance(&mut self) -> (HypParams, WhippleRoles) {
        let roles = WhippleRoles { neg_p_slot: 0, q_slot: 1, r_slot: 0 };
        loop {
            let p = self.below(5) as i64;
            let q = self.range_i64(-5, 5);
            let a1 = self.range_i64(-5, 5);
            let a2 = self.range_i64(-5, 5);
            let r = self.range_i64(-5, 5);
            let b1 = self.range_i64(-5, 5);
            let b2 = q + a1 + a2 + 1 - r - b1 - p;
            let params = HypParams::from_i64([-p, q, a1, a2], [r, b1, b2]);
            let valid = whipple_transform(&params, &roles)
                .ok()
                .map(|(_, transformed)| {
                    lowers_nonvanishing_through(&params, p as u64)
                        && lowers_nonvanishing_through(&transformed, p as u64)
                        && termination_index(&params).is_ok()
                })
                .unwrap_or(false);
            if valid {
                return (params, roles);
            }
        }
    }
}
