//! Exact computational machinery for Racah polynomials, Racah coefficients,
//! and the self-dual Racah-type Leonard pair, together with verification
//! campaigns for the identities that connect them: the Whipple
//! transformation, the Biedenharn-Elliott identity, and the Kresch-Tamvakis
//! bound on terminating 4F3 series.
//!
//! All arithmetic is exact. Rational quantities live in [`exact::BigRational`],
//! square roots of rationals in [`exact::Surd`], and finite sums of those in
//! [`exact::SurdSum`]. No floating point enters any comparison; decimal
//! approximations exist only for display.

pub mod exact;
pub mod hyper;
pub mod intersection;
mod intmat;
pub mod leonard;
pub mod racah;
pub mod verify;

pub use exact::{BigRational, FactoredRational, HalfInt, Surd, SurdSum};
pub use leonard::{RacahSystem, RationalMatrix};

#[cfg(test)]
mod concurrency_contract {
    use super::*;

    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn shared_types_are_send_and_sync() {
        assert_send_sync::<BigRational>();
        assert_send_sync::<HalfInt>();
        assert_send_sync::<FactoredRational>();
        assert_send_sync::<Surd>();
        assert_send_sync::<SurdSum>();
        assert_send_sync::<hyper::HypParams>();
        assert_send_sync::<racah::SpinSextuple>();
        assert_send_sync::<RacahSystem>();
        assert_send_sync::<RationalMatrix>();
        assert_send_sync::<intersection::IntersectionTensor>();
        assert_send_sync::<verify::VerificationReport>();
    }

    #[test]
    fn systems_build_concurrently_without_coordination() {
        use intersection::TensorRoute;
        let handles: Vec<_> = (1..=8)
            .map(|d| {
                std::thread::spawn(move || {
                    let sys = RacahSystem::new(d).unwrap();
                    let t = intersection::MatrixRoute.compute(&sys);
                    (sys.matrix_p(), t)
                })
            })
            .collect();
        for (d, h) in (1..=8usize).zip(handles) {
            let (p, t) = h.join().unwrap();
            assert_eq!(p.order(), d + 1);
            assert_eq!(t.d(), d);
        }
    }
}
