mod common;

use common::{norm, norm_valuation};
use cyclosum::{CycRing, Valuation, VerificationContext};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn norm_of_lambda_is_l() {
    for l in [3, 5, 7] {
        let ring = CycRing::new(l).unwrap();
        assert_eq!(norm(&ring, &ring.lambda()), BigInt::from(l));
        assert_eq!(norm(&ring, &ring.one()), BigInt::from(1));
        assert_eq!(norm(&ring, &ring.from_int(2)), BigInt::from(2).pow(ring.degree() as u32));
    }
}

#[test]
fn jacobi_sums_have_norm_q_to_half_degree() {
    let ctx = VerificationContext::new(19, 1, 3).unwrap();
    let ring = ctx.ring();
    let sums = ctx.sums();
    let expected = BigInt::from(19).pow(ring.degree() as u32 / 2);
    for n in 1..8 {
        let j = sums.jacobi_sum(9, 1, n).unwrap().value;
        assert_eq!(norm(ring, &j), expected, "n = {n}");
    }
}

#[test]
fn congruence_differences_agree_with_norm() {
    // v_λ(J + 1) from digit stripping matches the norm on the raw sums
    let ctx = VerificationContext::new(37, 1, 3).unwrap();
    let ring = ctx.ring();
    let sums = ctx.sums();
    for n in 1..8 {
        let diff = &sums.jacobi_sum(9, 1, n).unwrap().value + &ring.one();
        let oracle = norm_valuation(ring, &diff).expect("nonzero");
        assert_eq!(ring.lambda_valuation(&diff, 64), Valuation::Exact(oracle), "n = {n}");
        assert!(oracle >= 3);
    }
}

fn ring_and_coeffs() -> impl Strategy<Value = (u64, Vec<i64>, u32)> {
    prop_oneof![Just(3u64), Just(5u64)].prop_flat_map(|l| {
        let d = (l * (l - 1)) as usize;
        (Just(l), prop::collection::vec(-20i64..=20, d), 0u32..12)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valuation_matches_norm((l, coeffs, shift) in ring_and_coeffs()) {
        let ring = CycRing::new(l).unwrap();
        let base = ring.from_coeffs(coeffs);
        prop_assume!(!base.is_zero());
        let a = ring.mul(&base, &ring.pow(&ring.lambda(), shift));
        let oracle = norm_valuation(&ring, &a).unwrap();
        prop_assert!(oracle >= shift);
        prop_assert_eq!(ring.lambda_valuation(&a, 200), Valuation::Exact(oracle));
    }

    #[test]
    fn norm_is_multiplicative((l, x, _s) in ring_and_coeffs(), y in prop::collection::vec(-5i64..=5, 20)) {
        let ring = CycRing::new(l).unwrap();
        let a = ring.from_coeffs(x);
        let b = ring.from_coeffs(y.into_iter().take(ring.degree()));
        prop_assert_eq!(norm(&ring, &ring.mul(&a, &b)), norm(&ring, &a) * norm(&ring, &b));
    }
}
