//! Polynomial properties: vanishing sets, the cyclically-consecutive-roots
//! weight bound, and argument-scaling inverses.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use drs_core::{FieldElement, FieldSpec, Polynomial};

proptest! {
    #[test]
    fn vanishing_is_monic_with_expected_roots(
        m in 2u32..=8,
        raw_indices in proptest::collection::btree_set(1usize..=64, 0..6)
    ) {
        let spec = FieldSpec::new(m).unwrap();
        let reduced: std::collections::BTreeSet<usize> =
            raw_indices.iter().map(|&i| i % spec.order()).collect();
        let p = Polynomial::vanishing(reduced.iter().copied(), &spec);
        prop_assert_eq!(p.degree(), Some(reduced.len()));
        prop_assert_eq!(*p.coeffs().last().unwrap(), FieldElement::ONE);
        for e in 0..spec.order() {
            let v = p.eval(&spec, spec.element_from_power(e));
            prop_assert_eq!(v.is_zero(), reduced.contains(&e));
        }
    }

    #[test]
    fn scale_arg_inverts(m in 2u32..=8, beta_log in 0usize..64, coeffs in proptest::collection::vec(0u64..256, 0..8)) {
        let spec = FieldSpec::new(m).unwrap();
        let beta = spec.element_from_power(beta_log);
        let p = Polynomial::from_coeffs(
            coeffs.iter().map(|&c| spec.element(c % spec.q() as u64).unwrap()).collect(),
        );
        let back = p
            .scale_arg(beta, &spec).unwrap()
            .scale_arg(spec.inv(beta).unwrap(), &spec).unwrap();
        prop_assert_eq!(back, p);
    }
}

/// A nonzero polynomial of degree < q-1 with t cyclically consecutive roots
/// has at least t+1 nonzero coefficients. Randomized over fields, run
/// positions, run lengths, and nonzero multipliers.
#[test]
fn consecutive_roots_force_weight() {
    let mut rng = ChaCha8Rng::seed_from_u64(20260808);
    for _ in 0..500 {
        let m = rng.random_range(2..=8u32);
        let spec = FieldSpec::new(m).unwrap();
        let order = spec.order();
        let t = rng.random_range(1..=order - 1);
        let start = rng.random_range(0..order);
        let run = Polynomial::vanishing((start + 1..=start + t).collect::<Vec<_>>(), &spec);
        // random nonzero multiplier keeping the product degree below q-1
        let max_extra = order - 1 - t;
        let extra = rng.random_range(0..=max_extra);
        let mut coeffs: Vec<FieldElement> =
            (0..=extra).map(|_| spec.random_element(&mut rng)).collect();
        let last = coeffs.last_mut().unwrap();
        if last.is_zero() {
            *last = spec.random_nonzero(&mut rng);
        }
        let multiplier = Polynomial::from_coeffs(coeffs);
        let product = run.mul(&multiplier, &spec);
        assert!(
            product.count_nonzero_coeffs() > t,
            "m={m} t={t} start={start}: weight {} < {}",
            product.count_nonzero_coeffs(),
            t + 1
        );
    }
}

#[test]
fn normalize_at_forces_unit_evaluation() {
    let spec = FieldSpec::new(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let roots: Vec<usize> = (0..4).map(|_| rng.random_range(1..=spec.order())).collect();
        let pivot = loop {
            let p = rng.random_range(1..=spec.order());
            if !roots.iter().any(|&r| r % spec.order() == p % spec.order()) {
                break p;
            }
        };
        let p = Polynomial::vanishing(roots, &spec).normalize_at(pivot, &spec).unwrap();
        assert_eq!(p.eval(&spec, spec.element_from_power(pivot)), FieldElement::ONE);
    }
}
