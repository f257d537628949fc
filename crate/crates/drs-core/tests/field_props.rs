//! Field axioms and structural properties of the GF(2^m) arithmetic.

use proptest::prelude::*;

use drs_core::{FieldElement, FieldSpec};

fn spec_and_elements() -> impl Strategy<Value = (FieldSpec, FieldElement, FieldElement, FieldElement)>
{
    (2u32..=10)
        .prop_map(|m| FieldSpec::new(m).unwrap())
        .prop_flat_map(|spec| {
            let q = spec.q();
            (Just(spec), 0..q, 0..q, 0..q)
        })
        .prop_map(|(spec, a, b, c)| {
            let a = spec.element(a as u64).unwrap();
            let b = spec.element(b as u64).unwrap();
            let c = spec.element(c as u64).unwrap();
            (spec, a, b, c)
        })
}

proptest! {
    #[test]
    fn add_commutes_and_associates((spec, a, b, c) in spec_and_elements()) {
        prop_assert_eq!(spec.add(a, b), spec.add(b, a));
        prop_assert_eq!(spec.add(spec.add(a, b), c), spec.add(a, spec.add(b, c)));
    }

    #[test]
    fn mul_commutes_and_associates((spec, a, b, c) in spec_and_elements()) {
        prop_assert_eq!(spec.mul(a, b), spec.mul(b, a));
        prop_assert_eq!(spec.mul(spec.mul(a, b), c), spec.mul(a, spec.mul(b, c)));
    }

    #[test]
    fn mul_distributes_over_add((spec, a, b, c) in spec_and_elements()) {
        prop_assert_eq!(
            spec.mul(a, spec.add(b, c)),
            spec.add(spec.mul(a, b), spec.mul(a, c))
        );
    }
}

#[test]
fn characteristic_two_and_inverses_exhaustive() {
    for m in 1..=8u32 {
        let spec = FieldSpec::new(m).unwrap();
        for a in spec.elements() {
            assert_eq!(spec.add(a, a), FieldElement::ZERO);
            if !a.is_zero() {
                assert_eq!(spec.mul(a, spec.inv(a).unwrap()), FieldElement::ONE);
            }
        }
    }
}

#[test]
fn alpha_has_full_multiplicative_order() {
    for m in 1..=16u32 {
        let spec = FieldSpec::new(m).unwrap();
        let alpha = spec.alpha();
        for e in 1..spec.order() {
            assert_ne!(
                spec.pow(alpha, e as i64).unwrap(),
                FieldElement::ONE,
                "m={m}, a^{e} = 1 before the group order"
            );
        }
        assert_eq!(spec.pow(alpha, spec.order() as i64).unwrap(), FieldElement::ONE);
    }
}

#[test]
fn discrete_log_power_roundtrip_exhaustive() {
    for m in 1..=8u32 {
        let spec = FieldSpec::new(m).unwrap();
        for a in spec.elements().skip(1) {
            let e = spec.discrete_log(a).unwrap();
            assert!(e < spec.order());
            assert_eq!(spec.element_from_power(e), a);
        }
    }
}
