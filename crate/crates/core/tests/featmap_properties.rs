//! Property tests for the sparse feature algebra: algebraic laws plus
//! equivalence with a dense elementwise oracle over the union of names.

use std::collections::BTreeMap;

use proptest::prelude::*;
use streamml::{FeatureName, FeatureVector};

fn to_vector(entries: &BTreeMap<String, f64>) -> FeatureVector {
    FeatureVector::from_numeric(entries.iter().map(|(n, v)| (n.clone(), *v))).unwrap()
}

fn real_map() -> impl Strategy<Value = BTreeMap<String, f64>> {
    proptest::collection::btree_map("[a-f]", -10.0..10.0f64, 0..6)
}

fn integer_map() -> impl Strategy<Value = BTreeMap<String, f64>> {
    proptest::collection::btree_map("[a-f]", (-50i32..50).prop_map(f64::from), 0..6)
}

fn nonzero_map() -> impl Strategy<Value = BTreeMap<String, f64>> {
    proptest::collection::btree_map("[a-f]", prop_oneof![0.5..10.0f64, -10.0..-0.5f64], 0..6)
}

/// Dense oracle: densify both operands over the union of names with zero
/// fill, apply `op` elementwise, and read the sparse result with a zero
/// default. `keep` filters which union entries the sparse result is
/// expected to materialize.
fn check_against_dense(
    a: &BTreeMap<String, f64>,
    b: &BTreeMap<String, f64>,
    result: &FeatureVector,
    op: impl Fn(f64, f64) -> f64,
    keep: impl Fn(bool, bool) -> bool,
) {
    let mut names: Vec<&String> = a.keys().chain(b.keys()).collect();
    names.sort();
    names.dedup();
    for name in names {
        let in_a = a.contains_key(name);
        let in_b = b.contains_key(name);
        let dense = op(
            a.get(name).copied().unwrap_or(0.0),
            b.get(name).copied().unwrap_or(0.0),
        );
        let key = FeatureName::new(name.clone()).unwrap();
        let sparse = result.numeric(&key).unwrap();
        if keep(in_a, in_b) {
            let got = sparse.expect("entry must be materialized");
            assert!(
                (got - dense).abs() <= 1e-12 * dense.abs().max(1.0),
                "{name}: sparse {got} vs dense {dense}"
            );
        } else {
            assert_eq!(sparse, None, "{name} must not be materialized");
            assert_eq!(dense, 0.0, "dropped entries are semantically zero");
        }
    }
}

proptest! {
    #[test]
    fn addition_is_commutative(a in real_map(), b in real_map()) {
        let (va, vb) = (to_vector(&a), to_vector(&b));
        prop_assert_eq!(va.add(&vb).unwrap(), vb.add(&va).unwrap());
    }

    #[test]
    fn addition_is_associative_exactly_on_integers(
        a in integer_map(), b in integer_map(), c in integer_map()
    ) {
        let (va, vb, vc) = (to_vector(&a), to_vector(&b), to_vector(&c));
        let left = va.add(&vb).unwrap().add(&vc).unwrap();
        let right = va.add(&vb.add(&vc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn addition_is_associative_within_tolerance_on_reals(
        a in real_map(), b in real_map(), c in real_map()
    ) {
        let (va, vb, vc) = (to_vector(&a), to_vector(&b), to_vector(&c));
        let left = va.add(&vb).unwrap().add(&vc).unwrap();
        let right = va.add(&vb.add(&vc).unwrap()).unwrap();
        for (name, value) in left.iter() {
            let l = value.as_numeric().unwrap();
            let r = right.numeric(name).unwrap().expect("same name sets");
            prop_assert!((l - r).abs() <= 1e-12);
        }
        prop_assert_eq!(left.len(), right.len());
    }

    #[test]
    fn dot_is_symmetric(a in real_map(), b in real_map()) {
        let (va, vb) = (to_vector(&a), to_vector(&b));
        prop_assert_eq!(va.dot(&vb).unwrap(), vb.dot(&va).unwrap());
    }

    #[test]
    fn dot_distributes_over_addition(
        a in real_map(), b in real_map(), c in real_map()
    ) {
        let (va, vb, vc) = (to_vector(&a), to_vector(&b), to_vector(&c));
        let lhs = va.dot(&vb.add(&vc).unwrap()).unwrap();
        let rhs = va.dot(&vb).unwrap() + va.dot(&vc).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9, "lhs {lhs} rhs {rhs}");
    }

    #[test]
    fn add_matches_dense_oracle(a in real_map(), b in real_map()) {
        let result = to_vector(&a).add(&to_vector(&b)).unwrap();
        check_against_dense(&a, &b, &result, |x, y| x + y, |ia, ib| ia || ib);
    }

    #[test]
    fn sub_matches_dense_oracle(a in real_map(), b in real_map()) {
        let result = to_vector(&a).sub(&to_vector(&b)).unwrap();
        check_against_dense(&a, &b, &result, |x, y| x - y, |ia, ib| ia || ib);
    }

    #[test]
    fn mul_matches_dense_oracle(a in real_map(), b in real_map()) {
        let result = to_vector(&a).mul(&to_vector(&b)).unwrap();
        // entries outside the intersection multiply an implicit zero
        check_against_dense(&a, &b, &result, |x, y| x * y, |ia, ib| ia && ib);
    }

    #[test]
    fn div_matches_dense_oracle_on_shared_names(
        a in real_map(), b in nonzero_map()
    ) {
        let result = to_vector(&a).div(&to_vector(&b)).unwrap();
        for (name, denominator) in &b {
            if let Some(numerator) = a.get(name) {
                let key = FeatureName::new(name.clone()).unwrap();
                let got = result.numeric(&key).unwrap().expect("shared name");
                let dense = numerator / denominator;
                prop_assert!((got - dense).abs() <= 1e-12 * dense.abs().max(1.0));
            }
        }
        prop_assert_eq!(
            result.len(),
            a.keys().filter(|n| b.contains_key(*n)).count()
        );
    }

    #[test]
    fn dot_matches_dense_oracle(a in real_map(), b in real_map()) {
        let got = to_vector(&a).dot(&to_vector(&b)).unwrap();
        let dense: f64 = a
            .iter()
            .map(|(name, x)| x * b.get(name).copied().unwrap_or(0.0))
            .sum();
        prop_assert!((got - dense).abs() <= 1e-9, "got {got} dense {dense}");
    }

    #[test]
    fn pow_matches_dense_oracle_on_positive_values(
        a in proptest::collection::btree_map("[a-f]", 0.1..10.0f64, 0..6),
        exponent in -2.0..3.0f64
    ) {
        let result = to_vector(&a).powf(exponent).unwrap();
        for (name, base) in &a {
            let key = FeatureName::new(name.clone()).unwrap();
            let got = result.numeric(&key).unwrap().unwrap();
            let dense = base.powf(exponent);
            prop_assert!((got - dense).abs() <= 1e-12 * dense.abs().max(1.0));
        }
    }
}
