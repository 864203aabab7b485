use proptest::prelude::*;

use castkit::types::{consistent, enumerate_types, join, precision, Base, Dyn, Head, Label, Type};

fn arb_base() -> impl Strategy<Value = Type> {
    prop_oneof![
        Just(Type::nat()),
        Just(Type::int()),
        Just(Type::bool()),
        Just(Type::unit()),
        Just(Dyn),
    ]
}

/// Types of depth at most 3.
fn arb_type() -> impl Strategy<Value = Type> {
    arb_base().prop_recursive(2, 16, 2, |inner| {
        (prop_oneof![Just(Head::Fun), Just(Head::Pair), Just(Head::Sum)], inner.clone(), inner)
            .prop_map(|(h, a, b)| Type::compound(h, a, b))
    })
}

/// A type with some subtrees replaced by `?`.
fn loosen(t: &Type, mask: &mut impl Iterator<Item = bool>) -> Type {
    if mask.next().unwrap_or(false) {
        return Dyn;
    }
    match t.split() {
        Some((h, a, b)) => {
            let a = loosen(a, mask);
            Type::compound(h, a, loosen(b, mask))
        }
        None => t.clone(),
    }
}

fn arb_consistent_pair() -> impl Strategy<Value = (Type, Type)> {
    (arb_type(), prop::collection::vec(prop::bool::weighted(0.3), 32), prop::collection::vec(prop::bool::weighted(0.3), 32))
        .prop_map(|(t, m1, m2)| (loosen(&t, &mut m1.into_iter()), loosen(&t, &mut m2.into_iter())))
}

proptest! {
    #[test]
    fn consistency_is_reflexive_and_symmetric(a in arb_type(), b in arb_type()) {
        prop_assert!(consistent(&a, &a).is_some());
        prop_assert_eq!(consistent(&a, &b).is_some(), consistent(&b, &a).is_some());
    }

    #[test]
    fn consistency_proof_endpoints_match((a, b) in arb_consistent_pair()) {
        let p = consistent(&a, &b).expect("loosenings of one type are consistent");
        prop_assert_eq!(p.endpoints(), (a, b));
    }

    #[test]
    fn join_is_an_upper_bound((a, b) in arb_consistent_pair()) {
        let j = join(&consistent(&a, &b).unwrap());
        prop_assert!(precision(&a, &j), "{} not below {}", a, j);
        prop_assert!(precision(&b, &j), "{} not below {}", b, j);
    }

    #[test]
    fn precision_is_a_partial_order(a in arb_type(), b in arb_type(), c in arb_type()) {
        prop_assert!(precision(&a, &a));
        if precision(&a, &b) && precision(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        if precision(&a, &b) && precision(&b, &c) {
            prop_assert!(precision(&a, &c));
        }
    }

    #[test]
    fn precision_implies_consistency(a in arb_type(), b in arb_type()) {
        if precision(&a, &b) {
            prop_assert!(consistent(&a, &b).is_some());
        }
    }

    #[test]
    fn complement_is_an_involution(n in (1i64..1000).prop_union(-1000i64..-1)) {
        let l = Label::new(n);
        prop_assert_eq!(l.complement().complement(), l);
        prop_assert_ne!(l.complement(), l);
    }
}

#[test]
fn join_is_least_over_small_types() {
    let types = enumerate_types(&[Base::Nat, Base::Bool], 2);
    for a in &types {
        for b in &types {
            let Some(p) = consistent(a, b) else { continue };
            let j = join(&p);
            for c in types.iter().filter(|c| precision(a, c) && precision(b, c)) {
                assert!(precision(&j, c), "join {j} of {a} and {b} is not below {c}");
            }
        }
    }
}
