use proptest::prelude::*;

use castkit::calculi::{Eda, Edc, Edi, LambdaB1, LambdaB2, LambdaC, Ldc};
use castkit::discipline::{BlameSafe, Class, Composable, Discipline, Field};
use castkit::eff::{Hyper, LambdaS};
use castkit::types::{Dyn, Head, Label, Type};

fn arb_type() -> impl Strategy<Value = Type> {
    let leaf = prop_oneof![Just(Type::nat()), Just(Type::int()), Just(Type::bool()), Just(Type::unit())];
    leaf.prop_recursive(2, 16, 2, |inner| {
        (prop_oneof![Just(Head::Fun), Just(Head::Pair), Just(Head::Sum)], inner.clone(), inner)
            .prop_map(|(h, a, b)| Type::compound(h, a, b))
    })
}

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

fn mask() -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(prop::bool::weighted(0.3), 32)
}

/// Three loosenings of one static type, hence pairwise consistent.
fn arb_chain() -> impl Strategy<Value = (Type, Type, Type)> {
    (arb_type(), mask(), mask(), mask()).prop_map(|(t, m1, m2, m3)| {
        (loosen(&t, &mut m1.into_iter()), loosen(&t, &mut m2.into_iter()), loosen(&t, &mut m3.into_iter()))
    })
}

fn arb_label() -> impl Strategy<Value = Label> {
    (1i64..4, any::<bool>()).prop_map(|(n, neg)| Label::new(if neg { -n } else { n }))
}

fn fields(h: Head) -> [Field; 2] {
    let (f, g) = Field::of_head(h);
    [f, g]
}

/// Endpoints, the classification lemmas and closure of blame safety under
/// decomposition.
fn check_cast<D: BlameSafe>(a: &Type, b: &Type, l: Label, l2: Label) -> Result<(), TestCaseError> {
    let c = D::make_cast(a, b, l);
    prop_assert_eq!((D::source(&c), D::target(&c)), (a.clone(), b.clone()), "{}: {}", D::NAME, c);
    prop_assert!(D::well_formed(&c).is_ok(), "{}: {} ill-formed", D::NAME, c);
    if let Type::Base(_) = b {
        prop_assert_eq!(D::classify(&c), Class::Active, "{}: inert cast {} into a base type", D::NAME, c);
    }
    if D::is_inert(&c) {
        if let Some(h) = b.head() {
            prop_assert_eq!(D::cross(&c), Some(h), "{}: inert {} is not a cross cast", D::NAME, c);
            prop_assert_eq!(a.head(), Some(h));
        }
    }
    if let Some(h) = D::cross(&c) {
        prop_assert_eq!(a.head(), Some(h));
        if D::cast_blame_safe(&c, l2) {
            for f in fields(h) {
                let part = D::decompose(&c, f);
                prop_assert!(D::cast_blame_safe(&part, l2), "{}: {:?} of {} is unsafe for {}", D::NAME, f, c, l2);
            }
        }
    }
    Ok(())
}

/// Composition and the height and size lemmas on a chain of two casts.
fn check_composition<D: Composable>(a: &Type, b: &Type, c: &Type, l: Label) -> Result<(), TestCaseError> {
    let k = D::SIZE_HEIGHT_K;
    let (x, y) = (D::make_cast(a, b, l), D::make_cast(b, c, l.complement()));
    let z = D::compose(&x, &y);
    prop_assert_eq!((D::source(&z), D::target(&z)), (a.clone(), c.clone()), "{}: {} ; {} = {}", D::NAME, x, y, z);
    prop_assert!(D::well_formed(&z).is_ok(), "{}: {} ill-formed", D::NAME, z);
    prop_assert!(D::height(&z) <= D::height(&x).max(D::height(&y)), "{}: {} ; {} = {}", D::NAME, x, y, z);
    for e in [&x, &y, &z] {
        prop_assert!(D::size(e) + 5 <= k << D::height(e), "{}: size of {}", D::NAME, e);
        if let Some(h) = D::cross(e) {
            for f in fields(h) {
                prop_assert!(D::height(&D::decompose(e, f)) <= D::height(e), "{}: {:?} of {}", D::NAME, f, e);
            }
        }
    }
    // Composition with identities on either side changes nothing observable.
    let id_a = D::make_cast(a, a, l);
    prop_assert_eq!(D::compose(&id_a, &x), x.clone(), "{}: left identity", D::NAME);
    let id_b = D::make_cast(b, b, l);
    prop_assert_eq!(D::compose(&x, &id_b), x, "{}: right identity", D::NAME);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn plain_cast_lemmas((a, b, _) in arb_chain(), l in arb_label(), l2 in arb_label()) {
        check_cast::<Eda>(&a, &b, l, l2)?;
        check_cast::<Edi>(&a, &b, l, l2)?;
        check_cast::<LambdaB1>(&a, &b, l, l2)?;
        check_cast::<LambdaB2>(&a, &b, l, l2)?;
        check_cast::<Edc>(&a, &b, l, l2)?;
        check_cast::<Ldc>(&a, &b, l, l2)?;
        check_cast::<LambdaC>(&a, &b, l, l2)?;
    }

    #[test]
    fn composition_lemmas((a, b, c) in arb_chain(), l in arb_label()) {
        check_composition::<LambdaS>(&a, &b, &c, l)?;
        check_composition::<Hyper>(&a, &b, &c, l)?;
    }

    #[test]
    fn composition_is_associative((a, b, c) in arb_chain(), d in mask(), l in arb_label()) {
        let t = loosen(&c, &mut d.into_iter());
        let x = LambdaS::make_cast(&a, &b, l);
        let y = LambdaS::make_cast(&b, &c, l.complement());
        let z = LambdaS::make_cast(&c, &t, l);
        prop_assert_eq!(
            LambdaS::compose(&LambdaS::compose(&x, &y), &z),
            LambdaS::compose(&x, &LambdaS::compose(&y, &z))
        );
        let x = Hyper::make_cast(&a, &b, l);
        let y = Hyper::make_cast(&b, &c, l.complement());
        let z = Hyper::make_cast(&c, &t, l);
        prop_assert_eq!(Hyper::compose(&Hyper::compose(&x, &y), &z), Hyper::compose(&x, &Hyper::compose(&y, &z)));
    }
}
