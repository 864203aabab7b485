//! Coercion-based D blame tracking: EDC (partially eager) and LDC (lazy).

use crate::calculi::coercion::{Allowed, Coercion};
use crate::cc::eta::eta;
use crate::cc::step::inert_parts;
use crate::cc::term::Term;
use crate::discipline::{BlameSafe, CastStruct, Class, Discipline, Field, Mode};
use crate::types::{consistent, Consistency, Head, Label, Type};

/// Builds a coercion from a consistency proof. The domain of a function
/// coercion carries the complemented label.
pub fn coerce_edc(p: &Consistency, l: Label) -> Coercion {
    match p {
        Consistency::UnkL(b) if b.is_dyn() => Coercion::Id(Type::Unknown),
        Consistency::UnkL(b) => Coercion::Proj(b.clone(), l),
        Consistency::UnkR(a) if a.is_dyn() => Coercion::Id(Type::Unknown),
        Consistency::UnkR(a) => Coercion::Inj(a.clone()),
        Consistency::Base(b) => Coercion::Id(Type::Base(*b)),
        Consistency::Fun(d1, d2) => Coercion::fun(coerce_edc(d1, l.complement()), coerce_edc(d2, l)),
        Consistency::Pair(d1, d2) => Coercion::pair(coerce_edc(d1, l), coerce_edc(d2, l)),
        Consistency::Sum(d1, d2) => Coercion::sum(coerce_edc(d1, l), coerce_edc(d2, l)),
    }
}

/// The lazy cast constructor: only heads are compared, and a mismatch
/// anywhere becomes a failure coercion at that position.
pub fn coerce_ldc(a: &Type, b: &Type, l: Label) -> Coercion {
    match (a, b) {
        (Type::Unknown, Type::Unknown) => Coercion::Id(Type::Unknown),
        (Type::Unknown, _) => Coercion::Proj(b.clone(), l),
        (_, Type::Unknown) => Coercion::Inj(a.clone()),
        (Type::Base(x), Type::Base(y)) if x == y => Coercion::Id(a.clone()),
        _ => match (a.split(), b.split()) {
            (Some((h, a1, a2)), Some((h2, b1, b2))) if h == h2 => {
                let first = match h {
                    Head::Fun => coerce_ldc(b1, a1, l.complement()),
                    _ => coerce_ldc(a1, b1, l),
                };
                Coercion::compound(h, first, coerce_ldc(a2, b2, l))
            }
            _ => Coercion::Fail(l, a.clone(), b.clone()),
        },
    }
}

const EDC_FORMS: Allowed = Allowed { seq: false, fail: false, ground_only: false };
const LDC_FORMS: Allowed = Allowed { seq: false, fail: true, ground_only: false };

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Edc;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Ldc;

/// Only injections are inert; everything else, failures included, is active.
fn classify(c: &Coercion) -> Class {
    match c {
        Coercion::Inj(_) => Class::Inert,
        _ => Class::Active,
    }
}

impl Discipline for Edc {
    type Cast = Coercion;
    const NAME: &'static str = "edc";

    fn source(c: &Coercion) -> Type {
        c.source()
    }
    fn target(c: &Coercion) -> Type {
        c.target()
    }
    fn well_formed(c: &Coercion) -> Result<(), String> {
        c.check(EDC_FORMS)
    }
    fn make_cast(a: &Type, b: &Type, l: Label) -> Coercion {
        let p = consistent(a, b).unwrap_or_else(|| panic!("make_cast: {a} and {b} are inconsistent"));
        coerce_edc(&p, l)
    }
    fn classify(c: &Coercion) -> Class {
        classify(c)
    }
    fn cross(c: &Coercion) -> Option<Head> {
        c.cross()
    }
    fn decompose(c: &Coercion, f: Field) -> Coercion {
        c.decompose(f)
    }
}

impl Discipline for Ldc {
    type Cast = Coercion;
    const NAME: &'static str = "ldc";

    fn source(c: &Coercion) -> Type {
        c.source()
    }
    fn target(c: &Coercion) -> Type {
        c.target()
    }
    fn well_formed(c: &Coercion) -> Result<(), String> {
        c.check(LDC_FORMS)
    }
    fn make_cast(a: &Type, b: &Type, l: Label) -> Coercion {
        coerce_ldc(a, b, l)
    }
    fn classify(c: &Coercion) -> Class {
        classify(c)
    }
    fn cross(c: &Coercion) -> Option<Head> {
        c.cross()
    }
    fn decompose(c: &Coercion, f: Field) -> Coercion {
        c.decompose(f)
    }
}

fn injected<D: Discipline<Cast = Coercion>>(v: &Term<D>, mode: Mode) -> (&Term<D>, &Type) {
    match inert_parts(v, mode) {
        Some((w, Coercion::Inj(a))) => (w, a),
        _ => panic!("projection from a value that is not an injection: {v}"),
    }
}

impl CastStruct for Edc {
    fn apply_cast(v: Term<Self>, c: &Coercion, mode: Mode) -> Term<Self> {
        match c {
            Coercion::Id(_) => v,
            Coercion::Proj(b, l) => {
                let (w, a) = injected(&v, mode);
                match consistent(a, b) {
                    Some(p) => Term::cast(w.clone(), coerce_edc(&p, *l)),
                    None => Term::Blame(*l, b.clone()),
                }
            }
            Coercion::Fun(..) | Coercion::Pair(..) | Coercion::Sum(..) => eta(&v, c, mode),
            _ => panic!("apply_cast: {c} is not an active EDC coercion"),
        }
    }
}

impl CastStruct for Ldc {
    fn apply_cast(v: Term<Self>, c: &Coercion, mode: Mode) -> Term<Self> {
        match c {
            Coercion::Id(_) => v,
            Coercion::Proj(b, l) => {
                let (w, a) = injected(&v, mode);
                Term::cast(w.clone(), coerce_ldc(a, b, *l))
            }
            Coercion::Fun(..) | Coercion::Pair(..) | Coercion::Sum(..) => eta(&v, c, mode),
            Coercion::Fail(l, _, b) => Term::Blame(*l, b.clone()),
            _ => panic!("apply_cast: {c} is not an active LDC coercion"),
        }
    }
}

impl BlameSafe for Edc {
    fn cast_blame_safe(c: &Coercion, l: Label) -> bool {
        c.blame_safe_complemented(l)
    }
}

impl BlameSafe for Ldc {
    fn cast_blame_safe(c: &Coercion, l: Label) -> bool {
        c.blame_safe_complemented(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Dyn;

    fn l(n: i64) -> Label {
        Label::new(n)
    }

    #[test]
    fn coerce_examples() {
        let p = consistent(&Type::nat(), &Type::nat()).unwrap();
        assert_eq!(coerce_edc(&p, l(1)), Coercion::Id(Type::nat()));
        let p = consistent(&Type::nat(), &Dyn).unwrap();
        assert_eq!(coerce_edc(&p, l(1)), Coercion::Inj(Type::nat()));
        let p = consistent(&Type::fun(Type::nat(), Type::bool()), &Type::fun(Dyn, Type::bool())).unwrap();
        assert_eq!(
            coerce_edc(&p, l(1)),
            Coercion::fun(Coercion::Proj(Type::nat(), l(-1)), Coercion::Id(Type::bool()))
        );
    }

    #[test]
    fn lazy_coerce_examples() {
        assert_eq!(coerce_ldc(&Type::nat(), &Type::bool(), l(1)), Coercion::Fail(l(1), Type::nat(), Type::bool()));
        let ff = coerce_ldc(&Type::fun(Type::nat(), Type::nat()), &Type::fun(Type::bool(), Type::nat()), l(1));
        assert_eq!(
            ff,
            Coercion::fun(Coercion::Fail(l(-1), Type::bool(), Type::nat()), Coercion::Id(Type::nat()))
        );
        assert_eq!(coerce_ldc(&Dyn, &Type::int(), l(1)), Coercion::Proj(Type::int(), l(1)));
    }

    #[test]
    fn classification() {
        assert_eq!(Edc::classify(&Coercion::Inj(Type::nat())), Class::Inert);
        assert_eq!(Ldc::classify(&Coercion::Fail(l(1), Dyn, Type::nat())), Class::Active);
        assert!(Edc::well_formed(&Coercion::Fail(l(1), Dyn, Type::nat())).is_err());
    }
}
