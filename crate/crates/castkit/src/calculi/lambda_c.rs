//! λC: coercions with sequencing, injections and projections at ground
//! types only.

use crate::calculi::coercion::{Allowed, Coercion};
use crate::cc::eta::eta;
use crate::cc::step::inert_parts;
use crate::cc::term::Term;
use crate::discipline::{BlameSafe, CastStruct, Class, Discipline, Field, Mode};
use crate::types::{Head, Label, Type};

/// The cast constructor. Casts into and out of `?` factor through the
/// ground type of the other side.
pub fn coerce_lc(a: &Type, b: &Type, l: Label) -> Coercion {
    match (a, b) {
        (Type::Unknown, Type::Unknown) => Coercion::Id(Type::Unknown),
        (_, Type::Unknown) if a.is_ground() => Coercion::Inj(a.clone()),
        (_, Type::Unknown) => {
            let g = a.gnd();
            Coercion::seq(coerce_lc(a, &g, l), Coercion::Inj(g))
        }
        (Type::Unknown, _) if b.is_ground() => Coercion::Proj(b.clone(), l),
        (Type::Unknown, _) => {
            let h = b.gnd();
            Coercion::seq(Coercion::Proj(h.clone(), l), coerce_lc(&h, b, l))
        }
        (Type::Base(x), Type::Base(y)) if x == y => Coercion::Id(a.clone()),
        _ => match (a.split(), b.split()) {
            (Some((h, a1, a2)), Some((h2, b1, b2))) if h == h2 => {
                let first = match h {
                    Head::Fun => coerce_lc(b1, a1, l),
                    _ => coerce_lc(a1, b1, l),
                };
                Coercion::compound(h, first, coerce_lc(a2, b2, l))
            }
            _ => panic!("coerce: {a} and {b} are inconsistent"),
        },
    }
}

const FORMS: Allowed = Allowed { seq: true, fail: false, ground_only: true };

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LambdaC;

impl Discipline for LambdaC {
    type Cast = Coercion;
    const NAME: &'static str = "lambda-c";

    fn source(c: &Coercion) -> Type {
        c.source()
    }
    fn target(c: &Coercion) -> Type {
        c.target()
    }
    fn well_formed(c: &Coercion) -> Result<(), String> {
        c.check(FORMS)
    }
    fn make_cast(a: &Type, b: &Type, l: Label) -> Coercion {
        coerce_lc(a, b, l)
    }
    fn classify(c: &Coercion) -> Class {
        match c {
            Coercion::Inj(_) | Coercion::Fun(..) => Class::Inert,
            _ => Class::Active,
        }
    }
    fn cross(c: &Coercion) -> Option<Head> {
        c.cross()
    }
    fn decompose(c: &Coercion, f: Field) -> Coercion {
        c.decompose(f)
    }
}

impl CastStruct for LambdaC {
    fn apply_cast(v: Term<Self>, c: &Coercion, mode: Mode) -> Term<Self> {
        match c {
            Coercion::Id(_) => v,
            Coercion::Proj(h, l) => match inert_parts(&v, mode) {
                Some((w, Coercion::Inj(g))) if g == h => w.clone(),
                Some((_, Coercion::Inj(_))) => Term::Blame(*l, h.clone()),
                _ => panic!("projection from a value that is not an injection: {v}"),
            },
            Coercion::Seq(c1, c2) => Term::cast(Term::cast(v, (**c1).clone()), (**c2).clone()),
            Coercion::Pair(..) | Coercion::Sum(..) => eta(&v, c, mode),
            _ => panic!("apply_cast: {c} is inert"),
        }
    }
}

impl BlameSafe for LambdaC {
    fn cast_blame_safe(c: &Coercion, l: Label) -> bool {
        c.blame_safe(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Dyn;

    #[test]
    fn coerce_examples() {
        let l = Label::new(1);
        assert_eq!(coerce_lc(&Dyn, &Type::int(), l), Coercion::Proj(Type::int(), l));
        assert_eq!(coerce_lc(&Type::int(), &Type::int(), l), Coercion::Id(Type::int()));
        let c = coerce_lc(&Type::fun(Type::nat(), Type::bool()), &Dyn, l);
        let expected = Coercion::seq(
            Coercion::fun(Coercion::Proj(Type::nat(), l), Coercion::Inj(Type::bool())),
            Coercion::Inj(Type::fun(Dyn, Dyn)),
        );
        assert_eq!(c, expected);
        assert!(LambdaC::well_formed(&c).is_ok());
        assert_eq!(c.source(), Type::fun(Type::nat(), Type::bool()));
        assert_eq!(c.target(), Dyn);
    }

    #[test]
    fn classification() {
        let l = Label::new(1);
        assert_eq!(LambdaC::classify(&coerce_lc(&Dyn, &Type::fun(Dyn, Dyn), l)), Class::Active);
        let f = coerce_lc(&Type::fun(Dyn, Dyn), &Type::fun(Dyn, Dyn), l);
        assert_eq!(LambdaC::classify(&f), Class::Inert);
        let p = coerce_lc(&Type::pair(Dyn, Dyn), &Type::pair(Dyn, Dyn), l);
        assert_eq!(LambdaC::classify(&p), Class::Active);
        assert!(LambdaC::well_formed(&Coercion::Inj(Type::fun(Type::nat(), Dyn))).is_err());
    }
}
