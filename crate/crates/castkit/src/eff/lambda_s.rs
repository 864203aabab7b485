//! λS: coercions in a three-level normal form that is closed under
//! composition.

use std::fmt;

use crate::cc::term::Term;
use crate::discipline::{Class, Composable, Discipline, Field};
use crate::eff::distribute;
use crate::types::{Base, Dyn, Head, Label, Type};

/// Top-level coercions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SCoercion {
    /// `id : ? ⇒ ?`
    IdDyn,
    /// `H?ℓ ; i`
    Proj(Type, Label, ICoercion),
    Mid(ICoercion),
}

/// Intermediate coercions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ICoercion {
    /// `g ; G!`
    Inj(GCoercion, Type),
    Gnd(GCoercion),
    /// `⊥ℓ : A ⇒ B`
    Fail(Label, Type, Type),
}

/// Ground coercions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GCoercion {
    IdBase(Base),
    /// Domain coercion first, contravariant.
    Fun(Box<SCoercion>, Box<SCoercion>),
    Pair(Box<SCoercion>, Box<SCoercion>),
    Sum(Box<SCoercion>, Box<SCoercion>),
}

impl GCoercion {
    pub fn compound(h: Head, c: SCoercion, d: SCoercion) -> GCoercion {
        let (c, d) = (Box::new(c), Box::new(d));
        match h {
            Head::Fun => GCoercion::Fun(c, d),
            Head::Pair => GCoercion::Pair(c, d),
            Head::Sum => GCoercion::Sum(c, d),
        }
    }

    pub fn parts(&self) -> Option<(Head, &SCoercion, &SCoercion)> {
        match self {
            GCoercion::IdBase(_) => None,
            GCoercion::Fun(c, d) => Some((Head::Fun, c, d)),
            GCoercion::Pair(c, d) => Some((Head::Pair, c, d)),
            GCoercion::Sum(c, d) => Some((Head::Sum, c, d)),
        }
    }

    pub fn source(&self) -> Type {
        match self {
            GCoercion::IdBase(b) => Type::Base(*b),
            GCoercion::Fun(c, d) => Type::fun(c.target(), d.source()),
            GCoercion::Pair(c, d) => Type::pair(c.source(), d.source()),
            GCoercion::Sum(c, d) => Type::sum(c.source(), d.source()),
        }
    }

    pub fn target(&self) -> Type {
        match self {
            GCoercion::IdBase(b) => Type::Base(*b),
            GCoercion::Fun(c, d) => Type::fun(c.source(), d.target()),
            GCoercion::Pair(c, d) => Type::pair(c.target(), d.target()),
            GCoercion::Sum(c, d) => Type::sum(c.target(), d.target()),
        }
    }

    pub fn height(&self) -> usize {
        match self.parts() {
            None => 0,
            Some((_, c, d)) => 1 + c.height().max(d.height()),
        }
    }

    pub fn size(&self) -> usize {
        match self.parts() {
            None => 0,
            Some((_, c, d)) => 1 + c.size() + d.size(),
        }
    }

    fn check(&self) -> Result<(), String> {
        match self.parts() {
            None => Ok(()),
            Some((_, c, d)) => {
                c.check()?;
                d.check()
            }
        }
    }

    /// `g ⨟ h` for ground coercions with matching endpoints.
    pub fn compose(&self, h: &GCoercion) -> GCoercion {
        match (self, h) {
            (GCoercion::IdBase(a), GCoercion::IdBase(b)) if a == b => GCoercion::IdBase(*a),
            (GCoercion::Fun(c1, d1), GCoercion::Fun(c2, d2)) => {
                GCoercion::Fun(Box::new(c2.compose(c1)), Box::new(d1.compose(d2)))
            }
            (GCoercion::Pair(c1, d1), GCoercion::Pair(c2, d2)) => {
                GCoercion::Pair(Box::new(c1.compose(c2)), Box::new(d1.compose(d2)))
            }
            (GCoercion::Sum(c1, d1), GCoercion::Sum(c2, d2)) => {
                GCoercion::Sum(Box::new(c1.compose(c2)), Box::new(d1.compose(d2)))
            }
            _ => panic!("compose: {self} and {h} do not chain"),
        }
    }
}

impl ICoercion {
    pub fn source(&self) -> Type {
        match self {
            ICoercion::Inj(g, _) | ICoercion::Gnd(g) => g.source(),
            ICoercion::Fail(_, a, _) => a.clone(),
        }
    }

    pub fn target(&self) -> Type {
        match self {
            ICoercion::Inj(..) => Dyn,
            ICoercion::Gnd(g) => g.target(),
            ICoercion::Fail(_, _, b) => b.clone(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            ICoercion::Inj(g, _) | ICoercion::Gnd(g) => g.height(),
            ICoercion::Fail(..) => 0,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            ICoercion::Inj(g, _) => 2 + g.size(),
            ICoercion::Gnd(g) => g.size(),
            ICoercion::Fail(..) => 0,
        }
    }

    fn check(&self) -> Result<(), String> {
        match self {
            ICoercion::Inj(g, gt) => {
                g.check()?;
                if !gt.is_ground() || g.target() != *gt {
                    return Err(format!("injection {self} is not from its ground type"));
                }
                Ok(())
            }
            ICoercion::Gnd(g) => g.check(),
            ICoercion::Fail(_, a, _) if a.is_dyn() => Err("failure out of Dyn".to_string()),
            ICoercion::Fail(..) => Ok(()),
        }
    }

    /// `i ⨟ d`, always an intermediate coercion.
    pub fn compose(&self, d: &SCoercion) -> ICoercion {
        match (self, d) {
            (ICoercion::Fail(l, a, _), _) => ICoercion::Fail(*l, a.clone(), d.target()),
            (ICoercion::Inj(..), SCoercion::IdDyn) => self.clone(),
            (ICoercion::Inj(g, gt), SCoercion::Proj(h, l, i)) => {
                if gt == h {
                    ICoercion::Gnd(g.clone()).compose(&SCoercion::Mid(i.clone()))
                } else {
                    ICoercion::Fail(*l, g.source(), i.target())
                }
            }
            (ICoercion::Gnd(g), SCoercion::Mid(i)) => match i {
                ICoercion::Inj(h, ht) => ICoercion::Inj(g.compose(h), ht.clone()),
                ICoercion::Gnd(h) => ICoercion::Gnd(g.compose(h)),
                ICoercion::Fail(l, _, b) => ICoercion::Fail(*l, g.source(), b.clone()),
            },
            _ => panic!("compose: {self} and {d} do not chain"),
        }
    }
}

impl SCoercion {
    pub fn source(&self) -> Type {
        match self {
            SCoercion::IdDyn | SCoercion::Proj(..) => Dyn,
            SCoercion::Mid(i) => i.source(),
        }
    }

    pub fn target(&self) -> Type {
        match self {
            SCoercion::IdDyn => Dyn,
            SCoercion::Proj(_, _, i) | SCoercion::Mid(i) => i.target(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            SCoercion::IdDyn => 0,
            SCoercion::Proj(_, _, i) | SCoercion::Mid(i) => i.height(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            SCoercion::IdDyn => 0,
            SCoercion::Proj(_, _, i) => 2 + i.size(),
            SCoercion::Mid(i) => i.size(),
        }
    }

    pub fn check(&self) -> Result<(), String> {
        match self {
            SCoercion::IdDyn => Ok(()),
            SCoercion::Proj(h, _, i) => {
                i.check()?;
                if !h.is_ground() || i.source() != *h {
                    return Err(format!("projection {self} is not to its ground type"));
                }
                Ok(())
            }
            SCoercion::Mid(i) => i.check(),
        }
    }

    /// `c ⨟ d`.
    pub fn compose(&self, d: &SCoercion) -> SCoercion {
        match self {
            SCoercion::IdDyn => d.clone(),
            SCoercion::Proj(h, l, i) => SCoercion::Proj(h.clone(), *l, i.compose(d)),
            SCoercion::Mid(i) => SCoercion::Mid(i.compose(d)),
        }
    }

    pub fn ground(&self) -> Option<&GCoercion> {
        match self {
            SCoercion::Mid(ICoercion::Gnd(g)) => Some(g),
            _ => None,
        }
    }
}

impl fmt::Display for GCoercion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parts() {
            None => write!(f, "(id {})", self.source()),
            Some((h, c, d)) => write!(f, "({} {c} {d})", h.symbol()),
        }
    }
}

impl fmt::Display for ICoercion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ICoercion::Inj(g, gt) => write!(f, "(; {g} (! {gt}))"),
            ICoercion::Gnd(g) => write!(f, "{g}"),
            ICoercion::Fail(l, _, _) => write!(f, "(fail {l})"),
        }
    }
}

impl fmt::Display for SCoercion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SCoercion::IdDyn => write!(f, "(id Dyn)"),
            SCoercion::Proj(h, l, i) => write!(f, "(; (? {h} {l}) {i})"),
            SCoercion::Mid(i) => write!(f, "{i}"),
        }
    }
}

/// The cast constructor.
pub fn coerce_s(a: &Type, b: &Type, l: Label) -> SCoercion {
    match (a, b) {
        (Type::Unknown, Type::Unknown) => SCoercion::IdDyn,
        (_, Type::Unknown) => {
            let g = a.gnd();
            SCoercion::Mid(ICoercion::Inj(coerce_ground(a, &g, l), g))
        }
        (Type::Unknown, _) => {
            let h = b.gnd();
            SCoercion::Proj(h.clone(), l, ICoercion::Gnd(coerce_ground(&h, b, l)))
        }
        _ => SCoercion::Mid(ICoercion::Gnd(coerce_ground(a, b, l))),
    }
}

/// Ground coercion between two types with the same head, neither `?`.
fn coerce_ground(a: &Type, b: &Type, l: Label) -> GCoercion {
    match (a, b) {
        (Type::Base(x), Type::Base(y)) if x == y => GCoercion::IdBase(*x),
        _ => match (a.split(), b.split()) {
            (Some((h, a1, a2)), Some((h2, b1, b2))) if h == h2 => {
                let first = match h {
                    Head::Fun => coerce_s(b1, a1, l),
                    _ => coerce_s(a1, b1, l),
                };
                GCoercion::compound(h, first, coerce_s(a2, b2, l))
            }
            _ => panic!("coerce: {a} and {b} are inconsistent"),
        },
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LambdaS;

impl Discipline for LambdaS {
    type Cast = SCoercion;
    const NAME: &'static str = "lambda-s";

    fn source(c: &SCoercion) -> Type {
        c.source()
    }
    fn target(c: &SCoercion) -> Type {
        c.target()
    }
    fn well_formed(c: &SCoercion) -> Result<(), String> {
        c.check()
    }
    fn make_cast(a: &Type, b: &Type, l: Label) -> SCoercion {
        coerce_s(a, b, l)
    }
    /// Injections and function coercions are inert. A failure is active,
    /// since applying a cast to a value must handle it.
    fn classify(c: &SCoercion) -> Class {
        match c {
            SCoercion::Mid(ICoercion::Inj(..)) | SCoercion::Mid(ICoercion::Gnd(GCoercion::Fun(..))) => Class::Inert,
            _ => Class::Active,
        }
    }
    fn cross(c: &SCoercion) -> Option<Head> {
        c.ground().and_then(|g| g.parts()).map(|(h, _, _)| h)
    }
    fn decompose(c: &SCoercion, f: Field) -> SCoercion {
        match c.ground().and_then(|g| g.parts()) {
            Some((h, c1, d1)) if h == f.head() => match f {
                Field::Dom | Field::Fst | Field::Inl => c1.clone(),
                Field::Cod | Field::Snd | Field::Inr => d1.clone(),
            },
            _ => panic!("decompose: {c} has no {f:?} component"),
        }
    }
}

impl Composable for LambdaS {
    const SIZE_HEIGHT_K: usize = 9;

    fn apply_cast_sc(v: Term<Self>, c: &SCoercion) -> Term<Self> {
        match c {
            SCoercion::IdDyn | SCoercion::Mid(ICoercion::Gnd(GCoercion::IdBase(_))) => v,
            SCoercion::Mid(ICoercion::Fail(l, _, b)) => Term::Blame(*l, b.clone()),
            SCoercion::Proj(..) => match v {
                Term::Cast(m, c2) => Term::Cast(m, c2.compose(c)),
                _ => panic!("projection from a value that is not a cast: {v}"),
            },
            SCoercion::Mid(ICoercion::Gnd(g @ (GCoercion::Pair(..) | GCoercion::Sum(..)))) => {
                let (h, c1, d1) = g.parts().unwrap();
                distribute(v, h, c1.clone(), d1.clone(), &g.target())
            }
            _ => panic!("apply_cast: {c} is inert"),
        }
    }
    fn compose(c: &SCoercion, d: &SCoercion) -> SCoercion {
        c.compose(d)
    }
    fn height(c: &SCoercion) -> usize {
        c.height()
    }
    fn size(c: &SCoercion) -> usize {
        c.size()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(n: i64) -> Label {
        Label::new(n)
    }

    fn inj_int() -> SCoercion {
        SCoercion::Mid(ICoercion::Inj(GCoercion::IdBase(Base::Int), Type::int()))
    }

    #[test]
    fn coerce_examples() {
        assert_eq!(coerce_s(&Dyn, &Dyn, l(1)), SCoercion::IdDyn);
        assert_eq!(
            coerce_s(&Type::nat(), &Dyn, l(1)),
            SCoercion::Mid(ICoercion::Inj(GCoercion::IdBase(Base::Nat), Type::nat()))
        );
        let c = coerce_s(&Type::fun(Type::nat(), Dyn), &Dyn, l(1));
        assert!(c.check().is_ok());
        assert_eq!(c.source(), Type::fun(Type::nat(), Dyn));
    }

    #[test]
    fn compose_examples() {
        let proj_int = coerce_s(&Dyn, &Type::int(), l(1));
        assert_eq!(inj_int().compose(&proj_int), SCoercion::Mid(ICoercion::Gnd(GCoercion::IdBase(Base::Int))));
        let proj_bool = coerce_s(&Dyn, &Type::bool(), l(2));
        assert_eq!(
            inj_int().compose(&proj_bool),
            SCoercion::Mid(ICoercion::Fail(l(2), Type::int(), Type::bool()))
        );
        assert_eq!(SCoercion::IdDyn.compose(&proj_int), proj_int);
    }

    #[test]
    fn height_and_size() {
        assert_eq!(SCoercion::IdDyn.height(), 0);
        let proj_int = coerce_s(&Dyn, &Type::int(), l(1));
        assert_eq!(proj_int.size(), 2);
        let f = coerce_s(&Type::fun(Dyn, Dyn), &Type::fun(Type::int(), Dyn), l(1));
        assert_eq!(f.height(), 1);
        assert_eq!(f.size(), 3);
    }
}
