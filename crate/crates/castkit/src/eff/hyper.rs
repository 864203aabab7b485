//! Hypercoercions: a projection part, a middle and an injection part.

use std::fmt;

use crate::cc::term::Term;
use crate::discipline::{Class, Composable, Discipline, Field};
use crate::eff::distribute;
use crate::types::{Base, Dyn, Head, Label, Type};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HCoercion {
    /// `id : ? ⇒ ?`
    IdDyn,
    Triple(Pre, Mid, Post),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pre {
    Id,
    /// `H?ℓ`
    Proj(Type, Label),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Mid {
    Id(Base),
    Fun(Box<HCoercion>, Box<HCoercion>),
    Pair(Box<HCoercion>, Box<HCoercion>),
    Sum(Box<HCoercion>, Box<HCoercion>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Post {
    Id,
    /// `G!`
    Inj(Type),
    /// `⊥ℓ`, with the target type of the whole coercion.
    Fail(Label, Type),
}

impl Pre {
    pub fn size(&self) -> usize {
        match self {
            Pre::Id => 0,
            Pre::Proj(..) => 1,
        }
    }
}

impl Post {
    pub fn size(&self) -> usize {
        match self {
            Post::Id | Post::Fail(..) => 0,
            Post::Inj(_) => 1,
        }
    }
}

impl Mid {
    pub fn compound(h: Head, c: HCoercion, d: HCoercion) -> Mid {
        let (c, d) = (Box::new(c), Box::new(d));
        match h {
            Head::Fun => Mid::Fun(c, d),
            Head::Pair => Mid::Pair(c, d),
            Head::Sum => Mid::Sum(c, d),
        }
    }

    pub fn parts(&self) -> Option<(Head, &HCoercion, &HCoercion)> {
        match self {
            Mid::Id(_) => None,
            Mid::Fun(c, d) => Some((Head::Fun, c, d)),
            Mid::Pair(c, d) => Some((Head::Pair, c, d)),
            Mid::Sum(c, d) => Some((Head::Sum, c, d)),
        }
    }

    pub fn source(&self) -> Type {
        match self {
            Mid::Id(b) => Type::Base(*b),
            Mid::Fun(c, d) => Type::fun(c.target(), d.source()),
            Mid::Pair(c, d) => Type::pair(c.source(), d.source()),
            Mid::Sum(c, d) => Type::sum(c.source(), d.source()),
        }
    }

    pub fn target(&self) -> Type {
        match self {
            Mid::Id(b) => Type::Base(*b),
            Mid::Fun(c, d) => Type::fun(c.source(), d.target()),
            Mid::Pair(c, d) => Type::pair(c.target(), d.target()),
            Mid::Sum(c, d) => Type::sum(c.target(), d.target()),
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

    pub fn compose(&self, m: &Mid) -> Mid {
        match (self, m) {
            (Mid::Id(a), Mid::Id(b)) if a == b => Mid::Id(*a),
            (Mid::Fun(c1, d1), Mid::Fun(c2, d2)) => Mid::Fun(Box::new(c2.compose(c1)), Box::new(d1.compose(d2))),
            (Mid::Pair(c1, d1), Mid::Pair(c2, d2)) => Mid::Pair(Box::new(c1.compose(c2)), Box::new(d1.compose(d2))),
            (Mid::Sum(c1, d1), Mid::Sum(c2, d2)) => Mid::Sum(Box::new(c1.compose(c2)), Box::new(d1.compose(d2))),
            _ => panic!("compose: {self} and {m} do not chain"),
        }
    }
}

impl HCoercion {
    pub fn source(&self) -> Type {
        match self {
            HCoercion::IdDyn | HCoercion::Triple(Pre::Proj(..), _, _) => Dyn,
            HCoercion::Triple(Pre::Id, m, _) => m.source(),
        }
    }

    pub fn target(&self) -> Type {
        match self {
            HCoercion::IdDyn | HCoercion::Triple(_, _, Post::Inj(_)) => Dyn,
            HCoercion::Triple(_, _, Post::Fail(_, b)) => b.clone(),
            HCoercion::Triple(_, m, Post::Id) => m.target(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            HCoercion::IdDyn => 0,
            HCoercion::Triple(_, m, _) => m.height(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            HCoercion::IdDyn => 0,
            HCoercion::Triple(p, m, i) => 2 + p.size() + m.size() + i.size(),
        }
    }

    pub fn middle(&self) -> Option<&Mid> {
        match self {
            HCoercion::IdDyn => None,
            HCoercion::Triple(_, m, _) => Some(m),
        }
    }

    pub fn check(&self) -> Result<(), String> {
        let HCoercion::Triple(p, m, i) = self else {
            return Ok(());
        };
        if let Some((_, c, d)) = m.parts() {
            c.check()?;
            d.check()?;
        }
        if let Pre::Proj(h, _) = p {
            if !h.is_ground() || m.source() != *h {
                return Err(format!("projection in {self} is not to the middle's ground source"));
            }
        }
        match i {
            Post::Inj(g) if !g.is_ground() || m.target() != *g => {
                Err(format!("injection in {self} is not from the middle's ground target"))
            }
            Post::Fail(..) if !m.target().is_ground() => Err(format!("failure in {self} after a non-ground middle")),
            _ => Ok(()),
        }
    }

    /// `c ⨟ d`.
    pub fn compose(&self, d: &HCoercion) -> HCoercion {
        use HCoercion::{IdDyn, Triple};
        match (self, d) {
            (_, IdDyn) => self.clone(),
            (IdDyn, _) => d.clone(),
            (Triple(p1, m1, Post::Fail(l, _)), _) => Triple(p1.clone(), m1.clone(), Post::Fail(*l, d.target())),
            (Triple(p1, m1, Post::Id), Triple(Pre::Id, m2, i2)) => Triple(p1.clone(), m1.compose(m2), i2.clone()),
            (Triple(p1, m1, Post::Inj(g)), Triple(Pre::Proj(h, l), m2, i2)) => {
                if g == h {
                    Triple(p1.clone(), m1.compose(m2), i2.clone())
                } else {
                    Triple(p1.clone(), m1.clone(), Post::Fail(*l, d.target()))
                }
            }
            _ => panic!("compose: {self} and {d} do not chain"),
        }
    }
}

impl fmt::Display for Mid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parts() {
            None => write!(f, "(id {})", self.source()),
            Some((h, c, d)) => write!(f, "({} {c} {d})", h.symbol()),
        }
    }
}

impl fmt::Display for HCoercion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HCoercion::IdDyn => write!(f, "(id Dyn)"),
            HCoercion::Triple(p, m, i) => {
                write!(f, "(;")?;
                match p {
                    Pre::Id => write!(f, " id")?,
                    Pre::Proj(h, l) => write!(f, " (? {h} {l})")?,
                }
                write!(f, " {m}")?;
                match i {
                    Post::Id => write!(f, " id)"),
                    Post::Inj(g) => write!(f, " (! {g}))"),
                    Post::Fail(l, _) => write!(f, " (fail {l}))"),
                }
            }
        }
    }
}

/// The cast constructor.
pub fn coerce_h(a: &Type, b: &Type, l: Label) -> HCoercion {
    match (a, b) {
        (Type::Unknown, Type::Unknown) => HCoercion::IdDyn,
        (_, Type::Unknown) => {
            let g = a.gnd();
            HCoercion::Triple(Pre::Id, coerce_mid(a, &g, l), Post::Inj(g))
        }
        (Type::Unknown, _) => {
            let h = b.gnd();
            HCoercion::Triple(Pre::Proj(h.clone(), l), coerce_mid(&h, b, l), Post::Id)
        }
        _ => HCoercion::Triple(Pre::Id, coerce_mid(a, b, l), Post::Id),
    }
}

fn coerce_mid(a: &Type, b: &Type, l: Label) -> Mid {
    match (a, b) {
        (Type::Base(x), Type::Base(y)) if x == y => Mid::Id(*x),
        _ => match (a.split(), b.split()) {
            (Some((h, a1, a2)), Some((h2, b1, b2))) if h == h2 => {
                let first = match h {
                    Head::Fun => coerce_h(b1, a1, l),
                    _ => coerce_h(a1, b1, l),
                };
                Mid::compound(h, first, coerce_h(a2, b2, l))
            }
            _ => panic!("coerce: {a} and {b} are inconsistent"),
        },
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Hyper;

impl Discipline for Hyper {
    type Cast = HCoercion;
    const NAME: &'static str = "hyper";

    fn source(c: &HCoercion) -> Type {
        c.source()
    }
    fn target(c: &HCoercion) -> Type {
        c.target()
    }
    fn well_formed(c: &HCoercion) -> Result<(), String> {
        c.check()
    }
    fn make_cast(a: &Type, b: &Type, l: Label) -> HCoercion {
        coerce_h(a, b, l)
    }
    fn classify(c: &HCoercion) -> Class {
        match c {
            HCoercion::Triple(Pre::Id, _, Post::Inj(_)) | HCoercion::Triple(Pre::Id, Mid::Fun(..), Post::Id) => {
                Class::Inert
            }
            _ => Class::Active,
        }
    }
    fn cross(c: &HCoercion) -> Option<Head> {
        match c {
            HCoercion::Triple(Pre::Id, m, Post::Id) => m.parts().map(|(h, _, _)| h),
            _ => None,
        }
    }
    fn decompose(c: &HCoercion, f: Field) -> HCoercion {
        match c.middle().and_then(Mid::parts) {
            Some((h, c1, d1)) if h == f.head() => match f {
                Field::Dom | Field::Fst | Field::Inl => c1.clone(),
                Field::Cod | Field::Snd | Field::Inr => d1.clone(),
            },
            _ => panic!("decompose: {c} has no {f:?} component"),
        }
    }
}

impl Composable for Hyper {
    const SIZE_HEIGHT_K: usize = 9;

    fn apply_cast_sc(v: Term<Self>, c: &HCoercion) -> Term<Self> {
        match c {
            HCoercion::IdDyn | HCoercion::Triple(Pre::Id, Mid::Id(_), Post::Id) => v,
            HCoercion::Triple(Pre::Proj(..), _, _) => match v {
                Term::Cast(m, c2) => Term::Cast(m, c2.compose(c)),
                _ => panic!("projection from a value that is not a cast: {v}"),
            },
            HCoercion::Triple(Pre::Id, _, Post::Fail(l, b)) => Term::Blame(*l, b.clone()),
            HCoercion::Triple(Pre::Id, m @ (Mid::Pair(..) | Mid::Sum(..)), Post::Id) => {
                let (h, c1, d1) = m.parts().unwrap();
                distribute(v, h, c1.clone(), d1.clone(), &m.target())
            }
            _ => panic!("apply_cast: {c} is inert"),
        }
    }
    fn compose(c: &HCoercion, d: &HCoercion) -> HCoercion {
        c.compose(d)
    }
    fn height(c: &HCoercion) -> usize {
        c.height()
    }
    fn size(c: &HCoercion) -> usize {
        c.size()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(n: i64) -> Label {
        Label::new(n)
    }

    #[test]
    fn coerce_examples() {
        assert_eq!(coerce_h(&Dyn, &Dyn, l(1)), HCoercion::IdDyn);
        assert_eq!(
            coerce_h(&Dyn, &Type::int(), l(1)),
            HCoercion::Triple(Pre::Proj(Type::int(), l(1)), Mid::Id(Base::Int), Post::Id)
        );
        let c = coerce_h(&Type::fun(Type::nat(), Type::nat()), &Dyn, l(1));
        assert!(c.check().is_ok());
        assert_eq!(c.height(), 1);
    }

    #[test]
    fn compose_examples() {
        let inj = coerce_h(&Type::int(), &Dyn, l(1));
        let proj_int = coerce_h(&Dyn, &Type::int(), l(2));
        let proj_bool = coerce_h(&Dyn, &Type::bool(), l(3));
        assert_eq!(inj.compose(&HCoercion::IdDyn), inj);
        assert_eq!(inj.compose(&proj_int), HCoercion::Triple(Pre::Id, Mid::Id(Base::Int), Post::Id));
        let failed = inj.compose(&proj_bool);
        assert_eq!(failed, HCoercion::Triple(Pre::Id, Mid::Id(Base::Int), Post::Fail(l(3), Type::bool())));
        assert_eq!(failed.compose(&coerce_h(&Type::bool(), &Dyn, l(4))).target(), Dyn);
    }

    #[test]
    fn fst_of_pair_middle() {
        let c = coerce_h(&Type::pair(Dyn, Type::nat()), &Type::pair(Type::int(), Type::nat()), l(1));
        assert_eq!(Hyper::decompose(&c, Field::Fst), coerce_h(&Dyn, &Type::int(), l(1)));
        assert_eq!(Hyper::cross(&c), Some(Head::Pair));
        assert_eq!(Hyper::classify(&c), Class::Active);
    }

    #[test]
    fn size_at_height_zero() {
        let c = HCoercion::Triple(Pre::Proj(Type::int(), l(1)), Mid::Id(Base::Int), Post::Inj(Type::int()));
        assert_eq!(c.size(), 4);
        assert!(c.size() + 5 <= 9);
    }
}
