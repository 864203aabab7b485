//! Gradual types, blame labels, consistency, join, matching, precision and
//! the two subtyping relations used for blame tracking.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Nat,
    Int,
    Bool,
    Unit,
    /// Uninhabited; no constant carries it.
    Bot,
}

impl Base {
    pub const ALL: [Base; 5] = [Base::Nat, Base::Int, Base::Bool, Base::Unit, Base::Bot];

    pub fn name(self) -> &'static str {
        match self {
            Base::Nat => "Nat",
            Base::Int => "Int",
            Base::Bool => "Bool",
            Base::Unit => "Unit",
            Base::Bot => "Bot",
        }
    }
}

/// Type constructor heads that have two components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Head {
    Fun,
    Pair,
    Sum,
}

impl Head {
    pub const ALL: [Head; 3] = [Head::Fun, Head::Pair, Head::Sum];

    pub fn symbol(self) -> &'static str {
        match self {
            Head::Fun => "->",
            Head::Pair => "*",
            Head::Sum => "+",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Unknown,
    Base(Base),
    Fun(Box<Type>, Box<Type>),
    Pair(Box<Type>, Box<Type>),
    Sum(Box<Type>, Box<Type>),
}

pub use Type::Unknown as Dyn;

impl Type {
    pub fn nat() -> Type {
        Type::Base(Base::Nat)
    }
    pub fn int() -> Type {
        Type::Base(Base::Int)
    }
    pub fn bool() -> Type {
        Type::Base(Base::Bool)
    }
    pub fn unit() -> Type {
        Type::Base(Base::Unit)
    }
    pub fn fun(a: Type, b: Type) -> Type {
        Type::Fun(Box::new(a), Box::new(b))
    }
    pub fn pair(a: Type, b: Type) -> Type {
        Type::Pair(Box::new(a), Box::new(b))
    }
    pub fn sum(a: Type, b: Type) -> Type {
        Type::Sum(Box::new(a), Box::new(b))
    }

    pub fn compound(h: Head, a: Type, b: Type) -> Type {
        match h {
            Head::Fun => Type::fun(a, b),
            Head::Pair => Type::pair(a, b),
            Head::Sum => Type::sum(a, b),
        }
    }

    pub fn is_dyn(&self) -> bool {
        matches!(self, Type::Unknown)
    }

    /// Atomic types are `?` and the base types.
    pub fn is_atomic(&self) -> bool {
        matches!(self, Type::Unknown | Type::Base(_))
    }

    pub fn head(&self) -> Option<Head> {
        match self {
            Type::Fun(..) => Some(Head::Fun),
            Type::Pair(..) => Some(Head::Pair),
            Type::Sum(..) => Some(Head::Sum),
            _ => None,
        }
    }

    pub fn split(&self) -> Option<(Head, &Type, &Type)> {
        match self {
            Type::Fun(a, b) => Some((Head::Fun, a, b)),
            Type::Pair(a, b) => Some((Head::Pair, a, b)),
            Type::Sum(a, b) => Some((Head::Sum, a, b)),
            _ => None,
        }
    }

    pub fn split_head(&self, h: Head) -> Option<(&Type, &Type)> {
        match self.split() {
            Some((h2, a, b)) if h2 == h => Some((a, b)),
            _ => None,
        }
    }

    /// Ground types: base types and `? ⊗ ?`.
    pub fn is_ground(&self) -> bool {
        match self {
            Type::Base(_) => true,
            Type::Unknown => false,
            _ => {
                let (_, a, b) = self.split().unwrap();
                a.is_dyn() && b.is_dyn()
            }
        }
    }

    /// The ground type with the same head. Panics on `?`.
    pub fn gnd(&self) -> Type {
        match self {
            Type::Unknown => panic!("gnd: the unknown type has no ground type"),
            Type::Base(b) => Type::Base(*b),
            _ => Type::compound(self.head().unwrap(), Dyn, Dyn),
        }
    }

    /// Number of constructor levels; atomic types have depth 1.
    pub fn depth(&self) -> usize {
        match self.split() {
            None => 1,
            Some((_, a, b)) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn grounds() -> Vec<Type> {
        let mut gs: Vec<Type> = Base::ALL.iter().map(|b| Type::Base(*b)).collect();
        for h in Head::ALL {
            gs.push(Type::compound(h, Dyn, Dyn));
        }
        gs
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Unknown => write!(f, "Dyn"),
            Type::Base(b) => write!(f, "{}", b.name()),
            _ => {
                let (h, a, b) = self.split().unwrap();
                write!(f, "({} {} {})", h.symbol(), a, b)
            }
        }
    }
}

/// A blame label. The complement of a label is its negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(i64);

impl Label {
    pub fn new(id: i64) -> Label {
        assert!(id != 0, "blame labels are nonzero");
        Label(id)
    }

    pub fn id(self) -> i64 {
        self.0
    }

    pub fn complement(self) -> Label {
        Label(-self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Evidence that two types are consistent. `Fun` stores the domain proof
/// flipped: for `A→B ∼ A′→B′` it holds `A′ ∼ A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Consistency {
    /// `A ∼ ?`
    UnkR(Type),
    /// `? ∼ B`
    UnkL(Type),
    Base(Base),
    Fun(Box<Consistency>, Box<Consistency>),
    Pair(Box<Consistency>, Box<Consistency>),
    Sum(Box<Consistency>, Box<Consistency>),
}

impl Consistency {
    pub fn endpoints(&self) -> (Type, Type) {
        match self {
            Consistency::UnkR(a) => (a.clone(), Dyn),
            Consistency::UnkL(b) => (Dyn, b.clone()),
            Consistency::Base(b) => (Type::Base(*b), Type::Base(*b)),
            Consistency::Fun(d1, d2) => {
                let (a2, a1) = d1.endpoints();
                let (b1, b2) = d2.endpoints();
                (Type::fun(a1, b1), Type::fun(a2, b2))
            }
            Consistency::Pair(d1, d2) => {
                let (a1, a2) = d1.endpoints();
                let (b1, b2) = d2.endpoints();
                (Type::pair(a1, b1), Type::pair(a2, b2))
            }
            Consistency::Sum(d1, d2) => {
                let (a1, a2) = d1.endpoints();
                let (b1, b2) = d2.endpoints();
                (Type::sum(a1, b1), Type::sum(a2, b2))
            }
        }
    }
}

/// Decides `A ∼ B`. At `(?, ?)` the canonical proof is `UnkR`.
pub fn consistent(a: &Type, b: &Type) -> Option<Consistency> {
    match (a, b) {
        (_, Type::Unknown) => Some(Consistency::UnkR(a.clone())),
        (Type::Unknown, _) => Some(Consistency::UnkL(b.clone())),
        (Type::Base(x), Type::Base(y)) if x == y => Some(Consistency::Base(*x)),
        (Type::Fun(a1, b1), Type::Fun(a2, b2)) => Some(Consistency::Fun(
            Box::new(consistent(a2, a1)?),
            Box::new(consistent(b1, b2)?),
        )),
        (Type::Pair(a1, b1), Type::Pair(a2, b2)) => Some(Consistency::Pair(
            Box::new(consistent(a1, a2)?),
            Box::new(consistent(b1, b2)?),
        )),
        (Type::Sum(a1, b1), Type::Sum(a2, b2)) => Some(Consistency::Sum(
            Box::new(consistent(a1, a2)?),
            Box::new(consistent(b1, b2)?),
        )),
        _ => None,
    }
}

pub fn is_consistent(a: &Type, b: &Type) -> bool {
    consistent(a, b).is_some()
}

/// Shallow consistency: compares heads only.
pub fn shallow_consistent(a: &Type, b: &Type) -> bool {
    match (a, b) {
        (Type::Unknown, _) | (_, Type::Unknown) => true,
        (Type::Base(x), Type::Base(y)) => x == y,
        _ => a.head().is_some() && a.head() == b.head(),
    }
}

pub fn join(p: &Consistency) -> Type {
    match p {
        Consistency::UnkR(a) => a.clone(),
        Consistency::UnkL(b) => b.clone(),
        Consistency::Base(b) => Type::Base(*b),
        Consistency::Fun(d1, d2) => Type::fun(join(d1), join(d2)),
        Consistency::Pair(d1, d2) => Type::pair(join(d1), join(d2)),
        Consistency::Sum(d1, d2) => Type::sum(join(d1), join(d2)),
    }
}

/// The matching relation `A ▷ A₁ ⊗ A₂`.
pub fn match_head(a: &Type, h: Head) -> Option<(Type, Type)> {
    match a {
        Type::Unknown => Some((Dyn, Dyn)),
        _ => a.split_head(h).map(|(x, y)| (x.clone(), y.clone())),
    }
}

/// Type precision `A ⊑ B` (`?` is least precise).
pub fn precision(a: &Type, b: &Type) -> bool {
    match (a, b) {
        (Type::Unknown, _) => true,
        (Type::Base(x), Type::Base(y)) => x == y,
        _ => match (a.split(), b.split()) {
            (Some((h1, a1, a2)), Some((h2, b1, b2))) => {
                h1 == h2 && precision(a1, b1) && precision(a2, b2)
            }
            _ => false,
        },
    }
}

/// Pointwise precision on typing contexts.
pub fn ctx_precision(g: &[Type], g2: &[Type]) -> bool {
    g.len() == g2.len() && g.iter().zip(g2).all(|(a, b)| precision(a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubtypeFlavor {
    /// `?` is the top type.
    D,
    /// A type is below `?` only through a ground type.
    UD,
}

pub fn subtype(a: &Type, b: &Type, flavor: SubtypeFlavor) -> bool {
    match (a, b) {
        (Type::Unknown, Type::Unknown) => true,
        (_, Type::Unknown) => match flavor {
            SubtypeFlavor::D => true,
            SubtypeFlavor::UD => subtype(a, &a.gnd(), flavor),
        },
        (Type::Base(x), Type::Base(y)) => x == y,
        (Type::Fun(a1, b1), Type::Fun(a2, b2)) => {
            subtype(a2, a1, flavor) && subtype(b1, b2, flavor)
        }
        (Type::Pair(a1, b1), Type::Pair(a2, b2)) | (Type::Sum(a1, b1), Type::Sum(a2, b2)) => {
            subtype(a1, a2, flavor) && subtype(b1, b2, flavor)
        }
        _ => false,
    }
}

/// All types of depth at most `depth` over the given base types.
pub fn enumerate_types(bases: &[Base], depth: usize) -> Vec<Type> {
    if depth == 0 {
        return Vec::new();
    }
    let mut out = vec![Dyn];
    out.extend(bases.iter().map(|b| Type::Base(*b)));
    if depth > 1 {
        let smaller = enumerate_types(bases, depth - 1);
        for h in Head::ALL {
            for a in &smaller {
                for b in &smaller {
                    out.push(Type::compound(h, a.clone(), b.clone()));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn consistency_examples() {
        let p = consistent(&Type::fun(Type::nat(), Type::bool()), &Type::fun(Dyn, Type::bool()));
        assert_eq!(
            p,
            Some(Consistency::Fun(
                Box::new(Consistency::UnkL(Type::nat())),
                Box::new(Consistency::Base(Base::Bool))
            ))
        );
        assert_eq!(consistent(&Dyn, &Dyn), Some(Consistency::UnkR(Dyn)));
        assert_eq!(consistent(&Type::nat(), &Type::bool()), None);
    }

    #[test]
    fn join_examples() {
        assert_eq!(join(&Consistency::UnkL(Type::bool())), Type::bool());
        assert_eq!(join(&Consistency::Base(Base::Nat)), Type::nat());
        let p = consistent(&Type::fun(Type::nat(), Type::bool()), &Type::fun(Dyn, Type::bool())).unwrap();
        assert_eq!(join(&p), Type::fun(Type::nat(), Type::bool()));
    }

    #[test]
    fn matching_examples() {
        assert_eq!(
            match_head(&Type::fun(Type::int(), Type::bool()), Head::Fun),
            Some((Type::int(), Type::bool()))
        );
        assert_eq!(match_head(&Dyn, Head::Pair), Some((Dyn, Dyn)));
        assert_eq!(match_head(&Type::nat(), Head::Fun), None);
    }

    #[test]
    fn precision_examples() {
        assert!(precision(&Dyn, &Type::int()));
        assert!(precision(&Type::fun(Type::int(), Dyn), &Type::fun(Type::int(), Type::bool())));
        assert!(!precision(&Type::int(), &Dyn));
    }

    #[test]
    fn subtyping_examples() {
        let ii = Type::fun(Type::int(), Type::int());
        assert!(subtype(&ii, &Dyn, SubtypeFlavor::D));
        assert!(!subtype(&ii, &Dyn, SubtypeFlavor::UD));
        assert!(subtype(&Type::pair(Dyn, Dyn), &Dyn, SubtypeFlavor::UD));
    }

    #[test]
    fn gnd_examples() {
        assert_eq!(Type::int().gnd(), Type::int());
        assert_eq!(Type::fun(Type::nat(), Type::bool()).gnd(), Type::fun(Dyn, Dyn));
        assert_eq!(Type::pair(Type::nat(), Dyn).gnd(), Type::pair(Dyn, Dyn));
    }

    #[test]
    fn complement_is_involutive() {
        let l = Label::new(7);
        assert_eq!(l.complement().complement(), l);
        assert_eq!(l.complement().id(), -7);
    }

    #[test]
    fn endpoints_roundtrip() {
        let ts = enumerate_types(&[Base::Nat, Base::Bool], 3);
        for a in &ts {
            for b in &ts {
                if let Some(p) = consistent(a, b) {
                    assert_eq!(p.endpoints(), (a.clone(), b.clone()));
                }
            }
        }
    }
}
