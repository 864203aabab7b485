//! Coercions shared by EDC, LDC and λC. Each discipline admits a subset
//! of the constructors; its `well_formed` rejects the rest.

use std::fmt;

use crate::discipline::Field;
use crate::types::{Dyn, Head, Label, Type};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coercion {
    /// Identity at an atomic type.
    Id(Type),
    /// `A!`
    Inj(Type),
    /// `B?ℓ`
    Proj(Type, Label),
    /// `c → d` with `c` the contravariant domain coercion.
    Fun(Box<Coercion>, Box<Coercion>),
    Pair(Box<Coercion>, Box<Coercion>),
    Sum(Box<Coercion>, Box<Coercion>),
    /// `c ; d`, λC only.
    Seq(Box<Coercion>, Box<Coercion>),
    /// `⊥ℓ : A ⇒ B`, LDC only.
    Fail(Label, Type, Type),
}

impl Coercion {
    pub fn fun(c: Coercion, d: Coercion) -> Coercion {
        Coercion::Fun(Box::new(c), Box::new(d))
    }
    pub fn pair(c: Coercion, d: Coercion) -> Coercion {
        Coercion::Pair(Box::new(c), Box::new(d))
    }
    pub fn sum(c: Coercion, d: Coercion) -> Coercion {
        Coercion::Sum(Box::new(c), Box::new(d))
    }
    pub fn seq(c: Coercion, d: Coercion) -> Coercion {
        Coercion::Seq(Box::new(c), Box::new(d))
    }

    pub fn compound(h: Head, c: Coercion, d: Coercion) -> Coercion {
        match h {
            Head::Fun => Coercion::fun(c, d),
            Head::Pair => Coercion::pair(c, d),
            Head::Sum => Coercion::sum(c, d),
        }
    }

    pub fn source(&self) -> Type {
        match self {
            Coercion::Id(a) | Coercion::Inj(a) => a.clone(),
            Coercion::Proj(..) => Dyn,
            Coercion::Fun(c, d) => Type::fun(c.target(), d.source()),
            Coercion::Pair(c, d) => Type::pair(c.source(), d.source()),
            Coercion::Sum(c, d) => Type::sum(c.source(), d.source()),
            Coercion::Seq(c, _) => c.source(),
            Coercion::Fail(_, a, _) => a.clone(),
        }
    }

    pub fn target(&self) -> Type {
        match self {
            Coercion::Id(a) => a.clone(),
            Coercion::Inj(_) => Dyn,
            Coercion::Proj(b, _) => b.clone(),
            Coercion::Fun(c, d) => Type::fun(c.source(), d.target()),
            Coercion::Pair(c, d) => Type::pair(c.target(), d.target()),
            Coercion::Sum(c, d) => Type::sum(c.target(), d.target()),
            Coercion::Seq(_, d) => d.target(),
            Coercion::Fail(_, _, b) => b.clone(),
        }
    }

    pub fn cross(&self) -> Option<Head> {
        match self {
            Coercion::Fun(..) => Some(Head::Fun),
            Coercion::Pair(..) => Some(Head::Pair),
            Coercion::Sum(..) => Some(Head::Sum),
            _ => None,
        }
    }

    pub fn decompose(&self, f: Field) -> Coercion {
        let (c, d) = match (self, f.head()) {
            (Coercion::Fun(c, d), Head::Fun) | (Coercion::Pair(c, d), Head::Pair) | (Coercion::Sum(c, d), Head::Sum) => {
                (c, d)
            }
            _ => panic!("decompose: {self} has no {f:?} component"),
        };
        match f {
            Field::Dom | Field::Fst | Field::Inl => (**c).clone(),
            Field::Cod | Field::Snd | Field::Inr => (**d).clone(),
        }
    }

    /// Identities and injections are always safe, projections and failures
    /// only for other labels; composites are safe when their parts are.
    pub fn blame_safe(&self, l: Label) -> bool {
        match self {
            Coercion::Id(_) | Coercion::Inj(_) => true,
            Coercion::Proj(_, l2) | Coercion::Fail(l2, _, _) => *l2 != l,
            Coercion::Fun(c, d) | Coercion::Pair(c, d) | Coercion::Sum(c, d) | Coercion::Seq(c, d) => {
                c.blame_safe(l) && d.blame_safe(l)
            }
        }
    }

    /// [`Coercion::blame_safe`] for calculi whose `coerce` complements the
    /// label in function domains. Firing `B?ℓ′` there builds a coercion
    /// that may contain `ℓ̄′` wherever `B` has a function type, so such a
    /// projection is unsafe for `ℓ̄′` as well.
    pub fn blame_safe_complemented(&self, l: Label) -> bool {
        match self {
            Coercion::Proj(b, l2) => *l2 != l && !(l2.complement() == l && has_fun(b)),
            Coercion::Fun(c, d) | Coercion::Pair(c, d) | Coercion::Sum(c, d) | Coercion::Seq(c, d) => {
                c.blame_safe_complemented(l) && d.blame_safe_complemented(l)
            }
            _ => self.blame_safe(l),
        }
    }

    /// Checks the typing rules of the constructors, given which optional
    /// forms are allowed.
    pub(crate) fn check(&self, allow: Allowed) -> Result<(), String> {
        match self {
            Coercion::Id(a) if a.is_atomic() => Ok(()),
            Coercion::Id(a) => Err(format!("identity at non-atomic type {a}")),
            Coercion::Inj(a) | Coercion::Proj(a, _) if a.is_dyn() => Err(format!("{self} at Dyn")),
            Coercion::Inj(a) | Coercion::Proj(a, _) if allow.ground_only && !a.is_ground() => {
                Err(format!("{self} at non-ground type"))
            }
            Coercion::Inj(_) | Coercion::Proj(..) => Ok(()),
            Coercion::Fun(c, d) | Coercion::Pair(c, d) | Coercion::Sum(c, d) => {
                c.check(allow)?;
                d.check(allow)
            }
            Coercion::Seq(c, d) => {
                if !allow.seq {
                    return Err("sequence coercion".to_string());
                }
                c.check(allow)?;
                d.check(allow)?;
                if c.target() != d.source() {
                    return Err(format!("sequence {self} does not chain"));
                }
                Ok(())
            }
            Coercion::Fail(..) if allow.fail => Ok(()),
            Coercion::Fail(..) => Err("failure coercion".to_string()),
        }
    }
}

fn has_fun(t: &Type) -> bool {
    match t.split() {
        Some((Head::Fun, _, _)) => true,
        Some((_, a, b)) => has_fun(a) || has_fun(b),
        None => false,
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Allowed {
    pub seq: bool,
    pub fail: bool,
    pub ground_only: bool,
}

impl fmt::Display for Coercion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coercion::Id(a) => write!(f, "(id {a})"),
            Coercion::Inj(a) => write!(f, "(! {a})"),
            Coercion::Proj(b, l) => write!(f, "(? {b} {l})"),
            Coercion::Fun(c, d) => write!(f, "(-> {c} {d})"),
            Coercion::Pair(c, d) => write!(f, "(* {c} {d})"),
            Coercion::Sum(c, d) => write!(f, "(+ {c} {d})"),
            Coercion::Seq(c, d) => write!(f, "(; {c} {d})"),
            Coercion::Fail(l, a, b) => write!(f, "(fail {l} {a} {b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_of_function_coercion() {
        let c = Coercion::fun(Coercion::Proj(Type::nat(), Label::new(-1)), Coercion::Id(Type::bool()));
        assert_eq!(c.source(), Type::fun(Type::nat(), Type::bool()));
        assert_eq!(c.target(), Type::fun(Dyn, Type::bool()));
        assert_eq!(c.decompose(Field::Dom), Coercion::Proj(Type::nat(), Label::new(-1)));
    }

    #[test]
    fn safety_is_conjunctive() {
        let l = Label::new(2);
        let c = Coercion::pair(Coercion::Inj(Type::nat()), Coercion::Proj(Type::int(), l));
        assert!(!c.blame_safe(l));
        assert!(c.blame_safe(Label::new(3)));
        assert!(!Coercion::Fail(l, Type::nat(), Type::bool()).blame_safe(l));
    }

    #[test]
    fn function_projection_is_unsafe_for_the_complement() {
        let l = Label::new(3);
        let p = Coercion::Proj(Type::fun(Dyn, Dyn), l);
        assert!(p.blame_safe(l.complement()));
        assert!(!p.blame_safe_complemented(l.complement()));
        assert!(!p.blame_safe_complemented(l));
        let q = Coercion::Proj(Type::pair(Type::nat(), Dyn), l);
        assert!(q.blame_safe_complemented(l.complement()));
    }
}
