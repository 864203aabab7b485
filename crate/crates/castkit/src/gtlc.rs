//! The gradually typed lambda calculus: constants, terms, the typechecker
//! and term precision.

use std::fmt;

use crate::error::TypeError;
use crate::types::{consistent, join, match_head, precision, Base, Head, Label, Type};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Prim {
    Not,
    Inc,
    Neg,
    Add,
    /// `add` applied to its first argument.
    AddN(u64),
    IsZero,
}

impl Prim {
    pub const NAMED: [Prim; 5] = [Prim::Not, Prim::Inc, Prim::Neg, Prim::Add, Prim::IsZero];

    pub fn from_name(s: &str) -> Option<Prim> {
        Some(match s {
            "not" => Prim::Not,
            "inc" => Prim::Inc,
            "neg" => Prim::Neg,
            "add" => Prim::Add,
            "iszero" => Prim::IsZero,
            _ => return None,
        })
    }

    pub fn ty(self) -> Type {
        match self {
            Prim::Not => Type::fun(Type::bool(), Type::bool()),
            Prim::Inc => Type::fun(Type::nat(), Type::nat()),
            Prim::Neg => Type::fun(Type::int(), Type::int()),
            Prim::Add => Type::fun(Type::nat(), Type::fun(Type::nat(), Type::nat())),
            Prim::AddN(_) => Type::fun(Type::nat(), Type::nat()),
            Prim::IsZero => Type::fun(Type::nat(), Type::bool()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Const {
    Nat(u64),
    Int(i64),
    Bool(bool),
    Unit,
    Prim(Prim),
}

impl Const {
    pub fn ty(&self) -> Type {
        match self {
            Const::Nat(_) => Type::nat(),
            Const::Int(_) => Type::int(),
            Const::Bool(_) => Type::bool(),
            Const::Unit => Type::unit(),
            Const::Prim(p) => p.ty(),
        }
    }

    /// The δ rule: `⟦k⟧(⟦k′⟧)`. `None` when `self` is not a function or the
    /// argument has the wrong type.
    pub fn apply(&self, arg: &Const) -> Option<Const> {
        let Const::Prim(p) = self else { return None };
        Some(match (p, arg) {
            (Prim::Not, Const::Bool(b)) => Const::Bool(!b),
            (Prim::Inc, Const::Nat(n)) => Const::Nat(n.wrapping_add(1)),
            (Prim::Neg, Const::Int(z)) => Const::Int(z.wrapping_neg()),
            (Prim::Add, Const::Nat(n)) => Const::Prim(Prim::AddN(*n)),
            (Prim::AddN(n), Const::Nat(m)) => Const::Nat(n.wrapping_add(*m)),
            (Prim::IsZero, Const::Nat(n)) => Const::Bool(*n == 0),
            _ => return None,
        })
    }
}

/// Types a constant may carry: base types and right-nested functions over
/// base types.
pub fn is_prim_type(t: &Type) -> bool {
    match t {
        Type::Base(_) => true,
        Type::Fun(a, b) => matches!(**a, Type::Base(_)) && is_prim_type(b),
        _ => false,
    }
}

impl fmt::Display for Const {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Const::Nat(n) => write!(f, "{n}"),
            Const::Int(z) if *z >= 0 => write!(f, "+{z}"),
            Const::Int(z) => write!(f, "{z}"),
            Const::Bool(b) => write!(f, "{b}"),
            Const::Unit => write!(f, "unit"),
            Const::Prim(Prim::Not) => write!(f, "not"),
            Const::Prim(Prim::Inc) => write!(f, "inc"),
            Const::Prim(Prim::Neg) => write!(f, "neg"),
            Const::Prim(Prim::Add) => write!(f, "add"),
            Const::Prim(Prim::AddN(n)) => write!(f, "add/{n}"),
            Const::Prim(Prim::IsZero) => write!(f, "iszero"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Fst,
    Snd,
}

impl Side {
    pub fn keyword(self) -> &'static str {
        match self {
            Side::Fst => "fst",
            Side::Snd => "snd",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GTerm {
    Const(Const),
    Var(usize),
    Lam(Type, Box<GTerm>),
    App(Box<GTerm>, Box<GTerm>, Label),
    If(Box<GTerm>, Box<GTerm>, Box<GTerm>, Label),
    Cons(Box<GTerm>, Box<GTerm>),
    Proj(Side, Box<GTerm>, Label),
    /// `inl[B] M`; the annotation is the right summand.
    Inl(Type, Box<GTerm>),
    /// `inr[A] M`; the annotation is the left summand.
    Inr(Type, Box<GTerm>),
    /// `case L ((x : B₁) M) ((y : C₁) N)`.
    Case(Box<GTerm>, Type, Type, Box<GTerm>, Box<GTerm>, Label),
}

impl GTerm {
    pub fn lam(a: Type, body: GTerm) -> GTerm {
        GTerm::Lam(a, Box::new(body))
    }
    pub fn app(l: GTerm, m: GTerm, lbl: i64) -> GTerm {
        GTerm::App(Box::new(l), Box::new(m), Label::new(lbl))
    }
    pub fn nat(n: u64) -> GTerm {
        GTerm::Const(Const::Nat(n))
    }
    pub fn bool(b: bool) -> GTerm {
        GTerm::Const(Const::Bool(b))
    }
    pub fn prim(p: Prim) -> GTerm {
        GTerm::Const(Const::Prim(p))
    }
    pub fn cons(a: GTerm, b: GTerm) -> GTerm {
        GTerm::Cons(Box::new(a), Box::new(b))
    }

    /// Height of the syntax tree; leaves have depth 1.
    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn children(&self) -> Vec<&GTerm> {
        match self {
            GTerm::Const(_) | GTerm::Var(_) => vec![],
            GTerm::Lam(_, b) | GTerm::Proj(_, b, _) | GTerm::Inl(_, b) | GTerm::Inr(_, b) => vec![b],
            GTerm::App(a, b, _) | GTerm::Cons(a, b) => vec![a, b],
            GTerm::If(a, b, c, _) | GTerm::Case(a, _, _, b, c, _) => vec![a, b, c],
        }
    }

    /// Every type annotation in left-to-right order.
    pub fn annotations(&self) -> Vec<&Type> {
        let mut out = Vec::new();
        self.collect_annotations(&mut out);
        out
    }

    fn collect_annotations<'a>(&'a self, out: &mut Vec<&'a Type>) {
        match self {
            GTerm::Lam(a, b) | GTerm::Inl(a, b) | GTerm::Inr(a, b) => {
                out.push(a);
                b.collect_annotations(out);
            }
            GTerm::Case(l, b1, c1, m, n, _) => {
                l.collect_annotations(out);
                out.push(b1);
                out.push(c1);
                m.collect_annotations(out);
                n.collect_annotations(out);
            }
            _ => {
                for c in self.children() {
                    c.collect_annotations(out);
                }
            }
        }
    }

    /// Rebuilds the term with annotations replaced, in the order produced by
    /// [`GTerm::annotations`].
    pub fn with_annotations(&self, anns: &mut impl Iterator<Item = Type>) -> GTerm {
        match self {
            GTerm::Const(_) | GTerm::Var(_) => self.clone(),
            GTerm::Lam(_, b) => {
                let a = anns.next().expect("annotation count");
                GTerm::Lam(a, Box::new(b.with_annotations(anns)))
            }
            GTerm::Inl(_, b) => {
                let a = anns.next().expect("annotation count");
                GTerm::Inl(a, Box::new(b.with_annotations(anns)))
            }
            GTerm::Inr(_, b) => {
                let a = anns.next().expect("annotation count");
                GTerm::Inr(a, Box::new(b.with_annotations(anns)))
            }
            GTerm::App(a, b, l) => GTerm::App(
                Box::new(a.with_annotations(anns)),
                Box::new(b.with_annotations(anns)),
                *l,
            ),
            GTerm::Cons(a, b) => GTerm::Cons(Box::new(a.with_annotations(anns)), Box::new(b.with_annotations(anns))),
            GTerm::If(a, b, c, l) => GTerm::If(
                Box::new(a.with_annotations(anns)),
                Box::new(b.with_annotations(anns)),
                Box::new(c.with_annotations(anns)),
                *l,
            ),
            GTerm::Proj(s, b, l) => GTerm::Proj(*s, Box::new(b.with_annotations(anns)), *l),
            GTerm::Case(l, _, _, m, n, lbl) => {
                let l2 = l.with_annotations(anns);
                let b1 = anns.next().expect("annotation count");
                let c1 = anns.next().expect("annotation count");
                GTerm::Case(
                    Box::new(l2),
                    b1,
                    c1,
                    Box::new(m.with_annotations(anns)),
                    Box::new(n.with_annotations(anns)),
                    *lbl,
                )
            }
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        match self {
            GTerm::Const(k) => write!(f, "{k}"),
            GTerm::Var(i) if *i < depth => write!(f, "x{}", depth - 1 - i),
            GTerm::Var(i) => write!(f, "#{i}"),
            GTerm::Lam(a, b) => {
                write!(f, "(lam (x{depth} : {a}) ")?;
                b.fmt_at(f, depth + 1)?;
                write!(f, ")")
            }
            GTerm::App(a, b, l) => {
                write!(f, "(")?;
                a.fmt_at(f, depth)?;
                write!(f, " ")?;
                b.fmt_at(f, depth)?;
                write!(f, ")@{l}")
            }
            GTerm::If(a, b, c, l) => {
                write!(f, "(if ")?;
                a.fmt_at(f, depth)?;
                write!(f, " ")?;
                b.fmt_at(f, depth)?;
                write!(f, " ")?;
                c.fmt_at(f, depth)?;
                write!(f, ")@{l}")
            }
            GTerm::Cons(a, b) => {
                write!(f, "(cons ")?;
                a.fmt_at(f, depth)?;
                write!(f, " ")?;
                b.fmt_at(f, depth)?;
                write!(f, ")")
            }
            GTerm::Proj(s, b, l) => {
                write!(f, "({} ", s.keyword())?;
                b.fmt_at(f, depth)?;
                write!(f, ")@{l}")
            }
            GTerm::Inl(t, b) => {
                write!(f, "(inl {t} ")?;
                b.fmt_at(f, depth)?;
                write!(f, ")")
            }
            GTerm::Inr(t, b) => {
                write!(f, "(inr {t} ")?;
                b.fmt_at(f, depth)?;
                write!(f, ")")
            }
            GTerm::Case(s, b1, c1, m, n, l) => {
                write!(f, "(case ")?;
                s.fmt_at(f, depth)?;
                write!(f, " ((x{depth} : {b1}) ")?;
                m.fmt_at(f, depth + 1)?;
                write!(f, ") ((x{depth} : {c1}) ")?;
                n.fmt_at(f, depth + 1)?;
                write!(f, "))@{l}")
            }
        }
    }
}

/// Prints in the surface syntax; binders are named `x0`, `x1`, ... by depth.
impl fmt::Display for GTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

fn err(rule: &'static str, m: &GTerm, detail: String) -> TypeError {
    TypeError { rule, detail, term: m.to_string() }
}

pub fn typecheck(ctx: &[Type], m: &GTerm) -> Result<Type, TypeError> {
    let mut ctx = ctx.to_vec();
    check(&mut ctx, m)
}

fn check(ctx: &mut Vec<Type>, m: &GTerm) -> Result<Type, TypeError> {
    match m {
        GTerm::Const(k) => {
            let t = k.ty();
            if !is_prim_type(&t) {
                return Err(err("const", m, format!("constant type {t} is not a primitive type")));
            }
            Ok(t)
        }
        GTerm::Var(i) => ctx
            .len()
            .checked_sub(i + 1)
            .map(|j| ctx[j].clone())
            .ok_or_else(|| err("var", m, format!("unbound index {i}"))),
        GTerm::Lam(a, body) => {
            ctx.push(a.clone());
            let b = check(ctx, body);
            ctx.pop();
            Ok(Type::fun(a.clone(), b?))
        }
        GTerm::App(l, arg, _) => {
            let a = check(ctx, l)?;
            let (a1, a2) = match_head(&a, Head::Fun)
                .ok_or_else(|| err("app", m, format!("{a} does not match a function type")))?;
            let b = check(ctx, arg)?;
            if consistent(&a1, &b).is_none() {
                return Err(err("app", m, format!("argument type {b} is inconsistent with {a1}")));
            }
            Ok(a2)
        }
        GTerm::If(c, t, e, _) => {
            let a = check(ctx, c)?;
            if consistent(&a, &Type::bool()).is_none() {
                return Err(err("if", m, format!("condition type {a} is inconsistent with Bool")));
            }
            let b = check(ctx, t)?;
            let c2 = check(ctx, e)?;
            let p = consistent(&b, &c2)
                .ok_or_else(|| err("if", m, format!("branch types {b} and {c2} are inconsistent")))?;
            Ok(join(&p))
        }
        GTerm::Cons(a, b) => Ok(Type::pair(check(ctx, a)?, check(ctx, b)?)),
        GTerm::Proj(side, e, _) => {
            let a = check(ctx, e)?;
            let (a1, a2) = match_head(&a, Head::Pair)
                .ok_or_else(|| err("proj", m, format!("{a} does not match a pair type")))?;
            Ok(match side {
                Side::Fst => a1,
                Side::Snd => a2,
            })
        }
        GTerm::Inl(b, e) => Ok(Type::sum(check(ctx, e)?, b.clone())),
        GTerm::Inr(a, e) => Ok(Type::sum(a.clone(), check(ctx, e)?)),
        GTerm::Case(s, b1, c1, l, r, _) => {
            let a = check(ctx, s)?;
            if match_head(&a, Head::Sum).is_none() {
                return Err(err("case", m, format!("{a} does not match a sum type")));
            }
            let annotated = Type::sum(b1.clone(), c1.clone());
            if consistent(&a, &annotated).is_none() {
                return Err(err("case", m, format!("scrutinee type {a} is inconsistent with {annotated}")));
            }
            ctx.push(b1.clone());
            let b2 = check(ctx, l);
            ctx.pop();
            let b2 = b2?;
            ctx.push(c1.clone());
            let c2 = check(ctx, r);
            ctx.pop();
            let c2 = c2?;
            let p = consistent(&b2, &c2)
                .ok_or_else(|| err("case", m, format!("branch types {b2} and {c2} are inconsistent")))?;
            Ok(join(&p))
        }
    }
}

/// Term precision `M ⊑ M′`; blame labels are ignored.
pub fn gterm_precision(m: &GTerm, m2: &GTerm) -> bool {
    use GTerm::*;
    match (m, m2) {
        (Const(k), Const(k2)) => k == k2,
        (Var(i), Var(j)) => i == j,
        (Lam(a, b), Lam(a2, b2)) => precision(a, a2) && gterm_precision(b, b2),
        (App(a, b, _), App(a2, b2, _)) | (Cons(a, b), Cons(a2, b2)) => {
            gterm_precision(a, a2) && gterm_precision(b, b2)
        }
        (If(a, b, c, _), If(a2, b2, c2, _)) => {
            gterm_precision(a, a2) && gterm_precision(b, b2) && gterm_precision(c, c2)
        }
        (Proj(s, a, _), Proj(s2, a2, _)) => s == s2 && gterm_precision(a, a2),
        (Inl(t, a), Inl(t2, a2)) | (Inr(t, a), Inr(t2, a2)) => precision(t, t2) && gterm_precision(a, a2),
        (Case(s, b1, c1, l, r, _), Case(s2, b12, c12, l2, r2, _)) => {
            precision(b1, b12)
                && precision(c1, c12)
                && gterm_precision(s, s2)
                && gterm_precision(l, l2)
                && gterm_precision(r, r2)
        }
        _ => false,
    }
}

/// Constants of a base type used by generators and tests.
pub fn sample_const(b: Base, seed: u64) -> Option<Const> {
    Some(match b {
        Base::Nat => Const::Nat(seed % 5),
        Base::Int => Const::Int((seed % 5) as i64 - 2),
        Base::Bool => Const::Bool(seed % 2 == 0),
        Base::Unit => Const::Unit,
        Base::Bot => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Dyn;

    #[test]
    fn example_types() {
        let t = typecheck(&[], &GTerm::cons(GTerm::nat(2), GTerm::nat(3))).unwrap();
        assert_eq!(t, Type::pair(Type::nat(), Type::nat()));

        // The identity on `?` returns `?`.
        let m = GTerm::app(GTerm::lam(Dyn, GTerm::Var(0)), GTerm::nat(4), 1);
        assert_eq!(typecheck(&[], &m).unwrap(), Dyn);

        let case = GTerm::Case(
            Box::new(GTerm::Inr(Type::bool(), Box::new(GTerm::bool(true)))),
            Type::bool(),
            Dyn,
            Box::new(GTerm::Var(0)),
            Box::new(GTerm::app(GTerm::prim(Prim::Not), GTerm::Var(0), 3)),
            Label::new(2),
        );
        assert_eq!(typecheck(&[], &case).unwrap(), Type::bool());
    }

    #[test]
    fn applying_a_boolean_fails() {
        let m = GTerm::app(GTerm::bool(true), GTerm::nat(1), 1);
        let e = typecheck(&[], &m).unwrap_err();
        assert_eq!(e.rule, "app");
    }

    #[test]
    fn precision_examples() {
        let less = GTerm::app(GTerm::lam(Dyn, GTerm::Var(0)), GTerm::nat(42), 1);
        let more = GTerm::app(GTerm::lam(Type::nat(), GTerm::Var(0)), GTerm::nat(42), 2);
        assert!(gterm_precision(&less, &more));
        assert!(!gterm_precision(&more, &less));
        assert!(gterm_precision(&more, &more));
        assert!(!gterm_precision(&GTerm::nat(1), &GTerm::nat(2)));
    }

    #[test]
    fn delta() {
        assert_eq!(Const::Prim(Prim::Inc).apply(&Const::Nat(1)), Some(Const::Nat(2)));
        let add3 = Const::Prim(Prim::Add).apply(&Const::Nat(3)).unwrap();
        assert_eq!(add3.ty(), Type::fun(Type::nat(), Type::nat()));
        assert_eq!(add3.apply(&Const::Nat(4)), Some(Const::Nat(7)));
        assert_eq!(Const::Prim(Prim::Not).apply(&Const::Nat(4)), None);
    }

    #[test]
    fn prim_types_are_primitive() {
        for p in Prim::NAMED {
            assert!(is_prim_type(&p.ty()));
        }
        assert!(!is_prim_type(&Type::fun(Type::fun(Type::nat(), Type::nat()), Type::nat())));
    }
}
