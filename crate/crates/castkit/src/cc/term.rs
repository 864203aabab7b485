use std::fmt;

use crate::discipline::{Discipline, Mode};
use crate::gtlc::{Const, Side};
use crate::types::{Label, Type};

/// Cast calculus terms with de Bruijn variables.
///
/// `CaseFn` belongs to the plain calculus and `CaseBind`/`Wrap` to the
/// primed variant; the typechecker enforces the split.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term<D: Discipline> {
    Const(Const),
    Var(usize),
    Lam(Type, Box<Term<D>>),
    App(Box<Term<D>>, Box<Term<D>>),
    If(Box<Term<D>>, Box<Term<D>>, Box<Term<D>>),
    Cons(Box<Term<D>>, Box<Term<D>>),
    Proj(Side, Box<Term<D>>),
    Inl(Type, Box<Term<D>>),
    Inr(Type, Box<Term<D>>),
    /// `case L M N` where `M` and `N` are functions.
    CaseFn(Box<Term<D>>, Box<Term<D>>, Box<Term<D>>),
    /// `case L (x:A. M) (y:B. N)`.
    CaseBind(Box<Term<D>>, Type, Type, Box<Term<D>>, Box<Term<D>>),
    Cast(Box<Term<D>>, D::Cast),
    Wrap(Box<Term<D>>, D::Cast),
    Blame(Label, Type),
}

impl<D: Discipline> Term<D> {
    pub fn lam(a: Type, body: Term<D>) -> Self {
        Term::Lam(a, Box::new(body))
    }
    pub fn app(l: Term<D>, m: Term<D>) -> Self {
        Term::App(Box::new(l), Box::new(m))
    }
    pub fn cons(a: Term<D>, b: Term<D>) -> Self {
        Term::Cons(Box::new(a), Box::new(b))
    }
    pub fn proj(s: Side, m: Term<D>) -> Self {
        Term::Proj(s, Box::new(m))
    }
    pub fn inl(b: Type, m: Term<D>) -> Self {
        Term::Inl(b, Box::new(m))
    }
    pub fn inr(a: Type, m: Term<D>) -> Self {
        Term::Inr(a, Box::new(m))
    }
    pub fn cast(m: Term<D>, c: D::Cast) -> Self {
        Term::Cast(Box::new(m), c)
    }
    pub fn wrap(m: Term<D>, c: D::Cast) -> Self {
        Term::Wrap(Box::new(m), c)
    }
    pub fn nat(n: u64) -> Self {
        Term::Const(Const::Nat(n))
    }

    pub fn is_cast(&self) -> bool {
        matches!(self, Term::Cast(..))
    }

    /// The value judgment of the plain and primed calculi.
    pub fn is_value(&self, mode: Mode) -> bool {
        match self {
            Term::Const(_) | Term::Lam(..) => true,
            Term::Cons(a, b) => a.is_value(mode) && b.is_value(mode),
            Term::Inl(_, m) | Term::Inr(_, m) => m.is_value(mode),
            Term::Cast(m, c) => mode == Mode::CC && D::is_inert(c) && m.is_value(mode),
            Term::Wrap(m, c) => mode == Mode::CCPrime && D::is_inert(c) && m.is_value(mode),
            _ => false,
        }
    }

    /// Simple values of the space-efficient calculus.
    pub fn is_simple_value(&self) -> bool {
        match self {
            Term::Const(_) | Term::Lam(..) => true,
            Term::Cons(a, b) => a.is_sc_value() && b.is_sc_value(),
            Term::Inl(_, m) | Term::Inr(_, m) => m.is_sc_value(),
            _ => false,
        }
    }

    /// Values of the space-efficient calculus: a simple value under at most
    /// one inert cast.
    pub fn is_sc_value(&self) -> bool {
        match self {
            Term::Cast(m, c) => D::is_inert(c) && m.is_simple_value(),
            _ => self.is_simple_value(),
        }
    }

    pub fn children(&self) -> Vec<&Term<D>> {
        match self {
            Term::Const(_) | Term::Var(_) | Term::Blame(..) => vec![],
            Term::Lam(_, m)
            | Term::Proj(_, m)
            | Term::Inl(_, m)
            | Term::Inr(_, m)
            | Term::Cast(m, _)
            | Term::Wrap(m, _) => vec![m],
            Term::App(a, b) | Term::Cons(a, b) => vec![a, b],
            Term::If(a, b, c) | Term::CaseFn(a, b, c) | Term::CaseBind(a, _, _, b, c) => vec![a, b, c],
        }
    }

    /// Every cast and wrap in the term, outermost first.
    pub fn casts(&self) -> Vec<&D::Cast> {
        let mut out = Vec::new();
        self.collect_casts(&mut out);
        out
    }

    fn collect_casts<'a>(&'a self, out: &mut Vec<&'a D::Cast>) {
        if let Term::Cast(_, c) | Term::Wrap(_, c) = self {
            out.push(c);
        }
        for ch in self.children() {
            ch.collect_casts(out);
        }
    }

    /// Every blame label occurring in casts is discipline specific; this
    /// collects only the labels of `blame` nodes.
    pub fn blame_labels(&self) -> Vec<Label> {
        let mut out = Vec::new();
        self.collect_blames(&mut out);
        out
    }

    fn collect_blames(&self, out: &mut Vec<Label>) {
        if let Term::Blame(l, _) = self {
            out.push(*l);
        }
        for ch in self.children() {
            ch.collect_blames(out);
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(|c| c.node_count()).sum::<usize>()
    }
}

impl<D: Discipline> fmt::Display for Term<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(k) => write!(f, "{k}"),
            Term::Var(i) => write!(f, "#{i}"),
            Term::Lam(a, m) => write!(f, "(lam {a} {m})"),
            Term::App(a, b) => write!(f, "({a} {b})"),
            Term::If(a, b, c) => write!(f, "(if {a} {b} {c})"),
            Term::Cons(a, b) => write!(f, "(cons {a} {b})"),
            Term::Proj(s, m) => write!(f, "({} {m})", s.keyword()),
            Term::Inl(t, m) => write!(f, "(inl {t} {m})"),
            Term::Inr(t, m) => write!(f, "(inr {t} {m})"),
            Term::CaseFn(l, m, n) => write!(f, "(case {l} {m} {n})"),
            Term::CaseBind(l, a, b, m, n) => write!(f, "(case {l} ({a} {m}) ({b} {n}))"),
            Term::Cast(m, c) => write!(f, "(cast {m} {c})"),
            Term::Wrap(m, c) => write!(f, "(wrap {m} {c})"),
            Term::Blame(l, t) => write!(f, "(blame {l} {t})"),
        }
    }
}

/// The observable part of a value: casts and wraps are stripped and
/// functions are opaque.
pub fn observe<D: Discipline>(v: &Term<D>) -> String {
    match v {
        Term::Const(k) => k.to_string(),
        Term::Lam(..) => "<fun>".to_string(),
        Term::Cons(a, b) => format!("(cons {} {})", observe(a), observe(b)),
        Term::Inl(_, m) => format!("(inl {})", observe(m)),
        Term::Inr(_, m) => format!("(inr {})", observe(m)),
        Term::Cast(m, _) | Term::Wrap(m, _) => observe(m),
        other => format!("<{other}>"),
    }
}
