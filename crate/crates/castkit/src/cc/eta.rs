//! Eta-like expansions that push a cross cast into the components of a
//! value.

use crate::cc::subst::{rename, shift};
use crate::cc::term::Term;
use crate::discipline::{Discipline, Field, Mode};
use crate::gtlc::Side;
use crate::types::{Head, Type};

fn split_target<D: Discipline>(c: &D::Cast, h: Head) -> (Type, Type) {
    assert_eq!(D::cross(c), Some(h), "eta: {c} is not a cross cast at {}", h.symbol());
    let t = D::target(c);
    let (a, b) = t.split_head(h).expect("cross cast target has the cast's head");
    (a.clone(), b.clone())
}

/// `λ ⟨(rename S M) ⟨Z⟩dom c⟩cod c`
pub fn eta_fun<D: Discipline>(m: &Term<D>, c: &D::Cast) -> Term<D> {
    let (dom, _) = split_target::<D>(c, Head::Fun);
    let arg = Term::cast(Term::Var(0), D::decompose(c, Field::Dom));
    Term::lam(dom, Term::cast(Term::app(rename(&shift, m), arg), D::decompose(c, Field::Cod)))
}

/// `cons ⟨π₁ M⟩fst c ⟨π₂ M⟩snd c`
pub fn eta_pair<D: Discipline>(m: &Term<D>, c: &D::Cast) -> Term<D> {
    split_target::<D>(c, Head::Pair);
    Term::cons(
        Term::cast(Term::proj(Side::Fst, m.clone()), D::decompose(c, Field::Fst)),
        Term::cast(Term::proj(Side::Snd, m.clone()), D::decompose(c, Field::Snd)),
    )
}

/// `case M (inl ⟨Z⟩inl c) (inr ⟨Z⟩inr c)`, with function branches in the
/// plain calculus and binding branches in the primed one.
pub fn eta_sum<D: Discipline>(m: &Term<D>, c: &D::Cast, mode: Mode) -> Term<D> {
    let (tl, tr) = split_target::<D>(c, Head::Sum);
    let src = D::source(c);
    let (sl, sr) = src.split_head(Head::Sum).expect("cross cast source has the cast's head");
    let left = Term::inl(tr, Term::cast(Term::Var(0), D::decompose(c, Field::Inl)));
    let right = Term::inr(tl, Term::cast(Term::Var(0), D::decompose(c, Field::Inr)));
    match mode {
        Mode::CC => Term::CaseFn(
            Box::new(m.clone()),
            Box::new(Term::lam(sl.clone(), left)),
            Box::new(Term::lam(sr.clone(), right)),
        ),
        Mode::CCPrime => Term::CaseBind(
            Box::new(m.clone()),
            sl.clone(),
            sr.clone(),
            Box::new(left),
            Box::new(right),
        ),
    }
}

/// Dispatches on the cast's head.
pub fn eta<D: Discipline>(m: &Term<D>, c: &D::Cast, mode: Mode) -> Term<D> {
    match D::cross(c).expect("eta expansion of a non-cross cast") {
        Head::Fun => eta_fun(m, c),
        Head::Pair => eta_pair(m, c),
        Head::Sum => eta_sum(m, c, mode),
    }
}
