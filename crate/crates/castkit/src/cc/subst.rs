//! Renaming and simultaneous substitution on de Bruijn terms.

use crate::cc::term::Term;
use crate::discipline::Discipline;

pub type Renaming<'a> = &'a dyn Fn(usize) -> usize;
pub type Substitution<'a, D> = &'a dyn Fn(usize) -> Term<D>;

/// The successor renaming `S`.
pub fn shift(x: usize) -> usize {
    x + 1
}

/// Extends a renaming under one binder.
pub fn ext(rho: Renaming<'_>) -> impl Fn(usize) -> usize + '_ {
    move |x| if x == 0 { 0 } else { rho(x - 1) + 1 }
}

pub fn rename<D: Discipline>(rho: Renaming<'_>, m: &Term<D>) -> Term<D> {
    let go = |n: &Term<D>| Box::new(rename(rho, n));
    match m {
        Term::Const(k) => Term::Const(*k),
        Term::Var(x) => Term::Var(rho(*x)),
        Term::Lam(a, n) => Term::Lam(a.clone(), Box::new(rename(&ext(rho), n))),
        Term::App(a, b) => Term::App(go(a), go(b)),
        Term::If(a, b, c) => Term::If(go(a), go(b), go(c)),
        Term::Cons(a, b) => Term::Cons(go(a), go(b)),
        Term::Proj(s, n) => Term::Proj(*s, go(n)),
        Term::Inl(t, n) => Term::Inl(t.clone(), go(n)),
        Term::Inr(t, n) => Term::Inr(t.clone(), go(n)),
        Term::CaseFn(l, a, b) => Term::CaseFn(go(l), go(a), go(b)),
        Term::CaseBind(l, ta, tb, a, b) => {
            let r = ext(rho);
            Term::CaseBind(go(l), ta.clone(), tb.clone(), Box::new(rename(&r, a)), Box::new(rename(&r, b)))
        }
        Term::Cast(n, c) => Term::Cast(go(n), c.clone()),
        Term::Wrap(n, c) => Term::Wrap(go(n), c.clone()),
        Term::Blame(l, t) => Term::Blame(*l, t.clone()),
    }
}

/// Extends a substitution under one binder.
pub fn exts<'a, D: Discipline>(sigma: Substitution<'a, D>) -> impl Fn(usize) -> Term<D> + 'a {
    move |x| if x == 0 { Term::Var(0) } else { rename(&shift, &sigma(x - 1)) }
}

pub fn subst<D: Discipline>(sigma: Substitution<'_, D>, m: &Term<D>) -> Term<D> {
    let go = |n: &Term<D>| Box::new(subst(sigma, n));
    match m {
        Term::Const(k) => Term::Const(*k),
        Term::Var(x) => sigma(*x),
        Term::Lam(a, n) => Term::Lam(a.clone(), Box::new(subst(&exts(sigma), n))),
        Term::App(a, b) => Term::App(go(a), go(b)),
        Term::If(a, b, c) => Term::If(go(a), go(b), go(c)),
        Term::Cons(a, b) => Term::Cons(go(a), go(b)),
        Term::Proj(s, n) => Term::Proj(*s, go(n)),
        Term::Inl(t, n) => Term::Inl(t.clone(), go(n)),
        Term::Inr(t, n) => Term::Inr(t.clone(), go(n)),
        Term::CaseFn(l, a, b) => Term::CaseFn(go(l), go(a), go(b)),
        Term::CaseBind(l, ta, tb, a, b) => {
            let s = exts(sigma);
            Term::CaseBind(go(l), ta.clone(), tb.clone(), Box::new(subst(&s, a)), Box::new(subst(&s, b)))
        }
        Term::Cast(n, c) => Term::Cast(go(n), c.clone()),
        Term::Wrap(n, c) => Term::Wrap(go(n), c.clone()),
        Term::Blame(l, t) => Term::Blame(*l, t.clone()),
    }
}

/// `substZero N`: index 0 becomes `N`, every other index drops by one.
pub fn subst_zero<D: Discipline>(n: &Term<D>) -> impl Fn(usize) -> Term<D> + '_ {
    move |x| if x == 0 { n.clone() } else { Term::Var(x - 1) }
}

/// `M[N]`.
pub fn beta<D: Discipline>(m: &Term<D>, n: &Term<D>) -> Term<D> {
    subst(&subst_zero(n), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculi::typebased::Eda;

    type T = Term<Eda>;

    #[test]
    fn substitute_zero() {
        assert_eq!(beta(&T::Var(0), &T::nat(5)), T::nat(5));
    }

    #[test]
    fn substitute_under_binder() {
        let m = T::lam(crate::types::Type::nat(), T::app(T::Var(0), T::Var(1)));
        let expected = T::lam(crate::types::Type::nat(), T::app(T::Var(0), T::nat(5)));
        assert_eq!(beta(&m, &T::nat(5)), expected);
    }

    #[test]
    fn rename_leaves_constants() {
        assert_eq!(rename(&shift, &T::nat(3)), T::nat(3));
    }

    #[test]
    fn substituted_term_is_shifted_under_binders() {
        // (λ. #1)[#0] = λ. #1 : the free #0 moves past the binder.
        let m = T::lam(crate::types::Type::nat(), T::Var(1));
        assert_eq!(beta(&m, &T::Var(0)), T::lam(crate::types::Type::nat(), T::Var(1)));
    }
}
