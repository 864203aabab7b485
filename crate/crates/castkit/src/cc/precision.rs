//! Term precision for the primed calculus.
//!
//! Several rules can apply to the same pair of terms (a cast on both sides
//! may be related by the two-sided rule or by either one-sided rule), so
//! the check is a search over all applicable rules.

use crate::cc::term::Term;
use crate::cc::typing::type_of;
use crate::discipline::{Mode, WithPrecision};
use crate::types::{precision, Type};

/// Decides `M ⊑ M′` for closed terms of the primed calculus.
pub fn cterm_precision<D: WithPrecision>(m: &Term<D>, m2: &Term<D>) -> bool {
    cterm_precision_in(&[], &[], m, m2)
}

/// Decides `M ⊑ M′` under contexts `Γ ⊑ Γ′`.
pub fn cterm_precision_in<D: WithPrecision>(g: &[Type], g2: &[Type], m: &Term<D>, m2: &Term<D>) -> bool {
    let mut g = g.to_vec();
    let mut g2 = g2.to_vec();
    prec(&mut g, &mut g2, m, m2)
}

fn ty<D: WithPrecision>(g: &[Type], m: &Term<D>) -> Option<Type> {
    type_of(g, m, Mode::CCPrime).ok()
}

fn under<D: WithPrecision>(
    g: &mut Vec<Type>,
    g2: &mut Vec<Type>,
    a: &Type,
    a2: &Type,
    m: &Term<D>,
    m2: &Term<D>,
) -> bool {
    g.push(a.clone());
    g2.push(a2.clone());
    let r = prec(g, g2, m, m2);
    g.pop();
    g2.pop();
    r
}

fn prec<D: WithPrecision>(g: &mut Vec<Type>, g2: &mut Vec<Type>, m: &Term<D>, m2: &Term<D>) -> bool {
    if let Term::Blame(_, a2) = m2 {
        return ty(g, m).is_some_and(|a| precision(&a, a2));
    }
    structural(g, g2, m, m2) || cast_rules(g, g2, m, m2) || wrap_rules(g, g2, m, m2)
}

fn structural<D: WithPrecision>(g: &mut Vec<Type>, g2: &mut Vec<Type>, m: &Term<D>, m2: &Term<D>) -> bool {
    match (m, m2) {
        (Term::Const(k), Term::Const(k2)) => k == k2,
        (Term::Var(x), Term::Var(y)) => x == y,
        (Term::Lam(a, n), Term::Lam(a2, n2)) => precision(a, a2) && under(g, g2, a, a2, n, n2),
        (Term::App(a, b), Term::App(a2, b2)) | (Term::Cons(a, b), Term::Cons(a2, b2)) => {
            prec(g, g2, a, a2) && prec(g, g2, b, b2)
        }
        (Term::If(a, b, c), Term::If(a2, b2, c2)) | (Term::CaseFn(a, b, c), Term::CaseFn(a2, b2, c2)) => {
            prec(g, g2, a, a2) && prec(g, g2, b, b2) && prec(g, g2, c, c2)
        }
        (Term::Proj(s, n), Term::Proj(s2, n2)) => s == s2 && prec(g, g2, n, n2),
        (Term::Inl(t, n), Term::Inl(t2, n2)) | (Term::Inr(t, n), Term::Inr(t2, n2)) => {
            precision(t, t2) && prec(g, g2, n, n2)
        }
        (Term::CaseBind(l, a, b, x, y), Term::CaseBind(l2, a2, b2, x2, y2)) => {
            precision(a, a2)
                && precision(b, b2)
                && prec(g, g2, l, l2)
                && under(g, g2, a, a2, x, x2)
                && under(g, g2, b, b2, y, y2)
        }
        _ => false,
    }
}

fn cast_rules<D: WithPrecision>(g: &mut Vec<Type>, g2: &mut Vec<Type>, m: &Term<D>, m2: &Term<D>) -> bool {
    if let (Term::Cast(n, c), Term::Cast(n2, c2)) = (m, m2) {
        if precision(&D::source(c), &D::source(c2))
            && precision(&D::target(c), &D::target(c2))
            && prec(g, g2, n, n2)
        {
            return true;
        }
    }
    if let Term::Cast(n, c) = m {
        if let Some(a2) = ty(g2, m2) {
            if precision(&D::source(c), &a2) && precision(&D::target(c), &a2) && prec(g, g2, n, m2) {
                return true;
            }
        }
    }
    if let Term::Cast(n2, c2) = m2 {
        if let Some(a) = ty(g, m) {
            if precision(&a, &D::source(c2)) && precision(&a, &D::target(c2)) && prec(g, g2, m, n2) {
                return true;
            }
        }
    }
    false
}

fn wrap_rules<D: WithPrecision>(g: &mut Vec<Type>, g2: &mut Vec<Type>, m: &Term<D>, m2: &Term<D>) -> bool {
    if let (Term::Wrap(n, c), Term::Wrap(n2, c2)) = (m, m2) {
        let dyn_ok = !D::target(c).is_dyn() || D::target(c2).is_dyn();
        if dyn_ok && D::prec_ii(c, c2) && prec(g, g2, n, n2) {
            return true;
        }
    }
    if let Term::Wrap(n, c) = m {
        if let Some(a2) = ty(g2, m2) {
            if D::prec_it(c, &a2) && prec(g, g2, n, m2) {
                return true;
            }
        }
    }
    if let Term::Wrap(n2, c2) = m2 {
        if let Some(a) = ty(g, m) {
            if !a.is_dyn() && D::prec_ti(&a, c2) && prec(g, g2, m, n2) {
                return true;
            }
        }
    }
    false
}
