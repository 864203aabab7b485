//! One step of reduction for the plain and primed cast calculi.
//!
//! Evaluation is left to right: the function before the argument and the
//! first component before the second.

use std::fmt;

use crate::cc::subst::{beta, ext, rename, shift};
use crate::cc::term::Term;
use crate::cc::typing::type_of;
use crate::discipline::{CastStruct, Discipline, Field, Mode};
use crate::gtlc::{Const, Side};
use crate::types::{Head, Label, Type};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Beta,
    Delta,
    BetaTrue,
    BetaFalse,
    BetaFst,
    BetaSnd,
    BetaCaseL,
    BetaCaseR,
    Cast,
    Wrap,
    FunCast,
    FstCast,
    SndCast,
    CaseCast,
    CaseCastAlt,
    XiBlame,
    Compose,
    XiCastBlame,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Beta => "beta",
            Rule::Delta => "delta",
            Rule::BetaTrue => "beta-true",
            Rule::BetaFalse => "beta-false",
            Rule::BetaFst => "beta-fst",
            Rule::BetaSnd => "beta-snd",
            Rule::BetaCaseL => "beta-caseL",
            Rule::BetaCaseR => "beta-caseR",
            Rule::Cast => "cast",
            Rule::Wrap => "wrap",
            Rule::FunCast => "fun-cast",
            Rule::FstCast => "fst-cast",
            Rule::SndCast => "snd-cast",
            Rule::CaseCast => "case-cast",
            Rule::CaseCastAlt => "case-cast-alt",
            Rule::XiBlame => "xi-blame",
            Rule::Compose => "compose",
            Rule::XiCastBlame => "xi-cast-blame",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepResult<D: Discipline> {
    Stepped(Term<D>, Rule),
    Value,
    Blame(Label),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepError {
    /// A closed, well-typed term should never get here.
    Stuck(String),
    /// A value of type `?` consumed by a cast is not an inert cast into `?`.
    NonCanonical(String),
}

/// Checks the canonical form of a value of type `?` about to be consumed.
pub(crate) fn check_canonical<D: Discipline>(v: &Term<D>, c: &D::Cast) -> Result<(), StepError> {
    if !D::source(c).is_dyn() {
        return Ok(());
    }
    match v {
        Term::Cast(_, i) | Term::Wrap(_, i) if D::is_inert(i) && D::target(i).is_dyn() => Ok(()),
        _ => Err(StepError::NonCanonical(v.to_string())),
    }
}

/// The subject and cast of an inert cast value in the given mode.
pub fn inert_parts<D: Discipline>(v: &Term<D>, mode: Mode) -> Option<(&Term<D>, &D::Cast)> {
    match (v, mode) {
        (Term::Cast(m, c), Mode::CC) | (Term::Wrap(m, c), Mode::CCPrime) if D::is_inert(c) => Some((m, c)),
        _ => None,
    }
}

pub fn step<D: CastStruct>(m: &Term<D>, mode: Mode) -> Result<StepResult<D>, StepError> {
    if let Term::Blame(l, _) = m {
        return Ok(StepResult::Blame(*l));
    }
    if m.is_value(mode) {
        return Ok(StepResult::Value);
    }
    reduce(m, mode).map(|(t, r)| StepResult::Stepped(t, r))
}

fn stuck<D: Discipline>(m: &Term<D>) -> StepError {
    StepError::Stuck(m.to_string())
}

/// Steps `child` inside the frame given by `rebuild`, or propagates blame.
fn in_frame<D: CastStruct>(
    whole: &Term<D>,
    child: &Term<D>,
    mode: Mode,
    rebuild: impl FnOnce(Term<D>) -> Term<D>,
) -> Result<(Term<D>, Rule), StepError> {
    if let Term::Blame(l, _) = child {
        let t = type_of(&[], whole, mode).map_err(|e| StepError::Stuck(e.to_string()))?;
        return Ok((Term::Blame(*l, t), Rule::XiBlame));
    }
    let (c2, r) = reduce(child, mode)?;
    Ok((rebuild(c2), r))
}

fn reduce<D: CastStruct>(m: &Term<D>, mode: Mode) -> Result<(Term<D>, Rule), StepError> {
    let val = |t: &Term<D>| t.is_value(mode);
    match m {
        Term::App(l, n) => {
            if !val(l) {
                return in_frame(m, l, mode, |l2| Term::App(Box::new(l2), n.clone()));
            }
            if !val(n) {
                return in_frame(m, n, mode, |n2| Term::App(l.clone(), Box::new(n2)));
            }
            match &**l {
                Term::Lam(_, body) => Ok((beta(body, n), Rule::Beta)),
                Term::Const(k) => match &**n {
                    Term::Const(k2) => k.apply(k2).map(|r| (Term::Const(r), Rule::Delta)).ok_or_else(|| stuck(m)),
                    _ => Err(stuck(m)),
                },
                _ => match inert_parts(l, mode) {
                    Some((v, c)) if D::cross(c) == Some(Head::Fun) => {
                        let arg = Term::cast((**n).clone(), D::decompose(c, Field::Dom));
                        Ok((Term::cast(Term::app(v.clone(), arg), D::decompose(c, Field::Cod)), Rule::FunCast))
                    }
                    _ => Err(stuck(m)),
                },
            }
        }
        Term::If(c, t, e) => {
            if !val(c) {
                return in_frame(m, c, mode, |c2| Term::If(Box::new(c2), t.clone(), e.clone()));
            }
            match &**c {
                Term::Const(Const::Bool(true)) => Ok(((**t).clone(), Rule::BetaTrue)),
                Term::Const(Const::Bool(false)) => Ok(((**e).clone(), Rule::BetaFalse)),
                _ => Err(stuck(m)),
            }
        }
        Term::Cons(a, b) => {
            if !val(a) {
                return in_frame(m, a, mode, |a2| Term::Cons(Box::new(a2), b.clone()));
            }
            in_frame(m, b, mode, |b2| Term::Cons(a.clone(), Box::new(b2)))
        }
        Term::Proj(s, n) => {
            if !val(n) {
                return in_frame(m, n, mode, |n2| Term::Proj(*s, Box::new(n2)));
            }
            if let Term::Cons(a, b) = &**n {
                return Ok(match s {
                    Side::Fst => ((**a).clone(), Rule::BetaFst),
                    Side::Snd => ((**b).clone(), Rule::BetaSnd),
                });
            }
            match inert_parts(n, mode) {
                Some((v, c)) if D::cross(c) == Some(Head::Pair) => Ok(match s {
                    Side::Fst => (Term::cast(Term::proj(Side::Fst, v.clone()), D::decompose(c, Field::Fst)), Rule::FstCast),
                    Side::Snd => (Term::cast(Term::proj(Side::Snd, v.clone()), D::decompose(c, Field::Snd)), Rule::SndCast),
                }),
                _ => Err(stuck(m)),
            }
        }
        Term::Inl(t, n) => in_frame(m, n, mode, |n2| Term::Inl(t.clone(), Box::new(n2))),
        Term::Inr(t, n) => in_frame(m, n, mode, |n2| Term::Inr(t.clone(), Box::new(n2))),
        Term::CaseFn(l, f, g) => {
            if !val(l) {
                return in_frame(m, l, mode, |l2| Term::CaseFn(Box::new(l2), f.clone(), g.clone()));
            }
            match &**l {
                Term::Inl(_, v) => Ok((Term::App(f.clone(), v.clone()), Rule::BetaCaseL)),
                Term::Inr(_, v) => Ok((Term::App(g.clone(), v.clone()), Rule::BetaCaseR)),
                _ => match inert_parts(l, mode) {
                    Some((v, c)) if D::cross(c) == Some(Head::Sum) => {
                        let (a1, a2) = sum_parts(&D::source(c));
                        let branch = |w: &Term<D>, a: Type, fld| {
                            Term::lam(a, Term::app(rename(&shift, w), Term::cast(Term::Var(0), D::decompose(c, fld))))
                        };
                        Ok((
                            Term::CaseFn(
                                Box::new(v.clone()),
                                Box::new(branch(f, a1, Field::Inl)),
                                Box::new(branch(g, a2, Field::Inr)),
                            ),
                            Rule::CaseCast,
                        ))
                    }
                    _ => Err(stuck(m)),
                },
            }
        }
        Term::CaseBind(l, a, b, f, g) => {
            if !val(l) {
                return in_frame(m, l, mode, |l2| {
                    Term::CaseBind(Box::new(l2), a.clone(), b.clone(), f.clone(), g.clone())
                });
            }
            match &**l {
                Term::Inl(_, v) => Ok((beta(f, v), Rule::BetaCaseL)),
                Term::Inr(_, v) => Ok((beta(g, v), Rule::BetaCaseR)),
                _ => match inert_parts(l, mode) {
                    Some((v, c)) if D::cross(c) == Some(Head::Sum) => {
                        let (a1, a2) = sum_parts(&D::source(c));
                        let body = |w: &Term<D>, fld| {
                            let shifted = rename(&ext(&shift), w);
                            beta(&shifted, &Term::cast(Term::Var(0), D::decompose(c, fld)))
                        };
                        Ok((
                            Term::CaseBind(
                                Box::new(v.clone()),
                                a1,
                                a2,
                                Box::new(body(f, Field::Inl)),
                                Box::new(body(g, Field::Inr)),
                            ),
                            Rule::CaseCastAlt,
                        ))
                    }
                    _ => Err(stuck(m)),
                },
            }
        }
        Term::Cast(n, c) => {
            if !val(n) {
                return in_frame(m, n, mode, |n2| Term::Cast(Box::new(n2), c.clone()));
            }
            if D::is_inert(c) {
                return match mode {
                    Mode::CCPrime => Ok((Term::Wrap(n.clone(), c.clone()), Rule::Wrap)),
                    Mode::CC => Err(stuck(m)),
                };
            }
            check_canonical(n, c)?;
            Ok((D::apply_cast((**n).clone(), c, mode), Rule::Cast))
        }
        Term::Const(_) | Term::Var(_) | Term::Lam(..) | Term::Wrap(..) | Term::Blame(..) => Err(stuck(m)),
    }
}

pub(crate) fn sum_parts(t: &Type) -> (Type, Type) {
    let (a, b) = t.split_head(Head::Sum).expect("sum type");
    (a.clone(), b.clone())
}
