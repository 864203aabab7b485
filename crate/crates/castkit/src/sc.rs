//! The space-efficient cast calculus: adjacent casts are composed, a value
//! carries at most one cast, and every step can be instrumented with the
//! size metrics that bound space consumption.
//!
//! Terms are those of the plain calculus (`CaseFn`, no `Wrap`).
//!
//! Reduction is indexed by a context: rules on casts fire only where the
//! enclosing term is not itself a cast, which forces adjacent casts to be
//! composed outside-in. The driver descends into a frame's child in the
//! non-cast context when the child is a cast and in the any context
//! otherwise. Elimination rules fire only once their operands are values.

use std::fmt;

use crate::cc::eval::{step_error, Evaluation, Outcome};
use crate::cc::step::{sum_parts, Rule, StepError, StepResult};
use crate::cc::subst::{beta, rename, shift};
use crate::cc::term::Term;
use crate::cc::typing::type_of;
use crate::discipline::{Composable, Field, Mode};
use crate::error::InvariantViolation;
use crate::gtlc::{Const, Side};
use crate::types::{Head, Type};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RedCtx {
    Any,
    NonCast,
}

impl RedCtx {
    /// The context a driver uses for `m`.
    pub fn for_term<D: Composable>(m: &Term<D>) -> RedCtx {
        if m.is_cast() {
            RedCtx::NonCast
        } else {
            RedCtx::Any
        }
    }
}

/// One step from the top of a closed term.
pub fn step_sc<D: Composable>(m: &Term<D>) -> Result<StepResult<D>, StepError> {
    if let Term::Blame(l, _) = m {
        return Ok(StepResult::Blame(*l));
    }
    if m.is_sc_value() {
        return Ok(StepResult::Value);
    }
    reduce(RedCtx::for_term(m), m).map(|(t, r)| StepResult::Stepped(t, r))
}

/// One step of `m` in context `ctx`, or an error when no rule applies.
pub fn step_in<D: Composable>(ctx: RedCtx, m: &Term<D>) -> Result<(Term<D>, Rule), StepError> {
    reduce(ctx, m)
}

fn stuck<D: Composable>(m: &Term<D>) -> StepError {
    StepError::Stuck(m.to_string())
}

fn in_frame<D: Composable>(
    whole: &Term<D>,
    child: &Term<D>,
    rebuild: impl FnOnce(Term<D>) -> Term<D>,
) -> Result<(Term<D>, Rule), StepError> {
    if let Term::Blame(l, _) = child {
        let t = type_of(&[], whole, Mode::CC).map_err(|e| StepError::Stuck(e.to_string()))?;
        return Ok((Term::Blame(*l, t), Rule::XiBlame));
    }
    let (c2, r) = reduce(RedCtx::for_term(child), child)?;
    Ok((rebuild(c2), r))
}

/// The subject and cast of a value with an inert cast on top.
fn cast_value<D: Composable>(v: &Term<D>) -> Option<(&Term<D>, &D::Cast)> {
    match v {
        Term::Cast(s, c) if D::is_inert(c) && s.is_simple_value() => Some((s, c)),
        _ => None,
    }
}

fn reduce<D: Composable>(ctx: RedCtx, m: &Term<D>) -> Result<(Term<D>, Rule), StepError> {
    let val = |t: &Term<D>| t.is_sc_value();
    match m {
        Term::Cast(n, c) => {
            if ctx != RedCtx::NonCast {
                return Err(stuck(m));
            }
            match &**n {
                Term::Cast(inner, d) => Ok((Term::cast((**inner).clone(), D::compose(d, c)), Rule::Compose)),
                Term::Blame(l, _) => Ok((Term::Blame(*l, D::target(c)), Rule::XiCastBlame)),
                s if s.is_simple_value() => {
                    if D::is_inert(c) {
                        return Err(stuck(m));
                    }
                    if D::source(c).is_dyn() {
                        return Err(StepError::NonCanonical(s.to_string()));
                    }
                    Ok((D::apply_cast_sc(s.clone(), c), Rule::Cast))
                }
                _ => {
                    let (n2, r) = reduce(RedCtx::Any, n)?;
                    Ok((Term::cast(n2, c.clone()), r))
                }
            }
        }
        Term::App(l, n) => {
            if !val(l) {
                return in_frame(m, l, |l2| Term::App(Box::new(l2), n.clone()));
            }
            if !val(n) {
                return in_frame(m, n, |n2| Term::App(l.clone(), Box::new(n2)));
            }
            match &**l {
                Term::Lam(_, body) => Ok((beta(body, n), Rule::Beta)),
                Term::Const(k) => match &**n {
                    Term::Const(k2) => k.apply(k2).map(|r| (Term::Const(r), Rule::Delta)).ok_or_else(|| stuck(m)),
                    _ => Err(stuck(m)),
                },
                _ => match cast_value(l) {
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
                return in_frame(m, c, |c2| Term::If(Box::new(c2), t.clone(), e.clone()));
            }
            match &**c {
                Term::Const(Const::Bool(true)) => Ok(((**t).clone(), Rule::BetaTrue)),
                Term::Const(Const::Bool(false)) => Ok(((**e).clone(), Rule::BetaFalse)),
                _ => Err(stuck(m)),
            }
        }
        Term::Cons(a, b) => {
            if !val(a) {
                return in_frame(m, a, |a2| Term::Cons(Box::new(a2), b.clone()));
            }
            in_frame(m, b, |b2| Term::Cons(a.clone(), Box::new(b2)))
        }
        Term::Proj(s, n) => {
            if !val(n) {
                return in_frame(m, n, |n2| Term::Proj(*s, Box::new(n2)));
            }
            if let Term::Cons(a, b) = &**n {
                return Ok(match s {
                    Side::Fst => ((**a).clone(), Rule::BetaFst),
                    Side::Snd => ((**b).clone(), Rule::BetaSnd),
                });
            }
            match cast_value(n) {
                Some((v, c)) if D::cross(c) == Some(Head::Pair) => Ok(match s {
                    Side::Fst => (Term::cast(Term::proj(Side::Fst, v.clone()), D::decompose(c, Field::Fst)), Rule::FstCast),
                    Side::Snd => (Term::cast(Term::proj(Side::Snd, v.clone()), D::decompose(c, Field::Snd)), Rule::SndCast),
                }),
                _ => Err(stuck(m)),
            }
        }
        Term::Inl(t, n) => in_frame(m, n, |n2| Term::Inl(t.clone(), Box::new(n2))),
        Term::Inr(t, n) => in_frame(m, n, |n2| Term::Inr(t.clone(), Box::new(n2))),
        Term::CaseFn(l, f, g) => {
            if !val(l) {
                return in_frame(m, l, |l2| Term::CaseFn(Box::new(l2), f.clone(), g.clone()));
            }
            match &**l {
                Term::Inl(_, v) => Ok((Term::App(f.clone(), v.clone()), Rule::BetaCaseL)),
                Term::Inr(_, v) => Ok((Term::App(g.clone(), v.clone()), Rule::BetaCaseR)),
                _ => match cast_value(l) {
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
        Term::Const(_)
        | Term::Var(_)
        | Term::Lam(..)
        | Term::Wrap(..)
        | Term::CaseBind(..)
        | Term::Blame(..) => Err(stuck(m)),
    }
}

/// Term size with every cast counting one.
pub fn size<D: Composable>(m: &Term<D>) -> usize {
    1 + m.children().into_iter().map(size).sum::<usize>()
}

/// Term size ignoring casts.
pub fn ideal_size<D: Composable>(m: &Term<D>) -> usize {
    match m {
        Term::Cast(n, _) | Term::Wrap(n, _) => ideal_size(n),
        _ => 1 + m.children().into_iter().map(ideal_size).sum::<usize>(),
    }
}

/// Term size with casts counted at their representation size.
pub fn real_size<D: Composable>(m: &Term<D>) -> usize {
    match m {
        Term::Cast(n, c) | Term::Wrap(n, c) => D::size(c) + real_size(n),
        _ => 1 + m.children().into_iter().map(real_size).sum::<usize>(),
    }
}

/// The greatest height of any cast in the term.
pub fn c_height<D: Composable>(m: &Term<D>) -> usize {
    m.casts().into_iter().map(D::height).max().unwrap_or(0)
}

/// The longest chain of directly nested casts anywhere in the term.
pub fn adjacency<D: Composable>(m: &Term<D>) -> usize {
    fn go<D: Composable>(m: &Term<D>) -> (usize, usize) {
        let (top, best) = match m {
            Term::Cast(n, _) | Term::Wrap(n, _) => {
                let (t, b) = go(n);
                (t + 1, b)
            }
            _ => (0, m.children().into_iter().map(|c| go(c).1).max().unwrap_or(0)),
        };
        (top, best.max(top))
    }
    go(m).1
}

/// The size predicate `n ⊢ b M`: returns the number of casts at the top
/// of `m` when no position holds too many adjacent casts. `delayed` marks
/// positions under a λ or in a branch.
pub fn size_ok<D: Composable>(m: &Term<D>, delayed: bool) -> Option<usize> {
    match m {
        Term::Cast(n, _) | Term::Wrap(n, _) => {
            let k = size_ok(n, delayed)?;
            let cap = if delayed { 1 } else { 2 };
            (k <= cap).then_some(k + 1)
        }
        Term::Var(_) => Some(1),
        Term::Const(_) | Term::Blame(..) => Some(0),
        Term::Lam(_, body) => size_ok(body, true).map(|_| 0),
        Term::If(c, t, e) | Term::CaseFn(c, t, e) | Term::CaseBind(c, _, _, t, e) => {
            size_ok(c, delayed)?;
            size_ok(t, true)?;
            size_ok(e, true)?;
            Some(0)
        }
        _ => {
            for c in m.children() {
                size_ok(c, delayed)?;
            }
            Some(0)
        }
    }
}

/// Metrics of the term reached after a step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeReport {
    pub step: usize,
    pub rule: Rule,
    pub size: usize,
    pub ideal_size: usize,
    pub real_size: usize,
    pub c_height: usize,
    pub adjacency: usize,
    pub ok_index: Option<usize>,
}

impl SizeReport {
    pub fn of<D: Composable>(step: usize, rule: Rule, m: &Term<D>) -> SizeReport {
        SizeReport {
            step,
            rule,
            size: size(m),
            ideal_size: ideal_size(m),
            real_size: real_size(m),
            c_height: c_height(m),
            adjacency: adjacency(m),
            ok_index: size_ok(m, false),
        }
    }
}

impl fmt::Display for SizeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} size={} ideal={} real={} height={} adjacency={} ok=",
            self.step, self.rule, self.size, self.ideal_size, self.real_size, self.c_height, self.adjacency
        )?;
        match self.ok_index {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "none"),
        }
    }
}

pub fn eval_sc<D: Composable>(m: &Term<D>, fuel: usize) -> Result<Evaluation<D>, InvariantViolation> {
    eval_sc_with(m, fuel, |_, _| Ok(()))
}

/// Runs at most `fuel` steps. After each step the term is typechecked and
/// its size report checked: the size predicate must still hold if it held
/// initially, adjacency must stay within 3 and the cast height must not
/// grow. `observe` then sees the report and the new term.
pub fn eval_sc_with<D: Composable>(
    m: &Term<D>,
    fuel: usize,
    mut observe: impl FnMut(&SizeReport, &Term<D>) -> Result<(), InvariantViolation>,
) -> Result<Evaluation<D>, InvariantViolation> {
    let ty = type_of(&[], m, Mode::CC).map_err(InvariantViolation::IllTyped)?;
    let ok_initially = size_ok(m, false).is_some();
    let mut height = c_height(m);
    let mut cur = m.clone();
    let mut steps = 0;
    loop {
        match step_sc(&cur).map_err(|e| step_error(steps + 1, e))? {
            StepResult::Value => return Ok(Evaluation { outcome: Outcome::Value(cur), steps }),
            StepResult::Blame(l) => return Ok(Evaluation { outcome: Outcome::Blamed(l), steps }),
            StepResult::Stepped(next, rule) => {
                if steps == fuel {
                    return Ok(Evaluation { outcome: Outcome::Timeout, steps });
                }
                steps += 1;
                match type_of(&[], &next, Mode::CC) {
                    Ok(t) if t == ty => {}
                    Ok(t) => {
                        return Err(InvariantViolation::Preservation {
                            step: steps,
                            rule: rule.to_string(),
                            detail: format!("type changed from {ty} to {t}"),
                        })
                    }
                    Err(e) => {
                        return Err(InvariantViolation::Preservation {
                            step: steps,
                            rule: rule.to_string(),
                            detail: e.to_string(),
                        })
                    }
                }
                let report = SizeReport::of(steps, rule, &next);
                let size_err = |detail: String| InvariantViolation::Size { step: steps, detail };
                if ok_initially && report.ok_index.is_none() {
                    return Err(size_err(format!("size predicate lost after `{rule}`")));
                }
                if report.ok_index.is_some() && report.adjacency > 3 {
                    return Err(size_err(format!("{} adjacent casts", report.adjacency)));
                }
                if report.c_height > height {
                    return Err(size_err(format!("cast height grew from {height} to {}", report.c_height)));
                }
                height = report.c_height;
                observe(&report, &next)?;
                cur = next;
            }
        }
    }
}
