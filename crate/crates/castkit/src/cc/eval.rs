use crate::cc::step::{step, Rule, StepError, StepResult};
use crate::cc::term::Term;
use crate::cc::typing::type_of;
use crate::discipline::{CastStruct, Discipline, Mode};
use crate::error::InvariantViolation;
use crate::types::Label;

pub const DEFAULT_FUEL: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<D: Discipline> {
    Value(Term<D>),
    Blamed(Label),
    Timeout,
}

impl<D: Discipline> Outcome<D> {
    pub fn is_value(&self) -> bool {
        matches!(self, Outcome::Value(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation<D: Discipline> {
    pub outcome: Outcome<D>,
    pub steps: usize,
}

pub(crate) fn step_error(step: usize, e: StepError) -> InvariantViolation {
    match e {
        StepError::Stuck(term) => InvariantViolation::Stuck { step, term },
        StepError::NonCanonical(term) => InvariantViolation::CanonicalForm { step, term },
    }
}

/// Runs at most `fuel` steps, typechecking after every step.
pub fn eval<D: CastStruct>(m: &Term<D>, mode: Mode, fuel: usize) -> Result<Evaluation<D>, InvariantViolation> {
    eval_with(m, mode, fuel, |_, _, _| Ok(()))
}

/// Like [`eval`], calling `observe(i, rule, term)` after step `i` (from 1).
pub fn eval_with<D: CastStruct>(
    m: &Term<D>,
    mode: Mode,
    fuel: usize,
    mut observe: impl FnMut(usize, Rule, &Term<D>) -> Result<(), InvariantViolation>,
) -> Result<Evaluation<D>, InvariantViolation> {
    let ty = type_of(&[], m, mode).map_err(InvariantViolation::IllTyped)?;
    let mut cur = m.clone();
    let mut steps = 0;
    loop {
        match step(&cur, mode).map_err(|e| step_error(steps + 1, e))? {
            StepResult::Value => return Ok(Evaluation { outcome: Outcome::Value(cur), steps }),
            StepResult::Blame(l) => return Ok(Evaluation { outcome: Outcome::Blamed(l), steps }),
            StepResult::Stepped(next, rule) => {
                if steps == fuel {
                    return Ok(Evaluation { outcome: Outcome::Timeout, steps });
                }
                steps += 1;
                match type_of(&[], &next, mode) {
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
                observe(steps, rule, &next)?;
                cur = next;
            }
        }
    }
}
