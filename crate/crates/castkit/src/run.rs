//! Runs a source program under a named calculus.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::calculi::{Edc, Eda, Edi, LambdaB1, LambdaB2, LambdaC, Ldc};
use crate::cc::eval::{eval_with, Evaluation, Outcome};
use crate::cc::term::{observe, Term};
use crate::compile::compile_closed;
use crate::discipline::{CastStruct, Composable, Discipline, Mode};
use crate::eff::{Hyper, LambdaS};
use crate::error::{InvariantViolation, TypeError};
use crate::gtlc::GTerm;
use crate::sc::eval_sc_with;
use crate::types::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Calculus {
    Eda,
    Edi,
    LambdaB1,
    LambdaB2,
    Edc,
    Ldc,
    LambdaC,
    LambdaS,
    Hyper,
}

impl Calculus {
    pub const ALL: [Calculus; 9] = [
        Calculus::Eda,
        Calculus::Edi,
        Calculus::LambdaB1,
        Calculus::LambdaB2,
        Calculus::Edc,
        Calculus::Ldc,
        Calculus::LambdaC,
        Calculus::LambdaS,
        Calculus::Hyper,
    ];

    /// The calculi evaluated by the plain cast calculus.
    pub const PLAIN: [Calculus; 7] = [
        Calculus::Eda,
        Calculus::Edi,
        Calculus::LambdaB1,
        Calculus::LambdaB2,
        Calculus::Edc,
        Calculus::Ldc,
        Calculus::LambdaC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Calculus::Eda => Eda::NAME,
            Calculus::Edi => Edi::NAME,
            Calculus::LambdaB1 => LambdaB1::NAME,
            Calculus::LambdaB2 => LambdaB2::NAME,
            Calculus::Edc => Edc::NAME,
            Calculus::Ldc => Ldc::NAME,
            Calculus::LambdaC => LambdaC::NAME,
            Calculus::LambdaS => LambdaS::NAME,
            Calculus::Hyper => Hyper::NAME,
        }
    }

    /// Whether the calculus runs in the space-efficient calculus.
    pub fn is_composable(self) -> bool {
        matches!(self, Calculus::LambdaS | Calculus::Hyper)
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown calculus `{0}`")]
pub struct UnknownCalculus(pub String);

impl FromStr for Calculus {
    type Err = UnknownCalculus;

    fn from_str(s: &str) -> Result<Calculus, UnknownCalculus> {
        Calculus::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| UnknownCalculus(s.to_string()))
    }
}

/// What a run shows to the outside.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Observation {
    Value(String),
    Blame(Label),
    Timeout,
}

impl Observation {
    pub fn of<D: Discipline>(o: &Outcome<D>) -> Observation {
        match o {
            Outcome::Value(v) => Observation::Value(observe(v)),
            Outcome::Blamed(l) => Observation::Blame(*l),
            Outcome::Timeout => Observation::Timeout,
        }
    }
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observation::Value(v) => write!(f, "value {v}"),
            Observation::Blame(l) => write!(f, "blame {l}"),
            Observation::Timeout => write!(f, "timeout"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub observation: Observation,
    pub steps: usize,
    /// One line `{n} {rule} {term}` per step, when tracing.
    pub trace: Vec<String>,
}

impl RunOutput {
    /// The trace lines followed by the observation, one per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.trace {
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&self.observation.to_string());
        out.push('\n');
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RunError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Invariant(#[from] InvariantViolation),
}

fn finish<D: Discipline>(e: Evaluation<D>, trace: Vec<String>) -> RunOutput {
    RunOutput { observation: Observation::of(&e.outcome), steps: e.steps, trace }
}

/// Compiles and runs `m` in the plain cast calculus.
pub fn run_plain<D: CastStruct>(m: &GTerm, mode: Mode, fuel: usize, trace: bool) -> Result<RunOutput, RunError> {
    let out = compile_closed::<D>(m, mode)?;
    let mut lines = Vec::new();
    let e = eval_with(&out.term, mode, fuel, |n, rule, t: &Term<D>| {
        if trace {
            lines.push(format!("{n} {rule} {t}"));
        }
        Ok(())
    })?;
    Ok(finish(e, lines))
}

/// Compiles and runs `m` in the space-efficient calculus.
pub fn run_sc<D: Composable>(m: &GTerm, fuel: usize, trace: bool) -> Result<RunOutput, RunError> {
    let out = compile_closed::<D>(m, Mode::CC)?;
    let mut lines = Vec::new();
    let e = eval_sc_with(&out.term, fuel, |r, t: &Term<D>| {
        if trace {
            lines.push(format!("{} {} {t}", r.step, r.rule));
        }
        Ok(())
    })?;
    Ok(finish(e, lines))
}

/// Runs `m` under `calc`. The mode is ignored by the space-efficient
/// calculi.
pub fn run(m: &GTerm, calc: Calculus, mode: Mode, fuel: usize, trace: bool) -> Result<RunOutput, RunError> {
    match calc {
        Calculus::Eda => run_plain::<Eda>(m, mode, fuel, trace),
        Calculus::Edi => run_plain::<Edi>(m, mode, fuel, trace),
        Calculus::LambdaB1 => run_plain::<LambdaB1>(m, mode, fuel, trace),
        Calculus::LambdaB2 => run_plain::<LambdaB2>(m, mode, fuel, trace),
        Calculus::Edc => run_plain::<Edc>(m, mode, fuel, trace),
        Calculus::Ldc => run_plain::<Ldc>(m, mode, fuel, trace),
        Calculus::LambdaC => run_plain::<LambdaC>(m, mode, fuel, trace),
        Calculus::LambdaS => run_sc::<LambdaS>(m, fuel, trace),
        Calculus::Hyper => run_sc::<Hyper>(m, fuel, trace),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{Dyn, Type};

    #[test]
    fn names_round_trip() {
        for c in Calculus::ALL {
            assert_eq!(c.name().parse::<Calculus>(), Ok(c));
        }
        assert!("lambda-z".parse::<Calculus>().is_err());
    }

    #[test]
    fn identity_through_dyn_everywhere() {
        let m = GTerm::app(GTerm::lam(Dyn, GTerm::Var(0)), GTerm::nat(4), 1);
        for c in Calculus::ALL {
            for mode in [Mode::CC, Mode::CCPrime] {
                let r = run(&m, c, mode, 100, true).unwrap();
                assert_eq!(r.observation.to_string(), "value 4", "{c}");
                assert_eq!(r.trace.len(), r.steps);
            }
        }
        let bad = GTerm::app(GTerm::lam(Type::nat(), GTerm::Var(0)), GTerm::bool(true), 1);
        assert!(matches!(run(&bad, Calculus::Eda, Mode::CC, 100, false), Err(RunError::Type(_))));
    }
}
