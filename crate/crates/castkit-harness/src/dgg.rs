//! The dynamic gradual guarantee for the primed λB calculi, checked by
//! running a program and a more precise variant side by side.

use castkit::calculi::{LambdaB1, LambdaB2};
use castkit::cc::eval::{eval, Outcome};
use castkit::cc::precision::cterm_precision;
use castkit::compile::compile_closed;
use castkit::discipline::{CastStruct, Mode, WithPrecision};
use castkit::gtlc::{gterm_precision, GTerm};
use castkit::run::{Calculus, Observation};

/// How much more fuel a timed-out side gets when the other side finished,
/// before the mismatch counts.
pub const FUEL_RETRY_FACTOR: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimResult {
    pub calculus: Calculus,
    pub less: Observation,
    pub more: Observation,
    /// Descriptions of violated clauses; empty when all four hold.
    pub violations: Vec<String>,
}

impl SimResult {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn run_primed<D: CastStruct>(m: &GTerm, fuel: usize) -> Result<Outcome<D>, String> {
    let out = compile_closed::<D>(m, Mode::CCPrime).map_err(|e| e.to_string())?;
    eval(&out.term, Mode::CCPrime, fuel).map(|e| e.outcome).map_err(|e| e.to_string())
}

/// Checks the four clauses for `m ⊑ m2` in one calculus:
///
/// 1. if `m2` reaches a value `W` then `m` reaches some `V ⊑ W`;
/// 2. if `m2` diverges then `m` diverges;
/// 3. if `m` reaches a value `V` then `m2` reaches some `W ⊒ V` or blames;
/// 4. if `m` diverges then `m2` diverges or blames.
///
/// Divergence is running out of fuel. When exactly one side times out it
/// is rerun with more fuel first.
pub fn check_simulation_in<D: CastStruct + WithPrecision>(
    calculus: Calculus,
    m: &GTerm,
    m2: &GTerm,
    fuel: usize,
) -> SimResult {
    let mut violations = Vec::new();
    if !gterm_precision(m, m2) {
        violations.push(format!("precondition: {m} is not less precise than {m2}"));
    }
    let (mut a, mut b) = match (run_primed::<D>(m, fuel), run_primed::<D>(m2, fuel)) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => {
            for e in [a.err(), b.err()].into_iter().flatten() {
                violations.push(e);
            }
            let o = Observation::Timeout;
            return SimResult { calculus, less: o.clone(), more: o, violations };
        }
    };
    let big = fuel * FUEL_RETRY_FACTOR;
    if matches!(a, Outcome::Timeout) && !matches!(b, Outcome::Timeout) {
        a = run_primed::<D>(m, big).unwrap_or(Outcome::Timeout);
    } else if matches!(b, Outcome::Timeout) && !matches!(a, Outcome::Timeout) {
        b = run_primed::<D>(m2, big).unwrap_or(Outcome::Timeout);
    }
    match (&a, &b) {
        (Outcome::Value(v), Outcome::Value(w)) => {
            if !cterm_precision(v, w) {
                violations.push(format!("clauses 1/3: values not related: {v} and {w}"));
            }
        }
        (_, Outcome::Value(w)) => violations.push(format!("clause 1: more precise side reached {w}")),
        (Outcome::Value(_), Outcome::Blamed(_)) => {}
        (Outcome::Value(v), Outcome::Timeout) => {
            violations.push(format!("clause 2/3: less precise side reached {v}, more precise diverged"))
        }
        (Outcome::Timeout, Outcome::Blamed(_) | Outcome::Timeout) => {}
        (Outcome::Blamed(_), Outcome::Blamed(_)) => {}
        (Outcome::Blamed(l), Outcome::Timeout) => {
            violations.push(format!("clause 2: more precise side diverged, less precise blamed {l}"))
        }
    }
    SimResult { calculus, less: Observation::of(&a), more: Observation::of(&b), violations }
}

/// Runs [`check_simulation_in`] for both primed λB variants.
pub fn check_simulation(m: &GTerm, m2: &GTerm, fuel: usize) -> [SimResult; 2] {
    [
        check_simulation_in::<LambdaB1>(Calculus::LambdaB1, m, m2, fuel),
        check_simulation_in::<LambdaB2>(Calculus::LambdaB2, m, m2, fuel),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use castkit::types::{Dyn, Type};

    #[test]
    fn identity_precision_example() {
        let m = GTerm::app(GTerm::lam(Dyn, GTerm::Var(0)), GTerm::nat(42), 1);
        let m2 = GTerm::app(GTerm::lam(Type::nat(), GTerm::Var(0)), GTerm::nat(42), 2);
        for r in check_simulation(&m, &m2, 1000) {
            assert!(r.holds(), "{r:?}");
            assert_eq!(r.more, Observation::Value("42".into()));
            assert_eq!(r.less, Observation::Value("42".into()));
        }
    }

    #[test]
    fn reflexive_pairs_hold() {
        let m = GTerm::app(GTerm::lam(Type::fun(Dyn, Dyn), GTerm::Var(0)), GTerm::lam(Dyn, GTerm::Var(0)), 1);
        for r in check_simulation(&m, &m, 1000) {
            assert!(r.holds(), "{r:?}");
        }
    }
}
