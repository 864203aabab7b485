//! Space measurement in the space-efficient calculus, and the
//! cast-accumulating stress programs it is run on.

use castkit::cc::term::Term;
use castkit::compile::compile_closed;
use castkit::discipline::{Composable, Mode};
use castkit::eff::{Hyper, LambdaS};
use castkit::error::InvariantViolation;
use castkit::gtlc::GTerm;
use castkit::run::{Calculus, Observation, RunError};
use castkit::sc::{c_height, eval_sc_with, SizeReport};
use castkit::syntax::parse_program;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceResult {
    pub observation: Observation,
    pub steps: usize,
    /// `13 · k · 2^h` with `h` the cast height of the compiled program.
    pub witness: usize,
    pub max_real_size: usize,
    pub max_size: usize,
    pub max_adjacency: usize,
    pub reports: Vec<SizeReport>,
    pub violations: Vec<String>,
}

impl SpaceResult {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs `m` in the space-efficient calculus and checks at every step that
/// `real ≤ witness · ideal`, that `size ≤ 10 · ideal + 3` while the size
/// predicate holds, that at most 3 casts are adjacent and that the cast
/// height never grows. The evaluator's own checks count as violations.
pub fn measure_space_in<D: Composable>(m: &GTerm, fuel: usize, keep_reports: bool) -> Result<SpaceResult, RunError> {
    let out = compile_closed::<D>(m, Mode::CC)?;
    let witness = 13 * D::SIZE_HEIGHT_K * (1usize << c_height(&out.term));
    let mut r = SpaceResult {
        observation: Observation::Timeout,
        steps: 0,
        witness,
        max_real_size: 0,
        max_size: 0,
        max_adjacency: 0,
        reports: Vec::new(),
        violations: Vec::new(),
    };
    let res = eval_sc_with(&out.term, fuel, |rep, _: &Term<D>| {
        r.max_real_size = r.max_real_size.max(rep.real_size);
        r.max_size = r.max_size.max(rep.size);
        r.max_adjacency = r.max_adjacency.max(rep.adjacency);
        if rep.real_size > witness * rep.ideal_size {
            r.violations.push(format!("step {}: real size {} > {witness} x {}", rep.step, rep.real_size, rep.ideal_size));
        }
        if rep.ok_index.is_some() && rep.size > 10 * rep.ideal_size + 3 {
            r.violations.push(format!("step {}: size {} > 10 x {} + 3", rep.step, rep.size, rep.ideal_size));
        }
        if keep_reports {
            r.reports.push(rep.clone());
        }
        Ok(())
    });
    match res {
        Ok(e) => {
            r.steps = e.steps;
            r.observation = Observation::of(&e.outcome);
        }
        Err(v @ InvariantViolation::Size { .. }) => r.violations.push(v.to_string()),
        Err(v) => return Err(v.into()),
    }
    Ok(r)
}

/// [`measure_space_in`] for a composable calculus.
pub fn measure_space(m: &GTerm, calc: Calculus, fuel: usize, keep_reports: bool) -> Option<Result<SpaceResult, RunError>> {
    match calc {
        Calculus::LambdaS => Some(measure_space_in::<LambdaS>(m, fuel, keep_reports)),
        Calculus::Hyper => Some(measure_space_in::<Hyper>(m, fuel, keep_reports)),
        _ => None,
    }
}

/// A list of `n` elements encoded through `?`: `inl unit` is the empty
/// list and `inr (cons 1 rest)` a non-empty one.
fn dyn_list(n: usize) -> String {
    let mut s = "(inl Dyn unit)".to_string();
    for _ in 0..n {
        s = format!("(inr Unit (cons 1 ((lam (r : Dyn) r) {s})@1))");
    }
    s
}

/// Mutually recursive parity over a list of length `n`, with recursion
/// through self-application at `?`. `even` returns `Bool` and `odd`
/// returns `?`, so each tail call passes the result across `?` at an
/// alternating type and, without composition, leaves one more pending
/// cast per iteration.
pub fn even_odd_loop(n: usize) -> GTerm {
    let even = "(lam (e : Dyn) (lam (o : Dyn) (lam (l : Dyn) \
                (case l ((u : Dyn) true) ((p : Dyn) (((o e)@2 o)@3 (snd p)@4)@5))@6)))";
    let odd = "(lam (e : Dyn) (lam (o : Dyn) (lam (l : Dyn) \
               (case l ((u : Dyn) ((lam (b : Dyn) b) false)@7) ((p : Dyn) (((e e)@8 o)@9 (snd p)@10)@11))@12)))";
    let src = format!("((({even} {even})@13 {odd})@14 {list})@15", list = dyn_list(n));
    parse_program(&src).unwrap_or_else(|e| panic!("stress program does not parse: {e}\n{src}"))
}

/// A function passed through `n` identity functions whose parameter types
/// alternate between `Nat → Nat` and `?`, then applied.
pub fn alternating_identities(n: usize) -> GTerm {
    let mut s = "(lam (x : Nat) (inc x)@1)".to_string();
    for i in 0..n {
        let t = if i % 2 == 0 { "Dyn" } else { "(-> Nat Nat)" };
        s = format!("((lam (f : {t}) f) {s})@{}", i + 2);
    }
    parse_program(&format!("({s} 4)@{}", n + 2)).expect("stress program parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use castkit::gtlc::typecheck;
    use castkit::run::run;

    #[test]
    fn stress_programs_typecheck_and_agree() {
        for n in [0, 1, 2, 5] {
            let m = even_odd_loop(n);
            assert!(typecheck(&[], &m).is_ok(), "{m}");
            let expect = if n % 2 == 0 { "value true" } else { "value false" };
            for c in Calculus::ALL {
                assert_eq!(run(&m, c, Mode::CC, 10_000, false).unwrap().observation.to_string(), expect, "{c} {n}");
            }
            let m = alternating_identities(n);
            for c in Calculus::ALL {
                assert_eq!(run(&m, c, Mode::CC, 10_000, false).unwrap().observation.to_string(), "value 5");
            }
        }
    }

    #[test]
    fn bound_holds_on_small_loop() {
        for c in [Calculus::LambdaS, Calculus::Hyper] {
            let r = measure_space(&even_odd_loop(6), c, 10_000, false).unwrap().unwrap();
            assert!(r.holds(), "{:?}", r.violations);
            assert!(r.max_adjacency <= 3);
        }
    }
}
