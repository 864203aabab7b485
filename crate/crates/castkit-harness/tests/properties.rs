use proptest::prelude::*;

use castkit::calculi::{Eda, Edc, Edi, LambdaB1, LambdaB2, LambdaC, Ldc};
use castkit::cc::eval::Outcome;
use castkit::cc::typing::type_of;
use castkit::compile::compile_closed;
use castkit::discipline::{Class, Composable, Discipline, Mode};
use castkit::eff::{Hyper, LambdaS};
use castkit::gtlc::{gterm_precision, typecheck, GTerm};
use castkit::run::{run, Calculus};
use castkit::sc::{eval_sc, size_ok};
use castkit::syntax::parse_program;
use castkit::types::{Label, Type};
use castkit_harness::dgg::check_simulation;
use castkit_harness::gen::{gen_typed_program, random_loosening, GenConfig};
use castkit_harness::space::measure_space;
use castkit_harness::terms::less_precise;

const FUEL: usize = 2_000;

fn arb_program() -> impl Strategy<Value = GTerm> {
    (any::<u64>(), 0usize..3, 1usize..=6).prop_map(|(seed, bias, max_depth)| {
        let dyn_bias = [0.0, 0.5, 1.0][bias];
        gen_typed_program(&GenConfig { seed, max_depth, dyn_bias, ..GenConfig::default() })
    })
}

fn arb_calculus() -> impl Strategy<Value = Calculus> {
    prop::sample::select(Calculus::ALL.to_vec())
}

fn arb_mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::CC), Just(Mode::CCPrime)]
}

fn compiles_at_source_type<D: Discipline>(m: &GTerm, ty: &Type, mode: Mode) -> Result<(), TestCaseError> {
    let out = compile_closed::<D>(m, mode).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&out.ty, ty);
    let got = type_of(&[], &out.term, mode).map_err(|e| TestCaseError::fail(format!("{}: {e}", D::NAME)))?;
    prop_assert_eq!(&got, ty, "{}", D::NAME);
    Ok(())
}

/// Size of the size predicate after applying an active cast to a value.
fn apply_cast_size<D: Composable>(m: &GTerm, target_choice: usize) -> Result<(), TestCaseError> {
    let out = compile_closed::<D>(m, Mode::CC).unwrap();
    let Ok(e) = eval_sc(&out.term, FUEL) else { return Err(TestCaseError::fail("evaluation failed")) };
    let Outcome::Value(v) = e.outcome else { return Ok(()) };
    let Some(n) = size_ok(&v, false) else { return Err(TestCaseError::fail(format!("value {v} is not OK"))) };
    let targets = less_precise(&out.ty);
    let b = &targets[target_choice % targets.len()];
    let c = D::make_cast(&out.ty, b, Label::new(99));
    if D::classify(&c) == Class::Inert {
        return Ok(());
    }
    let r = D::apply_cast_sc(v.clone(), &c);
    match size_ok(&r, false) {
        Some(k) => prop_assert!(k <= n + 2, "{}: applying {} to {} gives size {} from {}", D::NAME, c, v, k, n),
        None => prop_assert!(false, "{}: applying {} to {} breaks the size predicate", D::NAME, c, v),
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_programs_typecheck(m in arb_program()) {
        prop_assert!(typecheck(&[], &m).is_ok(), "{}", m);
    }

    #[test]
    fn printing_then_parsing_is_the_identity(m in arb_program()) {
        let printed = m.to_string();
        let back = parse_program(&printed).map_err(|e| TestCaseError::fail(format!("{e}: {printed}")))?;
        prop_assert_eq!(back, m);
    }

    #[test]
    fn runs_are_deterministic(m in arb_program(), calc in arb_calculus(), mode in arb_mode()) {
        let a = run(&m, calc, mode, FUEL, true);
        let b = run(&m, calc, mode, FUEL, true);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn compilation_preserves_types(m in arb_program(), mode in arb_mode()) {
        let ty = typecheck(&[], &m).unwrap();
        compiles_at_source_type::<Eda>(&m, &ty, mode)?;
        compiles_at_source_type::<Edi>(&m, &ty, mode)?;
        compiles_at_source_type::<LambdaB1>(&m, &ty, mode)?;
        compiles_at_source_type::<LambdaB2>(&m, &ty, mode)?;
        compiles_at_source_type::<Edc>(&m, &ty, mode)?;
        compiles_at_source_type::<Ldc>(&m, &ty, mode)?;
        compiles_at_source_type::<LambdaC>(&m, &ty, mode)?;
        compiles_at_source_type::<LambdaS>(&m, &ty, Mode::CC)?;
        compiles_at_source_type::<Hyper>(&m, &ty, Mode::CC)?;
    }

    #[test]
    fn compiled_programs_have_at_most_one_adjacent_cast(m in arb_program()) {
        let s = compile_closed::<LambdaS>(&m, Mode::CC).unwrap().term;
        prop_assert!(matches!(size_ok(&s, false), Some(n) if n <= 1));
        let h = compile_closed::<Hyper>(&m, Mode::CC).unwrap().term;
        prop_assert!(matches!(size_ok(&h, false), Some(n) if n <= 1));
    }

    #[test]
    fn space_bounds_hold_along_traces(m in arb_program()) {
        for calc in [Calculus::LambdaS, Calculus::Hyper] {
            let r = measure_space(&m, calc, FUEL, false).unwrap().map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!(r.holds(), "{}: {:?}", calc, r.violations);
            prop_assert!(r.max_adjacency <= 3);
        }
    }

    #[test]
    fn apply_cast_adds_at_most_two_adjacent_casts(m in arb_program(), pick in any::<usize>()) {
        apply_cast_size::<LambdaS>(&m, pick)?;
        apply_cast_size::<Hyper>(&m, pick)?;
    }

    #[test]
    fn space_efficient_calculi_agree(m in arb_program()) {
        let s = run(&m, Calculus::LambdaS, Mode::CC, FUEL, false).unwrap();
        let h = run(&m, Calculus::Hyper, Mode::CC, FUEL, false).unwrap();
        prop_assert_eq!(s.observation, h.observation);
    }

    #[test]
    fn loosening_satisfies_the_gradual_guarantee(m in arb_program(), seed in any::<u64>()) {
        let loose = random_loosening(&m, seed, 0.5);
        prop_assert!(gterm_precision(&loose, &m));
        prop_assert!(typecheck(&[], &loose).is_ok(), "{}", loose);
        for r in check_simulation(&loose, &m, FUEL) {
            prop_assert!(r.holds(), "{}: {:?}", r.calculus, r.violations);
        }
    }
}
