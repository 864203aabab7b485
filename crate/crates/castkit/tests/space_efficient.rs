use castkit::cc::eval::Outcome;
use castkit::cc::step::{Rule, StepResult};
use castkit::cc::term::Term;
use castkit::discipline::{Composable, Discipline};
use castkit::eff::{Hyper, LambdaS};
use castkit::gtlc::Const;
use castkit::sc::{adjacency, eval_sc, eval_sc_with, ideal_size, real_size, size, size_ok, step_sc};
use castkit::types::{Dyn, Label, Type};

fn triple<D: Discipline>() -> Term<D> {
    let l = Label::new(7);
    let one = Term::Const(Const::Int(1));
    let inj = || D::make_cast(&Type::int(), &Dyn, l);
    Term::cast(Term::cast(Term::cast(one, inj()), D::make_cast(&Dyn, &Type::int(), l)), inj())
}

fn composes_outside_in<D: Composable>() {
    let m = triple::<D>();
    assert_eq!(size_ok(&m, false), Some(3));
    assert_eq!(size_ok(&m, true), None);
    assert_eq!(adjacency(&m), 3);
    assert_eq!(size(&m), 1 + 3);
    assert_eq!(ideal_size(&m), 1);

    let StepResult::Stepped(m1, r1) = step_sc(&m).unwrap() else { panic!("no step") };
    assert_eq!(r1, Rule::Compose);
    let Term::Cast(inner, _) = &m1 else { panic!("{m1}") };
    assert!(matches!(**inner, Term::Cast(ref k, _) if matches!(**k, Term::Const(_))));
    let StepResult::Stepped(m2, r2) = step_sc(&m1).unwrap() else { panic!("no step") };
    assert_eq!(r2, Rule::Compose);
    assert_eq!(m2, Term::cast(Term::Const(Const::Int(1)), D::make_cast(&Type::int(), &Dyn, Label::new(9))));
    assert!(matches!(step_sc(&m2).unwrap(), StepResult::Value));
}

#[test]
fn triple_cast_composes_in_lambda_s() {
    composes_outside_in::<LambdaS>();
}

#[test]
fn triple_cast_composes_in_hyper() {
    composes_outside_in::<Hyper>();
}

#[test]
fn projection_mismatch_blames_through_composition() {
    let l = Label::new(4);
    let m: Term<LambdaS> = Term::cast(
        Term::cast(Term::Const(Const::Bool(true)), LambdaS::make_cast(&Type::bool(), &Dyn, Label::new(1))),
        LambdaS::make_cast(&Dyn, &Type::nat(), l),
    );
    assert_eq!(eval_sc(&m, 100).unwrap().outcome, Outcome::Blamed(l));
}

#[test]
fn real_size_bounded_by_size() {
    let m = triple::<Hyper>();
    let mut seen = 0;
    eval_sc_with(&m, 100, |r, t: &Term<Hyper>| {
        seen += 1;
        assert!(real_size(t) <= Hyper::SIZE_HEIGHT_K * (1 << r.c_height) * size(t));
        Ok(())
    })
    .unwrap();
    assert_eq!(seen, 2);
}
