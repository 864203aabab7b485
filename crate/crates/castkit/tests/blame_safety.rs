use castkit::calculi::{Coercion, Edc, Ldc, LambdaC};
use castkit::cc::eval::{eval, Outcome};
use castkit::cc::safe::safe_for;
use castkit::cc::term::Term;
use castkit::compile::compile_closed;
use castkit::discipline::{BlameSafe, CastStruct, Mode};
use castkit::syntax::parse_program;
use castkit::types::Label;

/// A function flowing through `?` applied to a value of the wrong type.
/// The projection `(? -> ?)?3` fires and builds a function coercion whose
/// domain projection carries `-3`, which is then blamed.
const WRONG_ARGUMENT: &str = "(((lam (x : Dyn) x) not)@1 ((lam (x : Dyn) x) 1)@2)@3";

fn literally_safe<D: BlameSafe<Cast = Coercion>>(m: &Term<D>, l: Label) -> bool {
    m.casts().into_iter().all(|c| c.blame_safe(l)) && !m.blame_labels().contains(&l)
}

fn complement_case<D: CastStruct + BlameSafe<Cast = Coercion>>() {
    let m = parse_program(WRONG_ARGUMENT).unwrap();
    let out = compile_closed::<D>(&m, Mode::CCPrime).unwrap();
    let neg = Label::new(-3);
    let e = eval(&out.term, Mode::CCPrime, 1000).unwrap();
    assert_eq!(e.outcome, Outcome::Blamed(neg));
    // The label-inequality rule alone calls the program safe for -3.
    assert!(literally_safe(&out.term, neg));
    assert!(!safe_for(&out.term, neg));
    assert!(safe_for(&out.term, Label::new(1)));
}

#[test]
fn edc_projection_blames_the_complement() {
    complement_case::<Edc>();
}

#[test]
fn ldc_projection_blames_the_complement() {
    complement_case::<Ldc>();
}

#[test]
fn lambda_c_blames_the_injection_site() {
    let m = parse_program(WRONG_ARGUMENT).unwrap();
    let out = compile_closed::<LambdaC>(&m, Mode::CCPrime).unwrap();
    let e = eval(&out.term, Mode::CCPrime, 1000).unwrap();
    // The function coercion is built when `not` is injected, with label 1.
    assert_eq!(e.outcome, Outcome::Blamed(Label::new(1)));
    assert!(!safe_for(&out.term, Label::new(1)));
    assert!(safe_for(&out.term, Label::new(-3)));
}
