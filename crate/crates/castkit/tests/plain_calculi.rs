use castkit::calculi::{Edc, Eda, Edi, LambdaB1, LambdaB2, LambdaC, Ldc};
use castkit::cc::{eval, observe, Outcome, DEFAULT_FUEL};
use castkit::compile::compile_closed;
use castkit::discipline::{CastStruct, Mode};
use castkit::gtlc::{GTerm, Prim};
use castkit::types::{Dyn, Type};

fn run<D: CastStruct>(m: &GTerm, mode: Mode) -> String {
    let out = compile_closed::<D>(m, mode).unwrap();
    match eval(&out.term, mode, DEFAULT_FUEL).unwrap().outcome {
        Outcome::Value(v) => format!("value {}", observe(&v)),
        Outcome::Blamed(l) => format!("blame {l}"),
        Outcome::Timeout => "timeout".to_string(),
    }
}

fn all(m: &GTerm) -> Vec<String> {
    let mut out = Vec::new();
    for mode in [Mode::CC, Mode::CCPrime] {
        out.push(run::<Eda>(m, mode));
        out.push(run::<Edi>(m, mode));
        out.push(run::<LambdaB1>(m, mode));
        out.push(run::<LambdaB2>(m, mode));
        out.push(run::<Edc>(m, mode));
        out.push(run::<Ldc>(m, mode));
        out.push(run::<LambdaC>(m, mode));
    }
    out
}

#[test]
fn identity_through_dyn() {
    let m = GTerm::app(GTerm::lam(Dyn, GTerm::Var(0)), GTerm::nat(4), 1);
    assert!(all(&m).iter().all(|r| r == "value 4"), "{:?}", all(&m));
}

#[test]
fn bool_projected_to_nat_blames_projection() {
    // ((λx:Dyn. (inc x)@2) true)@1
    let body = GTerm::app(GTerm::prim(Prim::Inc), GTerm::Var(0), 2);
    let m = GTerm::app(GTerm::lam(Dyn, body), GTerm::bool(true), 1);
    assert!(all(&m).iter().all(|r| r == "blame 2"), "{:?}", all(&m));
}

#[test]
fn higher_order_through_dyn() {
    // ((λf:Dyn. (f 3)@2) (λx:Nat. (inc x)@3))@1
    let f = GTerm::lam(Dyn, GTerm::app(GTerm::Var(0), GTerm::nat(3), 2));
    let g = GTerm::lam(Type::nat(), GTerm::app(GTerm::prim(Prim::Inc), GTerm::Var(0), 3));
    let m = GTerm::app(f, g, 1);
    assert!(all(&m).iter().all(|r| r == "value 4"), "{:?}", all(&m));
}
