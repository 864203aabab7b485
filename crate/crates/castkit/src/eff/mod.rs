//! Composable cast representations for the space-efficient calculus.

pub mod hyper;
pub mod lambda_s;

pub use hyper::{coerce_h, HCoercion, Hyper};
pub use lambda_s::{coerce_s, LambdaS, SCoercion};

use crate::cc::term::Term;
use crate::discipline::Discipline;
use crate::types::{Head, Type};

/// Pushes the component casts of an active pair or sum cast into a pair
/// or injection value. `target` is the cast's target type.
pub(crate) fn distribute<D: Discipline>(v: Term<D>, h: Head, c: D::Cast, d: D::Cast, target: &Type) -> Term<D> {
    let (tl, tr) = target.split_head(h).expect("target has the cast's head");
    match (h, v) {
        (Head::Pair, Term::Cons(a, b)) => Term::cons(Term::cast(*a, c), Term::cast(*b, d)),
        (Head::Sum, Term::Inl(_, a)) => Term::inl(tr.clone(), Term::cast(*a, c)),
        (Head::Sum, Term::Inr(_, b)) => Term::inr(tl.clone(), Term::cast(*b, d)),
        (_, v) => panic!("cannot distribute a {} cast over {v}", h.symbol()),
    }
}
