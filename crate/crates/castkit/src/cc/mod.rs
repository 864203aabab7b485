//! The parameterized cast calculus and its primed variant.

pub mod eta;
pub mod eval;
pub mod precision;
pub mod safe;
pub mod step;
pub mod subst;
pub mod term;
pub mod typing;

pub use eval::{eval, eval_with, Evaluation, Outcome, DEFAULT_FUEL};
pub use precision::{cterm_precision, cterm_precision_in};
pub use safe::safe_for;
pub use step::{step, Rule, StepError, StepResult};
pub use term::{observe, Term};
pub use typing::type_of;
