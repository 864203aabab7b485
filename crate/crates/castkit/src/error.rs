use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("type error ({rule}): {detail} in `{term}`")]
pub struct TypeError {
    pub rule: &'static str,
    pub detail: String,
    pub term: String,
}

/// A broken runtime invariant. Any of these indicates a bug in a discipline
/// or in the reduction rules, never a property of the input program.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InvariantViolation {
    #[error("input program is ill-typed: {0}")]
    IllTyped(TypeError),
    #[error("step {step}: preservation failed after `{rule}`: {detail}")]
    Preservation { step: usize, rule: String, detail: String },
    #[error("step {step}: no rule applies to non-value `{term}`")]
    Stuck { step: usize, term: String },
    #[error("step {step}: value of type Dyn is not an inert cast: `{term}`")]
    CanonicalForm { step: usize, term: String },
    #[error("step {step}: size predicate violated: {detail}")]
    Size { step: usize, detail: String },
    #[error("step {step}: safe-for {label} lost after `{rule}`")]
    BlameSafety { step: usize, label: i64, rule: String },
}
