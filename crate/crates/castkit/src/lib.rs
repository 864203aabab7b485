//! Gradual typing workbench: the gradually typed lambda calculus, cast
//! insertion, a cast calculus parameterized by the cast representation,
//! a space-efficient variant, and eight concrete cast disciplines.

pub mod calculi;
pub mod cc;
pub mod compile;
pub mod discipline;
pub mod eff;
pub mod error;
pub mod gtlc;
pub mod run;
pub mod sc;
pub mod syntax;
pub mod types;
