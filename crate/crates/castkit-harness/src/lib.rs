//! Program generation, differential runs, gradual-guarantee checks, space
//! measurement and coercion enumeration for castkit.

pub mod dgg;
pub mod enumerate;
pub mod diff;
pub mod gen;
pub mod golden;
pub mod space;
pub mod suites;
pub mod terms;
