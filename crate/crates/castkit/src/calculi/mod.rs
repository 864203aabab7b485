//! Cast disciplines for the plain cast calculus.

pub mod coercion;
pub mod edc;
pub mod lambda_c;
pub mod typebased;

pub use coercion::Coercion;
pub use edc::{coerce_edc, coerce_ldc, Edc, Ldc};
pub use lambda_c::{coerce_lc, LambdaC};
pub use typebased::{Eda, Edi, LambdaB1, LambdaB2, TCast};
