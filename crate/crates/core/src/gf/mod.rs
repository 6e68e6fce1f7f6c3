//! Exact arithmetic in GF(q) and its quadratic extension GF(q²).

pub mod algo;
mod ext;
mod field;
pub mod poly;

pub use algo::{prime_power, FieldElement};
pub use ext::Fq2;
pub use field::{ArithOp, Field, Fq, MAX_ORDER};
