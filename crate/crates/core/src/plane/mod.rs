//! Points, circles and Möbius maps of the Miquelian plane M(q).

mod circle;
mod mobius;
mod point;

pub use circle::{circle_count, circle_through, circles, Circle, CircleKind};
pub use mobius::MobiusMap;
pub use point::{points, Point};

use crate::gf::{Field, Fq2};

/// The standard tangent pair B²(1, -1), B²(1, 1), touching at ∞.
pub fn standard_tangent_pair(field: &Field) -> (Circle<'_>, Circle<'_>) {
    let one = Fq2::from(field.one());
    (
        Circle::second(one, -field.one()).expect("nonzero center"),
        Circle::second(one, field.one()).expect("nonzero center"),
    )
}
