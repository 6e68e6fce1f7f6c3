use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, Fq2};

/// A point of M(q): an element of GF(q²) or the point at infinity.
///
/// Ordering puts every finite point (in GF(q²) order) before infinity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point<'f> {
    Finite(Fq2<'f>),
    Infinity,
}

impl<'f> Point<'f> {
    pub fn finite(&self) -> Option<Fq2<'f>> {
        match self {
            Point::Finite(z) => Some(*z),
            Point::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    /// `infinity` (also `inf`, `∞`) or a GF(q²) literal.
    pub fn parse(field: &'f Field, text: &str) -> Result<Point<'f>> {
        match text.trim() {
            "infinity" | "inf" | "∞" => Ok(Point::Infinity),
            t => field.parse_fq2(t).map(Point::Finite),
        }
    }
}

impl<'f> From<Fq2<'f>> for Point<'f> {
    fn from(z: Fq2<'f>) -> Self {
        Point::Finite(z)
    }
}

impl fmt::Display for Point<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(z) => write!(f, "{z}"),
            Point::Infinity => f.write_str("infinity"),
        }
    }
}

impl fmt::Debug for Point<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point({self})")
    }
}

/// All q² + 1 points, infinity last.
pub fn points(field: &Field) -> impl Iterator<Item = Point<'_>> + '_ {
    field
        .ext_elements()
        .map(Point::Finite)
        .chain(std::iter::once(Point::Infinity))
}

pub(crate) fn parse_error(text: &str, what: &str) -> Error {
    Error::Parse(format!("bad {what} '{text}'"))
}
