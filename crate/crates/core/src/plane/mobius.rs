use std::fmt;

use super::circle::{circle_through, Circle};
use super::point::Point;
use crate::error::{Error, Result};
use crate::gf::{Field, Fq2};

/// z ↦ (a z + b) / (c z + d) with ad - bc ≠ 0 over GF(q²).
///
/// The matrix is scaled so the first nonzero of (a, b, c, d) is 1, hence
/// equal maps compare equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MobiusMap<'f> {
    a: Fq2<'f>,
    b: Fq2<'f>,
    c: Fq2<'f>,
    d: Fq2<'f>,
}

impl<'f> MobiusMap<'f> {
    pub fn new(a: Fq2<'f>, b: Fq2<'f>, c: Fq2<'f>, d: Fq2<'f>) -> Result<Self> {
        if (a * d - b * c).is_zero() {
            return Err(Error::SingularMap);
        }
        let lead = [a, b, c, d].into_iter().find(|v| !v.is_zero()).expect("nonsingular");
        let k = lead.inv().expect("nonzero");
        Ok(MobiusMap {
            a: a * k,
            b: b * k,
            c: c * k,
            d: d * k,
        })
    }

    pub fn identity(field: &'f Field) -> Self {
        let (o, l) = (Fq2::from(field.zero()), Fq2::from(field.one()));
        MobiusMap { a: l, b: o, c: o, d: l }
    }

    /// z ↦ z + t.
    pub fn translation(t: Fq2<'f>) -> Self {
        let f = t.field();
        let (o, l) = (Fq2::from(f.zero()), Fq2::from(f.one()));
        MobiusMap { a: l, b: t, c: o, d: l }
    }

    /// z ↦ k z + t, k ≠ 0.
    pub fn affine(k: Fq2<'f>, t: Fq2<'f>) -> Result<Self> {
        let f = k.field();
        MobiusMap::new(k, t, Fq2::from(f.zero()), Fq2::from(f.one()))
    }

    pub fn matrix(&self) -> [Fq2<'f>; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn apply(&self, p: Point<'f>) -> Point<'f> {
        match p {
            Point::Finite(z) => {
                let den = self.c * z + self.d;
                if den.is_zero() {
                    Point::Infinity
                } else {
                    Point::Finite((self.a * z + self.b) / den)
                }
            }
            Point::Infinity => {
                if self.c.is_zero() {
                    Point::Infinity
                } else {
                    Point::Finite(self.a / self.c)
                }
            }
        }
    }

    /// Image of a circle, carried through its Hermitian form: if the circle
    /// is v†Hv = 0 then its image is v†(N†HN)v = 0 with N = adj(M).
    pub fn apply_circle(&self, circle: &Circle<'f>) -> Circle<'f> {
        let (ha, hb, hc) = circle.hermitian();
        let (ha, hc) = (Fq2::from(ha), Fq2::from(hc));
        let hb_bar = hb.conj();
        let (n11, n12, n21, n22) = (self.d, -self.b, -self.c, self.a);
        // H N
        let (m11, m12) = (ha * n11 + hb * n21, ha * n12 + hb * n22);
        let (m21, m22) = (hb_bar * n11 + hc * n21, hb_bar * n12 + hc * n22);
        let a2 = n11.conj() * m11 + n21.conj() * m21;
        let b2 = n11.conj() * m12 + n21.conj() * m22;
        let c2 = n12.conj() * m12 + n22.conj() * m22;
        debug_assert!(a2.is_base() && c2.is_base());
        Circle::from_hermitian(a2.x, b2, c2.x).expect("Möbius maps send circles to circles")
    }

    /// Image of a circle rebuilt from the images of three of its points.
    /// Slower than [`MobiusMap::apply_circle`]; kept as a cross-check.
    pub fn apply_circle_by_points(&self, circle: &Circle<'f>) -> Circle<'f> {
        let pts = circle.points();
        circle_through(self.apply(pts[0]), self.apply(pts[1]), self.apply(pts[2]))
            .expect("injective map keeps points distinct")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap<'f>) -> MobiusMap<'f> {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let (e, f, g, h) = (other.a, other.b, other.c, other.d);
        MobiusMap::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
            .expect("product of invertible matrices")
    }

    pub fn inverse(&self) -> MobiusMap<'f> {
        MobiusMap::new(self.d, -self.b, -self.c, self.a).expect("invertible")
    }

    /// The map sending `(z1, z2, z3)` to `(0, 1, ∞)`.
    pub fn to_standard(z1: Point<'f>, z2: Point<'f>, z3: Point<'f>) -> Result<Self> {
        if z1 == z2 || z1 == z3 || z2 == z3 {
            return Err(Error::CoincidentPoints);
        }
        let f = [z1, z2, z3].iter().find_map(Point::finite).expect("two finite points").field();
        let (zero, one) = (Fq2::from(f.zero()), Fq2::from(f.one()));
        match (z1, z2, z3) {
            (Point::Infinity, Point::Finite(b), Point::Finite(c)) => {
                MobiusMap::new(zero, b - c, one, -c)
            }
            (Point::Finite(a), Point::Infinity, Point::Finite(c)) => {
                MobiusMap::new(one, -a, one, -c)
            }
            (Point::Finite(a), Point::Finite(b), Point::Infinity) => {
                MobiusMap::new(one, -a, zero, b - a)
            }
            (Point::Finite(a), Point::Finite(b), Point::Finite(c)) => {
                MobiusMap::new(b - c, -(a * (b - c)), b - a, -(c * (b - a)))
            }
            _ => unreachable!("at most one point is infinite"),
        }
    }

    /// The unique map sending each `src[i]` to `dst[i]`.
    pub fn from_three_points(src: [Point<'f>; 3], dst: [Point<'f>; 3]) -> Result<Self> {
        let s = MobiusMap::to_standard(src[0], src[1], src[2])?;
        let t = MobiusMap::to_standard(dst[0], dst[1], dst[2])?;
        Ok(t.inverse().compose(&s))
    }
}

impl fmt::Display for MobiusMap<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for MobiusMap<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MobiusMap{self}")
    }
}
