use std::fmt;

use super::point::{parse_error, Point};
use crate::error::{Error, Result};
use crate::gf::{Field, Fq, Fq2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CircleKind {
    /// N(z - c) = r, r ≠ 0.
    First,
    /// Tr(c̄ z) = r together with ∞, c ≠ 0, stored in canonical scaling.
    Second,
}

/// A circle of M(q) in canonical form, so `==` is circle equality.
///
/// Second-type parameters are scaled so that the first nonzero entry of
/// `(c.x, c.y, r)` is 1. Orders first-type before second-type circles,
/// then by `(c, r)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circle<'f> {
    kind: CircleKind,
    c: Fq2<'f>,
    r: Fq<'f>,
}

impl<'f> Circle<'f> {
    /// B¹(c, r).
    pub fn first(c: Fq2<'f>, r: Fq<'f>) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroRadius);
        }
        Ok(Circle {
            kind: CircleKind::First,
            c,
            r,
        })
    }

    /// B²(c, r), canonicalized.
    pub fn second(c: Fq2<'f>, r: Fq<'f>) -> Result<Self> {
        let lead = [c.x, c.y]
            .into_iter()
            .find(|v| !v.is_zero())
            .ok_or(Error::ZeroCenter)?;
        let k = lead.inv().expect("nonzero");
        Ok(Circle {
            kind: CircleKind::Second,
            c: c.scale(k),
            r: r * k,
        })
    }

    pub fn kind(&self) -> CircleKind {
        self.kind
    }

    pub fn is_first(&self) -> bool {
        self.kind == CircleKind::First
    }

    pub fn c(&self) -> Fq2<'f> {
        self.c
    }

    pub fn r(&self) -> Fq<'f> {
        self.r
    }

    pub fn field(&self) -> &'f Field {
        self.r.field()
    }

    pub fn incident(&self, p: Point<'f>) -> bool {
        match (self.kind, p) {
            (CircleKind::First, Point::Finite(z)) => (z - self.c).norm() == self.r,
            (CircleKind::First, Point::Infinity) => false,
            (CircleKind::Second, Point::Finite(z)) => (self.c.conj() * z).trace() == self.r,
            (CircleKind::Second, Point::Infinity) => true,
        }
    }

    /// The q + 1 points on the circle, in canonical point order.
    pub fn points(&self) -> Vec<Point<'f>> {
        let f = self.field();
        let alpha = f.alpha();
        let mut out = Vec::with_capacity(f.q() as usize + 1);
        match self.kind {
            CircleKind::First => {
                // (x - cx)² = r + α (y - cy)² for each y
                for y in f.elements() {
                    let dy = y - self.c.y;
                    let rhs = self.r + alpha * dy.square();
                    if let Some(s) = rhs.sqrt() {
                        out.push(Point::Finite(Fq2::new(self.c.x + s, y)));
                        if !s.is_zero() {
                            out.push(Point::Finite(Fq2::new(self.c.x - s, y)));
                        }
                    }
                }
            }
            CircleKind::Second => {
                // 2 (cx·x - α cy·y) = r
                let half_r = self.r / f.int(2);
                if !self.c.x.is_zero() {
                    for y in f.elements() {
                        let x = (half_r + alpha * self.c.y * y) / self.c.x;
                        out.push(Point::Finite(Fq2::new(x, y)));
                    }
                } else {
                    let y = -half_r / (alpha * self.c.y);
                    for x in f.elements() {
                        out.push(Point::Finite(Fq2::new(x, y)));
                    }
                }
                out.push(Point::Infinity);
            }
        }
        out.sort();
        out
    }

    /// Hermitian form (A, B, C) with A z z̄ + B̄ z + B z̄ + C = 0.
    pub fn hermitian(&self) -> (Fq<'f>, Fq2<'f>, Fq<'f>) {
        match self.kind {
            CircleKind::First => (self.field().one(), -self.c, self.c.norm() - self.r),
            CircleKind::Second => (self.field().zero(), self.c, -self.r),
        }
    }

    /// Inverse of [`Circle::hermitian`]; the form must be nondegenerate.
    pub fn from_hermitian(a: Fq<'f>, b: Fq2<'f>, c: Fq<'f>) -> Result<Self> {
        if a.is_zero() {
            Circle::second(b, -c)
        } else {
            let center = -(b / a);
            Circle::first(center, center.norm() - c / a)
        }
    }

    /// `B1(c=<Fq2>,r=<Fq>)` or `B2(c=<Fq2>,r=<Fq>)`.
    pub fn parse(field: &'f Field, text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
        let err = || parse_error(text, "circle");
        let (kind, rest) = if let Some(rest) = t.strip_prefix("B1(") {
            (CircleKind::First, rest)
        } else if let Some(rest) = t.strip_prefix("B2(") {
            (CircleKind::Second, rest)
        } else {
            return Err(err());
        };
        let inner = rest.strip_suffix(')').ok_or_else(err)?;
        let inner = inner.strip_prefix("c=").ok_or_else(err)?;
        let (c_text, r_text) = inner.rsplit_once(",r=").ok_or_else(err)?;
        let c = field.parse_fq2(c_text)?;
        let r = field.parse_fq(r_text)?;
        match kind {
            CircleKind::First => Circle::first(c, r),
            CircleKind::Second => Circle::second(c, r),
        }
    }
}

impl fmt::Display for Circle<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            CircleKind::First => "B1",
            CircleKind::Second => "B2",
        };
        write!(f, "{tag}(c={},r={})", self.c, self.r)
    }
}

impl fmt::Debug for Circle<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Every circle of M(q) exactly once, in canonical order:
/// q²(q-1) of the first type, then q(q+1) of the second.
pub fn circles(field: &Field) -> impl Iterator<Item = Circle<'_>> + '_ {
    let first = field.ext_elements().flat_map(move |c| {
        field
            .elements()
            .skip(1)
            .map(move |r| Circle::first(c, r).expect("nonzero radius"))
    });
    let zero = field.zero();
    let one = field.one();
    let centers = std::iter::once(Fq2::new(zero, one))
        .chain(field.elements().map(move |y| Fq2::new(one, y)));
    let second = centers.flat_map(move |c| {
        field.elements().map(move |r| Circle::second(c, r).expect("nonzero center"))
    });
    first.chain(second)
}

/// Number of circles, q²(q-1) + q(q+1).
pub fn circle_count(field: &Field) -> u64 {
    let q = field.q() as u64;
    q * q * (q - 1) + q * (q + 1)
}

/// The unique circle through three distinct points.
pub fn circle_through<'f>(p: Point<'f>, q: Point<'f>, r: Point<'f>) -> Result<Circle<'f>> {
    if p == q || p == r || q == r {
        return Err(Error::CoincidentPoints);
    }
    let finite: Vec<Fq2<'f>> = [p, q, r].iter().filter_map(Point::finite).collect();
    let field = finite[0].field();
    let line = |z1: Fq2<'f>, z2: Fq2<'f>| {
        // Tr(c̄ (z1 - z2)) = 0  ⇐  c̄ = w / (z1 - z2) with w = √α
        let cbar = field.sqrt_alpha() / (z1 - z2);
        let c = cbar.conj();
        Circle::second(c, (cbar * z1).trace())
    };
    if finite.len() == 2 {
        return line(finite[0], finite[1]);
    }
    let (z1, z2, z3) = (finite[0], finite[1], finite[2]);
    // N(z1 - c) = N(zi - c)  ⇔  Tr(c̄ (z1 - zi)) = N(z1) - N(zi), i.e.
    // 2 wx·cx - 2α wy·cy = N(z1) - N(zi) with w = z1 - zi.
    let alpha = field.alpha();
    let two = field.int(2);
    let (u, v) = (z1 - z2, z1 - z3);
    let (a11, a12, b1) = (two * u.x, -(two * alpha * u.y), z1.norm() - z2.norm());
    let (a21, a22, b2) = (two * v.x, -(two * alpha * v.y), z1.norm() - z3.norm());
    let det = a11 * a22 - a12 * a21;
    if det.is_zero() {
        // collinear: the three points lie on a second-type circle
        let c = line(z1, z2)?;
        debug_assert!(c.incident(Point::Finite(z3)));
        return Ok(c);
    }
    let cx = (b1 * a22 - a12 * b2) / det;
    let cy = (a11 * b2 - b1 * a21) / det;
    let center = Fq2::new(cx, cy);
    Circle::first(center, (z1 - center).norm())
}
