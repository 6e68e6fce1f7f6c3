//! Mutual position of two circles and the capacitance invariant.

use crate::error::{Error, Result};
use crate::gf::{Fq, Fq2};
use crate::plane::{Circle, CircleKind, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Contact<'f> {
    Disjoint,
    Tangent(Point<'f>),
    Intersecting(Point<'f>, Point<'f>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MutualPosition<'f> {
    pub contact: Contact<'f>,
    /// Absent for two circles of the second type. Computed on the canonical
    /// representative, so only its square class is scale independent.
    pub discriminant: Option<Fq<'f>>,
}

impl<'f> MutualPosition<'f> {
    pub fn is_disjoint(&self) -> bool {
        matches!(self.contact, Contact::Disjoint)
    }

    pub fn is_tangent(&self) -> bool {
        matches!(self.contact, Contact::Tangent(_))
    }

    pub fn is_intersecting(&self) -> bool {
        matches!(self.contact, Contact::Intersecting(..))
    }

    pub fn tangent_point(&self) -> Option<Point<'f>> {
        match self.contact {
            Contact::Tangent(p) => Some(p),
            _ => None,
        }
    }

    pub fn intersection_points(&self) -> Option<(Point<'f>, Point<'f>)> {
        match self.contact {
            Contact::Intersecting(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.contact {
            Contact::Disjoint => "disjoint",
            Contact::Tangent(_) => "tangent",
            Contact::Intersecting(..) => "intersecting",
        }
    }
}

/// Contact from a discriminant: nonzero square means disjoint, zero
/// tangent at `(s)/(2k̄) + base`, nonsquare intersecting at
/// `(s ± √D)/(2k̄) + base`.
fn trichotomy<'f>(d: Fq<'f>, s: Fq<'f>, k: Fq2<'f>, base: Fq2<'f>) -> Contact<'f> {
    let den = k.conj().scale(d.field().int(2));
    if d.is_zero() {
        Contact::Tangent(Point::Finite(Fq2::from(s) / den + base))
    } else if d.is_square() {
        Contact::Disjoint
    } else {
        let root = d.sqrt_ext();
        let s = Fq2::from(s);
        Contact::Intersecting(
            Point::Finite((s + root) / den + base),
            Point::Finite((s - root) / den + base),
        )
    }
}

pub fn classify<'f>(c1: &Circle<'f>, c2: &Circle<'f>) -> Result<MutualPosition<'f>> {
    if c1 == c2 {
        return Err(Error::IdenticalCircles);
    }
    let four = c1.field().int(4);
    Ok(match (c1.kind(), c2.kind()) {
        (CircleKind::First, CircleKind::First) => {
            let c = c2.c() - c1.c();
            let n = c.norm();
            let s = n + c1.r() - c2.r();
            let d = s.square() - four * n * c1.r();
            // same center means distinct radii, so d = (r1 - r2)² ≠ 0
            MutualPosition {
                contact: trichotomy(d, s, c, c1.c()),
                discriminant: Some(d),
            }
        }
        (CircleKind::First, CircleKind::Second) => {
            let r = c2.r() - (c1.c() * c2.c().conj()).trace();
            let d = r.square() - four * c2.c().norm() * c1.r();
            MutualPosition {
                contact: trichotomy(d, r, c2.c(), c1.c()),
                discriminant: Some(d),
            }
        }
        (CircleKind::Second, CircleKind::First) => classify(c2, c1)?,
        (CircleKind::Second, CircleKind::Second) => {
            let (a, b) = (c1.c(), c2.c());
            let delta = a * b.conj() - a.conj() * b;
            let contact = if delta.is_zero() {
                Contact::Tangent(Point::Infinity)
            } else {
                let z0 = (a.scale(c2.r()) - b.scale(c1.r())) / delta;
                Contact::Intersecting(Point::Finite(z0), Point::Infinity)
            };
            MutualPosition {
                contact,
                discriminant: None,
            }
        }
    })
}

/// The Möbius-invariant capacitance κ(C1, C2) ∈ GF(q).
pub fn capacitance<'f>(c1: &Circle<'f>, c2: &Circle<'f>) -> Result<Fq<'f>> {
    if c1 == c2 {
        return Err(Error::IdenticalCircles);
    }
    Ok(match (c1.kind(), c2.kind()) {
        (CircleKind::First, CircleKind::First) => {
            (c1.r() + c2.r() - (c1.c() - c2.c()).norm()).square() / (c1.r() * c2.r())
        }
        (CircleKind::First, CircleKind::Second) => {
            ((c1.c() * c2.c().conj()).trace() - c2.r()).square() / (c1.r() * c2.c().norm())
        }
        (CircleKind::Second, CircleKind::First) => capacitance(c2, c1)?,
        (CircleKind::Second, CircleKind::Second) => {
            (c1.c() * c2.c().conj()).trace().square() / (c1.c().norm() * c2.c().norm())
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::plane::{circles, standard_tangent_pair, MobiusMap};

    fn gf31i() -> Field {
        Field::with_options(31, 1, None, Some(vec![30])).unwrap()
    }

    #[test]
    fn example_pair_in_m31() {
        let f = gf31i();
        let c1 = Circle::parse(&f, "B1(c=8+3*w,r=14)").unwrap();
        let c2 = Circle::parse(&f, "B2(c=12+5*w,r=17)").unwrap();
        let pos = classify(&c1, &c2).unwrap();
        assert!(pos.is_intersecting());
        // D is taken on the canonical representative (c2, r2 scaled by 1/12);
        // for the literal parameters it is 11, and both are nonsquares
        let d = pos.discriminant.unwrap();
        assert_eq!(d, f.int(30));
        assert_eq!(d * f.int(144), f.int(11));
        assert!(!d.is_square());
        assert_eq!(capacitance(&c1, &c2).unwrap(), f.int(2));
        assert_eq!(capacitance(&c2, &c1).unwrap(), f.int(2));
        let (a, b) = pos.intersection_points().unwrap();
        assert!(c1.incident(a) && c2.incident(a) && c1.incident(b) && c2.incident(b));
    }

    #[test]
    fn standard_pair_is_tangent_at_infinity() {
        for p in [3, 5, 7] {
            let f = Field::new(p, 1).unwrap();
            let (b_minus, b_plus) = standard_tangent_pair(&f);
            let pos = classify(&b_minus, &b_plus).unwrap();
            assert_eq!(pos.contact, Contact::Tangent(Point::Infinity));
            assert_eq!(pos.discriminant, None);
            assert_eq!(capacitance(&b_minus, &b_plus).unwrap(), f.int(4));
        }
    }

    #[test]
    fn pencil_neighbors_are_tangent_when_minus_one_is_nonsquare() {
        for p in [3, 7, 11] {
            let f = Field::new(p, 1).unwrap();
            let quarter = f.int(4).inv().unwrap();
            let i = f.int(-1).sqrt_ext();
            let a = Circle::first(Fq2::from(f.zero()), quarter).unwrap();
            let b = Circle::first(i, quarter).unwrap();
            assert!(classify(&a, &b).unwrap().is_tangent());
        }
    }

    #[test]
    fn identical_circles_rejected() {
        let f = Field::new(7, 1).unwrap();
        let (b, _) = standard_tangent_pair(&f);
        assert_eq!(classify(&b, &b).unwrap_err(), Error::IdenticalCircles);
        assert_eq!(capacitance(&b, &b).unwrap_err(), Error::IdenticalCircles);
    }

    #[test]
    fn symmetric_pair_with_vanishing_trace_has_zero_capacitance() {
        let f = Field::new(7, 1).unwrap();
        let g = f
            .ext_elements()
            .find(|g| !g.is_zero() && g.square().trace().is_zero())
            .unwrap();
        let a = Circle::second(g, f.zero()).unwrap();
        let b = Circle::second(g.conj(), f.zero()).unwrap();
        assert_eq!(capacitance(&a, &b).unwrap(), f.zero());
    }

    #[test]
    fn trichotomy_matches_common_points_exhaustively() {
        for (p, m) in [(3, 1), (5, 1), (7, 1)] {
            let f = Field::new(p, m).unwrap();
            let all: Vec<_> = circles(&f).collect();
            let pts: Vec<_> = all.iter().map(|c| c.points()).collect();
            for i in 0..all.len() {
                for j in 0..all.len() {
                    if i == j {
                        continue;
                    }
                    let common: Vec<_> =
                        pts[i].iter().filter(|x| pts[j].binary_search(x).is_ok()).copied().collect();
                    let pos = classify(&all[i], &all[j]).unwrap();
                    match pos.contact {
                        Contact::Disjoint => assert!(common.is_empty()),
                        Contact::Tangent(x) => assert_eq!(common, vec![x]),
                        Contact::Intersecting(x, y) => {
                            assert_ne!(x, y);
                            let mut got = vec![x, y];
                            got.sort();
                            assert_eq!(common, got);
                        }
                    }
                    let back = classify(&all[j], &all[i]).unwrap();
                    assert_eq!(back.name(), pos.name());
                }
            }
        }
    }

    #[test]
    fn capacitance_is_scale_invariant_for_second_type() {
        let f = Field::new(11, 1).unwrap();
        let c1 = Circle::first(f.parse_fq2("3+4*w").unwrap(), f.int(5)).unwrap();
        let c = f.parse_fq2("2+7*w").unwrap();
        let k0 = capacitance(&c1, &Circle::second(c, f.int(3)).unwrap()).unwrap();
        for s in f.elements().skip(1) {
            let c2 = Circle::second(c.scale(s), f.int(3) * s).unwrap();
            assert_eq!(capacitance(&c1, &c2).unwrap(), k0);
        }
    }

    #[test]
    fn capacitance_survives_a_mobius_map() {
        let f = Field::new(7, 1).unwrap();
        let all: Vec<_> = circles(&f).collect();
        let pts: Vec<_> = crate::plane::points(&f).collect();
        let g = MobiusMap::from_three_points([pts[2], pts[9], pts[30]], [pts[40], pts[11], pts[0]])
            .unwrap();
        for i in (0..all.len()).step_by(13) {
            for j in (0..all.len()).step_by(7) {
                if i != j {
                    let k = capacitance(&all[i], &all[j]).unwrap();
                    let img = capacitance(&g.apply_circle(&all[i]), &g.apply_circle(&all[j])).unwrap();
                    assert_eq!(k, img);
                }
            }
        }
    }
}
