use crate::error::{Error, Result};
use crate::gf::Fq2;
use crate::plane::{standard_tangent_pair, Circle, MobiusMap, Point};
use crate::position::classify;

/// A map sending a tangent pair onto `(B²(1,-1), B²(1,1))`.
#[derive(Clone, Copy, Debug)]
pub struct TangentReduction<'f> {
    pub map: MobiusMap<'f>,
    pub standard: (Circle<'f>, Circle<'f>),
}

pub fn reduce_tangent_pair<'f>(c1: &Circle<'f>, c2: &Circle<'f>) -> Result<TangentReduction<'f>> {
    let z0 = classify(c1, c2)?.tangent_point().ok_or(Error::NotTangent)?;
    let f = c1.field();
    let standard = standard_tangent_pair(f);
    let mut on_c1 = c1.points().into_iter().filter(|&p| p != z0);
    let (p1, p2) = (on_c1.next().expect("q + 1 ≥ 4"), on_c1.next().expect("q + 1 ≥ 4"));
    let half = Fq2::from(-(f.int(2).inv().expect("p odd")));
    let t1 = MobiusMap::from_three_points(
        [z0, p1, p2],
        [Point::Infinity, Point::Finite(half), Point::Finite(half + f.sqrt_alpha())],
    )?;
    debug_assert_eq!(t1.apply_circle(c1), standard.0);
    // T1(C2) is z + z̄ = r with r ≠ -1; rescale about -1/2 so that r becomes 1
    let r = t1.apply_circle(c2).r();
    let lambda = f.int(2) / (r + f.one());
    let t2 = MobiusMap::affine(Fq2::from(lambda), Fq2::from(lambda) * -half + half)?;
    let map = t2.compose(&t1);
    debug_assert_eq!(map.apply_circle(c2), standard.1);
    Ok(TangentReduction { map, standard })
}

/// Outcome of moving an intersecting pair to symmetric position.
#[derive(Clone, Copy, Debug)]
pub enum IntersectingReduction<'f> {
    /// After sending the intersection points to 0 and ∞ the carriers are
    /// B²(γ1, 0) and B²(γ2, 0) with γ1·γ2 a nonsquare: no common tangents.
    NoCommonTangents {
        map: MobiusMap<'f>,
        gamma1: Fq2<'f>,
        gamma2: Fq2<'f>,
    },
    /// `map` sends the carriers to B²(γ, 0) and B²(γ̄, 0).
    Symmetric { map: MobiusMap<'f>, gamma: Fq2<'f> },
}

pub fn reduce_intersecting_pair<'f>(
    c1: &Circle<'f>,
    c2: &Circle<'f>,
) -> Result<IntersectingReduction<'f>> {
    let (z1, z2) = classify(c1, c2)?
        .intersection_points()
        .ok_or(Error::NotIntersecting)?;
    let p = c1
        .points()
        .into_iter()
        .find(|&x| x != z1 && x != z2)
        .expect("q + 1 ≥ 4");
    let f = c1.field();
    let zero = Point::Finite(Fq2::from(f.zero()));
    let one = Point::Finite(Fq2::from(f.one()));
    let s = MobiusMap::from_three_points([z1, p, z2], [zero, one, Point::Infinity])?;
    let gamma1 = s.apply_circle(c1).c();
    let gamma2 = s.apply_circle(c2).c();
    if !(gamma1 * gamma2).is_square() {
        return Ok(IntersectingReduction::NoCommonTangents {
            map: s,
            gamma1,
            gamma2,
        });
    }
    let gamma = (gamma2.conj() / gamma1.conj()).sqrt().expect("checked square");
    let scale = MobiusMap::affine(gamma1.conj() * gamma, Fq2::from(f.zero()))?;
    let map = scale.compose(&s);
    debug_assert_eq!(map.apply_circle(c1), Circle::second(gamma, f.zero())?);
    debug_assert_eq!(map.apply_circle(c2), Circle::second(gamma.conj(), f.zero())?);
    Ok(IntersectingReduction::Symmetric { map, gamma })
}

/// The symmetric pair (B²(γ, 0), B²(γ̄, 0)).
pub fn symmetric_pair(gamma: Fq2<'_>) -> Result<(Circle<'_>, Circle<'_>)> {
    let zero = gamma.field().zero();
    Ok((Circle::second(gamma, zero)?, Circle::second(gamma.conj(), zero)?))
}
