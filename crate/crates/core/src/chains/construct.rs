use std::collections::BTreeSet;

use super::chain::{validate_chain, SteinerChain};
use super::reduce::{reduce_intersecting_pair, reduce_tangent_pair, symmetric_pair, IntersectingReduction};
use crate::error::{Error, Result};
use crate::gf::{Field, Fq, Fq2};
use crate::oracle::common_tangents_bruteforce;
use crate::plane::{standard_tangent_pair, Circle, MobiusMap};
use crate::position::classify;

/// Common tangents of B²(1,-1) and B²(1,1) of the first type: B¹(y·w, 1/4).
fn standard_tangent_pencil(f: &Field) -> Vec<Circle<'_>> {
    let quarter = f.int(4).inv().expect("p odd");
    let w = f.sqrt_alpha();
    let mut out: Vec<_> = f
        .elements()
        .map(|y| Circle::first(w.scale(y), quarter).expect("nonzero radius"))
        .collect();
    out.sort();
    out
}

/// Chain generators of the symmetric pair (B²(γ,0), B²(γ̄,0)):
/// `u` for centers in GF(q), `v` for centers on z + z̄ = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generators<'f> {
    pub u: Option<Fq<'f>>,
    pub v: Option<Fq<'f>>,
}

pub fn generators(gamma: Fq2<'_>) -> Result<Generators<'_>> {
    let f = gamma.field();
    let (sum, diff) = (gamma + gamma.conj(), gamma - gamma.conj());
    if sum.is_zero() || diff.is_zero() {
        return Err(Error::DegenerateGamma);
    }
    let n = gamma.norm();
    let two = Fq2::from(f.int(2));
    let u = n.sqrt().map(|s| {
        let s = Fq2::from(s);
        ((two * s + sum) / (two * s - sum)).to_base().expect("u lies in GF(q)")
    });
    let v = (!(-n).is_square()).then(|| {
        let s = (-n).sqrt_ext();
        ((two * s + diff) / (two * s - diff)).to_base().expect("v lies in GF(q)")
    });
    Ok(Generators { u, v })
}

fn u_circle<'f>(gamma: Fq2<'f>, c: Fq<'f>) -> Circle<'f> {
    let sum = gamma.trace();
    let r = c.square() * sum.square() / (gamma.field().int(4) * gamma.norm());
    Circle::first(Fq2::from(c), r).expect("nonzero radius")
}

fn v_circle<'f>(gamma: Fq2<'f>, y: Fq<'f>) -> Circle<'f> {
    let f = gamma.field();
    let c = f.sqrt_alpha().scale(y);
    let diff = gamma - gamma.conj();
    let r = (c.square() * diff.square()).to_base().expect("real") / (f.int(4) * gamma.norm());
    Circle::first(c, r).expect("nonzero radius")
}

/// The 2(q-1) common tangents of B²(γ,0) and B²(γ̄,0).
pub fn symmetric_pencil(gamma: Fq2<'_>) -> Result<Vec<Circle<'_>>> {
    generators(gamma)?;
    let f = gamma.field();
    let mut out: Vec<_> = f
        .elements()
        .skip(1)
        .flat_map(|c| [u_circle(gamma, c), v_circle(gamma, c)])
        .collect();
    out.sort();
    Ok(out)
}

/// The common tangent circles of two carriers. Tangent and intersecting
/// carriers use the closed forms; disjoint carriers fall back to a scan.
pub fn tangent_pencil<'f>(c1: &Circle<'f>, c2: &Circle<'f>) -> Result<Vec<Circle<'f>>> {
    let pos = classify(c1, c2)?;
    let mut out = if pos.is_tangent() {
        let red = reduce_tangent_pair(c1, c2)?;
        let back = red.map.inverse();
        standard_tangent_pencil(c1.field())
            .iter()
            .map(|c| back.apply_circle(c))
            .collect()
    } else if pos.is_intersecting() {
        match reduce_intersecting_pair(c1, c2)? {
            IntersectingReduction::NoCommonTangents { .. } => Vec::new(),
            IntersectingReduction::Symmetric { map, gamma } => {
                let back = map.inverse();
                symmetric_pencil(gamma)?.iter().map(|c| back.apply_circle(c)).collect()
            }
        }
    } else {
        common_tangents_bruteforce(c1, c2)?
    };
    out.sort();
    Ok(out)
}

fn transport<'f>(
    chains: Vec<Vec<Circle<'f>>>,
    map: &MobiusMap<'f>,
    c1: &Circle<'f>,
    c2: &Circle<'f>,
) -> Vec<SteinerChain<'f>> {
    let mut out: Vec<_> = chains
        .into_iter()
        .map(|chain| {
            let img: Vec<_> = chain.iter().map(|c| map.apply_circle(c)).collect();
            validate_chain(&img, c1, c2).unwrap_or_else(|v| panic!("constructed chain rejected: {v}"))
        })
        .collect();
    out.sort_by(|a, b| a.circles().cmp(b.circles()));
    out
}

/// All Steiner chains of a tangent pair, built by translating the pencil
/// of the standard pair by √-1 and carrying the result back.
pub fn construct_tangent_chains<'f>(c1: &Circle<'f>, c2: &Circle<'f>) -> Result<Vec<SteinerChain<'f>>> {
    let red = reduce_tangent_pair(c1, c2)?;
    let f = c1.field();
    if f.minus_one_is_square() {
        return Err(Error::NoChains);
    }
    let step = MobiusMap::translation(f.int(-1).sqrt_ext());
    let mut used = BTreeSet::new();
    let mut chains = Vec::new();
    for start in standard_tangent_pencil(f) {
        if used.contains(&start) {
            continue;
        }
        let mut chain = vec![start];
        let mut next = step.apply_circle(&start);
        while next != start {
            chain.push(next);
            next = step.apply_circle(&next);
        }
        used.extend(chain.iter().copied());
        chains.push(chain);
    }
    Ok(transport(chains, &red.map.inverse(), c1, c2))
}

fn orbits<'f>(f: &'f Field, g: Fq<'f>) -> Vec<Vec<Fq<'f>>> {
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    for start in f.elements().skip(1) {
        if used.contains(&start) {
            continue;
        }
        let mut orbit = vec![start];
        let mut x = start * g;
        while x != start {
            orbit.push(x);
            x *= g;
        }
        used.extend(orbit.iter().copied());
        out.push(orbit);
    }
    out
}

/// Steiner chains carried by B²(γ,0) and B²(γ̄,0): orbits of the centers
/// under multiplication by u (centers in GF(q)) and by v (centers on
/// z + z̄ = 0). Tangencies between the two families are never used.
pub fn construct_intersecting_chains(gamma: Fq2<'_>) -> Result<Vec<SteinerChain<'_>>> {
    let gens = generators(gamma)?;
    let f = gamma.field();
    let mut chains = Vec::new();
    if let Some(u) = gens.u {
        for orbit in orbits(f, u) {
            chains.push(orbit.into_iter().map(|c| u_circle(gamma, c)).collect());
        }
    }
    if let Some(v) = gens.v {
        for orbit in orbits(f, v) {
            chains.push(orbit.into_iter().map(|y| v_circle(gamma, y)).collect());
        }
    }
    if chains.is_empty() {
        return Err(Error::NoChains);
    }
    let (b1, b2) = symmetric_pair(gamma)?;
    Ok(transport(chains, &MobiusMap::identity(f), &b1, &b2))
}

/// Explicit chains for a tangent or intersecting pair.
pub fn construct_chains<'f>(c1: &Circle<'f>, c2: &Circle<'f>) -> Result<Vec<SteinerChain<'f>>> {
    let pos = classify(c1, c2)?;
    if pos.is_tangent() {
        return construct_tangent_chains(c1, c2);
    }
    if pos.is_disjoint() {
        return Err(Error::NotIntersecting);
    }
    match reduce_intersecting_pair(c1, c2)? {
        IntersectingReduction::NoCommonTangents { .. } => Err(Error::NoChains),
        IntersectingReduction::Symmetric { map, gamma } => {
            let standard = construct_intersecting_chains(gamma)?;
            let raw = standard.iter().map(|ch| ch.circles().to_vec()).collect();
            Ok(transport(raw, &map.inverse(), c1, c2))
        }
    }
}

/// The standard tangent pencil, exposed for tests and the CLI.
pub fn standard_pencil(f: &Field) -> Vec<Circle<'_>> {
    standard_tangent_pencil(f)
}

/// The standard pair together with its chains, when they exist.
pub fn standard_tangent_chains(f: &Field) -> Result<Vec<SteinerChain<'_>>> {
    let (b1, b2) = standard_tangent_pair(f);
    construct_tangent_chains(&b1, &b2)
}
