//! Prediction-versus-oracle sweeps over families of carrier pairs.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::chains::{length_clause, predict};
use crate::error::{Error, Result};
use crate::gf::{prime_power, Field, Fq2};
use crate::oracle::{chain_census_bruteforce, compare};
use crate::plane::{circles, standard_tangent_pair, Circle};
use crate::position::classify;

/// Largest q a sweep accepts.
pub const SWEEP_MAX_Q: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    /// The standard tangent pair.
    Tangent,
    /// Every pair of distinct second-type circles through 0 and ∞.
    Intersecting,
    /// B²(1, 0) against every circle disjoint from it.
    Disjoint,
}

impl SweepMode {
    pub fn name(&self) -> &'static str {
        match self {
            SweepMode::Tangent => "tangent",
            SweepMode::Intersecting => "intersecting",
            SweepMode::Disjoint => "disjoint",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub q: u32,
    pub mode: &'static str,
    pub pairs: usize,
    pub agree: usize,
    /// Observed lengths obey the parity/divisibility clause of their branch.
    pub length_clauses_hold: bool,
    /// Pairs per prediction branch.
    pub cases: BTreeMap<&'static str, usize>,
    /// Observed chain lengths over all pairs.
    pub lengths: BTreeSet<u64>,
    pub mismatched_pairs: Vec<(String, String)>,
}

impl SweepRow {
    pub fn all_agree(&self) -> bool {
        self.agree == self.pairs && self.length_clauses_hold
    }
}

/// Canonical second-type circles through 0 and ∞.
pub fn lines_through_origin(f: &Field) -> Vec<Circle<'_>> {
    let set: BTreeSet<_> = f
        .ext_elements()
        .filter(|c| !c.is_zero())
        .map(|c| Circle::second(c, f.zero()).expect("nonzero"))
        .collect();
    set.into_iter().collect()
}

pub fn carrier_pairs(f: &Field, mode: SweepMode) -> Vec<(Circle<'_>, Circle<'_>)> {
    match mode {
        SweepMode::Tangent => vec![standard_tangent_pair(f)],
        SweepMode::Intersecting => {
            let lines = lines_through_origin(f);
            let mut out = Vec::new();
            for i in 0..lines.len() {
                for j in i + 1..lines.len() {
                    out.push((lines[i], lines[j]));
                }
            }
            out
        }
        SweepMode::Disjoint => {
            let c1 = Circle::second(Fq2::from(f.one()), f.zero()).expect("nonzero");
            circles(f)
                .filter(|c2| *c2 != c1 && classify(&c1, c2).map_or(false, |p| p.is_disjoint()))
                .map(|c2| (c1, c2))
                .collect()
        }
    }
}

pub fn field_for(q: u32) -> Result<Field> {
    if q > SWEEP_MAX_Q {
        return Err(Error::BoundExceeded {
            q: q as u64,
            bound: SWEEP_MAX_Q as u64,
        });
    }
    let (p, m) = prime_power(q as u64).ok_or(Error::NotPrime(q))?;
    Field::new(p as u32, m)
}

/// Predicts and censuses every carrier pair of the mode, in parallel.
pub fn sweep_field(f: &Field, mode: SweepMode, k_max: Option<u64>) -> Result<SweepRow> {
    if f.q() > SWEEP_MAX_Q {
        return Err(Error::BoundExceeded {
            q: f.q() as u64,
            bound: SWEEP_MAX_Q as u64,
        });
    }
    let pairs = carrier_pairs(f, mode);
    let results: Vec<_> = pairs
        .par_iter()
        .map(|(c1, c2)| -> Result<_> {
            let pred = predict(c1, c2, k_max)?;
            let census = chain_census_bruteforce(c1, c2)?;
            let agree = compare(&pred, &census).agree();
            let lengths = census.lengths();
            let clauses = lengths.iter().all(|&k| length_clause(pred.case, f.q(), k));
            Ok((pred.case.name(), agree, clauses, lengths))
        })
        .collect::<Result<_>>()?;
    let mut row = SweepRow {
        q: f.q(),
        mode: mode.name(),
        pairs: pairs.len(),
        agree: 0,
        length_clauses_hold: true,
        cases: BTreeMap::new(),
        lengths: BTreeSet::new(),
        mismatched_pairs: Vec::new(),
    };
    for ((case, agree, clauses, lengths), (c1, c2)) in results.into_iter().zip(&pairs) {
        *row.cases.entry(case).or_insert(0) += 1;
        row.length_clauses_hold &= clauses;
        row.lengths.extend(lengths);
        if agree {
            row.agree += 1;
        } else {
            row.mismatched_pairs.push((c1.to_string(), c2.to_string()));
        }
    }
    Ok(row)
}

pub fn sweep(q: u32, mode: SweepMode, k_max: Option<u64>) -> Result<SweepRow> {
    let f = field_for(q)?;
    sweep_field(&f, mode, k_max)
}
