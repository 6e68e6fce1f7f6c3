//! Exhaustive ground truth for common tangents and Steiner chains.
//!
//! Depends only on circle enumeration, `classify` and `validate_chain`;
//! nothing here consults the closed-form predictions or constructions.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::chains::{validate_chain, ChainPrediction, SteinerChain};
use crate::error::Result;
use crate::plane::{circles, Circle, Point};
use crate::position::classify;

/// Every circle tangent to both carriers, in canonical order.
///
/// Circles that touch a carrier exactly where the carriers touch each other
/// are left out: that point would already be a contact point of three
/// circles, so they can never belong to a Steiner chain. (For tangent
/// carriers these are the second-type circles through the contact point.)
pub fn common_tangents_bruteforce<'f>(c1: &Circle<'f>, c2: &Circle<'f>) -> Result<Vec<Circle<'f>>> {
    let carrier_contact = classify(c1, c2)?.tangent_point();
    let all: Vec<_> = circles(c1.field()).collect();
    Ok(all
        .into_par_iter()
        .filter(|t| {
            if t == c1 || t == c2 {
                return false;
            }
            let a = classify(t, c1).ok().and_then(|p| p.tangent_point());
            let b = classify(t, c2).ok().and_then(|p| p.tangent_point());
            match (a, b) {
                (Some(a), Some(b)) => carrier_contact.map_or(true, |z| a != z && b != z),
                _ => false,
            }
        })
        .collect())
}

/// The oracle's view of the chains carried by a pair.
#[derive(Clone, Debug)]
pub struct ChainCensus<'f> {
    pub pencil: Vec<Circle<'f>>,
    pub chains: Vec<SteinerChain<'f>>,
}

impl<'f> ChainCensus<'f> {
    pub fn pencil_size(&self) -> usize {
        self.pencil.len()
    }

    pub fn histogram(&self) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        for c in &self.chains {
            *h.entry(c.len() as u64).or_insert(0) += 1;
        }
        h
    }

    pub fn lengths(&self) -> BTreeSet<u64> {
        self.chains.iter().map(|c| c.len() as u64).collect()
    }

    /// Number of distinct pencil circles used by some chain.
    pub fn circles_covered(&self) -> usize {
        self.chains
            .iter()
            .flat_map(|c| c.circles().iter())
            .collect::<BTreeSet<_>>()
            .len()
    }
}

/// Tangency graph on the pencil, keeping only edges whose contact point is
/// not already a carrier contact of either endpoint (nor the carriers' own
/// contact point). Returns adjacency lists with the contact of each edge.
pub fn legal_edges<'f>(
    pencil: &[Circle<'f>],
    c1: &Circle<'f>,
    c2: &Circle<'f>,
) -> Result<Vec<Vec<(usize, Point<'f>)>>> {
    let carrier_contact = classify(c1, c2)?.tangent_point();
    let touch: Vec<(Point<'f>, Point<'f>)> = pencil
        .iter()
        .map(|m| {
            let a = classify(m, c1).ok().and_then(|p| p.tangent_point()).expect("pencil member");
            let b = classify(m, c2).ok().and_then(|p| p.tangent_point()).expect("pencil member");
            (a, b)
        })
        .collect();
    let n = pencil.len();
    let rows: Vec<Vec<(usize, Point<'f>)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = Vec::new();
            for j in 0..n {
                if i == j {
                    continue;
                }
                let Some(p) = classify(&pencil[i], &pencil[j]).ok().and_then(|x| x.tangent_point())
                else {
                    continue;
                };
                let blocked = [touch[i].0, touch[i].1, touch[j].0, touch[j].1].contains(&p)
                    || carrier_contact == Some(p);
                if !blocked {
                    row.push((j, p));
                }
            }
            row
        })
        .collect();
    Ok(rows)
}

/// Incremental record of which circles meet at each contact point.
/// Ids 0 and 1 are the carriers, 2 + i is pencil circle i.
struct ContactBook<'f> {
    at: HashMap<Point<'f>, Vec<usize>>,
    log: Vec<(Point<'f>, usize)>,
}

impl<'f> ContactBook<'f> {
    fn mark(&mut self) -> usize {
        self.log.len()
    }

    /// Adds `ids` at `p`; false if more than two circles would meet there.
    fn add(&mut self, p: Point<'f>, ids: [usize; 2]) -> bool {
        let entry = self.at.entry(p).or_default();
        for id in ids {
            if !entry.contains(&id) {
                entry.push(id);
                self.log.push((p, id));
            }
        }
        entry.len() <= 2
    }

    fn undo(&mut self, mark: usize) {
        while self.log.len() > mark {
            let (p, id) = self.log.pop().expect("nonempty");
            let entry = self.at.get_mut(&p).expect("logged");
            entry.retain(|&x| x != id);
        }
    }
}

struct Search<'a, 'f> {
    adj: &'a [Vec<(usize, Point<'f>)>],
    touch: &'a [(Point<'f>, Point<'f>)],
    found: Vec<Vec<usize>>,
}

impl<'a, 'f> Search<'a, 'f> {
    fn enter(&self, book: &mut ContactBook<'f>, v: usize, via: Option<(usize, Point<'f>)>) -> bool {
        let mut ok = book.add(self.touch[v].0, [0, 2 + v]);
        ok &= book.add(self.touch[v].1, [1, 2 + v]);
        if let Some((u, p)) = via {
            ok &= book.add(p, [2 + u, 2 + v]);
        }
        ok
    }

    fn dfs(&mut self, book: &mut ContactBook<'f>, path: &mut Vec<usize>, on_path: &mut [bool]) {
        let start = path[0];
        let last = *path.last().expect("nonempty");
        for &(next, p) in &self.adj[last] {
            if next == start && path.len() >= 3 && path[1] < last {
                let mark = book.mark();
                if book.add(p, [2 + last, 2 + start]) {
                    self.found.push(path.clone());
                }
                book.undo(mark);
                continue;
            }
            if next <= start || on_path[next] {
                continue;
            }
            let mark = book.mark();
            if self.enter(book, next, Some((last, p))) {
                path.push(next);
                on_path[next] = true;
                self.dfs(book, path, on_path);
                on_path[next] = false;
                path.pop();
            }
            book.undo(mark);
        }
    }
}

/// All proper Steiner chains carried by a pair, by exhaustive search.
///
/// Simple cycles of the legal tangency graph are enumerated by depth-first
/// search from their smallest circle, pruned whenever a point becomes the
/// contact point of three circles; every survivor is then checked in full
/// by `validate_chain`.
pub fn chain_census_bruteforce<'f>(c1: &Circle<'f>, c2: &Circle<'f>) -> Result<ChainCensus<'f>> {
    let pencil = common_tangents_bruteforce(c1, c2)?;
    let adj = legal_edges(&pencil, c1, c2)?;
    let touch: Vec<_> = pencil
        .iter()
        .map(|m| {
            let a = classify(m, c1).ok().and_then(|p| p.tangent_point()).expect("pencil member");
            let b = classify(m, c2).ok().and_then(|p| p.tangent_point()).expect("pencil member");
            (a, b)
        })
        .collect();
    let carrier_contact = classify(c1, c2)?.tangent_point();
    let mut search = Search {
        adj: &adj,
        touch: &touch,
        found: Vec::new(),
    };
    let mut on_path = vec![false; pencil.len()];
    for start in 0..pencil.len() {
        let mut book = ContactBook {
            at: HashMap::new(),
            log: Vec::new(),
        };
        if let Some(z) = carrier_contact {
            book.add(z, [0, 1]);
        }
        if !search.enter(&mut book, start, None) {
            continue;
        }
        let mut path = vec![start];
        on_path[start] = true;
        search.dfs(&mut book, &mut path, &mut on_path);
        on_path[start] = false;
    }
    let mut chains: Vec<SteinerChain<'f>> = search
        .found
        .iter()
        .filter_map(|cycle| {
            let cs: Vec<_> = cycle.iter().map(|&i| pencil[i]).collect();
            validate_chain(&cs, c1, c2).ok()
        })
        .collect();
    chains.sort_by(|a, b| a.circles().cmp(b.circles()));
    Ok(ChainCensus { pencil, chains })
}

/// One disagreement between prediction and census.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub length: u64,
    pub predicted: u64,
    pub observed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    /// Counts compared exactly, or only the set of lengths (disjoint carriers).
    pub exact_counts: bool,
    pub mismatches: Vec<Mismatch>,
}

impl Comparison {
    pub fn agree(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares per-length chain counts, or only which lengths occur when the
/// prediction does not claim totals.
pub fn compare(pred: &ChainPrediction<'_>, census: &ChainCensus<'_>) -> Comparison {
    let exact = pred.counts_are_totals();
    let (p, o) = (pred.histogram(), census.histogram());
    let keys: BTreeSet<u64> = p.keys().chain(o.keys()).copied().collect();
    let mismatches = keys
        .into_iter()
        .filter_map(|len| {
            let (a, b) = (p.get(&len).copied().unwrap_or(0), o.get(&len).copied().unwrap_or(0));
            let differ = if exact { a != b } else { (a > 0) != (b > 0) };
            differ.then_some(Mismatch {
                length: len,
                predicted: a,
                observed: b,
            })
        })
        .collect();
    Comparison {
        exact_counts: exact,
        mismatches,
    }
}
