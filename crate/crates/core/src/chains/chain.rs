use std::collections::BTreeMap;
use std::fmt;

use crate::plane::{Circle, Point};
use crate::position::classify;

/// The defining conditions of a proper Steiner chain, in the order checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    /// At least three circles.
    Length,
    /// No circle repeats, and none equals a carrier.
    Distinct,
    /// Clause 1: each circle touches the next one, cyclically.
    Consecutive,
    /// Clause 2: each circle touches both carriers.
    Carriers,
    /// Clause 3: no point is a contact point of more than two circles.
    ContactPoints,
}

impl Clause {
    pub fn name(&self) -> &'static str {
        match self {
            Clause::Length => "length",
            Clause::Distinct => "distinct circles",
            Clause::Consecutive => "clause 1: consecutive tangency",
            Clause::Carriers => "clause 2: tangent to both carriers",
            Clause::ContactPoints => "clause 3: contact points",
        }
    }
}

/// Why a sequence of circles is not a Steiner chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<'f> {
    pub clause: Clause,
    pub circles: Vec<Circle<'f>>,
    pub point: Option<Point<'f>>,
}

impl fmt::Display for Violation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.clause.name())?;
        if let Some(p) = self.point {
            write!(f, " at {p}")?;
        }
        if !self.circles.is_empty() {
            let names: Vec<String> = self.circles.iter().map(|c| c.to_string()).collect();
            write!(f, ": {}", names.join(", "))?;
        }
        Ok(())
    }
}

/// A validated Steiner chain carried by two circles.
///
/// Stored in normal form: rotated so the smallest circle comes first and
/// oriented so the second circle is smaller than the last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SteinerChain<'f> {
    circles: Vec<Circle<'f>>,
    contacts: Vec<Point<'f>>,
    carrier_contacts: Vec<(Point<'f>, Point<'f>)>,
}

impl<'f> SteinerChain<'f> {
    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn circles(&self) -> &[Circle<'f>] {
        &self.circles
    }

    /// `contacts()[i]` is where circle i touches circle i + 1 (cyclically).
    pub fn contacts(&self) -> &[Point<'f>] {
        &self.contacts
    }

    /// Where each circle touches the first and the second carrier.
    pub fn carrier_contacts(&self) -> &[(Point<'f>, Point<'f>)] {
        &self.carrier_contacts
    }
}

fn normalize<'f>(circles: &[Circle<'f>]) -> Vec<Circle<'f>> {
    let k = circles.len();
    let start = (0..k).min_by_key(|&i| circles[i]).unwrap_or(0);
    let forward: Vec<_> = (0..k).map(|i| circles[(start + i) % k]).collect();
    if k > 2 && forward[1] > forward[k - 1] {
        let mut back = vec![forward[0]];
        back.extend(forward[1..].iter().rev());
        back
    } else {
        forward
    }
}

/// Checks every defining condition and returns the chain in normal form,
/// or the first violated condition.
pub fn validate_chain<'f>(
    circles: &[Circle<'f>],
    c1: &Circle<'f>,
    c2: &Circle<'f>,
) -> Result<SteinerChain<'f>, Violation<'f>> {
    let fail = |clause, circles: Vec<Circle<'f>>, point| Violation {
        clause,
        circles,
        point,
    };
    if circles.len() < 3 {
        return Err(fail(Clause::Length, circles.to_vec(), None));
    }
    let mut sorted = circles.to_vec();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(fail(Clause::Distinct, vec![w[0]], None));
    }
    if let Some(m) = circles.iter().find(|m| *m == c1 || *m == c2) {
        return Err(fail(Clause::Distinct, vec![*m], None));
    }
    let circles = normalize(circles);
    let k = circles.len();

    let tangent_at = |a: &Circle<'f>, b: &Circle<'f>| {
        classify(a, b).ok().and_then(|p| p.tangent_point())
    };
    let mut contacts = Vec::with_capacity(k);
    for i in 0..k {
        let (a, b) = (circles[i], circles[(i + 1) % k]);
        match tangent_at(&a, &b) {
            Some(p) => contacts.push(p),
            None => return Err(fail(Clause::Consecutive, vec![a, b], None)),
        }
    }
    let mut carrier_contacts = Vec::with_capacity(k);
    for m in &circles {
        match (tangent_at(m, c1), tangent_at(m, c2)) {
            (Some(p), Some(q)) => carrier_contacts.push((p, q)),
            _ => return Err(fail(Clause::Carriers, vec![*m], None)),
        }
    }

    // every tangent pair in the configuration, chords and carriers included
    let mut all = vec![*c1, *c2];
    all.extend(circles.iter().copied());
    let mut touching: BTreeMap<Point<'f>, Vec<Circle<'f>>> = BTreeMap::new();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if let Some(p) = tangent_at(&all[i], &all[j]) {
                let entry = touching.entry(p).or_default();
                for c in [all[i], all[j]] {
                    if !entry.contains(&c) {
                        entry.push(c);
                    }
                }
            }
        }
    }
    if let Some((p, cs)) = touching.into_iter().find(|(_, cs)| cs.len() > 2) {
        return Err(fail(Clause::ContactPoints, cs, Some(p)));
    }

    Ok(SteinerChain {
        circles,
        contacts,
        carrier_contacts,
    })
}

impl<'f> SteinerChain<'f> {
    /// Re-checks the chain against a pair of carriers.
    pub fn validate(&self, c1: &Circle<'f>, c2: &Circle<'f>) -> Result<(), Violation<'f>> {
        validate_chain(&self.circles, c1, c2).map(|_| ())
    }
}
