use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::gf::{Field, Fq, Fq2};
use crate::plane::Circle;
use crate::position::{capacitance, classify};

/// Which branch of the closed-form criteria decided the prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// Tangent carriers, q ≡ 3 mod 4.
    TangentChains,
    /// Tangent carriers, q ≡ 1 mod 4.
    TangentNone,
    /// Intersecting, κ = 0, m odd, p ≡ 7 mod 16.
    KappaZero,
    /// Intersecting, κ = 0 otherwise.
    KappaZeroNone,
    /// Intersecting, κ ≠ 0 a nonsquare.
    KappaNonsquare,
    /// Intersecting, κ ≠ 0 a square, q ≡ 3 mod 4, √κ + 2 a square: two families.
    TwoFamilies,
    /// Intersecting, κ ≠ 0 a square, q ≡ 3 mod 4, √κ + 2 a nonsquare.
    TwoFamiliesNone,
    /// Intersecting, κ ≠ 0 a square, q ≡ 1 mod 4: one family.
    OneFamily,
    /// Disjoint carriers; b a nonsquare, so no common tangents.
    DisjointNonsquare,
    /// Disjoint carriers; b a square, each root μ tested separately.
    DisjointRoots,
}

impl CaseTag {
    pub fn name(&self) -> &'static str {
        match self {
            CaseTag::TangentChains => "tangent",
            CaseTag::TangentNone => "tangent-none",
            CaseTag::KappaZero => "kappa-zero",
            CaseTag::KappaZeroNone => "kappa-zero-none",
            CaseTag::KappaNonsquare => "kappa-nonsquare",
            CaseTag::TwoFamilies => "two-families",
            CaseTag::TwoFamiliesNone => "two-families-none",
            CaseTag::OneFamily => "one-family",
            CaseTag::DisjointNonsquare => "disjoint-nonsquare",
            CaseTag::DisjointRoots => "disjoint-roots",
        }
    }

    pub fn is_disjoint(&self) -> bool {
        matches!(self, CaseTag::DisjointNonsquare | CaseTag::DisjointRoots)
    }
}

/// `count` chains of length `length`, generated by an element of order
/// `length` described by `generator`.
///
/// For disjoint carriers `count` is the number of chains through any fixed
/// point of a carrier, not a total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub length: u64,
    pub count: u64,
    pub generator: String,
}

/// Per-root data for disjoint carriers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootTest<'f> {
    pub mu: Fq<'f>,
    pub minus_mu_nonsquare: bool,
    pub xi: Option<Fq2<'f>>,
    pub order: Option<u64>,
    pub admissible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointData<'f> {
    /// The root of c(c - 4) used for b.
    pub disc_root: Fq<'f>,
    pub b: Fq<'f>,
    pub k_max: u64,
    pub roots: Vec<RootTest<'f>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPrediction<'f> {
    pub exists: bool,
    pub case: CaseTag,
    pub families: Vec<Family>,
    pub kappa: Option<Fq<'f>>,
    pub sqrt_kappa: Option<Fq<'f>>,
    pub w_plus: Option<Fq<'f>>,
    pub w_minus: Option<Fq<'f>>,
    pub disjoint: Option<DisjointData<'f>>,
}

impl<'f> ChainPrediction<'f> {
    fn none(case: CaseTag, kappa: Option<Fq<'f>>) -> Self {
        ChainPrediction {
            exists: false,
            case,
            families: Vec::new(),
            kappa,
            sqrt_kappa: None,
            w_plus: None,
            w_minus: None,
            disjoint: None,
        }
    }

    /// Chain counts per length, families of equal length merged.
    pub fn histogram(&self) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        for fam in &self.families {
            *h.entry(fam.length).or_insert(0) += fam.count;
        }
        h
    }

    pub fn lengths(&self) -> BTreeSet<u64> {
        self.families.iter().map(|f| f.length).collect()
    }

    /// Whether family counts are totals (tangent and intersecting carriers).
    pub fn counts_are_totals(&self) -> bool {
        !self.case.is_disjoint()
    }

    /// Parity and divisibility of the predicted lengths: odd divisors of
    /// (q-1)/2 for κ = 0 and for two families, divisors of q-1 that do not
    /// divide (q-1)/2 for one family.
    pub fn length_clauses_hold(&self, q: u32) -> bool {
        self.families.iter().all(|f| length_clause(self.case, q, f.length))
    }
}

/// The parity/divisibility clause for one chain length in a given branch.
pub fn length_clause(case: CaseTag, q: u32, len: u64) -> bool {
    let q = q as u64;
    let half = (q - 1) / 2;
    match case {
        CaseTag::KappaZero | CaseTag::TwoFamilies => len % 2 == 1 && half % len == 0,
        CaseTag::OneFamily => (q - 1) % len == 0 && half % len != 0,
        _ => true,
    }
}

/// Tangent carriers: p^(m-1) chains of length p when q ≡ 3 mod 4.
pub fn predict_tangent(f: &Field) -> ChainPrediction<'_> {
    if f.minus_one_is_square() {
        return ChainPrediction::none(CaseTag::TangentNone, Some(f.int(4)));
    }
    let p = f.p() as u64;
    ChainPrediction {
        exists: true,
        case: CaseTag::TangentChains,
        families: vec![Family {
            length: p,
            count: p.pow(f.m() - 1),
            generator: "z+sqrt(-1)".into(),
        }],
        kappa: Some(f.int(4)),
        sqrt_kappa: None,
        w_plus: None,
        w_minus: None,
        disjoint: None,
    }
}

/// w = (2 + s)/(2 - s).
fn w_of<'f>(s: Fq<'f>) -> Fq<'f> {
    let two = s.field().int(2);
    (two + s) / (two - s)
}

fn family<'f>(q: u32, w: Fq<'f>, per_len: u64, name: &str) -> Family {
    let k = w.mult_order().expect("w ≠ 0");
    Family {
        length: k,
        count: per_len * (q as u64 - 1) / k,
        generator: format!("{name}={w}"),
    }
}

/// Intersecting carriers, decided by κ alone.
pub fn predict_intersecting_kappa(kappa: Fq<'_>) -> ChainPrediction<'_> {
    let f = kappa.field();
    let q = f.q();
    let two = f.int(2);
    if kappa.is_zero() {
        if f.m() % 2 == 1 && f.p() % 16 == 7 {
            let r2 = two.sqrt().expect("2 is a square when p ≡ 7 mod 8");
            let w = f.int(3) + two * r2;
            let fam = family(q, w, 2, "3+2*sqrt(2)");
            return ChainPrediction {
                exists: true,
                case: CaseTag::KappaZero,
                families: vec![fam],
                kappa: Some(kappa),
                sqrt_kappa: Some(kappa),
                w_plus: Some(w),
                w_minus: Some(w),
                disjoint: None,
            };
        }
        let mut pred = ChainPrediction::none(CaseTag::KappaZeroNone, Some(kappa));
        pred.sqrt_kappa = Some(kappa);
        return pred;
    }
    let Some(root) = kappa.sqrt() else {
        return ChainPrediction::none(CaseTag::KappaNonsquare, Some(kappa));
    };
    let plus = root + two;
    let minus = -root + two;
    let w_plus = plus.sqrt().filter(|_| !plus.is_zero()).map(w_of);
    let w_minus = minus.sqrt().filter(|_| !minus.is_zero()).map(w_of);
    let mut pred = ChainPrediction {
        exists: false,
        case: CaseTag::TwoFamiliesNone,
        families: Vec::new(),
        kappa: Some(kappa),
        sqrt_kappa: Some(root),
        w_plus,
        w_minus,
        disjoint: None,
    };
    if f.minus_one_is_square() {
        pred.case = CaseTag::OneFamily;
        let (w, name) = match (w_plus, w_minus) {
            (Some(w), _) => (w, "w+"),
            (None, Some(w)) => (w, "w-"),
            (None, None) => unreachable!("exactly one of ±√κ + 2 is a square when -1 is"),
        };
        pred.families.push(family(q, w, 1, name));
    } else if let (Some(wp), Some(wm)) = (w_plus, w_minus) {
        pred.case = CaseTag::TwoFamilies;
        pred.families.push(family(q, wp, 1, "w+"));
        pred.families.push(family(q, wm, 1, "w-"));
    }
    pred.exists = !pred.families.is_empty();
    pred
}

pub fn predict_intersecting<'f>(c1: &Circle<'f>, c2: &Circle<'f>) -> Result<ChainPrediction<'f>> {
    if !classify(c1, c2)?.is_intersecting() {
        return Err(Error::NotIntersecting);
    }
    Ok(predict_intersecting_kappa(capacitance(c1, c2)?))
}

/// Disjoint carriers: existence and admissible lengths from the
/// capacitance. `k_max` defaults to q + 1.
pub fn predict_disjoint<'f>(
    c1: &Circle<'f>,
    c2: &Circle<'f>,
    k_max: Option<u64>,
) -> Result<ChainPrediction<'f>> {
    if !classify(c1, c2)?.is_disjoint() {
        return Err(Error::NotDisjoint);
    }
    let c = capacitance(c1, c2)?;
    Ok(predict_disjoint_kappa(c, k_max))
}

pub fn predict_disjoint_kappa(c: Fq<'_>, k_max: Option<u64>) -> ChainPrediction<'_> {
    let f = c.field();
    let k_max = k_max.unwrap_or(f.q() as u64 + 1);
    let (one, two) = (f.one(), f.int(2));
    let disc = c * (c - f.int(4));
    let disc_root = disc.sqrt();
    let b = match disc_root.map(|s| (c - two + s) / two) {
        Some(b) if b.is_nonzero_square() => b,
        _ => return ChainPrediction::none(CaseTag::DisjointNonsquare, Some(c)),
    };
    let disc_root = disc_root.expect("b was defined");
    let mu1 = b.sqrt().expect("square");
    let mut roots = Vec::new();
    let mut families = Vec::new();
    for (j, mu) in [mu1, -mu1].into_iter().enumerate() {
        let minus_mu_nonsquare = !(-mu).is_square();
        let (mut xi, mut order, mut admissible) = (None, None, false);
        if minus_mu_nonsquare {
            let r = (-mu).sqrt_ext();
            let num = Fq2::from(-mu.square() + f.int(6) * mu - one) + r.scale(f.int(4) * (mu - one));
            let x = num / (one + mu).square();
            let k = x.mult_order().expect("ξ ≠ 0");
            admissible = (3..=k_max).contains(&k);
            if admissible {
                families.push(Family {
                    length: k,
                    count: 1,
                    generator: format!("mu{}={mu}", j + 1),
                });
            }
            xi = Some(x);
            order = Some(k);
        }
        roots.push(RootTest {
            mu,
            minus_mu_nonsquare,
            xi,
            order,
            admissible,
        });
    }
    ChainPrediction {
        exists: !families.is_empty(),
        case: CaseTag::DisjointRoots,
        families,
        kappa: Some(c),
        sqrt_kappa: None,
        w_plus: None,
        w_minus: None,
        disjoint: Some(DisjointData {
            disc_root,
            b,
            k_max,
            roots,
        }),
    }
}

/// Dispatch on the mutual position of the carriers.
pub fn predict<'f>(c1: &Circle<'f>, c2: &Circle<'f>, k_max: Option<u64>) -> Result<ChainPrediction<'f>> {
    let pos = classify(c1, c2)?;
    if pos.is_tangent() {
        Ok(predict_tangent(c1.field()))
    } else if pos.is_intersecting() {
        predict_intersecting(c1, c2)
    } else {
        predict_disjoint(c1, c2, k_max)
    }
}
