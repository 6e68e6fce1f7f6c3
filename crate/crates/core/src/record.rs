//! JSON records for predictions, censuses and comparisons.
//!
//! GF(q) values are JSON numbers when q is prime and coefficient strings
//! otherwise; GF(q²) values, points and circles use their text forms.

use serde::Serialize;
use serde_json::Value;

use crate::chains::{ChainPrediction, SteinerChain};
use crate::error::Result;
use crate::gf::{Field, Fq};
use crate::oracle::{ChainCensus, Comparison};
use crate::plane::Circle;
use crate::position::{capacitance, classify, Contact};

pub fn fq_value(x: Fq<'_>) -> Value {
    if x.field().m() == 1 {
        Value::from(x.code())
    } else {
        Value::from(x.to_string())
    }
}

fn opt(x: Option<Fq<'_>>) -> Value {
    x.map_or(Value::Null, fq_value)
}

#[derive(Serialize)]
pub struct FieldRecord {
    pub p: u32,
    pub m: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
    pub alpha: Value,
}

pub fn field_record(f: &Field) -> FieldRecord {
    FieldRecord {
        p: f.p(),
        m: f.m(),
        q: f.q(),
        modulus: f.modulus().to_vec(),
        alpha: fq_value(f.alpha()),
    }
}

#[derive(Serialize)]
pub struct PositionRecord {
    pub circle1: String,
    pub circle2: String,
    pub position: &'static str,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub at: Value,
    pub discriminant: Value,
    pub kappa: Value,
}

pub fn position_record(c1: &Circle<'_>, c2: &Circle<'_>) -> Result<PositionRecord> {
    let pos = classify(c1, c2)?;
    let at = match pos.contact {
        Contact::Disjoint => Value::Null,
        Contact::Tangent(p) => Value::from(p.to_string()),
        Contact::Intersecting(a, b) => Value::from(vec![a.to_string(), b.to_string()]),
    };
    Ok(PositionRecord {
        circle1: c1.to_string(),
        circle2: c2.to_string(),
        position: pos.name(),
        at,
        discriminant: opt(pos.discriminant),
        kappa: fq_value(capacitance(c1, c2)?),
    })
}

#[derive(Serialize)]
pub struct FamilyRecord {
    pub length: u64,
    pub count: u64,
    pub generator: String,
}

#[derive(Serialize)]
pub struct RootRecord {
    pub mu: Value,
    pub minus_mu_nonsquare: bool,
    pub xi: Option<String>,
    pub order: Option<u64>,
    pub admissible: bool,
}

#[derive(Serialize)]
pub struct DisjointRecord {
    pub disc_root: Value,
    pub b: Value,
    pub k_max: u64,
    pub roots: Vec<RootRecord>,
}

#[derive(Serialize)]
pub struct PredictionRecord {
    pub exists: bool,
    pub case: &'static str,
    pub counts_are_totals: bool,
    pub families: Vec<FamilyRecord>,
    pub histogram: Vec<(u64, u64)>,
    pub kappa: Value,
    pub sqrt_kappa: Value,
    pub w_plus: Value,
    pub w_minus: Value,
    pub order_w_plus: Option<u64>,
    pub order_w_minus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disjoint: Option<DisjointRecord>,
}

pub fn prediction_record(pred: &ChainPrediction<'_>) -> PredictionRecord {
    let order = |w: Option<Fq<'_>>| w.and_then(|w| w.mult_order().ok());
    PredictionRecord {
        exists: pred.exists,
        case: pred.case.name(),
        counts_are_totals: pred.counts_are_totals(),
        families: pred
            .families
            .iter()
            .map(|f| FamilyRecord {
                length: f.length,
                count: f.count,
                generator: f.generator.clone(),
            })
            .collect(),
        histogram: pred.histogram().into_iter().collect(),
        kappa: opt(pred.kappa),
        sqrt_kappa: opt(pred.sqrt_kappa),
        w_plus: opt(pred.w_plus),
        w_minus: opt(pred.w_minus),
        order_w_plus: order(pred.w_plus),
        order_w_minus: order(pred.w_minus),
        disjoint: pred.disjoint.as_ref().map(|d| DisjointRecord {
            disc_root: fq_value(d.disc_root),
            b: fq_value(d.b),
            k_max: d.k_max,
            roots: d
                .roots
                .iter()
                .map(|r| RootRecord {
                    mu: fq_value(r.mu),
                    minus_mu_nonsquare: r.minus_mu_nonsquare,
                    xi: r.xi.map(|x| x.to_string()),
                    order: r.order,
                    admissible: r.admissible,
                })
                .collect(),
        }),
    }
}

#[derive(Serialize)]
pub struct ChainRecord {
    pub length: usize,
    pub circles: Vec<String>,
    pub contacts: Vec<String>,
    pub carrier_contacts: Vec<(String, String)>,
}

pub fn chain_record(chain: &SteinerChain<'_>) -> ChainRecord {
    ChainRecord {
        length: chain.len(),
        circles: chain.circles().iter().map(|c| c.to_string()).collect(),
        contacts: chain.contacts().iter().map(|p| p.to_string()).collect(),
        carrier_contacts: chain
            .carrier_contacts()
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    }
}

#[derive(Serialize)]
pub struct CensusRecord {
    pub pencil_size: usize,
    pub circles_covered: usize,
    pub histogram: Vec<(u64, u64)>,
    pub chains: Vec<ChainRecord>,
}

pub fn census_record(census: &ChainCensus<'_>) -> CensusRecord {
    CensusRecord {
        pencil_size: census.pencil_size(),
        circles_covered: census.circles_covered(),
        histogram: census.histogram().into_iter().collect(),
        chains: census.chains.iter().map(chain_record).collect(),
    }
}

#[derive(Serialize)]
pub struct MismatchRecord {
    pub length: u64,
    pub predicted: u64,
    pub observed: u64,
}

#[derive(Serialize)]
pub struct ComparisonRecord {
    pub agree: bool,
    pub exact_counts: bool,
    pub mismatches: Vec<MismatchRecord>,
}

pub fn comparison_record(cmp: &Comparison) -> ComparisonRecord {
    ComparisonRecord {
        agree: cmp.agree(),
        exact_counts: cmp.exact_counts,
        mismatches: cmp
            .mismatches
            .iter()
            .map(|m| MismatchRecord {
                length: m.length,
                predicted: m.predicted,
                observed: m.observed,
            })
            .collect(),
    }
}
