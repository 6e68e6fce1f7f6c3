//! Steiner chains: prediction, explicit construction, validation and
//! reduction of carrier pairs to standard position.

mod chain;
mod construct;
mod predict;
mod reduce;

pub use chain::{validate_chain, Clause, SteinerChain, Violation};
pub use construct::{
    construct_chains, construct_intersecting_chains, construct_tangent_chains, generators,
    standard_pencil, standard_tangent_chains, symmetric_pencil, tangent_pencil, Generators,
};
pub use predict::{
    length_clause, predict, predict_disjoint, predict_disjoint_kappa, predict_intersecting,
    predict_intersecting_kappa, predict_tangent, CaseTag, ChainPrediction, DisjointData, Family,
    RootTest,
};
pub use reduce::{
    reduce_intersecting_pair, reduce_tangent_pair, symmetric_pair, IntersectingReduction,
    TangentReduction,
};
