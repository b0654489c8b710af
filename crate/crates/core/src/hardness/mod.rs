//! Lower-bound instance generators and their validators.
//!
//! Disjointness instances become segment, interval and unit-interval streams
//! whose independence or clique number is exactly 1 or exactly `t`; chained
//! index instances become 2-interval streams with the same gap.

mod chain;
mod disjointness;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

pub use chain::{
    chain_layout, chain_pair, chain_structure_report, gen_chain, max_coordinate_bits, two_intervals_from_chain,
    ChainInstance, ChainLayout,
};
pub use disjointness::{
    clique_segments_from_disjointness, clique_unit_intervals_from_disjointness, gen_disjointness,
    interval_representation, segments_from_disjointness, DisjInstance,
};

use crate::oracle::{intersection_graph, OracleError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HardnessError {
    #[error("n = {n} is not a positive multiple of 2t = {}", 2 * t)]
    Divisibility { n: usize, t: usize },
    #[error("at least two players are required, got {0}")]
    TooFewPlayers(usize),
    #[error("bit strings must be non-empty")]
    EmptyStrings,
    #[error("column {column} has {weight} ones; only singleton columns and one full column have an interval form")]
    NotRepresentable { column: usize, weight: usize },
}

/// Named pass/fail checks, serialized as a flat JSON object.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ValidationReport {
    pub checks: BTreeMap<String, bool>,
}

impl ValidationReport {
    pub fn record(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.to_owned(), ok);
    }

    pub fn passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, &ok)| !ok).map(|(k, _)| k.as_str()).collect()
    }
}

/// Instance properties plus the promised gaps of every disjointness
/// construction, checked with the exact oracle (at most 64 ones in total).
pub fn disjointness_gap_report(inst: &DisjInstance) -> Result<ValidationReport, OracleError> {
    let mut r = inst.validate();
    if !r.passed() {
        return Ok(r);
    }
    let expect = if inst.answer { inst.t } else { 1 };

    let seg = intersection_graph(segments_from_disjointness(inst).objects())?;
    r.record("segments_alpha", seg.max_independent_set().size == expect);

    let cseg = intersection_graph(clique_segments_from_disjointness(inst).objects())?;
    r.record("clique_segments_omega", cseg.max_clique().size == expect);
    r.record("complementarity", cseg.same_edges(&seg.complement()));

    let unit = intersection_graph(clique_unit_intervals_from_disjointness(inst).objects())?;
    r.record("unit_intervals_omega", unit.max_clique().size == expect);

    let iso = match interval_representation(inst) {
        Ok(s) => intersection_graph(s.objects())?.same_edges(&seg),
        Err(_) => false,
    };
    r.record("interval_representation_isomorphic", iso);
    Ok(r)
}

/// Instance promise, layout structure and the 2-interval gap.
pub fn chain_gap_report(inst: &ChainInstance) -> Result<ValidationReport, OracleError> {
    let mut r = chain_structure_report(inst);
    if !r.passed() {
        return Ok(r);
    }
    let g = intersection_graph(two_intervals_from_chain(inst).objects())?;
    let expect = if inst.z { inst.t } else { 1 };
    r.record("alpha", g.max_independent_set().size == expect);
    Ok(r)
}
