//! Restricted diagnosabilities.
//!
//! `G` is `(t, s)`-diagnosable when any two distinct consistent pairs with at
//! most `t` faulty vertices and at most `s` faulty edges each are
//! distinguishable. Fixing one of the bounds gives two parameters:
//!
//! * `t_h^e(G)`, the largest `t` with `G` `(t, h)`-diagnosable
//!   ([`edge_restricted_diagnosability`]);
//! * `s_r^v(G)`, the largest `s` with `G` `(r, s)`-diagnosable
//!   ([`vertex_restricted_edge_diagnosability`]).
//!
//! Older write-ups also call these `t_h(G)` and `s_r(G)`; they are the same
//! quantities. `t_0^e` is the classical PMC diagnosability.
//!
//! Both are computed by ascending search: the failing bound is found by
//! querying `(t, h)` or `(r, s)` for increasing values until the first
//! indistinguishable pair appears, which is attached to the report.

mod search;
mod witness;

use std::time::{Duration, Instant};

use serde::Serialize;

pub use search::{
    is_ts_diagnosable, is_ts_diagnosable_with, SearchOptions, SearchStats, Strategy, TsCheck,
    FULL_SET_LIMIT, LITERAL_PAIR_LIMIT, MASK_VERTEX_LIMIT,
};
pub use witness::{construct_edge_witness, construct_indistinguishable_witness};

use crate::distinguish::distinguishable_lemma1;
use crate::error::{Error, Result};
use crate::fault::FaultPair;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameter {
    /// `t_h^e`: faulty edges capped at `h`, maximize faulty vertices.
    EdgeRestricted,
    /// `s_r^v`: faulty vertices capped at `r`, maximize faulty edges.
    VertexRestricted,
}

#[derive(Debug, Clone)]
pub struct DiagnosabilityReport {
    pub graph: String,
    pub parameter: Parameter,
    /// `h` or `r`.
    pub level: usize,
    /// `None` when `G` is not even `(r, 0)`-diagnosable.
    pub value: Option<usize>,
    /// An indistinguishable pair at the first failing bound.
    pub witness: Option<(FaultPair, FaultPair)>,
    /// `(t, s)` at which the witness was found.
    pub failing_bounds: Option<(usize, usize)>,
    /// Set for `t_h^e` with `h > δ(G)`, where no analytic bound applies.
    pub outside_analyzed_range: bool,
    pub strategy: Strategy,
    pub stats: SearchStats,
    pub elapsed: Duration,
}

impl DiagnosabilityReport {
    /// Re-checks the witness: distinct, within the failing bounds and
    /// indistinguishable.
    pub fn validate(&self, g: &Graph) -> Result<bool> {
        match (&self.witness, self.failing_bounds) {
            (None, None) => Ok(true),
            (Some((p1, p2)), Some((t, s))) => Ok(p1 != p2
                && p1.within_bounds(t, s)
                && p2.within_bounds(t, s)
                && !distinguishable_lemma1(g, p1, p2)?.distinguishable),
            _ => Ok(false),
        }
    }
}

/// `t_h^e(G)` with the default local search.
pub fn edge_restricted_diagnosability(g: &Graph, h: usize) -> Result<DiagnosabilityReport> {
    edge_restricted_diagnosability_with(g, h, &SearchOptions::default())
}

pub fn edge_restricted_diagnosability_with(
    g: &Graph,
    h: usize,
    opts: &SearchOptions,
) -> Result<DiagnosabilityReport> {
    if h > g.edge_count() {
        return Err(Error::InvalidParameter(format!(
            "h = {h} exceeds the edge count {}",
            g.edge_count()
        )));
    }
    let started = Instant::now();
    let mut stats = SearchStats::default();
    let mut value = g.vertex_count();
    let mut witness = None;
    let mut failing = None;
    // (0, h) always holds: with no faulty vertices every faulty edge is
    // tested by two good endpoints.
    for t in 1..=g.vertex_count() {
        let check = is_ts_diagnosable_with(g, t, h, opts)?;
        stats += check.stats;
        if !check.diagnosable {
            value = t - 1;
            witness = check.witness;
            failing = Some((t, h));
            break;
        }
    }
    let outside = g.min_degree().map(|d| h > d).unwrap_or(true);
    Ok(DiagnosabilityReport {
        graph: g.topology().to_string(),
        parameter: Parameter::EdgeRestricted,
        level: h,
        value: Some(value),
        witness,
        failing_bounds: failing,
        outside_analyzed_range: outside,
        strategy: opts.strategy,
        stats,
        elapsed: started.elapsed(),
    })
}

/// `s_r^v(G)` with the default local search.
pub fn vertex_restricted_edge_diagnosability(g: &Graph, r: usize) -> Result<DiagnosabilityReport> {
    vertex_restricted_edge_diagnosability_with(g, r, &SearchOptions::default())
}

/// `s_r^v(G)`. For `r = 0` this is `|E(G)|` without searching.
pub fn vertex_restricted_edge_diagnosability_with(
    g: &Graph,
    r: usize,
    opts: &SearchOptions,
) -> Result<DiagnosabilityReport> {
    let started = Instant::now();
    let mut stats = SearchStats::default();
    let mut value = Some(g.edge_count());
    let mut witness = None;
    let mut failing = None;
    if r > 0 {
        for s in 0..=g.edge_count() {
            let check = is_ts_diagnosable_with(g, r, s, opts)?;
            stats += check.stats;
            if !check.diagnosable {
                value = s.checked_sub(1);
                witness = check.witness;
                failing = Some((r, s));
                break;
            }
        }
    }
    Ok(DiagnosabilityReport {
        graph: g.topology().to_string(),
        parameter: Parameter::VertexRestricted,
        level: r,
        value,
        witness,
        failing_bounds: failing,
        outside_analyzed_range: false,
        strategy: opts.strategy,
        stats,
        elapsed: started.elapsed(),
    })
}

/// Classical PMC diagnosability, `t_0^e(G)`.
pub fn pmc_diagnosability(g: &Graph) -> Result<usize> {
    Ok(edge_restricted_diagnosability(g, 0)?
        .value
        .expect("t_h^e is always defined"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeBounds {
    /// `δ(G) − h`.
    pub t_h_bound: usize,
    /// `δ(G) − 2`, clamped at 0.
    pub s1_bound: usize,
}

/// The analytic upper bounds `t_h^e ≤ δ − h` and `s_1^v ≤ δ − 2`.
///
/// The first follows from [`construct_indistinguishable_witness`] for every
/// graph. The second is only backed by [`construct_edge_witness`] on an edge
/// whose endpoints both have degree δ, which holds in regular graphs such as
/// hypercubes; on irregular graphs `s_1^v` can exceed it.
pub fn lemma2_upper_bounds(g: &Graph, h: usize) -> Result<DegreeBounds> {
    let delta = g.min_degree()?;
    if h > delta {
        return Err(Error::InvalidParameter(format!(
            "h = {h} exceeds the minimum degree {delta}"
        )));
    }
    Ok(DegreeBounds {
        t_h_bound: delta - h,
        s1_bound: delta.saturating_sub(2),
    })
}
