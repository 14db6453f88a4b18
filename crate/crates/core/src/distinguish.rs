//! Deciding whether two fault pairs can be told apart by some syndrome.
//!
//! Two routes are provided. [`distinguishable_lemma1`] checks the two
//! edge-local conditions that characterize distinguishable pairs and
//! reports which edge witnesses the answer. [`distinguishable_oracle`]
//! works straight from the syndrome sets: the pairs share a syndrome
//! exactly when no test is forced to `Pass` under one and to `Fail` under
//! the other, since an arbitrary test can always be set to agree.
//! [`distinguishable_by_enumeration`] checks that reduction itself by
//! listing every syndrome on tiny graphs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fault::{forced_at, is_consistent, FaultPair, ForcedOutcome, Syndrome};
use crate::graph::{Edge, Graph, VertexId};
use crate::fault::Outcome;

/// Which of the two distinguishing conditions holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Condition {
    /// A vertex `u` faulty in one pair only has a neighbour `v` fault-free
    /// in both, and `uv` is not faulty in the pair where `u` is good.
    FaultyVertexExposed,
    /// An edge faulty in one pair only has both endpoints fault-free in the
    /// other pair.
    FaultyEdgeExposed,
}

impl Condition {
    pub fn number(self) -> u8 {
        match self {
            Condition::FaultyVertexExposed => 1,
            Condition::FaultyEdgeExposed => 2,
        }
    }
}

/// Which argument plays the role of `(F_1, S_1)` in the witnessed clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    FirstIsFaulty,
    SecondIsFaulty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub condition: Condition,
    pub edge: Edge,
    pub direction: Direction,
    /// For the vertex condition, the endpoint that is faulty in one pair
    /// only. For the edge condition, the lower endpoint.
    pub faulty_end: VertexId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub distinguishable: bool,
    pub witness: Option<Witness>,
}

fn check_pair(g: &Graph, p1: &FaultPair, p2: &FaultPair) -> Result<()> {
    p1.check_graph(g)?;
    p2.check_graph(g)?;
    if p1 == p2 {
        return Err(Error::IdenticalPairs);
    }
    Ok(())
}

/// Condition 1 on edge `uv` (edge index `k`) with `a` in the faulty role.
fn vertex_exposed(a: &FaultPair, b: &FaultPair, u: usize, v: usize, k: usize) -> bool {
    let (fa, fb) = (a.vertex_mask(), b.vertex_mask());
    fa.contains(u) && !fb.contains(u) && !fa.contains(v) && !fb.contains(v) && !b.edge_mask().contains(k)
}

/// Condition 2 on edge `uv` (edge index `k`) with `a` in the faulty role.
fn edge_exposed(a: &FaultPair, b: &FaultPair, u: usize, v: usize, k: usize) -> bool {
    a.edge_mask().contains(k)
        && !b.edge_mask().contains(k)
        && !b.vertex_mask().contains(u)
        && !b.vertex_mask().contains(v)
}

impl Witness {
    /// Re-evaluates the witnessed clause against the raw sets.
    pub fn holds(&self, g: &Graph, p1: &FaultPair, p2: &FaultPair) -> bool {
        let Some(k) = g.edge_index(self.edge) else {
            return false;
        };
        let (a, b) = match self.direction {
            Direction::FirstIsFaulty => (p1, p2),
            Direction::SecondIsFaulty => (p2, p1),
        };
        let Some(other) = self.edge.other(self.faulty_end) else {
            return false;
        };
        match self.condition {
            Condition::FaultyVertexExposed => vertex_exposed(a, b, self.faulty_end.0, other.0, k),
            Condition::FaultyEdgeExposed => edge_exposed(a, b, self.faulty_end.0, other.0, k),
        }
    }
}

/// Decides distinguishability from the two edge conditions, with a witness.
///
/// Edges are scanned in canonical order and the first qualifying one is
/// reported; on a given edge the vertex condition is tried before the edge
/// condition, and the first pair in the faulty role before the second.
pub fn distinguishable_lemma1(g: &Graph, p1: &FaultPair, p2: &FaultPair) -> Result<Verdict> {
    check_pair(g, p1, p2)?;
    Ok(match first_witness(g, p1, p2) {
        Some(w) => Verdict {
            distinguishable: true,
            witness: Some(w),
        },
        None => Verdict {
            distinguishable: false,
            witness: None,
        },
    })
}

pub(crate) fn first_witness(g: &Graph, p1: &FaultPair, p2: &FaultPair) -> Option<Witness> {
    let roles = [
        (p1, p2, Direction::FirstIsFaulty),
        (p2, p1, Direction::SecondIsFaulty),
    ];
    for (k, &edge) in g.edges().iter().enumerate() {
        let (x, y) = edge.endpoints();
        for &(a, b, direction) in &roles {
            for (u, v) in [(x, y), (y, x)] {
                if vertex_exposed(a, b, u.0, v.0, k) {
                    return Some(Witness {
                        condition: Condition::FaultyVertexExposed,
                        edge,
                        direction,
                        faulty_end: u,
                    });
                }
            }
        }
        for &(a, b, direction) in &roles {
            if edge_exposed(a, b, x.0, y.0, k) {
                return Some(Witness {
                    condition: Condition::FaultyEdgeExposed,
                    edge,
                    direction,
                    faulty_end: x,
                });
            }
        }
    }
    None
}

/// True iff some test is forced to opposite results by the two pairs.
pub fn distinguishable_oracle(g: &Graph, p1: &FaultPair, p2: &FaultPair) -> Result<bool> {
    check_pair(g, p1, p2)?;
    debug_assert!(!forced_conflict(g, p1, p1));
    Ok(forced_conflict(g, p1, p2))
}

pub(crate) fn forced_conflict(g: &Graph, p1: &FaultPair, p2: &FaultPair) -> bool {
    (0..2 * g.edge_count()).any(|i| {
        matches!(
            (forced_at(g, p1, i), forced_at(g, p2, i)),
            (ForcedOutcome::ForcedPass, ForcedOutcome::ForcedFail)
                | (ForcedOutcome::ForcedFail, ForcedOutcome::ForcedPass)
        )
    })
}

/// Most tests [`distinguishable_by_enumeration`] accepts (4096 syndromes).
pub const ENUMERATION_TEST_LIMIT: usize = 12;

/// Every syndrome of `g` as a bit pattern: bit `i` set means test `i`
/// failed. Only for graphs within [`ENUMERATION_TEST_LIMIT`].
pub fn syndrome_set(g: &Graph, fp: &FaultPair) -> Result<Vec<u64>> {
    let tests = 2 * g.edge_count();
    if tests > ENUMERATION_TEST_LIMIT {
        return Err(Error::TooLarge {
            what: "test count for syndrome enumeration",
            limit: ENUMERATION_TEST_LIMIT,
        });
    }
    let total = 1usize << tests;
    let mut members = vec![0u64; total.div_ceil(64)];
    for pattern in 0..total {
        let sig = Syndrome::from_fn(g, {
            let mut i = 0;
            move |_| {
                let o = if pattern >> i & 1 == 1 {
                    Outcome::Fail
                } else {
                    Outcome::Pass
                };
                i += 1;
                o
            }
        });
        if is_consistent(g, &sig, fp)? {
            members[pattern / 64] |= 1 << (pattern % 64);
        }
    }
    Ok(members)
}

/// Decides distinguishability by intersecting the full syndrome sets.
pub fn distinguishable_by_enumeration(g: &Graph, p1: &FaultPair, p2: &FaultPair) -> Result<bool> {
    check_pair(g, p1, p2)?;
    let a = syndrome_set(g, p1)?;
    let b = syndrome_set(g, p2)?;
    Ok(a.iter().zip(&b).all(|(x, y)| x & y == 0))
}
