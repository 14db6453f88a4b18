//! Consistent faulty pairs, tests and syndromes.
//!
//! A test `t(u, v; e)` has a fault-free tester `u` report `Fail` exactly when
//! the testee `v` or the test edge `e` is faulty; a faulty tester may report
//! anything. Faulty edges never touch faulty vertices.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

/// A consistent faulty pair `(F, S)` bound to one graph.
#[derive(Clone)]
pub struct FaultPair {
    graph: u64,
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    vertex_mask: FixedBitSet,
    edge_mask: FixedBitSet,
}

/// Builds `(F, S)` on `g`, rejecting any faulty edge incident to a faulty
/// vertex.
pub fn make_fault_pair<V, E>(g: &Graph, faulty_vertices: V, faulty_edges: E) -> Result<FaultPair>
where
    V: IntoIterator<Item = VertexId>,
    E: IntoIterator<Item = Edge>,
{
    let mut vertex_mask = FixedBitSet::with_capacity(g.vertex_count());
    for v in faulty_vertices {
        g.check_vertex(v)?;
        vertex_mask.insert(v.0);
    }
    let mut edge_mask = FixedBitSet::with_capacity(g.edge_count());
    for e in faulty_edges {
        let (a, b) = e.endpoints();
        g.check_vertex(a)?;
        g.check_vertex(b)?;
        let idx = g.edge_index(e).ok_or(Error::UnknownEdge(e))?;
        for end in [a, b] {
            if vertex_mask.contains(end.0) {
                return Err(Error::Inconsistent { edge: e, vertex: end });
            }
        }
        edge_mask.insert(idx);
    }
    Ok(FaultPair::from_masks(g, vertex_mask, edge_mask))
}

/// A uniformly drawn consistent pair with exactly `vertices` faulty vertices
/// and `edges` faulty edges: first `F`, then `S` among the edges avoiding
/// `F`, both from one ChaCha8 stream seeded with `seed`.
pub fn random_fault_pair(g: &Graph, vertices: usize, edges: usize, seed: u64) -> Result<FaultPair> {
    if vertices > g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "cannot pick {vertices} faulty vertices out of {}",
            g.vertex_count()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f: Vec<VertexId> = index::sample(&mut rng, g.vertex_count(), vertices)
        .into_iter()
        .map(VertexId)
        .collect();
    let eligible: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| !f.iter().any(|&v| e.contains(v)))
        .collect();
    if edges > eligible.len() {
        return Err(Error::InvalidParameter(format!(
            "only {} edges avoid the {vertices} faulty vertices, {edges} requested",
            eligible.len()
        )));
    }
    let s: Vec<Edge> = index::sample(&mut rng, eligible.len(), edges)
        .into_iter()
        .map(|i| eligible[i])
        .collect();
    make_fault_pair(g, f, s)
}

impl FaultPair {
    /// `(∅, ∅)`.
    pub fn fault_free(g: &Graph) -> Self {
        Self::from_masks(
            g,
            FixedBitSet::with_capacity(g.vertex_count()),
            FixedBitSet::with_capacity(g.edge_count()),
        )
    }

    /// `(V(G), ∅)`, consistent with every syndrome.
    pub fn all_vertices(g: &Graph) -> Self {
        let mut vm = FixedBitSet::with_capacity(g.vertex_count());
        vm.insert_range(..);
        Self::from_masks(g, vm, FixedBitSet::with_capacity(g.edge_count()))
    }

    pub(crate) fn from_masks(g: &Graph, vertex_mask: FixedBitSet, edge_mask: FixedBitSet) -> Self {
        let vertices = vertex_mask.ones().map(VertexId).collect();
        let edges: Vec<Edge> = edge_mask.ones().map(|i| g.edges()[i]).collect();
        debug_assert!(edges.iter().all(|e| {
            let (a, b) = e.endpoints();
            !vertex_mask.contains(a.0) && !vertex_mask.contains(b.0)
        }));
        FaultPair {
            graph: g.fingerprint(),
            vertices,
            edges,
            vertex_mask,
            edge_mask,
        }
    }

    /// F, sorted.
    pub fn faulty_vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// S, in canonical edge order.
    pub fn faulty_edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_faulty_vertex(&self, v: VertexId) -> bool {
        self.vertex_mask.contains(v.0)
    }

    pub fn is_faulty_edge(&self, g: &Graph, e: Edge) -> bool {
        g.edge_index(e).is_some_and(|i| self.edge_mask.contains(i))
    }

    pub(crate) fn vertex_mask(&self) -> &FixedBitSet {
        &self.vertex_mask
    }

    pub(crate) fn edge_mask(&self) -> &FixedBitSet {
        &self.edge_mask
    }

    /// `(|F|, |S|)`.
    pub fn sizes(&self) -> (usize, usize) {
        (self.vertices.len(), self.edges.len())
    }

    pub fn within_bounds(&self, t: usize, s: usize) -> bool {
        self.vertices.len() <= t && self.edges.len() <= s
    }

    pub fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.graph == g.fingerprint() && self.vertex_mask.len() == g.vertex_count() {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    pub fn to_record(&self) -> FaultPairRecord {
        FaultPairRecord {
            faulty_vertices: self.vertices.iter().map(|v| v.0).collect(),
            faulty_edges: self.edges.clone(),
        }
    }

    pub fn from_record(g: &Graph, record: &FaultPairRecord) -> Result<Self> {
        make_fault_pair(
            g,
            record.faulty_vertices.iter().copied().map(VertexId),
            record.faulty_edges.iter().copied(),
        )
    }
}

impl PartialEq for FaultPair {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for FaultPair {}

impl Hash for FaultPair {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.graph.hash(state);
        self.vertices.hash(state);
        self.edges.hash(state);
    }
}

/// Orders by `(|F|, F, |S|, S)`, each set compared lexicographically.
impl Ord for FaultPair {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices
            .len()
            .cmp(&other.vertices.len())
            .then_with(|| self.vertices.cmp(&other.vertices))
            .then_with(|| self.edges.len().cmp(&other.edges.len()))
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.graph.cmp(&other.graph))
    }
}

impl PartialOrd for FaultPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FaultPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FaultPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        let es: Vec<String> = self.edges.iter().map(ToString::to_string).collect();
        write!(f, "({{{}}}, {{{}}})", vs.join(","), es.join(","))
    }
}

/// Serialized form of a fault pair: `{"F": [ids], "S": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaultPairRecord {
    #[serde(rename = "F")]
    pub faulty_vertices: Vec<usize>,
    #[serde(rename = "S")]
    pub faulty_edges: Vec<Edge>,
}

impl Serialize for FaultPair {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(serializer)
    }
}

/// `t(tester, testee; edge)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Test {
    pub tester: VertexId,
    pub testee: VertexId,
    pub edge: Edge,
}

/// Both tests of every edge. Edge `k` contributes test `2k` (lower id
/// tests higher id) and test `2k + 1` (the reverse).
pub fn enumerate_tests(g: &Graph) -> Vec<Test> {
    g.edges()
        .iter()
        .flat_map(|&edge| {
            let (a, b) = edge.endpoints();
            [
                Test {
                    tester: a,
                    testee: b,
                    edge,
                },
                Test {
                    tester: b,
                    testee: a,
                    edge,
                },
            ]
        })
        .collect()
}

/// Position of the test `tester -> testee` in [`enumerate_tests`].
pub fn test_index(g: &Graph, tester: VertexId, testee: VertexId) -> Option<usize> {
    let k = g.edge_between(tester, testee)?;
    Some(2 * k + usize::from(tester > testee))
}

fn test_at(g: &Graph, index: usize) -> Test {
    let edge = g.edges()[index / 2];
    let (a, b) = edge.endpoints();
    if index.is_multiple_of(2) {
        Test {
            tester: a,
            testee: b,
            edge,
        }
    } else {
        Test {
            tester: b,
            testee: a,
            edge,
        }
    }
}

/// A test result: 0 for pass, 1 for fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn bit(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }

    pub fn from_bit(bit: u8) -> Option<Self> {
        match bit {
            0 => Some(Outcome::Pass),
            1 => Some(Outcome::Fail),
            _ => None,
        }
    }
}

impl Serialize for Outcome {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.bit())
    }
}

impl<'de> Deserialize<'de> for Outcome {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let bit = u8::deserialize(deserializer)?;
        Outcome::from_bit(bit).ok_or_else(|| serde::de::Error::custom(format!("outcome must be 0 or 1, got {bit}")))
    }
}

/// What a fault pair dictates for one test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForcedOutcome {
    ForcedPass,
    ForcedFail,
    /// The tester is faulty.
    Arbitrary,
}

impl ForcedOutcome {
    pub fn admits(self, outcome: Outcome) -> bool {
        match self {
            ForcedOutcome::ForcedPass => outcome == Outcome::Pass,
            ForcedOutcome::ForcedFail => outcome == Outcome::Fail,
            ForcedOutcome::Arbitrary => true,
        }
    }
}

#[inline]
pub(crate) fn forced(fp: &FaultPair, tester: usize, testee: usize, edge: usize) -> ForcedOutcome {
    if fp.vertex_mask.contains(tester) {
        ForcedOutcome::Arbitrary
    } else if fp.vertex_mask.contains(testee) || fp.edge_mask.contains(edge) {
        ForcedOutcome::ForcedFail
    } else {
        ForcedOutcome::ForcedPass
    }
}

#[inline]
pub(crate) fn forced_at(g: &Graph, fp: &FaultPair, index: usize) -> ForcedOutcome {
    let t = test_at(g, index);
    forced(fp, t.tester.0, t.testee.0, index / 2)
}

fn check_test(g: &Graph, test: &Test) -> Result<usize> {
    let idx = test_index(g, test.tester, test.testee).ok_or(Error::UnknownTest {
        tester: test.tester,
        testee: test.testee,
    })?;
    if g.edges()[idx / 2] != test.edge {
        return Err(Error::UnknownTest {
            tester: test.tester,
            testee: test.testee,
        });
    }
    Ok(idx)
}

/// The outcome `fp` forces on `test`.
pub fn forced_outcome(g: &Graph, test: &Test, fp: &FaultPair) -> Result<ForcedOutcome> {
    fp.check_graph(g)?;
    let idx = check_test(g, test)?;
    Ok(forced_at(g, fp, idx))
}

/// One complete assignment of outcomes to every test of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syndrome {
    graph: u64,
    results: Vec<Outcome>,
}

impl Syndrome {
    pub fn from_fn(g: &Graph, mut f: impl FnMut(&Test) -> Outcome) -> Self {
        Syndrome {
            graph: g.fingerprint(),
            results: enumerate_tests(g).iter().map(&mut f).collect(),
        }
    }

    pub fn all_pass(g: &Graph) -> Self {
        Self::from_fn(g, |_| Outcome::Pass)
    }

    /// Builds a syndrome from `(tester, testee, outcome)` triples, which
    /// must cover every test exactly once.
    pub fn from_triples<I>(g: &Graph, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Outcome)>,
    {
        let mut results: Vec<Option<Outcome>> = vec![None; 2 * g.edge_count()];
        for (tester, testee, outcome) in triples {
            let idx = test_index(g, tester, testee).ok_or(Error::UnknownTest { tester, testee })?;
            if results[idx].replace(outcome).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "test ({tester} -> {testee}) listed twice"
                )));
            }
        }
        let results = results
            .into_iter()
            .enumerate()
            .map(|(idx, r)| {
                r.ok_or_else(|| {
                    let t = test_at(g, idx);
                    Error::IncompleteSyndrome {
                        tester: t.tester,
                        testee: t.testee,
                    }
                })
            })
            .collect::<Result<_>>()?;
        Ok(Syndrome {
            graph: g.fingerprint(),
            results,
        })
    }

    /// `(tester, testee, outcome)` in test order.
    pub fn triples(&self, g: &Graph) -> Result<Vec<(VertexId, VertexId, Outcome)>> {
        self.check_graph(g)?;
        Ok(self
            .results
            .iter()
            .enumerate()
            .map(|(idx, &r)| {
                let t = test_at(g, idx);
                (t.tester, t.testee, r)
            })
            .collect())
    }

    pub fn outcome(&self, g: &Graph, tester: VertexId, testee: VertexId) -> Option<Outcome> {
        if self.graph != g.fingerprint() {
            return None;
        }
        test_index(g, tester, testee).map(|i| self.results[i])
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.results
    }

    pub fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.graph == g.fingerprint() && self.results.len() == 2 * g.edge_count() {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    pub(crate) fn at(&self, index: usize) -> Outcome {
        self.results[index]
    }
}

/// How faulty testers answer.
#[derive(Debug, Clone, PartialEq)]
pub enum Adversary {
    AllPass,
    AllFail,
    /// One ChaCha8 draw per arbitrary test, in test order.
    Random { seed: u64 },
    /// Outcome per `(tester, testee)`; must cover every arbitrary test.
    Explicit(BTreeMap<(VertexId, VertexId), Outcome>),
    /// Outcomes for the arbitrary tests in test order.
    Ordered(Vec<Outcome>),
}

/// Indices (into [`enumerate_tests`]) of the tests whose tester is faulty.
pub fn arbitrary_tests(g: &Graph, fp: &FaultPair) -> Result<Vec<usize>> {
    fp.check_graph(g)?;
    Ok((0..2 * g.edge_count())
        .filter(|&i| forced_at(g, fp, i) == ForcedOutcome::Arbitrary)
        .collect())
}

/// A syndrome that `fp` can produce, with arbitrary tests answered by
/// `adversary`.
pub fn generate_syndrome(g: &Graph, fp: &FaultPair, adversary: &Adversary) -> Result<Syndrome> {
    fp.check_graph(g)?;
    let mut rng = match adversary {
        Adversary::Random { seed } => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let mut ordered = 0usize;
    let mut results = Vec::with_capacity(2 * g.edge_count());
    for idx in 0..2 * g.edge_count() {
        let outcome = match forced_at(g, fp, idx) {
            ForcedOutcome::ForcedPass => Outcome::Pass,
            ForcedOutcome::ForcedFail => Outcome::Fail,
            ForcedOutcome::Arbitrary => match adversary {
                Adversary::AllPass => Outcome::Pass,
                Adversary::AllFail => Outcome::Fail,
                Adversary::Random { .. } => {
                    let rng = rng.as_mut().expect("seeded above");
                    if rng.gen::<bool>() {
                        Outcome::Fail
                    } else {
                        Outcome::Pass
                    }
                }
                Adversary::Explicit(map) => {
                    let t = test_at(g, idx);
                    *map.get(&(t.tester, t.testee)).ok_or(Error::MissingAssignment {
                        tester: t.tester,
                        testee: t.testee,
                    })?
                }
                Adversary::Ordered(seq) => {
                    let t = test_at(g, idx);
                    let o = *seq.get(ordered).ok_or(Error::MissingAssignment {
                        tester: t.tester,
                        testee: t.testee,
                    })?;
                    ordered += 1;
                    o
                }
            },
        };
        results.push(outcome);
    }
    if let Adversary::Ordered(seq) = adversary {
        if seq.len() != ordered {
            return Err(Error::InvalidParameter(format!(
                "{} outcomes given for {ordered} arbitrary tests",
                seq.len()
            )));
        }
    }
    Ok(Syndrome {
        graph: g.fingerprint(),
        results,
    })
}

/// Whether `sig ∈ σ(F, S)`.
pub fn is_consistent(g: &Graph, sig: &Syndrome, fp: &FaultPair) -> Result<bool> {
    fp.check_graph(g)?;
    sig.check_graph(g)?;
    Ok((0..sig.results.len()).all(|i| forced_at(g, fp, i).admits(sig.results[i])))
}

/// Every consistent fault pair with `|F| ≤ t` and `|S| ≤ s` that explains
/// `sig`, sorted by `(|F|, F, |S|, S)`.
///
/// Given F the faulty edge set is determined: an edge with both ends
/// fault-free is faulty iff both of its tests fail. So the search runs
/// over vertex sets only, propagating two rules as it goes:
///
/// * if `u` passes `v`, then `v` faulty implies `u` faulty (a fault-free
///   tester never passes a faulty testee);
/// * if `u` passes `v` but `v` fails `u`, then `u` is faulty.
pub fn enumerate_consistent_pairs(
    g: &Graph,
    sig: &Syndrome,
    t: usize,
    s: usize,
) -> Result<Vec<FaultPair>> {
    sig.check_graph(g)?;
    let n = g.vertex_count();
    let mut pass_pred = vec![Vec::new(); n];
    let mut pass_succ = vec![Vec::new(); n];
    let mut forced_in = Vec::new();
    let mut fail_fail = Vec::new();
    for (k, e) in g.edges().iter().enumerate() {
        let (a, b) = e.endpoints();
        let (ab, ba) = (sig.at(2 * k), sig.at(2 * k + 1));
        if ab == Outcome::Pass {
            pass_succ[a.0].push(b.0);
            pass_pred[b.0].push(a.0);
        }
        if ba == Outcome::Pass {
            pass_succ[b.0].push(a.0);
            pass_pred[a.0].push(b.0);
        }
        match (ab, ba) {
            (Outcome::Pass, Outcome::Fail) => forced_in.push(a.0),
            (Outcome::Fail, Outcome::Pass) => forced_in.push(b.0),
            (Outcome::Fail, Outcome::Fail) => fail_fail.push(k),
            (Outcome::Pass, Outcome::Pass) => {}
        }
    }

    let search = ClosureSearch {
        g,
        pass_pred,
        pass_succ,
        fail_fail,
        t,
        s,
    };
    let mut state = Assignment {
        marks: vec![Mark::Unknown; n],
        faulty: 0,
    };
    let mut found = Vec::new();
    if forced_in.iter().all(|&v| search.set_faulty(&mut state, v)) {
        search.branch(state, &mut found);
    }
    found.sort();
    debug_assert!(found.iter().all(|fp| is_consistent(g, sig, fp).unwrap_or(false)));
    Ok(found)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mark {
    Unknown,
    Faulty,
    Good,
}

#[derive(Clone)]
struct Assignment {
    marks: Vec<Mark>,
    faulty: usize,
}

struct ClosureSearch<'a> {
    g: &'a Graph,
    pass_pred: Vec<Vec<usize>>,
    pass_succ: Vec<Vec<usize>>,
    fail_fail: Vec<usize>,
    t: usize,
    s: usize,
}

impl ClosureSearch<'_> {
    fn set_faulty(&self, st: &mut Assignment, v: usize) -> bool {
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            match st.marks[x] {
                Mark::Good => return false,
                Mark::Faulty => continue,
                Mark::Unknown => {
                    st.marks[x] = Mark::Faulty;
                    st.faulty += 1;
                    if st.faulty > self.t {
                        return false;
                    }
                    stack.extend(&self.pass_pred[x]);
                }
            }
        }
        true
    }

    fn set_good(&self, st: &mut Assignment, v: usize) -> bool {
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            match st.marks[x] {
                Mark::Faulty => return false,
                Mark::Good => continue,
                Mark::Unknown => {
                    st.marks[x] = Mark::Good;
                    stack.extend(&self.pass_succ[x]);
                }
            }
        }
        true
    }

    fn faulty_edges_between_good(&self, st: &Assignment) -> usize {
        self.fail_fail
            .iter()
            .filter(|&&k| {
                let (a, b) = self.g.edges()[k].endpoints();
                st.marks[a.0] == Mark::Good && st.marks[b.0] == Mark::Good
            })
            .count()
    }

    fn branch(&self, mut st: Assignment, found: &mut Vec<FaultPair>) {
        if self.faulty_edges_between_good(&st) > self.s {
            return;
        }
        if st.faulty == self.t {
            for v in 0..st.marks.len() {
                if st.marks[v] == Mark::Unknown && !self.set_good(&mut st, v) {
                    return;
                }
            }
        }
        let Some(next) = st.marks.iter().position(|&m| m == Mark::Unknown) else {
            if self.faulty_edges_between_good(&st) <= self.s {
                found.push(self.emit(&st));
            }
            return;
        };
        let mut with = st.clone();
        if self.set_faulty(&mut with, next) {
            self.branch(with, found);
        }
        if self.set_good(&mut st, next) {
            self.branch(st, found);
        }
    }

    fn emit(&self, st: &Assignment) -> FaultPair {
        let mut vm = FixedBitSet::with_capacity(self.g.vertex_count());
        for (v, m) in st.marks.iter().enumerate() {
            if *m == Mark::Faulty {
                vm.insert(v);
            }
        }
        let mut em = FixedBitSet::with_capacity(self.g.edge_count());
        for &k in &self.fail_fail {
            let (a, b) = self.g.edges()[k].endpoints();
            if st.marks[a.0] == Mark::Good && st.marks[b.0] == Mark::Good {
                em.insert(k);
            }
        }
        FaultPair::from_masks(self.g, vm, em)
    }
}
