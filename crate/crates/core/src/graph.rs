//! Simple undirected graphs with dense vertex ids.
//!
//! A [`Graph`] is immutable once built. Vertices are `0..vertex_count`,
//! edges are stored once in canonical `(min, max)` form and sorted, so an
//! edge's position in [`Graph::edges`] is a stable edge index.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::Topology;

/// Index of a vertex in its graph.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(index: usize) -> Self {
        VertexId(index)
    }
}

/// An unordered pair of distinct vertices, kept as `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: VertexId,
    hi: VertexId,
}

impl Edge {
    /// Builds the canonical form of `uv`. Fails on a self-loop.
    pub fn new(u: impl Into<VertexId>, v: impl Into<VertexId>) -> Result<Self> {
        let (u, v) = (u.into(), v.into());
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(Edge {
            lo: u.min(v),
            hi: u.max(v),
        })
    }

    pub fn endpoints(self) -> (VertexId, VertexId) {
        (self.lo, self.hi)
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint that is not `v`, if `v` is an endpoint.
    pub fn other(self, v: VertexId) -> Option<VertexId> {
        if v == self.lo {
            Some(self.hi)
        } else if v == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.lo.0, self.hi.0].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [u, v] = <[usize; 2]>::deserialize(deserializer)?;
        Edge::new(u, v).map_err(serde::de::Error::custom)
    }
}

/// A simple undirected graph.
#[derive(Debug, Clone)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    // adjacency[u] is sorted by neighbour id; incident[u][k] is the edge
    // index joining u and adjacency[u][k].
    adjacency: Vec<Vec<VertexId>>,
    incident: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    topology: Topology,
    fingerprint: u64,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn new<I, E>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<(usize, usize)>,
    {
        let mut list = Vec::new();
        for pair in edges {
            let (u, v) = pair.into();
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::InvalidVertex {
                        vertex: VertexId(w),
                        vertex_count,
                    });
                }
            }
            list.push(Edge::new(u, v)?);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0]));
        }

        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut incident = vec![Vec::new(); vertex_count];
        for (idx, e) in list.iter().enumerate() {
            let (a, b) = e.endpoints();
            adjacency[a.0].push((b, idx));
            adjacency[b.0].push((a, idx));
        }
        let (adjacency, incident) = {
            let mut adj_out = Vec::with_capacity(vertex_count);
            for (u, mut nbrs) in adjacency.into_iter().enumerate() {
                nbrs.sort_unstable();
                incident[u] = nbrs.iter().map(|&(_, idx)| idx).collect();
                adj_out.push(nbrs.into_iter().map(|(v, _)| v).collect());
            }
            (adj_out, incident)
        };

        let fingerprint = fingerprint(vertex_count, &list);
        Ok(Graph {
            vertex_count,
            edges: list,
            adjacency,
            incident,
            labels: None,
            topology: Topology::Custom,
            fingerprint,
        })
    }

    pub(crate) fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.vertex_count);
        self.labels = Some(labels);
        self
    }

    pub(crate) fn with_topology(mut self, topology: Topology) -> Self {
        self.topology = topology;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count).map(VertexId)
    }

    /// All edges in canonical sorted order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// How this graph was produced.
    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn label(&self, u: VertexId) -> Option<&str> {
        self.labels
            .as_ref()
            .and_then(|labels| labels.get(u.0))
            .map(String::as_str)
    }

    /// The label of `u`, falling back to its decimal id.
    pub fn display_name(&self, u: VertexId) -> String {
        self.label(u)
            .map(str::to_owned)
            .unwrap_or_else(|| u.to_string())
    }

    /// Finds the vertex carrying `label`.
    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels
            .as_ref()?
            .iter()
            .position(|l| l == label)
            .map(VertexId)
    }

    /// A hash of the vertex count and edge set, used to detect values
    /// that were built against a different graph.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn check_vertex(&self, u: VertexId) -> Result<()> {
        if u.0 < self.vertex_count {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: u,
                vertex_count: self.vertex_count,
            })
        }
    }

    /// N(u), sorted by id.
    pub fn neighbors(&self, u: VertexId) -> Result<&[VertexId]> {
        self.check_vertex(u)?;
        Ok(&self.adjacency[u.0])
    }

    /// NE(u), ordered by the neighbour at the other end.
    pub fn incident_edges(&self, u: VertexId) -> Result<Vec<Edge>> {
        self.check_vertex(u)?;
        Ok(self.incident[u.0].iter().map(|&i| self.edges[i]).collect())
    }

    pub fn degree(&self, u: VertexId) -> Result<usize> {
        self.check_vertex(u)?;
        Ok(self.adjacency[u.0].len())
    }

    /// δ(G).
    pub fn min_degree(&self) -> Result<usize> {
        self.adjacency
            .iter()
            .map(Vec::len)
            .min()
            .ok_or(Error::EmptyGraph)
    }

    pub fn max_degree(&self) -> Result<usize> {
        self.adjacency
            .iter()
            .map(Vec::len)
            .max()
            .ok_or(Error::EmptyGraph)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_between(u, v).is_some()
    }

    /// Index of the edge `uv` in [`Graph::edges`].
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub(crate) fn edge_between(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let nbrs = self.adjacency.get(u.0)?;
        nbrs.binary_search(&v).ok().map(|k| self.incident[u.0][k])
    }

    /// Unchecked adjacency access for hot loops.
    pub(crate) fn adj(&self, u: usize) -> &[VertexId] {
        &self.adjacency[u]
    }

    pub(crate) fn inc(&self, u: usize) -> &[usize] {
        &self.incident[u]
    }

    /// N(u) ∩ N(v). Fails if `u == v`.
    pub fn common_neighbors(&self, u: VertexId, v: VertexId) -> Result<Vec<VertexId>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        let (a, b) = (&self.adjacency[u.0], &self.adjacency[v.0]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(out)
    }

    /// Length of a shortest cycle, or `None` for a forest.
    ///
    /// Runs a BFS from every vertex; any non-tree edge `xy` met while
    /// exploring from `r` closes a walk of length `d(x) + d(y) + 1` through
    /// `r`, and the minimum over all roots is exactly the girth.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count;
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[x] + 1 >= b {
                        break;
                    }
                }
                for &VertexId(y) in &self.adjacency[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &VertexId(y) in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.vertex_count
    }
}

// FNV-1a; stable across runs and platforms.
fn fingerprint(vertex_count: usize, edges: &[Edge]) -> u64 {
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |x: u64| {
        for byte in x.to_le_bytes() {
            h ^= u64::from(byte);
            h = h.wrapping_mul(PRIME);
        }
    };
    feed(vertex_count as u64);
    for e in edges {
        feed(e.lo.0 as u64);
        feed(e.hi.0 as u64);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::build_hypercube;
    use crate::topology::{complete, cycle, path};

    fn ids(v: &[usize]) -> Vec<VertexId> {
        v.iter().copied().map(VertexId).collect()
    }

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(
            Graph::new(3, [(0, 0)]).unwrap_err(),
            Error::SelfLoop(VertexId(0))
        );
        assert!(matches!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(Error::InvalidVertex { .. })
        ));
    }

    #[test]
    fn neighbors_of_cycle_and_isolated_vertex() {
        let c4 = cycle(4).unwrap();
        assert_eq!(c4.neighbors(VertexId(0)).unwrap(), ids(&[1, 3]));
        let single = Graph::new(1, Vec::<(usize, usize)>::new()).unwrap();
        assert!(single.neighbors(VertexId(0)).unwrap().is_empty());
        assert!(single.incident_edges(VertexId(0)).unwrap().is_empty());
        assert!(c4.neighbors(VertexId(4)).is_err());
    }

    #[test]
    fn hypercube_neighbors_and_incident_edges() {
        let q3 = build_hypercube(3).unwrap();
        assert_eq!(q3.neighbors(VertexId(0)).unwrap(), ids(&[1, 2, 4]));
        let q2 = build_hypercube(2).unwrap();
        assert_eq!(
            q2.incident_edges(VertexId(0)).unwrap(),
            vec![Edge::new(0, 1).unwrap(), Edge::new(0, 2).unwrap()]
        );
        for u in q3.vertices() {
            assert_eq!(q3.incident_edges(u).unwrap().len(), 3);
        }
    }

    #[test]
    fn min_degree() {
        assert_eq!(build_hypercube(4).unwrap().min_degree(), Ok(4));
        assert_eq!(path(3).unwrap().min_degree(), Ok(1));
        assert_eq!(complete(5).unwrap().min_degree(), Ok(4));
        let empty = Graph::new(0, Vec::<(usize, usize)>::new()).unwrap();
        assert_eq!(empty.min_degree(), Err(Error::EmptyGraph));
    }

    #[test]
    fn girth_of_small_graphs() {
        assert_eq!(build_hypercube(3).unwrap().girth(), Some(4));
        assert_eq!(build_hypercube(1).unwrap().girth(), None);
        assert_eq!(path(5).unwrap().girth(), None);
        assert_eq!(cycle(5).unwrap().girth(), Some(5));
        assert_eq!(complete(4).unwrap().girth(), Some(3));
        // two triangles joined by a long path
        let g = Graph::new(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4)])
            .unwrap();
        assert_eq!(g.girth(), Some(3));
    }

    #[test]
    fn common_neighbors_in_q3() {
        let q3 = build_hypercube(3).unwrap();
        let v = |s: &str| q3.vertex_by_label(s).unwrap();
        assert_eq!(
            q3.common_neighbors(v("000"), v("011")).unwrap(),
            vec![v("001"), v("010")]
        );
        assert!(q3.common_neighbors(v("000"), v("111")).unwrap().is_empty());
        assert!(q3.common_neighbors(v("000"), v("001")).unwrap().is_empty());
        assert_eq!(
            q3.common_neighbors(v("000"), v("000")),
            Err(Error::SameVertex(v("000")))
        );
    }

    #[test]
    fn edge_indices_follow_canonical_order() {
        let g = Graph::new(4, [(3, 2), (1, 0), (2, 0)]).unwrap();
        let listed: Vec<_> = g.edges().iter().map(|e| e.to_string()).collect();
        assert_eq!(listed, ["0-1", "0-2", "2-3"]);
        assert_eq!(g.edge_index(Edge::new(2, 3).unwrap()), Some(2));
        assert_eq!(g.edge_index(Edge::new(1, 3).unwrap()), None);
    }
}
