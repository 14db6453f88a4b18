//! The n-dimensional hypercube Q_n.
//!
//! Vertex `i` carries the label formed by the n-bit binary expansion of
//! `i`, most significant bit first. Bit positions are numbered from 1 at
//! the left of the label, so position `p` of a label corresponds to bit
//! `n - p` of the vertex id. Every conversion between the two goes through
//! [`position_bit`].

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::topology::Topology;

/// Largest supported dimension (2^20 vertices).
pub const MAX_DIMENSION: usize = 20;

/// Integer bit flipped by label position `position` (1-based, from the
/// left) in a hypercube of dimension `dimension`.
pub fn position_bit(dimension: usize, position: usize) -> Result<usize> {
    if position == 0 || position > dimension {
        return Err(Error::PositionOutOfRange {
            position,
            dimension,
        });
    }
    Ok(dimension - position)
}

/// Builds Q_n: `2^n` vertices, adjacent iff their labels differ in one bit.
pub fn build_hypercube(n: usize) -> Result<Graph> {
    if n == 0 || n > MAX_DIMENSION {
        return Err(Error::InvalidDimension {
            n,
            cap: MAX_DIMENSION,
        });
    }
    let order = 1usize << n;
    let edges = (0..order).flat_map(|u| {
        (0..n)
            .map(move |b| (u, u ^ (1 << b)))
            .filter(|&(u, v)| u < v)
    });
    let labels = (0..order).map(|u| label(u, n)).collect();
    Ok(Graph::new(order, edges)?
        .with_labels(labels)
        .with_topology(Topology::Hypercube { dimension: n }))
}

/// The label of vertex `u` in Q_n.
pub fn label(u: usize, n: usize) -> String {
    format!("{u:0n$b}")
}

/// Parses a hypercube label back into a vertex id.
pub fn parse_label(label: &str) -> Result<VertexId> {
    if label.is_empty() || label.len() > MAX_DIMENSION || !label.bytes().all(|b| b == b'0' || b == b'1')
    {
        return Err(Error::InvalidLabel(label.to_owned()));
    }
    let id = usize::from_str_radix(label, 2).map_err(|_| Error::InvalidLabel(label.to_owned()))?;
    Ok(VertexId(id))
}

/// u^i: the label obtained by complementing position `i` (1-based, from
/// the left).
///
/// ```
/// use gpmc::hypercube::hypercube_neighbor;
/// assert_eq!(hypercube_neighbor("000", 1).unwrap(), "100");
/// assert_eq!(hypercube_neighbor("0101", 4).unwrap(), "0100");
/// ```
pub fn hypercube_neighbor(u_label: &str, i: usize) -> Result<String> {
    let n = u_label.len();
    let u = parse_label(u_label)?;
    let bit = position_bit(n, i)?;
    Ok(label(u.0 ^ (1 << bit), n))
}

/// u^i on vertex ids of Q_n.
pub fn neighbor_id(u: VertexId, n: usize, i: usize) -> Result<VertexId> {
    let bit = position_bit(n, i)?;
    if u.0 >> n != 0 {
        return Err(Error::InvalidVertex {
            vertex: u,
            vertex_count: 1 << n,
        });
    }
    Ok(VertexId(u.0 ^ (1 << bit)))
}
