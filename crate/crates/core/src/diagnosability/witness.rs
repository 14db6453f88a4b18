//! Explicit indistinguishable pairs that cap the restricted
//! diagnosabilities from above.

use crate::error::{Error, Result};
use crate::fault::{make_fault_pair, FaultPair};
use crate::graph::{Edge, Graph, VertexId};

/// Around a vertex `u` with neighbours `w_1 < … < w_d` (by id) and
/// `e_i = u w_i`:
///
/// * `F_1 = {u, w_{h+1}, …, w_d}`, `S_1 = ∅`
/// * `F_2 = {w_{h+1}, …, w_d}`, `S_2 = {e_1, …, e_h}`
///
/// Every test of `u` by a good neighbour fails in both, and every other
/// vertex of `F_1 Δ F_2` is absent, so the pairs are indistinguishable.
/// With `d(u) = δ(G)` this shows `G` is not `(δ − h + 1, h)`-diagnosable.
pub fn construct_indistinguishable_witness(
    g: &Graph,
    u: VertexId,
    h: usize,
) -> Result<(FaultPair, FaultPair)> {
    let nbrs = g.neighbors(u)?;
    if h > nbrs.len() {
        return Err(Error::DegreeRequirement {
            vertex: u,
            degree: nbrs.len(),
            required: format!("at least h = {h}"),
        });
    }
    let (head, tail) = nbrs.split_at(h);
    let p1 = make_fault_pair(g, tail.iter().copied().chain([u]), [])?;
    let p2 = make_fault_pair(
        g,
        tail.iter().copied(),
        head.iter().map(|&w| Edge::new(u, w).expect("neighbours are distinct")),
    )?;
    Ok((p1, p2))
}

/// For an edge `uv` with `d(u) = δ(G)`:
///
/// * `F_1 = {u}`, `S_1 = NE(v) ∖ {uv}`
/// * `F_2 = {v}`, `S_2 = NE(u) ∖ {uv}`
///
/// Each faulty vertex is reached by good testers only through edges that
/// are faulty in the other pair, so no test separates them. `u` is taken to
/// be the lower endpoint when both have minimum degree.
pub fn construct_edge_witness(g: &Graph, e: Edge) -> Result<(FaultPair, FaultPair)> {
    let (a, b) = e.endpoints();
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if g.edge_index(e).is_none() {
        return Err(Error::UnknownEdge(e));
    }
    let delta = g.min_degree()?;
    let (u, v) = if g.degree(a)? == delta {
        (a, b)
    } else if g.degree(b)? == delta {
        (b, a)
    } else {
        return Err(Error::DegreeRequirement {
            vertex: a,
            degree: g.degree(a)?,
            required: format!("an endpoint of {e} with minimum degree {delta}"),
        });
    };
    let others = |x: VertexId| -> Result<Vec<Edge>> {
        Ok(g.incident_edges(x)?.into_iter().filter(|&f| f != e).collect())
    };
    let p1 = make_fault_pair(g, [u], others(v)?)?;
    let p2 = make_fault_pair(g, [v], others(u)?)?;
    Ok((p1, p2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distinguish::{distinguishable_lemma1, distinguishable_oracle};
    use crate::hypercube::build_hypercube;
    use crate::topology::{complete, path};

    fn lv(g: &Graph, l: &str) -> VertexId {
        g.vertex_by_label(l).unwrap()
    }

    #[test]
    fn q3_h1_matches_the_hand_construction() {
        let g = build_hypercube(3).unwrap();
        let (p1, p2) = construct_indistinguishable_witness(&g, lv(&g, "000"), 1).unwrap();
        let expect1 = make_fault_pair(&g, [lv(&g, "000"), lv(&g, "010"), lv(&g, "100")], []).unwrap();
        let expect2 = make_fault_pair(
            &g,
            [lv(&g, "010"), lv(&g, "100")],
            [Edge::new(lv(&g, "000"), lv(&g, "001")).unwrap()],
        )
        .unwrap();
        assert_eq!(p1, expect1);
        assert_eq!(p2, expect2);
        assert!(!distinguishable_lemma1(&g, &p1, &p2).unwrap().distinguishable);
    }

    #[test]
    fn q2_full_restriction() {
        let g = build_hypercube(2).unwrap();
        let (p1, p2) = construct_indistinguishable_witness(&g, VertexId(0), 2).unwrap();
        assert_eq!(p1.faulty_vertices(), &[VertexId(0)]);
        assert!(p1.faulty_edges().is_empty());
        assert!(p2.faulty_vertices().is_empty());
        assert_eq!(p2.faulty_edges(), g.incident_edges(VertexId(0)).unwrap());
        assert!(!distinguishable_oracle(&g, &p1, &p2).unwrap());
        assert!(construct_indistinguishable_witness(&g, VertexId(0), 3).is_err());
    }

    #[test]
    fn q3_edge_witness() {
        let g = build_hypercube(3).unwrap();
        let e = Edge::new(lv(&g, "000"), lv(&g, "001")).unwrap();
        let (p1, p2) = construct_edge_witness(&g, e).unwrap();
        assert_eq!(p1.faulty_vertices(), &[lv(&g, "000")]);
        assert_eq!(p2.faulty_vertices(), &[lv(&g, "001")]);
        let s2: Vec<String> = p2.faulty_edges().iter().map(|e| e.to_string()).collect();
        assert_eq!(s2, ["0-2", "0-4"]);
        let s1: Vec<String> = p1.faulty_edges().iter().map(|e| e.to_string()).collect();
        assert_eq!(s1, ["1-3", "1-5"]);
        assert!(!distinguishable_lemma1(&g, &p1, &p2).unwrap().distinguishable);
        assert!(!distinguishable_oracle(&g, &p1, &p2).unwrap());
    }

    #[test]
    fn bare_edge_witness_without_s1_is_distinguishable() {
        // ({u}, ∅) vs ({v}, NE(u) ∖ {uv}): a third neighbour of v passes v
        // under the first pair and fails it under the second.
        let g = build_hypercube(3).unwrap();
        let (u, v) = (lv(&g, "000"), lv(&g, "001"));
        let p1 = make_fault_pair(&g, [u], []).unwrap();
        let p2 = make_fault_pair(
            &g,
            [v],
            [Edge::new(u, lv(&g, "010")).unwrap(), Edge::new(u, lv(&g, "100")).unwrap()],
        )
        .unwrap();
        assert!(distinguishable_oracle(&g, &p1, &p2).unwrap());
    }

    #[test]
    fn edge_witness_degree_requirement() {
        // In a path 0-1-2-3, δ = 1 and edge 1-2 has no endpoint of degree 1.
        let g = path(4).unwrap();
        assert!(matches!(
            construct_edge_witness(&g, Edge::new(1, 2).unwrap()),
            Err(Error::DegreeRequirement { .. })
        ));
        let k4 = complete(4).unwrap();
        let (p1, p2) = construct_edge_witness(&k4, Edge::new(0, 1).unwrap()).unwrap();
        assert_eq!(p2.faulty_edges().len(), 2);
        assert!(!distinguishable_oracle(&k4, &p1, &p2).unwrap());
    }
}
