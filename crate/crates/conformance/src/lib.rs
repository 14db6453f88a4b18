//! Shared fixtures for the acceptance run.

use gpmc::topology::{complete, cycle, random_connected};
use gpmc::{build_hypercube, make_fault_pair, FaultPair, Graph, Result, VertexId};

/// Q_2, Q_3, C_4, C_6, K_4, K_5 and ten seeded random connected graphs on
/// 6 to 8 vertices with minimum degree 2.
pub fn gallery() -> Result<Vec<Graph>> {
    let mut graphs = vec![
        build_hypercube(2)?,
        build_hypercube(3)?,
        cycle(4)?,
        cycle(6)?,
        complete(4)?,
        complete(5)?,
    ];
    for i in 0..10u64 {
        graphs.push(random_connected(6 + (i as usize) % 3, 0.5, 1000 + i, 2)?);
    }
    Ok(graphs)
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for set in &frontier {
            let start = set.last().map_or(0, |&x: &usize| x + 1);
            for x in start..n {
                let mut grown = set.clone();
                grown.push(x);
                next.push(grown);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Every consistent pair with `|F| ≤ t` and `|S| ≤ s`, listed by choosing
/// `F` and then `S` among the edges that avoid it.
pub fn consistent_pairs(g: &Graph, t: usize, s: usize) -> Result<Vec<FaultPair>> {
    let mut out = Vec::new();
    for f in subsets(g.vertex_count(), t) {
        let free: Vec<_> = g
            .edges()
            .iter()
            .copied()
            .filter(|e| !f.iter().any(|&v| e.contains(VertexId(v))))
            .collect();
        for chosen in subsets(free.len(), s) {
            out.push(make_fault_pair(
                g,
                f.iter().map(|&v| VertexId(v)),
                chosen.iter().map(|&i| free[i]),
            )?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gallery_shape() {
        let g = gallery().unwrap();
        assert_eq!(g.len(), 16);
        for r in &g[6..] {
            assert!(r.vertex_count() <= 8 && r.min_degree().unwrap() >= 2 && r.is_connected());
        }
    }

    #[test]
    fn pair_counts() {
        // C_4: F = ∅ gives 1 + 4 + 6 choices of S; one vertex leaves two
        // free edges (1 + 2 + 1); two adjacent vertices leave one, two
        // opposite ones leave none.
        let c4 = cycle(4).unwrap();
        let count = consistent_pairs(&c4, 2, 2).unwrap().len();
        assert_eq!(count, 11 + 4 * 4 + 4 * 2 + 2);
    }
}
