//! Test topologies, the edge-list text format and DOT export.

use std::fmt;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypercube::build_hypercube;

/// Describes how a graph was built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Topology {
    Hypercube { dimension: usize },
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Random { n: usize, p: f64, seed: u64 },
    RandomConnected { n: usize, p: f64, seed: u64, min_degree: usize },
    Custom,
}

impl Topology {
    pub fn is_hypercube(&self) -> bool {
        matches!(self, Topology::Hypercube { .. })
    }

    /// Rebuilds the described graph. `Custom` graphs carry no recipe.
    pub fn build(&self) -> Result<Graph> {
        match *self {
            Topology::Hypercube { dimension } => build_hypercube(dimension),
            Topology::Path { n } => path(n),
            Topology::Cycle { n } => cycle(n),
            Topology::Complete { n } => complete(n),
            Topology::Random { n, p, seed } => random(n, p, seed),
            Topology::RandomConnected {
                n,
                p,
                seed,
                min_degree,
            } => random_connected(n, p, seed, min_degree),
            Topology::Custom => Err(Error::InvalidParameter(
                "a custom topology cannot be rebuilt from its description".into(),
            )),
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Topology::Hypercube { dimension } => write!(f, "Q_{dimension}"),
            Topology::Path { n } => write!(f, "P_{n}"),
            Topology::Cycle { n } => write!(f, "C_{n}"),
            Topology::Complete { n } => write!(f, "K_{n}"),
            Topology::Random { n, p, seed } => write!(f, "G({n},{p},seed={seed})"),
            Topology::RandomConnected {
                n,
                p,
                seed,
                min_degree,
            } => write!(f, "G({n},{p},seed={seed},connected,min_degree>={min_degree})"),
            Topology::Custom => f.write_str("custom"),
        }
    }
}

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("a path needs at least 1 vertex".into()));
    }
    Ok(Graph::new(n, (1..n).map(|i| (i - 1, i)))?.with_topology(Topology::Path { n }))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter("a cycle needs at least 3 vertices".into()));
    }
    Ok(Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))?.with_topology(Topology::Cycle { n }))
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "a complete graph needs at least 1 vertex".into(),
        ));
    }
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Ok(Graph::new(n, edges)?.with_topology(Topology::Complete { n }))
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("edge probability {p} not in [0, 1]")))
    }
}

fn draw_gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Erdős–Rényi G(n, p). Pairs are visited in lexicographic order and each
/// draws one Bernoulli sample from a ChaCha8 stream seeded with `seed`.
pub fn random(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = draw_gnp(n, p, &mut rng);
    Ok(Graph::new(n, edges)?.with_topology(Topology::Random { n, p, seed }))
}

/// Draws G(n, p) repeatedly from one seeded stream until the sample is
/// connected with minimum degree at least `min_degree`.
pub fn random_connected(n: usize, p: f64, seed: u64, min_degree: usize) -> Result<Graph> {
    const ATTEMPTS: usize = 100_000;
    check_probability(p)?;
    if n == 0 || min_degree >= n {
        return Err(Error::InvalidParameter(format!(
            "no graph on {n} vertices has minimum degree {min_degree}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let g = Graph::new(n, draw_gnp(n, p, &mut rng))?;
        if g.is_connected() && g.min_degree()? >= min_degree {
            return Ok(g.with_topology(Topology::RandomConnected {
                n,
                p,
                seed,
                min_degree,
            }));
        }
    }
    Err(Error::InvalidParameter(format!(
        "no connected G({n},{p}) with minimum degree {min_degree} after {ATTEMPTS} draws"
    )))
}

/// Builds a topology from a name and its positional parameters:
/// `hypercube N`, `path N`, `cycle N`, `complete N`, `random N P SEED`.
pub fn build_named_topology(name: &str, params: &[&str]) -> Result<Graph> {
    fn int(s: &str) -> Result<usize> {
        s.parse()
            .map_err(|_| Error::InvalidParameter(format!("expected a non-negative integer, got {s:?}")))
    }
    let arity = |k: usize| -> Result<()> {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "topology {name} takes {k} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match name {
        "hypercube" => {
            arity(1)?;
            build_hypercube(int(params[0])?)
        }
        "path" => {
            arity(1)?;
            path(int(params[0])?)
        }
        "cycle" => {
            arity(1)?;
            cycle(int(params[0])?)
        }
        "complete" => {
            arity(1)?;
            complete(int(params[0])?)
        }
        "random" => {
            arity(3)?;
            let p = params[1]
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad probability {:?}", params[1])))?;
            let seed = params[2]
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad seed {:?}", params[2])))?;
            random(int(params[0])?, p, seed)
        }
        other => Err(Error::UnknownTopology(other.to_owned())),
    }
}

/// Parses the edge-list format: a header line `n m`, then `m` lines `u v`
/// with 0-based ids. Blank lines and lines starting with `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut last_line = 0;
    let mut seen = std::collections::HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line, message };
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(format!("expected two fields, found {}", fields.len())));
        }
        let nums = fields
            .iter()
            .map(|f| f.parse::<usize>().map_err(|_| parse_err(format!("{f:?} is not a non-negative integer"))))
            .collect::<Result<Vec<_>>>()?;
        let (a, b) = (nums[0], nums[1]);
        match header {
            None => header = Some((a, b)),
            Some((n, m)) => {
                if edges.len() == m {
                    return Err(parse_err(format!("more than the declared {m} edges")));
                }
                if a >= n || b >= n {
                    return Err(parse_err(format!("vertex id out of range for {n} vertices")));
                }
                if a == b {
                    return Err(parse_err(format!("self-loop at {a}")));
                }
                if !seen.insert((a.min(b), a.max(b))) {
                    return Err(parse_err(format!("duplicate edge {a} {b}")));
                }
                edges.push((a, b));
            }
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: last_line.max(1),
        message: "missing header line \"n m\"".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: last_line.max(1),
            message: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, edges)
}

/// Writes `g` in the edge-list format accepted by [`parse_edge_list`].
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let (u, v) = e.endpoints();
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Undirected DOT with vertex labels.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for u in g.vertices() {
        let _ = writeln!(out, "  {} [label=\"{}\"];", u, g.display_name(u));
    }
    for e in g.edges() {
        let (u, v) = e.endpoints();
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
