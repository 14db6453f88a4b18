//! Turning flags and files into library values.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use gpmc::topology::{build_named_topology, parse_edge_list};
use gpmc::{
    make_fault_pair, random_fault_pair, Adversary, Edge, FaultPair, Graph, Outcome, Syndrome,
    VertexId,
};

use crate::args::{AdversaryArg, FaultArgs, GraphArgs};
use crate::CliError;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// The graph and its `config.topology` description.
pub fn graph(args: &GraphArgs) -> Result<(Graph, Value), CliError> {
    let sources = usize::from(!args.spec.is_empty())
        + usize::from(args.topology.is_some())
        + usize::from(args.edge_list.is_some());
    if sources != 1 {
        return Err(input(
            "give exactly one topology: positional words, --topology or --edge-list",
        ));
    }
    if let Some(path) = &args.edge_list {
        let g = read_edge_list(path)?;
        return Ok((g, json!({ "kind": "custom", "edge_list": path.display().to_string() })));
    }
    let g = if let Some(kind) = &args.topology {
        let n = args
            .n
            .ok_or_else(|| input(format!("--topology {kind} needs --n")))?
            .to_string();
        if kind == "random" {
            let p = args.p.ok_or_else(|| input("--topology random needs --p"))?;
            let seed = args
                .graph_seed
                .ok_or_else(|| input("--topology random needs an explicit --graph-seed"))?;
            build_named_topology(kind, &[&n, &p.to_string(), &seed.to_string()])?
        } else {
            build_named_topology(kind, &[&n])?
        }
    } else {
        let words: Vec<&str> = args.spec[1..].iter().map(String::as_str).collect();
        build_named_topology(&args.spec[0], &words)?
    };
    let desc = serde_json::to_value(g.topology())?;
    Ok((g, desc))
}

pub fn read_edge_list(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    parse_edge_list(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

/// Rebuilds a graph from a `config.topology` description.
pub fn graph_from_config(desc: &Value) -> Result<Graph, CliError> {
    if let Some(path) = desc.get("edge_list").and_then(Value::as_str) {
        return read_edge_list(Path::new(path));
    }
    let topology: gpmc::Topology = serde_json::from_value(desc.clone())?;
    Ok(topology.build()?)
}

fn parse_id(token: &str) -> Result<VertexId, CliError> {
    token
        .trim()
        .parse()
        .map(VertexId)
        .map_err(|_| input(format!("bad vertex id {token:?}")))
}

pub fn parse_vertices(list: &str) -> Result<Vec<VertexId>, CliError> {
    list.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_id)
        .collect()
}

pub fn parse_edges(list: &str) -> Result<Vec<Edge>, CliError> {
    list.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|token| {
            let (u, v) = token
                .split_once('-')
                .ok_or_else(|| input(format!("bad edge {token:?}, expected u-v")))?;
            Ok(Edge::new(parse_id(u)?, parse_id(v)?)?)
        })
        .collect()
}

/// The injected pair and its `config.faults` description.
pub fn fault_pair(g: &Graph, args: &FaultArgs) -> Result<(FaultPair, Value), CliError> {
    if args.random_vertices.is_some() || args.random_edges.is_some() {
        let (k, m) = (args.random_vertices.unwrap_or(0), args.random_edges.unwrap_or(0));
        let fp = random_fault_pair(g, k, m, args.fault_seed)?;
        let desc = json!({ "random": { "vertices": k, "edges": m, "seed": args.fault_seed } });
        return Ok((fp, desc));
    }
    let vertices = parse_vertices(args.faulty_vertices.as_deref().unwrap_or(""))?;
    let edges = parse_edges(args.faulty_edges.as_deref().unwrap_or(""))?;
    let fp = make_fault_pair(g, vertices, edges)?;
    let desc = serde_json::to_value(&fp)?;
    Ok((fp, desc))
}

/// The adversary and its `config.adversary` description.
pub fn adversary(args: &FaultArgs) -> (Adversary, Value) {
    match args.adversary {
        AdversaryArg::AllPass => (Adversary::AllPass, json!({ "kind": "all_pass" })),
        AdversaryArg::AllFail => (Adversary::AllFail, json!({ "kind": "all_fail" })),
        AdversaryArg::Random => (
            Adversary::Random { seed: args.seed },
            json!({ "kind": "random", "seed": args.seed }),
        ),
    }
}

/// `[[tester, testee, outcome], ...]` in test order.
pub fn syndrome_json(g: &Graph, sig: &Syndrome) -> Result<Value, CliError> {
    let triples: Vec<(usize, usize, Outcome)> = sig
        .triples(g)?
        .into_iter()
        .map(|(u, v, o)| (u.0, v.0, o))
        .collect();
    Ok(serde_json::to_value(triples)?)
}

pub fn syndrome_from_json(g: &Graph, value: &Value) -> Result<Syndrome, CliError> {
    let triples: Vec<(usize, usize, Outcome)> = serde_json::from_value(value.clone())?;
    Ok(Syndrome::from_triples(
        g,
        triples.into_iter().map(|(u, v, o)| (VertexId(u), VertexId(v), o)),
    )?)
}

/// Reads a syndrome file: a bare triple array or an `inject` report.
pub fn read_syndrome(g: &Graph, path: &Path) -> Result<Syndrome, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| input(format!("{}: {e}", path.display())))?;
    let triples = match value.pointer("/result/syndrome") {
        Some(inner) => inner,
        None => &value,
    };
    syndrome_from_json(g, triples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fault_lists() {
        assert_eq!(parse_vertices("0, 3").unwrap(), vec![VertexId(0), VertexId(3)]);
        assert!(parse_vertices("").unwrap().is_empty());
        assert!(parse_vertices("a").is_err());
        let es = parse_edges("3-7,1-0").unwrap();
        assert_eq!(es, vec![Edge::new(3, 7).unwrap(), Edge::new(0, 1).unwrap()]);
        assert!(parse_edges("3:7").is_err());
        assert!(parse_edges("2-2").is_err());
    }

    #[test]
    fn exactly_one_topology_source() {
        let mut args = GraphArgs {
            spec: vec!["hypercube".into(), "3".into()],
            topology: None,
            n: None,
            p: None,
            graph_seed: None,
            edge_list: None,
        };
        let (g, desc) = graph(&args).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(desc, json!({ "kind": "hypercube", "dimension": 3 }));
        args.topology = Some("cycle".into());
        args.n = Some(4);
        assert!(graph(&args).is_err());
        args.spec.clear();
        assert_eq!(graph(&args).unwrap().0.edge_count(), 4);
        args.topology = Some("random".into());
        args.p = Some(0.5);
        assert!(graph(&args).is_err(), "random graphs need an explicit seed");
    }
}
