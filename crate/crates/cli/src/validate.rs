//! Re-checks a parsed report against freshly rebuilt graphs.

use serde_json::Value;

use gpmc::fault::FaultPairRecord;
use gpmc::{
    build_hypercube, distinguishable_lemma1, distinguishable_oracle, is_consistent, FaultPair,
    Graph,
};

use crate::input::{graph_from_config, syndrome_from_json};
use crate::report::{Report, SCHEMA_VERSION};
use crate::CliError;

fn pair(g: &Graph, v: &Value) -> Result<FaultPair, CliError> {
    let record: FaultPairRecord = serde_json::from_value(v.clone())?;
    Ok(FaultPair::from_record(g, &record)?)
}

fn usize_at(v: &Value, key: &str) -> Result<usize, CliError> {
    v[key]
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| CliError::Input(format!("report field {key} missing")))
}

fn check_witness(g: &Graph, witness: &Value, bounds: &Value, problems: &mut Vec<String>) -> Result<(), CliError> {
    if witness.is_null() {
        if !bounds.is_null() {
            problems.push("failing bounds without a witness".into());
        }
        return Ok(());
    }
    let (p1, p2) = (pair(g, &witness[0])?, pair(g, &witness[1])?);
    let (t, s): (usize, usize) = serde_json::from_value(bounds.clone())?;
    if p1 == p2 {
        problems.push(format!("witness {p1} repeats one pair"));
        return Ok(());
    }
    if !p1.within_bounds(t, s) || !p2.within_bounds(t, s) {
        problems.push(format!("witness {p1} vs {p2} exceeds ({t},{s})"));
    }
    if distinguishable_lemma1(g, &p1, &p2)?.distinguishable || distinguishable_oracle(g, &p1, &p2)? {
        problems.push(format!("witness {p1} vs {p2} is distinguishable"));
    }
    Ok(())
}

/// Problems found in `report`; empty when every embedded claim re-checks.
pub fn revalidate(report: &Report) -> Result<Vec<String>, CliError> {
    let mut problems = Vec::new();
    if report.version != SCHEMA_VERSION {
        problems.push(format!("unknown schema version {}", report.version));
    }
    let (config, result) = (&report.config, &report.result);
    match report.command.as_str() {
        "topology" => {
            let g = graph_from_config(&config["topology"])?;
            if usize_at(result, "vertices")? != g.vertex_count() || usize_at(result, "edges")? != g.edge_count() {
                problems.push("vertex or edge count differs from the rebuilt graph".into());
            }
        }
        "inject" => {
            let g = graph_from_config(&config["topology"])?;
            let sig = syndrome_from_json(&g, &result["syndrome"])?;
            if !is_consistent(&g, &sig, &pair(&g, &result["truth"])?)? {
                problems.push("syndrome is not consistent with the injected pair".into());
            }
        }
        "diagnose" => {
            let g = graph_from_config(&config["topology"])?;
            let sig = syndrome_from_json(&g, &result["syndrome"])?;
            let (t, s) = (usize_at(config, "t")?, usize_at(config, "s")?);
            let listed = result["candidates"].as_array().cloned().unwrap_or_default();
            for c in &listed {
                let fp = pair(&g, c)?;
                if !fp.within_bounds(t, s) || !is_consistent(&g, &sig, &fp)? {
                    problems.push(format!("candidate {fp} does not explain the syndrome"));
                }
            }
            if usize_at(result, "candidate_count")? < listed.len() {
                problems.push("more candidates listed than counted".into());
            }
        }
        "diagnosability" => {
            let g = graph_from_config(&config["topology"])?;
            check_witness(&g, &result["witness"], &result["failing_bounds"], &mut problems)?;
        }
        "verify-theorems" => {
            for row in result["rows"].as_array().cloned().unwrap_or_default() {
                let g = build_hypercube(usize_at(&row, "n")?)?;
                check_witness(&g, &row["witness"], &row["failing_bounds"], &mut problems)?;
            }
        }
        other => problems.push(format!("unknown command {other}")),
    }
    Ok(problems)
}
