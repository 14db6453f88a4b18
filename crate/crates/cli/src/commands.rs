use std::path::PathBuf;
use std::time::Instant;

use serde_json::{json, Map, Value};

use gpmc::diagnosability::{lemma2_upper_bounds, DiagnosabilityReport};
use gpmc::topology::{to_dot, to_edge_list};
use gpmc::{
    build_hypercube, diagnose_with_cap, edge_restricted_diagnosability_with, generate_syndrome,
    vertex_restricted_edge_diagnosability_with, FaultPair, Graph, Parameter, SearchOptions,
    SearchStats, Strategy,
};

use crate::args::{
    DiagnosabilityCmd, DiagnoseCmd, ExportFormat, InjectCmd, OutputArgs, SearchArgs, StrategyArg,
    TopologyCmd, VerifyCmd,
};
use crate::input;
use crate::report::{render, Report, Table};
use crate::{CliError, Exit};

/// Largest vertex count the full-enumeration audit is run on.
pub const AUDIT_VERTEX_LIMIT: usize = 16;
/// Largest dimension verify-theorems runs without the audit flag.
pub const DEFAULT_MAX_DIMENSION: usize = 4;

/// A rendered command result.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub path: Option<PathBuf>,
    pub exit: Exit,
    pub report: Option<Report>,
}

fn finish(report: Report, table: Table, out: &OutputArgs, exit: Exit) -> Result<Output, CliError> {
    Ok(Output {
        text: render(&report, &table, out.format)?,
        path: out.output.clone(),
        exit,
        report: Some(report),
    })
}

fn vertex_list(fp: &FaultPair) -> String {
    let vs: Vec<String> = fp.faulty_vertices().iter().map(|v| v.to_string()).collect();
    vs.join(",")
}

fn edge_list(fp: &FaultPair) -> String {
    let es: Vec<String> = fp.faulty_edges().iter().map(|e| e.to_string()).collect();
    es.join(",")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_owned(), |v| v.to_string())
}

fn stats_json(stats: SearchStats, elapsed: Option<std::time::Duration>) -> Value {
    let mut obj = Map::new();
    obj.insert("candidates_examined".into(), json!(stats.candidates_examined));
    obj.insert("pruned".into(), json!(stats.pruned));
    if let Some(d) = elapsed {
        obj.insert("elapsed_ms".into(), json!(d.as_secs_f64() * 1e3));
    }
    Value::Object(obj)
}

fn search_options(args: &SearchArgs) -> SearchOptions {
    let strategy = match args.strategy {
        StrategyArg::Local => Strategy::Local,
        StrategyArg::Full => Strategy::Full,
        StrategyArg::Literal => Strategy::Literal,
    };
    SearchOptions::with_strategy(strategy).jobs(args.jobs)
}

pub fn topology(cmd: &TopologyCmd) -> Result<Output, CliError> {
    let (g, desc) = input::graph(&cmd.graph)?;
    if let Some(export) = cmd.export {
        let text = match export {
            ExportFormat::Dot => to_dot(&g),
            ExportFormat::EdgeList => to_edge_list(&g),
        };
        return Ok(Output {
            text,
            path: cmd.out.output.clone(),
            exit: Exit::Success,
            report: None,
        });
    }
    let min_degree = g.min_degree().ok();
    let max_degree = g.max_degree().ok();
    let girth = g.girth();
    let result = json!({
        "name": g.topology().to_string(),
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "min_degree": min_degree,
        "max_degree": max_degree,
        "girth": girth,
        "connected": g.is_connected(),
    });
    let mut table = Table::new(["vertices", "edges", "min_degree", "max_degree", "girth", "connected"]);
    table.note("graph", g.topology());
    table.row([
        g.vertex_count().to_string(),
        g.edge_count().to_string(),
        opt(min_degree),
        opt(max_degree),
        opt(girth),
        g.is_connected().to_string(),
    ]);
    let report = Report::new("topology", json!({ "topology": desc }), result, Value::Null);
    finish(report, table, &cmd.out, Exit::Success)
}

pub fn inject(cmd: &InjectCmd) -> Result<Output, CliError> {
    let (g, desc) = input::graph(&cmd.graph)?;
    let (truth, faults) = input::fault_pair(&g, &cmd.faults)?;
    let (adversary, adversary_desc) = input::adversary(&cmd.faults);
    let sig = generate_syndrome(&g, &truth, &adversary)?;
    let arbitrary = gpmc::fault::arbitrary_tests(&g, &truth)?.len();
    let triples = sig.triples(&g)?;
    let failing = triples.iter().filter(|t| t.2 == gpmc::Outcome::Fail).count();

    let mut table = Table::new(["tester", "testee", "outcome"]);
    table.note("graph", g.topology());
    table.note("truth", &truth);
    table.note("arbitrary tests", arbitrary);
    table.note("failing tests", failing);
    for (u, v, o) in &triples {
        table.row([u.to_string(), v.to_string(), o.bit().to_string()]);
    }
    let result = json!({
        "truth": truth,
        "arbitrary_tests": arbitrary,
        "failing_tests": failing,
        "syndrome": input::syndrome_json(&g, &sig)?,
    });
    let config = json!({ "topology": desc, "faults": faults, "adversary": adversary_desc });
    finish(Report::new("inject", config, result, Value::Null), table, &cmd.out, Exit::Success)
}

pub fn diagnose(cmd: &DiagnoseCmd) -> Result<Output, CliError> {
    let (g, desc) = input::graph(&cmd.graph)?;
    let mut config = json!({ "topology": desc, "t": cmd.t, "s": cmd.s, "cap": cmd.cap });
    let (sig, truth) = match &cmd.syndrome {
        Some(path) => {
            config["syndrome"] = json!(path.display().to_string());
            (input::read_syndrome(&g, path)?, None)
        }
        None => {
            let (truth, faults) = input::fault_pair(&g, &cmd.faults)?;
            let (adversary, adversary_desc) = input::adversary(&cmd.faults);
            config["faults"] = faults;
            config["adversary"] = adversary_desc;
            (generate_syndrome(&g, &truth, &adversary)?, Some(truth))
        }
    };
    let res = diagnose_with_cap(&g, &sig, cmd.t, cmd.s, cmd.cap)?;
    let recovered = truth.as_ref().map(|t| res.unique() == Some(t));

    let mut table = Table::new(["#", "F", "S"]);
    table.note("graph", g.topology());
    table.note("bounds", format!("t = {}, s = {}", cmd.t, cmd.s));
    table.note("status", json!(res.status).as_str().unwrap_or_default());
    table.note(
        "candidates",
        format!("{} (showing {})", res.candidate_count, res.candidates.len()),
    );
    if let Some(t) = &truth {
        table.note("truth", t);
        table.note("recovered", recovered.unwrap_or(false));
    }
    for (i, c) in res.candidates.iter().enumerate() {
        table.row([i.to_string(), vertex_list(c), edge_list(c)]);
    }
    let result = json!({
        "status": res.status,
        "candidate_count": res.candidate_count,
        "candidates": res.candidates,
        "truth": truth,
        "recovered": recovered,
        "syndrome": input::syndrome_json(&g, &sig)?,
    });
    finish(Report::new("diagnose", config, result, Value::Null), table, &cmd.out, Exit::Success)
}

fn compute(g: &Graph, parameter: Parameter, level: usize, opts: &SearchOptions) -> Result<DiagnosabilityReport, CliError> {
    Ok(match parameter {
        Parameter::EdgeRestricted => edge_restricted_diagnosability_with(g, level, opts)?,
        Parameter::VertexRestricted => vertex_restricted_edge_diagnosability_with(g, level, opts)?,
    })
}

/// Full-enumeration value, when the graph is small enough to audit.
fn audit(g: &Graph, parameter: Parameter, level: usize, jobs: usize) -> Result<Option<Option<usize>>, CliError> {
    if g.vertex_count() > AUDIT_VERTEX_LIMIT {
        return Ok(None);
    }
    Ok(Some(compute(g, parameter, level, &SearchOptions::audit().jobs(jobs))?.value))
}

fn analytic_bound(g: &Graph, parameter: Parameter, level: usize) -> Option<usize> {
    let delta = g.min_degree().ok()?;
    match parameter {
        Parameter::EdgeRestricted => lemma2_upper_bounds(g, level).ok().map(|b| b.t_h_bound),
        Parameter::VertexRestricted if level == 1 && delta >= 2 => Some(delta - 2),
        Parameter::VertexRestricted => None,
    }
}

fn witness_json(rep: &DiagnosabilityReport) -> Value {
    match &rep.witness {
        Some((p1, p2)) => json!([p1, p2]),
        None => Value::Null,
    }
}

pub fn diagnosability(cmd: &DiagnosabilityCmd) -> Result<Output, CliError> {
    let (g, desc) = input::graph(&cmd.graph)?;
    let (parameter, level) = match (cmd.h, cmd.r) {
        (Some(h), None) => (Parameter::EdgeRestricted, h),
        (None, Some(r)) => (Parameter::VertexRestricted, r),
        _ => return Err(CliError::Input("give exactly one of --h and --r".into())),
    };
    let opts = search_options(&cmd.search);
    let rep = compute(&g, parameter, level, &opts)?;
    let audited = if cmd.search.audit_full_enumeration {
        audit(&g, parameter, level, cmd.search.jobs)?
    } else {
        None
    };
    let agrees = audited.map(|v| v == rep.value);
    let exit = if agrees == Some(false) { Exit::Mismatch } else { Exit::Success };
    let bound = analytic_bound(&g, parameter, level);

    let mut table = Table::new(["parameter", "level", "value", "analytic_bound", "failing_bounds", "audit"]);
    table.note("graph", g.topology());
    if let Some((p1, p2)) = &rep.witness {
        table.note("witness", format!("{p1} vs {p2}"));
    }
    if rep.outside_analyzed_range {
        table.note("note", "h exceeds the minimum degree");
    }
    table.row([
        json!(parameter).as_str().unwrap_or_default().to_owned(),
        level.to_string(),
        opt(rep.value),
        opt(bound),
        opt(rep.failing_bounds.map(|(t, s)| format!("({t},{s})"))),
        match audited {
            None => "-".to_owned(),
            Some(v) => format!("{} ({})", opt(v), if agrees == Some(true) { "agrees" } else { "DIFFERS" }),
        },
    ]);
    let result = json!({
        "graph": rep.graph,
        "parameter": parameter,
        "level": level,
        "value": rep.value,
        "analytic_bound": bound,
        "witness": witness_json(&rep),
        "failing_bounds": rep.failing_bounds,
        "outside_analyzed_range": rep.outside_analyzed_range,
        "audit": audited.map(|v| json!({ "value": v, "agrees": agrees })),
    });
    let config = json!({
        "topology": desc,
        "parameter": parameter,
        "level": level,
        "strategy": opts.strategy,
        "audit_full_enumeration": cmd.search.audit_full_enumeration,
    });
    let stats = stats_json(rep.stats, cmd.out.timings.then_some(rep.elapsed));
    finish(Report::new("diagnosability", config, result, stats), table, &cmd.out, exit)
}

pub fn verify_theorems(cmd: &VerifyCmd) -> Result<Output, CliError> {
    if cmd.n_min < 2 || cmd.n_min > cmd.n_max {
        return Err(CliError::Input(format!(
            "dimension range {}..={} must satisfy 2 <= n-min <= n-max",
            cmd.n_min, cmd.n_max
        )));
    }
    if cmd.n_max > DEFAULT_MAX_DIMENSION && !cmd.search.audit_full_enumeration {
        return Err(CliError::Input(format!(
            "dimensions above {DEFAULT_MAX_DIMENSION} need --audit-full-enumeration"
        )));
    }
    let opts = search_options(&cmd.search);
    let started = Instant::now();
    let mut total = SearchStats::default();
    let mut rows = Vec::new();
    let mut table = Table::new(["claim", "n", "level", "predicted", "computed", "match", "audit"]);
    let mut all_match = true;
    for n in cmd.n_min..=cmd.n_max {
        let g = build_hypercube(n)?;
        let mut claims = vec![("pmc", Parameter::EdgeRestricted, 0, n)];
        claims.extend((1..=n).map(|h| ("edge_restricted", Parameter::EdgeRestricted, h, n - h)));
        claims.push(("vertex_restricted", Parameter::VertexRestricted, 1, n - 2));
        for (claim, parameter, level, predicted) in claims {
            let rep = compute(&g, parameter, level, &opts)?;
            total += rep.stats;
            let matches = rep.value == Some(predicted);
            let audited = if cmd.search.audit_full_enumeration {
                audit(&g, parameter, level, cmd.search.jobs)?
            } else {
                None
            };
            let agrees = audited.map(|v| v == rep.value);
            all_match &= matches && agrees != Some(false);
            table.row([
                claim.to_owned(),
                n.to_string(),
                level.to_string(),
                predicted.to_string(),
                opt(rep.value),
                if matches { "yes" } else { "NO" }.to_owned(),
                match agrees {
                    None => "-".to_owned(),
                    Some(true) => "agrees".to_owned(),
                    Some(false) => format!("DIFFERS ({})", opt(audited.flatten())),
                },
            ]);
            rows.push(json!({
                "claim": claim,
                "n": n,
                "level": level,
                "predicted": predicted,
                "computed": rep.value,
                "match": matches,
                "witness": witness_json(&rep),
                "failing_bounds": rep.failing_bounds,
                "audit": audited.map(|v| json!({ "value": v, "agrees": agrees })),
            }));
        }
    }
    let mismatches = rows.iter().filter(|r| r["match"] == json!(false)).count();
    table.note("rows", rows.len());
    table.note("mismatches", mismatches);
    let result = json!({ "rows": rows, "all_match": all_match, "mismatches": mismatches });
    let config = json!({
        "n_min": cmd.n_min,
        "n_max": cmd.n_max,
        "strategy": opts.strategy,
        "audit_full_enumeration": cmd.search.audit_full_enumeration,
    });
    let stats = stats_json(total, cmd.out.timings.then(|| started.elapsed()));
    let exit = if all_match { Exit::Success } else { Exit::Mismatch };
    finish(Report::new("verify-theorems", config, result, stats), table, &cmd.out, exit)
}
