use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use locolor::bounds::{evaluate, path_nl_chromatic, BoundParams, Formula};
use locolor::coloring::{check_locating_with, check_nl, check_proper, Coloring, LocatingOptions};
use locolor::constructions::{complete, cycle, gap_pair, gpqr_with_budget, nl_family, path, star};
use locolor::corpus::corpus_generate;
use locolor::io::{parse_coloring, parse_graph, write_coloring, write_graph, GraphFormat, VerifyReport};
use locolor::reduction::{
    build_gstar, expected_order, expected_size, extract_3coloring, lift_3coloring, sparsity_report, ReductionError,
};
use locolor::solve::{find_coloring, solve, Feasibility, Kind, SolveReport};
use locolor::Graph;

use crate::manifest::{OutputDir, RunManifest};
use crate::{Cli, Command, Family, FormatArg, Status};

pub fn run(cli: &Cli) -> Result<Status> {
    match &cli.command {
        Command::Verify { kind, graph, coloring, signatures, allow_disconnected } => {
            verify(cli, (*kind).into(), graph, coloring, *signatures, *allow_disconnected)
        }
        Command::Solve { invariant, graph, k, witness } => solve_cmd(cli, (*invariant).into(), graph, *k, witness.as_deref()),
        Command::Construct { family, params, out, format } => construct(cli, *family, params, out, *format),
        Command::Bounds { formula, k, delta, avgdeg, n, s, i, c } => {
            let formula: Formula = formula.parse()?;
            let avg_degree = avgdeg.as_deref().map(parse_ratio).transpose()?;
            let params = BoundParams { k: *k, delta: *delta, avg_degree, n: *n, s: *s, i: *i, c: *c };
            bounds(cli, formula, &params)
        }
        Command::Reduce { graph, lift, extract, mode, report, out } => {
            reduce(cli, graph, lift.as_deref(), extract.as_deref(), (*mode).into(), *report, out.as_deref())
        }
        Command::Corpus { seed, size, out } => corpus(cli, *seed, *size, out),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<(Graph, String)> {
    let text = read(path)?;
    let g = parse_graph(&text, GraphFormat::from_path(path)).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    Ok((g, text))
}

fn read_coloring(path: &Path, n: usize) -> Result<(Coloring, String)> {
    let text = read(path)?;
    let f = parse_coloring(&text, n).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    Ok((f, text))
}

fn print_json(value: &impl Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

/// Accepts `7`, `7/2` and `3.5`.
fn parse_ratio(text: &str) -> Result<Ratio<u64>> {
    let bad = || anyhow!("cannot read {text:?} as a non-negative rational");
    if let Some((whole, frac)) = text.split_once('.') {
        let scale = 10u64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let whole: u64 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = whole.checked_mul(scale).and_then(|w| w.checked_add(frac)).ok_or_else(bad)?;
        return Ok(Ratio::new(num, scale));
    }
    let r: Ratio<u64> = text.parse().map_err(|_| bad())?;
    Ok(r)
}

fn verify(cli: &Cli, kind: Kind, graph: &Path, coloring: &Path, signatures: bool, allow_disconnected: bool) -> Result<Status> {
    let (g, _) = read_graph(graph)?;
    let (f, _) = read_coloring(coloring, g.n())?;
    let verdict = match kind {
        Kind::Proper => check_proper(&g, &f)?,
        Kind::NeighborLocating => check_nl(&g, &f)?,
        Kind::Locating => check_locating_with(&g, &f, LocatingOptions { allow_disconnected })?.0,
    };
    if cli.json {
        let mut report = VerifyReport::from_verdict(verdict);
        if signatures {
            report = match kind {
                Kind::NeighborLocating => report.with_nl_signatures(&g, &f),
                Kind::Locating if g.is_connected() => report.with_locating_signatures(&g, &f)?,
                _ => report,
            };
        }
        print_json(&report)?;
    } else {
        match verdict {
            locolor::Verdict::Ok => println!("ok: valid {kind} coloring with {} colors", f.k()),
            locolor::Verdict::Violation { u, v } => println!("violation: vertices {u} and {v}"),
        }
    }
    Ok(if verdict.is_ok() { Status::Success } else { Status::Negative })
}

#[derive(Serialize)]
struct FeasibilityReport {
    invariant: Kind,
    k: usize,
    outcome: &'static str,
    witness: Option<Coloring>,
    nodes_explored: u64,
}

fn solve_cmd(cli: &Cli, kind: Kind, graph: &Path, k: Option<usize>, witness_path: Option<&Path>) -> Result<Status> {
    let (g, _) = read_graph(graph)?;
    let write_witness = |f: &Coloring| -> Result<()> {
        if let Some(path) = witness_path {
            fs::write(path, write_coloring(f)).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    };
    if let Some(k) = k {
        let attempt = find_coloring(&g, kind, k, cli.budget)?;
        let (outcome, witness, status) = match attempt.outcome {
            Feasibility::Feasible(f) => ("feasible", Some(f), Status::Success),
            Feasibility::Infeasible => ("infeasible", None, Status::Negative),
            Feasibility::BudgetExceeded => ("budget-exceeded", None, Status::OutOfBudget),
        };
        if let Some(f) = &witness {
            write_witness(f)?;
        }
        let report = FeasibilityReport { invariant: kind, k, outcome, witness, nodes_explored: attempt.nodes_explored };
        if cli.json {
            print_json(&report)?;
        } else {
            println!("{kind} with at most {k} colors: {outcome} ({} nodes)", report.nodes_explored);
        }
        return Ok(status);
    }
    let report: SolveReport = solve(&g, kind, cli.budget)?;
    write_witness(&report.witness)?;
    if cli.json {
        print_json(&report)?;
    } else {
        match report.value {
            Some(v) => println!("{kind} = {v} ({} nodes)", report.nodes_explored),
            None => println!("{} <= {kind} <= {} (budget exhausted after {} nodes)", report.lower, report.upper, report.nodes_explored),
        }
    }
    Ok(if report.is_exact() { Status::Success } else { Status::OutOfBudget })
}

fn bounds(cli: &Cli, formula: Formula, params: &BoundParams) -> Result<Status> {
    let report = evaluate(formula, params)?;
    if cli.json {
        print_json(&report)?;
    } else {
        println!("{} {} {}", report.bound_name, report.comparison, report.value);
        if let Some(case) = &report.case {
            println!("case: {}", serde_json::to_value(case)?.as_str().unwrap_or_default());
        }
        if let Some(profile) = &report.profile {
            for (degree, count) in profile {
                println!("degree {degree}: {count}");
            }
        }
        if let Some(ok) = report.satisfied {
            println!("n {}", if ok { "satisfies the bound" } else { "violates the bound" });
        }
    }
    Ok(if report.satisfied == Some(false) { Status::Negative } else { Status::Success })
}

fn graph_file(format: FormatArg, stem: &str) -> (String, GraphFormat) {
    match format {
        FormatArg::Col => (format!("{stem}.col"), GraphFormat::Dimacs),
        FormatArg::Edges => (format!("{stem}.edges"), GraphFormat::EdgeList),
    }
}

fn params_exactly<const N: usize>(family: Family, params: &[usize]) -> Result<[usize; N]> {
    let name = family.to_possible_value().expect("no skipped variants");
    params.try_into().map_err(|_| anyhow!("{} takes {N} parameter(s), got {}", name.get_name(), params.len()))
}

fn construct(cli: &Cli, family: Family, params: &[usize], out: &Path, format: FormatArg) -> Result<Status> {
    let mut manifest = RunManifest::new("construct");
    manifest.param("family", family.to_possible_value().expect("no skipped variants").get_name());
    manifest.param("params", params);
    let dir = OutputDir::create(out)?;
    let (name, graph_format) = graph_file(format, "graph");
    let mut status = Status::Success;

    // Best neighbor-locating coloring the solver finds within budget.
    let mut nl_witness = |g: &Graph| -> Result<(Coloring, Option<u32>)> {
        let report = solve(g, Kind::NeighborLocating, cli.budget)?;
        if report.value.is_none() {
            status = Status::OutOfBudget;
        }
        Ok((report.witness, report.value))
    };
    let (graph, coloring, claimed) = match family {
        Family::Gpqr => {
            let [p, q, r] = params_exactly(family, params)?;
            let built = gpqr_with_budget(p, q, r, cli.budget)?;
            let (f, _) = nl_witness(&built.graph)?;
            let (chi, chi_l, chi_nl) = built.claimed;
            let claimed = json!({"chi": chi, "chi_l": chi_l, "chi_nl": chi_nl, "shape": built.shape, "experimental": built.experimental});
            (built.graph, f, claimed)
        }
        Family::GapPair => {
            let [k] = params_exactly(family, params)?;
            let pair = gap_pair(k)?;
            let (h_name, _) = graph_file(format, "h");
            dir.write(&mut manifest, &h_name, &write_graph(&pair.h, graph_format))?;
            let claimed = json!({
                "chi_l_g": pair.claimed_g(), "chi_nl_g": pair.claimed_g(),
                "chi_l_h": pair.claimed_h(), "chi_nl_h": pair.claimed_h(),
                "h_vertices": pair.h_vertices,
            });
            (pair.g, pair.coloring, claimed)
        }
        Family::NlFamily => {
            let [max_degree, s] = params_exactly(family, params)?;
            let state = nl_family(max_degree, s, cli.budget)?;
            let claimed = json!({"colors": state.phi.k(), "max_degree_at_most": max_degree, "order": state.graph.n()});
            (state.graph, state.phi, claimed)
        }
        Family::Path | Family::Cycle | Family::Complete | Family::Star => {
            let [n] = params_exactly(family, params)?;
            let g = match family {
                Family::Path => path(n)?,
                Family::Cycle => cycle(n)?,
                Family::Complete => complete(n)?,
                _ => star(n)?,
            };
            let (f, value) = nl_witness(&g)?;
            let mut claimed = json!({ "chi_nl": value });
            if family == Family::Path {
                claimed["chi_nl_formula"] = json!(path_nl_chromatic(n as u64)?.k);
            }
            (g, f, claimed)
        }
    };
    dir.write(&mut manifest, &name, &write_graph(&graph, graph_format))?;
    dir.write(&mut manifest, "coloring.txt", &write_coloring(&coloring))?;
    manifest.assert("coloring is neighbor-locating", check_nl(&graph, &coloring)?.is_ok());
    manifest.result = json!({"n": graph.n(), "m": graph.m(), "colors": coloring.k(), "claimed": claimed});
    let text = dir.finish(&manifest)?;
    if cli.json {
        print!("{text}");
    } else {
        println!("wrote {} ({} vertices, {} edges) and a {}-coloring to {}", name, graph.n(), graph.m(), coloring.k(), out.display());
    }
    if !manifest.all_passed() {
        bail!("constructed coloring failed verification");
    }
    Ok(status)
}

fn reduce(
    cli: &Cli,
    graph: &Path,
    lift: Option<&Path>,
    extract: Option<&Path>,
    mode: Kind,
    report: bool,
    out: Option<&Path>,
) -> Result<Status> {
    let (g, text) = read_graph(graph)?;
    let mut manifest = RunManifest::new("reduce");
    manifest.input(graph, text.as_bytes());
    let gstar = build_gstar(&g)?;
    let (n, m) = (g.n(), g.m());
    manifest.assert("order is 2n^2 + 4n + 3", gstar.graph.n() == expected_order(n));
    manifest.assert("size is 7n^2 - n + 4m", gstar.graph.m() == expected_size(n, m));
    manifest.assert("G* is connected", gstar.graph.is_connected());
    let mut result = json!({"n": n, "m": m, "n_star": gstar.graph.n(), "m_star": gstar.graph.m()});
    let mut produced: Vec<(&str, String)> = vec![("gstar.col", write_graph(&gstar.graph, GraphFormat::Dimacs))];
    let mut status = Status::Success;

    if let Some(path) = lift {
        let (f3, bytes) = read_coloring(path, n)?;
        manifest.input(path, bytes.as_bytes());
        manifest.param("lift", path.display().to_string());
        match lift_3coloring(&g, &gstar, &f3) {
            Ok(lifted) => {
                manifest.assert("lift is neighbor-locating", check_nl(&gstar.graph, &lifted)?.is_ok());
                manifest.assert("lift is locating", check_locating_with(&gstar.graph, &lifted, LocatingOptions::default())?.0.is_ok());
                result["lift_colors"] = json!(lifted.k());
                produced.push(("lifted.txt", write_coloring(&lifted)));
            }
            Err(ReductionError::Inconsistent(detail)) => {
                manifest.assert("lift is neighbor-locating", false);
                result["lift_failure"] = json!(detail);
            }
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(path) = extract {
        let (f, bytes) = read_coloring(path, gstar.graph.n())?;
        manifest.input(path, bytes.as_bytes());
        manifest.param("extract", path.display().to_string());
        manifest.param("mode", mode);
        match extract_3coloring(&g, &gstar, &f, mode) {
            Ok(f3) => {
                manifest.assert("extraction is a proper 3-coloring", check_proper(&g, &f3)?.is_ok());
                produced.push(("extracted.txt", write_coloring(&f3)));
            }
            Err(e @ (ReductionError::InvalidColoring(_) | ReductionError::Inconsistent(_))) => {
                manifest.assert("extraction is a proper 3-coloring", false);
                result["extract_failure"] = json!(e.to_string());
            }
            Err(e) => return Err(e.into()),
        }
    }
    if report {
        let sparsity = sparsity_report(&g, &gstar, cli.budget)?;
        if sparsity.hypothesis {
            manifest.assert("average degree at most 7", sparsity.avg_degree_at_most_7);
            manifest.assert("maximum average degree at most 20", sparsity.mad_at_most_20);
        }
        manifest.assert("G* is 4-colorable", sparsity.four_colorable);
        if !sparsity.four_colorable {
            status = Status::OutOfBudget;
        }
        result["sparsity"] = serde_json::to_value(&sparsity)?;
    }
    manifest.result = result;
    if status == Status::Success && !manifest.all_passed() {
        status = Status::Negative;
    }

    let text = match out {
        Some(dir) => {
            let dir = OutputDir::create(dir)?;
            for (name, contents) in &produced {
                dir.write(&mut manifest, name, contents)?;
            }
            dir.finish(&manifest)?
        }
        None => serde_json::to_string_pretty(&manifest)? + "\n",
    };
    if cli.json {
        print!("{text}");
    } else {
        println!("G* has {} vertices and {} edges", gstar.graph.n(), gstar.graph.m());
        for a in &manifest.assertions {
            println!("{}: {}", if a.passed { "pass" } else { "FAIL" }, a.name);
        }
    }
    Ok(status)
}

fn corpus(cli: &Cli, seed: u64, size: usize, out: &Path) -> Result<Status> {
    let mut manifest = RunManifest::new("corpus");
    manifest.seed = Some(seed);
    manifest.param("size", size);
    let dir = OutputDir::create(out)?;
    let entries = corpus_generate(seed, size)?;
    let mut members = Vec::with_capacity(entries.len());
    for e in &entries {
        let name = format!("{}.col", e.name);
        dir.write(&mut manifest, &name, &write_graph(&e.graph, GraphFormat::Dimacs))?;
        members.push(json!({"name": e.name, "n": e.graph.n(), "m": e.graph.m()}));
    }
    manifest.result = Value::Array(members);
    let text = dir.finish(&manifest)?;
    if cli.json {
        print!("{text}");
    } else {
        println!("wrote {} graphs to {}", entries.len(), out.display());
    }
    Ok(Status::Success)
}
