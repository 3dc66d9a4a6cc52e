//! `clawdel` subcommands.
//!
//! Exit codes: 0 success, 1 internal invariant violation, 2 parse or
//! precondition failure, 3 oracle size guard, 4 infeasible solution
//! (`verify`).

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use crate::claw::{is_feasible, is_minimal, ClawGraph};
use crate::gen::{self, Family, GenSpec, WeightMode};
use crate::graph::{BipartiteGraph, Rational, SplitGraph, VertexSet};
use crate::io::{self, parse_id_list, parse_instance, Instance};
use crate::oracle::{self, OracleError, OracleLimits};
use crate::reductions::{self, ReductionError, ReductionKind};
use crate::solvers::{self, millis, Algorithm, MaxSubgraphOutcome, SolveError, SolveReport};

#[derive(Debug, Parser)]
#[command(name = "clawdel", version, about = "One-sided bipartite t-claw deletion toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a `p bip` or `p split` instance.
    Solve(SolveArgs),
    /// Apply a reduction and write the constructed instance and its map.
    Reduce(ReduceArgs),
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Check a deletion set against an instance.
    Verify(VerifyArgs),
    /// Run algorithms over a directory of instances and write CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub alg: Algorithm,
    #[arg(long)]
    pub input: PathBuf,
    /// Emit one JSON object instead of key-value lines.
    #[arg(long)]
    pub json: bool,
    /// Write the dual trace to this file.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Report time_ms as 0 for reproducible output.
    #[arg(long)]
    pub no_timing: bool,
    /// Branching-depth guard for the exact solver.
    #[arg(long, default_value_t = OracleLimits::default().max_depth)]
    pub max_depth: usize,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(long)]
    pub kind: ReductionKind,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    /// Map sidecar path; defaults to `<output>.map`.
    #[arg(long)]
    pub map: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// bip-random, bip-dense, hyp-uniform, regular-graph or split-random.
    #[arg(long)]
    pub family: String,
    /// Claw parameter, uniformity or regular degree depending on family.
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub na: usize,
    #[arg(long, default_value_t = 0)]
    pub nb: usize,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub nc: usize,
    #[arg(long, default_value_t = 0)]
    pub ni: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// `unit` or `int:<lo>:<hi>`.
    #[arg(long, default_value = "unit")]
    pub weights: WeightMode,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Whitespace-separated vertex ids.
    #[arg(long)]
    pub solution: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub suite: PathBuf,
    /// Comma-separated algorithm names.
    #[arg(long, value_delimiter = ',', default_value = "primal-dual,local-ratio")]
    pub algs: Vec<Algorithm>,
    #[arg(long)]
    pub csv: PathBuf,
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long, default_value_t = OracleLimits::default().max_depth)]
    pub max_depth: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Guard(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Input(_) => 2,
            CliError::Guard(_) => 3,
            CliError::Infeasible(_) => 4,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Oracle(o) => o.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::DepthExceeded { .. } | OracleError::TooManyVertices { .. } => CliError::Guard(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, CliError> {
    parse_instance(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Internal(e.to_string()))
}

pub fn run(cli: Cli, out: &mut dyn Write, diag: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Solve(a) => cmd_solve(a, out, diag),
        Command::Reduce(a) => cmd_reduce(a, diag),
        Command::Gen(a) => cmd_gen(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Bench(a) => cmd_bench(a),
    }
}

fn report_text(r: &SolveReport, timing: bool) -> String {
    let mut s = String::new();
    writeln!(s, "algorithm {}", r.algorithm).unwrap();
    writeln!(s, "solution {}", r.solution).unwrap();
    writeln!(s, "cost {}", r.cost).unwrap();
    writeln!(s, "lower_bound {}", r.dual_lower_bound).unwrap();
    match &r.theta {
        Some(t) => writeln!(s, "theta {t}").unwrap(),
        None => writeln!(s, "theta -").unwrap(),
    }
    writeln!(s, "iterations {}", r.iterations).unwrap();
    writeln!(s, "time_ms {:.3}", if timing { millis(r.elapsed) } else { 0.0 }).unwrap();
    s
}

fn outcome_text(o: &MaxSubgraphOutcome, timing: bool) -> String {
    let mut s = String::new();
    writeln!(s, "algorithm {}", Algorithm::MaxSubgraph).unwrap();
    writeln!(s, "solution {}", o.kept).unwrap();
    writeln!(s, "cost {}", o.weight).unwrap();
    writeln!(s, "lower_bound -").unwrap();
    writeln!(s, "theta -").unwrap();
    writeln!(s, "iterations {}", o.deletion.iterations).unwrap();
    writeln!(s, "time_ms {:.3}", if timing { millis(o.elapsed) } else { 0.0 }).unwrap();
    s
}

fn cmd_solve(a: SolveArgs, out: &mut dyn Write, diag: &mut dyn Write) -> Result<(), CliError> {
    let limits = OracleLimits { max_depth: a.max_depth, ..OracleLimits::default() };
    let timing = !a.no_timing;
    let instance = load(&a.input)?;
    if a.alg == Algorithm::MaxSubgraph {
        let outcome = match &instance {
            Instance::Bipartite(g) => solvers::max_subgraph_solve(g),
            Instance::Split(h) => solvers::split_max_subgraph_solve(h)?,
            Instance::Hypergraph(_) => return Err(CliError::Input("solve expects a bip or split instance".into())),
        };
        if a.trace.is_some() {
            writeln!(diag, "warning: max-subgraph records no dual trace").ok();
        }
        let text = if a.json { format!("{}\n", outcome.to_json(timing)) } else { outcome_text(&outcome, timing) };
        return emit(out, &text);
    }
    let report = match &instance {
        Instance::Bipartite(g) => solvers::solve(g, a.alg, &limits)?,
        Instance::Split(h) => solvers::split_solve(h, a.alg, &limits)?,
        Instance::Hypergraph(_) => return Err(CliError::Input("solve expects a bip or split instance".into())),
    };
    if let Some(path) = &a.trace {
        match &report.trace {
            Some(trace) => write_file(path, &trace.to_text())?,
            None => {
                writeln!(diag, "warning: {} records no dual trace", a.alg).ok();
            }
        }
    }
    let text = if a.json { format!("{}\n", report.to_json(timing)) } else { report_text(&report, timing) };
    emit(out, &text)
}

fn cmd_reduce(a: ReduceArgs, diag: &mut dyn Write) -> Result<(), CliError> {
    let instance = load(&a.input)?;
    let mismatch =
        |want: &str| CliError::Input(format!("{} expects a `p {want}` instance, got `p {}`", a.kind, instance.kind()));
    let (text, map) = match (a.kind, &instance) {
        (ReductionKind::HvcOsbcd, Instance::Hypergraph(hy)) => {
            let (g, map) = reductions::hvc_to_osbcd(hy)?;
            (io::serialize_bipartite(&g), map)
        }
        (ReductionKind::OsbcdSplit, Instance::Bipartite(g)) => {
            let (h, map) = reductions::osbcd_to_split(g);
            (io::serialize_split(&h), map)
        }
        (ReductionKind::SplitOsbcd, Instance::Split(h)) => {
            let (g, map) = reductions::split_to_osbcd(h);
            (io::serialize_bipartite(&g), map)
        }
        (ReductionKind::VcDense, Instance::Hypergraph(graph)) => {
            let t = graph.regular_degree().ok_or(ReductionError::NotRegular)?;
            let (g, map) = reductions::vc_to_dense_osbcd(graph, t)?;
            (io::serialize_bipartite(&g), map)
        }
        (ReductionKind::HvcOsbcd | ReductionKind::VcDense, _) => return Err(mismatch("hyp")),
        (ReductionKind::OsbcdSplit, _) => return Err(mismatch("bip")),
        (ReductionKind::SplitOsbcd, _) => return Err(mismatch("split")),
    };
    for flag in &map.flags {
        writeln!(diag, "warning: {flag}").ok();
    }
    let map_path = a.map.unwrap_or_else(|| {
        let mut p = a.output.clone().into_os_string();
        p.push(".map");
        p.into()
    });
    write_file(&a.output, &text)?;
    write_file(&map_path, &map.serialize())
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let family = match a.family.as_str() {
        "bip-random" => Family::BipRandom { n_a: a.na, n_b: a.nb, edge_prob: a.p },
        "bip-dense" => Family::BipDense { n_a: a.na, n_b: a.nb },
        "hyp-uniform" => Family::HypUniform { n: a.n, m: a.m },
        "regular-graph" => Family::RegularGraph { n: a.n },
        "split-random" => Family::SplitRandom { n_c: a.nc, n_i: a.ni, edge_prob: a.p },
        other => return Err(CliError::Input(format!("unknown family `{other}`"))),
    };
    let spec = GenSpec { family, t: a.t, seed: a.seed, weights: a.weights };
    let text = gen::generate_text(&spec).map_err(|e| CliError::Input(e.to_string()))?;
    match &a.output {
        Some(path) => write_file(path, &text),
        None => emit(out, &text),
    }
}

fn verify_on<G: ClawGraph>(g: &G, s: &VertexSet) -> Result<(bool, bool, Rational), CliError> {
    for v in s.iter() {
        g.check_vertex(v).map_err(|e| CliError::Input(e.to_string()))?;
    }
    let cost = s.iter().fold(Rational::from_integer(0.into()), |acc, v| acc + g.weight(v));
    let feasible = is_feasible(g, s);
    let minimal = feasible && is_minimal(g, s).unwrap_or(false);
    Ok((feasible, minimal, cost))
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let instance = load(&a.input)?;
    let ids =
        parse_id_list(&read(&a.solution)?).map_err(|e| CliError::Input(format!("{}: {e}", a.solution.display())))?;
    let s: VertexSet = ids.into_iter().collect();
    let (feasible, minimal, cost) = match &instance {
        Instance::Bipartite(g) => verify_on(g, &s)?,
        Instance::Split(h) => verify_on(h, &s)?,
        Instance::Hypergraph(_) => return Err(CliError::Input("verify expects a bip or split instance".into())),
    };
    emit(out, &format!("feasible={feasible} minimal={minimal} cost={cost}\n"))?;
    if feasible {
        Ok(())
    } else {
        Err(CliError::Infeasible("solution leaves a claw".into()))
    }
}

/// One CSV row of a benchmark run.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub algorithm: Algorithm,
    pub t: usize,
    pub cost: Rational,
    pub lower_bound: Option<Rational>,
    pub opt: Option<Rational>,
    pub ratio: Option<Rational>,
    pub theta: Option<Rational>,
    pub time_ms: f64,
}

pub const CSV_HEADER: &str = "instance,algorithm,t,cost,lower_bound,opt,ratio,theta,time_ms";

impl BenchRow {
    pub fn to_csv(&self) -> String {
        let opt = |q: &Option<Rational>| q.as_ref().map(|q| q.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{:.3}",
            self.instance,
            self.algorithm,
            self.t,
            self.cost,
            opt(&self.lower_bound),
            opt(&self.opt),
            opt(&self.ratio),
            opt(&self.theta),
            self.time_ms
        )
    }
}

fn ratio(num: &Rational, den: &Rational) -> Option<Rational> {
    if *den == Rational::from_integer(0.into()) {
        (num == den).then(|| Rational::from_integer(1.into()))
    } else {
        Some(num / den)
    }
}

/// Rows for one bipartite instance (split instances run on their shadow).
/// Deletion ratios are cost/OPT; the max-subgraph ratio is OPT_max/weight.
pub fn bench_instance(
    name: &str,
    g: &BipartiteGraph,
    algs: &[Algorithm],
    limits: &OracleLimits,
    timing: bool,
) -> Result<Vec<BenchRow>, CliError> {
    let opt = oracle::exact_min_osbcd_with(g, limits).ok().map(|(_, c)| c);
    let mut rows = Vec::new();
    for &alg in algs {
        let start = Instant::now();
        let row = if alg == Algorithm::MaxSubgraph {
            let o = solvers::max_subgraph_solve(g);
            let opt_max = opt.as_ref().map(|c| g.total_weight() - c);
            BenchRow {
                instance: name.to_string(),
                algorithm: alg,
                t: g.t(),
                ratio: opt_max.as_ref().and_then(|m| ratio(m, &o.weight)),
                cost: o.weight,
                lower_bound: None,
                opt: opt_max,
                theta: None,
                time_ms: 0.0,
            }
        } else {
            let r = match solvers::solve(g, alg, limits) {
                Ok(r) => r,
                Err(SolveError::Oracle(_)) => continue,
                Err(e) => return Err(e.into()),
            };
            BenchRow {
                instance: name.to_string(),
                algorithm: alg,
                t: g.t(),
                ratio: opt.as_ref().and_then(|o| ratio(&r.cost, o)),
                cost: r.cost,
                lower_bound: Some(r.dual_lower_bound),
                opt: opt.clone(),
                theta: r.theta,
                time_ms: 0.0,
            }
        };
        rows.push(BenchRow { time_ms: if timing { millis(start.elapsed()) } else { 0.0 }, ..row });
    }
    Ok(rows)
}

fn shadow(instance: Instance) -> Option<BipartiteGraph> {
    match instance {
        Instance::Bipartite(g) => Some(g),
        Instance::Split(h) => Some(split_shadow(&h)),
        Instance::Hypergraph(_) => None,
    }
}

fn split_shadow(h: &SplitGraph) -> BipartiteGraph {
    reductions::split_to_osbcd(h).0
}

fn cmd_bench(a: BenchArgs) -> Result<(), CliError> {
    let limits = OracleLimits { max_depth: a.max_depth, ..OracleLimits::default() };
    let entries = fs::read_dir(&a.suite).map_err(|e| CliError::Input(format!("{}: {e}", a.suite.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_none_or(|x| x != "map"))
        .collect();
    files.sort();
    let mut rows: Vec<BenchRow> = files
        .par_iter()
        .map(|path| -> Result<Vec<BenchRow>, CliError> {
            let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            match shadow(load(path)?) {
                Some(g) => bench_instance(&name, &g, &a.algs, &limits, !a.no_timing),
                None => Ok(Vec::new()),
            }
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    rows.sort_by(|x, y| (&x.instance, x.algorithm).cmp(&(&y.instance, y.algorithm)));
    let mut text = String::from(CSV_HEADER);
    text.push('\n');
    for r in &rows {
        text.push_str(&r.to_csv());
        text.push('\n');
    }
    write_file(&a.csv, &text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::g1;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(OracleError::DepthExceeded { limit: 3 }).exit_code(), 3);
        assert_eq!(CliError::Input(String::new()).exit_code(), 2);
        assert_eq!(CliError::Infeasible(String::new()).exit_code(), 4);
        assert_eq!(CliError::Internal(String::new()).exit_code(), 1);
    }

    #[test]
    fn bench_rows_for_g1() {
        let rows = bench_instance("g1", &g1(), &Algorithm::ALL, &OracleLimits::default(), false).unwrap();
        assert_eq!(rows.len(), 4);
        let one = Rational::from_integer(1.into());
        for r in &rows {
            assert_eq!(r.ratio.as_ref(), Some(&one), "{}", r.algorithm);
        }
        assert_eq!(rows[0].to_csv(), "g1,primal-dual,3,1,1,1,1,1,0.000");
        assert_eq!(rows[3].to_csv(), "g1,max-subgraph,3,4,,4,1,,0.000");
    }

    #[test]
    fn report_text_lines() {
        let r = solvers::primal_dual_solve(&g1());
        let text = report_text(&r, false);
        assert!(text.contains("solution 1\ncost 1\nlower_bound 1\ntheta 1\n"));
        assert!(text.ends_with("time_ms 0.000\n"));
    }
}
