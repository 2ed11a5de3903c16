//! Command-line driver behind the `curvflow` binary.
//!
//! Every command computes all of its outputs in memory first and then
//! commits them with temp-file-then-rename, so a failed run leaves nothing
//! half-written in the output directory.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::curvature::{all_edge_curvatures, CurvatureKind};
use crate::diagnostics::{self, compare_profiles, DecayProfile};
use crate::error::{Error, Result};
use crate::generators;
use crate::graph::{edge_list_string, load_edge_list, DirectedPolicy, Graph, LoadedGraph, NodeLabelMap};
use crate::sdrf::{run_sdrf, RewireTrace, SdrfConfig};

/// Environment variable capping diagnostic matrix memory, in bytes (`k`,
/// `m`, `g` binary suffixes accepted).
pub const MEM_BUDGET_ENV: &str = "CURVFLOW_MEM_BUDGET";

const BUILTIN_DATASETS: &str = include_str!("../configs/datasets.toml");

#[derive(Debug, Parser)]
#[command(
    name = "curvflow",
    version,
    about = "Edge curvature, SDRF rewiring and over-squashing diagnostics"
)]
pub struct Cli {
    /// Worker threads for curvature scans and matrix products.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write per-edge curvature CSVs.
    Curvature(CurvatureArgs),
    /// Rewire a graph with stochastic discrete Ricci flow.
    Rewire(RewireArgs),
    /// Minimum nonzero entries of powers of the normalized augmented adjacency.
    Diagnose(DiagnoseArgs),
    /// Time one rewiring run per (dataset, curvature kind).
    Bench(BenchArgs),
    /// Write a synthetic graph as an edge list.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = ".")]
    pub output: PathBuf,
    /// Fail on inputs mixing reciprocated and one-way arcs instead of symmetrizing.
    #[arg(long)]
    pub reject_directed: bool,
    /// Keep every connected component instead of the largest one.
    #[arg(long)]
    pub all_components: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CurvatureArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[arg(long, default_value = "all")]
    pub kind: KindSelection,
}

#[derive(Debug, Clone, Args)]
pub struct SdrfArgs {
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long = "max-iter")]
    pub max_iter: Option<usize>,
    /// Curvature above which the maximum-curvature edge is removed.
    #[arg(long, conflicts_with = "no_removal")]
    pub removal_bound: Option<f64>,
    /// Disable removal even if the dataset config sets a bound.
    #[arg(long)]
    pub no_removal: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Dataset name for the hyperparameter table (defaults to the input file stem).
    #[arg(long)]
    pub dataset: Option<String>,
    /// Alternative hyperparameter table (TOML).
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RewireArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[arg(long, default_value = "bfc")]
    pub kind: CurvatureKind,
    #[command(flatten)]
    pub sdrf: SdrfArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DiagnoseArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[arg(long, default_value_t = 50)]
    pub max_power: usize,
    /// Rewired graph to compare against the input.
    #[arg(long)]
    pub compare: Option<PathBuf>,
    /// Powers reported in the comparison.
    #[arg(long, value_delimiter = ',', default_values_t = [5, 10, 20, 40])]
    pub powers: Vec<usize>,
    /// Smallest power that must not regress for `improved` to hold.
    #[arg(long, default_value_t = 1)]
    pub threshold_power: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Edge-list files; repeat for several datasets.
    #[arg(long, required = true)]
    pub input: Vec<PathBuf>,
    #[arg(long, default_value = ".")]
    pub output: PathBuf,
    /// Curvature kinds; repeat or separate with commas.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub kind: Vec<KindSelection>,
    #[command(flatten)]
    pub sdrf: SdrfArgs,
    /// Free-form machine description recorded in the report.
    #[arg(long, default_value = "")]
    pub note: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Clique,
    Path,
    Cycle,
    Star,
    Tree,
    CrossTree,
    Grid,
    Barbell,
    Er,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Node count (clique, path, cycle, er), leaves (star) or clique size (barbell).
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 0.1)]
    pub p: f64,
    #[arg(long, default_value_t = 3)]
    pub depth: u32,
    #[arg(long, default_value_t = 4)]
    pub rows: usize,
    #[arg(long, default_value_t = 4)]
    pub cols: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = ".")]
    pub output: PathBuf,
    /// Output file name (defaults to `<family>.edgelist`).
    #[arg(long)]
    pub name: Option<String>,
}

/// One or all curvature kinds, as accepted by `--kind`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KindSelection(pub Vec<CurvatureKind>);

impl std::str::FromStr for KindSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("all") {
            Ok(KindSelection(CurvatureKind::ALL.to_vec()))
        } else {
            Ok(KindSelection(vec![s.parse()?]))
        }
    }
}

/// Fully resolved parameters for one command invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub output_dir: PathBuf,
    pub directed_policy: DirectedPolicy,
    pub largest_component: bool,
    pub kinds: Vec<CurvatureKind>,
    pub tau: f64,
    pub max_iterations: usize,
    pub removal_bound: Option<f64>,
    pub seed: u64,
    pub max_power: usize,
    pub compare: Option<PathBuf>,
    pub powers: Vec<usize>,
    pub threshold_power: usize,
    pub memory_budget: u64,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, output_dir: impl Into<PathBuf>) -> Self {
        RunConfig {
            input: input.into(),
            output_dir: output_dir.into(),
            directed_policy: DirectedPolicy::Symmetrize,
            largest_component: true,
            kinds: CurvatureKind::ALL.to_vec(),
            tau: 163.0,
            max_iterations: 100,
            removal_bound: None,
            seed: 0,
            max_power: 50,
            compare: None,
            powers: vec![5, 10, 20, 40],
            threshold_power: 1,
            memory_budget: diagnostics::DEFAULT_MEMORY_BUDGET,
        }
    }

    fn from_io(io: &InputArgs) -> Self {
        let mut cfg = RunConfig::new(&io.input, &io.output);
        if io.reject_directed {
            cfg.directed_policy = DirectedPolicy::RejectDirected;
        }
        cfg.largest_component = !io.all_components;
        cfg
    }

    pub fn sdrf_config(&self, kind: CurvatureKind) -> SdrfConfig {
        SdrfConfig {
            kind,
            tau: self.tau,
            max_iterations: self.max_iterations,
            removal_bound: self.removal_bound,
            seed: self.seed,
        }
    }
}

/// SDRF hyperparameters for one dataset.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DatasetParams {
    pub max_iterations: Option<usize>,
    pub tau: Option<f64>,
    pub removal_bound: Option<f64>,
}

/// Per-dataset hyperparameter table keyed by lowercase dataset name.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DatasetTable(BTreeMap<String, DatasetParams>);

impl DatasetTable {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_DATASETS).expect("bundled dataset table parses")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, DatasetParams> =
            toml::from_str(text).map_err(|e| Error::InvalidConfig(format!("dataset table: {e}")))?;
        Ok(DatasetTable(
            raw.into_iter().map(|(k, v)| (k.to_lowercase(), v)).collect(),
        ))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn get(&self, name: &str) -> Option<&DatasetParams> {
        self.0.get(&name.to_lowercase())
    }
}

fn dataset_name(explicit: Option<&str>, input: &Path) -> String {
    explicit
        .map(str::to_owned)
        .or_else(|| input.file_stem().map(|s| s.to_string_lossy().into_owned()))
        .unwrap_or_default()
}

/// Applies the precedence flags > dataset table > defaults.
fn apply_sdrf_args(cfg: &mut RunConfig, args: &SdrfArgs, table: &DatasetTable, dataset: &str) {
    if let Some(p) = table.get(dataset) {
        if let Some(v) = p.max_iterations {
            cfg.max_iterations = v;
        }
        if let Some(v) = p.tau {
            cfg.tau = v;
        }
        cfg.removal_bound = p.removal_bound;
    }
    if let Some(v) = args.max_iter {
        cfg.max_iterations = v;
    }
    if let Some(v) = args.tau {
        cfg.tau = v;
    }
    if args.removal_bound.is_some() {
        cfg.removal_bound = args.removal_bound;
    }
    if args.no_removal {
        cfg.removal_bound = None;
    }
    cfg.seed = args.seed;
}

fn dataset_table(args: &SdrfArgs) -> Result<DatasetTable> {
    match &args.config {
        Some(path) => DatasetTable::load(path),
        None => Ok(DatasetTable::builtin()),
    }
}

/// Parses a byte count such as `4096`, `512m` or `4g`.
pub fn parse_memory_budget(text: &str) -> Result<u64> {
    let t = text.trim().to_ascii_lowercase();
    let t = t.strip_suffix("ib").or_else(|| t.strip_suffix('b')).unwrap_or(&t);
    let (digits, shift) = match t.chars().last() {
        Some('k') => (&t[..t.len() - 1], 10),
        Some('m') => (&t[..t.len() - 1], 20),
        Some('g') => (&t[..t.len() - 1], 30),
        _ => (t, 0),
    };
    let base: u64 = digits
        .trim()
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("{MEM_BUDGET_ENV}: cannot parse `{text}`")))?;
    base.checked_mul(1 << shift)
        .ok_or_else(|| Error::InvalidConfig(format!("{MEM_BUDGET_ENV}: `{text}` overflows")))
}

fn memory_budget_from_env() -> Result<u64> {
    match std::env::var(MEM_BUDGET_ENV) {
        Ok(v) => parse_memory_budget(&v),
        Err(_) => Ok(diagnostics::DEFAULT_MEMORY_BUDGET),
    }
}

fn load(path: &Path, cfg: &RunConfig) -> Result<LoadedGraph> {
    let loaded = load_edge_list(path, cfg.directed_policy)?;
    Ok(if cfg.largest_component {
        loaded.into_largest_component()
    } else {
        loaded
    })
}

/// Writes every file to a temporary sibling first and renames only once all
/// of them were written.
pub fn write_outputs_atomically(dir: &Path, files: &[(String, Vec<u8>)]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut staged = Vec::with_capacity(files.len());
    for (name, bytes) in files {
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
        tmp.write_all(bytes).map_err(|e| Error::io(tmp.path(), e))?;
        tmp.as_file().sync_all().map_err(|e| Error::io(tmp.path(), e))?;
        staged.push((tmp, dir.join(name)));
    }
    let mut written = Vec::with_capacity(staged.len());
    for (tmp, target) in staged {
        tmp.persist(&target).map_err(|e| Error::io(&target, e.error))?;
        written.push(target);
    }
    Ok(written)
}

/// `%.12g`-style formatting.
pub fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_owned()
        } else {
            s.to_owned()
        }
    };
    if exp < -5 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{v:.decimals$}"))
    }
}

/// `u,v,kind,value` rows for every canonical edge.
pub fn curvature_csv(g: &Graph, labels: &NodeLabelMap, kind: CurvatureKind) -> String {
    let mut out = String::from("u,v,kind,value\n");
    for ec in all_edge_curvatures(g, kind) {
        let value = if kind.is_integer_valued() {
            format!("{}", ec.value as i64)
        } else {
            format_significant(ec.value, 12)
        };
        let lu = labels.label(ec.u).unwrap_or("?");
        let lv = labels.label(ec.v).unwrap_or("?");
        let _ = writeln!(out, "{lu},{lv},{kind},{value}");
    }
    out
}

pub fn cmd_curvature(cfg: &RunConfig) -> Result<String> {
    let loaded = load(&cfg.input, cfg)?;
    let files: Vec<(String, Vec<u8>)> = cfg
        .kinds
        .iter()
        .map(|&kind| {
            (
                format!("curvature_{kind}.csv"),
                curvature_csv(&loaded.graph, &loaded.labels, kind).into_bytes(),
            )
        })
        .collect();
    let written = write_outputs_atomically(&cfg.output_dir, &files)?;
    Ok(format!(
        "{} nodes, {} edges; wrote {}",
        loaded.graph.node_count(),
        loaded.graph.edge_count(),
        display_paths(&written)
    ))
}

/// Trace file contents: the trace plus the labels its node indices refer to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceDocument {
    #[serde(flatten)]
    pub trace: RewireTrace,
    pub node_labels: Vec<String>,
}

pub fn cmd_rewire(cfg: &RunConfig) -> Result<String> {
    let kind = *cfg
        .kinds
        .first()
        .ok_or_else(|| Error::InvalidConfig("rewire needs a curvature kind".into()))?;
    let loaded = load(&cfg.input, cfg)?;
    let (rewired, trace) = run_sdrf(&loaded.graph, &cfg.sdrf_config(kind))?;
    let summary = format!(
        "{kind}: {} added, {} removed, {:?} after {} steps",
        trace.edges_added(),
        trace.edges_removed(),
        trace.termination,
        trace.counts.steps
    );
    let doc = TraceDocument {
        trace,
        node_labels: loaded.labels.labels().to_vec(),
    };
    let mut json = serde_json::to_vec_pretty(&doc)?;
    json.push(b'\n');
    let files = vec![
        (
            "rewired.edgelist".to_owned(),
            edge_list_string(&rewired, &loaded.labels).into_bytes(),
        ),
        ("trace.json".to_owned(), json),
    ];
    let written = write_outputs_atomically(&cfg.output_dir, &files)?;
    Ok(format!("{summary}; wrote {}", display_paths(&written)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    #[serde(flatten)]
    pub comparison: diagnostics::ProfileComparison,
    pub underflow_suspect_before: Vec<usize>,
    pub underflow_suspect_after: Vec<usize>,
}

pub fn cmd_diagnose(cfg: &RunConfig) -> Result<String> {
    let before_graph = load(&cfg.input, cfg)?;
    let before = diagnostics::min_nonzero_powers_with_budget(&before_graph.graph, cfg.max_power, cfg.memory_budget)?;
    let mut files = vec![("profile.csv".to_owned(), before.to_csv().into_bytes())];
    let mut summary = profile_summary(&before);

    if let Some(other) = &cfg.compare {
        let after_graph = load(other, cfg)?;
        let after = diagnostics::min_nonzero_powers_with_budget(&after_graph.graph, cfg.max_power, cfg.memory_budget)?;
        let powers: Vec<usize> = cfg.powers.iter().copied().filter(|&p| p <= cfg.max_power).collect();
        let comparison = compare_profiles(&before, &after, &powers, cfg.threshold_power)?;
        let _ = write!(summary, "; improved = {}", comparison.improved);
        let report = ComparisonReport {
            comparison,
            underflow_suspect_before: before.underflow_suspects(),
            underflow_suspect_after: after.underflow_suspects(),
        };
        let mut json = serde_json::to_vec_pretty(&report)?;
        json.push(b'\n');
        files.push(("profile_compare.csv".to_owned(), after.to_csv().into_bytes()));
        files.push(("comparison.json".to_owned(), json));
    }
    let written = write_outputs_atomically(&cfg.output_dir, &files)?;
    Ok(format!("{summary}; wrote {}", display_paths(&written)))
}

fn profile_summary(p: &DecayProfile) -> String {
    let mut s = format!("{} powers", p.powers.len());
    if let (Some(first), Some(last)) = (p.values.first(), p.values.last()) {
        let _ = write!(
            s,
            ", min nonzero {} at d=1 to {} at d={}",
            diagnostics::format_sci(*first),
            diagnostics::format_sci(*last),
            p.powers.last().unwrap()
        );
    }
    let suspects = p.underflow_suspects();
    if !suspects.is_empty() {
        let _ = write!(s, ", underflow suspect from d={}", suspects[0]);
    }
    s
}

/// Wall-clock time of one rewiring run, curvature computation included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchCell {
    pub dataset: String,
    pub kind: CurvatureKind,
    pub seconds: Option<f64>,
    pub edges_added: usize,
    pub edges_removed: usize,
    /// `ok` or the error that stopped the run.
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub cells: Vec<BenchCell>,
    pub threads: usize,
    pub note: String,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("dataset,kind,seconds,status,edges_added,edges_removed,threads,note\n");
        for c in &self.cells {
            let secs = c.seconds.map(|s| format!("{s:.6}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{secs},{},{},{},{},{}",
                csv_field(&c.dataset),
                c.kind,
                csv_field(&c.status),
                c.edges_added,
                c.edges_removed,
                self.threads,
                csv_field(&self.note)
            );
        }
        out
    }

    pub fn seconds(&self, dataset: &str, kind: CurvatureKind) -> Option<f64> {
        self.cells
            .iter()
            .find(|c| c.dataset == dataset && c.kind == kind)
            .and_then(|c| c.seconds)
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// Times `run_sdrf` alone with a monotonic clock.
pub fn time_rewire(g: &Graph, config: &SdrfConfig) -> Result<(f64, RewireTrace)> {
    let start = Instant::now();
    let (_, trace) = run_sdrf(g, config)?;
    Ok((start.elapsed().as_secs_f64(), trace))
}

/// One timed run per (dataset, kind). A failed cell is recorded and the
/// remaining cells still run.
pub fn bench_graphs(
    datasets: impl IntoIterator<Item = (String, Result<Graph>, SdrfConfig)>,
    kinds: &[CurvatureKind],
    note: &str,
) -> BenchReport {
    let mut cells = Vec::new();
    for (name, graph, base) in datasets {
        for &kind in kinds {
            let config = SdrfConfig { kind, ..base.clone() };
            let outcome = graph
                .as_ref()
                .map_err(|e| e.to_string())
                .and_then(|g| time_rewire(g, &config).map_err(|e| e.to_string()));
            cells.push(match outcome {
                Ok((secs, trace)) => BenchCell {
                    dataset: name.clone(),
                    kind,
                    seconds: Some(secs),
                    edges_added: trace.edges_added(),
                    edges_removed: trace.edges_removed(),
                    status: "ok".into(),
                },
                Err(msg) => BenchCell {
                    dataset: name.clone(),
                    kind,
                    seconds: None,
                    edges_added: 0,
                    edges_removed: 0,
                    status: format!("failed: {msg}"),
                },
            });
        }
    }
    BenchReport {
        cells,
        threads: rayon::current_num_threads(),
        note: note.to_owned(),
    }
}

pub fn cmd_bench(inputs: &[PathBuf], cfg: &RunConfig, sdrf: &SdrfArgs, note: &str) -> Result<String> {
    let mut kinds: Vec<CurvatureKind> = Vec::new();
    for k in &cfg.kinds {
        if !kinds.contains(k) {
            kinds.push(*k);
        }
    }
    if kinds.len() < 2 {
        return Err(Error::InvalidConfig("bench needs at least two curvature kinds".into()));
    }
    let table = dataset_table(sdrf)?;
    let datasets: Vec<_> = inputs
        .iter()
        .map(|path| {
            let name = dataset_name(None, path);
            let mut per = cfg.clone();
            apply_sdrf_args(&mut per, sdrf, &table, sdrf.dataset.as_deref().unwrap_or(&name));
            let graph = load(path, &per).map(|l| l.graph);
            (name, graph, per.sdrf_config(kinds[0]))
        })
        .collect();
    let report = bench_graphs(datasets, &kinds, note);
    let failed = report.cells.iter().filter(|c| c.seconds.is_none()).count();
    let written = write_outputs_atomically(
        &cfg.output_dir,
        &[("bench.csv".to_owned(), report.to_csv().into_bytes())],
    )?;
    Ok(format!(
        "{} cells ({failed} failed); wrote {}",
        report.cells.len(),
        display_paths(&written)
    ))
}

pub fn generate(args: &GenArgs) -> Graph {
    match args.family {
        Family::Clique => generators::complete(args.n),
        Family::Path => generators::path(args.n),
        Family::Cycle => generators::cycle(args.n.max(3)),
        Family::Star => generators::star(args.n),
        Family::Tree => generators::binary_tree(args.depth),
        Family::CrossTree => generators::cross_linked_binary_tree(args.depth),
        Family::Grid => generators::grid(args.rows, args.cols),
        Family::Barbell => generators::barbell(args.n.max(2)),
        Family::Er => generators::erdos_renyi(args.n, args.p, args.seed),
    }
}

pub fn cmd_gen(args: &GenArgs) -> Result<String> {
    if !(0.0..=1.0).contains(&args.p) {
        return Err(Error::InvalidConfig(format!("p must lie in [0, 1], got {}", args.p)));
    }
    let g = generate(args);
    if g.edge_count() == 0 {
        return Err(Error::EmptyInput);
    }
    let family = args.family.to_possible_value().expect("no skipped variants");
    let name = args
        .name
        .clone()
        .unwrap_or_else(|| format!("{}.edgelist", family.get_name()));
    let labels = NodeLabelMap::identity(g.node_count());
    let written = write_outputs_atomically(&args.output, &[(name, edge_list_string(&g, &labels).into_bytes())])?;
    Ok(format!(
        "{} nodes, {} edges; wrote {}",
        g.node_count(),
        g.edge_count(),
        display_paths(&written)
    ))
}

fn display_paths(paths: &[PathBuf]) -> String {
    paths
        .iter()
        .map(|p| p.display().to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Executes a parsed command line and returns the summary line.
pub fn run(cli: Cli) -> Result<String> {
    if let Some(threads) = cli.threads {
        // a pool may already exist when called repeatedly in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match cli.command {
        Command::Curvature(args) => {
            let mut cfg = RunConfig::from_io(&args.io);
            cfg.kinds = args.kind.0;
            cmd_curvature(&cfg)
        }
        Command::Rewire(args) => {
            let mut cfg = RunConfig::from_io(&args.io);
            cfg.kinds = vec![args.kind];
            let table = dataset_table(&args.sdrf)?;
            let name = dataset_name(args.sdrf.dataset.as_deref(), &args.io.input);
            apply_sdrf_args(&mut cfg, &args.sdrf, &table, &name);
            cmd_rewire(&cfg)
        }
        Command::Diagnose(args) => {
            let mut cfg = RunConfig::from_io(&args.io);
            cfg.max_power = args.max_power;
            cfg.compare = args.compare;
            cfg.powers = args.powers;
            cfg.threshold_power = args.threshold_power;
            cfg.memory_budget = memory_budget_from_env()?;
            cmd_diagnose(&cfg)
        }
        Command::Bench(args) => {
            let mut cfg = RunConfig::new(args.input.first().cloned().unwrap_or_default(), &args.output);
            cfg.kinds = args.kind.iter().flat_map(|k| k.0.iter().copied()).collect();
            cmd_bench(&args.input, &cfg, &args.sdrf, &args.note)
        }
        Command::Gen(args) => cmd_gen(&args),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_significant(1.5, 12), "1.5");
        assert_eq!(format_significant(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_significant(-2.0 / 3.0, 12), "-0.666666666667");
        assert_eq!(format_significant(0.0, 12), "0");
        assert_eq!(format_significant(1e-7, 12), "1e-07");
        assert_eq!(format_significant(123456.0, 12), "123456");
    }

    #[test]
    fn memory_budget_parsing() {
        assert_eq!(parse_memory_budget("4096").unwrap(), 4096);
        assert_eq!(parse_memory_budget("2k").unwrap(), 2048);
        assert_eq!(parse_memory_budget("4G").unwrap(), 4 << 30);
        assert_eq!(parse_memory_budget("512MiB").unwrap(), 512 << 20);
        assert!(parse_memory_budget("lots").is_err());
    }

    #[test]
    fn builtin_table_has_dataset_hyperparameters() {
        let t = DatasetTable::builtin();
        let cora = t.get("Cora").unwrap();
        assert_eq!(cora.max_iterations, Some(100));
        assert_eq!(cora.tau, Some(163.0));
        assert_eq!(cora.removal_bound, Some(0.95));
        assert_eq!(t.get("texas").unwrap().tau, Some(22.0));
        assert_eq!(t.get("actor").unwrap().removal_bound, Some(0.0));
    }

    #[test]
    fn flags_override_dataset_table() {
        let table = DatasetTable::builtin();
        let args = SdrfArgs {
            tau: Some(5.0),
            max_iter: None,
            removal_bound: None,
            no_removal: false,
            seed: 3,
            dataset: None,
            config: None,
        };
        let mut cfg = RunConfig::new("cora.edgelist", ".");
        apply_sdrf_args(&mut cfg, &args, &table, "cora");
        assert_eq!(
            (cfg.tau, cfg.max_iterations, cfg.removal_bound, cfg.seed),
            (5.0, 100, Some(0.95), 3)
        );
        let args = SdrfArgs {
            no_removal: true,
            ..args
        };
        let mut cfg = RunConfig::new("x", ".");
        apply_sdrf_args(&mut cfg, &args, &table, "cora");
        assert_eq!(cfg.removal_bound, None);
        let mut cfg = RunConfig::new("unknown", ".");
        apply_sdrf_args(&mut cfg, &SdrfArgs { tau: None, ..args }, &table, "unknown");
        assert_eq!((cfg.tau, cfg.max_iterations), (163.0, 100));
    }

    #[test]
    fn kind_selection() {
        assert_eq!("all".parse::<KindSelection>().unwrap().0.len(), 4);
        assert_eq!(
            "haantjes".parse::<KindSelection>().unwrap().0,
            vec![CurvatureKind::Haantjes]
        );
    }
}
