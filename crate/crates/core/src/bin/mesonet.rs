use std::collections::BTreeSet;
use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mesonet::corecheck::{self, CoreReport};
use mesonet::decomposition::{k_shell, s_shell, ShellMap};
use mesonet::generator::{BbvScope, TriadWeighting};
use mesonet::io::{self as mio, LabelSidecar};
use mesonet::manifest::RunManifest;
use mesonet::metrics::{self, profile_by_degree, Binning, ProfileQuantity, Quantity};
use mesonet::repro::{self, ShiftTrialSpec};
use mesonet::temporal::{parse_timed_edges, shift_analysis, SnapshotPair};
use mesonet::{generate, Error, LabeledGraph, Model, ModelParams};

#[derive(Parser)]
#[command(name = "mesonet", version, about = "Generate and analyze core-periphery scale-free networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grow a network and write its edge list and label sidecar.
    Generate(GenerateArgs),
    /// K-shell (or S-shell with --weighted) index of every node.
    Decompose(DecomposeArgs),
    /// Distributions, power-law fits and per-degree profiles.
    Metrics(MetricsArgs),
    /// Score shell-based core detection against the sidecar's core labels.
    Validate(ValidateArgs),
    /// Compare two cumulative snapshots of a timestamped edge list.
    Evolve(EvolveArgs),
    /// Run the multi-seed experiment suite and write every table and figure CSV.
    ReproPaper(ReproArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    A,
    B,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::A => Model::A,
            ModelArg::B => Model::B,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TriadArg {
    EdgeWeight,
    Strength,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    AllSteps,
    ArrivalsOnly,
}

/// Generator parameters. Each flag overrides the config file, which
/// overrides the built-in defaults.
#[derive(Args, Clone, Default)]
struct ParamFlags {
    /// JSON file with any subset of the generator parameters.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    /// Number of communities.
    #[arg(long)]
    c: Option<u32>,
    /// Seed clique size per community.
    #[arg(long)]
    n0: Option<u32>,
    /// Wiring probability between core nodes, in the seed graph and on promotion.
    #[arg(long)]
    p: Option<f64>,
    /// Links made by each arriving node.
    #[arg(long)]
    m: Option<u32>,
    /// Share of an arrival's links that stay inside its community.
    #[arg(long)]
    f: Option<f64>,
    /// Per-step probability of promoting a periphery node to the core.
    #[arg(long)]
    q: Option<f64>,
    /// Per-node, per-step probability of a triad link.
    #[arg(long)]
    r: Option<f64>,
    /// Weight of a new edge (model B).
    #[arg(long)]
    w0: Option<f64>,
    /// Load spread over a node's edges when it gains a link (model B).
    #[arg(long)]
    delta: Option<f64>,
    /// Node arrivals after the seed graph.
    #[arg(long, conflicts_with = "nodes")]
    steps: Option<u64>,
    /// Final node count; sets the number of steps.
    #[arg(long)]
    nodes: Option<u64>,
    /// Random seed; equal parameters and seed give identical output.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    triad_weighting: Option<TriadArg>,
    #[arg(long, value_enum)]
    bbv_scope: Option<ScopeArg>,
}

impl ParamFlags {
    fn resolve(&self) -> Result<ModelParams, Failure> {
        let mut p = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
                serde_json::from_str::<ModelParams>(&text)
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
            }
            None => ModelParams::default(),
        };
        if let Some(v) = self.model {
            p.model = v.into();
        }
        macro_rules! set {
            ($($field:ident),*) => { $(if let Some(v) = self.$field { p.$field = v; })* };
        }
        set!(c, n0, p, m, f, q, r, w0, delta, steps, seed);
        if let Some(t) = self.triad_weighting {
            p.triad_weighting = match t {
                TriadArg::EdgeWeight => TriadWeighting::EdgeWeight,
                TriadArg::Strength => TriadWeighting::Strength,
            };
        }
        if let Some(s) = self.bbv_scope {
            p.bbv_scope = match s {
                ScopeArg::AllSteps => BbvScope::AllSteps,
                ScopeArg::ArrivalsOnly => BbvScope::ArrivalsOnly,
            };
        }
        if let Some(n) = self.nodes {
            p = p.with_nodes(n)?;
        }
        p.validate()?;
        Ok(p)
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    params: ParamFlags,
    /// Output prefix: writes PREFIX.tsv, PREFIX.json and
    /// PREFIX.manifest.json. Without it the edge list goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Where a pipeline command puts its files. Without `--out-dir` the single
/// primary table is printed to stdout and no manifest is written.
#[derive(Args)]
struct OutArgs {
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Prefix of every output file name; defaults to the input file stem.
    #[arg(long)]
    run_id: Option<String>,
}

#[derive(Args)]
struct InputArgs {
    /// Edge list, `u v [w]` per line.
    #[arg(long = "in")]
    input: PathBuf,
    /// JSON label sidecar written by `generate`.
    #[arg(long)]
    labels: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Strength-based S-shells instead of K-shells.
    #[arg(long)]
    weighted: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Degree,
    Strength,
    #[value(alias = "edge_weight")]
    EdgeWeight,
    Cc,
    Wcc,
    Knn,
    Wknn,
    #[value(alias = "strength_profile")]
    StrengthProfile,
}

impl MetricArg {
    fn file_tag(self) -> &'static str {
        match self {
            MetricArg::Degree => "degree",
            MetricArg::Strength => "strength",
            MetricArg::EdgeWeight => "edge_weight",
            MetricArg::Cc => "cc",
            MetricArg::Wcc => "wcc",
            MetricArg::Knn => "knn",
            MetricArg::Wknn => "wknn",
            MetricArg::StrengthProfile => "strength_profile",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BinningArg {
    Raw,
    Log,
}

#[derive(Args)]
struct MetricsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Metrics to compute; several may be given with --out-dir.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "degree")]
    metric: Vec<MetricArg>,
    #[arg(long, value_enum, default_value = "log")]
    binning: BinningArg,
    /// Ratio between consecutive log-bin edges.
    #[arg(long, default_value_t = metrics::distribution::LOG_BIN_RATIO)]
    bin_ratio: f64,
    /// Lower cutoff of power-law fits. Defaults to m, m*w0 or w0 for
    /// degree, strength and edge weight, taking m and w0 from the sidecar's
    /// recorded parameters when present.
    #[arg(long)]
    x_min: Option<f64>,
    /// Skip power-law fitting.
    #[arg(long)]
    no_fit: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    labels: PathBuf,
    /// Share of nodes expected in the core.
    #[arg(long, default_value_t = repro::CORE_FRACTION)]
    fraction: f64,
    #[arg(long)]
    weighted: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct EvolveArgs {
    /// Timestamped edge list, `u v [w] t` per line.
    #[arg(long = "in")]
    input: PathBuf,
    /// Last timestamp of the first snapshot.
    #[arg(long, allow_hyphen_values = true)]
    t1: i64,
    /// Last timestamp of the second snapshot.
    #[arg(long, allow_hyphen_values = true)]
    t2: i64,
    /// Use weights and S-shell cores.
    #[arg(long)]
    weighted: bool,
    #[arg(long, default_value_t = mesonet::temporal::DEFAULT_CORE_FRACTION)]
    fraction: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct ReproArgs {
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long, default_value = "repro")]
    run_id: String,
    /// Concurrent generator runs; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_delimiter = ',', default_values_t = repro::SWEEP_SIZES)]
    sizes: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_values_t = repro::SWEEP_SEEDS)]
    seeds: Vec<u64>,
    /// Network size of the exponent, profile and delta-comparison runs.
    #[arg(long, default_value_t = 20_000)]
    reference_nodes: u64,
    /// Number of synthetic core-shift trials.
    #[arg(long, default_value_t = 20)]
    shift_trials: u64,
}

/// A failed command: exit code 1 for usage problems, 2 for data problems.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: String) -> Self {
        Self { code: 1, message }
    }

    fn data(message: String) -> Self {
        Self { code: 2, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self { code: if e.is_usage() { 1 } else { 2 }, message: e.to_string() }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Metrics(a) => cmd_metrics(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Evolve(a) => cmd_evolve(a),
        Command::ReproPaper(a) => cmd_repro(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Files produced by one command, written only after everything has been
/// computed, followed by the manifest.
struct Outputs {
    dir: PathBuf,
    files: Vec<(PathBuf, Vec<u8>)>,
}

impl Outputs {
    fn new(dir: &Path) -> Self {
        Self { dir: dir.to_path_buf(), files: Vec::new() }
    }

    fn add(&mut self, name: String, contents: impl Into<Vec<u8>>) {
        self.files.push((self.dir.join(name), contents.into()));
    }

    fn commit(self, mut manifest: RunManifest, started: Instant) -> CmdResult {
        let manifest_path = manifest.path_in(&self.dir);
        if manifest_path.exists() {
            return Err(Failure::data(format!(
                "{} already exists; choose another run id",
                manifest_path.display()
            )));
        }
        fs::create_dir_all(&self.dir).map_err(|e| Failure::data(format!("{}: {e}", self.dir.display())))?;
        for (path, bytes) in &self.files {
            mio::write_atomic(path, bytes)?;
            manifest.outputs.push(path.clone());
        }
        manifest.set_duration(started.elapsed());
        let path = manifest.write(&self.dir)?;
        eprintln!("wrote {} files, manifest {}", self.files.len(), path.display());
        Ok(())
    }
}

fn print_stdout(text: &str) -> CmdResult {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(Failure::data(e.to_string())),
    }
}

fn run_id_for(out: &OutArgs, input: &Path) -> String {
    out.run_id.clone().unwrap_or_else(|| {
        input.file_stem().map_or_else(|| "run".to_string(), |s| s.to_string_lossy().into_owned())
    })
}

fn load_graph(input: &InputArgs) -> Result<(LabeledGraph, Option<LabelSidecar>), Failure> {
    let labels = input.labels.as_deref().map(mio::read_labels).transpose()?;
    let file = fs::File::open(&input.input).map_err(|e| Failure::data(format!("{}: {e}", input.input.display())))?;
    let edges = mio::parse_edge_list(BufReader::new(file), &input.input)?;
    let g = mio::build_graph(&edges, labels.as_ref()).map_err(|e| Failure::data(e.to_string()))?;
    Ok((g, labels))
}

fn cmd_generate(args: GenerateArgs) -> CmdResult {
    let started = Instant::now();
    let params = args.params.resolve()?;
    let g = generate(&params)?;
    let edges = mio::edge_list_string(&g);
    let Some(prefix) = args.out else {
        return print_stdout(&edges);
    };
    let resolved = serde_json::to_value(&params).map_err(Error::from)?;
    let labels = mio::labels_string(&LabelSidecar::from_graph(&g, Some(resolved.clone())))?;
    let dir = prefix.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let run_id = prefix
        .file_name()
        .ok_or_else(|| Failure::usage(format!("bad output prefix {}", prefix.display())))?
        .to_string_lossy()
        .into_owned();
    let mut outputs = Outputs::new(dir);
    outputs.add(format!("{run_id}.tsv"), edges);
    outputs.add(format!("{run_id}.json"), labels);
    let mut manifest = RunManifest::new(&run_id, "generate");
    manifest.params = resolved;
    manifest.seed = Some(params.seed);
    manifest.inputs.extend(args.params.config.clone());
    outputs.commit(manifest, started)
}

fn shells(g: &LabeledGraph, weighted: bool) -> Result<ShellMap, Failure> {
    Ok(if weighted { s_shell(g)? } else { k_shell(g)? })
}

fn cmd_decompose(args: DecomposeArgs) -> CmdResult {
    let started = Instant::now();
    let (g, _) = load_graph(&args.input)?;
    let csv = shells(&g, args.weighted)?.to_csv();
    let Some(dir) = &args.out.out_dir else {
        return print_stdout(&csv);
    };
    let run_id = run_id_for(&args.out, &args.input.input);
    let mut outputs = Outputs::new(dir);
    outputs.add(format!("{run_id}.shells.csv"), csv);
    let mut manifest = RunManifest::new(&run_id, "decompose");
    manifest.params = json!({ "weighted": args.weighted });
    manifest.inputs = input_paths(&args.input);
    outputs.commit(manifest, started)
}

fn input_paths(input: &InputArgs) -> Vec<PathBuf> {
    std::iter::once(input.input.clone()).chain(input.labels.clone()).collect()
}

fn cmd_metrics(args: MetricsArgs) -> CmdResult {
    let started = Instant::now();
    if args.out.out_dir.is_none() && args.metric.len() != 1 {
        return Err(Failure::usage("several metrics need --out-dir".into()));
    }
    let (g, labels) = load_graph(&args.input)?;
    let params: ModelParams = labels
        .as_ref()
        .and_then(|l| l.params.clone())
        .and_then(|v| serde_json::from_value(v).ok())
        .unwrap_or_default();
    let binning = match args.binning {
        BinningArg::Raw => Binning::Raw,
        BinningArg::Log => Binning::Logarithmic { ratio: args.bin_ratio },
    };
    let mut tables = Vec::new();
    let mut fits = serde_json::Map::new();
    for &metric in &args.metric {
        let csv = match metric {
            MetricArg::Degree | MetricArg::Strength | MetricArg::EdgeWeight => {
                let quantity = match metric {
                    MetricArg::Degree => Quantity::Degree,
                    MetricArg::Strength => Quantity::Strength,
                    _ => Quantity::EdgeWeight,
                };
                let mut table = metrics::distribution(&g, quantity, binning)?;
                if !args.no_fit {
                    let x_min = args.x_min.unwrap_or_else(|| repro::default_x_min(&params, quantity));
                    match metrics::fit_quantity(&g, quantity, x_min) {
                        Ok(fit) => {
                            fits.insert(quantity.name().into(), serde_json::to_value(&fit).map_err(Error::from)?);
                            table.fit = Some(fit);
                        }
                        Err(e) => eprintln!("warning: no {} fit: {e}", quantity.name()),
                    }
                }
                table.to_csv()
            }
            profile => {
                let quantity = match profile {
                    MetricArg::Cc => ProfileQuantity::Cc,
                    MetricArg::Wcc => ProfileQuantity::Wcc,
                    MetricArg::Knn => ProfileQuantity::Knn,
                    MetricArg::Wknn => ProfileQuantity::Wknn,
                    _ => ProfileQuantity::Strength,
                };
                let prof = profile_by_degree(&g, quantity)?;
                if let Some(r) = prof.loglog_pearson {
                    fits.insert("strength_degree_loglog_pearson".into(), json!(r));
                }
                prof.to_csv()
            }
        };
        tables.push((metric.file_tag(), csv));
    }
    let Some(dir) = &args.out.out_dir else {
        return print_stdout(&tables[0].1);
    };
    let run_id = run_id_for(&args.out, &args.input.input);
    let mut outputs = Outputs::new(dir);
    for (tag, csv) in tables {
        outputs.add(format!("{run_id}.{tag}.csv"), csv);
    }
    let mut manifest = RunManifest::new(&run_id, "metrics");
    manifest.params = json!({
        "metrics": args.metric.iter().map(|m| m.file_tag()).collect::<Vec<_>>(),
        "binning": binning,
        "x_min": args.x_min,
        "fits": fits,
    });
    manifest.inputs = input_paths(&args.input);
    outputs.commit(manifest, started)
}

fn cmd_validate(args: ValidateArgs) -> CmdResult {
    let started = Instant::now();
    let input = InputArgs { input: args.input.clone(), labels: Some(args.labels.clone()) };
    let (g, labels) = load_graph(&input)?;
    let marked: BTreeSet<_> = labels.expect("labels were given").marked_core().into_iter().collect();
    let map = shells(&g, args.weighted)?;
    let report = corecheck::validate(&map, &marked, args.fraction)?;
    let table = format!("{}\n{}\n", CoreReport::TABLE_HEADER, report.table_row(g.node_count()));
    let Some(dir) = &args.out.out_dir else {
        return print_stdout(&table);
    };
    let run_id = run_id_for(&args.out, &args.input);
    let mut outputs = Outputs::new(dir);
    outputs.add(format!("{run_id}.validate.tsv"), table);
    let mut report_json = serde_json::to_string_pretty(&report).map_err(Error::from)?;
    report_json.push('\n');
    outputs.add(format!("{run_id}.validate.json"), report_json);
    let mut manifest = RunManifest::new(&run_id, "validate");
    manifest.params = json!({ "fraction": args.fraction, "weighted": args.weighted });
    manifest.inputs = input_paths(&input);
    outputs.commit(manifest, started)
}

fn cmd_evolve(args: EvolveArgs) -> CmdResult {
    let started = Instant::now();
    let file = fs::File::open(&args.input).map_err(|e| Failure::data(format!("{}: {e}", args.input.display())))?;
    let edges = parse_timed_edges(BufReader::new(file), &args.input)?;
    let pair = SnapshotPair::from_edges(&edges, args.t1, args.t2, args.weighted, args.fraction)?;
    let stats = shift_analysis(&pair);
    if stats.shifted_count() == 0 {
        eprintln!("warning: no node moved into the core between the snapshots");
    }
    let Some(dir) = &args.out.out_dir else {
        return print_stdout(&stats.to_csv());
    };
    let run_id = run_id_for(&args.out, &args.input);
    let mut outputs = Outputs::new(dir);
    outputs.add(format!("{run_id}.shift.csv"), stats.to_csv());
    outputs.add(format!("{run_id}.shift_nodes.csv"), stats.nodes_csv());
    let mut manifest = RunManifest::new(&run_id, "evolve");
    manifest.params = json!({
        "t1": args.t1,
        "t2": args.t2,
        "weighted": args.weighted,
        "fraction": args.fraction,
        "snapshot_nodes": [pair.g1.node_count(), pair.g2.node_count()],
        "unmatched_shifted": stats.unmatched,
        "summary": stats.summary(),
    });
    manifest.inputs = vec![args.input.clone()];
    outputs.commit(manifest, started)
}

fn cmd_repro(args: ReproArgs) -> CmdResult {
    let started = Instant::now();
    let id = &args.run_id;
    let mut outputs = Outputs::new(&args.out_dir);
    let mut summary = serde_json::Map::new();

    let sweeps = [
        ("efficiency_unweighted", ModelParams::model_a()),
        ("efficiency_weighted", ModelParams { delta: 0.6, ..ModelParams::model_b() }),
    ];
    for (tag, base) in sweeps {
        eprintln!("{tag}: {} sizes x {} seeds", args.sizes.len(), args.seeds.len());
        let rows = repro::efficiency_sweep(&base, &args.sizes, &args.seeds, repro::CORE_FRACTION, args.jobs)?;
        for r in &rows {
            eprintln!("  {} nodes: {:.2}%", r.nodes, r.mean_efficiency_pct);
        }
        summary.insert(
            tag.into(),
            rows.iter().map(|r| json!({ "nodes": r.nodes, "efficiency_pct": r.mean_efficiency_pct })).collect(),
        );
        outputs.add(format!("{id}.{tag}.csv"), repro::sweep_table_csv(&rows));
        outputs.add(format!("{id}.{tag}_runs.csv"), repro::sweep_runs_csv(&rows));
    }

    let n = args.reference_nodes;
    let mut delta_rows = Vec::new();
    for delta in [0.6, 1.5] {
        let base = ModelParams { delta, ..ModelParams::model_b() };
        let rows = repro::efficiency_sweep(&base, &[n], &args.seeds, repro::CORE_FRACTION, args.jobs)?;
        delta_rows.push(json!({ "delta": delta, "efficiency_pct": rows[0].mean_efficiency_pct }));
        outputs.add(format!("{id}.delta_{delta}_runs.csv"), repro::sweep_runs_csv(&rows));
    }
    summary.insert("delta_comparison".into(), delta_rows.into());

    eprintln!("exponent fits at {n} nodes");
    let mut exponent_runs = Vec::new();
    for model in [ModelParams::model_a(), ModelParams::model_b()] {
        let tasks: Vec<ModelParams> =
            args.seeds.iter().map(|&s| model.clone().with_nodes(n).map(|p| p.with_seed(s))).collect::<Result<_, _>>()?;
        let runs = repro::with_jobs(args.jobs, || {
            use rayon::prelude::*;
            tasks.par_iter().map(repro::exponent_run).collect::<Result<Vec<_>, _>>()
        })?;
        exponent_runs.extend(runs);
    }
    let medians: serde_json::Map<_, _> = [
        (Model::A, Quantity::Degree, "a_degree"),
        (Model::B, Quantity::Degree, "b_degree"),
        (Model::B, Quantity::Strength, "b_strength"),
        (Model::B, Quantity::EdgeWeight, "b_edge_weight"),
    ]
    .into_iter()
    .map(|(model, q, key)| {
        let gammas = exponent_runs.iter().filter(|r| r.model == model).filter_map(|r| r.fit(q)).map(|f| f.gamma());
        (key.to_string(), json!(repro::median(gammas)))
    })
    .collect();
    summary.insert("exponent_medians".into(), medians.into());
    outputs.add(format!("{id}.exponents.csv"), repro::exponent_csv(&exponent_runs));

    eprintln!("distributions and profiles at {n} nodes");
    let first_seed = args.seeds.first().copied().unwrap_or(1);
    for (tag, model) in [("a", ModelParams::model_a()), ("b", ModelParams::model_b())] {
        let params = model.with_nodes(n)?.with_seed(first_seed);
        let g = generate(&params)?;
        let quantities: &[Quantity] = if tag == "a" {
            &[Quantity::Degree]
        } else {
            &[Quantity::Degree, Quantity::Strength, Quantity::EdgeWeight]
        };
        for &q in quantities {
            let x_min = repro::default_x_min(&params, q);
            let (table, _) = metrics::distribution::fitted_distribution(&g, q, Binning::log(), x_min)?;
            outputs.add(format!("{id}.{tag}_{}.csv", q.name()), table.to_csv());
        }
        if tag == "b" {
            for q in ProfileQuantity::ALL {
                outputs.add(format!("{id}.b_{}_profile.csv", q.name()), profile_by_degree(&g, q)?.to_csv());
            }
            summary.insert("structure".into(), json!(repro::structure(&g)?));
        }
    }

    eprintln!("{} synthetic core-shift trials", args.shift_trials);
    let spec = ShiftTrialSpec::default();
    let mut passed = 0;
    let mut trial_rows = String::from("seed,matched,shifted_delta_core,control_delta_core,shifted_delta_total,control_delta_total\n");
    for seed in 1..=args.shift_trials {
        let params = ModelParams::model_a().with_seed(seed);
        if let Some(s) = repro::shift_trial(&params, spec)? {
            if s.shifted_delta_core > s.control_delta_core {
                passed += 1;
            }
            trial_rows.push_str(&format!(
                "{seed},{},{},{},{},{}\n",
                s.matched, s.shifted_delta_core, s.control_delta_core, s.shifted_delta_total, s.control_delta_total
            ));
        }
        if seed == 1 {
            let pair = SnapshotPair::synthetic(&params, spec.nodes - params.seed_nodes(), spec.growth, spec.fraction)?;
            outputs.add(format!("{id}.shift.csv"), shift_analysis(&pair).to_csv());
        }
    }
    summary.insert("shift_trials_passed".into(), json!([passed, args.shift_trials]));
    outputs.add(format!("{id}.shift_trials.csv"), trial_rows);

    let mut summary_text = serde_json::to_string_pretty(&summary).map_err(Error::from)?;
    summary_text.push('\n');
    print_stdout(&summary_text)?;
    outputs.add(format!("{id}.summary.json"), summary_text);
    let mut manifest = RunManifest::new(id, "repro-paper");
    manifest.params = json!({
        "sizes": args.sizes,
        "seeds": args.seeds,
        "reference_nodes": n,
        "core_fraction": repro::CORE_FRACTION,
        "jobs": args.jobs,
        "shift_trial": spec,
        "model_a": ModelParams::model_a(),
        "model_b": ModelParams::model_b(),
    });
    outputs.commit(manifest, started)
}
