//! Command-line front-end: argument definitions, subcommand implementations
//! and the mapping from failures to exit codes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use serde::{Deserialize, Serialize};

use gals::exec::map_indexed;
use gals::format::{parse_assignments, to_json, write_gml, write_partition, PartitionJson, RunResultJson};
use gals::rng::RngStream;
use gals::{
    modularity_q, newman_graph, nmi, nmi_labels, parse_edge_list, parse_ground_truth, parse_gml,
    run_gals, run_many, GaConfig, NewmanParams, Network, Partition,
};

#[derive(Debug, Parser)]
#[command(name = "gals", version, about = "Community detection by genetic algorithm with local search")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find communities in a network.
    Detect(DetectArgs),
    /// Print the modularity of a given partition.
    Eval(EvalArgs),
    /// Print the normalized mutual information of two partition files.
    Nmi(NmiArgs),
    /// Run a benchmark sweep and write one CSV row per run.
    Bench(BenchArgs),
    /// Generate a planted-partition benchmark graph and its ground truth.
    Gen(GenArgs),
    /// Average a bench CSV per sweep point.
    Summarize(SummarizeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Edgelist,
    Gml,
}

#[derive(Debug, Clone, Args)]
pub struct GaArgs {
    /// Generations per run.
    #[arg(long, default_value_t = 500)]
    pub iterations: usize,
    /// Population size.
    #[arg(long, default_value_t = 80)]
    pub mu: usize,
    /// Offspring per generation.
    #[arg(long, default_value_t = 60)]
    pub lambda: usize,
    /// Independent runs.
    #[arg(long, default_value_t = 1)]
    pub runs: usize,
    /// Random seed; drawn from the OS when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Record the best modularity every this many generations.
    #[arg(long, default_value_t = 1)]
    pub trace_every: usize,
    /// Build offspring on the current thread only.
    #[arg(long)]
    pub sequential: bool,
}

impl GaArgs {
    fn config(&self, seed: u64) -> GaConfig {
        GaConfig {
            iterations: self.iterations,
            mu: self.mu,
            lambda: self.lambda,
            seed,
            trace_every: self.trace_every,
            stagnation: None,
            parallel: !self.sequential,
        }
    }
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    pub network: PathBuf,
    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Partition file to score the result against.
    #[arg(long)]
    pub ground_truth: Option<PathBuf>,
    /// Directory for `partition.txt` and `result.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub ga: GaArgs,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub network: PathBuf,
    /// Partition as `node community` lines, or the JSON form (`.json`).
    pub partition: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct NmiArgs {
    pub first: PathBuf,
    pub second: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sweep {
    /// 4 groups of 32, `z_in = 16 − z_out`.
    ZOut,
    /// Groups of 100 with `z_in = 10`, `z_out = 6`.
    Groups,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub sweep: Sweep,
    /// Comma-separated sweep values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub values: Vec<f64>,
    /// Graphs per sweep point.
    #[arg(long, default_value_t = 10)]
    pub graphs: usize,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub ga: GaArgs,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 4)]
    pub groups: usize,
    #[arg(long, default_value_t = 32)]
    pub group_size: usize,
    #[arg(long, default_value_t = 12.0)]
    pub z_in: f64,
    #[arg(long, default_value_t = 4.0)]
    pub z_out: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Edgelist)]
    pub format: Format,
    /// Writes `<out>.txt` or `<out>.gml` plus `<out>.truth.txt`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SummarizeArgs {
    pub csv: PathBuf,
}

/// How a command failed, which fixes the process exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Input(anyhow::Error),
    Internal(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    pub fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Usage(e) | Failure::Input(e) | Failure::Internal(e) => e,
        }
    }
}

impl From<gals::Error> for Failure {
    fn from(e: gals::Error) -> Self {
        match e {
            gals::Error::InvalidParameter(_) => Failure::Usage(e.into()),
            _ => Failure::Input(e.into()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Input)
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents)
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(Failure::Input)
}

fn input<E: Into<anyhow::Error>>(path: &Path) -> impl FnOnce(E) -> Failure + '_ {
    move |e| Failure::Input(e.into().context(format!("in {}", path.display())))
}

fn detect_format(path: &Path, explicit: Option<Format>) -> Format {
    explicit.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("gml") => Format::Gml,
        _ => Format::Edgelist,
    })
}

pub fn load_network(path: &Path, format: Option<Format>) -> CliResult<Network> {
    let text = read(path)?;
    let parsed = match detect_format(path, format) {
        Format::Gml => parse_gml(&text),
        Format::Edgelist => parse_edge_list(&text),
    };
    parsed.map_err(input(path))
}

/// Reads a partition of `net` from text or, for `.json` files, JSON.
pub fn load_partition(path: &Path, net: &Network) -> CliResult<Partition> {
    let text = read(path)?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        let json: PartitionJson = gals::format::from_json(&text).map_err(input(path))?;
        json.to_partition(net).map_err(input(path))
    } else {
        parse_ground_truth(&text, net).map_err(input(path))
    }
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        use std::hash::{BuildHasher, Hasher};
        std::collections::hash_map::RandomState::new().build_hasher().finish()
    })
}

/// Runs a parsed command, writing human-readable output to `out`.
pub fn execute(cli: Cli, out: &mut dyn std::io::Write) -> CliResult<()> {
    let mut text = String::new();
    match cli.command {
        Command::Detect(args) => detect(args, &mut text)?,
        Command::Eval(args) => eval(args, &mut text)?,
        Command::Nmi(args) => nmi_cmd(args, &mut text)?,
        Command::Bench(args) => bench(args, &mut text)?,
        Command::Gen(args) => gen(args, &mut text)?,
        Command::Summarize(args) => summarize_cmd(args, &mut text)?,
    }
    out.write_all(text.as_bytes())
        .context("cannot write to stdout")
        .map_err(Failure::Internal)
}

fn detect(args: DetectArgs, out: &mut String) -> CliResult<()> {
    let net = load_network(&args.network, args.format)?;
    let truth = args
        .ground_truth
        .as_deref()
        .map(|p| load_partition(p, &net))
        .transpose()?;
    let seed = resolve_seed(args.ga.seed);
    let cfg = args.ga.config(seed);
    info!(
        "{}: n={} m={}, seed {seed}",
        args.network.display(),
        net.node_count(),
        net.edge_count()
    );
    let summary = run_many(&net, &cfg, args.ga.runs)?;
    let best = &summary.best;

    let _ = writeln!(out, "nodes {} edges {}", net.node_count(), net.edge_count());
    let _ = writeln!(out, "seed {seed}");
    let _ = writeln!(out, "Q {:.6}", best.best_q);
    let _ = writeln!(out, "communities {}", best.best_partition.community_count());
    if summary.runs > 1 {
        let _ = writeln!(
            out,
            "runs {} mean Q {:.6} std {:.6} min {:.6} max {:.6}",
            summary.runs, summary.mean_q, summary.std_q, summary.min_q, summary.max_q
        );
    }
    let _ = writeln!(out, "elapsed {:.1} ms/run", summary.mean_elapsed.as_secs_f64() * 1e3);
    if let Some(truth) = &truth {
        let score = nmi(&best.best_partition, truth)?;
        let truth_q = modularity_q(&net, truth)?;
        let _ = writeln!(out, "NMI {score:.6}");
        let _ = writeln!(out, "ground truth Q {truth_q:.6}");
    }

    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)
            .with_context(|| format!("cannot create {}", dir.display()))
            .map_err(Failure::Input)?;
        write(&dir.join("partition.txt"), &write_partition(&net, &best.best_partition))?;
        write(&dir.join("result.json"), &to_json(&RunResultJson::new(&net, best)))?;
        let _ = writeln!(out, "wrote {}", dir.display());
    }
    Ok(())
}

fn eval(args: EvalArgs, out: &mut String) -> CliResult<()> {
    let net = load_network(&args.network, args.format)?;
    let part = load_partition(&args.partition, &net)?;
    let q = modularity_q(&net, &part)?;
    let _ = writeln!(out, "communities {}", part.community_count());
    let _ = writeln!(out, "Q {q:.6}");
    Ok(())
}

/// Aligns two `node community` files by node token.
pub fn nmi_of_files(first: &str, second: &str) -> std::result::Result<f64, gals::Error> {
    let a = parse_assignments(first)?;
    let b = parse_assignments(second)?;
    let index: std::collections::HashMap<&str, &str> =
        b.iter().map(|(n, c)| (n.as_str(), c.as_str())).collect();
    if let Some((node, _)) = a.iter().find(|(n, _)| !index.contains_key(n.as_str())) {
        return Err(gals::Error::MissingNode(node.clone()));
    }
    if a.len() != b.len() {
        let known: std::collections::HashSet<&str> = a.iter().map(|(n, _)| n.as_str()).collect();
        let extra = b.iter().find(|(n, _)| !known.contains(n.as_str())).expect("sizes differ");
        return Err(gals::Error::UnknownNode(extra.0.clone()));
    }
    let mut ids = std::collections::HashMap::new();
    let mut id = |c: &str| {
        let next = ids.len();
        *ids.entry(c.to_string()).or_insert(next)
    };
    let left: Vec<usize> = a.iter().map(|(_, c)| id(c)).collect();
    let right: Vec<usize> = a.iter().map(|(n, _)| id(index[n.as_str()])).collect();
    nmi_labels(&left, &right)
}

fn nmi_cmd(args: NmiArgs, out: &mut String) -> CliResult<()> {
    let first = read(&args.first)?;
    let second = read(&args.second)?;
    let score = nmi_of_files(&first, &second)
        .map_err(|e| Failure::Input(anyhow!(e).context("comparing partition files")))?;
    let _ = writeln!(out, "NMI {score:.6}");
    Ok(())
}

/// One row of the bench CSV. The column order is part of the file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub point: f64,
    pub graph_idx: usize,
    pub run_idx: usize,
    pub nmi: f64,
    pub q: f64,
    pub elapsed_ms: f64,
    pub n: usize,
    pub m: usize,
}

pub const BENCH_HEADER: &str = "point,graph_idx,run_idx,nmi,q,elapsed_ms,n,m";

fn sweep_params(sweep: Sweep, value: f64, seed: u64) -> CliResult<NewmanParams> {
    match sweep {
        Sweep::ZOut => Ok(NewmanParams::accuracy(value, seed)),
        Sweep::Groups => {
            if value.fract() != 0.0 || value < 0.0 {
                return Err(Failure::Usage(anyhow!("group count {value} is not a whole number")));
            }
            Ok(NewmanParams::scaling(value as usize, seed))
        }
    }
}

/// Runs a full sweep. Rows come out ordered by point, graph and run.
pub fn bench_rows(args: &BenchArgs, seed: u64) -> CliResult<Vec<BenchRow>> {
    if args.values.is_empty() || args.graphs == 0 || args.ga.runs == 0 {
        return Err(Failure::Usage(anyhow!("sweep needs values, graphs and runs")));
    }
    let stream = RngStream::new(seed);
    let mut rows = Vec::new();
    for (p, &value) in args.values.iter().enumerate() {
        let graphs: Vec<_> = (0..args.graphs)
            .map(|g| sweep_params(args.sweep, value, stream.derive(&[p as u64, g as u64])))
            .collect::<CliResult<Vec<_>>>()?
            .iter()
            .map(newman_graph)
            .collect::<std::result::Result<_, _>>()?;
        let runs = args.ga.runs;
        let results = map_indexed(args.graphs * runs, !args.ga.sequential, |k| {
            let (g, r) = (k / runs, k % runs);
            let (net, truth) = &graphs[g];
            let cfg = GaConfig {
                parallel: false,
                ..args.ga.config(stream.derive(&[p as u64, g as u64, r as u64]))
            };
            let result = run_gals(net, &cfg)?;
            Ok::<_, gals::Error>(BenchRow {
                point: value,
                graph_idx: g,
                run_idx: r,
                nmi: nmi(&result.best_partition, truth)?,
                q: result.best_q,
                elapsed_ms: result.elapsed.as_secs_f64() * 1e3,
                n: net.node_count(),
                m: net.edge_count(),
            })
        });
        for row in results {
            rows.push(row?);
        }
        info!("sweep point {value} done");
    }
    Ok(rows)
}

pub fn rows_to_csv(rows: &[BenchRow]) -> CliResult<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).map_err(|e| Failure::Internal(e.into()))?;
    }
    let bytes = writer.into_inner().map_err(|e| Failure::Internal(anyhow!(e.to_string())))?;
    String::from_utf8(bytes).map_err(|e| Failure::Internal(e.into()))
}

fn bench(args: BenchArgs, out: &mut String) -> CliResult<()> {
    let seed = resolve_seed(args.ga.seed);
    args.ga.config(seed).validate()?;
    let csv = rows_to_csv(&bench_rows(&args, seed)?)?;
    match &args.out {
        Some(path) => {
            write(path, &csv)?;
            let _ = writeln!(out, "seed {seed}");
            let _ = writeln!(out, "wrote {}", path.display());
        }
        None => out.push_str(&csv),
    }
    Ok(())
}

/// Per-point means of a bench CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSummary {
    pub point: f64,
    pub rows: usize,
    pub mean_nmi: f64,
    pub mean_q: f64,
    pub mean_elapsed_ms: f64,
    pub mean_n: f64,
    pub mean_m: f64,
}

/// Groups rows by sweep point, in order of first appearance.
pub fn summarize(csv_text: &str) -> std::result::Result<Vec<PointSummary>, csv::Error> {
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let mut groups: Vec<(f64, Vec<BenchRow>)> = Vec::new();
    for row in reader.deserialize() {
        let row: BenchRow = row?;
        match groups.iter_mut().find(|(p, _)| p.to_bits() == row.point.to_bits()) {
            Some((_, rows)) => rows.push(row),
            None => groups.push((row.point, vec![row])),
        }
    }
    Ok(groups
        .into_iter()
        .map(|(point, rows)| {
            let k = rows.len() as f64;
            let mean = |f: fn(&BenchRow) -> f64| rows.iter().map(f).sum::<f64>() / k;
            PointSummary {
                point,
                rows: rows.len(),
                mean_nmi: mean(|r| r.nmi),
                mean_q: mean(|r| r.q),
                mean_elapsed_ms: mean(|r| r.elapsed_ms),
                mean_n: mean(|r| r.n as f64),
                mean_m: mean(|r| r.m as f64),
            }
        })
        .collect())
}

fn summarize_cmd(args: SummarizeArgs, out: &mut String) -> CliResult<()> {
    let text = read(&args.csv)?;
    let points = summarize(&text).map_err(input(&args.csv))?;
    let mut writer = csv::Writer::from_writer(Vec::new());
    for p in &points {
        writer.serialize(p).map_err(|e| Failure::Internal(e.into()))?;
    }
    let bytes = writer.into_inner().map_err(|e| Failure::Internal(anyhow!(e.to_string())))?;
    out.push_str(&String::from_utf8_lossy(&bytes));
    Ok(())
}

fn gen(args: GenArgs, out: &mut String) -> CliResult<()> {
    let params = NewmanParams {
        groups: args.groups,
        group_size: args.group_size,
        z_in: args.z_in,
        z_out: args.z_out,
        seed: args.seed,
    };
    let (net, truth) = newman_graph(&params)?;
    let (graph_path, graph_text, kept): (PathBuf, String, Vec<usize>) = match args.format {
        Format::Gml => (
            args.out.with_extension("gml"),
            write_gml(&net),
            (0..net.node_count()).collect(),
        ),
        Format::Edgelist => {
            let isolated = net.isolated_nodes();
            if !isolated.is_empty() {
                warn!(
                    "{} isolated nodes cannot appear in an edge list and are left out of the ground truth; use --format gml to keep them",
                    isolated.len()
                );
            }
            let kept = (0..net.node_count()).filter(|&i| net.degree(i) > 0).collect();
            (args.out.with_extension("txt"), net.to_edge_list(), kept)
        }
    };
    let truth_path = PathBuf::from(format!("{}.truth.txt", args.out.display()));
    let mut truth_text = String::new();
    for i in kept {
        let _ = writeln!(truth_text, "{} {}", net.name(i), truth.label(i));
    }
    write(&graph_path, &graph_text)?;
    write(&truth_path, &truth_text)?;
    let _ = writeln!(out, "nodes {} edges {}", net.node_count(), net.edge_count());
    let _ = writeln!(out, "wrote {} and {}", graph_path.display(), truth_path.display());
    Ok(())
}
