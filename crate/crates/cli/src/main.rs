use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hamlab::dfs::{explore_online, run_dfs_directed, run_dfs_identity};
use hamlab::expander::{
    audit_properties_with, is_expander, sparse_backbone, AuditConfig, BackboneConfig, ExpanderMode, ExpanderQuery,
    EXACT_EXPANDER_CAP,
};
use hamlab::graph::io::{read_edge_list, write_digraph, write_graph, write_pairs, EdgeList};
use hamlab::ham::{augment_with_boosters, exact_hamiltonian, rotation_extension_search};
use hamlab::harness::{hitting_time, run_experiment, ExperimentConfig, ExperimentName, MonotoneProperty};
use hamlab::models::{bernoulli_stream, dnp, gnm, gnp, random_process};
use hamlab::Graph;

#[derive(Parser)]
#[command(name = "hamlab", version, about = "Random graph laboratory: long paths, Hamilton cycles, hitting times")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random graph or graph process and write it as an edge list.
    Gen(GenArgs),
    /// Run the DFS and report its long path and components.
    Dfs(DfsArgs),
    /// Audit the degree and expansion properties of a graph.
    Audit(AuditArgs),
    /// Look for a Hamilton cycle.
    Hamilton(HamiltonArgs),
    /// Run a Monte Carlo experiment.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Gnp,
    Gnm,
    Dnp,
    /// Random graph process; snapshots are taken at `--m`, or at the
    /// minimum-degree-2 hitting time when `--m` is absent.
    Process,
}

#[derive(Args)]
struct Source {
    /// Edge-list file to read instead of sampling.
    #[arg(long = "in", conflicts_with = "model")]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Option<Model>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Loaded {
    Undirected(Graph),
    Directed(hamlab::DiGraph),
}

impl Source {
    fn n(&self) -> Result<usize> {
        self.n.context("--n is required with --model")
    }

    fn p(&self) -> Result<f64> {
        self.p.context("--p is required for this model")
    }

    fn load(&self) -> Result<Loaded> {
        if let Some(path) = &self.input {
            let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            return Ok(match read_edge_list(BufReader::new(file))? {
                EdgeList::Undirected(g) => Loaded::Undirected(g),
                EdgeList::Directed(d) => Loaded::Directed(d),
            });
        }
        let Some(model) = self.model else { bail!("give --in <file> or --model") };
        Ok(match model {
            Model::Gnp => Loaded::Undirected(gnp(self.n()?, self.p()?, self.seed)?),
            Model::Gnm => Loaded::Undirected(gnm(self.n()?, self.m.context("--m is required for gnm")?, self.seed)?),
            Model::Dnp => Loaded::Directed(dnp(self.n()?, self.p()?, self.seed)?),
            Model::Process => {
                let process = random_process(self.n()?, self.seed)?;
                let m = match self.m {
                    Some(m) => m,
                    None => hitting_time(&process, MonotoneProperty::MinDegree(2))?,
                };
                Loaded::Undirected(process.snapshot(m)?)
            }
        })
    }

    fn undirected(&self) -> Result<Graph> {
        match self.load()? {
            Loaded::Undirected(g) => Ok(g),
            Loaded::Directed(_) => bail!("this command needs an undirected graph"),
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: Option<f64>,
    /// Edge count for gnm; prefix length for process (default: the whole order).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DfsArgs {
    #[command(flatten)]
    source: Source,
    /// Expose pairs lazily from a Bernoulli(--p) stream instead of sampling
    /// the graph first.
    #[arg(long, requires = "p")]
    online: bool,
    /// JSON event log of the run.
    #[arg(long)]
    trace_out: Option<PathBuf>,
    /// Longest stack path, one vertex per line.
    #[arg(long)]
    path_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpanderModeArg {
    Exact,
    Sampled,
    Structural,
    /// Exact up to 20 vertices, structural above.
    Auto,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 4)]
    d0: usize,
    /// Expander check for (k, alpha) added to the report.
    #[arg(long, value_enum, default_value = "auto")]
    mode: ExpanderModeArg,
    /// Set-size bound of the expander check; default n/4.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    /// Also build the sparse backbone, audit P7 on it and run the expander
    /// check on it instead of the graph.
    #[arg(long)]
    backbone: bool,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Exact,
    Rotation,
    BoosterPipeline,
}

#[derive(Args)]
struct HamiltonArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "rotation")]
    method: Method,
    /// Rotation budget; default ceil(50 n ln n).
    #[arg(long)]
    budget: Option<u64>,
    /// Backbone degree for the booster pipeline.
    #[arg(long, default_value_t = 4)]
    d0: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    name: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses all cores. Output does not depend on it.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long)]
    d0: Option<usize>,
    /// Offsets omega for min-degree, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    offsets: Option<Vec<f64>>,
    /// Trials of the directed variant of nearly-spanning.
    #[arg(long)]
    directed_trials: Option<usize>,
    /// Required pass fraction, as statistic=fraction; repeatable.
    #[arg(long = "target")]
    targets: Vec<String>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
    /// Exit with status 2 when a target is missed.
    #[arg(long = "assert")]
    assert_targets: bool,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn write_json(path: Option<&Path>, value: &impl serde::Serialize) -> Result<()> {
    let mut w = output(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn gen(a: GenArgs) -> Result<()> {
    let p = || a.p.context("--p is required for this model");
    let mut w = output(a.out.as_deref())?;
    match a.model {
        Model::Gnp => write_graph(&mut w, &gnp(a.n, p()?, a.seed)?)?,
        Model::Gnm => write_graph(&mut w, &gnm(a.n, a.m.context("--m is required for gnm")?, a.seed)?)?,
        Model::Dnp => write_digraph(&mut w, &dnp(a.n, p()?, a.seed)?)?,
        Model::Process => {
            let process = random_process(a.n, a.seed)?;
            let m = a.m.unwrap_or(process.len()).min(process.len());
            write_pairs(&mut w, a.n, &process.order()[..m])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn dfs(a: DfsArgs) -> Result<()> {
    let trace = if a.online {
        let n = a.source.n()?;
        let mut bits = bernoulli_stream(a.source.p()?, a.source.seed)?;
        explore_online(n, &mut bits)?
    } else {
        match a.source.load()? {
            Loaded::Undirected(g) => run_dfs_identity(&g)?,
            Loaded::Directed(d) => run_dfs_directed(&d)?,
        }
    };
    if let Some(path) = &a.trace_out {
        write_json(Some(path), &trace)?;
    }
    if let Some(path) = &a.path_out {
        let mut w = output(Some(path))?;
        for v in trace.max_u_path.vertices() {
            writeln!(w, "{v}")?;
        }
        w.flush()?;
    }
    let summary = json!({
        "n": trace.n,
        "steps": trace.steps(),
        "queries": trace.query_count,
        "max_u_path_vertices": trace.max_u_path.vertex_count(),
        "max_u_step": trace.max_u_step,
        "components": trace.component_sizes().len(),
        "largest_component": trace.largest_component(),
    });
    write_json(None, &summary)
}

fn audit(a: AuditArgs) -> Result<()> {
    let g = a.source.undirected()?;
    let n = g.n();
    let backbone = if a.backbone {
        Some(sparse_backbone(&g, BackboneConfig { d0: a.d0, seed: a.source.seed })?)
    } else {
        None
    };
    let cfg = AuditConfig { samples: a.samples, seed: a.source.seed, ..AuditConfig::default() };
    let report = audit_properties_with(&g, a.d0, backbone.as_ref(), &cfg)?;
    let target = backbone.as_ref().unwrap_or(&g);
    let query = ExpanderQuery::new(a.k.unwrap_or(n / 4).max(1), a.alpha)?;
    let trials = a.samples.min(64);
    let mode = match a.mode {
        ExpanderModeArg::Exact => ExpanderMode::Exact,
        ExpanderModeArg::Sampled => ExpanderMode::Sampled { trials, seed: a.source.seed },
        ExpanderModeArg::Structural => ExpanderMode::Structural { d0: a.d0, trials, seed: a.source.seed },
        ExpanderModeArg::Auto if n <= EXACT_EXPANDER_CAP => ExpanderMode::Exact,
        ExpanderModeArg::Auto => ExpanderMode::Structural { d0: a.d0, trials, seed: a.source.seed },
    };
    let verdict = is_expander(target, query, mode)?;
    let out = json!({
        "audit": report,
        "expander": { "graph": if a.backbone { "backbone" } else { "input" }, "query": query, "mode": mode, "verdict": verdict },
        "backbone_edges": backbone.as_ref().map(Graph::edge_count),
    });
    write_json(a.out.as_deref(), &out)
}

fn hamilton(a: HamiltonArgs) -> Result<()> {
    let g = a.source.undirected()?;
    let result = match a.method {
        Method::Exact => exact_hamiltonian(&g)?,
        Method::Rotation => rotation_extension_search(&g, a.budget, a.source.seed),
        Method::BoosterPipeline => {
            let backbone = sparse_backbone(&g, BackboneConfig { d0: a.d0, seed: a.source.seed })?;
            augment_with_boosters(&backbone, &g, a.source.seed)?
        }
    };
    write_json(a.out.as_deref(), &result)
}

fn experiment(a: ExperimentArgs) -> Result<ExitCode> {
    let name: ExperimentName = a.name.parse()?;
    let mut cfg = ExperimentConfig::new(name);
    cfg.seed = a.seed;
    cfg.workers = a.workers;
    if let Some(n) = a.n {
        cfg.n = n;
    }
    if let Some(e) = a.epsilon {
        cfg.epsilon = e;
    }
    if let Some(t) = a.trials {
        cfg.trials = t;
    }
    if let Some(d0) = a.d0 {
        cfg.d0 = d0;
    }
    if let Some(o) = a.offsets {
        cfg.offsets = o;
    }
    cfg.directed = a.directed_trials;
    for t in &a.targets {
        let (stat, frac) = t.split_once('=').with_context(|| format!("target {t:?} is not statistic=fraction"))?;
        cfg.targets.insert(stat.to_string(), frac.parse().with_context(|| format!("bad fraction in {t:?}"))?);
    }
    let out = run_experiment(&cfg)?;
    if let Some(path) = &a.csv {
        let mut w = output(Some(path))?;
        hamlab::harness::write_csv(&out.records, &mut w)?;
        w.flush()?;
    }
    if let Some(path) = &a.json {
        write_json(Some(path), &out)?;
    }
    let mut stdout = io::stdout().lock();
    for g in &out.summary.groups {
        let verdict = match g.met {
            Some(true) => "met",
            Some(false) => "MISSED",
            None => "-",
        };
        writeln!(
            stdout,
            "{name} {}/{}: mean {} range [{}, {}] passed {}/{} target {} {verdict}",
            g.variant,
            g.statistic,
            hamlab::harness::format_float(g.mean),
            hamlab::harness::format_float(g.min),
            hamlab::harness::format_float(g.max),
            g.passed,
            g.evaluated,
            g.target.map(hamlab::harness::format_float).unwrap_or_else(|| "-".into()),
        )?;
    }
    if a.assert_targets && !out.summary.all_targets_met {
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a).map(|_| ExitCode::SUCCESS),
        Command::Dfs(a) => dfs(a).map(|_| ExitCode::SUCCESS),
        Command::Audit(a) => audit(a).map(|_| ExitCode::SUCCESS),
        Command::Hamilton(a) => hamilton(a).map(|_| ExitCode::SUCCESS),
        Command::Experiment(a) => experiment(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
