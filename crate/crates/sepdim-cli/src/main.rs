//! `sepdim`: generate instances, build and verify pairwise suitable
//! families, solve small instances exactly, bracket bounds, and emit
//! benchmark tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 budget or regime error,
//! 3 input, format or I/O error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use sepdim::bench::{run_bench, to_csv, BenchConfig};
use sepdim::bounds::{bound_report, ReportOptions};
use sepdim::constructions::{
    construct, construct_coloring, construct_partition, construct_recursive_delta, construct_treewidth,
    schnyder_family, Certificate, ColoringMode, Method, Options,
};
use sepdim::exact::{exact_boxicity, exact_pi, exact_poset_dim, Budget, Engine, Poset};
use sepdim::suitability::verify_family;
use sepdim::{
    line_graph, Error, ErrorClass, Exec, GeneratorSpec, Hypergraph, PermutationFamily, SuitabilityKind,
    Triangulation, Verdict,
};

#[derive(Parser)]
#[command(name = "sepdim", version, about = "Separation dimension of graphs and hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a standard instance as 1-based JSON (or text with --text).
    Gen(GenArgs),
    /// Line graph of a hypergraph.
    Linegraph {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a verified pairwise suitable family and print its size ledger.
    #[command(long_about = CONSTRUCT_HELP)]
    Construct(ConstructArgs),
    /// Check a family against a hypergraph; exit 1 with a witness on failure.
    Verify(VerifyArgs),
    /// Exact separation dimension, boxicity or poset dimension.
    Exact(ExactArgs),
    /// Bracketing report of lower, upper and exact values.
    Bounds(BoundsArgs),
    /// CSV table over a family of instances, methods and seeds.
    Bench(BenchArgs),
}

const CONSTRUCT_HELP: &str = "\
Build a verified pairwise suitable family and print its size ledger.

Methods and the bounds they realize (log base 2):
  random           6.84 log n for graphs, c2 4^r sqrt(r) log n for rank-r hypergraphs
  degeneracy       4kr, k the degeneracy and r the size of the 3-suitable label family
  treewidth        15.68 ceil(log(t+1)) + 2 for width t (--td, else min-fill)
  coloring         2c + 13.68 log c (acyclic) or c + 13.68 log c (star) for c colours
  planar           3, from a Schnyder wood of a triangulation (--triangulation, else the
                   embedding of a maximal planar input)
  subdivision      d + 2 for a once-subdivided graph whose base order has an interval
                   order realizer of size d
  hypercube        size of the 3-suitable family on the dimension
  recursive-delta  2^(9 log* D) D for maximum degree D
  partition        13.68 log r + p r for r parts (--parts, else distance-two classes)";

#[derive(Args)]
struct GenArgs {
    /// clique, complete-bipartite, complete-uniform, hypercube, grid, path,
    /// cycle, star, empty, gnp, subdivided-clique, double-grid
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long)]
    leaves: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Subdivide every edge once.
    #[arg(long)]
    subdivide: bool,
    /// Write the `n m` text format instead of JSON.
    #[arg(long)]
    text: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Acyclic,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExecArg {
    Parallel,
    Sequential,
}

impl From<ExecArg> for Exec {
    fn from(e: ExecArg) -> Exec {
        match e {
            ExecArg::Parallel => Exec::Parallel,
            ExecArg::Sequential => Exec::Sequential,
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    input: PathBuf,
    #[arg(long)]
    method: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Retries per size for random families.
    #[arg(long, default_value_t = sepdim::DEFAULT_RETRIES)]
    retries: usize,
    #[arg(long, value_enum, default_value = "parallel")]
    exec: ExecArg,
    /// Tree decomposition in PACE `.td` format (treewidth).
    #[arg(long)]
    td: Option<PathBuf>,
    /// JSON array of 1-based colours, one per vertex (coloring).
    #[arg(long)]
    coloring: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "acyclic")]
    mode: ModeArg,
    /// Triangulation JSON with 1-based rotations (planar).
    #[arg(long)]
    triangulation: Option<PathBuf>,
    /// JSON array of 1-based vertex lists (partition).
    #[arg(long)]
    parts: Option<PathBuf>,
    /// Degree at or below which recursion stops (recursive-delta).
    #[arg(long, default_value_t = sepdim::constructions::DEFAULT_CUTOFF)]
    cutoff: usize,
    /// Family output file.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Size ledger output file; printed to stdout otherwise.
    #[arg(long)]
    ledger: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Pairwise,
    ThreeMixing,
    KSuitable,
}

#[derive(Args)]
struct VerifyArgs {
    input: PathBuf,
    family: PathBuf,
    #[arg(long, value_enum, default_value = "pairwise")]
    kind: KindArg,
    /// `k` for k-suitable checks.
    #[arg(long, default_value_t = 3)]
    k: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Backtrack,
    Sat,
    Hybrid,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long)]
    max_pairs: Option<usize>,
    #[arg(long)]
    max_vertices: Option<usize>,
    #[arg(long)]
    max_critical_pairs: Option<usize>,
    #[arg(long)]
    node_limit: Option<u64>,
    #[arg(long, value_enum, default_value = "hybrid")]
    engine: EngineArg,
    /// Allow any successful search branch to supply the witness.
    #[arg(long)]
    nondeterministic: bool,
    #[arg(long, value_enum, default_value = "parallel")]
    exec: ExecArg,
}

impl BudgetArgs {
    fn budget(&self) -> Result<Budget, Error> {
        let d = Budget::default();
        let positive = |field: &'static str, v: Option<usize>, dflt: usize| match v {
            Some(0) => Err(Error::InvalidParameter {
                field,
                reason: "must be positive".into(),
            }),
            Some(x) => Ok(x),
            None => Ok(dflt),
        };
        Ok(Budget {
            max_pairs: positive("max-pairs", self.max_pairs, d.max_pairs)?,
            max_vertices: positive("max-vertices", self.max_vertices, d.max_vertices)?,
            max_critical_pairs: positive("max-critical-pairs", self.max_critical_pairs, d.max_critical_pairs)?,
            engine: match self.engine {
                EngineArg::Backtrack => Engine::Backtrack,
                EngineArg::Sat => Engine::Sat,
                EngineArg::Hybrid => Engine::Hybrid,
            },
            node_limit: self.node_limit,
            deterministic: !self.nondeterministic,
            exec: self.exec.into(),
        })
    }
}

#[derive(Args)]
struct ExactArgs {
    /// Hypergraph, or a poset JSON with --posetdim.
    input: PathBuf,
    #[arg(long, conflicts_with = "posetdim")]
    boxicity: bool,
    #[arg(long)]
    posetdim: bool,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Witness output: the family, interval representations or realizer.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct BoundsArgs {
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge probability, when the input is a sample of G(n, p).
    #[arg(long)]
    p: Option<f64>,
    /// Skip the exact solver.
    #[arg(long)]
    no_exact: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    family: String,
    /// Range of the family's size parameter, `a..b` inclusive, or a single value.
    #[arg(long)]
    n: String,
    /// Second parameter where a family needs one (r, p).
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, value_delimiter = ',', default_value = "random,degeneracy")]
    methods: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    seeds: Vec<u64>,
    /// Record wall times; the table is then no longer reproducible.
    #[arg(long)]
    timed: bool,
    #[arg(long)]
    no_exact: bool,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Errors from the command layer: library errors keep their class.
enum Failure {
    Lib(Error),
    /// Verification failed with a witness already reported.
    Rejected,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Lib(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Error> {
    Ok(fs::read_to_string(path)?)
}

/// Prints a line to stdout; a closed pipe ends the process quietly.
fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{line}").and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(3);
    }
}

fn write_out(path: Option<&Path>, body: &str) -> Result<(), Error> {
    match path {
        Some(p) => Ok(fs::write(p, body)?),
        None => {
            emit(body.trim_end());
            Ok(())
        }
    }
}

fn read_hypergraph(path: &Path) -> Result<Hypergraph, Error> {
    Hypergraph::parse(&read(path)?)
}

fn echo_seed(seed: u64) {
    eprintln!("seed = {seed}");
}

/// The JSON form of a generator spec from a family name and the given
/// parameters.
fn spec_from(family: &str, params: Map<String, Value>, subdivide: bool) -> Result<GeneratorSpec, Error> {
    let mut obj = params;
    obj.insert("family".into(), Value::String(family.into()));
    let spec: GeneratorSpec = serde_json::from_value(Value::Object(obj))?;
    Ok(if subdivide {
        GeneratorSpec::Subdivided { base: Box::new(spec) }
    } else {
        spec
    })
}

fn gen_params(a: &GenArgs) -> Map<String, Value> {
    let mut m = Map::new();
    let mut put = |k: &str, v: Option<Value>| {
        if let Some(v) = v {
            m.insert(k.into(), v);
        }
    };
    put("n", a.n.map(Value::from));
    put("m", a.m.map(Value::from));
    put("r", a.r.map(Value::from));
    put("d", a.d.map(Value::from));
    put("rows", a.rows.map(Value::from));
    put("cols", a.cols.map(Value::from));
    put("leaves", a.leaves.map(Value::from));
    put("p", a.p.map(Value::from));
    if a.family == "gnp" {
        put("seed", Some(Value::from(a.seed)));
    }
    m
}

fn cmd_gen(a: GenArgs) -> Outcome {
    let spec = spec_from(&a.family, gen_params(&a), a.subdivide)?;
    if a.family == "gnp" {
        echo_seed(a.seed);
    }
    let h = sepdim::generate(&spec)?;
    let body = if a.text { h.to_text() } else { h.to_json() };
    write_out(a.output.as_deref(), &body)?;
    Ok(())
}

fn cmd_linegraph(input: PathBuf, output: Option<PathBuf>) -> Outcome {
    let h = read_hypergraph(&input)?;
    write_out(output.as_deref(), &line_graph(&h).to_json())?;
    Ok(())
}

fn one_based(v: usize, what: &str) -> Result<usize, Error> {
    v.checked_sub(1)
        .ok_or_else(|| Error::Parse(format!("{what} are 1-based, got 0")))
}

fn cmd_construct(a: ConstructArgs) -> Outcome {
    let h = read_hypergraph(&a.input)?;
    let method = Method::parse(&a.method)?;
    let opts = Options {
        seed: a.seed,
        exec: a.exec.into(),
        retries: a.retries,
    };
    echo_seed(a.seed);
    let cert: Certificate = match method {
        Method::Treewidth if a.td.is_some() => {
            let td = sepdim::constructions::OrderedTreeDecomposition::from_pace(&read(a.td.as_deref().unwrap())?)?;
            construct_treewidth(&h, &td, &opts)?
        }
        Method::Coloring if a.coloring.is_some() => {
            let raw: Vec<usize> = serde_json::from_str(&read(a.coloring.as_deref().unwrap())?)?;
            let colouring = raw.into_iter().map(|c| one_based(c, "colours")).collect::<Result<Vec<_>, _>>()?;
            let mode = match a.mode {
                ModeArg::Acyclic => ColoringMode::Acyclic,
                ModeArg::Star => ColoringMode::Star,
            };
            construct_coloring(&h, &colouring, mode, &opts)?
        }
        Method::Coloring if matches!(a.mode, ModeArg::Star) => {
            let colouring = sepdim::constructions::greedy_star_coloring(&h)?;
            construct_coloring(&h, &colouring, ColoringMode::Star, &opts)?
        }
        Method::Planar if a.triangulation.is_some() => {
            let tri = Triangulation::from_json(&read(a.triangulation.as_deref().unwrap())?)?;
            if !tri.graph().same_edges(&h) {
                return Err(Error::InvalidTriangulation("triangulation does not match the input graph".into()).into());
            }
            schnyder_family(&tri, &opts)?
        }
        Method::Partition if a.parts.is_some() => {
            let raw: Vec<Vec<usize>> = serde_json::from_str(&read(a.parts.as_deref().unwrap())?)?;
            let parts = raw
                .into_iter()
                .map(|p| p.into_iter().map(|v| one_based(v, "vertices")).collect())
                .collect::<Result<Vec<Vec<usize>>, _>>()?;
            construct_partition(&h, &parts, &opts)?
        }
        Method::RecursiveDelta => construct_recursive_delta(&h, a.cutoff, &opts)?,
        _ => construct(&h, method, &opts)?,
    };
    if let Some(out) = &a.output {
        fs::write(out, cert.family.to_json()).map_err(Error::from)?;
    }
    write_out(a.ledger.as_deref(), &cert.ledger_json())?;
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let h = read_hypergraph(&a.input)?;
    let family = PermutationFamily::from_json(&read(&a.family)?)?;
    let kind = match a.kind {
        KindArg::Pairwise => SuitabilityKind::PairwiseSuitable,
        KindArg::ThreeMixing => SuitabilityKind::PairwiseSuitableAnd3Mixing,
        KindArg::KSuitable => SuitabilityKind::KSuitable(a.k),
    };
    match verify_family(&h, &family, kind)? {
        Verdict::Pass => {
            emit(&json!({"verdict": "pass", "size": family.len()}).to_string());
            Ok(())
        }
        Verdict::Fail(v) => {
            emit(&json!({"verdict": "fail", "witness": v.to_string()}).to_string());
            Err(Failure::Rejected)
        }
    }
}

fn cmd_exact(a: ExactArgs) -> Outcome {
    let budget = a.budget.budget()?;
    let text = read(&a.input)?;
    let (value, witness) = if a.posetdim {
        let p = Poset::from_json(&text)?;
        let s = exact_poset_dim(&p, &budget)?;
        let fam = PermutationFamily::new(p.size(), s.realizer.extensions)?;
        (s.value, fam.to_json())
    } else if a.boxicity {
        let g = Hypergraph::parse(&text)?;
        let s = exact_boxicity(&g, &budget)?;
        let reps: Vec<Value> = s
            .representations
            .iter()
            .map(|r| serde_json::from_str(&r.to_json()).expect("representation JSON"))
            .collect();
        (s.value, Value::Array(reps).to_string())
    } else {
        let h = Hypergraph::parse(&text)?;
        let s = exact_pi(&h, &budget)?;
        (s.value, s.family.to_json())
    };
    emit(&value.to_string());
    if let Some(out) = &a.output {
        fs::write(out, witness).map_err(Error::from)?;
    }
    Ok(())
}

fn cmd_bounds(a: BoundsArgs) -> Outcome {
    let h = read_hypergraph(&a.input)?;
    echo_seed(a.seed);
    let opts = ReportOptions {
        seed: a.seed,
        exec: a.budget.exec.into(),
        budget: a.budget.budget()?,
        run_exact: !a.no_exact,
        edge_probability: a.p,
        ..ReportOptions::default()
    };
    let name = a
        .input
        .file_stem()
        .map_or_else(|| "input".to_string(), |s| s.to_string_lossy().into_owned());
    let report = bound_report(&h, &name, &opts)?;
    let body = match a.format {
        FormatArg::Json => report.to_json(),
        FormatArg::Csv => report.to_csv()?,
    };
    write_out(a.output.as_deref(), &body)?;
    Ok(())
}

/// `a..b` (inclusive) or a single value.
fn parse_range(s: &str) -> Result<Vec<usize>, Error> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad range bound `{t}`")))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(Error::Parse(format!("empty range `{s}`")));
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![num(s)?]),
    }
}

/// Sets the size parameter of `family` to `k`.
fn sized(family: &str, k: usize, r: Option<usize>, p: Option<f64>) -> Result<GeneratorSpec, Error> {
    let mut m = Map::new();
    match family {
        "complete-bipartite" => {
            m.insert("m".into(), k.into());
            m.insert("n".into(), k.into());
        }
        "hypercube" => {
            m.insert("d".into(), k.into());
        }
        "grid" => {
            m.insert("rows".into(), k.into());
            m.insert("cols".into(), k.into());
        }
        "star" => {
            m.insert("leaves".into(), k.into());
        }
        _ => {
            m.insert("n".into(), k.into());
        }
    }
    if let Some(r) = r {
        m.insert("r".into(), r.into());
    }
    if family == "gnp" {
        m.insert("p".into(), p.unwrap_or(0.5).into());
        m.insert("seed".into(), (k as u64).into());
    }
    spec_from(family, m, false)
}

fn cmd_bench(a: BenchArgs) -> Outcome {
    let instances = parse_range(&a.n)?
        .into_iter()
        .map(|k| sized(&a.family, k, a.r, a.p))
        .collect::<Result<Vec<_>, _>>()?;
    let methods = a.methods.iter().map(|m| Method::parse(m.trim())).collect::<Result<Vec<_>, _>>()?;
    for &s in &a.seeds {
        echo_seed(s);
    }
    let cfg = BenchConfig {
        instances,
        methods,
        seeds: a.seeds.clone(),
        exec: a.budget.exec.into(),
        budget: a.budget.budget()?,
        run_exact: !a.no_exact,
        deterministic: !a.timed,
    };
    let rows = run_bench(&cfg)?;
    write_out(a.output.as_deref(), &to_csv(&rows)?)?;
    Ok(())
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Rejected => 1,
        Failure::Lib(e) => match e.class() {
            ErrorClass::Verification => 1,
            ErrorClass::Budget => 2,
            ErrorClass::Input => 3,
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Linegraph { input, output } => cmd_linegraph(input, output),
        Command::Construct(a) => cmd_construct(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Exact(a) => cmd_exact(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Failure::Lib(e) = &f {
                eprintln!("error: {e}");
            }
            ExitCode::from(exit_code(&f))
        }
    }
}
