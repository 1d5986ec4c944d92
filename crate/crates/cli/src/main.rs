//! `nms`: classify, compare and simulate two-orbit NMS model flows.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use nms_core::json::{
    certificate_to_value, flow_to_value, invariant_to_value, parse_flow_spec, parse_seeds, to_line,
    trajectories_document, SCHEMA_VERSION,
};
use nms_core::oracle::{search_certificate, DEFAULT_SEARCH_BOUND};
use nms_core::simulator::{
    default_seeds, sample_portrait, svg::render_surface_portrait, ChartPoint,
};
use nms_core::{
    class_invariant, count_classes, flows_equivalent, manifold_of, orbit_twisted, representatives,
    Error, ManifoldId, ModelFlow,
};

#[derive(Parser)]
#[command(
    name = "nms",
    version,
    about = "Non-singular Morse-Smale flows with two periodic orbits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ambient manifold, twist flags and class invariant of a flow spec.
    Classify {
        /// Flow-spec JSON file, `-` for stdin.
        spec: PathBuf,
    },
    /// Decide topological equivalence of two flow specs.
    Equivalent {
        a: PathBuf,
        b: PathBuf,
        /// Use the brute-force certificate search instead of the closed form.
        #[arg(long)]
        oracle: bool,
        /// Search bound for `--oracle`.
        #[arg(long, env = "NMS_SEARCH_BOUND", default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: u32,
    },
    /// Number of equivalence classes on a manifold, e.g. `L(5,1)`, `T2`, `K2`, `SxS1(4)`.
    Count { manifold: String },
    /// One flow spec per equivalence class on a manifold.
    Representatives { manifold: String },
    /// Sample trajectories as JSON.
    Simulate(SimArgs),
    /// Sample trajectories and draw the phase portrait of a surface flow.
    Portrait(SimArgs),
}

#[derive(Args)]
struct SimArgs {
    spec: PathBuf,
    /// Seeds as JSON `[["R"|"A", [y...], h], ...]`; default seeds otherwise.
    #[arg(long)]
    seeds: Option<PathBuf>,
    /// Number of default seeds when `--seeds` is absent.
    #[arg(long, default_value_t = 6)]
    seed_count: usize,
    #[arg(long, default_value_t = 12.0)]
    horizon: f64,
    #[arg(long, default_value_t = 0.05)]
    dt: f64,
    /// SVG output path (surfaces only). `portrait` writes to stdout without it.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Trajectory JSON output path; stdout by default.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(PathBuf, io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read_input(path: &Path) -> CliResult<String> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
    }
}

fn load_flow(path: &Path) -> CliResult<ModelFlow> {
    Ok(parse_flow_spec(&read_input(path)?)?)
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(p.to_path_buf(), e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(PathBuf::from("<stdout>"), e)),
    }
}

fn classify(f: &ModelFlow) -> Value {
    let (repeller, attractor) = orbit_twisted(f);
    json!({
        "version": SCHEMA_VERSION,
        "manifold": manifold_of(f).to_string(),
        "twisted": [repeller, attractor],
        "invariant": invariant_to_value(&class_invariant(f)),
    })
}

fn equivalent(f: &ModelFlow, g: &ModelFlow, oracle: Option<u32>) -> Value {
    let mut out = json!({ "version": SCHEMA_VERSION });
    if !f.same_family(g) {
        out["equivalent"] = json!(false);
        out["reason"] = json!(format!(
            "different families: dim {} {} vs dim {} {}",
            f.dim(),
            f.handle().as_str(),
            g.dim(),
            g.handle().as_str()
        ));
        return out;
    }
    let cert = match oracle {
        Some(bound) => search_certificate(f, g, bound),
        None => flows_equivalent(f, g),
    };
    match cert {
        Some(c) => {
            out["equivalent"] = json!(true);
            out["certificate"] = certificate_to_value(&c);
        }
        None => {
            out["equivalent"] = json!(false);
            let (a, b) = (manifold_of(f), manifold_of(g));
            out["reason"] = json!(match (a.normalized(), b.normalized()) {
                (Ok(x), Ok(y)) if x != y => format!("different manifolds: {a} vs {b}"),
                _ if oracle.is_some() => "no certificate within the search bound".to_string(),
                _ => "different class invariants".to_string(),
            });
        }
    }
    out
}

fn simulate(args: &SimArgs, portrait: bool) -> CliResult<()> {
    let f = load_flow(&args.spec)?;
    let seeds: Vec<ChartPoint<f64>> = match &args.seeds {
        Some(path) => parse_seeds(&read_input(path)?, f.dim())?,
        None => default_seeds(&f, args.seed_count),
    };
    let trajs = sample_portrait(&f, &seeds, args.horizon, args.dt)?;
    let doc = to_line(&trajectories_document(&f, &trajs));
    if portrait || args.svg.is_some() {
        let svg = render_surface_portrait(&f, &trajs)?;
        match &args.svg {
            Some(path) => {
                write_output(Some(path), &svg)?;
                write_output(args.output.as_deref(), &doc)
            }
            None => {
                if let Some(path) = &args.output {
                    write_output(Some(path), &doc)?;
                }
                write_output(None, &svg)
            }
        }
    } else {
        write_output(args.output.as_deref(), &doc)
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Classify { spec } => write_output(None, &to_line(&classify(&load_flow(&spec)?))),
        Command::Equivalent {
            a,
            b,
            oracle,
            bound,
        } => {
            let (f, g) = (load_flow(&a)?, load_flow(&b)?);
            write_output(None, &to_line(&equivalent(&f, &g, oracle.then_some(bound))))
        }
        Command::Count { manifold } => {
            let m: ManifoldId = manifold.parse()?;
            write_output(None, &format!("{}\n", count_classes(&m)?))
        }
        Command::Representatives { manifold } => {
            let m: ManifoldId = manifold.parse()?;
            let reps: Vec<Value> = representatives(&m)?.iter().map(flow_to_value).collect();
            let doc = json!({
                "version": SCHEMA_VERSION,
                "manifold": m.normalized()?.to_string(),
                "representatives": reps,
            });
            write_output(None, &to_line(&doc))
        }
        Command::Simulate(args) => simulate(&args, false),
        Command::Portrait(args) => simulate(&args, true),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
