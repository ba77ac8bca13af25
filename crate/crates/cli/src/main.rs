//! `graphforms` command-line front end.
//!
//! Exit codes: `0` pass, `1` numeric check outside tolerance, `2` usage
//! error, `3` internal invariant violation.

mod cache;
mod commands;

use cache::{Cache, Entry};
use clap::{Args, Parser, Subcommand, ValueEnum};
use graphforms::graphs::{canonical_certificate, fixture, Graph};
use graphforms::integrate::Sampler;
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use thiserror::Error;

/// Errors surfaced by the command-line tool.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] graphforms::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{path}`: {source}")]
    Read { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use graphforms::Error as E;
        match self {
            CliError::Usage(_) | CliError::Read { .. } => 2,
            CliError::Core(E::Invariant(_) | E::Io(_) | E::BudgetExceeded(_)) => 3,
            CliError::Core(_) => 2,
        }
    }
}

/// Outcome of a command: what to print and whether its checks passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

impl Outcome {
    pub fn pass(output: String) -> Self {
        Outcome { output, passed: true }
    }

    fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "graphforms", version, about = "Canonical forms on graphs, graph-complex homology and canonical integrals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every pseudo-random choice (sample points, integration).
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Monte-Carlo sample count; accepts `10000000`, `1e7` or `10_000_000`.
    #[arg(short = 'n', long, global = true, value_parser = parse_count)]
    samples: Option<u64>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Bypass the on-disk cache even if it is configured.
    #[arg(long, global = true)]
    no_cache: bool,
}

/// Where the input graph comes from.
#[derive(Args, Debug, Clone, Serialize)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Named fixture (`W3`, `Z5`, `K6`, `banana3`, ...; see `fixtures`).
    #[arg(long)]
    pub fixture: Option<String>,
    /// JSON graph file `{"v": n, "edges": [[t, h], ...]}`.
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

impl GraphSource {
    fn load(&self) -> Result<Graph, CliError> {
        match (&self.fixture, &self.graph) {
            (Some(name), _) => Ok(fixture(name)?),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.clone(), source })?;
                Ok(Graph::from_json(&text)?)
            }
            (None, None) => Err(CliError::Usage("give --fixture or --graph".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    /// Graph Laplacian `Λ_G` in a cycle basis.
    Lambda,
    /// Dual Laplacian `L_G` in the variables `y_e = 1/x_e`.
    Dual,
    /// Graph matrix `M_G`.
    Graph,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "lowercase", tag = "name")]
enum Command {
    /// Kirchhoff polynomial Ψ_G.
    Psi {
        #[command(flatten)]
        source: GraphSource,
        /// Also check that det Λ_G and det M_G equal Ψ_G.
        #[arg(long)]
        verify: bool,
    },
    /// Laplacian-type matrices of a graph.
    Laplacian {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, value_enum, default_value_t = MatrixKind::Lambda)]
        kind: MatrixKind,
    },
    /// Dodgson polynomial Ψ^{I,J} (1-based edge indices).
    Dodgson {
        #[command(flatten)]
        source: GraphSource,
        #[arg(short = 'I', value_delimiter = ',')]
        rows: Vec<usize>,
        #[arg(short = 'J', value_delimiter = ',')]
        cols: Vec<usize>,
    },
    /// Canonical form ω^{4k₁+1} ∧ ... of a graph.
    Form {
        #[command(flatten)]
        source: GraphSource,
        /// Form indices `k₁,k₂,...` (e.g. `1` for ω⁵, `1,2` for ω⁵∧ω⁹).
        #[arg(long)]
        spec: String,
        /// Expand the form exactly.
        #[arg(long, conflicts_with = "points")]
        symbolic: bool,
        /// Check the form at this many exact random points against its known
        /// closed form (or across computation routes if none is known).
        #[arg(long)]
        points: Option<usize>,
    },
    /// Monte-Carlo estimate of the canonical integral I_G(ω).
    Integrate {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value = "1")]
        spec: String,
        #[arg(long, value_enum, default_value_t = SamplerArg::Hepp)]
        sampler: SamplerArg,
        /// Relative tolerance against the reference value, when one is known.
        #[arg(long, default_value_t = 0.01)]
        tolerance: f64,
        /// Integrate the Feynman residue Ω/Ψ² instead of a canonical form.
        #[arg(long)]
        feynman: bool,
        /// Evaluate on the affine chart x_e = 1 (1-based edge index).
        #[arg(long)]
        chart: Option<usize>,
        /// Sample even when the integral is known to vanish.
        #[arg(long)]
        always_sample: bool,
        /// Compare against this value instead of the built-in reference.
        #[arg(long, allow_negative_numbers = true)]
        target: Option<f64>,
    },
    /// Stokes relation Σ ± I(G/e) ∓ I(G∖e) = 0 on the boundary faces.
    Stokes {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        spec: String,
        #[arg(long, value_enum, default_value_t = SamplerArg::Hepp)]
        sampler: SamplerArg,
    },
    /// Homology of the graph complex GC₂ by loop order.
    Homology {
        #[arg(long, default_value_t = 6)]
        hmax: usize,
        /// Permit loop orders above 6 (no runtime bound).
        #[arg(long)]
        slow: bool,
    },
    /// List the built-in graphs.
    Fixtures,
    /// Run the built-in property and reference checks.
    Selftest {
        /// Skip the Monte-Carlo checks.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplerArg {
    Uniform,
    Hepp,
}

impl From<SamplerArg> for Sampler {
    fn from(s: SamplerArg) -> Sampler {
        match s {
            SamplerArg::Uniform => Sampler::Uniform,
            SamplerArg::Hepp => Sampler::Hepp,
        }
    }
}

/// The fully resolved configuration of one run, logged to stderr.
#[derive(Serialize)]
struct RunConfig<'a> {
    command: &'a Command,
    seed: u64,
    workers: usize,
    samples: Option<u64>,
    format: Format,
    cache_dir: Option<String>,
}

/// Parses a sample count written as an integer or in scientific notation.
fn parse_count(text: &str) -> Result<u64, String> {
    let t = text.replace('_', "");
    if let Ok(n) = t.parse::<u64>() {
        return Ok(n);
    }
    match t.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 1.0 && v.fract() == 0.0 && v <= 2f64.powi(63) => Ok(v as u64),
        _ => Err(format!("`{text}` is not a positive whole number of samples")),
    }
}

/// Shared parameters handed to each command.
pub struct Context {
    pub seed: u64,
    pub samples: Option<u64>,
    pub format: Format,
}

fn cache_key(cli: &Cli, graph: Option<&Graph>) -> String {
    let command = serde_json::to_string(&cli.command).expect("command serializes");
    let (graph_json, canonical) = match graph {
        Some(g) => {
            let key: String = canonical_certificate(g).canonical_key.iter().map(|b| format!("{b:02x}")).collect();
            (g.to_json(), key)
        }
        None => (String::new(), String::new()),
    };
    let samples = cli.samples.map(|n| n.to_string()).unwrap_or_default();
    let format = format!("{:?}", cli.format);
    Cache::key(&[&canonical, &graph_json, &command, &cli.seed.to_string(), &samples, &format])
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let ctx = Context {
        seed: cli.seed,
        samples: cli.samples,
        format: cli.format,
    };
    let graph = match &cli.command {
        Command::Psi { source, .. }
        | Command::Laplacian { source, .. }
        | Command::Dodgson { source, .. }
        | Command::Form { source, .. }
        | Command::Integrate { source, .. }
        | Command::Stokes { source, .. } => Some(source.load()?),
        _ => None,
    };
    let cacheable = !matches!(cli.command, Command::Fixtures | Command::Selftest { .. });
    let cache = if cacheable && !cli.no_cache { Cache::from_env() } else { None };
    let key = cache.as_ref().map(|_| cache_key(cli, graph.as_ref()));
    if let (Some(cache), Some(key)) = (&cache, &key) {
        if let Some(entry) = cache.get(key) {
            return Ok(Outcome {
                output: entry.output,
                passed: entry.exit_code == 0,
            });
        }
    }
    let g = || graph.clone().expect("graph loaded for this command");
    let fixture_name = |s: &GraphSource| s.fixture.clone();
    let outcome = match &cli.command {
        Command::Psi { verify, .. } => commands::psi(&g(), *verify, &ctx)?,
        Command::Laplacian { kind, .. } => commands::laplacian(&g(), *kind, &ctx)?,
        Command::Dodgson { rows, cols, .. } => commands::dodgson(&g(), rows, cols, &ctx)?,
        Command::Form { source, spec, symbolic, points } => {
            commands::form(&g(), fixture_name(source).as_deref(), spec, *symbolic, *points, &ctx)?
        }
        Command::Integrate { source, spec, sampler, tolerance, feynman, chart, always_sample, target } => {
            let opts = commands::IntegrateOptions {
                fixture: fixture_name(source),
                spec: spec.clone(),
                sampler: (*sampler).into(),
                tolerance: *tolerance,
                feynman: *feynman,
                chart: *chart,
                always_sample: *always_sample,
                target: *target,
            };
            commands::integrate(&g(), &opts, &ctx)?
        }
        Command::Stokes { spec, sampler, .. } => commands::stokes(&g(), spec, (*sampler).into(), &ctx)?,
        Command::Homology { hmax, slow } => commands::homology(*hmax, *slow, &ctx)?,
        Command::Fixtures => commands::fixtures(&ctx)?,
        Command::Selftest { quick } => commands::selftest(*quick, &ctx)?,
    };
    if let (Some(cache), Some(key)) = (&cache, &key) {
        let entry = Entry {
            exit_code: outcome.exit_code(),
            output: outcome.output.clone(),
        };
        if let Err(e) = cache.put(key, &entry) {
            eprintln!("graphforms: warning: cache write failed: {e}");
        }
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.workers {
        if n == 0 {
            eprintln!("graphforms: --workers must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("graphforms: cannot start worker pool: {e}");
            return ExitCode::from(3);
        }
    }
    let config = RunConfig {
        command: &cli.command,
        seed: cli.seed,
        workers: rayon::current_num_threads(),
        samples: cli.samples,
        format: cli.format,
        cache_dir: Cache::from_env().filter(|_| !cli.no_cache).map(|c| c.dir().display().to_string()),
    };
    eprintln!("graphforms: config {}", serde_json::to_string(&config).expect("config serializes"));
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            eprintln!("graphforms: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_counts() {
        assert_eq!(parse_count("1e7"), Ok(10_000_000));
        assert_eq!(parse_count("10_000"), Ok(10_000));
        assert_eq!(parse_count("2.5e3"), Ok(2500));
        assert!(parse_count("0.5").is_err());
        assert!(parse_count("-3").is_err());
        assert!(parse_count("abc").is_err());
    }

    #[test]
    fn command_line_shapes() {
        let cli = Cli::try_parse_from(["graphforms", "integrate", "--fixture", "W3", "--spec", "1", "-n", "1e7"]).unwrap();
        assert_eq!(cli.samples, Some(10_000_000));
        let cli = Cli::try_parse_from(["graphforms", "dodgson", "--fixture", "W3", "-I", "1", "-J", "1"]).unwrap();
        assert!(matches!(cli.command, Command::Dodgson { ref rows, .. } if rows == &[1]));
        assert!(Cli::try_parse_from(["graphforms", "psi"]).is_err());
        assert!(Cli::try_parse_from(["graphforms", "psi", "--fixture", "W3", "--graph", "g.json"]).is_err());
    }

    #[test]
    fn cache_keys_depend_on_labeling_and_parameters() {
        let a = Cli::try_parse_from(["graphforms", "psi", "--fixture", "W3"]).unwrap();
        let b = Cli::try_parse_from(["graphforms", "psi", "--fixture", "W3", "--seed", "2"]).unwrap();
        let w3 = fixture("W3").unwrap();
        let plain = graphforms::graphs::wheel(3).unwrap();
        assert_ne!(cache_key(&a, Some(&w3)), cache_key(&b, Some(&w3)));
        assert_ne!(cache_key(&a, Some(&w3)), cache_key(&a, Some(&plain)));
        assert_eq!(cache_key(&a, Some(&w3)), cache_key(&a, Some(&w3)));
    }
}
