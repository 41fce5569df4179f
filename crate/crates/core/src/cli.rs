//! Command-line driver. Exit codes: 0 ok, 1 unparsable input, 2 the
//! computation is undefined for the model or state, 3 a check failed.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::checks::{run_suite, Suite};
use crate::decomposition::egg::{egg_decompose, egg_grid_sweep, egg_nonuniqueness_witness};
use crate::entropy::{
    decomposition_entropy_search, measurement_entropy_search, renyi_entropy, spectral_entropy,
    EntropyReport,
};
use crate::error::GptError;
use crate::probability::LogBase;
use crate::state_space::{EggShape, StateDocument, StateSpaceModel, StateVector};
use crate::vn::{
    gbit_petz_center, mixing_protocol, run_petz_protocol, run_von_neumann_protocol,
    stirling_multiplicity_entropy, GasConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

const DECOMPOSITION_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "gpt-thermo", version, about = "Entropy and second-law checks on generalized probabilistic theories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Entropy of a state (JSON file or inline JSON).
    Entropy(EntropyArgs),
    /// Run a randomized property suite.
    Check(CheckArgs),
    /// Egg state space: grid sweep, non-uniqueness witness or one point.
    Egg(EggArgs),
    /// Von Neumann, Petz or mixing ledger.
    Vn(VnArgs),
    /// Exact log-multinomial against the Stirling and mixture formulas.
    Stirling(StirlingArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Spectral,
    Measurement,
    Decomposition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
struct SeedArg {
    /// RNG seed.
    #[arg(long, env = "GPT_THERMO_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct EntropyArgs {
    /// State document: path or inline JSON.
    #[arg(long)]
    state: String,
    /// Rényi order in bits; omit for the thermodynamic entropy in nats.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_enum, default_value_t = Method::Spectral)]
    method: Method,
    /// Samples for the search methods.
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    /// Comma-separated Rényi orders; prints CSV `alpha,value,method`.
    #[arg(long, value_delimiter = ',')]
    sweep: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    seed: SeedArg,
}

#[derive(Debug, Args)]
struct EggArgs {
    /// Radius of the half-circle.
    #[arg(long = "r")]
    r: f64,
    /// Horizontal semi-axis of the half-ellipse.
    #[arg(long = "R")]
    big_r: f64,
    /// Decompose an n×n interior grid; prints CSV.
    #[arg(long, conflicts_with_all = ["witness", "point"])]
    grid: Option<usize>,
    /// The two classical decompositions of the origin.
    #[arg(long, conflicts_with = "point")]
    witness: bool,
    /// Decompose one point `x,y`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    point: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Protocol {
    Vn,
    Petz,
    Mixing,
}

#[derive(Debug, Args)]
struct VnArgs {
    #[arg(long, value_enum, default_value_t = Protocol::Vn)]
    protocol: Protocol,
    /// State document for the vn protocol.
    #[arg(long)]
    state: Option<String>,
    /// JSON array of state documents (petz, mixing).
    #[arg(long)]
    components: Option<String>,
    /// Comma-separated species weights (petz, mixing).
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<f64>>,
    /// Petz protocol on the gbit center split along edges with parameter a.
    #[arg(long, conflicts_with_all = ["components", "weights"])]
    gbit_a: Option<f64>,
    #[arg(long = "N", default_value_t = 1)]
    n: u64,
    #[arg(long = "T", default_value_t = 1.0)]
    t: f64,
    #[arg(long = "V", default_value_t = 1.0)]
    v: f64,
    #[arg(long, default_value_t = 1.0)]
    k_b: f64,
}

#[derive(Debug, Args)]
struct StirlingArgs {
    /// Comma-separated occupation numbers.
    #[arg(long, value_delimiter = ',', required = true)]
    counts: Vec<u64>,
}

enum Failure {
    Parse(String),
    Domain(GptError),
    Check(String),
}

impl From<GptError> for Failure {
    fn from(e: GptError) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Parse `args` (program name first), write results to `out` and
/// diagnostics to `err`, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let result = match cli.command {
        Command::Entropy(a) => cmd_entropy(a),
        Command::Check(a) => cmd_check(a),
        Command::Egg(a) => cmd_egg(a),
        Command::Vn(a) => cmd_vn(a),
        Command::Stirling(a) => cmd_stirling(a),
    };
    match result {
        Ok(text) => {
            let _ = write!(out, "{text}");
            EXIT_OK
        }
        Err(Failure::Parse(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_PARSE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
        Err(Failure::Check(text)) => {
            let _ = write!(out, "{text}");
            EXIT_CHECK
        }
    }
}

fn read_input(arg: &str) -> std::result::Result<String, Failure> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Parse(format!("{arg}: {e}")))
    }
}

fn load_state(arg: &str) -> std::result::Result<(StateSpaceModel, StateVector), Failure> {
    let doc = StateDocument::from_json(&read_input(arg)?).map_err(|e| Failure::Parse(e.to_string()))?;
    let state = doc.state();
    Ok((doc.model, state))
}

fn load_components(arg: &str) -> std::result::Result<(StateSpaceModel, Vec<StateVector>), Failure> {
    let values: Vec<serde_json::Value> =
        serde_json::from_str(&read_input(arg)?).map_err(|e| Failure::Parse(e.to_string()))?;
    let docs = values
        .iter()
        .map(|v| StateDocument::from_json(&v.to_string()))
        .collect::<crate::Result<Vec<_>>>()
        .map_err(|e| Failure::Parse(e.to_string()))?;
    let model = docs
        .first()
        .map(|d| d.model.clone())
        .ok_or_else(|| Failure::Parse("no components given".into()))?;
    if docs.iter().any(|d| d.model != model) {
        return Err(Failure::Parse("components belong to different models".into()));
    }
    Ok((model, docs.iter().map(StateDocument::state).collect()))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("outputs serialize");
    s.push('\n');
    s
}

fn entropy_report(
    a: &EntropyArgs,
    model: &StateSpaceModel,
    w: &StateVector,
    alpha: Option<f64>,
) -> crate::Result<EntropyReport> {
    let seed = a.seed.seed;
    match (a.method, alpha) {
        (Method::Spectral, None) => spectral_entropy(model, w, LogBase::E),
        (Method::Spectral, Some(al)) => renyi_entropy(model, w, al),
        (Method::Measurement, al) => measurement_entropy_search(model, w, al.unwrap_or(1.0), a.budget, seed),
        (Method::Decomposition, al) => {
            decomposition_entropy_search(model, w, al.unwrap_or(1.0), a.budget, seed)
        }
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Spectral => "spectral",
        Method::Measurement => "measurement",
        Method::Decomposition => "decomposition",
    }
}

fn cmd_entropy(a: EntropyArgs) -> Outcome {
    let (model, w) = load_state(&a.state)?;
    if let Some(alphas) = &a.sweep {
        let mut s = String::from("alpha,value,method\n");
        for &al in alphas {
            let r = entropy_report(&a, &model, &w, Some(al))?;
            s.push_str(&format!("{al},{},{}\n", r.value, method_name(a.method)));
        }
        return Ok(s);
    }
    let r = entropy_report(&a, &model, &w, a.alpha)?;
    Ok(match a.format {
        Format::Json => json(&r),
        Format::Csv => format!(
            "alpha,value,method\n{},{},{}\n",
            r.alpha.map_or(String::new(), |x| x.to_string()),
            r.value,
            method_name(a.method)
        ),
        Format::Text => {
            let unit = if r.base == LogBase::E { "nats" } else { "bits" };
            format!("{} {unit} ({})\n", r.value, method_name(a.method))
        }
    })
}

fn cmd_check(a: CheckArgs) -> Outcome {
    let summary = run_suite(a.suite, a.trials, a.seed.seed)?;
    let text = match a.format {
        Format::Json => json(&summary),
        Format::Csv => format!(
            "suite,trials,passed,failed,worst_residual\n{},{},{},{},{:e}\n",
            a.suite.name(),
            summary.trials,
            summary.passed,
            summary.failed,
            summary.worst_residual
        ),
        Format::Text => {
            let mut s = format!(
                "{}: {}/{} passed, worst residual {:e}\n",
                a.suite.name(),
                summary.passed,
                summary.trials,
                summary.worst_residual
            );
            for f in &summary.expected_failures {
                s.push_str(&format!(
                    "expected failure: {} ({} -> {})\n",
                    f.name, f.s_before, f.s_after
                ));
            }
            s
        }
    };
    if summary.all_passed() {
        Ok(text)
    } else {
        Err(Failure::Check(text))
    }
}

fn cmd_egg(a: EggArgs) -> Outcome {
    let shape = EggShape::new(a.r, a.big_r).map_err(|e| Failure::Parse(e.to_string()))?;
    if let Some(n) = a.grid {
        let rows = egg_grid_sweep(&shape, n, DECOMPOSITION_TOL)?;
        let mut s = String::from("x,y,alpha,p,residual\n");
        for r in rows {
            s.push_str(&format!("{},{},{},{},{:e}\n", r.x, r.y, r.alpha, r.p, r.residual));
        }
        return Ok(s);
    }
    if a.witness {
        return Ok(json(&egg_nonuniqueness_witness(&shape)));
    }
    match a.point.as_deref() {
        Some([x, y]) => Ok(json(&egg_decompose([*x, *y], &shape, DECOMPOSITION_TOL)?)),
        Some(_) => Err(Failure::Parse("--point takes x,y".into())),
        None => Err(Failure::Parse("one of --grid, --witness or --point is required".into())),
    }
}

fn cmd_vn(a: VnArgs) -> Outcome {
    let cfg = GasConfig::new(a.n, a.v, a.t)
        .and_then(|c| c.with_k_b(a.k_b))
        .map_err(|e| Failure::Parse(e.to_string()))?;
    match a.protocol {
        Protocol::Vn => {
            let arg = a.state.as_deref().ok_or_else(|| Failure::Parse("--state is required".into()))?;
            let (model, w) = load_state(arg)?;
            Ok(json(&run_von_neumann_protocol(&model, &w, &cfg)?))
        }
        Protocol::Petz => {
            if let Some(x) = a.gbit_a {
                return Ok(json(&gbit_petz_center(x, &cfg)?));
            }
            let (model, comps, weights) = mixture_inputs(&a)?;
            Ok(json(&run_petz_protocol(&model, &weights, &comps, &cfg)?))
        }
        Protocol::Mixing => {
            let (model, comps, weights) = mixture_inputs(&a)?;
            Ok(json(&mixing_protocol(&model, &comps, &weights, &cfg)?))
        }
    }
}

fn mixture_inputs(
    a: &VnArgs,
) -> std::result::Result<(StateSpaceModel, Vec<StateVector>, Vec<f64>), Failure> {
    let arg = a
        .components
        .as_deref()
        .ok_or_else(|| Failure::Parse("--components is required".into()))?;
    let (model, comps) = load_components(arg)?;
    let weights = match &a.weights {
        Some(w) => w.clone(),
        None => vec![1.0 / comps.len() as f64; comps.len()],
    };
    Ok((model, comps, weights))
}

fn cmd_stirling(a: StirlingArgs) -> Outcome {
    Ok(json(&stirling_multiplicity_entropy(&a.counts)?))
}
