//! Command-line front end: runs each algorithm on the switch-level machine,
//! replays trace fixtures, runs Monte Carlo studies, and emits JSON or CSV
//! reports. Reports go to standard output, diagnostics to standard error.
//! Identical configurations produce byte-identical output.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use ttm_core::bits::Bits;
use ttm_core::bv::synthesize_cascade;
use ttm_core::deutsch::{classify_table, deutsch_classify_from, Classification, TruthTable};
use ttm_core::railnet::{build_single_cell, CellKind, Rail};
use ttm_core::simon::{
    convergence_probability_bound, estimate_ripple_delay, make_instance, monte_carlo, parse_trace,
    random_secret, replay_simon, solve_simon, MonteCarloReport, RippleMode, RunReport, SolveConfig,
    SolveError, WalkMode,
};

const SEED_ENV: &str = "TTM_SEED";

#[derive(Parser)]
#[command(
    name = "ttm",
    version,
    about = "Dual-rail reversible switching network simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a single-input cell kind or a multi-input truth table as
    /// balanced or constant with one source-out query.
    Deutsch(DeutschArgs),
    /// Synthesize a hidden-string cascade and recover the string in one
    /// parallel source-out pass.
    Bv(BvArgs),
    /// Solve a Simon instance with the self-configuring bank, or replay a
    /// recorded trace.
    Simon(SimonArgs),
    /// Seeded Monte Carlo convergence study against the analytic bound.
    Montecarlo(MonteCarloArgs),
    /// Ripple-delay estimate for a hypothetical realization.
    Delay(DelayArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Identity,
    Negation,
    Const0,
    Const1,
}

impl From<KindArg> for CellKind {
    fn from(k: KindArg) -> CellKind {
        match k {
            KindArg::Identity => CellKind::Identity,
            KindArg::Negation => CellKind::Negation,
            KindArg::Const0 => CellKind::Const0,
            KindArg::Const1 => CellKind::Const1,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WalkArg {
    #[value(name = "single-bit")]
    SingleBit,
    General,
}

impl From<WalkArg> for WalkMode {
    fn from(w: WalkArg) -> WalkMode {
        match w {
            WalkArg::SingleBit => WalkMode::SingleBit,
            WalkArg::General => WalkMode::General,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RippleArg {
    Switch,
    Algebraic,
}

impl From<RippleArg> for RippleMode {
    fn from(r: RippleArg) -> RippleMode {
        match r {
            RippleArg::Switch => RippleMode::SwitchLevel,
            RippleArg::Algebraic => RippleMode::Algebraic,
        }
    }
}

#[derive(Args)]
struct DeutschArgs {
    /// Named single-input cell kind.
    #[arg(long, conflicts_with = "table")]
    kind: Option<KindArg>,
    /// Truth table as a value list, e.g. 0110 (two inputs, x1 first).
    #[arg(long)]
    table: Option<String>,
    /// Initial common-mode input level applied before sourcing out.
    #[arg(long, default_value_t = 0)]
    initial: u8,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct BvArgs {
    /// Explicit hidden string, x1 first.
    #[arg(long, conflicts_with = "random")]
    secret: Option<String>,
    /// Draw a random nonzero hidden string of width n.
    #[arg(long, requires = "n")]
    random: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SimonArgs {
    /// Explicit nonzero secret, x1 first.
    #[arg(long, conflicts_with_all = ["random", "replay"])]
    secret: Option<String>,
    /// Draw a random nonzero secret of width n.
    #[arg(long, requires = "n", conflicts_with = "replay")]
    random: bool,
    #[arg(long)]
    n: Option<usize>,
    /// Replay a recorded trace file instead of querying an instance.
    #[arg(long)]
    replay: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = WalkArg::SingleBit)]
    walk: WalkArg,
    /// Run the elimination every this many pulses.
    #[arg(long, default_value_t = 1)]
    cadence: u64,
    /// Data budget as a multiple of n.
    #[arg(long, default_value_t = 50)]
    max_data_mult: u64,
    /// Include the per-step trace in the report.
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum, default_value_t = RippleArg::Switch)]
    ripple: RippleArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct MonteCarloArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = WalkArg::SingleBit)]
    walk: WalkArg,
    #[arg(long, default_value_t = 50)]
    max_data_mult: u64,
    #[arg(long, value_enum, default_value_t = RippleArg::Switch)]
    ripple: RippleArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct DelayArgs {
    #[arg(long)]
    qubits: u64,
    /// Transistor transition frequency in GHz.
    #[arg(long)]
    frequency_ghz: f64,
    /// Slow-down factor for reversible logic.
    #[arg(long, default_value_t = 1.0)]
    penalty: f64,
    #[arg(long, default_value_t = 1)]
    iterations: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

struct UsageError(String);

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// Seed resolution: the flag, then the TTM_SEED environment variable;
/// randomized commands refuse to run without one.
fn require_seed(flag: Option<u64>) -> Result<u64, UsageError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .parse()
            .map_err(|_| usage(format!("{SEED_ENV} must be an unsigned integer, got {v:?}"))),
        Err(_) => Err(usage(format!(
            "--seed is required for randomized commands (or set {SEED_ENV})"
        ))),
    }
}

fn parse_bits(s: &str, what: &str) -> Result<Bits, UsageError> {
    Bits::parse(s).map_err(|e| usage(format!("--{what}: {e}")))
}

fn run(cli: Cli) -> Result<ExitCode, UsageError> {
    match cli.command {
        Command::Deutsch(args) => deutsch(args),
        Command::Bv(args) => bv(args),
        Command::Simon(args) => simon(args),
        Command::Montecarlo(args) => montecarlo(args),
        Command::Delay(args) => delay(args),
    }
}

fn classification_name(c: Classification) -> &'static str {
    match c {
        Classification::Balanced => "balanced",
        Classification::Constant => "constant",
    }
}

#[derive(Serialize)]
struct DeutschReport {
    command: &'static str,
    input: String,
    classification: &'static str,
    queries: u64,
}

fn deutsch(args: DeutschArgs) -> Result<ExitCode, UsageError> {
    let initial = match args.initial {
        0 => Rail::Minus,
        1 => Rail::Plus,
        other => return Err(usage(format!("--initial must be 0 or 1, got {other}"))),
    };
    let (input, outcome) = match (args.kind, &args.table) {
        (Some(kind), None) => {
            let cell = build_single_cell(kind.into());
            (
                format!("kind:{}", kind_name(kind)),
                deutsch_classify_from(&cell, initial).map_err(|e| usage(e.to_string()))?,
            )
        }
        (None, Some(table)) => {
            let table = TruthTable::parse(table)
                .ok_or_else(|| usage(format!("--table: not a 2/4/8/16-value list: {table:?}")))?;
            let r = classify_table(&table).map_err(|e| usage(e.to_string()))?;
            (format!("table:{}", args.table.as_deref().unwrap()), r)
        }
        _ => return Err(usage("pass exactly one of --kind or --table")),
    };
    let report = DeutschReport {
        command: "deutsch",
        input,
        classification: classification_name(outcome.0),
        queries: outcome.1,
    };
    emit(&report, args.format);
    Ok(ExitCode::SUCCESS)
}

fn kind_name(kind: KindArg) -> &'static str {
    match kind {
        KindArg::Identity => "identity",
        KindArg::Negation => "negation",
        KindArg::Const0 => "const0",
        KindArg::Const1 => "const1",
    }
}

#[derive(Serialize)]
struct BvReport {
    command: &'static str,
    n: usize,
    secret: Bits,
    recovered: Bits,
    matched: bool,
    queries: u64,
    switch_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

fn bv(args: BvArgs) -> Result<ExitCode, UsageError> {
    let (secret, seed) = if args.random {
        let seed = require_seed(args.seed)?;
        let n = args.n.unwrap();
        if !(1..=64).contains(&n) {
            return Err(usage("--n must be in 1..=64"));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        (random_secret(n, &mut rng), Some(seed))
    } else {
        let s = args
            .secret
            .as_deref()
            .ok_or_else(|| usage("pass --secret or --random"))?;
        let secret = parse_bits(s, "secret")?;
        if let Some(n) = args.n {
            if n != secret.width() {
                return Err(usage(format!(
                    "--n {n} does not match secret width {}",
                    secret.width()
                )));
            }
        }
        (secret, args.seed)
    };
    let circuit = synthesize_cascade(&secret);
    let (recovered, queries) = circuit.bv_recover().map_err(|e| usage(e.to_string()))?;
    let report = BvReport {
        command: "bv",
        n: secret.width(),
        secret,
        recovered,
        matched: recovered == secret,
        queries,
        switch_count: circuit.net().switch_count(),
        seed,
    };
    emit(&report, args.format);
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SimonCliReport {
    command: &'static str,
    walk: &'static str,
    budget: u64,
    #[serde(flatten)]
    report: RunReport,
}

fn simon(args: SimonArgs) -> Result<ExitCode, UsageError> {
    let walk_name = match args.walk {
        WalkArg::SingleBit => "single-bit",
        WalkArg::General => "general",
    };
    if args.cadence == 0 {
        return Err(usage("--cadence must be at least 1"));
    }
    if let Some(path) = &args.replay {
        let text =
            std::fs::read_to_string(path).map_err(|e| usage(format!("--replay {path}: {e}")))?;
        let elements = parse_trace(&text).map_err(|e| usage(format!("--replay {path}: {e}")))?;
        let mut config = SolveConfig::new(args.seed.unwrap_or(0));
        config.walk = args.walk.into();
        config.ripple = args.ripple.into();
        config.record_trace = true;
        let report = replay_simon(&elements, config).map_err(|e| usage(e.to_string()))?;
        let n = report.n;
        let converged = report.converged;
        let wrapped = SimonCliReport {
            command: "simon",
            walk: walk_name,
            budget: args.max_data_mult * n as u64,
            report,
        };
        emit(&wrapped, args.format);
        return Ok(if converged {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        });
    }

    let seed = require_seed(args.seed)?;
    let secret = if args.random {
        let n = args.n.unwrap();
        if !(2..=64).contains(&n) {
            return Err(usage("--n must be in 2..=64 for random secrets"));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        random_secret(n, &mut rng)
    } else {
        let s = args
            .secret
            .as_deref()
            .ok_or_else(|| usage("pass --secret, --random, or --replay"))?;
        let secret = parse_bits(s, "secret")?;
        if secret.is_zero() {
            return Err(usage("--secret: the all-zero string is not allowed"));
        }
        if let Some(n) = args.n {
            if n != secret.width() {
                return Err(usage(format!(
                    "--n {n} does not match secret width {}",
                    secret.width()
                )));
            }
        }
        secret
    };
    let n = secret.width();
    let instance =
        make_instance(n, secret, seed ^ 0x0051_1715_c0de).map_err(|e| usage(e.to_string()))?;
    let mut config = SolveConfig::new(seed);
    config.walk = args.walk.into();
    config.cadence = args.cadence;
    config.max_data = Some(args.max_data_mult * n as u64);
    config.ripple = args.ripple.into();
    config.record_trace = args.trace;
    let (report, code) = match solve_simon(&instance, config) {
        Ok(report) => (report, ExitCode::SUCCESS),
        Err(SolveError::BudgetExceeded { report, .. }) => {
            eprintln!("budget exhausted before convergence");
            (*report, ExitCode::FAILURE)
        }
        Err(SolveError::Net(e)) => return Err(usage(e.to_string())),
    };
    let wrapped = SimonCliReport {
        command: "simon",
        walk: walk_name,
        budget: args.max_data_mult * n as u64,
        report,
    };
    emit(&wrapped, args.format);
    Ok(code)
}

#[derive(Serialize)]
struct MonteCarloCliReport {
    command: &'static str,
    walk: &'static str,
    #[serde(flatten)]
    report: MonteCarloReport,
}

fn montecarlo(args: MonteCarloArgs) -> Result<ExitCode, UsageError> {
    if !(2..=24).contains(&args.n) {
        return Err(usage("--n must be in 2..=24"));
    }
    if args.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let seed = require_seed(args.seed)?;
    let mut base = SolveConfig::new(0);
    base.walk = args.walk.into();
    base.ripple = args.ripple.into();
    base.max_data = Some(args.max_data_mult * args.n as u64);
    let report = monte_carlo(args.n, args.trials, seed, base);
    let wrapped = MonteCarloCliReport {
        command: "montecarlo",
        walk: match args.walk {
            WalkArg::SingleBit => "single-bit",
            WalkArg::General => "general",
        },
        report,
    };
    emit(&wrapped, args.format);
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct DelayReport {
    command: &'static str,
    qubits: u64,
    frequency_hz: f64,
    penalty: f64,
    iterations: u64,
    per_ripple_seconds: f64,
    total_seconds: f64,
    convergence_bound_limit: f64,
}

fn delay(args: DelayArgs) -> Result<ExitCode, UsageError> {
    if args.qubits == 0 || args.frequency_ghz <= 0.0 || args.penalty <= 0.0 || args.iterations == 0
    {
        return Err(usage(
            "--qubits, --frequency-ghz, --penalty, and --iterations must be positive",
        ));
    }
    let hz = args.frequency_ghz * 1e9;
    let d = estimate_ripple_delay::<f64>(args.qubits, hz, args.penalty, args.iterations);
    let report = DelayReport {
        command: "delay",
        qubits: args.qubits,
        frequency_hz: hz,
        penalty: args.penalty,
        iterations: args.iterations,
        per_ripple_seconds: d.per_ripple_seconds,
        total_seconds: d.total_seconds,
        convergence_bound_limit: convergence_probability_bound(None),
    };
    emit(&report, args.format);
    Ok(ExitCode::SUCCESS)
}

fn emit<T: Serialize>(report: &T, format: Format) {
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(report).expect("reports serialize")
            );
        }
        Format::Csv => {
            let value = serde_json::to_value(report).expect("reports serialize");
            let mut fields = Vec::new();
            flatten("", &value, &mut fields);
            let mut header = String::new();
            let mut row = String::new();
            for (i, (k, v)) in fields.iter().enumerate() {
                if i > 0 {
                    header.push(',');
                    row.push(',');
                }
                header.push_str(k);
                let _ = write!(row, "{}", csv_quote(v));
            }
            println!("{header}");
            println!("{row}");
        }
    }
}

/// CSV is a flat projection of the JSON fields: nested objects get dotted
/// keys and arrays are embedded as compact JSON.
fn flatten(prefix: &str, value: &serde_json::Value, out: &mut Vec<(String, String)>) {
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        serde_json::Value::Array(_) => {
            out.push((prefix.to_string(), serde_json::to_string(value).unwrap()));
        }
        serde_json::Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_quote(v: &str) -> String {
    if v.contains(',') || v.contains('"') || v.contains('\n') {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}
