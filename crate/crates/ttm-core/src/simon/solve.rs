//! End-to-end Simon runs: the data-pulse-eliminate-verify loop, trace
//! replay, Monte Carlo studies, and the analytic probability and delay
//! figures.

use num_traits::Float;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bits::Bits;
use crate::railnet::NetError;

use super::bank::{init_bank, PulseError, PulseReport, RippleMode};
use super::instance::{next_data, DataElement, SimonInstance, WalkMode, WalkState};
use super::mesh::{build_elimination, settle_mesh, EliminationSystem, MeshOutcome};

#[derive(Clone, Copy, Debug)]
pub struct SolveConfig {
    pub seed: u64,
    pub walk: WalkMode,
    /// Run the elimination every this many pulses.
    pub cadence: u64,
    /// Data budget including the initialization element; default 50n.
    pub max_data: Option<u64>,
    pub ripple: RippleMode,
    pub record_trace: bool,
    /// Keep a snapshot of every elimination for cross-checking.
    pub record_eliminations: bool,
}

impl SolveConfig {
    pub fn new(seed: u64) -> SolveConfig {
        SolveConfig {
            seed,
            walk: WalkMode::SingleBit,
            cadence: 1,
            max_data: None,
            ripple: RippleMode::SwitchLevel,
            record_trace: false,
            record_eliminations: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TraceStep {
    pub x: Bits,
    pub f: Bits,
    pub toggled_y: Vec<usize>,
    pub s_toggles: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EliminationRecord {
    pub rows: Vec<Bits>,
    pub rhs: Bits,
    pub rank: usize,
    pub candidate: Option<Bits>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub n: usize,
    pub secret: Option<Bits>,
    pub converged: bool,
    pub data_elements: u64,
    pub h_pulses: u64,
    pub eliminations: u64,
    /// Eliminations whose fitted rows reached rank n-1.
    pub rank_windows: u64,
    pub queries: u64,
    /// Coax attempts of the elimination that produced the answer.
    pub coax_attempts: u64,
    pub seed: u64,
    /// "oracle" for counted oracle checks, "trace" for replay consistency.
    pub verification: &'static str,
    pub final_rows: Vec<Bits>,
    pub final_rhs: Bits,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceStep>,
    #[serde(skip)]
    pub elimination_log: Vec<EliminationRecord>,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("data budget of {budget} elements exhausted")]
    BudgetExceeded { budget: u64, report: Box<RunReport> },
    #[error(transparent)]
    Net(#[from] NetError),
}

/// One counted check of a candidate against the problem data: the inputs 0
/// and ŝ form a pair exactly for the true secret.
pub fn verify_candidate(instance: &SimonInstance, candidate: Bits) -> bool {
    debug_assert!(!candidate.is_zero());
    let f0 = instance.f(Bits::zero(instance.n()));
    instance.query(candidate) == f0
}

struct Run {
    report: RunReport,
    pulses_since_elimination: u64,
}

impl Run {
    fn eliminate(&mut self, system: &EliminationSystem, record: bool) -> MeshOutcome {
        let outcome = settle_mesh(system);
        self.report.eliminations += 1;
        if outcome.rank == system.width() - 1 {
            self.report.rank_windows += 1;
        }
        if record {
            self.report.elimination_log.push(EliminationRecord {
                rows: system.rows.clone(),
                rhs: system.rhs,
                rank: outcome.rank,
                candidate: outcome.candidate,
            });
        }
        self.pulses_since_elimination = 0;
        outcome
    }
}

/// Runs the machine against an instance: stream data, pulse, eliminate,
/// verify; stop at the first candidate the oracle confirms.
pub fn solve_simon(instance: &SimonInstance, config: SolveConfig) -> Result<RunReport, SolveError> {
    let n = instance.n();
    let budget = config.max_data.unwrap_or(50 * n as u64);
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);

    let f0 = instance.query(Bits::zero(n));
    let mut bank = init_bank(n, f0, config.ripple);
    let mut run = Run {
        report: RunReport {
            n,
            secret: None,
            converged: false,
            data_elements: 1,
            h_pulses: bank.h_pulses(),
            eliminations: 0,
            rank_windows: 0,
            queries: 1,
            coax_attempts: 0,
            seed: config.seed,
            verification: "oracle",
            final_rows: bank.rows(),
            final_rhs: Bits::zero(n),
            trace: Vec::new(),
            elimination_log: Vec::new(),
        },
        pulses_since_elimination: 0,
    };
    if config.record_trace {
        run.report.trace.push(TraceStep {
            x: Bits::zero(n),
            f: f0,
            toggled_y: vec![],
            s_toggles: vec![],
        });
    }

    // The n = 1 instance resolves right after initialization: the only
    // nonzero string already spans the one-dimensional mesh.
    let outcome = run.eliminate(&build_elimination(&bank), config.record_eliminations);
    if let Some(candidate) = outcome.candidate {
        run.report.queries += 1;
        if verify_candidate(instance, candidate) {
            return Ok(finish(run.report, &bank, candidate, outcome.coax_attempts));
        }
    }

    let mut walk = WalkState::start(n);
    while run.report.data_elements < budget {
        let element = next_data(instance, &mut walk, config.walk, &mut rng);
        run.report.data_elements += 1;
        run.report.queries += 1;
        let pulse = match bank.h_pulse(element.x, element.f, &mut rng) {
            Ok(p) => p,
            Err(PulseError::NoChange) => unreachable!("the walk always moves"),
            Err(PulseError::Net(e)) => return Err(SolveError::Net(e)),
        };
        run.report.h_pulses = bank.h_pulses();
        if config.record_trace {
            run.report.trace.push(TraceStep {
                x: element.x,
                f: element.f,
                toggled_y: pulse.toggled_y.clone(),
                s_toggles: pulse.s_toggles.clone(),
            });
        }
        run.pulses_since_elimination += 1;
        if run.pulses_since_elimination >= config.cadence {
            let outcome = run.eliminate(&build_elimination(&bank), config.record_eliminations);
            if let Some(candidate) = outcome.candidate {
                run.report.queries += 1;
                if verify_candidate(instance, candidate) {
                    return Ok(finish(run.report, &bank, candidate, outcome.coax_attempts));
                }
            }
        }
    }
    let mut report = run.report;
    report.final_rows = bank.rows();
    report.final_rhs = bank.y().xor(&bank.initial_y());
    Err(SolveError::BudgetExceeded {
        budget,
        report: Box::new(report),
    })
}

fn finish(
    mut report: RunReport,
    bank: &super::FunctionBank,
    candidate: Bits,
    coax_attempts: usize,
) -> RunReport {
    report.secret = Some(candidate);
    report.converged = true;
    report.coax_attempts = coax_attempts as u64;
    report.final_rows = bank.rows();
    report.final_rhs = bank.y().xor(&bank.initial_y());
    report
}

#[derive(Debug, Error, PartialEq)]
pub enum ReplayError {
    #[error("trace is empty")]
    Empty,
    #[error("line {0}: trace must start with the x = 0 element")]
    FirstNotZero(usize),
    #[error("line {0}: {1}")]
    Malformed(usize, String),
    #[error("line {0}: input repeats the previous element")]
    NoChange(usize),
    #[error("line {0}: seen data contradicts candidate {1}")]
    Inconsistent(usize, Bits),
    #[error("net error: {0}")]
    Net(NetError),
}

/// Parses the line-oriented replay format: one `<x> <f>` pair of binary
/// strings per line, blank lines and `#` comments ignored.
pub fn parse_trace(text: &str) -> Result<Vec<DataElement>, ReplayError> {
    let mut out = Vec::new();
    let mut width = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(xs), Some(fs), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(ReplayError::Malformed(
                lineno + 1,
                "expected `<x> <f>`".into(),
            ));
        };
        let x = Bits::parse(xs).map_err(|e| ReplayError::Malformed(lineno + 1, e.to_string()))?;
        let f = Bits::parse(fs).map_err(|e| ReplayError::Malformed(lineno + 1, e.to_string()))?;
        let w = *width.get_or_insert(x.width());
        if x.width() != w || f.width() != w {
            return Err(ReplayError::Malformed(lineno + 1, "width mismatch".into()));
        }
        out.push(DataElement { x, f });
    }
    if out.is_empty() {
        return Err(ReplayError::Empty);
    }
    Ok(out)
}

/// Replays a fixed data sequence through the machine. The whole trace is
/// consumed; the final elimination's candidate is checked for consistency
/// against every pair visible in the data itself (no oracle is available).
pub fn replay_simon(
    elements: &[DataElement],
    config: SolveConfig,
) -> Result<RunReport, ReplayError> {
    let first = elements.first().ok_or(ReplayError::Empty)?;
    if !first.x.is_zero() {
        return Err(ReplayError::FirstNotZero(1));
    }
    let n = first.x.width();
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let mut bank = init_bank(n, first.f, config.ripple);
    let mut report = RunReport {
        n,
        secret: None,
        converged: false,
        data_elements: 1,
        h_pulses: bank.h_pulses(),
        eliminations: 0,
        rank_windows: 0,
        queries: 0,
        coax_attempts: 0,
        seed: config.seed,
        verification: "trace",
        final_rows: bank.rows(),
        final_rhs: Bits::zero(n),
        trace: Vec::new(),
        elimination_log: Vec::new(),
    };
    if config.record_trace {
        report.trace.push(TraceStep {
            x: first.x,
            f: first.f,
            toggled_y: vec![],
            s_toggles: vec![],
        });
    }
    let mut last_outcome = settle_mesh(&build_elimination(&bank));
    report.eliminations += 1;
    if last_outcome.rank == n - 1 {
        report.rank_windows += 1;
    }
    for (i, element) in elements.iter().enumerate().skip(1) {
        let pulse: PulseReport = match bank.h_pulse(element.x, element.f, &mut rng) {
            Ok(p) => p,
            Err(PulseError::NoChange) => return Err(ReplayError::NoChange(i + 1)),
            Err(PulseError::Net(e)) => return Err(ReplayError::Net(e)),
        };
        report.data_elements += 1;
        report.h_pulses = bank.h_pulses();
        if config.record_trace {
            report.trace.push(TraceStep {
                x: element.x,
                f: element.f,
                toggled_y: pulse.toggled_y,
                s_toggles: pulse.s_toggles,
            });
        }
        last_outcome = settle_mesh(&build_elimination(&bank));
        report.eliminations += 1;
        if last_outcome.rank == n - 1 {
            report.rank_windows += 1;
        }
    }
    report.final_rows = bank.rows();
    report.final_rhs = bank.y().xor(&bank.initial_y());
    if let Some(candidate) = last_outcome.candidate {
        for (i, e) in elements.iter().enumerate() {
            let partner = e.x.xor(&candidate);
            if let Some(other) = elements.iter().find(|o| o.x == partner) {
                if other.f != e.f {
                    return Err(ReplayError::Inconsistent(i + 1, candidate));
                }
            }
        }
        report.secret = Some(candidate);
        report.converged = true;
        report.coax_attempts = last_outcome.coax_attempts as u64;
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct MonteCarloReport {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// The analytic convergence lower-bound product at this n.
    pub bound: f64,
    pub success_rate: f64,
    pub mean_data: f64,
    pub median_data: f64,
    /// Fraction of n-row windows (eliminations) whose rows reached rank n-1.
    pub rank_window_fraction: f64,
    pub total_eliminations: u64,
}

/// Seeded Monte Carlo over random instances; per-trial seeds derive from the
/// master seed, so reports merge identically regardless of execution order.
pub fn monte_carlo(n: usize, trials: u64, seed: u64, base: SolveConfig) -> MonteCarloReport {
    let mut master = ChaCha12Rng::seed_from_u64(seed);
    let mut successes = 0u64;
    let mut data_counts: Vec<u64> = Vec::new();
    let mut eliminations = 0u64;
    let mut rank_windows = 0u64;
    for _ in 0..trials {
        let secret = super::random_secret(n, &mut master);
        let instance_seed = master.next_u64();
        let run_seed = master.next_u64();
        let instance =
            super::make_instance(n, secret, instance_seed).expect("random secrets are nonzero");
        let mut config = base;
        config.seed = run_seed;
        match solve_simon(&instance, config) {
            Ok(report) => {
                successes += 1;
                data_counts.push(report.data_elements);
                eliminations += report.eliminations;
                rank_windows += report.rank_windows;
            }
            Err(SolveError::BudgetExceeded { report, .. }) => {
                eliminations += report.eliminations;
                rank_windows += report.rank_windows;
            }
            Err(SolveError::Net(e)) => panic!("net error during Monte Carlo: {e}"),
        }
    }
    data_counts.sort_unstable();
    let median = if data_counts.is_empty() {
        f64::NAN
    } else if data_counts.len() % 2 == 1 {
        data_counts[data_counts.len() / 2] as f64
    } else {
        (data_counts[data_counts.len() / 2 - 1] + data_counts[data_counts.len() / 2]) as f64 / 2.0
    };
    let mean = if data_counts.is_empty() {
        f64::NAN
    } else {
        data_counts.iter().sum::<u64>() as f64 / data_counts.len() as f64
    };
    MonteCarloReport {
        n,
        trials,
        seed,
        bound: convergence_probability_bound(Some(n as u32)),
        success_rate: successes as f64 / trials as f64,
        mean_data: mean,
        median_data: median,
        rank_window_fraction: if eliminations == 0 {
            f64::NAN
        } else {
            rank_windows as f64 / eliminations as f64
        },
        total_eliminations: eliminations,
    }
}

/// Monte Carlo estimate of the probability that n uniform draws from the
/// secret-orthogonal space reach rank n-1. The direct sampling oracle behind
/// the probability-bound checks.
pub fn rank_probability_mc(n: usize, trials: u64, seed: u64) -> f64 {
    assert!(n >= 2);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..trials {
        let secret = super::random_secret(n, &mut rng);
        // Basis of the orthogonal complement: for each position except the
        // secret's leading one, a unit vector corrected onto the space.
        let lead = (0..n).find(|&i| secret.get(i)).unwrap();
        let basis: Vec<Bits> = (0..n)
            .filter(|&j| j != lead)
            .map(|j| {
                let mut v = Bits::unit(n, j);
                if secret.get(j) {
                    v.set(lead, true);
                }
                v
            })
            .collect();
        let mut words = Vec::with_capacity(n);
        for _ in 0..n {
            let mut draw = Bits::zero(n);
            let sel = rng.next_u64();
            for (b, item) in basis.iter().enumerate() {
                if sel >> b & 1 == 1 {
                    draw = draw.xor(item);
                }
            }
            debug_assert!(!draw.dot(&secret));
            words.push(draw.word());
        }
        let mut basis_words: Vec<u64> = Vec::new();
        for mut w in words {
            for &b in &basis_words {
                w = w.min(w ^ b);
            }
            if w != 0 {
                basis_words.push(w);
                basis_words.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        if basis_words.len() == n - 1 {
            hits += 1;
        }
    }
    hits as f64 / trials as f64
}

/// The convergence lower-bound product: for finite n the product of
/// (2^n - 2^k) / 2^n over k = 0..n-1, and its limit, about 0.28879, for
/// `None`.
pub fn convergence_probability_bound<F: Float>(n: Option<u32>) -> F {
    let one = F::one();
    let two = F::from(2.0).unwrap();
    match n {
        Some(n) => (0..n)
            .map(|k| one - two.powi(k as i32 - n as i32))
            .fold(one, |a, b| a * b),
        None => (1..=64).map(|k| one - two.powi(-k)).fold(one, |a, b| a * b),
    }
}

/// Exact probability that `draws` uniform vectors from a `dim`-dimensional
/// GF(2) space span it: the product of (1 - 2^(i - draws)) over i < dim.
pub fn analytic_rank_probability<F: Float>(draws: u32, dim: u32) -> F {
    let one = F::one();
    let two = F::from(2.0).unwrap();
    (0..dim)
        .map(|i| one - two.powi(i as i32 - draws as i32))
        .fold(one, |a, b| a * b)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RippleDelay<F> {
    pub per_ripple_seconds: F,
    pub total_seconds: F,
}

/// Ripple-delay estimate: one gate transition per qubit at the given
/// transition frequency, scaled by the reversible-logic penalty, times the
/// iteration count.
pub fn estimate_ripple_delay<F: Float>(
    n_qubits: u64,
    transition_frequency_hz: F,
    reversibility_penalty: F,
    iterations: u64,
) -> RippleDelay<F> {
    let per = F::from(n_qubits).unwrap() / transition_frequency_hz * reversibility_penalty;
    RippleDelay {
        per_ripple_seconds: per,
        total_seconds: per * F::from(iterations).unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simon::make_instance;

    fn bits(s: &str) -> Bits {
        Bits::parse(s).unwrap()
    }

    #[test]
    fn probability_bound_values() {
        assert!((convergence_probability_bound::<f64>(None) - 0.28879).abs() < 1e-5);
        assert!((convergence_probability_bound::<f64>(Some(1)) - 0.5).abs() < 1e-12);
        assert!((convergence_probability_bound::<f64>(Some(2)) - 0.375).abs() < 1e-12);
    }

    #[test]
    fn probability_bound_monotone_and_bounded() {
        // Strictly decreasing until the extra factors vanish below f64
        // resolution, never below the limit.
        let limit = convergence_probability_bound::<f64>(None);
        let mut prev = 1.0;
        for n in 1..=60 {
            let p = convergence_probability_bound::<f64>(Some(n));
            if n <= 40 {
                assert!(p < prev, "n={n}");
            } else {
                assert!(p <= prev, "n={n}");
            }
            assert!(p >= limit, "n={n}");
            prev = p;
        }
    }

    #[test]
    fn analytic_rank_probability_matches_enumeration() {
        // n = 3 draws from the 2-dimensional orthogonal space: enumerate all
        // 4^3 draw triples and count rank-2 outcomes.
        let secret = bits("110");
        let space: Vec<Bits> = (0..8u64)
            .map(|w| Bits::from_word(w, 3))
            .filter(|y| !y.dot(&secret))
            .collect();
        assert_eq!(space.len(), 4);
        let mut hits = 0;
        let mut total = 0;
        for a in &space {
            for b in &space {
                for c in &space {
                    total += 1;
                    let mut basis: Vec<u64> = vec![];
                    for mut w in [a.word(), b.word(), c.word()] {
                        for &x in &basis {
                            w = w.min(w ^ x);
                        }
                        if w != 0 {
                            basis.push(w);
                        }
                    }
                    if basis.len() == 2 {
                        hits += 1;
                    }
                }
            }
        }
        let exact = hits as f64 / total as f64;
        assert!((analytic_rank_probability::<f64>(3, 2) - exact).abs() < 1e-12);
    }

    #[test]
    fn delay_estimates_match_quoted_figures() {
        let d = estimate_ripple_delay::<f64>(1000, 10e9, 1.0, 3000);
        assert!((d.per_ripple_seconds - 0.1e-6).abs() / 0.1e-6 < 1e-3);
        assert!((d.total_seconds - 0.3e-3).abs() / 0.3e-3 < 1e-3);
        let d = estimate_ripple_delay::<f64>(1, 5.0, 1.0, 1);
        assert!((d.per_ripple_seconds - 0.2).abs() < 1e-12);
    }

    #[test]
    fn n1_solves_immediately() {
        let instance = make_instance(1, bits("1"), 9).unwrap();
        let report = solve_simon(&instance, SolveConfig::new(4)).unwrap();
        assert_eq!(report.secret, Some(bits("1")));
        assert_eq!(report.data_elements, 1);
    }

    #[test]
    fn parse_trace_round_trip_and_errors() {
        let text = "# fixture\n0000 1101\n1000 1000\n";
        let elements = parse_trace(text).unwrap();
        assert_eq!(elements.len(), 2);
        assert_eq!(
            elements[1],
            DataElement {
                x: bits("1000"),
                f: bits("1000")
            }
        );
        assert_eq!(parse_trace("").unwrap_err(), ReplayError::Empty);
        assert!(matches!(
            parse_trace("01 1"),
            Err(ReplayError::Malformed(1, _))
        ));
        assert!(matches!(
            parse_trace("0 1 0"),
            Err(ReplayError::Malformed(1, _))
        ));
    }

    #[test]
    fn replay_requires_zero_start() {
        let elements = vec![DataElement {
            x: bits("1000"),
            f: bits("0000"),
        }];
        assert_eq!(
            replay_simon(&elements, SolveConfig::new(0)).unwrap_err(),
            ReplayError::FirstNotZero(1)
        );
    }

    #[test]
    fn small_instances_solve_and_verify() {
        for seed in 0..10 {
            let instance = make_instance(4, bits("1001"), seed).unwrap();
            let mut config = SolveConfig::new(seed ^ 0x5eed);
            config.record_eliminations = true;
            let report = solve_simon(&instance, config).unwrap();
            assert_eq!(report.secret, Some(bits("1001")));
            assert!(report.converged);
            // Every fitted row at success is orthogonal to the secret.
            for row in &report.final_rows {
                assert!(!row.dot(&bits("1001")));
            }
        }
    }
}
