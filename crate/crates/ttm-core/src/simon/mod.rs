//! The self-learning Simon machine: problem instances, the bank of
//! programmable separable circuits fitted by H-pulse feedback, the bistable
//! elimination mesh, and the end-to-end solver.

mod bank;
mod instance;
mod mesh;
mod solve;

pub use bank::{init_bank, FunctionBank, PulseError, PulseReport, RippleMode, SeparableCircuit};
pub use instance::{
    make_instance, next_data, random_secret, DataElement, InstanceError, SimonInstance, WalkMode,
    WalkState,
};
pub use mesh::{
    build_elimination, mesh_cell_stability, mesh_is_stable, relax_mesh, settle_mesh,
    EliminationSystem, FeedbackCell, MeshOutcome, RelaxOutcome,
};
pub use solve::{
    analytic_rank_probability, convergence_probability_bound, estimate_ripple_delay, monte_carlo,
    parse_trace, rank_probability_mc, replay_simon, solve_simon, verify_candidate,
    EliminationRecord, MonteCarloReport, ReplayError, RippleDelay, RunReport, SolveConfig,
    SolveError, TraceStep,
};
