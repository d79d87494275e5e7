//! Solver library for the commitment game between a task-recommendation
//! system and a typed crowd worker.
//!
//! The system (leader) commits to a distribution over task recommendations;
//! a worker (follower) of privately known type observes the recommendation
//! and picks the task that maximizes their own utility. The crate models the
//! game, computes optimal commitments by solving one linear program per
//! follower profile of the type-expanded normal form, derives the interval
//! of disobedience costs that steers every type to suitable tasks, and
//! replays interactions in a seeded Monte Carlo harness.

pub mod best_response;
pub mod lp;
pub mod model;
pub mod reward;
pub mod sim;
pub mod solver;

#[cfg(test)]
pub(crate) mod testutil;

pub use best_response::{
    leader_expected_utility, optimal_observed_action_commitment, worker_best_response,
    BestResponse, MixedStrategy, StrategyError, STRATEGY_TOL,
};
pub use lp::{
    solve_lp, solve_lp_traced, LinearProgram, LpError, LpOutcome, LpStatus, FEAS_TOL, PIVOT_TOL,
};
pub use model::{
    beta_category, default_matching, enumerate_worker_types, GameSpec, MatchingTable, ModelError,
    TaskType, UtilityParams, Violation, WorkerType, PRIOR_TOL,
};
pub use reward::{
    feasible_mu_region, mu_bounds_for_type, verify_steering, BoundSide, BoundaryHit, DesignError,
    MuInterval, MuRegion, SteeringVerdict, SteeringViolation, TypeBounds,
};
pub use sim::{simulate, SimulationReport, GENERATOR_ID};
pub use solver::{
    brute_force_commitment_value, harsanyi_transform, harsanyi_transform_with_budget,
    max_best_response_violation, mixed_best_response, solve_multiple_lps,
    solve_multiple_lps_with_budget, write_normal_form_dump, FollowerProfile, LpTally,
    NormalFormGame, SolveResult, SolverError, DEFAULT_CELL_BUDGET, TIE_TOL,
};
