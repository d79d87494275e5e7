//! Optimal leader commitment: type-profile transformation of the incomplete
//! information game to normal form, one linear program per follower profile,
//! and a grid-sweep oracle for cross-checking on two-task games.

use std::io::{self, Write};

use serde::Serialize;
use thiserror::Error;

use crate::best_response::MixedStrategy;
use crate::lp::{solve_lp, LinearProgram, LpError, LpOutcome};
use crate::model::GameSpec;

/// Default ceiling on transformed payoff cells (2 · K · K^Θ).
pub const DEFAULT_CELL_BUDGET: u128 = 10_000_000;

/// Tolerance for follower-indifference ties when best-responding to a mixed
/// strategy.
pub const TIE_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("transformed game needs {cells} payoff cells, over the budget of {budget}")]
    CapacityExceeded { cells: u128, budget: u128 },
    #[error("operation requires exactly two task types, got {found}")]
    UnsupportedShape { found: usize },
    #[error("no follower profile produced a feasible program; the game data is inconsistent")]
    NoFeasibleProfile,
    #[error("profile {profile_index} produced an unbounded program over the strategy simplex")]
    UnboundedProfile { profile_index: usize },
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// A pure strategy of the transformed follower: one chosen task per worker
/// type.
///
/// Profiles are numbered by a mixed-radix code over the canonical type
/// order: `index = Σ_θ (c(θ) − 1) · K^θ`, with type 0 the least significant
/// digit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FollowerProfile {
    /// Task id chosen by each worker type, indexed by type.
    pub assignment: Vec<usize>,
}

impl FollowerProfile {
    /// Decodes a profile index for a game with `k` tasks and `type_count`
    /// worker types.
    pub fn from_index(mut index: usize, k: usize, type_count: usize) -> Self {
        let mut assignment = Vec::with_capacity(type_count);
        for _ in 0..type_count {
            assignment.push(index % k + 1);
            index /= k;
        }
        debug_assert_eq!(index, 0, "profile index out of range");
        Self { assignment }
    }

    /// The mixed-radix index of this profile in a game with `k` tasks.
    pub fn index(&self, k: usize) -> usize {
        self.assignment
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * k + (c - 1))
    }

    /// Task id chosen by worker type `theta`.
    pub fn task_for(&self, theta: usize) -> usize {
        self.assignment[theta]
    }
}

/// The transformed two-player game: K leader rows against K^Θ follower
/// profiles, payoffs prior-weighted over worker types.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormGame {
    /// `leader_payoffs[s - 1][j]` = Σ_θ π(θ) · u(s, c_j(θ), θ).
    pub leader_payoffs: Vec<Vec<f64>>,
    /// `follower_payoffs[s - 1][j]` = Σ_θ π(θ) · v(s, c_j(θ), θ).
    pub follower_payoffs: Vec<Vec<f64>>,
}

impl NormalFormGame {
    pub fn leader_actions(&self) -> usize {
        self.leader_payoffs.len()
    }

    pub fn profile_count(&self) -> usize {
        self.leader_payoffs.first().map_or(0, Vec::len)
    }
}

/// Tally of linear-program verdicts across one solve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LpTally {
    pub optimal: usize,
    pub infeasible: usize,
}

/// Optimal commitment together with solve diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult {
    /// The optimal committed distribution over recommendations.
    pub sigma: MixedStrategy,
    /// The follower profile whose program won (the induced best responses).
    pub profile: FollowerProfile,
    /// Objective value of the winning program.
    pub leader_value: f64,
    /// Always K^Θ: one program per follower profile.
    pub lps_solved: usize,
    pub lp_statuses: LpTally,
}

fn checked_profile_count(spec: &GameSpec, budget: u128) -> Result<usize, SolverError> {
    let k = spec.task_count() as u128;
    let theta = spec.type_count() as u32;
    let profiles = k.checked_pow(theta).ok_or(SolverError::CapacityExceeded {
        cells: u128::MAX,
        budget,
    })?;
    let cells = profiles
        .checked_mul(2 * k)
        .ok_or(SolverError::CapacityExceeded {
            cells: u128::MAX,
            budget,
        })?;
    if cells > budget {
        return Err(SolverError::CapacityExceeded { cells, budget });
    }
    Ok(profiles as usize)
}

fn assert_solvable(spec: &GameSpec) {
    let violations = spec.validate();
    assert!(
        violations.is_empty(),
        "solver requires a validated game spec; first violation: {}",
        violations[0]
    );
}

/// Prior-weighted payoff column for one follower profile, by leader action.
/// Types accumulate in ascending order so recomputation is bit-identical.
fn profile_column(spec: &GameSpec, profile: &FollowerProfile) -> (Vec<f64>, Vec<f64>) {
    let k = spec.task_count();
    let mut leader = Vec::with_capacity(k);
    let mut follower = Vec::with_capacity(k);
    for s in 1..=k {
        let mut lead = 0.0;
        let mut follow = 0.0;
        for theta in 0..spec.type_count() {
            let chosen = profile.task_for(theta);
            lead += spec.prior[theta] * spec.system_utility(s, chosen, theta);
            follow += spec.prior[theta] * spec.worker_utility(s, chosen, theta);
        }
        leader.push(lead);
        follower.push(follow);
    }
    (leader, follower)
}

/// Converts the incomplete-information game to normal form: one column per
/// follower profile (K^Θ of them), payoffs prior-weighted over types.
pub fn harsanyi_transform(spec: &GameSpec) -> Result<NormalFormGame, SolverError> {
    harsanyi_transform_with_budget(spec, DEFAULT_CELL_BUDGET)
}

pub fn harsanyi_transform_with_budget(
    spec: &GameSpec,
    budget: u128,
) -> Result<NormalFormGame, SolverError> {
    assert_solvable(spec);
    let profiles = checked_profile_count(spec, budget)?;
    let k = spec.task_count();
    let mut leader_payoffs = vec![Vec::with_capacity(profiles); k];
    let mut follower_payoffs = vec![Vec::with_capacity(profiles); k];
    for j in 0..profiles {
        let profile = FollowerProfile::from_index(j, k, spec.type_count());
        let (leader, follower) = profile_column(spec, &profile);
        for s in 0..k {
            leader_payoffs[s].push(leader[s]);
            follower_payoffs[s].push(follower[s]);
        }
    }
    Ok(NormalFormGame {
        leader_payoffs,
        follower_payoffs,
    })
}

/// The linear program for one follower profile: maximize the prior-weighted
/// leader payoff over the strategy simplex, subject to every worker type
/// weakly preferring its assigned task to each alternative.
fn profile_program(spec: &GameSpec, profile: &FollowerProfile) -> LinearProgram {
    let k = spec.task_count();
    let (objective, _) = profile_column(spec, profile);
    let mut le_constraints = Vec::with_capacity(spec.type_count() * k);
    for theta in 0..spec.type_count() {
        let chosen = profile.task_for(theta);
        for alt in 1..=k {
            let row: Vec<f64> = (1..=k)
                .map(|s| spec.worker_utility(s, alt, theta) - spec.worker_utility(s, chosen, theta))
                .collect();
            le_constraints.push((row, 0.0));
        }
    }
    LinearProgram {
        objective,
        le_constraints,
        eq_constraints: vec![(vec![1.0; k], 1.0)],
    }
}

/// Optimal leader commitment by solving one linear program per follower
/// profile and keeping the best feasible optimum. Ties between profiles go
/// to the smallest profile index.
pub fn solve_multiple_lps(spec: &GameSpec) -> Result<SolveResult, SolverError> {
    solve_multiple_lps_with_budget(spec, DEFAULT_CELL_BUDGET)
}

pub fn solve_multiple_lps_with_budget(
    spec: &GameSpec,
    budget: u128,
) -> Result<SolveResult, SolverError> {
    assert_solvable(spec);
    let profiles = checked_profile_count(spec, budget)?;
    let k = spec.task_count();

    let mut tally = LpTally::default();
    let mut best: Option<(usize, Vec<f64>, f64)> = None;
    for j in 0..profiles {
        let profile = FollowerProfile::from_index(j, k, spec.type_count());
        let lp = profile_program(spec, &profile);
        match solve_lp(&lp)? {
            LpOutcome::Optimal { solution, value } => {
                tally.optimal += 1;
                let improved = match &best {
                    None => true,
                    Some((_, _, best_value)) => value > *best_value,
                };
                if improved {
                    best = Some((j, solution, value));
                }
            }
            LpOutcome::Infeasible => tally.infeasible += 1,
            LpOutcome::Unbounded => return Err(SolverError::UnboundedProfile { profile_index: j }),
        }
    }

    let (winner, solution, value) = best.ok_or(SolverError::NoFeasibleProfile)?;
    let clamped: Vec<f64> = solution.iter().map(|&x| x.max(0.0)).collect();
    let total: f64 = clamped.iter().sum();
    let sigma = MixedStrategy::new(clamped.iter().map(|&x| x / total).collect())
        .expect("simplex returned a normalized strategy");
    Ok(SolveResult {
        sigma,
        profile: FollowerProfile::from_index(winner, k, spec.type_count()),
        leader_value: value,
        lps_solved: profiles,
        lp_statuses: tally,
    })
}

/// The follower's best task against a mixed commitment: maximize expected
/// worker utility, break near-ties (within [`TIE_TOL`]) in the leader's
/// favor, then by smallest task id.
pub fn mixed_best_response(spec: &GameSpec, sigma: &MixedStrategy, theta: usize) -> usize {
    let k = spec.task_count();
    let expected_worker = |c: usize| -> f64 {
        (1..=k)
            .map(|s| sigma.prob(s) * spec.worker_utility(s, c, theta))
            .sum()
    };
    let expected_system = |c: usize| -> f64 {
        (1..=k)
            .map(|s| sigma.prob(s) * spec.system_utility(s, c, theta))
            .sum()
    };
    let values: Vec<f64> = (1..=k).map(expected_worker).collect();
    let best = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut chosen = 0;
    let mut chosen_system = f64::NEG_INFINITY;
    for (i, &v) in values.iter().enumerate() {
        if v >= best - TIE_TOL {
            let sys = expected_system(i + 1);
            if chosen == 0 || sys > chosen_system {
                chosen = i + 1;
                chosen_system = sys;
            }
        }
    }
    chosen
}

/// Leader's expectation under a mixed commitment with every type
/// best-responding to the commitment itself (not the realized draw).
fn mixed_commitment_value(spec: &GameSpec, sigma: &MixedStrategy) -> f64 {
    let k = spec.task_count();
    let mut total = 0.0;
    for theta in 0..spec.type_count() {
        let chosen = mixed_best_response(spec, sigma, theta);
        let mut inner = 0.0;
        for s in 1..=k {
            inner += sigma.prob(s) * spec.system_utility(s, chosen, theta);
        }
        total += spec.prior[theta] * inner;
    }
    total
}

/// Grid-sweep oracle over two-task commitments: evaluates the leader's
/// expectation at σ(1) ∈ {0, 1/grid, …, 1} and returns the maximum. A lower
/// bound on the profile-program optimum that converges as the grid refines.
/// `grid = 0` degenerates to the single point σ = (0, 1).
pub fn brute_force_commitment_value(spec: &GameSpec, grid: usize) -> Result<f64, SolverError> {
    assert_solvable(spec);
    if spec.task_count() != 2 {
        return Err(SolverError::UnsupportedShape {
            found: spec.task_count(),
        });
    }
    let mut best = f64::NEG_INFINITY;
    for i in 0..=grid {
        let p1 = if grid == 0 {
            0.0
        } else {
            i as f64 / grid as f64
        };
        let sigma = MixedStrategy::new(vec![p1, 1.0 - p1]).expect("grid point is a valid strategy");
        let value = mixed_commitment_value(spec, &sigma);
        if value > best {
            best = value;
        }
    }
    Ok(best)
}

/// Largest violation of the winning program's best-response constraints at
/// `sigma`: max over types and alternatives of
/// E[v(alternative)] − E[v(assigned)]. Recomputed from utilities, not from
/// the solver's tableau.
pub fn max_best_response_violation(
    spec: &GameSpec,
    sigma: &MixedStrategy,
    profile: &FollowerProfile,
) -> f64 {
    let k = spec.task_count();
    let mut worst = f64::NEG_INFINITY;
    for theta in 0..spec.type_count() {
        let chosen = profile.task_for(theta);
        let assigned: f64 = (1..=k)
            .map(|s| sigma.prob(s) * spec.worker_utility(s, chosen, theta))
            .sum();
        for alt in 1..=k {
            let value: f64 = (1..=k)
                .map(|s| sigma.prob(s) * spec.worker_utility(s, alt, theta))
                .sum();
            worst = worst.max(value - assigned);
        }
    }
    worst
}

/// Writes the transformed game as tab-separated text: a comment line per
/// payoff block, a header row of profile indices, then one row per leader
/// action.
pub fn write_normal_form_dump<W: Write>(game: &NormalFormGame, out: &mut W) -> io::Result<()> {
    let header: Vec<String> = (0..game.profile_count()).map(|j| j.to_string()).collect();
    for (label, matrix) in [
        ("leader payoffs", &game.leader_payoffs),
        ("follower payoffs", &game.follower_payoffs),
    ] {
        writeln!(out, "# {label}")?;
        writeln!(out, "{}", header.join("\t"))?;
        for row in matrix {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", cells.join("\t"))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{g0, single_type_spec};

    #[test]
    fn profile_index_round_trips() {
        let k = 3;
        let type_count = 4;
        for index in 0..k_pow(k, type_count) {
            let profile = FollowerProfile::from_index(index, k, type_count);
            assert_eq!(profile.index(k), index);
            assert!(profile.assignment.iter().all(|&c| (1..=k).contains(&c)));
        }
    }

    fn k_pow(k: usize, theta: usize) -> usize {
        k.pow(theta as u32)
    }

    #[test]
    fn transform_dimensions_for_the_restricted_game() {
        let game = harsanyi_transform(&g0()).unwrap();
        assert_eq!(game.leader_actions(), 2);
        assert_eq!(game.profile_count(), 4);
        assert_eq!(game.follower_payoffs.len(), 2);
        assert_eq!(game.follower_payoffs[0].len(), 4);
    }

    #[test]
    fn transform_column_matches_hand_expansion() {
        // profile where both types pick their matched task: (1, 2) → index 2
        let game = harsanyi_transform(&g0()).unwrap();
        assert_eq!(game.leader_payoffs[0][2], 8.5);
    }

    #[test]
    fn capacity_budget_is_enforced() {
        let spec = g0();
        let err = harsanyi_transform_with_budget(&spec, 8).unwrap_err();
        match err {
            SolverError::CapacityExceeded { cells, budget } => {
                assert_eq!(cells, 16); // 2 matrices × 2 rows × 4 columns
                assert_eq!(budget, 8);
            }
            other => panic!("expected a capacity error, got {other:?}"),
        }
    }

    #[test]
    fn commitment_solver_on_the_canonical_game() {
        let result = solve_multiple_lps(&g0()).unwrap();
        assert_eq!(result.lps_solved, 4);
        assert_eq!(
            result.lp_statuses.optimal + result.lp_statuses.infeasible,
            4
        );
        assert!((result.leader_value - 8.5).abs() <= 1e-7);
        assert!(result.leader_value >= 8.5 - 1e-9);
        // winning profile sends each type to its matched task
        assert_eq!(result.profile.assignment, vec![1, 2]);
    }

    #[test]
    fn commitment_solver_single_type() {
        let result = solve_multiple_lps(&single_type_spec()).unwrap();
        assert!((result.leader_value - 12.0).abs() <= 1e-7);
        assert!((result.sigma.prob(1) - 1.0).abs() <= 1e-9);
        assert_eq!(result.lps_solved, 2);
    }

    #[test]
    fn grid_oracle_agrees_with_the_solver() {
        let spec = g0();
        let solver = solve_multiple_lps(&spec).unwrap().leader_value;
        let grid = brute_force_commitment_value(&spec, 1000).unwrap();
        assert!((solver - grid).abs() <= 0.01);
        assert!(grid <= solver + 1e-6);
    }

    #[test]
    fn grid_oracle_single_type_and_degenerate_grid() {
        let spec = single_type_spec();
        let sweep = brute_force_commitment_value(&spec, 10).unwrap();
        assert!((sweep - 12.0).abs() <= 1e-9);

        // grid = 0 evaluates only σ = (0, 1): the type deviates to its
        // matched task 1 and the system pays the persuasion cost.
        let point = brute_force_commitment_value(&spec, 0).unwrap();
        assert!((point - 10.0).abs() <= 1e-9);
    }

    #[test]
    fn grid_oracle_requires_two_tasks() {
        let mut spec = g0();
        spec.tasks.push(crate::model::TaskType {
            id: 3,
            label: "survey".into(),
            strenuous: false,
            deadline: 5.0,
            completion_time: 1.0,
            posted_reward: 0.5,
        });
        spec.worker_types[0].preference_order = vec![1, 2, 3];
        spec.worker_types[1].preference_order = vec![2, 1, 3];
        spec.matching.entries = vec![vec![0, 1], vec![1, 0], vec![0, 0]];
        spec.params.system_reward.push(1.0);
        spec.params.worker_reward.push(1.0);
        spec.params.mismatch_cost = vec![vec![0.0, 8.0], vec![0.0, 0.0], vec![0.0, 0.0]];
        assert!(matches!(
            brute_force_commitment_value(&spec, 10),
            Err(SolverError::UnsupportedShape { found: 3 })
        ));
    }

    #[test]
    fn winning_strategy_obeys_its_own_constraints() {
        let result = solve_multiple_lps(&g0()).unwrap();
        let violation = max_best_response_violation(&g0(), &result.sigma, &result.profile);
        assert!(violation <= 1e-7, "constraint violation {violation}");
    }

    #[test]
    fn dump_format_is_tab_separated_with_profile_header() {
        let game = harsanyi_transform(&g0()).unwrap();
        let mut buffer = Vec::new();
        write_normal_form_dump(&game, &mut buffer).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# leader payoffs");
        assert_eq!(lines[1], "0\t1\t2\t3");
        assert_eq!(lines.len(), 1 + 3 + 1 + 3);
        assert_eq!(lines[2].split('\t').count(), 4);
    }
}
