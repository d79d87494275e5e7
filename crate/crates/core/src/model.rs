//! Game model for the system–worker recommendation game: task types, worker
//! types, the task/type matching relation, both players' per-interaction
//! utilities, and validation of fully specified game instances.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Tolerance for the prior-normalization check.
pub const PRIOR_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("cognitive atrophy rate must lie in [0, 1], got {0}")]
    BetaOutOfRange(f64),
    #[error(
        "cannot enumerate worker types for {tasks} tasks: 4 * {tasks}! overflows the count type"
    )]
    TypeCountOverflow { tasks: usize },
}

/// One task category offered on the platform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskType {
    /// 1-based id; ids must enumerate 1..=K in list order.
    pub id: usize,
    pub label: String,
    /// Marks tasks that wear workers down (e.g. content moderation).
    pub strenuous: bool,
    /// Time deadline for the task; must be positive.
    pub deadline: f64,
    /// Time the worker needs to complete the task; must be positive.
    pub completion_time: f64,
    /// Advertised reward. Metadata only; it enters no utility.
    pub posted_reward: f64,
}

/// A worker type: cognitive-atrophy category paired with a preference order
/// over the K task types.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WorkerType {
    /// Category 1 (high-spirited) through 4 (fatigued).
    pub beta_category: u8,
    /// Permutation of 1..=K. Carried so the full type space enumerates
    /// correctly; the built-in utilities never read it.
    pub preference_order: Vec<usize>,
}

/// Binary suitability judgment between tasks and worker types.
///
/// Entry convention follows the model: 0 means the task suits the type,
/// 1 means it does not.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchingTable {
    /// Row per task (1..=K), column per worker type index.
    pub entries: Vec<Vec<u8>>,
}

impl MatchingTable {
    pub fn new(entries: Vec<Vec<u8>>) -> Self {
        Self { entries }
    }

    /// Matching value m(task, θ); task is a 1-based id.
    pub fn m(&self, task: usize, theta: usize) -> u8 {
        self.entries[task - 1][theta]
    }

    /// True when task suits the type (m = 0).
    pub fn suits(&self, task: usize, theta: usize) -> bool {
        self.m(task, theta) == 0
    }
}

/// Rewards and costs entering both players' utilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UtilityParams {
    /// φ: system-side reward per completed task, indexed by task.
    pub system_reward: Vec<f64>,
    /// ψ: worker-side reward per completed task, indexed by task.
    pub worker_reward: Vec<f64>,
    /// κ: worker's mental-state cost for completing task k when it does not
    /// suit type θ. Row per task, column per type. Capped by ψ(k).
    pub mismatch_cost: Vec<Vec<f64>>,
    /// μ: worker-side cost for choosing a task other than the recommendation.
    pub disobedience_cost: f64,
    /// λ: system-side cost when the worker deviates from the recommendation.
    pub persuasion_inefficiency: f64,
}

/// Full parameterization of one game instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameSpec {
    pub tasks: Vec<TaskType>,
    pub worker_types: Vec<WorkerType>,
    /// System's belief π over worker types; sums to 1 within [`PRIOR_TOL`].
    pub prior: Vec<f64>,
    pub matching: MatchingTable,
    pub params: UtilityParams,
}

/// One validation failure: which field broke which constraint, and what was
/// observed. Violations are data, not faults.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub field: String,
    pub constraint: String,
    pub observed: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} (observed {})",
            self.field, self.constraint, self.observed
        )
    }
}

fn violation(field: &str, constraint: &str, observed: impl fmt::Display) -> Violation {
    Violation {
        field: field.to_string(),
        constraint: constraint.to_string(),
        observed: observed.to_string(),
    }
}

/// Discrete cognitive-atrophy category for a rate β in [0, 1].
///
/// The four categories partition [0, 1] with closed upper boundaries at
/// 0.25, 0.50 and 0.75, so every rate maps to exactly one category and the
/// mapping is monotone in β.
pub fn beta_category(beta: f64) -> Result<u8, ModelError> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(ModelError::BetaOutOfRange(beta));
    }
    Ok(if beta <= 0.25 {
        1
    } else if beta <= 0.50 {
        2
    } else if beta <= 0.75 {
        3
    } else {
        4
    })
}

/// Lexicographically next permutation in place; false once `arr` is the last.
fn next_permutation(arr: &mut [usize]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

/// All 4 * K! worker types, ordered lexicographically by
/// (beta_category, preference_order).
///
/// The ordering is part of the contract: type indices produced here feed the
/// follower-profile column encoding used by the solver. Fails when 4 * K!
/// does not fit in `usize`; in practice anything beyond K = 7 is already
/// intractable downstream.
pub fn enumerate_worker_types(tasks: usize) -> Result<Vec<WorkerType>, ModelError> {
    assert!(tasks >= 1, "need at least one task type");
    let factorial = (1..=tasks)
        .try_fold(1usize, |acc, v| acc.checked_mul(v))
        .ok_or(ModelError::TypeCountOverflow { tasks })?;
    let total = factorial
        .checked_mul(4)
        .ok_or(ModelError::TypeCountOverflow { tasks })?;

    let mut perms = Vec::with_capacity(factorial);
    let mut current: Vec<usize> = (1..=tasks).collect();
    perms.push(current.clone());
    while next_permutation(&mut current) {
        perms.push(current.clone());
    }

    let mut out = Vec::with_capacity(total);
    for category in 1..=4u8 {
        for perm in &perms {
            out.push(WorkerType {
                beta_category: category,
                preference_order: perm.clone(),
            });
        }
    }
    Ok(out)
}

/// Matching rule when none is configured explicitly: strenuous tasks suit a
/// type exactly when its atrophy category is at or below `threshold`;
/// non-strenuous tasks suit everyone.
pub fn default_matching(
    tasks: &[TaskType],
    worker_types: &[WorkerType],
    threshold: u8,
) -> MatchingTable {
    assert!(
        (1..=4).contains(&threshold),
        "threshold must be a category in 1..=4, got {threshold}"
    );
    let entries = tasks
        .iter()
        .map(|task| {
            worker_types
                .iter()
                .map(|wt| {
                    if task.strenuous && wt.beta_category > threshold {
                        1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    MatchingTable::new(entries)
}

impl GameSpec {
    /// Number of task types K.
    pub fn task_count(&self) -> usize {
        self.tasks.len()
    }

    /// Number of worker types Θ.
    pub fn type_count(&self) -> usize {
        self.worker_types.len()
    }

    fn task_index(&self, id: usize) -> usize {
        assert!(
            id >= 1 && id <= self.tasks.len(),
            "task id {id} out of range 1..={}",
            self.tasks.len()
        );
        id - 1
    }

    fn check_type_index(&self, theta: usize) {
        assert!(
            theta < self.worker_types.len(),
            "worker type index {theta} out of range 0..{}",
            self.worker_types.len()
        );
    }

    /// System utility u(s, c, θ): the reward φ(c) for the completed task,
    /// less the persuasion-inefficiency cost λ when the worker deviated,
    /// and exactly 0 when the chosen task cannot meet its deadline.
    pub fn system_utility(&self, recommended: usize, chosen: usize, theta: usize) -> f64 {
        self.task_index(recommended);
        self.check_type_index(theta);
        let c = self.task_index(chosen);
        let task = &self.tasks[c];
        if task.completion_time > task.deadline {
            return 0.0;
        }
        let phi = self.params.system_reward[c];
        if chosen == recommended {
            phi
        } else {
            phi - self.params.persuasion_inefficiency
        }
    }

    /// Worker utility v(s, c, θ): the reward ψ(c) less the mismatch cost
    /// κ(c,θ)·m(c,θ), less the disobedience cost μ when c ≠ s, and exactly 0
    /// when the chosen task cannot meet its deadline.
    ///
    /// The disobeyed branch is computed as the obeyed value minus μ, so the
    /// two branches differ by μ along an identical arithmetic path.
    pub fn worker_utility(&self, recommended: usize, chosen: usize, theta: usize) -> f64 {
        self.task_index(recommended);
        self.check_type_index(theta);
        let c = self.task_index(chosen);
        let task = &self.tasks[c];
        if task.completion_time > task.deadline {
            return 0.0;
        }
        let m = f64::from(self.matching.m(chosen, theta));
        let matched_value = self.params.worker_reward[c] - self.params.mismatch_cost[c][theta] * m;
        if chosen == recommended {
            matched_value
        } else {
            matched_value - self.params.disobedience_cost
        }
    }

    /// True when the worker-type list is exactly the full 4 * K! enumeration
    /// in canonical order. Hand-restricted lists are legal; callers may want
    /// to flag them.
    pub fn has_full_type_enumeration(&self) -> bool {
        match enumerate_worker_types(self.task_count()) {
            Ok(full) => full == self.worker_types,
            Err(_) => false,
        }
    }

    /// Every broken invariant of this instance. An empty list means the
    /// instance is ready for the solvers.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let k = self.tasks.len();
        let theta_count = self.worker_types.len();

        if k < 2 {
            out.push(violation("tasks", "at least two task types required", k));
        }
        for (i, task) in self.tasks.iter().enumerate() {
            if task.id != i + 1 {
                out.push(violation(
                    &format!("tasks[{i}].id"),
                    "ids must enumerate 1..K in order without duplicates",
                    task.id,
                ));
            }
            if task.deadline.is_nan() || task.deadline <= 0.0 {
                out.push(violation(
                    &format!("tasks[{i}].deadline"),
                    "must be positive",
                    task.deadline,
                ));
            }
            if task.completion_time.is_nan() || task.completion_time <= 0.0 {
                out.push(violation(
                    &format!("tasks[{i}].completion_time"),
                    "must be positive",
                    task.completion_time,
                ));
            }
            if task.posted_reward.is_nan() || task.posted_reward < 0.0 {
                out.push(violation(
                    &format!("tasks[{i}].posted_reward"),
                    "must be nonnegative",
                    task.posted_reward,
                ));
            }
        }

        if theta_count < 1 {
            out.push(violation(
                "worker_types",
                "at least one worker type required",
                theta_count,
            ));
        }
        for (i, wt) in self.worker_types.iter().enumerate() {
            if !(1..=4).contains(&wt.beta_category) {
                out.push(violation(
                    &format!("worker_types[{i}].beta_category"),
                    "must be a category in 1..=4",
                    wt.beta_category,
                ));
            }
            let mut seen = wt.preference_order.clone();
            seen.sort_unstable();
            if seen != (1..=k).collect::<Vec<_>>() {
                out.push(violation(
                    &format!("worker_types[{i}].preference_order"),
                    "must be a permutation of 1..K",
                    format!("{:?}", wt.preference_order),
                ));
            }
        }

        if self.prior.len() != theta_count {
            out.push(violation(
                "prior",
                &format!("must have one entry per worker type ({theta_count})"),
                self.prior.len(),
            ));
        }
        for (i, p) in self.prior.iter().enumerate() {
            if p.is_nan() || *p < 0.0 {
                out.push(violation(&format!("prior[{i}]"), "must be nonnegative", p));
            }
        }
        let sum: f64 = self.prior.iter().sum();
        if sum.is_nan() || (sum - 1.0).abs() > PRIOR_TOL {
            out.push(violation("prior", "entries must sum to 1 within 1e-9", sum));
        }

        if self.matching.entries.len() != k {
            out.push(violation(
                "matching",
                &format!("must have one row per task ({k})"),
                self.matching.entries.len(),
            ));
        }
        for (i, row) in self.matching.entries.iter().enumerate() {
            if row.len() != theta_count {
                out.push(violation(
                    &format!("matching[{i}]"),
                    &format!("must have one entry per worker type ({theta_count})"),
                    row.len(),
                ));
            }
            for (j, entry) in row.iter().enumerate() {
                if *entry > 1 {
                    out.push(violation(
                        &format!("matching[{i}][{j}]"),
                        "entries must be 0 (suits) or 1 (does not suit)",
                        entry,
                    ));
                }
            }
        }

        if self.params.system_reward.len() != k {
            out.push(violation(
                "params.phi",
                &format!("must have one entry per task ({k})"),
                self.params.system_reward.len(),
            ));
        }
        for (i, phi) in self.params.system_reward.iter().enumerate() {
            if phi.is_nan() || *phi < 0.0 {
                out.push(violation(
                    &format!("params.phi[{i}]"),
                    "must be nonnegative",
                    phi,
                ));
            }
        }
        if self.params.worker_reward.len() != k {
            out.push(violation(
                "params.psi",
                &format!("must have one entry per task ({k})"),
                self.params.worker_reward.len(),
            ));
        }
        for (i, psi) in self.params.worker_reward.iter().enumerate() {
            if psi.is_nan() || *psi < 0.0 {
                out.push(violation(
                    &format!("params.psi[{i}]"),
                    "must be nonnegative",
                    psi,
                ));
            }
        }
        if self.params.mismatch_cost.len() != k {
            out.push(violation(
                "params.kappa",
                &format!("must have one row per task ({k})"),
                self.params.mismatch_cost.len(),
            ));
        }
        for (i, row) in self.params.mismatch_cost.iter().enumerate() {
            if row.len() != theta_count {
                out.push(violation(
                    &format!("params.kappa[{i}]"),
                    &format!("must have one entry per worker type ({theta_count})"),
                    row.len(),
                ));
            }
            let psi = self.params.worker_reward.get(i).copied();
            for (j, kappa) in row.iter().enumerate() {
                if kappa.is_nan() || *kappa < 0.0 {
                    out.push(violation(
                        &format!("params.kappa[{i}][{j}]"),
                        "must be nonnegative",
                        kappa,
                    ));
                }
                if let Some(psi) = psi {
                    if *kappa > psi {
                        out.push(violation(
                            "params.kappa",
                            "kappa(k,θ) must not exceed psi(k)",
                            format!("kappa({},{j}) = {kappa} > psi({}) = {psi}", i + 1, i + 1),
                        ));
                    }
                }
            }
        }
        if self.params.disobedience_cost.is_nan() || self.params.disobedience_cost < 0.0 {
            out.push(violation(
                "params.mu",
                "must be nonnegative",
                self.params.disobedience_cost,
            ));
        }
        if self.params.persuasion_inefficiency.is_nan() || self.params.persuasion_inefficiency < 0.0
        {
            out.push(violation(
                "params.lambda",
                "must be nonnegative",
                self.params.persuasion_inefficiency,
            ));
        }

        out
    }
}
