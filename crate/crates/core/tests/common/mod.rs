//! Seeded fixtures and instance generators shared by the integration suites.

#![allow(dead_code)]

use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use stackrec::{
    enumerate_worker_types, GameSpec, LinearProgram, MatchingTable, TaskType, UtilityParams,
    WorkerType,
};

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn unit(rng: &mut ChaCha20Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
}

pub fn range(rng: &mut ChaCha20Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * unit(rng)
}

pub fn pick(rng: &mut ChaCha20Rng, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

pub fn random_perm(rng: &mut ChaCha20Rng, k: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=k).collect();
    for i in (1..k).rev() {
        perm.swap(i, pick(rng, i + 1));
    }
    perm
}

/// Canonical two-type game: φ = (12, 7), ψ = (10, 6), λ = 2, μ = 3; type 0
/// suits task 1 only, type 1 suits task 2 only with κ = 8 on task 1.
pub fn g0_two_type() -> GameSpec {
    GameSpec {
        tasks: vec![
            TaskType {
                id: 1,
                label: "content-moderation".into(),
                strenuous: true,
                deadline: 10.0,
                completion_time: 5.0,
                posted_reward: 2.5,
            },
            TaskType {
                id: 2,
                label: "animal-labeling".into(),
                strenuous: false,
                deadline: 10.0,
                completion_time: 5.0,
                posted_reward: 1.0,
            },
        ],
        worker_types: vec![
            WorkerType {
                beta_category: 1,
                preference_order: vec![1, 2],
            },
            WorkerType {
                beta_category: 4,
                preference_order: vec![2, 1],
            },
        ],
        prior: vec![0.5, 0.5],
        matching: MatchingTable::new(vec![vec![0, 1], vec![1, 0]]),
        params: UtilityParams {
            system_reward: vec![12.0, 7.0],
            worker_reward: vec![10.0, 6.0],
            mismatch_cost: vec![vec![0.0, 8.0], vec![0.0, 0.0]],
            disobedience_cost: 3.0,
            persuasion_inefficiency: 2.0,
        },
    }
}

/// The same game over the full eight-type space: categories 1–2 suit task 1
/// only, categories 3–4 suit task 2 only with κ = 8 on task 1, uniform
/// prior.
pub fn g0_full() -> GameSpec {
    let base = g0_two_type();
    let worker_types = enumerate_worker_types(2).expect("two tasks enumerate");
    let count = worker_types.len();
    let high: Vec<bool> = worker_types.iter().map(|t| t.beta_category <= 2).collect();
    let matching = MatchingTable::new(vec![
        high.iter().map(|&h| u8::from(!h)).collect(),
        high.iter().map(|&h| u8::from(h)).collect(),
    ]);
    let kappa = vec![
        high.iter().map(|&h| if h { 0.0 } else { 8.0 }).collect(),
        vec![0.0; count],
    ];
    GameSpec {
        worker_types,
        prior: vec![1.0 / count as f64; count],
        matching,
        params: UtilityParams {
            mismatch_cost: kappa,
            ..base.params
        },
        ..base
    }
}

fn random_tasks(rng: &mut ChaCha20Rng, k: usize, allow_deadline_miss: bool) -> Vec<TaskType> {
    (1..=k)
        .map(|id| {
            let deadline = range(rng, 5.0, 10.0);
            let completion_time = if allow_deadline_miss && unit(rng) < 0.2 {
                deadline * range(rng, 1.01, 1.5)
            } else {
                deadline * range(rng, 0.1, 1.0)
            };
            TaskType {
                id,
                label: format!("task-{id}"),
                strenuous: id == 1,
                deadline,
                completion_time,
                posted_reward: range(rng, 0.0, 3.0),
            }
        })
        .collect()
}

fn random_prior(rng: &mut ChaCha20Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| range(rng, 0.1, 1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|w| w / total).collect()
}

fn random_types(rng: &mut ChaCha20Rng, k: usize, n: usize) -> Vec<WorkerType> {
    (0..n)
        .map(|_| WorkerType {
            beta_category: pick(rng, 4) as u8 + 1,
            preference_order: random_perm(rng, k),
        })
        .collect()
}

/// Unconstrained valid instance: 2–4 tasks, 1–3 types, arbitrary matching,
/// occasional deadline-missing tasks. Exercises every utility branch.
pub fn random_branch_spec(rng: &mut ChaCha20Rng) -> GameSpec {
    let k = 2 + pick(rng, 3);
    let theta = 1 + pick(rng, 3);
    let worker_reward: Vec<f64> = (0..k).map(|_| range(rng, 0.0, 10.0)).collect();
    let mismatch_cost = worker_reward
        .iter()
        .map(|&psi| (0..theta).map(|_| range(rng, 0.0, psi)).collect())
        .collect();
    GameSpec {
        tasks: random_tasks(rng, k, true),
        worker_types: random_types(rng, k, theta),
        prior: random_prior(rng, theta),
        matching: MatchingTable::new(
            (0..k)
                .map(|_| (0..theta).map(|_| pick(rng, 2) as u8).collect())
                .collect(),
        ),
        params: UtilityParams {
            system_reward: (0..k).map(|_| range(rng, 0.0, 10.0)).collect(),
            worker_reward,
            mismatch_cost,
            disobedience_cost: range(rng, 0.0, 5.0),
            persuasion_inefficiency: range(rng, 0.0, 5.0),
        },
    }
}

/// Two-task instance for solver-versus-oracle comparisons: up to four types,
/// arbitrary matching, payoffs kept small so the grid oracle's resolution
/// bound stays tight.
pub fn random_solver_spec(rng: &mut ChaCha20Rng) -> GameSpec {
    let theta = 1 + pick(rng, 4);
    let worker_reward = vec![range(rng, 0.0, 10.0), range(rng, 0.0, 10.0)];
    let mismatch_cost = worker_reward
        .iter()
        .map(|&psi| (0..theta).map(|_| range(rng, 0.0, psi)).collect())
        .collect();
    GameSpec {
        tasks: random_tasks(rng, 2, true),
        worker_types: random_types(rng, 2, theta),
        prior: random_prior(rng, theta),
        matching: MatchingTable::new(
            (0..2)
                .map(|_| (0..theta).map(|_| pick(rng, 2) as u8).collect())
                .collect(),
        ),
        params: UtilityParams {
            system_reward: vec![range(rng, 0.0, 8.0), range(rng, 0.0, 8.0)],
            worker_reward,
            mismatch_cost,
            disobedience_cost: range(rng, 0.0, 5.0),
            persuasion_inefficiency: range(rng, 0.0, 2.0),
        },
    }
}

/// Two-task instance the steering analysis applies to: every task meets its
/// deadline, every type suits exactly one task, and each unmatched-side κ is
/// placed so the per-type μ interval is nonempty with visible width.
pub fn random_steering_spec(rng: &mut ChaCha20Rng) -> GameSpec {
    let theta = 1 + pick(rng, 4);
    let worker_reward = vec![range(rng, 1.0, 10.0), range(rng, 1.0, 10.0)];
    let mut matching = vec![vec![0u8; theta], vec![0u8; theta]];
    let mut mismatch_cost = vec![vec![0.0; theta], vec![0.0; theta]];
    for t in 0..theta {
        let matched = 1 + pick(rng, 2);
        let unmatched = 3 - matched;
        matching[matched - 1][t] = 0;
        matching[unmatched - 1][t] = 1;
        let psi_matched = worker_reward[matched - 1];
        let psi_unmatched = worker_reward[unmatched - 1];
        let lo = (psi_unmatched - psi_matched).max(0.0) + 0.05;
        mismatch_cost[unmatched - 1][t] = range(rng, lo, psi_unmatched);
        mismatch_cost[matched - 1][t] = range(rng, 0.0, psi_matched);
    }
    GameSpec {
        tasks: random_tasks(rng, 2, false),
        worker_types: random_types(rng, 2, theta),
        prior: random_prior(rng, theta),
        matching: MatchingTable::new(matching),
        params: UtilityParams {
            system_reward: vec![range(rng, 0.0, 10.0), range(rng, 0.0, 10.0)],
            worker_reward,
            mismatch_cost,
            disobedience_cost: 0.0,
            persuasion_inefficiency: range(rng, 0.0, 3.0),
        },
    }
}

/// Bounded feasible program with a known interior point: ≤ rows get positive
/// slack at the point, = rows pass through it, and a simplex cap keeps the
/// polytope bounded.
pub fn random_lp(rng: &mut ChaCha20Rng) -> (LinearProgram, Vec<f64>) {
    let n = 1 + pick(rng, 5);
    let feasible: Vec<f64> = (0..n).map(|_| range(rng, 0.0, 3.0)).collect();
    let dot = |coeffs: &[f64]| -> f64 { coeffs.iter().zip(&feasible).map(|(a, x)| a * x).sum() };

    let mut le_constraints = Vec::new();
    for _ in 0..1 + pick(rng, 4) {
        let coeffs: Vec<f64> = (0..n).map(|_| range(rng, -2.0, 2.0)).collect();
        let bound = dot(&coeffs) + range(rng, 0.5, 2.0);
        le_constraints.push((coeffs, bound));
    }
    let cap = feasible.iter().sum::<f64>() + range(rng, 1.0, 5.0);
    le_constraints.push((vec![1.0; n], cap));

    let mut eq_constraints = Vec::new();
    for _ in 0..pick(rng, 3) {
        let coeffs: Vec<f64> = (0..n).map(|_| range(rng, -2.0, 2.0)).collect();
        let bound = dot(&coeffs);
        eq_constraints.push((coeffs, bound));
    }

    let lp = LinearProgram {
        objective: (0..n).map(|_| range(rng, -3.0, 3.0)).collect(),
        le_constraints,
        eq_constraints,
    };
    (lp, feasible)
}
