//! Shared fixtures for unit tests.

use crate::model::{GameSpec, MatchingTable, TaskType, UtilityParams, WorkerType};

/// Canonical two-type game used across the unit tests: two tasks with
/// φ = (12, 7), ψ = (10, 6), λ = 2, μ = 3; type 0 suits task 1 only, type 1
/// suits task 2 only with a mismatch cost of 8 on task 1; both tasks meet
/// their deadlines.
pub fn g0() -> GameSpec {
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

/// Game with a single worker type that suits task 1 only; the mismatch cost
/// on task 2 is pinned to ψ(2), the largest value validation allows.
pub fn single_type_spec() -> GameSpec {
    let mut spec = g0();
    spec.worker_types.truncate(1);
    spec.prior = vec![1.0];
    spec.matching = MatchingTable::new(vec![vec![0], vec![1]]);
    spec.params.mismatch_cost = vec![vec![0.0], vec![6.0]];
    spec
}
