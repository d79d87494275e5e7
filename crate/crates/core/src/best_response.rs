//! Follower best response to an observed recommendation and the leader's
//! expected utility over a committed mixed strategy.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::GameSpec;

/// Tolerance for the mixed-strategy normalization check.
pub const STRATEGY_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StrategyError {
    #[error("mixed strategy must have at least one entry")]
    Empty,
    #[error("probability {value} at position {index} is negative or not a number")]
    InvalidProbability { index: usize, value: f64 },
    #[error("probabilities sum to {sum}, expected 1 within 1e-9")]
    NotNormalized { sum: f64 },
}

/// The leader's committed probability distribution over the K
/// recommendations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct MixedStrategy {
    probs: Vec<f64>,
}

impl MixedStrategy {
    /// Validates nonnegativity and normalization (sum within 1e-9 of one).
    pub fn new(probs: Vec<f64>) -> Result<Self, StrategyError> {
        if probs.is_empty() {
            return Err(StrategyError::Empty);
        }
        for (index, &value) in probs.iter().enumerate() {
            if value.is_nan() || value < 0.0 {
                return Err(StrategyError::InvalidProbability { index, value });
            }
        }
        let sum: f64 = probs.iter().sum();
        if sum.is_nan() || (sum - 1.0).abs() > STRATEGY_TOL {
            return Err(StrategyError::NotNormalized { sum });
        }
        Ok(Self { probs })
    }

    /// Point mass on the recommendation `s` (1-based) among `k` tasks.
    pub fn pure(k: usize, s: usize) -> Self {
        assert!(s >= 1 && s <= k, "recommendation {s} out of range 1..={k}");
        let mut probs = vec![0.0; k];
        probs[s - 1] = 1.0;
        Self { probs }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of recommending task `s` (1-based).
    pub fn prob(&self, s: usize) -> f64 {
        self.probs[s - 1]
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

impl TryFrom<Vec<f64>> for MixedStrategy {
    type Error = StrategyError;

    fn try_from(probs: Vec<f64>) -> Result<Self, Self::Error> {
        Self::new(probs)
    }
}

impl From<MixedStrategy> for Vec<f64> {
    fn from(strategy: MixedStrategy) -> Self {
        strategy.probs
    }
}

/// Outcome of the follower's utility maximization against a realized
/// recommendation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BestResponse {
    /// Chosen task c*, a 1-based id.
    pub chosen_task: usize,
    /// The worker's utility at (s, c*, θ).
    pub utility: f64,
    /// True when more than one task attained the maximal worker utility.
    pub tie: bool,
}

/// The follower's pure best response to an observed recommendation `s`.
///
/// Ties in the worker's utility are broken in the leader's favor (the task
/// with the greater system utility wins), then by smallest task id, so the
/// result is deterministic.
pub fn worker_best_response(s: usize, theta: usize, spec: &GameSpec) -> BestResponse {
    let mut chosen = 1;
    let mut best = spec.worker_utility(s, 1, theta);
    let mut tie = false;
    for c in 2..=spec.task_count() {
        let v = spec.worker_utility(s, c, theta);
        if v > best {
            chosen = c;
            best = v;
            tie = false;
        } else if v == best {
            tie = true;
            if spec.system_utility(s, c, theta) > spec.system_utility(s, chosen, theta) {
                chosen = c;
            }
        }
    }
    BestResponse {
        chosen_task: chosen,
        utility: best,
        tie,
    }
}

/// Expected leader utility of a committed strategy, with each worker type
/// best-responding to the realized recommendation.
///
/// Terms accumulate with types ascending and recommendations ascending, so
/// repeated evaluations are bit-identical.
pub fn leader_expected_utility(sigma: &MixedStrategy, spec: &GameSpec) -> f64 {
    assert_eq!(
        sigma.len(),
        spec.task_count(),
        "strategy length must equal the task count"
    );
    let mut total = 0.0;
    for theta in 0..spec.type_count() {
        let mut inner = 0.0;
        for s in 1..=spec.task_count() {
            let response = worker_best_response(s, theta, spec);
            inner += sigma.prob(s) * spec.system_utility(s, response.chosen_task, theta);
        }
        total += spec.prior[theta] * inner;
    }
    total
}

/// Best pure recommendation under observed-action semantics.
///
/// The leader's expectation is linear in the commitment, so when the worker
/// reacts to the realized recommendation the optimum over all mixed
/// strategies is attained at a pure one. Ties go to the smallest task id.
pub fn optimal_observed_action_commitment(spec: &GameSpec) -> (usize, f64) {
    let k = spec.task_count();
    let mut best_s = 1;
    let mut best_value = leader_expected_utility(&MixedStrategy::pure(k, 1), spec);
    for s in 2..=k {
        let value = leader_expected_utility(&MixedStrategy::pure(k, s), spec);
        if value > best_value {
            best_s = s;
            best_value = value;
        }
    }
    (best_s, best_value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{g0, single_type_spec};

    #[test]
    fn strategy_validation() {
        assert!(MixedStrategy::new(vec![0.5, 0.5]).is_ok());
        assert_eq!(MixedStrategy::new(vec![]), Err(StrategyError::Empty));
        assert!(matches!(
            MixedStrategy::new(vec![1.2, -0.2]),
            Err(StrategyError::InvalidProbability { index: 1, .. })
        ));
        assert!(matches!(
            MixedStrategy::new(vec![0.5, 0.4]),
            Err(StrategyError::NotNormalized { .. })
        ));
        assert_eq!(MixedStrategy::pure(2, 1).probs(), &[1.0, 0.0]);
    }

    #[test]
    fn best_response_for_the_fatigued_type() {
        let spec = g0();
        let theta_f = 1;
        // exhaustive oracle: v(2, 1) = -1, v(2, 2) = 6
        let br = worker_best_response(2, theta_f, &spec);
        assert_eq!((br.chosen_task, br.utility, br.tie), (2, 6.0, false));
        // v(1, 1) = 2, v(1, 2) = 3
        let br = worker_best_response(1, theta_f, &spec);
        assert_eq!((br.chosen_task, br.utility, br.tie), (2, 3.0, false));
    }

    #[test]
    fn best_response_for_the_high_spirited_type() {
        let spec = g0();
        // v(1, 1) = 10, v(1, 2) = 3
        let br = worker_best_response(1, 0, &spec);
        assert_eq!((br.chosen_task, br.utility, br.tie), (1, 10.0, false));
    }

    #[test]
    fn ties_resolve_in_the_leaders_favor_then_smallest_id() {
        let mut spec = g0();
        // make both tasks equally attractive to type 0 under s = 1
        spec.params.worker_reward = vec![10.0, 10.0];
        spec.params.disobedience_cost = 0.0;
        spec.matching.entries = vec![vec![0, 0], vec![0, 0]];
        let br = worker_best_response(1, 0, &spec);
        assert!(br.tie);
        // u(1, 1) = 12 beats u(1, 2) = 7 - 2
        assert_eq!(br.chosen_task, 1);

        // equal system utility as well: smallest id wins
        spec.params.system_reward = vec![12.0, 14.0]; // 12 vs 14 - 2
        let br = worker_best_response(1, 0, &spec);
        assert!(br.tie);
        assert_eq!(br.chosen_task, 1);
    }

    #[test]
    fn expected_utility_matches_hand_expansion() {
        let spec = g0();
        let pure1 = MixedStrategy::pure(2, 1);
        let pure2 = MixedStrategy::pure(2, 2);
        assert_eq!(leader_expected_utility(&pure1, &spec), 8.5);
        assert_eq!(leader_expected_utility(&pure2, &spec), 8.5);
        let half = MixedStrategy::new(vec![0.5, 0.5]).unwrap();
        assert!((leader_expected_utility(&half, &spec) - 8.5).abs() < 1e-12);
    }

    #[test]
    fn observed_commitment_on_the_canonical_game() {
        // both pure strategies tie at 8.5; the smallest id wins
        assert_eq!(optimal_observed_action_commitment(&g0()), (1, 8.5));
    }

    #[test]
    fn observed_commitment_skips_deadline_missing_tasks() {
        let mut spec = g0();
        spec.tasks[1].completion_time = 99.0; // task 2 can never finish
        spec.matching = crate::model::MatchingTable::new(vec![vec![0, 0], vec![1, 1]]);
        spec.params.mismatch_cost = vec![vec![0.0, 0.0], vec![0.0, 0.0]];
        let (s, _) = optimal_observed_action_commitment(&spec);
        assert_eq!(s, 1);
    }

    #[test]
    fn observed_commitment_single_type() {
        let spec = single_type_spec();
        assert_eq!(optimal_observed_action_commitment(&spec), (1, 12.0));
    }
}
