//! Monte Carlo replay of the one-shot interaction: worker types drawn from
//! the prior, recommendations drawn from the committed strategy, and best
//! responses accrued into an empirical counterpart of the leader's expected
//! utility.

use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::best_response::{worker_best_response, MixedStrategy};
use crate::model::GameSpec;

/// Identifier of the draw algorithm: a ChaCha20 stream seeded with
/// `seed_from_u64`, each uniform deviate taking the top 53 bits of one
/// 64-bit output, inverse-CDF sampling over the weight vector in index
/// order.
pub const GENERATOR_ID: &str = "chacha20/u53-inverse-cdf";

/// Aggregates of one simulation run. Identical (spec, strategy, rounds,
/// seed) inputs produce bit-identical reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub rounds: u64,
    pub mean_leader_utility: f64,
    pub mean_worker_utility: f64,
    /// Fraction of rounds where the worker chose the recommended task.
    pub obedience_rate: f64,
    /// Fraction of rounds where the chosen task suits the drawn type.
    pub match_rate: f64,
    /// Draw tally per worker type; sums to `rounds`.
    pub per_type_counts: Vec<u64>,
    pub seed: u64,
    /// See [`GENERATOR_ID`].
    pub generator: String,
}

fn unit_f64(rng: &mut ChaCha20Rng) -> f64 {
    // top 53 bits → uniform in [0, 1) with full double precision
    (rng.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
}

/// Inverse-CDF pick: the first index whose cumulative weight exceeds `x`,
/// falling back to the last positive-weight index when rounding leaves the
/// cumulative sum short of one.
fn pick(weights: &[f64], x: f64) -> usize {
    let mut cumulative = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        cumulative += w;
        if x < cumulative {
            return i;
        }
    }
    weights
        .iter()
        .rposition(|&w| w > 0.0)
        .expect("weights contain a positive entry")
}

/// Replays `rounds` independent one-shot interactions. Each round draws the
/// worker type first, then the recommendation, then replays the type's best
/// response to the realized recommendation.
pub fn simulate(
    spec: &GameSpec,
    sigma: &MixedStrategy,
    rounds: u64,
    seed: u64,
) -> SimulationReport {
    assert!(rounds >= 1, "need at least one round");
    assert_eq!(
        sigma.len(),
        spec.task_count(),
        "strategy length must equal the task count"
    );

    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut leader_sum = 0.0;
    let mut worker_sum = 0.0;
    let mut obeyed = 0u64;
    let mut matched = 0u64;
    let mut per_type_counts = vec![0u64; spec.type_count()];

    for _ in 0..rounds {
        let theta = pick(&spec.prior, unit_f64(&mut rng));
        let s = pick(sigma.probs(), unit_f64(&mut rng)) + 1;
        let response = worker_best_response(s, theta, spec);
        let chosen = response.chosen_task;

        leader_sum += spec.system_utility(s, chosen, theta);
        worker_sum += response.utility;
        if chosen == s {
            obeyed += 1;
        }
        if spec.matching.suits(chosen, theta) {
            matched += 1;
        }
        per_type_counts[theta] += 1;
    }

    let n = rounds as f64;
    SimulationReport {
        rounds,
        mean_leader_utility: leader_sum / n,
        mean_worker_utility: worker_sum / n,
        obedience_rate: obeyed as f64 / n,
        match_rate: matched as f64 / n,
        per_type_counts,
        seed,
        generator: GENERATOR_ID.to_string(),
    }
}
