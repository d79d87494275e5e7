//! JSON game-config schema and its conversion into a validated `GameSpec`.

use serde::{Deserialize, Serialize};

use stackrec::{
    beta_category, default_matching, enumerate_worker_types, GameSpec, MatchingTable, TaskType,
    UtilityParams, WorkerType,
};

/// Top-level config document.
///
/// `types` is either the string `"enumerate"` (the full 4 · K! type space in
/// canonical order) or an explicit array of `{beta, preference_order}`
/// entries. `matching` is either `{"rule": "default", "threshold": 1..4}` or
/// an explicit 0/1 array with one row per task and one column per type.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameConfigDocument {
    pub tasks: Vec<TaskDoc>,
    pub types: TypesDoc,
    pub prior: Vec<f64>,
    pub matching: MatchingDoc,
    pub params: ParamsDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TaskDoc {
    pub id: usize,
    pub label: String,
    pub strenuous: bool,
    pub deadline: f64,
    pub completion_time: f64,
    pub posted_reward: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TypesDoc {
    Keyword(String),
    List(Vec<TypeDoc>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TypeDoc {
    /// Raw cognitive-atrophy rate in [0, 1]; categorized on load.
    pub beta: f64,
    pub preference_order: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatchingDoc {
    Rule { rule: String, threshold: u8 },
    Explicit(Vec<Vec<u8>>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub phi: Vec<f64>,
    pub psi: Vec<f64>,
    /// Row per task, column per type.
    pub kappa: Vec<Vec<f64>>,
    pub mu: f64,
    pub lambda: f64,
}

impl GameConfigDocument {
    /// Builds the game instance. Structural problems (unknown keywords, an
    /// out-of-range β) surface here; everything else is left to
    /// `GameSpec::validate`, which the caller runs next.
    pub fn to_game_spec(&self) -> Result<GameSpec, String> {
        let tasks: Vec<TaskType> = self
            .tasks
            .iter()
            .map(|t| TaskType {
                id: t.id,
                label: t.label.clone(),
                strenuous: t.strenuous,
                deadline: t.deadline,
                completion_time: t.completion_time,
                posted_reward: t.posted_reward,
            })
            .collect();

        let worker_types = match &self.types {
            TypesDoc::Keyword(word) if word == "enumerate" => {
                enumerate_worker_types(tasks.len().max(1)).map_err(|e| e.to_string())?
            }
            TypesDoc::Keyword(word) => {
                return Err(format!(
                    "types: expected \"enumerate\" or an explicit array, got \"{word}\""
                ));
            }
            TypesDoc::List(list) => {
                let mut out = Vec::with_capacity(list.len());
                for (i, doc) in list.iter().enumerate() {
                    let category =
                        beta_category(doc.beta).map_err(|e| format!("types[{i}].beta: {e}"))?;
                    out.push(WorkerType {
                        beta_category: category,
                        preference_order: doc.preference_order.clone(),
                    });
                }
                out
            }
        };

        let matching = match &self.matching {
            MatchingDoc::Rule { rule, threshold } => {
                if rule != "default" {
                    return Err(format!(
                        "matching.rule: only \"default\" is recognized, got \"{rule}\""
                    ));
                }
                if !(1..=4).contains(threshold) {
                    return Err(format!(
                        "matching.threshold: must be a category in 1..=4, got {threshold}"
                    ));
                }
                default_matching(&tasks, &worker_types, *threshold)
            }
            MatchingDoc::Explicit(entries) => MatchingTable::new(entries.clone()),
        };

        Ok(GameSpec {
            tasks,
            worker_types,
            prior: self.prior.clone(),
            matching,
            params: UtilityParams {
                system_reward: self.params.phi.clone(),
                worker_reward: self.params.psi.clone(),
                mismatch_cost: self.params.kappa.clone(),
                disobedience_cost: self.params.mu,
                persuasion_inefficiency: self.params.lambda,
            },
        })
    }
}
