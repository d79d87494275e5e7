//! The result document every data-emitting command prints to stdout.

use serde::Serialize;

use stackrec::{MuRegion, SimulationReport, SolveResult, SteeringVerdict};

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Serialize)]
pub struct ResultDocument {
    /// The invoked command line, program name excluded.
    pub command: String,
    /// Content hash of the config file the command consumed.
    pub input_digest: String,
    pub toolkit_version: &'static str,
    pub payload: Payload,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Commitment {
        method: &'static str,
        result: SolveResult,
    },
    ObservedCommitment {
        recommendation: usize,
        value: f64,
    },
    GridSearch {
        grid: usize,
        value: f64,
    },
    MuDesign {
        region: MuRegion,
    },
    Steering {
        verdict: SteeringVerdict,
    },
    Simulation {
        report: SimulationReport,
    },
    Transform {
        leader_actions: usize,
        profiles: usize,
        out: String,
    },
}

impl ResultDocument {
    pub fn new(input_digest: String, payload: Payload) -> Self {
        let command: Vec<String> = std::env::args().skip(1).collect();
        Self {
            command: command.join(" "),
            input_digest,
            toolkit_version: TOOLKIT_VERSION,
            payload,
        }
    }

    /// Renders the single stdout document.
    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("result documents serialize")
    }
}
