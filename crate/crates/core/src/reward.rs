//! Reward-structure design for two-task games: the open interval of
//! disobedience costs μ that makes every worker type's best response its
//! type-matched task, plus a brute-force steering check.

use serde::Serialize;
use thiserror::Error;

use crate::best_response::worker_best_response;
use crate::model::GameSpec;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DesignError {
    #[error("reward-interval analysis requires exactly two task types, got {found}")]
    UnsupportedShape { found: usize },
    #[error(
        "worker type {type_index} matches {matched_count} of the two tasks; \
         the bounds need exactly one matched and one unmatched task"
    )]
    DegenerateType {
        type_index: usize,
        matched_count: usize,
    },
}

/// Open interval of admissible disobedience costs. Both endpoints are
/// excluded: at the boundaries the worker is exactly indifferent and the
/// outcome is decided by tie-breaking, not by the reward structure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MuInterval {
    pub lower: f64,
    pub upper: f64,
    pub nonempty: bool,
}

impl MuInterval {
    pub fn new(lower: f64, upper: f64) -> Self {
        Self {
            lower,
            upper,
            nonempty: lower < upper,
        }
    }

    /// True when `mu` lies strictly inside the interval.
    pub fn contains(&self, mu: f64) -> bool {
        self.nonempty && mu > self.lower && mu < self.upper
    }
}

/// Per-type interval paired with the type it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TypeBounds {
    pub type_index: usize,
    pub interval: MuInterval,
}

/// Game-wide steering region: the intersection of every positive-prior
/// type's interval, with the types that supplied each binding bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MuRegion {
    pub interval: MuInterval,
    pub per_type: Vec<TypeBounds>,
    /// Type whose lower bound binds the intersection.
    pub lower_binding_type: usize,
    /// Type whose upper bound binds the intersection.
    pub upper_binding_type: usize,
    /// The pair of types whose bounds cross when the region is empty.
    pub blocking_pair: Option<(usize, usize)>,
}

/// Which side of a type's interval a queried μ sits on exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSide {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryHit {
    pub type_index: usize,
    pub side: BoundSide,
    pub bound: f64,
}

/// One steering failure: the type, the recommendation it saw, and the
/// unsuitable task it chose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SteeringViolation {
    pub type_index: usize,
    pub recommendation: usize,
    pub chosen: usize,
}

/// Outcome of a steering check at a concrete μ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteeringVerdict {
    pub mu: f64,
    pub violations: Vec<SteeringViolation>,
    /// Types whose interval endpoint equals μ exactly. At such a μ the
    /// guarantee is tie-break dependent rather than pass/fail.
    pub boundary: Vec<BoundaryHit>,
}

impl SteeringVerdict {
    /// True when every positive-prior type picked a suitable task under
    /// every recommendation.
    pub fn steers(&self) -> bool {
        self.violations.is_empty()
    }
}

fn matched_unmatched(spec: &GameSpec, theta: usize) -> Result<(usize, usize), DesignError> {
    match (spec.matching.m(1, theta), spec.matching.m(2, theta)) {
        (0, 1) => Ok((1, 2)),
        (1, 0) => Ok((2, 1)),
        (m1, m2) => Err(DesignError::DegenerateType {
            type_index: theta,
            matched_count: usize::from(m1 == 0) + usize::from(m2 == 0),
        }),
    }
}

/// The open μ interval steering worker type `theta` to its matched task:
/// (ψ(B) − ψ(A) − κ(B,θ), ψ(A) − ψ(B) + κ(B,θ)) with A the matched and B
/// the unmatched task. The lower bound keeps the type from abandoning a
/// matched recommendation; the upper bound keeps an unmatched
/// recommendation from being obeyed.
pub fn mu_bounds_for_type(theta: usize, spec: &GameSpec) -> Result<MuInterval, DesignError> {
    if spec.task_count() != 2 {
        return Err(DesignError::UnsupportedShape {
            found: spec.task_count(),
        });
    }
    let (matched, unmatched) = matched_unmatched(spec, theta)?;
    let psi_matched = spec.params.worker_reward[matched - 1];
    let psi_unmatched = spec.params.worker_reward[unmatched - 1];
    let kappa_unmatched = spec.params.mismatch_cost[unmatched - 1][theta];
    Ok(MuInterval::new(
        psi_unmatched - psi_matched - kappa_unmatched,
        psi_matched - psi_unmatched + kappa_unmatched,
    ))
}

/// Intersection of the per-type intervals over every type with positive
/// prior: the μ values steering the whole game at once.
pub fn feasible_mu_region(spec: &GameSpec) -> Result<MuRegion, DesignError> {
    if spec.task_count() != 2 {
        return Err(DesignError::UnsupportedShape {
            found: spec.task_count(),
        });
    }
    let mut per_type = Vec::new();
    let mut lower = f64::NEG_INFINITY;
    let mut upper = f64::INFINITY;
    let mut lower_binding_type = usize::MAX;
    let mut upper_binding_type = usize::MAX;
    for theta in 0..spec.type_count() {
        if spec.prior[theta] <= 0.0 {
            continue;
        }
        let interval = mu_bounds_for_type(theta, spec)?;
        per_type.push(TypeBounds {
            type_index: theta,
            interval,
        });
        if interval.lower > lower {
            lower = interval.lower;
            lower_binding_type = theta;
        }
        if interval.upper < upper {
            upper = interval.upper;
            upper_binding_type = theta;
        }
    }
    assert!(
        !per_type.is_empty(),
        "a normalized prior has at least one positive entry"
    );
    let interval = MuInterval::new(lower, upper);
    let blocking_pair = (!interval.nonempty).then_some((lower_binding_type, upper_binding_type));
    Ok(MuRegion {
        interval,
        per_type,
        lower_binding_type,
        upper_binding_type,
        blocking_pair,
    })
}

/// Replays every (positive-prior type, recommendation) pair at the given μ
/// and reports each best response that lands on an unsuitable task.
///
/// Any real μ is accepted, including values an input config could not
/// carry; the check is a what-if query, not a validated instance.
pub fn verify_steering(spec: &GameSpec, mu: f64) -> SteeringVerdict {
    let mut probe = spec.clone();
    probe.params.disobedience_cost = mu;
    let mut violations = Vec::new();
    let mut boundary = Vec::new();
    for theta in 0..probe.type_count() {
        if probe.prior[theta] <= 0.0 {
            continue;
        }
        for s in 1..=probe.task_count() {
            let response = worker_best_response(s, theta, &probe);
            if probe.matching.m(response.chosen_task, theta) != 0 {
                violations.push(SteeringViolation {
                    type_index: theta,
                    recommendation: s,
                    chosen: response.chosen_task,
                });
            }
        }
        if probe.task_count() == 2 {
            if let Ok(interval) = mu_bounds_for_type(theta, &probe) {
                if mu == interval.lower {
                    boundary.push(BoundaryHit {
                        type_index: theta,
                        side: BoundSide::Lower,
                        bound: interval.lower,
                    });
                }
                if mu == interval.upper {
                    boundary.push(BoundaryHit {
                        type_index: theta,
                        side: BoundSide::Upper,
                        bound: interval.upper,
                    });
                }
            }
        }
    }
    SteeringVerdict {
        mu,
        violations,
        boundary,
    }
}
