//! Forward state-space search over C-set states, with rules as actions.
//!
//! The transition system: states are C-sets over the problem schema, an
//! action is a rule together with a concrete monic, gluing-valid match, and
//! the transition function is DPO rewriting. The goal test asks for a
//! monomorphism from the goal pattern into the state. Search is plain
//! breadth-first with states deduplicated up to isomorphism (canonical-hash
//! buckets confirmed by the exhaustive isomorphism decider), so returned
//! plans are shortest by step count.

use std::collections::HashMap;

use thiserror::Error;

use crate::cset::{canonical_hash, isomorphic, CSet, CSetError, CSetMorphism};
use crate::hom::{self, HomError};
use crate::rewrite::{self, Rule, RewriteError};

#[derive(Debug, Error)]
pub enum PlanError {
    #[error("problem does not validate: {0}")]
    InvalidProblem(String),
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
    #[error("action is not applicable: {0}")]
    Inapplicable(String),
    #[error("{0}")]
    Rewrite(#[from] RewriteError),
    #[error("{0}")]
    Hom(#[from] HomError),
    #[error("{0}")]
    Morphism(#[from] CSetError),
}

/// A named rule set plus initial state and goal pattern.
#[derive(Debug, Clone)]
pub struct PlanningProblem {
    pub initial: CSet,
    pub goal: CSet,
    pub rules: Vec<(String, Rule)>,
}

impl PlanningProblem {
    pub fn validate(&self) -> Result<(), PlanError> {
        let report = self.initial.validate();
        if !report.is_ok() {
            return Err(PlanError::InvalidProblem(format!("initial state: {report}")));
        }
        let report = self.goal.validate();
        if !report.is_ok() {
            return Err(PlanError::InvalidProblem(format!("goal pattern: {report}")));
        }
        if !self.initial.same_schema(&self.goal) {
            return Err(PlanError::InvalidProblem(
                "initial and goal live over different schemas".to_string(),
            ));
        }
        for (name, rule) in &self.rules {
            if !rule.precondition().same_schema(&self.initial) {
                return Err(PlanError::InvalidProblem(format!(
                    "rule {name:?} lives over a different schema"
                )));
            }
        }
        Ok(())
    }

    pub fn rule(&self, name: &str) -> Result<&Rule, PlanError> {
        self.rules
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, r)| r)
            .ok_or_else(|| PlanError::UnknownRule(name.to_string()))
    }
}

/// A rule applied at one concrete match in one concrete state.
#[derive(Debug, Clone)]
pub struct Action {
    pub rule: String,
    pub matching: CSetMorphism,
}

/// A replayable plan: rule names with their match components, step by step.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Plan {
    pub steps: Vec<PlanStep>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanStep {
    pub rule: String,
    /// Per-object maps from precondition elements to state elements.
    pub match_components: Vec<Vec<usize>>,
}

impl Plan {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Search counters reported alongside every planning run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PlanStats {
    /// States expanded (popped and rewritten).
    pub expanded: usize,
    /// Successor states merged into an existing isomorphism class.
    pub duplicates: usize,
    /// Distinct isomorphism classes discovered.
    pub states: usize,
}

/// Outcome of a bounded breadth-first search.
#[derive(Debug, Clone)]
pub enum PlanOutcome {
    Found(Plan),
    /// The whole reachable space within the depth bound was searched; there
    /// is provably no plan of length <= max_depth.
    NoPlanWithinDepth,
    /// The state budget ran out first; inconclusive.
    StateBudgetExhausted,
}

impl PlanOutcome {
    pub fn plan(&self) -> Option<&Plan> {
        match self {
            PlanOutcome::Found(plan) => Some(plan),
            _ => None,
        }
    }
}

/// All applicable actions at a state: every (rule, match) pair whose match
/// is monic and passes the gluing condition, in rule declaration order, then
/// match order.
pub fn applicable_actions(
    problem: &PlanningProblem,
    state: &CSet,
) -> Result<Vec<Action>, PlanError> {
    let mut actions = Vec::new();
    for (name, rule) in &problem.rules {
        let all = rewrite::rewrite_all(rule, state)?;
        for (m, _) in all.applied {
            actions.push(Action {
                rule: name.clone(),
                matching: m,
            });
        }
    }
    Ok(actions)
}

/// Applies an action to the state it was computed on.
pub fn transition(problem: &PlanningProblem, state: &CSet, action: &Action) -> Result<CSet, PlanError> {
    let rule = problem.rule(&action.rule)?;
    if action.matching.cod() != state {
        return Err(PlanError::Inapplicable(
            "match was computed on a different state".to_string(),
        ));
    }
    let outcome = rewrite::apply_rule(rule, state, &action.matching)
        .map_err(|e| PlanError::Inapplicable(e.to_string()))?;
    Ok(outcome.result)
}

/// True iff a monomorphism from the goal pattern into the state exists.
pub fn goal_reached(state: &CSet, goal: &CSet) -> Result<bool, PlanError> {
    Ok(hom::exists_mono(goal, state)?)
}

/// Bounded breadth-first search; returns the shortest plan (by step count)
/// within the bounds if one exists.
pub fn plan_bfs(
    problem: &PlanningProblem,
    max_depth: usize,
    max_states: usize,
) -> Result<(PlanOutcome, PlanStats), PlanError> {
    problem.validate()?;
    let mut stats = PlanStats::default();

    struct Node {
        state: CSet,
        parent: Option<(usize, String, Vec<Vec<usize>>)>,
        depth: usize,
    }

    let mut nodes: Vec<Node> = Vec::new();
    let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();

    let mut insert_if_new = |nodes: &mut Vec<Node>,
                             buckets: &mut HashMap<u64, Vec<usize>>,
                             stats: &mut PlanStats,
                             node: Node|
     -> Option<usize> {
        let hash = canonical_hash(&node.state);
        let bucket = buckets.entry(hash).or_default();
        for &idx in bucket.iter() {
            if isomorphic(&nodes[idx].state, &node.state)
                .expect("states share the problem schema")
                .is_some()
            {
                stats.duplicates += 1;
                return None;
            }
        }
        let idx = nodes.len();
        bucket.push(idx);
        nodes.push(node);
        stats.states += 1;
        Some(idx)
    };

    let reconstruct = |nodes: &[Node], mut at: usize| -> Plan {
        let mut steps = Vec::new();
        while let Some((parent, rule, components)) = &nodes[at].parent {
            steps.push(PlanStep {
                rule: rule.clone(),
                match_components: components.clone(),
            });
            at = *parent;
        }
        steps.reverse();
        Plan { steps }
    };

    insert_if_new(
        &mut nodes,
        &mut buckets,
        &mut stats,
        Node {
            state: problem.initial.clone(),
            parent: None,
            depth: 0,
        },
    );
    if goal_reached(&problem.initial, &problem.goal)? {
        return Ok((PlanOutcome::Found(Plan::default()), stats));
    }

    let mut frontier = 0usize;
    while frontier < nodes.len() {
        let depth = nodes[frontier].depth;
        if depth >= max_depth {
            frontier += 1;
            continue;
        }
        stats.expanded += 1;
        let state = nodes[frontier].state.clone();
        let actions = applicable_actions(problem, &state)?;
        for action in actions {
            let next = transition(problem, &state, &action)?;
            let node = Node {
                state: next,
                parent: Some((
                    frontier,
                    action.rule.clone(),
                    action.matching.components().to_vec(),
                )),
                depth: depth + 1,
            };
            if let Some(idx) = insert_if_new(&mut nodes, &mut buckets, &mut stats, node) {
                if goal_reached(&nodes[idx].state, &problem.goal)? {
                    let plan = reconstruct(&nodes, idx);
                    return Ok((PlanOutcome::Found(plan), stats));
                }
                if nodes.len() > max_states {
                    return Ok((PlanOutcome::StateBudgetExhausted, stats));
                }
            }
        }
        frontier += 1;
    }
    Ok((PlanOutcome::NoPlanWithinDepth, stats))
}

/// Result of replaying a plan against the problem.
#[derive(Debug, Clone)]
pub struct ReplayReport {
    pub ok: bool,
    pub final_state: CSet,
    /// First step that failed to replay, if any (0-based).
    pub failed_step: Option<usize>,
    pub reason: Option<String>,
}

/// Replays a plan step by step: every match must be monic and gluing-valid
/// in the state produced so far, and the final state must reach the goal.
pub fn validate_plan(problem: &PlanningProblem, plan: &Plan) -> Result<ReplayReport, PlanError> {
    problem.validate()?;
    let mut state = problem.initial.clone();
    for (i, step) in plan.steps.iter().enumerate() {
        let rule = match problem.rule(&step.rule) {
            Ok(rule) => rule,
            Err(e) => {
                return Ok(ReplayReport {
                    ok: false,
                    final_state: state,
                    failed_step: Some(i),
                    reason: Some(e.to_string()),
                })
            }
        };
        let m = match CSetMorphism::new(
            rule.precondition().clone(),
            state.clone(),
            step.match_components.clone(),
        ) {
            Ok(m) => m,
            Err(e) => {
                return Ok(ReplayReport {
                    ok: false,
                    final_state: state,
                    failed_step: Some(i),
                    reason: Some(e.to_string()),
                })
            }
        };
        match rewrite::apply_rule(rule, &state, &m) {
            Ok(outcome) => state = outcome.result,
            Err(e) => {
                return Ok(ReplayReport {
                    ok: false,
                    final_state: state,
                    failed_step: Some(i),
                    reason: Some(e.to_string()),
                })
            }
        }
    }
    let ok = goal_reached(&state, &problem.goal)?;
    Ok(ReplayReport {
        ok,
        final_state: state,
        failed_step: None,
        reason: if ok {
            None
        } else {
            Some("final state does not satisfy the goal".to_string())
        },
    })
}
