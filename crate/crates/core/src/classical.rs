//! Classical STRIPS-style baseline: states are sets of ground positive
//! literals, applicability is subset inclusion, and transitions delete then
//! add literal sets. Kept deliberately minimal so the categorical pipeline
//! can be compared against it on the same domains.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassicalError {
    #[error("predicate {name:?} used with arity {got}, declared {declared}")]
    ArityMismatch {
        name: String,
        got: usize,
        declared: usize,
    },
    #[error("unknown predicate {0:?}")]
    UnknownPredicate(String),
    #[error("action {action:?} takes {expected} parameters, got {got}")]
    ParameterCount {
        action: String,
        expected: usize,
        got: usize,
    },
    #[error("symbol {symbol:?} in action {action:?} is neither a parameter nor a known constant")]
    UnknownSymbol { symbol: String, action: String },
    #[error("action {0:?} is not ground")]
    NotGround(String),
    #[error("action {0:?} is not applicable in this state")]
    Inapplicable(String),
    #[error("unknown action {0:?}")]
    UnknownAction(String),
}

/// A ground positive literal: predicate applied to constant symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Literal {
    pub predicate: String,
    pub args: Vec<String>,
}

impl Literal {
    pub fn new(predicate: impl Into<String>, args: &[&str]) -> Self {
        Literal {
            predicate: predicate.into(),
            args: args.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.predicate, self.args.join(","))
    }
}

/// A world state: a set of ground positive literals.
pub type ClassicalState = BTreeSet<Literal>;

/// A lifted action: literals over parameters and constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSchema {
    pub name: String,
    pub params: Vec<String>,
    pub pre: Vec<Literal>,
    pub add: Vec<Literal>,
    pub del: Vec<Literal>,
}

/// A fully instantiated action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundAction {
    pub name: String,
    pub args: Vec<String>,
    pub pre: BTreeSet<Literal>,
    pub add: BTreeSet<Literal>,
    pub del: BTreeSet<Literal>,
}

impl fmt::Display for GroundAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name, self.args.join(","))
    }
}

/// A classical domain: declared predicates with arities, a constant pool,
/// and lifted action schemas.
#[derive(Debug, Clone, Default)]
pub struct Domain {
    pub predicates: BTreeMap<String, usize>,
    pub constants: Vec<String>,
    pub actions: Vec<ActionSchema>,
}

impl Domain {
    /// Checks arity consistency of a literal set against the declarations.
    pub fn check_literals<'a>(
        &self,
        literals: impl IntoIterator<Item = &'a Literal>,
    ) -> Result<(), ClassicalError> {
        for lit in literals {
            let declared = self
                .predicates
                .get(&lit.predicate)
                .copied()
                .ok_or_else(|| ClassicalError::UnknownPredicate(lit.predicate.clone()))?;
            if lit.args.len() != declared {
                return Err(ClassicalError::ArityMismatch {
                    name: lit.predicate.clone(),
                    got: lit.args.len(),
                    declared,
                });
            }
        }
        Ok(())
    }

    pub fn action(&self, name: &str) -> Result<&ActionSchema, ClassicalError> {
        self.actions
            .iter()
            .find(|a| a.name == name)
            .ok_or_else(|| ClassicalError::UnknownAction(name.to_string()))
    }

    /// Every ground instantiation of every action schema over the constant
    /// pool, in declaration order then constant-pool order per parameter.
    pub fn ground_all(&self) -> Result<Vec<GroundAction>, ClassicalError> {
        let mut out = Vec::new();
        let n = self.constants.len();
        for schema in &self.actions {
            let k = schema.params.len() as u32;
            if k == 0 {
                out.push(ground(schema, &[], self)?);
                continue;
            }
            if n == 0 {
                continue;
            }
            for code in 0..n.pow(k) {
                let mut rest = code;
                let mut args = Vec::with_capacity(k as usize);
                for _ in 0..k {
                    args.push(self.constants[rest % n].as_str());
                    rest /= n;
                }
                args.reverse();
                out.push(ground(schema, &args, self)?);
            }
        }
        Ok(out)
    }
}

/// Substitutes constants for an action schema's parameters throughout its
/// precondition and effects. Symbols that are not parameters pass through as
/// constants.
pub fn ground(
    schema: &ActionSchema,
    constants: &[&str],
    domain: &Domain,
) -> Result<GroundAction, ClassicalError> {
    if constants.len() != schema.params.len() {
        return Err(ClassicalError::ParameterCount {
            action: schema.name.clone(),
            expected: schema.params.len(),
            got: constants.len(),
        });
    }
    let binding: BTreeMap<&str, &str> = schema
        .params
        .iter()
        .map(|p| p.as_str())
        .zip(constants.iter().copied())
        .collect();
    let substitute = |lits: &[Literal]| -> Result<BTreeSet<Literal>, ClassicalError> {
        lits.iter()
            .map(|lit| {
                let args = lit
                    .args
                    .iter()
                    .map(|arg| match binding.get(arg.as_str()) {
                        Some(&c) => Ok(c.to_string()),
                        None if domain.constants.iter().any(|k| k == arg) => Ok(arg.clone()),
                        None => Err(ClassicalError::UnknownSymbol {
                            symbol: arg.clone(),
                            action: schema.name.clone(),
                        }),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Literal {
                    predicate: lit.predicate.clone(),
                    args,
                })
            })
            .collect()
    };
    let action = GroundAction {
        name: schema.name.clone(),
        args: constants.iter().map(|s| s.to_string()).collect(),
        pre: substitute(&schema.pre)?,
        add: substitute(&schema.add)?,
        del: substitute(&schema.del)?,
    };
    domain.check_literals(action.pre.iter())?;
    domain.check_literals(action.add.iter())?;
    domain.check_literals(action.del.iter())?;
    Ok(action)
}

/// Subset applicability: the precondition must be contained in the state.
pub fn applicable(action: &GroundAction, state: &ClassicalState) -> bool {
    action.pre.is_subset(state)
}

/// Delete-then-add transition. Idempotent when effects already hold and
/// deletes are absent.
pub fn transition(
    action: &GroundAction,
    state: &ClassicalState,
) -> Result<ClassicalState, ClassicalError> {
    if !applicable(action, state) {
        return Err(ClassicalError::Inapplicable(action.to_string()));
    }
    let mut next: ClassicalState = state.difference(&action.del).cloned().collect();
    next.extend(action.add.iter().cloned());
    Ok(next)
}

/// A classical planning problem over a domain.
#[derive(Debug, Clone)]
pub struct Problem {
    pub domain: Domain,
    pub initial: ClassicalState,
    pub goal: BTreeSet<Literal>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub expanded: usize,
    pub duplicates: usize,
    pub states: usize,
}

#[derive(Debug, Clone)]
pub enum ClassicalOutcome {
    Found(Vec<GroundAction>),
    NoPlanWithinDepth,
    StateBudgetExhausted,
}

impl ClassicalOutcome {
    pub fn plan(&self) -> Option<&[GroundAction]> {
        match self {
            ClassicalOutcome::Found(plan) => Some(plan),
            _ => None,
        }
    }
}

/// Breadth-first forward search over literal-set states; mirrors the
/// categorical planner's bounds and outcome distinctions.
pub fn plan_bfs_classical(
    problem: &Problem,
    max_depth: usize,
    max_states: usize,
) -> Result<(ClassicalOutcome, SearchStats), ClassicalError> {
    problem.domain.check_literals(problem.initial.iter())?;
    problem.domain.check_literals(problem.goal.iter())?;
    let actions = problem.domain.ground_all()?;
    let mut stats = SearchStats::default();

    let goal_holds = |state: &ClassicalState| problem.goal.is_subset(state);

    struct Node {
        state: ClassicalState,
        parent: Option<(usize, usize)>, // (node, action index)
        depth: usize,
    }

    let mut nodes = vec![Node {
        state: problem.initial.clone(),
        parent: None,
        depth: 0,
    }];
    let mut seen: BTreeSet<ClassicalState> = [problem.initial.clone()].into();
    stats.states = 1;

    let reconstruct = |nodes: &[Node], mut at: usize| -> Vec<GroundAction> {
        let mut plan = Vec::new();
        while let Some((parent, action)) = nodes[at].parent {
            plan.push(actions[action].clone());
            at = parent;
        }
        plan.reverse();
        plan
    };

    if goal_holds(&problem.initial) {
        return Ok((ClassicalOutcome::Found(Vec::new()), stats));
    }

    let mut queue: VecDeque<usize> = [0].into();
    while let Some(at) = queue.pop_front() {
        if nodes[at].depth >= max_depth {
            continue;
        }
        stats.expanded += 1;
        for (i, action) in actions.iter().enumerate() {
            if !applicable(action, &nodes[at].state) {
                continue;
            }
            let next = transition(action, &nodes[at].state)?;
            if !seen.insert(next.clone()) {
                stats.duplicates += 1;
                continue;
            }
            let idx = nodes.len();
            nodes.push(Node {
                state: next,
                parent: Some((at, i)),
                depth: nodes[at].depth + 1,
            });
            stats.states += 1;
            if goal_holds(&nodes[idx].state) {
                return Ok((ClassicalOutcome::Found(reconstruct(&nodes, idx)), stats));
            }
            if nodes.len() > max_states {
                return Ok((ClassicalOutcome::StateBudgetExhausted, stats));
            }
            queue.push_back(idx);
        }
    }
    Ok((ClassicalOutcome::NoPlanWithinDepth, stats))
}
