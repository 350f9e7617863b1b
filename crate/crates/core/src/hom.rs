//! Backtracking search for C-set homomorphisms and monomorphisms.
//!
//! The search assigns pattern elements to target elements object by object,
//! with naturality enforced as forward propagation: fixing the image of an
//! element immediately forces the images of all its subpart-reachable
//! elements and fails fast on conflict. Objects are visited in descending
//! generator out-degree so forced propagation kicks in early; elements and
//! candidate targets are tried in ID order, which makes the result order
//! deterministic.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cset::{CSet, CSetMorphism};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomError {
    #[error("pattern and target live over different schemas")]
    SchemaMismatch,
    #[error("seed assignment is out of range")]
    InvalidSeed,
}

/// Search options for [`find_homomorphisms`].
#[derive(Debug, Clone, Default)]
pub struct HomOptions {
    /// Require every component to be injective.
    pub monic: bool,
    /// Stop after this many results.
    pub limit: Option<usize>,
}

/// Counters from one search run. `expansions` counts candidate targets tried
/// at branch points; it is the quantity bounded by `c * n^k` for a pattern
/// with `k` elements searched in a target with part sizes at most `n`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub expansions: u64,
}

/// Enumerates natural transformations `pattern -> target`, exhaustively and
/// duplicate-free when no limit is given.
pub fn find_homomorphisms(
    pattern: &CSet,
    target: &CSet,
    options: &HomOptions,
) -> Result<Vec<CSetMorphism>, HomError> {
    find_homomorphisms_with_stats(pattern, target, options).map(|(found, _)| found)
}

pub fn find_homomorphisms_with_stats(
    pattern: &CSet,
    target: &CSet,
    options: &HomOptions,
) -> Result<(Vec<CSetMorphism>, SearchStats), HomError> {
    find_seeded(pattern, target, None, options)
}

/// True iff at least one monomorphism `pattern -> target` exists; the
/// applicability test for rule preconditions and goal patterns.
pub fn exists_mono(pattern: &CSet, target: &CSet) -> Result<bool, HomError> {
    let found = find_homomorphisms(
        pattern,
        target,
        &HomOptions {
            monic: true,
            limit: Some(1),
        },
    )?;
    Ok(!found.is_empty())
}

/// Search entry point that accepts preassigned images, used to look for
/// mediating morphisms under cocone constraints. A seed conflict simply
/// yields no results.
pub(crate) fn find_seeded(
    pattern: &CSet,
    target: &CSet,
    seed: Option<&[Vec<Option<usize>>]>,
    options: &HomOptions,
) -> Result<(Vec<CSetMorphism>, SearchStats), HomError> {
    if !pattern.same_schema(target) {
        return Err(HomError::SchemaMismatch);
    }
    let schema = pattern.schema();

    if let Some(seed) = seed {
        if seed.len() != schema.object_count() {
            return Err(HomError::InvalidSeed);
        }
        for ob in 0..schema.object_count() {
            if seed[ob].len() != pattern.part_count(ob) {
                return Err(HomError::InvalidSeed);
            }
            if seed[ob]
                .iter()
                .flatten()
                .any(|&v| v == 0 || v > target.part_count(ob))
            {
                return Err(HomError::InvalidSeed);
            }
        }
    }

    // Variable order: objects by descending generator out-degree, then
    // element ID. The out-degree heuristic maximizes forced propagation.
    let mut object_order: Vec<usize> = (0..schema.object_count()).collect();
    object_order.sort_by_key(|&ob| {
        let out = schema.generators_out(ob).count();
        (std::cmp::Reverse(out), ob)
    });
    let mut variables = Vec::new();
    for &ob in &object_order {
        for elem in pattern.elements(ob) {
            variables.push((ob, elem));
        }
    }

    let mut search = Search {
        pattern,
        target,
        monic: options.monic,
        limit: options.limit,
        assignment: (0..schema.object_count())
            .map(|ob| vec![0usize; pattern.part_count(ob)])
            .collect(),
        used: (0..schema.object_count())
            .map(|ob| vec![false; target.part_count(ob)])
            .collect(),
        trail: Vec::new(),
        variables,
        results: Vec::new(),
        seen: BTreeSet::new(),
        stats: SearchStats::default(),
    };

    // Apply seeds by propagation before branching; a conflict means no
    // morphism satisfies the constraints.
    let mut seeded_ok = true;
    if let Some(seed) = seed {
        'seeding: for ob in 0..schema.object_count() {
            for elem in pattern.elements(ob) {
                if let Some(v) = seed[ob][elem - 1] {
                    if !search.assign(ob, elem, v) {
                        seeded_ok = false;
                        break 'seeding;
                    }
                }
            }
        }
    }
    if seeded_ok {
        search.run(0);
    }

    let Search { results, stats, .. } = search;
    let morphisms = results
        .into_iter()
        .map(|components| CSetMorphism::new_unchecked(pattern.clone(), target.clone(), components))
        .collect();
    Ok((morphisms, stats))
}

struct Search<'a> {
    pattern: &'a CSet,
    target: &'a CSet,
    monic: bool,
    limit: Option<usize>,
    /// 0 = unassigned, otherwise the image element ID.
    assignment: Vec<Vec<usize>>,
    used: Vec<Vec<bool>>,
    trail: Vec<(usize, usize)>,
    variables: Vec<(usize, usize)>,
    results: Vec<Vec<Vec<usize>>>,
    seen: BTreeSet<Vec<Vec<usize>>>,
    stats: SearchStats,
}

impl<'a> Search<'a> {
    fn done(&self) -> bool {
        self.limit.is_some_and(|l| self.results.len() >= l)
    }

    /// Assigns `pattern (ob, elem) -> v` and propagates through every
    /// generator out of `ob`. Returns false on conflict, leaving bookkeeping
    /// for the caller to unwind via the trail.
    fn assign(&mut self, ob: usize, elem: usize, v: usize) -> bool {
        let current = self.assignment[ob][elem - 1];
        if current != 0 {
            return current == v;
        }
        if self.monic {
            if self.used[ob][v - 1] {
                return false;
            }
            self.used[ob][v - 1] = true;
        }
        self.assignment[ob][elem - 1] = v;
        self.trail.push((ob, elem));
        let schema = self.pattern.schema().clone();
        for m in schema.generators_out(ob) {
            let cod = schema.morphism(m).cod;
            let p_next = self
                .pattern
                .subpart_by_id(m, elem)
                .expect("pattern must be validated before searching");
            let t_next = self
                .target
                .subpart_by_id(m, v)
                .expect("target must be validated before searching");
            if !self.assign(cod, p_next, t_next) {
                return false;
            }
        }
        true
    }

    fn unwind(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (ob, elem) = self.trail.pop().unwrap();
            let v = self.assignment[ob][elem - 1];
            self.assignment[ob][elem - 1] = 0;
            if self.monic {
                self.used[ob][v - 1] = false;
            }
        }
    }

    fn run(&mut self, mut var_index: usize) {
        if self.done() {
            return;
        }
        while var_index < self.variables.len() {
            let (ob, elem) = self.variables[var_index];
            if self.assignment[ob][elem - 1] == 0 {
                break;
            }
            var_index += 1;
        }
        if var_index == self.variables.len() {
            let components = self.assignment.clone();
            if self.seen.insert(components.clone()) {
                self.results.push(components);
            }
            return;
        }
        let (ob, elem) = self.variables[var_index];
        for v in self.target.elements(ob) {
            self.stats.expansions += 1;
            let mark = self.trail.len();
            if self.assign(ob, elem, v) {
                self.run(var_index + 1);
            }
            self.unwind(mark);
            if self.done() {
                return;
            }
        }
    }
}
