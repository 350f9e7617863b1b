//! Double-pushout rewriting: match, pushout complement, completion pushout.
//!
//! A rule is a span `I <-l- K -r-> O` with `l` monic. Applying it at a monic
//! match `m: I -> X` first deletes the matched non-glue part of `X` (the
//! pushout complement, which exists exactly when the identification and
//! dangling conditions hold) and then adjoins the effect along the glue (the
//! completion pushout). Deleting an entity present in `I` but not `O`, or
//! creating one present in `O` but not `I`, is what makes updates
//! non-monotone.

use std::fmt;

use thiserror::Error;

use crate::colimit::{pushout, ColimitError};
use crate::cset::{CSet, CSetError, CSetMorphism};
use crate::hom::{self, HomOptions};

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error("rule legs do not share a glue")]
    GlueMismatch,
    #[error("rule side does not validate: {0}")]
    InvalidSide(String),
    #[error("left leg of the rule must be monic")]
    NonMonicLeft,
    #[error("match must be monic")]
    NonMonicMatch,
    #[error("match codomain does not fit the rule")]
    MatchMismatch,
    #[error("gluing condition violated: {0}")]
    GluingViolation(GluingReport),
    #[error("{0}")]
    Morphism(#[from] CSetError),
    #[error("{0}")]
    Colimit(#[from] ColimitError),
    #[error("{0}")]
    Hom(#[from] hom::HomError),
}

/// An action rule: precondition `I`, effect `O`, and the preserved glue `K`
/// between them.
#[derive(Debug, Clone)]
pub struct Rule {
    left: CSetMorphism,
    right: CSetMorphism,
}

impl Rule {
    /// Builds a rule from `l: K -> I` and `r: K -> O`, checking that the
    /// legs share `K`, all three sides validate, and `l` is monic.
    pub fn new(left: CSetMorphism, right: CSetMorphism) -> Result<Rule, RewriteError> {
        if left.dom() != right.dom() {
            return Err(RewriteError::GlueMismatch);
        }
        for (name, side) in [
            ("glue", left.dom()),
            ("precondition", left.cod()),
            ("effect", right.cod()),
        ] {
            let report = side.validate();
            if !report.is_ok() {
                return Err(RewriteError::InvalidSide(format!("{name}: {report}")));
            }
        }
        left.check_naturality()?;
        right.check_naturality()?;
        if !left.is_mono() {
            return Err(RewriteError::NonMonicLeft);
        }
        Ok(Rule { left, right })
    }

    /// Identity rule on an instance: nothing deleted, nothing added.
    pub fn identity(cset: &CSet) -> Rule {
        let id = CSetMorphism::identity(cset);
        Rule {
            left: id.clone(),
            right: id,
        }
    }

    pub fn left(&self) -> &CSetMorphism {
        &self.left
    }

    pub fn right(&self) -> &CSetMorphism {
        &self.right
    }

    pub fn precondition(&self) -> &CSet {
        self.left.cod()
    }

    pub fn glue(&self) -> &CSet {
        self.left.dom()
    }

    pub fn effect(&self) -> &CSet {
        self.right.cod()
    }
}

/// A dangling-condition violation: a kept element whose subpart lands in the
/// deleted region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DanglingViolation {
    pub morphism: String,
    pub object: String,
    pub elem: usize,
}

/// Gluing-condition report for a prospective match.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GluingReport {
    /// Pairs of distinct precondition elements identified by the match
    /// without both being glue-preserved.
    pub identification: Vec<(String, usize, usize)>,
    pub dangling: Vec<DanglingViolation>,
}

impl GluingReport {
    pub fn is_ok(&self) -> bool {
        self.identification.is_empty() && self.dangling.is_empty()
    }
}

impl fmt::Display for GluingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let mut parts = Vec::new();
        for (ob, a, b) in &self.identification {
            parts.push(format!("identification: {ob}#{a} and {ob}#{b} merged outside the glue"));
        }
        for d in &self.dangling {
            parts.push(format!(
                "dangling: {}#{} keeps subpart {:?} into the deleted region",
                d.object, d.elem, d.morphism
            ));
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks the identification and dangling conditions for `l: K -> I` against
/// a match `m: I -> X`.
pub fn check_gluing(l: &CSetMorphism, m: &CSetMorphism) -> Result<GluingReport, RewriteError> {
    if !l.is_mono() {
        return Err(RewriteError::NonMonicLeft);
    }
    if l.cod() != m.dom() {
        return Err(RewriteError::MatchMismatch);
    }
    let schema = m.dom().schema();
    let pattern = m.dom();
    let state = m.cod();

    // kept[ob][i] = precondition element i+1 is in the image of the glue
    let kept: Vec<Vec<bool>> = (0..schema.object_count())
        .map(|ob| {
            let mut flags = vec![false; pattern.part_count(ob)];
            for elem in l.dom().elements(ob) {
                flags[l.apply(ob, elem) - 1] = true;
            }
            flags
        })
        .collect();

    let mut report = GluingReport::default();

    // Identification: two precondition elements merged by the match must
    // both be glue-preserved. Vacuous for monic matches, still checked.
    for ob in 0..schema.object_count() {
        for a in pattern.elements(ob) {
            for b in pattern.elements(ob).skip(a) {
                if m.apply(ob, a) == m.apply(ob, b) && !(kept[ob][a - 1] && kept[ob][b - 1]) {
                    report
                        .identification
                        .push((schema.object_name(ob).to_string(), a, b));
                }
            }
        }
    }

    // deleted[ob] = image under m of the non-glue part of the precondition
    let deleted: Vec<Vec<bool>> = (0..schema.object_count())
        .map(|ob| {
            let mut flags = vec![false; state.part_count(ob)];
            for elem in pattern.elements(ob) {
                if !kept[ob][elem - 1] {
                    flags[m.apply(ob, elem) - 1] = true;
                }
            }
            flags
        })
        .collect();
    let matched: Vec<Vec<bool>> = (0..schema.object_count())
        .map(|ob| {
            let mut flags = vec![false; state.part_count(ob)];
            for elem in pattern.elements(ob) {
                flags[m.apply(ob, elem) - 1] = true;
            }
            flags
        })
        .collect();

    // Dangling: no state element outside the match may keep a subpart into
    // the deleted region.
    for mor in 0..schema.morphism_count() {
        let gen = schema.morphism(mor);
        for elem in state.elements(gen.dom) {
            if matched[gen.dom][elem - 1] {
                continue;
            }
            if let Some(t) = state.subpart_by_id(mor, elem) {
                if deleted[gen.cod][t - 1] {
                    report.dangling.push(DanglingViolation {
                        morphism: gen.name.clone(),
                        object: schema.object_name(gen.dom).to_string(),
                        elem,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Computes the pushout complement of `l: K -> I` and `m: I -> X`: the
/// intermediate state `Z` (the match's non-glue image removed, IDs
/// re-densified in state order) with `f: K -> Z` and the inclusion
/// `g: Z -> X`. The square `(l, m, f, g)` is then a pushout, and `Z` is
/// unique up to isomorphism.
pub fn pushout_complement(
    l: &CSetMorphism,
    m: &CSetMorphism,
) -> Result<(CSetMorphism, CSetMorphism), RewriteError> {
    let report = check_gluing(l, m)?;
    if !report.is_ok() {
        return Err(RewriteError::GluingViolation(report));
    }
    let schema = m.cod().schema().clone();
    let state = m.cod();
    let pattern = m.dom();

    let mut keep_in_state: Vec<Vec<bool>> = (0..schema.object_count())
        .map(|ob| vec![true; state.part_count(ob)])
        .collect();
    let mut glue_flags: Vec<Vec<bool>> = (0..schema.object_count())
        .map(|ob| vec![false; pattern.part_count(ob)])
        .collect();
    for ob in 0..schema.object_count() {
        for elem in l.dom().elements(ob) {
            glue_flags[ob][l.apply(ob, elem) - 1] = true;
        }
        for elem in pattern.elements(ob) {
            if !glue_flags[ob][elem - 1] {
                keep_in_state[ob][m.apply(ob, elem) - 1] = false;
            }
        }
    }

    // order-preserving compaction of the surviving elements
    let mut new_id: Vec<Vec<usize>> = (0..schema.object_count())
        .map(|ob| vec![0usize; state.part_count(ob)])
        .collect();
    let mut complement = CSet::new(schema.clone());
    let mut into_state: Vec<Vec<usize>> = vec![Vec::new(); schema.object_count()];
    for ob in 0..schema.object_count() {
        for elem in state.elements(ob) {
            if keep_in_state[ob][elem - 1] {
                let id = complement.add_part_by_id(ob);
                new_id[ob][elem - 1] = id;
                into_state[ob].push(elem);
            }
        }
    }
    for mor in 0..schema.morphism_count() {
        let gen = schema.morphism(mor);
        for elem in state.elements(gen.dom) {
            if !keep_in_state[gen.dom][elem - 1] {
                continue;
            }
            let t = state
                .subpart_by_id(mor, elem)
                .expect("state must be validated");
            debug_assert!(
                keep_in_state[gen.cod][t - 1],
                "dangling condition guarantees closure of the kept part"
            );
            complement.set_subpart_by_id(mor, new_id[gen.dom][elem - 1], new_id[gen.cod][t - 1]);
        }
    }

    let f_components: Vec<Vec<usize>> = (0..schema.object_count())
        .map(|ob| {
            l.dom()
                .elements(ob)
                .map(|k| {
                    let in_state = m.apply(ob, l.apply(ob, k));
                    new_id[ob][in_state - 1]
                })
                .collect()
        })
        .collect();
    let f = CSetMorphism::new_unchecked(l.dom().clone(), complement.clone(), f_components);
    let g = CSetMorphism::new_unchecked(complement, state.clone(), into_state);
    Ok((f, g))
}

/// One executed rewrite: the intermediate state, the witnessing maps of both
/// squares, and the resulting state.
#[derive(Debug, Clone)]
pub struct RewriteOutcome {
    pub intermediate: CSet,
    /// `f: K -> Z`, the glue embedded in the intermediate state.
    pub glue_to_intermediate: CSetMorphism,
    /// `g: Z -> X`, the inclusion of the intermediate into the input state.
    pub intermediate_to_state: CSetMorphism,
    /// Left injection of the completion pushout, `Z -> Y`.
    pub intermediate_to_result: CSetMorphism,
    /// Right injection of the completion pushout, `O -> Y`.
    pub effect_to_result: CSetMorphism,
    pub result: CSet,
}

/// Executes the rule at a monic match: pushout complement, then completion
/// pushout of `Z <-f- K -r-> O`.
pub fn apply_rule(
    rule: &Rule,
    state: &CSet,
    m: &CSetMorphism,
) -> Result<RewriteOutcome, RewriteError> {
    if m.dom() != rule.precondition() || m.cod() != state {
        return Err(RewriteError::MatchMismatch);
    }
    m.check_naturality()?;
    if !m.is_mono() {
        return Err(RewriteError::NonMonicMatch);
    }
    let (f, g) = pushout_complement(&rule.left, m)?;
    let completed = pushout(&f, &rule.right)?;
    debug_assert!(completed.apex.validate().is_ok());
    Ok(RewriteOutcome {
        intermediate: f.cod().clone(),
        glue_to_intermediate: f,
        intermediate_to_state: g,
        intermediate_to_result: completed.left,
        effect_to_result: completed.right,
        result: completed.apex,
    })
}

/// All monic matches of the rule's precondition, split into executed
/// rewrites and gluing rejections. Gluing failures are data, not errors:
/// planners skip infeasible matches cheaply.
#[derive(Debug, Clone, Default)]
pub struct RewriteAll {
    pub applied: Vec<(CSetMorphism, RewriteOutcome)>,
    pub rejected: Vec<(CSetMorphism, GluingReport)>,
}

pub fn rewrite_all(rule: &Rule, state: &CSet) -> Result<RewriteAll, RewriteError> {
    let matches = hom::find_homomorphisms(
        rule.precondition(),
        state,
        &HomOptions {
            monic: true,
            limit: None,
        },
    )?;
    let mut out = RewriteAll::default();
    for m in matches {
        let report = check_gluing(&rule.left, &m)?;
        if report.is_ok() {
            let outcome = apply_rule(rule, state, &m)?;
            out.applied.push((m, outcome));
        } else {
            out.rejected.push((m, report));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colimit::verify_universal_property;
    use crate::colimit::PushoutResult;
    use crate::cset::isomorphic;
    use crate::testutil::{graph, graph_schema, vertex_deletion_rule};

    #[test]
    fn gluing_accepts_isolated_vertex() {
        let schema = graph_schema();
        let rule = vertex_deletion_rule(&schema);
        let state = graph(&schema, 1, &[]);
        let m = CSetMorphism::identity(&state);
        let report = check_gluing(rule.left(), &m).unwrap();
        assert!(report.is_ok());
    }

    #[test]
    fn gluing_rejects_incident_edge() {
        let schema = graph_schema();
        let rule = vertex_deletion_rule(&schema);
        let state = graph(&schema, 2, &[(1, 2)]);
        let vertex = rule.precondition().clone();
        let m = CSetMorphism::new(vertex, state, vec![vec![], vec![1]]).unwrap();
        let report = check_gluing(rule.left(), &m).unwrap();
        assert_eq!(report.dangling.len(), 1);
        assert_eq!(report.dangling[0].morphism, "src");
    }

    #[test]
    fn gluing_accepts_identity_rule() {
        let schema = graph_schema();
        let state = graph(&schema, 2, &[(1, 2)]);
        let rule = Rule::identity(&state);
        let m = CSetMorphism::identity(&state);
        assert!(check_gluing(rule.left(), &m).unwrap().is_ok());
    }

    #[test]
    fn complement_of_identity_rule_is_state() {
        let schema = graph_schema();
        let state = graph(&schema, 3, &[(1, 2), (2, 3)]);
        let rule = Rule::identity(&state);
        let m = CSetMorphism::identity(&state);
        let (f, g) = pushout_complement(rule.left(), &m).unwrap();
        assert!(isomorphic(f.cod(), &state).unwrap().is_some());
        assert!(g.is_mono());
    }

    #[test]
    fn complement_of_pure_addition_rule_is_state() {
        // K = I: nothing deleted
        let schema = graph_schema();
        let v = graph(&schema, 1, &[]);
        let e = graph(&schema, 2, &[(1, 2)]);
        let l = CSetMorphism::identity(&v);
        let r = CSetMorphism::new(v.clone(), e.clone(), vec![vec![], vec![1]]).unwrap();
        let rule = Rule::new(l, r).unwrap();
        let state = graph(&schema, 2, &[]);
        let m = CSetMorphism::new(v.clone(), state.clone(), vec![vec![], vec![2]]).unwrap();
        let (f, _g) = pushout_complement(rule.left(), &m).unwrap();
        assert!(isomorphic(f.cod(), &state).unwrap().is_some());
        // the full rewrite grows a pendant edge at vertex 2
        let outcome = apply_rule(&rule, &state, &m).unwrap();
        assert_eq!(outcome.result.part_count_named("V").unwrap(), 3);
        assert_eq!(outcome.result.part_count_named("E").unwrap(), 1);
    }

    #[test]
    fn complement_square_is_a_pushout() {
        let schema = graph_schema();
        let rule = vertex_deletion_rule(&schema);
        let state = graph(&schema, 3, &[(1, 2)]);
        let vertex = rule.precondition().clone();
        let m = CSetMorphism::new(vertex, state.clone(), vec![vec![], vec![3]]).unwrap();
        let (f, g) = pushout_complement(rule.left(), &m).unwrap();
        let candidate = PushoutResult {
            apex: state.clone(),
            left: m.clone(),
            right: g.clone(),
        };
        assert!(
            verify_universal_property(rule.left(), &f, &candidate, (&m, &g)).unwrap(),
            "complement square must satisfy the pushout universal property"
        );
    }

    #[test]
    fn apply_rule_rejects_non_monic_match() {
        let schema = graph_schema();
        let two = graph(&schema, 2, &[]);
        let one = graph(&schema, 1, &[]);
        let l = CSetMorphism::identity(&two);
        let r = CSetMorphism::identity(&two);
        let rule = Rule::new(l, r).unwrap();
        let m = CSetMorphism::new(two.clone(), one.clone(), vec![vec![], vec![1, 1]]).unwrap();
        assert!(matches!(
            apply_rule(&rule, &one, &m).unwrap_err(),
            RewriteError::NonMonicMatch
        ));
    }

    #[test]
    fn identity_rule_preserves_state() {
        let schema = graph_schema();
        let state = graph(&schema, 3, &[(1, 2), (2, 3), (3, 1)]);
        let rule = Rule::identity(&state);
        let m = CSetMorphism::identity(&state);
        let outcome = apply_rule(&rule, &state, &m).unwrap();
        assert!(isomorphic(&outcome.result, &state).unwrap().is_some());
    }

    #[test]
    fn rewrite_all_splits_applied_and_rejected() {
        // 2 isolated + 1 incident vertex: two deletions succeed, one match
        // fails the dangling condition. Oracle: a vertex is deletable iff no
        // edge endpoint touches it.
        let schema = graph_schema();
        let rule = vertex_deletion_rule(&schema);
        let state = graph(&schema, 3, &[(1, 1)]);
        let deletable: Vec<bool> = (1..=3)
            .map(|v| ![ (1usize, 1usize) ].iter().any(|&(s, t)| s == v || t == v))
            .collect();
        assert_eq!(deletable, vec![false, true, true]);
        let all = rewrite_all(&rule, &state).unwrap();
        assert_eq!(all.applied.len(), 2);
        assert_eq!(all.rejected.len(), 1);
        for (_, outcome) in &all.applied {
            assert_eq!(outcome.result.part_count_named("V").unwrap(), 2);
            assert_eq!(outcome.result.part_count_named("E").unwrap(), 1);
        }
    }

    #[test]
    fn rewrite_all_empty_when_precondition_unsatisfiable() {
        let schema = graph_schema();
        let rule = vertex_deletion_rule(&schema);
        let empty = graph(&schema, 0, &[]);
        let all = rewrite_all(&rule, &empty).unwrap();
        assert!(all.applied.is_empty() && all.rejected.is_empty());
    }

    #[test]
    fn identity_rule_yields_one_outcome_per_monic_self_match() {
        let schema = graph_schema();
        let two_edges = graph(&schema, 4, &[(1, 2), (3, 4)]);
        let edge = graph(&schema, 2, &[(1, 2)]);
        let rule = Rule::identity(&edge);
        // brute-force count of monic matches: pick either edge
        let monic = crate::hom::find_homomorphisms(
            &edge,
            &two_edges,
            &HomOptions {
                monic: true,
                limit: None,
            },
        )
        .unwrap();
        assert_eq!(monic.len(), 2);
        let all = rewrite_all(&rule, &two_edges).unwrap();
        assert_eq!(all.applied.len(), 2);
        assert!(all.rejected.is_empty());
    }

    #[test]
    fn non_monotone_updates_add_and_remove() {
        // replace a vertex: I = v, K = empty, O = two fresh vertices
        let schema = graph_schema();
        let v = graph(&schema, 1, &[]);
        let empty = graph(&schema, 0, &[]);
        let two = graph(&schema, 2, &[]);
        let l = CSetMorphism::new(empty.clone(), v.clone(), vec![vec![], vec![]]).unwrap();
        let r = CSetMorphism::new(empty, two, vec![vec![], vec![]]).unwrap();
        let rule = Rule::new(l, r).unwrap();
        let state = graph(&schema, 1, &[]);
        let m = CSetMorphism::identity(&state);
        let outcome = apply_rule(&rule, &state, &m).unwrap();
        assert_eq!(outcome.intermediate.part_count_named("V").unwrap(), 0);
        assert_eq!(outcome.result.part_count_named("V").unwrap(), 2);
    }

    #[test]
    fn non_monic_right_leg_merges_elements() {
        // I = 2 vertices, K = 2 vertices, O = 1 vertex: r merges
        let schema = graph_schema();
        let two = graph(&schema, 2, &[]);
        let one = graph(&schema, 1, &[]);
        let l = CSetMorphism::identity(&two);
        let r = CSetMorphism::new(two.clone(), one, vec![vec![], vec![1, 1]]).unwrap();
        let rule = Rule::new(l, r).unwrap();
        let state = graph(&schema, 2, &[(1, 2)]);
        let m = CSetMorphism::identity(&state);
        let outcome = apply_rule(&rule, &state, &m).unwrap();
        assert_eq!(outcome.result.part_count_named("V").unwrap(), 1);
        assert_eq!(outcome.result.part_count_named("E").unwrap(), 1);
        // the surviving edge became a self loop
        assert_eq!(outcome.result.subpart("src", 1).unwrap(), Some(1));
        assert_eq!(outcome.result.subpart("tgt", 1).unwrap(), Some(1));
    }

    #[test]
    fn rewrite_is_deterministic() {
        let schema = graph_schema();
        let rule = vertex_deletion_rule(&schema);
        let state = graph(&schema, 4, &[(1, 2)]);
        let vertex = rule.precondition().clone();
        let m = CSetMorphism::new(vertex, state.clone(), vec![vec![], vec![3]]).unwrap();
        let a = apply_rule(&rule, &state, &m).unwrap();
        let b = apply_rule(&rule, &state, &m).unwrap();
        assert_eq!(a.result, b.result);
        assert_eq!(a.intermediate, b.intermediate);
    }
}
