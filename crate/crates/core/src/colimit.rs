//! Coproducts, pushouts, and gluings of C-sets.
//!
//! A pushout is computed as the disjoint union of the two feet, quotiented
//! by the relation generated by the shared part. The quotient closes the
//! relation under subpart congruence with a union-find worklist, so induced
//! subparts are total by construction; apex element IDs are re-densified in
//! (object, least class member) order, making every result deterministic.

use std::sync::Arc;

use thiserror::Error;

use crate::cset::{CSet, CSetError, CSetMorphism};
use crate::hom::{self, HomOptions};
use crate::schema::{representable, Schema, SchemaError};
use crate::union_find::UnionFind;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColimitError {
    #[error("inputs live over different schemas")]
    SchemaMismatch,
    #[error("span legs do not share a domain")]
    SpanMismatch,
    #[error("cocone does not commute over the span")]
    NonCommutingCocone,
    #[error("candidate pushout does not fit the span")]
    CandidateMismatch,
    #[error("{0}")]
    Morphism(#[from] CSetError),
    #[error("{0}")]
    Schema(#[from] SchemaError),
    #[error("unknown generator label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate generator label {0:?}")]
    DuplicateLabel(String),
    #[error("generator label {0:?} must not contain '.'")]
    InvalidLabel(String),
    #[error("address {addr:?} has no element (step {step:?} does not apply)")]
    BadAddress { addr: String, step: String },
    #[error("identification joins elements of different objects: {left:?} vs {right:?}")]
    IllTypedIdentification { left: String, right: String },
}

/// A colimit cocone over a span: the apex with its two injections.
#[derive(Debug, Clone)]
pub struct PushoutResult {
    pub apex: CSet,
    pub left: CSetMorphism,
    pub right: CSetMorphism,
}

/// Disjoint union `X + Y` with its two (monic, jointly surjective)
/// injections. X elements come first at every object.
pub fn coproduct(x: &CSet, y: &CSet) -> Result<PushoutResult, ColimitError> {
    if !x.same_schema(y) {
        return Err(ColimitError::SchemaMismatch);
    }
    let schema = Arc::clone(x.schema());
    let mut apex = CSet::new(Arc::clone(&schema));
    for ob in 0..schema.object_count() {
        apex.add_parts_by_id(ob, x.part_count(ob) + y.part_count(ob));
    }
    for m in 0..schema.morphism_count() {
        let gen = schema.morphism(m);
        let dom_shift = x.part_count(gen.dom);
        let cod_shift = x.part_count(gen.cod);
        for elem in x.elements(gen.dom) {
            if let Some(t) = x.subpart_by_id(m, elem) {
                apex.set_subpart_by_id(m, elem, t);
            }
        }
        for elem in y.elements(gen.dom) {
            if let Some(t) = y.subpart_by_id(m, elem) {
                apex.set_subpart_by_id(m, dom_shift + elem, cod_shift + t);
            }
        }
    }
    let left_components = (0..schema.object_count())
        .map(|ob| x.elements(ob).collect())
        .collect();
    let right_components = (0..schema.object_count())
        .map(|ob| y.elements(ob).map(|e| x.part_count(ob) + e).collect())
        .collect();
    let left = CSetMorphism::new_unchecked(x.clone(), apex.clone(), left_components);
    let right = CSetMorphism::new_unchecked(y.clone(), apex.clone(), right_components);
    Ok(PushoutResult { apex, left, right })
}

/// Quotients an instance by the equivalence generated by `pairs` (per-object
/// element pairs), closed under subpart congruence. Returns the quotient and
/// the projection components.
pub(crate) fn quotient_cset(
    cset: &CSet,
    pairs: &[(usize, usize, usize)], // (object, elem a, elem b)
) -> (CSet, Vec<Vec<usize>>) {
    let schema = Arc::clone(cset.schema());
    // Global indexing of elements: offset per object.
    let mut offset = vec![0usize; schema.object_count()];
    let mut total = 0;
    for ob in 0..schema.object_count() {
        offset[ob] = total;
        total += cset.part_count(ob);
    }
    let object_of = |global: usize| -> usize {
        (0..schema.object_count())
            .rev()
            .find(|&ob| offset[ob] <= global)
            .expect("global index in range")
    };

    let mut uf = UnionFind::new();
    for _ in 0..total {
        uf.push();
    }
    // Worklist congruence closure: merging two elements queues the merges of
    // all their subpart images.
    let mut worklist: Vec<(usize, usize)> = pairs
        .iter()
        .map(|&(ob, a, b)| (offset[ob] + a - 1, offset[ob] + b - 1))
        .collect();
    while let Some((ga, gb)) = worklist.pop() {
        let ra = uf.find(ga);
        let rb = uf.find(gb);
        if ra == rb {
            continue;
        }
        uf.union(ra, rb);
        let ob = object_of(ga);
        debug_assert_eq!(ob, object_of(gb));
        let ea = ga - offset[ob] + 1;
        let eb = gb - offset[ob] + 1;
        for m in schema.generators_out(ob) {
            let cod = schema.morphism(m).cod;
            if let (Some(ta), Some(tb)) = (cset.subpart_by_id(m, ea), cset.subpart_by_id(m, eb)) {
                worklist.push((offset[cod] + ta - 1, offset[cod] + tb - 1));
            }
        }
    }

    // Re-densify: classes per object ordered by their least member.
    let mut class_elem: Vec<Vec<usize>> = vec![Vec::new(); schema.object_count()];
    let mut projection: Vec<Vec<usize>> = (0..schema.object_count())
        .map(|ob| vec![0usize; cset.part_count(ob)])
        .collect();
    let mut root_to_new: std::collections::BTreeMap<usize, usize> = Default::default();
    for ob in 0..schema.object_count() {
        for elem in cset.elements(ob) {
            let root = uf.find(offset[ob] + elem - 1);
            let new_id = *root_to_new.entry(root).or_insert_with(|| {
                class_elem[ob].push(elem);
                class_elem[ob].len()
            });
            projection[ob][elem - 1] = new_id;
        }
    }

    let mut quotient = CSet::new(Arc::clone(&schema));
    for ob in 0..schema.object_count() {
        quotient.add_parts_by_id(ob, class_elem[ob].len());
    }
    for m in 0..schema.morphism_count() {
        let gen = schema.morphism(m);
        for (class_idx, &rep) in class_elem[gen.dom].iter().enumerate() {
            if let Some(t) = cset.subpart_by_id(m, rep) {
                quotient.set_subpart_by_id(m, class_idx + 1, projection[gen.cod][t - 1]);
            }
        }
    }
    // Congruence closure makes the induced subparts well defined; check it.
    debug_assert!({
        let mut consistent = true;
        for m in 0..schema.morphism_count() {
            let gen = schema.morphism(m);
            for elem in cset.elements(gen.dom) {
                if let Some(t) = cset.subpart_by_id(m, elem) {
                    let class = projection[gen.dom][elem - 1];
                    if quotient.subpart_by_id(m, class) != Some(projection[gen.cod][t - 1]) {
                        consistent = false;
                    }
                }
            }
        }
        consistent
    });
    (quotient, projection)
}

/// Pushout of the span `X <-f- Z -g-> Y`: the union of X and Y joined along
/// Z. The two injections commute with `f` and `g` by construction.
pub fn pushout(f: &CSetMorphism, g: &CSetMorphism) -> Result<PushoutResult, ColimitError> {
    if f.dom() != g.dom() {
        return Err(ColimitError::SpanMismatch);
    }
    f.check_naturality()?;
    g.check_naturality()?;
    let z = f.dom();
    let schema = z.schema();
    let co = coproduct(f.cod(), g.cod())?;
    let mut pairs = Vec::new();
    for ob in 0..schema.object_count() {
        for elem in z.elements(ob) {
            let in_x = co.left.apply(ob, f.apply(ob, elem));
            let in_y = co.right.apply(ob, g.apply(ob, elem));
            pairs.push((ob, in_x, in_y));
        }
    }
    let (apex, projection) = quotient_cset(&co.apex, &pairs);
    let project = CSetMorphism::new_unchecked(co.apex.clone(), apex.clone(), projection);
    let left = co.left.compose(&project)?;
    let right = co.right.compose(&project)?;
    Ok(PushoutResult { apex, left, right })
}

/// Checks a candidate pushout against one test cocone `(jx, jy)`: the square
/// must commute, and exactly one mediating morphism from the apex to the
/// cocone tip may exist. Mediators are found by exhaustive search seeded
/// with the commutation constraints.
pub fn verify_universal_property(
    f: &CSetMorphism,
    g: &CSetMorphism,
    candidate: &PushoutResult,
    cocone: (&CSetMorphism, &CSetMorphism),
) -> Result<bool, ColimitError> {
    let (jx, jy) = cocone;
    if f.dom() != g.dom() {
        return Err(ColimitError::SpanMismatch);
    }
    if candidate.left.dom() != f.cod() || candidate.right.dom() != g.cod() {
        return Err(ColimitError::CandidateMismatch);
    }
    if jx.dom() != f.cod() || jy.dom() != g.cod() || jx.cod() != jy.cod() {
        return Err(ColimitError::NonCommutingCocone);
    }
    if f.compose(jx)? != g.compose(jy)? {
        return Err(ColimitError::NonCommutingCocone);
    }

    let apex = &candidate.apex;
    let tip = jx.cod();
    let schema = apex.schema();
    // Seed the mediator: u(left(x)) = jx(x) and u(right(y)) = jy(y).
    let mut seed: Vec<Vec<Option<usize>>> = (0..schema.object_count())
        .map(|ob| vec![None; apex.part_count(ob)])
        .collect();
    for ob in 0..schema.object_count() {
        for elem in jx.dom().elements(ob) {
            let at = candidate.left.apply(ob, elem);
            let want = jx.apply(ob, elem);
            match seed[ob][at - 1] {
                Some(existing) if existing != want => return Ok(false),
                _ => seed[ob][at - 1] = Some(want),
            }
        }
        for elem in jy.dom().elements(ob) {
            let at = candidate.right.apply(ob, elem);
            let want = jy.apply(ob, elem);
            match seed[ob][at - 1] {
                Some(existing) if existing != want => return Ok(false),
                _ => seed[ob][at - 1] = Some(want),
            }
        }
    }
    let (mediators, _) = hom::find_seeded(
        apex,
        tip,
        Some(&seed),
        &HomOptions {
            monic: false,
            limit: Some(2),
        },
    )
    .map_err(|_| ColimitError::SchemaMismatch)?;
    Ok(mediators.len() == 1)
}

/// A glued pattern plus, per generator label, the components embedding that
/// label's representable into the result. Used to induce span legs between
/// gluings that share labels.
#[derive(Debug, Clone)]
pub(crate) struct GlueBuild {
    pub cset: CSet,
    /// label -> per-object element maps from the label's representable.
    pub embeddings: std::collections::BTreeMap<String, Vec<Vec<usize>>>,
}

/// A pattern built as a colimit of representables: one representable per
/// labeled generator, glued along the requested identifications. Elements
/// are addressed `label` (the apex of that generator's representable) or
/// `label.f.g` (walk generators from the apex).
pub fn glue(
    schema: &Arc<Schema>,
    generators: &[(String, String)],
    identify: &[(String, String)],
    bound: usize,
) -> Result<CSet, ColimitError> {
    glue_with_embeddings(schema, generators, identify, bound).map(|b| b.cset)
}

pub(crate) fn glue_with_embeddings(
    schema: &Arc<Schema>,
    generators: &[(String, String)],
    identify: &[(String, String)],
    bound: usize,
) -> Result<GlueBuild, ColimitError> {
    let mut labels: std::collections::BTreeMap<&str, usize> = Default::default();
    let mut union = CSet::new(Arc::clone(schema));
    // per generator: apex location and per-object shifts into the union
    let mut apexes: Vec<(usize, usize)> = Vec::new();
    let mut shifts: Vec<Vec<usize>> = Vec::new();
    let mut rep_sizes: Vec<Vec<usize>> = Vec::new();
    for (i, (label, object)) in generators.iter().enumerate() {
        if label.is_empty() || label.contains('.') {
            return Err(ColimitError::InvalidLabel(label.clone()));
        }
        if labels.insert(label, i).is_some() {
            return Err(ColimitError::DuplicateLabel(label.clone()));
        }
        let rep = representable(schema, object, bound)?;
        let shift: Vec<usize> = (0..schema.object_count())
            .map(|ob| union.part_count(ob))
            .collect();
        for ob in 0..schema.object_count() {
            union.add_parts_by_id(ob, rep.cset.part_count(ob));
        }
        for m in 0..schema.morphism_count() {
            let gen = schema.morphism(m);
            for elem in rep.cset.elements(gen.dom) {
                if let Some(t) = rep.cset.subpart_by_id(m, elem) {
                    union.set_subpart_by_id(m, shift[gen.dom] + elem, shift[gen.cod] + t);
                }
            }
        }
        apexes.push((rep.apex_object, shift[rep.apex_object] + rep.apex_elem));
        rep_sizes.push((0..schema.object_count()).map(|ob| rep.cset.part_count(ob)).collect());
        shifts.push(shift);
    }

    let resolve = |addr: &str| -> Result<(usize, usize), ColimitError> {
        let mut parts = addr.split('.');
        let label = parts.next().unwrap_or_default();
        let &gen_idx = labels
            .get(label)
            .ok_or_else(|| ColimitError::UnknownLabel(label.to_string()))?;
        let (mut ob, mut elem) = apexes[gen_idx];
        for step in parts {
            let m = schema
                .morphism_id(step)
                .ok_or_else(|| ColimitError::BadAddress {
                    addr: addr.to_string(),
                    step: step.to_string(),
                })?;
            if schema.morphism(m).dom != ob {
                return Err(ColimitError::BadAddress {
                    addr: addr.to_string(),
                    step: step.to_string(),
                });
            }
            elem = union
                .subpart_by_id(m, elem)
                .ok_or_else(|| ColimitError::BadAddress {
                    addr: addr.to_string(),
                    step: step.to_string(),
                })?;
            ob = schema.morphism(m).cod;
        }
        Ok((ob, elem))
    };

    let mut pairs = Vec::new();
    for (a, b) in identify {
        let (ob_a, elem_a) = resolve(a)?;
        let (ob_b, elem_b) = resolve(b)?;
        if ob_a != ob_b {
            return Err(ColimitError::IllTypedIdentification {
                left: a.clone(),
                right: b.clone(),
            });
        }
        pairs.push((ob_a, elem_a, elem_b));
    }
    let (glued, projection) = quotient_cset(&union, &pairs);
    debug_assert!(glued.validate().is_ok());

    let mut embeddings = std::collections::BTreeMap::new();
    for (i, (label, _)) in generators.iter().enumerate() {
        let components: Vec<Vec<usize>> = (0..schema.object_count())
            .map(|ob| {
                (1..=rep_sizes[i][ob])
                    .map(|elem| projection[ob][shifts[i][ob] + elem - 1])
                    .collect()
            })
            .collect();
        embeddings.insert(label.clone(), components);
    }
    Ok(GlueBuild {
        cset: glued,
        embeddings,
    })
}
