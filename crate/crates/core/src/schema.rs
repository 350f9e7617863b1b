//! Finitely presented schemas: object types, morphism generators, and path
//! equations, together with hom-set enumeration and representable instances.
//!
//! A schema presents a small category by generators and relations. Hom-sets
//! are computed by enumerating generator paths stratum by stratum and
//! quotienting by the congruence the declared equations generate. The
//! enumeration *saturates* once a whole length stratum contributes no new
//! equivalence class; schemas whose hom-sets keep growing past the bound
//! (e.g. a free loop) are rejected as outside the supported fragment.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::cset::CSet;
use crate::union_find::UnionFind;

/// Default path-length bound for hom-set enumeration. Every shipped fixture
/// saturates by length 4.
pub const DEFAULT_PATH_BOUND: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchemaError {
    #[error("duplicate {kind} name: {name:?}")]
    DuplicateName { kind: &'static str, name: String },
    #[error("empty {kind} name")]
    EmptyName { kind: &'static str },
    #[error("unknown object {name:?} referenced by {context}")]
    UnknownObject { name: String, context: String },
    #[error("unknown morphism {name:?} referenced by {context}")]
    UnknownMorphism { name: String, context: String },
    #[error("path not composable at step {step} in {context}")]
    NotComposable { step: usize, context: String },
    #[error("equation {index} is not parallel: {lhs} vs {rhs}")]
    NonParallelEquation {
        index: usize,
        lhs: String,
        rhs: String,
    },
    #[error(
        "hom-set enumeration out of {object:?} did not saturate within path length {bound}; \
         the schema may have an infinite hom-set"
    )]
    NonSaturating { object: String, bound: usize },
}

/// A morphism generator `name: dom -> cod`, with object indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismGen {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A path equation between two parallel generator paths out of `source`.
/// A side may be empty, denoting the identity at `source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub source: usize,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

/// Input form of an equation, by names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSpec {
    pub at: String,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

/// A finitely presented schema. Immutable after construction; share via
/// `Arc` across instances and concurrent readers.
#[derive(Debug, PartialEq, Eq)]
pub struct Schema {
    objects: Vec<String>,
    morphisms: Vec<MorphismGen>,
    equations: Vec<Equation>,
    object_index: BTreeMap<String, usize>,
    morphism_index: BTreeMap<String, usize>,
}

/// A composable sequence of morphism generators out of `source`. The empty
/// sequence is the identity path at `source`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub source: usize,
    pub steps: Vec<usize>,
}

impl Path {
    pub fn identity(source: usize) -> Self {
        Path {
            source,
            steps: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn target(&self, schema: &Schema) -> usize {
        match self.steps.last() {
            Some(&m) => schema.morphisms[m].cod,
            None => self.source,
        }
    }

    /// Extends the path by one generator (caller ensures composability).
    fn extended(&self, morphism: usize) -> Path {
        let mut steps = self.steps.clone();
        steps.push(morphism);
        Path {
            source: self.source,
            steps,
        }
    }

    pub fn display(&self, schema: &Schema) -> String {
        if self.steps.is_empty() {
            format!("id@{}", schema.objects[self.source])
        } else {
            self.steps
                .iter()
                .map(|&m| schema.morphisms[m].name.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

/// One equivalence class of parallel paths, with the canonical (shortest,
/// then lexicographically least) member first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathClass {
    pub canonical: Path,
    pub members: Vec<Path>,
}

/// Builds and validates a schema from names.
///
/// `morphisms` entries are `(name, dom, cod)`. Fails on duplicate or empty
/// names, unknown object references, non-composable equation paths, and
/// non-parallel equations.
pub fn build_schema(
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    equations: Vec<EquationSpec>,
) -> Result<Schema, SchemaError> {
    let mut object_index = BTreeMap::new();
    for name in &objects {
        if name.is_empty() {
            return Err(SchemaError::EmptyName { kind: "object" });
        }
        if object_index.insert(name.clone(), object_index.len()).is_some() {
            return Err(SchemaError::DuplicateName {
                kind: "object",
                name: name.clone(),
            });
        }
    }

    let mut morphism_index = BTreeMap::new();
    let mut gens = Vec::new();
    for (name, dom, cod) in &morphisms {
        if name.is_empty() {
            return Err(SchemaError::EmptyName { kind: "morphism" });
        }
        let dom = *object_index
            .get(dom)
            .ok_or_else(|| SchemaError::UnknownObject {
                name: dom.clone(),
                context: format!("morphism {name:?}"),
            })?;
        let cod = *object_index
            .get(cod)
            .ok_or_else(|| SchemaError::UnknownObject {
                name: cod.clone(),
                context: format!("morphism {name:?}"),
            })?;
        if morphism_index
            .insert(name.clone(), morphism_index.len())
            .is_some()
        {
            return Err(SchemaError::DuplicateName {
                kind: "morphism",
                name: name.clone(),
            });
        }
        gens.push(MorphismGen {
            name: name.clone(),
            dom,
            cod,
        });
    }

    let schema = Schema {
        objects,
        morphisms: gens,
        equations: Vec::new(),
        object_index,
        morphism_index,
    };

    let mut resolved = Vec::new();
    for (index, eq) in equations.iter().enumerate() {
        let source = schema.object_id(&eq.at).ok_or_else(|| SchemaError::UnknownObject {
            name: eq.at.clone(),
            context: format!("equation {index}"),
        })?;
        let context = format!("equation {index}");
        let lhs = schema.resolve_path(source, &eq.lhs, &context)?;
        let rhs = schema.resolve_path(source, &eq.rhs, &context)?;
        let lhs_path = Path {
            source,
            steps: lhs,
        };
        let rhs_path = Path {
            source,
            steps: rhs,
        };
        if lhs_path.target(&schema) != rhs_path.target(&schema) {
            return Err(SchemaError::NonParallelEquation {
                index,
                lhs: lhs_path.display(&schema),
                rhs: rhs_path.display(&schema),
            });
        }
        resolved.push(Equation {
            source,
            lhs: lhs_path.steps,
            rhs: rhs_path.steps,
        });
    }

    let mut schema = schema;
    schema.equations = resolved;
    Ok(schema)
}

impl Schema {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, ob: usize) -> &str {
        &self.objects[ob]
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, m: usize) -> &MorphismGen {
        &self.morphisms[m]
    }

    pub fn morphisms(&self) -> &[MorphismGen] {
        &self.morphisms
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn object_id(&self, name: &str) -> Option<usize> {
        self.object_index.get(name).copied()
    }

    pub fn morphism_id(&self, name: &str) -> Option<usize> {
        self.morphism_index.get(name).copied()
    }

    /// Generators with the given domain object.
    pub fn generators_out(&self, ob: usize) -> impl Iterator<Item = usize> + '_ {
        self.morphisms
            .iter()
            .enumerate()
            .filter(move |(_, g)| g.dom == ob)
            .map(|(i, _)| i)
    }

    /// Generators with the given codomain object.
    pub fn generators_into(&self, ob: usize) -> impl Iterator<Item = usize> + '_ {
        self.morphisms
            .iter()
            .enumerate()
            .filter(move |(_, g)| g.cod == ob)
            .map(|(i, _)| i)
    }

    pub fn equation_display(&self, index: usize) -> String {
        let eq = &self.equations[index];
        let lhs = Path {
            source: eq.source,
            steps: eq.lhs.clone(),
        };
        let rhs = Path {
            source: eq.source,
            steps: eq.rhs.clone(),
        };
        format!("{} = {}", lhs.display(self), rhs.display(self))
    }

    /// Resolves a sequence of morphism names into indices, checking
    /// composability from `source`.
    fn resolve_path(
        &self,
        source: usize,
        names: &[String],
        context: &str,
    ) -> Result<Vec<usize>, SchemaError> {
        let mut steps = Vec::with_capacity(names.len());
        let mut at = source;
        for (step, name) in names.iter().enumerate() {
            let m = self
                .morphism_id(name)
                .ok_or_else(|| SchemaError::UnknownMorphism {
                    name: name.clone(),
                    context: context.to_string(),
                })?;
            if self.morphisms[m].dom != at {
                return Err(SchemaError::NotComposable {
                    step,
                    context: context.to_string(),
                });
            }
            at = self.morphisms[m].cod;
            steps.push(m);
        }
        Ok(steps)
    }
}

/// All generator paths out of one source object, quotiented by the equation
/// congruence, enumerated up to a length bound.
#[derive(Debug)]
pub(crate) struct PathEnumeration {
    pub paths: Vec<Path>,
    index: BTreeMap<Path, usize>,
    classes: UnionFind,
    /// Shortest member length per class root.
    min_len: Vec<usize>,
}

impl PathEnumeration {
    pub fn class_of(&mut self, path: &Path) -> Option<usize> {
        let id = *self.index.get(path)?;
        Some(self.classes.find(id))
    }
}

/// Enumerates paths out of `source` stratum by stratum, unioning paths that
/// an equation rewrites into one another. Saturation: the first stratum that
/// creates no new equivalence class ends the enumeration (an empty stratum
/// trivially qualifies). If no stratum up to `bound` qualifies, the hom-sets
/// out of `source` may be infinite and an error is returned.
pub(crate) fn enumerate_paths(
    schema: &Schema,
    source: usize,
    bound: usize,
) -> Result<PathEnumeration, SchemaError> {
    let mut en = PathEnumeration {
        paths: Vec::new(),
        index: BTreeMap::new(),
        classes: UnionFind::new(),
        min_len: Vec::new(),
    };

    let mut add_path = |en: &mut PathEnumeration, path: Path| -> usize {
        let id = en.classes.push();
        en.min_len.push(path.len());
        en.index.insert(path.clone(), id);
        en.paths.push(path);
        id
    };

    add_path(&mut en, Path::identity(source));
    apply_equations(schema, &mut en, 0);

    let mut stratum_start = 0;
    for len in 1..=bound.max(1) {
        let stratum_end = en.paths.len();
        if stratum_start == stratum_end && len > 1 {
            // previous stratum was empty; nothing left to extend
            return Ok(en);
        }
        for i in stratum_start..stratum_end {
            let path = en.paths[i].clone();
            if path.len() != len - 1 {
                continue;
            }
            let at = path.target(schema);
            for g in schema.generators_out(at) {
                let next = path.extended(g);
                if !en.index.contains_key(&next) {
                    let id = add_path(&mut en, next);
                    apply_equations(schema, &mut en, id);
                }
            }
        }
        stratum_start = stratum_end;

        // Saturation check: does any path of this length sit in a class with
        // no strictly shorter member? Evaluate after the whole stratum so
        // same-stratum unions are taken into account.
        let mut new_class = false;
        for i in stratum_end..en.paths.len() {
            let root = en.classes.find(i);
            if en.min_len[root] >= len {
                new_class = true;
                break;
            }
        }
        if !new_class {
            return Ok(en);
        }
        if len == bound {
            return Err(SchemaError::NonSaturating {
                object: schema.objects[source].to_string(),
                bound,
            });
        }
    }
    Ok(en)
}

/// Unions `path` (by index) with every enumerated path an equation rewrite
/// produces from it, in both directions. Rewrites whose result is not (yet)
/// enumerated are picked up when that path is added later.
fn apply_equations(schema: &Schema, en: &mut PathEnumeration, path_id: usize) {
    let path = en.paths[path_id].clone();
    for eq in &schema.equations {
        for (from, to) in [(&eq.lhs, &eq.rhs), (&eq.rhs, &eq.lhs)] {
            for pos in occurrences(schema, &path, eq.source, from) {
                let mut steps = Vec::with_capacity(path.steps.len() - from.len() + to.len());
                steps.extend_from_slice(&path.steps[..pos]);
                steps.extend_from_slice(to);
                steps.extend_from_slice(&path.steps[pos + from.len()..]);
                let rewritten = Path {
                    source: path.source,
                    steps,
                };
                if let Some(&other) = en.index.get(&rewritten) {
                    let (root, merged) = en.classes.union(path_id, other);
                    if merged {
                        let a = en.min_len[en.classes.find(path_id)];
                        let b = en.min_len[other];
                        en.min_len[root] = a.min(b).min(en.min_len[root]);
                    }
                }
            }
        }
    }
}

/// Positions at which `side` occurs as a contiguous subpath of `path`.
/// Morphism names are unique, so matching indices suffices; an empty side
/// (identity) matches wherever the path passes through `side_source`.
fn occurrences(schema: &Schema, path: &Path, side_source: usize, side: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    if side.is_empty() {
        let mut at = path.source;
        for pos in 0..=path.steps.len() {
            if at == side_source {
                out.push(pos);
            }
            if pos < path.steps.len() {
                at = schema.morphisms[path.steps[pos]].cod;
            }
        }
        return out;
    }
    if path.steps.len() < side.len() {
        return out;
    }
    for pos in 0..=(path.steps.len() - side.len()) {
        if path.steps[pos..pos + side.len()] == *side {
            out.push(pos);
        }
    }
    out
}

/// Computes the hom-set from `from` to `to` as equivalence classes of paths,
/// enumerated up to `bound`.
pub fn hom_set(
    schema: &Schema,
    from: &str,
    to: &str,
    bound: usize,
) -> Result<Vec<PathClass>, SchemaError> {
    let source = schema.object_id(from).ok_or_else(|| SchemaError::UnknownObject {
        name: from.to_string(),
        context: "hom_set".to_string(),
    })?;
    let target = schema.object_id(to).ok_or_else(|| SchemaError::UnknownObject {
        name: to.to_string(),
        context: "hom_set".to_string(),
    })?;
    let mut en = enumerate_paths(schema, source, bound)?;

    let mut by_root: BTreeMap<usize, Vec<Path>> = BTreeMap::new();
    for i in 0..en.paths.len() {
        let path = en.paths[i].clone();
        if path.target(schema) != target {
            continue;
        }
        let root = en.classes.find(i);
        by_root.entry(root).or_default().push(path);
    }

    let mut classes: Vec<PathClass> = by_root
        .into_values()
        .map(|mut members| {
            members.sort_by(path_key);
            PathClass {
                canonical: members[0].clone(),
                members,
            }
        })
        .collect();
    classes.sort_by(|a, b| path_key(&a.canonical, &b.canonical));
    Ok(classes)
}

fn path_key(a: &Path, b: &Path) -> std::cmp::Ordering {
    (a.len(), &a.steps).cmp(&(b.len(), &b.steps))
}

/// A representable instance `C(A, -)` together with its apex element (the
/// identity class, always element 1 at the apex object).
#[derive(Debug, Clone)]
pub struct Representable {
    pub cset: CSet,
    pub apex_object: usize,
    pub apex_elem: usize,
}

/// Builds the representable C-set of all morphisms out of `from`: the
/// part-set at each object is the hom-set from `from` to it, and each
/// generator acts by post-composition. This is the free pattern generated by
/// one `from`-element, carrying all implicit substructure.
pub fn representable(
    schema: &Arc<Schema>,
    from: &str,
    bound: usize,
) -> Result<Representable, SchemaError> {
    let source = schema.object_id(from).ok_or_else(|| SchemaError::UnknownObject {
        name: from.to_string(),
        context: "representable".to_string(),
    })?;
    let mut en = enumerate_paths(schema, source, bound)?;

    // Canonical member per class, grouped by target object.
    let mut class_canon: BTreeMap<usize, Path> = BTreeMap::new();
    for i in 0..en.paths.len() {
        let path = en.paths[i].clone();
        let root = en.classes.find(i);
        match class_canon.get(&root) {
            Some(existing) if path_key(existing, &path).is_le() => {}
            _ => {
                class_canon.insert(root, path);
            }
        }
    }

    let mut per_object: Vec<Vec<(Path, usize)>> = vec![Vec::new(); schema.object_count()];
    for (&root, canon) in &class_canon {
        per_object[canon.target(schema)].push((canon.clone(), root));
    }
    // Element IDs follow canonical-path order; the identity class sorts
    // first, so the apex is always element 1 at `source`.
    let mut elem_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    for entries in &mut per_object {
        entries.sort_by(|a, b| path_key(&a.0, &b.0));
        for (idx, (_, root)) in entries.iter().enumerate() {
            elem_of_root.insert(*root, idx + 1);
        }
    }

    let mut cset = CSet::new(Arc::clone(schema));
    for (ob, entries) in per_object.iter().enumerate() {
        cset.add_parts_by_id(ob, entries.len());
    }
    for entries in per_object.iter() {
        for (canon, _) in entries {
            let at = canon.target(schema);
            let src_elem = elem_of_root[&en.class_of(canon).expect("canonical path enumerated")];
            for g in schema.generators_out(at) {
                let extended = canon.extended(g);
                let root = en
                    .class_of(&extended)
                    .expect("post-composition stays within the saturated enumeration");
                cset.set_subpart_by_id(g, src_elem, elem_of_root[&root]);
            }
        }
    }

    debug_assert!(cset.validate().is_ok());
    Ok(Representable {
        cset,
        apex_object: source,
        apex_elem: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn graph_schema() -> Schema {
        build_schema(
            vec!["E".into(), "V".into()],
            vec![
                ("src".into(), "E".into(), "V".into()),
                ("tgt".into(), "E".into(), "V".into()),
            ],
            vec![],
        )
        .unwrap()
    }

    fn breadloaf_schema() -> Schema {
        build_schema(
            vec![
                "BreadLoaf".into(),
                "BreadSlice".into(),
                "Countertop".into(),
                "KitchenTable".into(),
                "Object".into(),
            ],
            vec![
                ("is part of".into(), "BreadSlice".into(), "BreadLoaf".into()),
                ("is a".into(), "BreadLoaf".into(), "Object".into()),
                ("counter is a".into(), "Countertop".into(), "Object".into()),
                ("table is a".into(), "KitchenTable".into(), "Object".into()),
                ("on".into(), "Object".into(), "Object".into()),
            ],
            vec![EquationSpec {
                at: "Object".into(),
                lhs: vec!["on".into(), "on".into()],
                rhs: vec!["on".into()],
            }],
        )
        .unwrap()
    }

    /// Independent oracle: free paths from `from` to `to` of length <= bound
    /// by breadth-first extension, no equation quotient.
    fn brute_force_paths(schema: &Schema, from: &str, to: &str, bound: usize) -> Vec<Vec<String>> {
        let source = schema.object_id(from).unwrap();
        let target = schema.object_id(to).unwrap();
        let mut frontier = vec![(source, Vec::<usize>::new())];
        let mut found = Vec::new();
        for _ in 0..=bound {
            let mut next = Vec::new();
            for (at, steps) in &frontier {
                if *at == target {
                    found.push(
                        steps
                            .iter()
                            .map(|&m| schema.morphisms[m].name.clone())
                            .collect(),
                    );
                }
                for g in schema.generators_out(*at) {
                    let mut s = steps.clone();
                    s.push(g);
                    next.push((schema.morphisms[g].cod, s));
                }
            }
            frontier = next;
        }
        found
    }

    #[test]
    fn builds_graph_schema() {
        let s = graph_schema();
        assert_eq!(s.object_count(), 2);
        assert_eq!(s.morphism_count(), 2);
    }

    #[test]
    fn builds_discrete_schema() {
        let s = build_schema(vec!["X".into()], vec![], vec![]).unwrap();
        assert_eq!(s.object_count(), 1);
        assert_eq!(s.morphism_count(), 0);
    }

    #[test]
    fn rejects_unknown_codomain() {
        let err = build_schema(
            vec!["A".into()],
            vec![("f".into(), "A".into(), "B".into())],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, SchemaError::UnknownObject { .. }));
    }

    #[test]
    fn rejects_duplicate_names() {
        let err = build_schema(vec!["A".into(), "A".into()], vec![], vec![]).unwrap_err();
        assert!(matches!(err, SchemaError::DuplicateName { .. }));
    }

    #[test]
    fn rejects_non_parallel_equation() {
        let err = build_schema(
            vec!["E".into(), "V".into()],
            vec![("src".into(), "E".into(), "V".into())],
            vec![EquationSpec {
                at: "E".into(),
                lhs: vec!["src".into()],
                rhs: vec![],
            }],
        )
        .unwrap_err();
        assert!(matches!(err, SchemaError::NonParallelEquation { .. }));
    }

    #[test]
    fn rejects_non_composable_equation_path() {
        let err = build_schema(
            vec!["E".into(), "V".into()],
            vec![("src".into(), "E".into(), "V".into())],
            vec![EquationSpec {
                at: "E".into(),
                lhs: vec!["src".into(), "src".into()],
                rhs: vec!["src".into(), "src".into()],
            }],
        )
        .unwrap_err();
        assert!(matches!(err, SchemaError::NotComposable { step: 1, .. }));
    }

    #[test]
    fn hom_set_vertex_to_vertex_is_identity_only() {
        let s = graph_schema();
        let classes = hom_set(&s, "V", "V", 4).unwrap();
        assert_eq!(classes.len(), 1);
        assert!(classes[0].canonical.is_identity());
    }

    #[test]
    fn hom_set_edge_to_vertex_matches_brute_force() {
        let s = graph_schema();
        // Oracle first: free path enumeration gives exactly {src, tgt}; the
        // free graph schema has no equations so classes are singletons.
        let oracle = brute_force_paths(&s, "E", "V", 4);
        assert_eq!(oracle.len(), 2);
        let classes = hom_set(&s, "E", "V", 4).unwrap();
        let names: Vec<String> = classes.iter().map(|c| c.canonical.display(&s)).collect();
        assert_eq!(names, vec!["src", "tgt"]);
    }

    #[test]
    fn free_loop_fails_to_saturate() {
        let s = build_schema(
            vec!["A".into()],
            vec![("f".into(), "A".into(), "A".into())],
            vec![],
        )
        .unwrap();
        let err = hom_set(&s, "A", "A", 6).unwrap_err();
        assert!(matches!(err, SchemaError::NonSaturating { bound: 6, .. }));
    }

    #[test]
    fn idempotent_loop_saturates() {
        let s = build_schema(
            vec!["A".into()],
            vec![("f".into(), "A".into(), "A".into())],
            vec![EquationSpec {
                at: "A".into(),
                lhs: vec!["f".into(), "f".into()],
                rhs: vec!["f".into()],
            }],
        )
        .unwrap();
        let classes = hom_set(&s, "A", "A", 8).unwrap();
        assert_eq!(classes.len(), 2); // id and f
    }

    #[test]
    fn involution_collapses_to_two_classes() {
        // f . f = id
        let s = build_schema(
            vec!["A".into()],
            vec![("f".into(), "A".into(), "A".into())],
            vec![EquationSpec {
                at: "A".into(),
                lhs: vec!["f".into(), "f".into()],
                rhs: vec![],
            }],
        )
        .unwrap();
        let classes = hom_set(&s, "A", "A", 8).unwrap();
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn breadloaf_homs_saturate_by_length_four() {
        let s = breadloaf_schema();
        let classes = hom_set(&s, "BreadSlice", "Object", DEFAULT_PATH_BOUND).unwrap();
        let names: Vec<String> = classes.iter().map(|c| c.canonical.display(&s)).collect();
        assert_eq!(names, vec!["is part of.is a", "is part of.is a.on"]);
    }

    #[test]
    fn class_count_stable_above_saturation_bound() {
        let s = breadloaf_schema();
        let base = hom_set(&s, "BreadSlice", "Object", 4).unwrap().len();
        for bound in 5..=10 {
            assert_eq!(hom_set(&s, "BreadSlice", "Object", bound).unwrap().len(), base);
        }
    }

    #[test]
    fn whiskering_preserves_equivalence() {
        // If lhs = rhs then r.lhs.s and r.rhs.s land in the same class for
        // every composable prefix r and suffix s.
        let s = breadloaf_schema();
        let classes = hom_set(&s, "BreadSlice", "Object", 8).unwrap();
        let find_class = |steps: &[&str]| {
            classes.iter().position(|c| {
                c.members
                    .iter()
                    .any(|p| p.display(&s) == steps.join("."))
            })
        };
        for suffix_len in 0..3 {
            let mut lhs = vec!["is part of", "is a", "on", "on"];
            let mut rhs = vec!["is part of", "is a", "on"];
            for _ in 0..suffix_len {
                lhs.push("on");
                rhs.push("on");
            }
            let a = find_class(&lhs);
            let b = find_class(&rhs);
            assert!(a.is_some(), "whiskered path enumerated: {lhs:?}");
            assert_eq!(a, b, "whiskered paths must stay equivalent");
        }
    }

    #[test]
    fn representable_vertex_is_single_vertex() {
        let s = Arc::new(graph_schema());
        let rep = representable(&s, "V", 4).unwrap();
        assert_eq!(rep.cset.part_count_named("V").unwrap(), 1);
        assert_eq!(rep.cset.part_count_named("E").unwrap(), 0);
        assert_eq!(rep.apex_elem, 1);
    }

    #[test]
    fn representable_edge_is_walking_edge() {
        let s = Arc::new(graph_schema());
        // Oracle: paths out of E are {id}, {src}, {tgt}; post-composition of
        // id by src/tgt hits the two distinct vertex classes.
        assert_eq!(brute_force_paths(&s, "E", "V", 4).len(), 2);
        let rep = representable(&s, "E", 4).unwrap();
        assert_eq!(rep.cset.part_count_named("E").unwrap(), 1);
        assert_eq!(rep.cset.part_count_named("V").unwrap(), 2);
        let src = s.morphism_id("src").unwrap();
        let tgt = s.morphism_id("tgt").unwrap();
        let sv = rep.cset.subpart_by_id(src, 1).unwrap();
        let tv = rep.cset.subpart_by_id(tgt, 1).unwrap();
        assert_ne!(sv, tv);
        assert!(rep.cset.validate().is_ok());
    }

    #[test]
    fn representable_discrete_object() {
        let s = Arc::new(build_schema(vec!["X".into()], vec![], vec![]).unwrap());
        let rep = representable(&s, "X", 4).unwrap();
        assert_eq!(rep.cset.part_count_named("X").unwrap(), 1);
    }

    #[test]
    fn representable_breadloaf_slice_carries_chain() {
        let s = Arc::new(breadloaf_schema());
        let rep = representable(&s, "BreadSlice", 8).unwrap();
        assert_eq!(rep.cset.part_count_named("BreadSlice").unwrap(), 1);
        assert_eq!(rep.cset.part_count_named("BreadLoaf").unwrap(), 1);
        assert_eq!(rep.cset.part_count_named("Object").unwrap(), 2);
        assert_eq!(rep.cset.part_count_named("Countertop").unwrap(), 0);
        assert!(rep.cset.validate().is_ok());
    }
}
