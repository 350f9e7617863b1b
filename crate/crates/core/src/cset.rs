//! C-set instances (world states) and natural transformations between them.
//!
//! Element IDs are dense, per-object, and 1-based: object `A` with `n` parts
//! has elements `1..=n`. Instances are value-like: mutation happens on a
//! privately owned copy; validated instances are immutable in practice and
//! safe to share across concurrent readers.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::hom;
use crate::schema::Schema;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CSetError {
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown morphism {0:?}")]
    UnknownMorphism(String),
    #[error("no element #{elem} of object {object:?}")]
    UnknownElement { object: String, elem: usize },
    #[error("instances live over different schemas")]
    SchemaMismatch,
    #[error("instance is not valid: {0}")]
    NotValidated(String),
    #[error("morphism components do not form a natural transformation: {0}")]
    NotNatural(String),
    #[error("component for object {object:?} has {got} entries, expected {expected}")]
    ComponentShape {
        object: String,
        got: usize,
        expected: usize,
    },
}

/// One functoriality violation found by [`CSet::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A generator is unset at an element (subparts must be total).
    MissingSubpart { morphism: String, elem: usize },
    /// A stored subpart value falls outside the codomain part-set.
    TargetOutOfRange {
        morphism: String,
        elem: usize,
        target: usize,
    },
    /// Walking the two sides of an equation from an element disagrees.
    EquationViolated { equation: String, elem: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingSubpart { morphism, elem } => {
                write!(f, "subpart {morphism:?} unset at element #{elem}")
            }
            Violation::TargetOutOfRange {
                morphism,
                elem,
                target,
            } => write!(
                f,
                "subpart {morphism:?} at element #{elem} points at missing element #{target}"
            ),
            Violation::EquationViolated { equation, elem } => {
                write!(f, "equation {equation} fails at element #{elem}")
            }
        }
    }
}

/// Outcome of validating an instance; empty means the instance is a genuine
/// C-set (total subparts, all equations hold elementwise).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", lines.join("; "))
    }
}

/// A finite instance of a schema: a set of elements per object and a map per
/// morphism generator. Maps may be partially set while the instance is under
/// construction; [`CSet::validate`] decides whether it is a genuine C-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CSet {
    schema: Arc<Schema>,
    parts: Vec<usize>,
    subparts: Vec<Vec<Option<usize>>>,
}

impl CSet {
    pub fn new(schema: Arc<Schema>) -> Self {
        let parts = vec![0; schema.object_count()];
        let subparts = vec![Vec::new(); schema.morphism_count()];
        CSet {
            schema,
            parts,
            subparts,
        }
    }

    pub fn schema(&self) -> &Arc<Schema> {
        &self.schema
    }

    pub fn same_schema(&self, other: &CSet) -> bool {
        Arc::ptr_eq(&self.schema, &other.schema) || self.schema == other.schema
    }

    /// Adds one element to `object` and returns its ID.
    pub fn add_part(&mut self, object: &str) -> Result<usize, CSetError> {
        let ob = self
            .schema
            .object_id(object)
            .ok_or_else(|| CSetError::UnknownObject(object.to_string()))?;
        Ok(self.add_part_by_id(ob))
    }

    pub fn add_part_by_id(&mut self, ob: usize) -> usize {
        self.parts[ob] += 1;
        for m in 0..self.schema.morphism_count() {
            if self.schema.morphism(m).dom == ob {
                self.subparts[m].push(None);
            }
        }
        self.parts[ob]
    }

    pub fn add_parts_by_id(&mut self, ob: usize, n: usize) {
        for _ in 0..n {
            self.add_part_by_id(ob);
        }
    }

    /// Records `morphism(src_elem) = tgt_elem`. Overwriting is allowed before
    /// validation; the last write wins.
    pub fn set_subpart(
        &mut self,
        morphism: &str,
        src_elem: usize,
        tgt_elem: usize,
    ) -> Result<(), CSetError> {
        let m = self
            .schema
            .morphism_id(morphism)
            .ok_or_else(|| CSetError::UnknownMorphism(morphism.to_string()))?;
        let gen = self.schema.morphism(m);
        if src_elem == 0 || src_elem > self.parts[gen.dom] {
            return Err(CSetError::UnknownElement {
                object: self.schema.object_name(gen.dom).to_string(),
                elem: src_elem,
            });
        }
        if tgt_elem == 0 || tgt_elem > self.parts[gen.cod] {
            return Err(CSetError::UnknownElement {
                object: self.schema.object_name(gen.cod).to_string(),
                elem: tgt_elem,
            });
        }
        self.subparts[m][src_elem - 1] = Some(tgt_elem);
        Ok(())
    }

    pub(crate) fn set_subpart_by_id(&mut self, morphism: usize, src_elem: usize, tgt_elem: usize) {
        self.subparts[morphism][src_elem - 1] = Some(tgt_elem);
    }

    pub fn part_count(&self, ob: usize) -> usize {
        self.parts[ob]
    }

    pub fn part_count_named(&self, object: &str) -> Result<usize, CSetError> {
        let ob = self
            .schema
            .object_id(object)
            .ok_or_else(|| CSetError::UnknownObject(object.to_string()))?;
        Ok(self.parts[ob])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total_elements(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Elements of one object, in ID order.
    pub fn elements(&self, ob: usize) -> impl Iterator<Item = usize> {
        1..=self.parts[ob]
    }

    pub fn subpart_by_id(&self, morphism: usize, elem: usize) -> Option<usize> {
        self.subparts[morphism][elem - 1]
    }

    pub fn subpart(&self, morphism: &str, elem: usize) -> Result<Option<usize>, CSetError> {
        let m = self
            .schema
            .morphism_id(morphism)
            .ok_or_else(|| CSetError::UnknownMorphism(morphism.to_string()))?;
        let gen = self.schema.morphism(m);
        if elem == 0 || elem > self.parts[gen.dom] {
            return Err(CSetError::UnknownElement {
                object: self.schema.object_name(gen.dom).to_string(),
                elem,
            });
        }
        Ok(self.subparts[m][elem - 1])
    }

    /// Walks a sequence of generator indices from an element; `None` if any
    /// step is unset.
    pub fn walk(&self, mut elem: usize, steps: &[usize]) -> Option<usize> {
        for &m in steps {
            elem = self.subparts[m][elem - 1]?;
        }
        Some(elem)
    }

    /// Walks a sequence of morphism names from an element of `object`.
    pub fn walk_named(
        &self,
        object: &str,
        elem: usize,
        names: &[&str],
    ) -> Result<Option<usize>, CSetError> {
        let mut at = self
            .schema
            .object_id(object)
            .ok_or_else(|| CSetError::UnknownObject(object.to_string()))?;
        let mut steps = Vec::with_capacity(names.len());
        for name in names {
            let m = self
                .schema
                .morphism_id(name)
                .ok_or_else(|| CSetError::UnknownMorphism(name.to_string()))?;
            if self.schema.morphism(m).dom != at {
                return Err(CSetError::NotNatural(format!(
                    "walk step {name:?} does not compose at {}",
                    self.schema.object_name(at)
                )));
            }
            at = self.schema.morphism(m).cod;
            steps.push(m);
        }
        if elem == 0 || elem > self.parts[self.schema.object_id(object).unwrap()] {
            return Err(CSetError::UnknownElement {
                object: object.to_string(),
                elem,
            });
        }
        Ok(self.walk(elem, &steps))
    }

    /// Checks totality and every declared equation elementwise.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for m in 0..self.schema.morphism_count() {
            let gen = self.schema.morphism(m);
            for elem in self.elements(gen.dom) {
                match self.subparts[m][elem - 1] {
                    None => violations.push(Violation::MissingSubpart {
                        morphism: gen.name.clone(),
                        elem,
                    }),
                    Some(t) if t == 0 || t > self.parts[gen.cod] => {
                        violations.push(Violation::TargetOutOfRange {
                            morphism: gen.name.clone(),
                            elem,
                            target: t,
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        for (i, eq) in self.schema.equations().iter().enumerate() {
            for elem in self.elements(eq.source) {
                let lhs = self.walk(elem, &eq.lhs);
                let rhs = self.walk(elem, &eq.rhs);
                if lhs != rhs {
                    violations.push(Violation::EquationViolated {
                        equation: self.schema.equation_display(i),
                        elem,
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Unrolls the instance into its category of elements: one triple per
    /// (generator, domain element) pair, sorted by subject object name, then
    /// subject element ID, then morphism name.
    pub fn category_of_elements(&self) -> Result<Vec<Triple>, CSetError> {
        let report = self.validate();
        if !report.is_ok() {
            return Err(CSetError::NotValidated(report.to_string()));
        }
        let mut triples = Vec::new();
        let mut object_order: Vec<usize> = (0..self.schema.object_count()).collect();
        object_order.sort_by(|&a, &b| self.schema.object_name(a).cmp(self.schema.object_name(b)));
        for &ob in &object_order {
            for elem in self.elements(ob) {
                let mut out: Vec<usize> = self.schema.generators_out(ob).collect();
                out.sort_by(|&a, &b| {
                    self.schema
                        .morphism(a)
                        .name
                        .cmp(&self.schema.morphism(b).name)
                });
                for m in out {
                    let gen = self.schema.morphism(m);
                    let target = self.subparts[m][elem - 1].expect("validated above");
                    triples.push(Triple {
                        subject: (self.schema.object_name(ob).to_string(), elem),
                        predicate: gen.name.clone(),
                        object: (self.schema.object_name(gen.cod).to_string(), target),
                    });
                }
            }
        }
        Ok(triples)
    }

    /// The triples as newline-separated text, one `<A#i> <f> <B#j>` per line.
    pub fn triples_text(&self) -> Result<String, CSetError> {
        let triples = self.category_of_elements()?;
        let mut out = String::new();
        for t in triples {
            out.push_str(&t.to_string());
            out.push('\n');
        }
        Ok(out)
    }
}

/// An RDF-style triple from the category of elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Triple {
    pub subject: (String, usize),
    pub predicate: String,
    pub object: (String, usize),
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{}#{}> <{}> <{}#{}>",
            self.subject.0, self.subject.1, self.predicate, self.object.0, self.object.1
        )
    }
}

/// A natural transformation between two instances of the same schema: one
/// total component map per object, commuting with every generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CSetMorphism {
    dom: CSet,
    cod: CSet,
    components: Vec<Vec<usize>>,
}

impl CSetMorphism {
    /// Builds and fully checks a morphism: shapes, ranges, and naturality.
    pub fn new(dom: CSet, cod: CSet, components: Vec<Vec<usize>>) -> Result<Self, CSetError> {
        if !dom.same_schema(&cod) {
            return Err(CSetError::SchemaMismatch);
        }
        let schema = Arc::clone(dom.schema());
        if components.len() != schema.object_count() {
            return Err(CSetError::ComponentShape {
                object: "<all>".to_string(),
                got: components.len(),
                expected: schema.object_count(),
            });
        }
        for ob in 0..schema.object_count() {
            if components[ob].len() != dom.part_count(ob) {
                return Err(CSetError::ComponentShape {
                    object: schema.object_name(ob).to_string(),
                    got: components[ob].len(),
                    expected: dom.part_count(ob),
                });
            }
            for &v in &components[ob] {
                if v == 0 || v > cod.part_count(ob) {
                    return Err(CSetError::UnknownElement {
                        object: schema.object_name(ob).to_string(),
                        elem: v,
                    });
                }
            }
        }
        let morphism = CSetMorphism {
            dom,
            cod,
            components,
        };
        morphism.check_naturality()?;
        Ok(morphism)
    }

    /// Internal constructor for maps already known to be natural (e.g. built
    /// by the homomorphism search).
    pub(crate) fn new_unchecked(dom: CSet, cod: CSet, components: Vec<Vec<usize>>) -> Self {
        let morphism = CSetMorphism {
            dom,
            cod,
            components,
        };
        debug_assert!(morphism.check_naturality().is_ok());
        morphism
    }

    pub fn identity(cset: &CSet) -> Self {
        let components = (0..cset.schema().object_count())
            .map(|ob| cset.elements(ob).collect())
            .collect();
        CSetMorphism {
            dom: cset.clone(),
            cod: cset.clone(),
            components,
        }
    }

    pub fn dom(&self) -> &CSet {
        &self.dom
    }

    pub fn cod(&self) -> &CSet {
        &self.cod
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component(&self, ob: usize) -> &[usize] {
        &self.components[ob]
    }

    /// Image of a domain element.
    pub fn apply(&self, ob: usize, elem: usize) -> usize {
        self.components[ob][elem - 1]
    }

    pub fn check_naturality(&self) -> Result<(), CSetError> {
        let schema = self.dom.schema();
        for m in 0..schema.morphism_count() {
            let gen = schema.morphism(m);
            for elem in self.dom.elements(gen.dom) {
                let via_dom = match self.dom.subpart_by_id(m, elem) {
                    Some(t) => self.apply(gen.cod, t),
                    None => {
                        return Err(CSetError::NotValidated(format!(
                            "domain subpart {:?} unset at #{elem}",
                            gen.name
                        )))
                    }
                };
                let via_cod = match self.cod.subpart_by_id(m, self.apply(gen.dom, elem)) {
                    Some(t) => t,
                    None => {
                        return Err(CSetError::NotValidated(format!(
                            "codomain subpart {:?} unset at #{}",
                            gen.name,
                            self.apply(gen.dom, elem)
                        )))
                    }
                };
                if via_dom != via_cod {
                    return Err(CSetError::NotNatural(format!(
                        "square for {:?} fails at {}#{elem}",
                        gen.name,
                        schema.object_name(gen.dom)
                    )));
                }
            }
        }
        Ok(())
    }

    /// True iff every component map is injective.
    pub fn is_mono(&self) -> bool {
        for ob in 0..self.dom.schema().object_count() {
            let mut seen = vec![false; self.cod.part_count(ob)];
            for &v in &self.components[ob] {
                if seen[v - 1] {
                    return false;
                }
                seen[v - 1] = true;
            }
        }
        true
    }

    /// Composes `self: A -> B` with `other: B -> C`.
    pub fn compose(&self, other: &CSetMorphism) -> Result<CSetMorphism, CSetError> {
        if self.cod != other.dom {
            return Err(CSetError::SchemaMismatch);
        }
        let components = (0..self.dom.schema().object_count())
            .map(|ob| {
                self.components[ob]
                    .iter()
                    .map(|&v| other.components[ob][v - 1])
                    .collect()
            })
            .collect();
        Ok(CSetMorphism {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            components,
        })
    }
}

/// An isomorphism-invariant hash of an instance, computed by iterated
/// neighborhood refinement over the subpart structure. Equal hashes do not
/// prove isomorphism; unequal hashes disprove it.
pub fn canonical_hash(cset: &CSet) -> u64 {
    let schema = cset.schema();
    let mut colors: Vec<Vec<u64>> = (0..schema.object_count())
        .map(|ob| vec![hash_one(&("ob", ob)); cset.part_count(ob)])
        .collect();
    let rounds = cset.total_elements().max(1).min(16);
    for _ in 0..rounds {
        let mut next: Vec<Vec<u64>> = Vec::with_capacity(colors.len());
        for ob in 0..schema.object_count() {
            let mut per_elem = Vec::with_capacity(cset.part_count(ob));
            for elem in cset.elements(ob) {
                let mut h = DefaultHasher::new();
                colors[ob][elem - 1].hash(&mut h);
                for m in schema.generators_out(ob) {
                    match cset.subpart_by_id(m, elem) {
                        Some(t) => colors[schema.morphism(m).cod][t - 1].hash(&mut h),
                        None => u64::MAX.hash(&mut h),
                    }
                }
                for m in schema.generators_into(ob) {
                    let dom = schema.morphism(m).dom;
                    let mut incoming: Vec<u64> = cset
                        .elements(dom)
                        .filter(|&x| cset.subpart_by_id(m, x) == Some(elem))
                        .map(|x| colors[dom][x - 1])
                        .collect();
                    incoming.sort_unstable();
                    incoming.hash(&mut h);
                }
                per_elem.push(h.finish());
            }
            next.push(per_elem);
        }
        colors = next;
    }
    let mut h = DefaultHasher::new();
    for (ob, mut per_elem) in colors.into_iter().enumerate() {
        per_elem.sort_unstable();
        (ob, per_elem).hash(&mut h);
    }
    h.finish()
}

fn hash_one<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

/// Searches for an isomorphism between two instances: a canonical-hash
/// filter first, then an exhaustive backtracking search for a bijective
/// natural map. A natural bijection's inverse is automatically natural, so
/// a monic map between equal-sized instances is an isomorphism.
pub fn isomorphic(x: &CSet, y: &CSet) -> Result<Option<CSetMorphism>, CSetError> {
    if !x.same_schema(y) {
        return Err(CSetError::SchemaMismatch);
    }
    if x.parts() != y.parts() {
        return Ok(None);
    }
    if canonical_hash(x) != canonical_hash(y) {
        return Ok(None);
    }
    let found = hom::find_homomorphisms(
        x,
        y,
        &hom::HomOptions {
            monic: true,
            limit: Some(1),
        },
    )
    .map_err(|_| CSetError::SchemaMismatch)?;
    Ok(found.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::{build_schema, EquationSpec};
    use crate::testutil::{graph, graph_schema};

    #[test]
    fn add_part_returns_dense_ids() {
        let schema = graph_schema();
        let mut g = CSet::new(Arc::clone(&schema));
        assert_eq!(g.add_part("V").unwrap(), 1);
        assert_eq!(g.add_part("V").unwrap(), 2);
        assert!(matches!(
            g.add_part("W").unwrap_err(),
            CSetError::UnknownObject(_)
        ));
    }

    #[test]
    fn set_subpart_checks_ranges_and_overwrites() {
        let schema = graph_schema();
        let mut g = CSet::new(Arc::clone(&schema));
        g.add_part("V").unwrap();
        g.add_part("V").unwrap();
        let e = g.add_part("E").unwrap();
        g.set_subpart("src", e, 1).unwrap();
        assert!(matches!(
            g.set_subpart("src", e, 3).unwrap_err(),
            CSetError::UnknownElement { elem: 3, .. }
        ));
        g.set_subpart("tgt", e, 1).unwrap();
        g.set_subpart("tgt", e, 2).unwrap(); // last write wins
        assert_eq!(g.subpart("tgt", e).unwrap(), Some(2));
        assert!(g.validate().is_ok());
    }

    #[test]
    fn validate_reports_partial_subpart() {
        let schema = graph_schema();
        let mut g = CSet::new(Arc::clone(&schema));
        g.add_part("V").unwrap();
        let e = g.add_part("E").unwrap();
        g.set_subpart("src", e, 1).unwrap();
        let report = g.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(
            report.violations[0],
            Violation::MissingSubpart { elem: 1, .. }
        ));
    }

    #[test]
    fn validate_walks_equations() {
        // Loop-graph schema: src = tgt forces every edge to be a self loop.
        let schema = Arc::new(
            build_schema(
                vec!["E".into(), "V".into()],
                vec![
                    ("src".into(), "E".into(), "V".into()),
                    ("tgt".into(), "E".into(), "V".into()),
                ],
                vec![EquationSpec {
                    at: "E".into(),
                    lhs: vec!["src".into()],
                    rhs: vec!["tgt".into()],
                }],
            )
            .unwrap(),
        );
        let mut g = CSet::new(Arc::clone(&schema));
        g.add_part("V").unwrap();
        g.add_part("V").unwrap();
        let e = g.add_part("E").unwrap();
        g.set_subpart("src", e, 1).unwrap();
        g.set_subpart("tgt", e, 2).unwrap();
        let report = g.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(
            report.violations[0],
            Violation::EquationViolated { elem: 1, .. }
        ));
        g.set_subpart("tgt", e, 1).unwrap();
        assert!(g.validate().is_ok());
    }

    #[test]
    fn category_of_elements_single_edge() {
        let schema = graph_schema();
        let g = graph(&schema, 2, &[(1, 2)]);
        let triples = g.category_of_elements().unwrap();
        assert_eq!(triples.len(), 2);
        assert_eq!(triples[0].to_string(), "<E#1> <src> <V#1>");
        assert_eq!(triples[1].to_string(), "<E#1> <tgt> <V#2>");
    }

    #[test]
    fn category_of_elements_empty_instance() {
        let schema = graph_schema();
        let g = CSet::new(Arc::clone(&schema));
        assert!(g.category_of_elements().unwrap().is_empty());
    }

    #[test]
    fn category_of_elements_rejects_invalid() {
        let schema = graph_schema();
        let mut g = CSet::new(Arc::clone(&schema));
        g.add_part("E").unwrap();
        assert!(matches!(
            g.category_of_elements().unwrap_err(),
            CSetError::NotValidated(_)
        ));
    }

    #[test]
    fn triples_are_lossless() {
        let schema = graph_schema();
        let g = graph(&schema, 3, &[(1, 2), (2, 3), (3, 1)]);
        let triples = g.category_of_elements().unwrap();
        let mut rebuilt = CSet::new(Arc::clone(&schema));
        for ob in 0..schema.object_count() {
            rebuilt.add_parts_by_id(ob, g.part_count(ob));
        }
        for t in &triples {
            rebuilt
                .set_subpart(&t.predicate, t.subject.1, t.object.1)
                .unwrap();
        }
        assert_eq!(rebuilt, g);
    }

    #[test]
    fn identity_is_mono() {
        let schema = graph_schema();
        let g = graph(&schema, 2, &[(1, 2)]);
        assert!(CSetMorphism::identity(&g).is_mono());
    }

    #[test]
    fn collapsing_map_is_not_mono() {
        let schema = graph_schema();
        let two = graph(&schema, 2, &[]);
        let one = graph(&schema, 1, &[]);
        let f = CSetMorphism::new(two, one, vec![vec![], vec![1, 1]]).unwrap();
        assert!(!f.is_mono());
    }

    #[test]
    fn edge_into_triangle_is_mono() {
        let schema = graph_schema();
        let edge = graph(&schema, 2, &[(1, 2)]);
        let triangle = graph(&schema, 3, &[(1, 2), (2, 3), (3, 1)]);
        let f = CSetMorphism::new(edge, triangle, vec![vec![1], vec![1, 2]]).unwrap();
        assert!(f.is_mono());
    }

    #[test]
    fn naturality_is_enforced() {
        let schema = graph_schema();
        let edge = graph(&schema, 2, &[(1, 2)]);
        let triangle = graph(&schema, 3, &[(1, 2), (2, 3), (3, 1)]);
        // edge #1 goes 1->2 in the triangle, so sending (v1,v2) to (1,3) breaks the square
        let err = CSetMorphism::new(edge, triangle, vec![vec![1], vec![1, 3]]).unwrap_err();
        assert!(matches!(err, CSetError::NotNatural(_)));
    }

    #[test]
    fn mono_matches_categorical_definition() {
        // f monic iff for all parallel g, h into dom(f): f.g = f.h implies
        // g = h. Brute-forced with probes into small graphs.
        let schema = graph_schema();
        let probe = graph(&schema, 1, &[]);
        let two = graph(&schema, 2, &[]);
        let one = graph(&schema, 1, &[]);
        let collapse = CSetMorphism::new(two.clone(), one, vec![vec![], vec![1, 1]]).unwrap();
        let embed = CSetMorphism::identity(&two);

        let probes = crate::hom::find_homomorphisms(
            &probe,
            &two,
            &crate::hom::HomOptions {
                monic: false,
                limit: None,
            },
        )
        .unwrap();
        assert_eq!(probes.len(), 2);
        let cancellable = |f: &CSetMorphism| {
            for g in &probes {
                for h in &probes {
                    let fg = g.compose(f).unwrap();
                    let fh = h.compose(f).unwrap();
                    if fg == fh && g != h {
                        return false;
                    }
                }
            }
            true
        };
        assert_eq!(collapse.is_mono(), cancellable(&collapse));
        assert_eq!(embed.is_mono(), cancellable(&embed));
        assert!(!collapse.is_mono());
        assert!(embed.is_mono());
    }

    #[test]
    fn isomorphic_to_itself() {
        let schema = graph_schema();
        let g = graph(&schema, 3, &[(1, 2), (2, 3)]);
        let iso = isomorphic(&g, &g).unwrap().unwrap();
        assert!(iso.is_mono());
    }

    #[test]
    fn isomorphic_up_to_renumbering() {
        let schema = graph_schema();
        let a = graph(&schema, 2, &[(1, 2)]);
        let b = graph(&schema, 2, &[(2, 1)]);
        assert!(isomorphic(&a, &b).unwrap().is_some());
    }

    #[test]
    fn two_cycle_vs_two_path_not_isomorphic() {
        let schema = graph_schema();
        let cycle = graph(&schema, 2, &[(1, 2), (2, 1)]);
        let path = graph(&schema, 3, &[(1, 2), (2, 3)]);
        // part counts differ, but also check the same-size pair
        assert!(isomorphic(&cycle, &path).unwrap().is_none());
        let path2 = graph(&schema, 2, &[(1, 2), (1, 2)]);
        assert!(isomorphic(&cycle, &path2).unwrap().is_none());
    }

    #[test]
    fn canonical_hash_is_permutation_invariant() {
        let schema = graph_schema();
        let a = graph(&schema, 3, &[(1, 2), (2, 3), (3, 1)]);
        let b = graph(&schema, 3, &[(2, 3), (3, 1), (1, 2)]);
        assert_eq!(canonical_hash(&a), canonical_hash(&b));
        let c = graph(&schema, 3, &[(1, 2), (2, 3), (3, 3)]);
        assert_ne!(canonical_hash(&a), canonical_hash(&c));
    }
}
