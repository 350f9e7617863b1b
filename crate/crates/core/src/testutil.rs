//! Shared fixtures for unit tests.

use std::sync::Arc;

use crate::cset::{CSet, CSetMorphism};
use crate::rewrite::Rule;
use crate::schema::{build_schema, Schema};

pub(crate) fn graph_schema() -> Arc<Schema> {
    Arc::new(
        build_schema(
            vec!["E".into(), "V".into()],
            vec![
                ("src".into(), "E".into(), "V".into()),
                ("tgt".into(), "E".into(), "V".into()),
            ],
            vec![],
        )
        .unwrap(),
    )
}

/// A directed multigraph over the graph schema, edges as (src, tgt) pairs.
pub(crate) fn graph(schema: &Arc<Schema>, vertices: usize, edges: &[(usize, usize)]) -> CSet {
    let mut g = CSet::new(Arc::clone(schema));
    for _ in 0..vertices {
        g.add_part("V").unwrap();
    }
    for &(s, t) in edges {
        let e = g.add_part("E").unwrap();
        g.set_subpart("src", e, s).unwrap();
        g.set_subpart("tgt", e, t).unwrap();
    }
    g
}

/// I = one vertex, K = O = empty: deletes an isolated vertex.
pub(crate) fn vertex_deletion_rule(schema: &Arc<Schema>) -> Rule {
    let vertex = graph(schema, 1, &[]);
    let empty = graph(schema, 0, &[]);
    let l = CSetMorphism::new(empty.clone(), vertex, vec![vec![], vec![]]).unwrap();
    let r = CSetMorphism::new(empty.clone(), empty.clone(), vec![vec![], vec![]]).unwrap();
    Rule::new(l, r).unwrap()
}
