//! World states as C-sets, actions as double-pushout rewrite rules.
//!
//! A *schema* is a finitely presented category: named object types, morphism
//! generators (total functional relationships), and path equations. A *C-set*
//! instantiates a schema with a finite set of elements per object and a total
//! map per generator; it plays the role of a planning world state. Action
//! rules are spans `I <- K -> O` of C-sets and execute by double-pushout
//! rewriting: a match is a monomorphism `I -> X`, deletion is a pushout
//! complement (guarded by the identification and dangling conditions), and
//! the new state is the completion pushout.
//!
//! The crate also carries a classical STRIPS-style baseline (literal-set
//! states, subset applicability, add/delete effects) so the two pipelines can
//! be run side by side on the same domain, plus a JSON container format and a
//! CLI that ties everything together.

pub mod classical;
pub mod colimit;
pub mod cset;
pub mod format;
pub mod hom;
pub mod planner;
pub mod rewrite;
pub mod schema;

mod union_find;

#[cfg(test)]
pub(crate) mod testutil;

pub use colimit::{glue, coproduct, pushout, verify_universal_property, PushoutResult};
pub use cset::{canonical_hash, isomorphic, CSet, CSetError, CSetMorphism, Triple};
pub use hom::{exists_mono, find_homomorphisms, HomError, HomOptions, SearchStats};
pub use planner::{Plan, PlanOutcome, PlanStep, PlanningProblem};
pub use rewrite::{apply_rule, check_gluing, pushout_complement, rewrite_all, Rule, RewriteOutcome};
pub use schema::{build_schema, Path, Schema, SchemaError, DEFAULT_PATH_BOUND};
