//! Finite Krasner hyperfields as Cayley tables: axiom verification,
//! isomorph-free enumeration, quotient and skew constructions, and
//! structural classification.
//!
//! The carrier is `{0} ∪ H*` with 0 the additive neutral and absorbing
//! element; addition is a hypercomposition (set-valued), multiplication a
//! group (hyperfield/skew modes) or semigroup (hyperring mode) on `H*`.
//! Orders up to 16 are supported so an element set fits in one word.

pub mod catalog;
pub mod classify;
pub mod construct;
pub mod enumerate;
pub mod eset;
pub mod field;
pub mod fixtures;
pub mod group;
pub mod hyperfield;
pub mod iso;
pub mod report;

pub use catalog::{parse_table, render_table, CatalogError};
pub use eset::{ESet, Elem, MAX_ORDER};
pub use group::{GroupError, GroupTable};
pub use hyperfield::{
    check_derived_laws, verify, Axiom, Failure, Hyperfield, HyperStruct, Mode, VerificationReport,
};
pub use iso::{are_isomorphic, canonical_key, match_catalog, mult_automorphisms, CanonKey, Relabeling};
