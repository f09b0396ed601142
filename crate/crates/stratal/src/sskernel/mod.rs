//! Finite simplicial sets in Eilenberg–Zilber normal form.
//!
//! A finite simplicial set is stored as its finite collection of *nondegenerate* cells,
//! with the `i`-th face of an `n`-cell recorded as a [`SimplexRef`]: a degeneracy word in
//! normal form (strictly decreasing admissible indices) applied to a nondegenerate cell.
//! The Eilenberg–Zilber lemma guarantees every simplex has exactly one such presentation,
//! so equality of simplices is equality of refs and the simplicial identities
//! `d_i d_j = d_{j-1} d_i` (`i < j`) become exhaustively checkable equations.
//!
//! The module provides the standard complexes (simplices, boundaries, horns, faces),
//! categorical products (via the shuffle description of nondegenerate cells of a
//! product), Joyal joins, pushouts (computed cellwise with degeneracy-aware
//! identification), opposites, and deterministic backtracking enumeration of all
//! simplicial maps between two finite complexes.

mod complex;
mod enumerate;
mod join;
mod json;
mod map;
mod product;
mod pushout;
mod standard;
mod word;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use complex::FiniteSimplicialSet;
pub use enumerate::{enumerate_isos, enumerate_maps, enumerate_maps_with};
pub use join::{join, join_map, join_pair_ref, Join, JoinPart};
pub use json::{complex_from_json, complex_to_json};
pub use map::{MonoInclusion, SimplicialMap};
pub use product::{pair_normalize, product, product_map, Product};
pub use pushout::{pushout, pushout_induced, Pushout};
pub use standard::{face_id, standard_complex, StandardKind};
pub use word::{DegeneracyWord, SimplexRef};

/// Identifier of a nondegenerate cell.  Ids are stable strings derived from construction
/// provenance (vertex tuples for standard complexes, tagged compounds for products, joins
/// and pushouts) so that fixtures and certificates stay portable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CellId(String);

impl CellId {
    pub fn new(id: impl Into<String>) -> Self {
        CellId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for CellId {
    fn from(s: &str) -> Self {
        CellId(s.to_owned())
    }
}

impl From<String> for CellId {
    fn from(s: String) -> Self {
        CellId(s)
    }
}

/// Errors raised by kernel operations.
#[derive(Debug, Error)]
pub enum KernelError {
    #[error("degeneracy word {0:?} is not in normal form (strictly decreasing, admissible)")]
    InvalidWord(Vec<usize>),
    #[error("unknown cell `{0}`")]
    UnknownCell(CellId),
    #[error("cell `{cell}` declared in dimension {dim} but has {faces} faces")]
    FaceCount { cell: CellId, dim: usize, faces: usize },
    #[error("face {index} of `{cell}` has dimension {found}, expected {expected}")]
    FaceDim { cell: CellId, index: usize, found: usize, expected: usize },
    #[error("simplicial identity d_{i} d_{j} = d_{j1} d_{i} fails at cell `{cell}`", j1 = .j - 1)]
    SimplicialIdentity { cell: CellId, i: usize, j: usize },
    #[error("face index {index} out of range for dimension {dim}")]
    FaceIndex { index: usize, dim: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("map does not commute with face d_{index} at cell `{cell}`")]
    NotSimplicial { cell: CellId, index: usize },
    #[error("partial assignment is inconsistent at cell `{0}`")]
    InconsistentPartial(CellId),
    #[error("complex is not vertex-named; cells cannot be addressed by vertex tuples")]
    NotVertexNamed,
    #[error("vertex tuple {0:?} does not name a simplex of the complex")]
    NoSuchTuple(Vec<String>),
    #[error("source/target mismatch: {0}")]
    Composition(String),
    #[error("JSON error: {0}")]
    Json(String),
}
