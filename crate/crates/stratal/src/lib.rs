//! A toolkit for finite simplicial sets carrying extra "thinness" data — markings on
//! edges, scalings on triangles, stratifications in every positive dimension — together
//! with the constructions that higher category theory performs on them: joins and slices,
//! Gray products, generating anodyne families, bounded lifting-property checkers, a
//! certified anodyne-decomposition engine, 2-truncated orientals and the scaled 2-nerve.
//!
//! Everything is finite and explicit.  A simplicial set is presented by its nondegenerate
//! simplices in Eilenberg–Zilber normal form: each face of a stored cell is either another
//! stored cell or a degeneracy word applied to one, and the word is kept in its unique
//! admissible normal form.  All lifting checks are *bounded* — the caller supplies the
//! dimension cutoff, and reports say so.

pub mod constructions;
pub mod decompose;
pub mod generators;
pub mod homotopy;
pub mod lifting;
pub mod sskernel;
pub mod strat;
pub mod twocat;

pub use sskernel::{
    CellId, DegeneracyWord, FiniteSimplicialSet, KernelError, MonoInclusion, SimplexRef,
    SimplicialMap,
};
