//! Equivalence edges, cores, the explicit fibrant replacement, and triangle
//! normalization.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::generators::{self, GenError};
use crate::lifting;
use crate::sskernel::{
    enumerate_maps_with, CellId, FiniteSimplicialSet, KernelError, SimplexRef, SimplicialMap,
};
use crate::strat::{bold_th_k, iota, thin_core, Decoration, DecoratedMap, StratError};

#[derive(Debug, Error)]
pub enum HtpyError {
    #[error("no filler found: {0}")]
    FillerFailed(String),
    #[error("expected a simplex of dimension {expected}, got dimension {got}")]
    WrongDim { expected: usize, got: usize },
    #[error(transparent)]
    Strat(#[from] StratError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// The walking-equivalence probe: the 2-skeleton of the nerve of the free-living
/// isomorphism, with both nondegenerate triangles required to land on thin simplices.
/// An edge `v : x → y` is an *equivalence* when some map from the probe sends the edge
/// `0 → 1` to `v` (the two triangles then exhibit a quasi-inverse `w` with `wv ≃ id` and
/// `vw ≃ id`).  Degenerate edges are always equivalences via the constant probe map.
pub fn equivalence_edges(x: &Decoration) -> Result<BTreeSet<SimplexRef>, HtpyError> {
    let probe = generators::special_object("E2")?.carrier().clone();
    let forward = CellId::new("0.1");
    let triangles = [CellId::new("0.1.0"), CellId::new("1.0.1")];
    let mut out = BTreeSet::new();
    for e in x.carrier().refs_of_dim(1) {
        if !e.is_nondegenerate() {
            out.insert(e);
            continue;
        }
        let pinned: BTreeMap<CellId, SimplexRef> =
            [(forward.clone(), e.clone())].into_iter().collect();
        let witnesses = enumerate_maps_with(&probe, x.carrier(), &pinned, &|c, r| {
            !triangles.contains(c) || x.is_distinguished(r)
        })?;
        if !witnesses.is_empty() {
            out.insert(e);
        }
    }
    Ok(out)
}

/// The core: the largest subcomplex all of whose triangles are thin.
pub fn core(x: &Decoration) -> Result<FiniteSimplicialSet, HtpyError> {
    Ok(thin_core(x)?)
}

/// Explicit fibrant replacement of a scaled set `(X, T)`: the stratification marking the
/// thin triangles, the equivalence edges, and everything in dimension above 2.  For a
/// fibrant input this is a 2-trivial saturated complicial set and the inclusion from the
/// bare stratification of `(X, T)` is anodyne.
pub fn fibrant_replacement(x: &Decoration) -> Result<Decoration, HtpyError> {
    let eq_marks: BTreeSet<CellId> = equivalence_edges(x)?
        .into_iter()
        .filter(|e| e.is_nondegenerate())
        .map(|e| e.target)
        .collect();
    let base = iota(x)?.union_marks(&[(1usize, eq_marks)].into_iter().collect())?;
    Ok(bold_th_k(&base, 2))
}

/// The normal form produced by [`normalize_triangle`]: a 3-simplex `Υ` whose faces are
/// `Υ|₀₁₂` degenerate, `Υ|₀₂₃ = α`, `Υ|₁₂₃` thin, and `Υ|₀₁₃ = α̂` the 2-morphism form
/// of `α`.
#[derive(Debug, Clone)]
pub struct NormalizedTriangle {
    /// The full 3-simplex as a map out of Δ³.
    pub upsilon: SimplicialMap,
    /// The thin comparison triangle `Υ|₁₂₃`.
    pub thin_witness: SimplexRef,
    /// The reduced form `α̂ = Υ|₀₁₃`, an honest 2-morphism `h ⇒ h′`.
    pub alpha_hat: SimplexRef,
}

/// Turns an arbitrary triangle `α` of a fibrant scaled set into a 2-morphism: first a
/// thin composite of `α`'s first two edges is filled (inner-horn filler into the thin
/// triangle), then the 3-horn with that thin face, `α`, and a degeneracy is filled.  Both
/// steps are anodyne extensions, so they succeed whenever `x` has the fillers of a weak
/// fibrant object at dimension ≤ 3.
pub fn normalize_triangle(
    x: &Decoration,
    alpha: &SimplexRef,
) -> Result<NormalizedTriangle, HtpyError> {
    use crate::sskernel::face_id;
    let carrier = x.carrier();
    let got = carrier.ref_dim(alpha)?;
    if got != 2 {
        return Err(HtpyError::WrongDim { expected: 2, got });
    }
    let f = carrier.face_ref(alpha, 2)?;
    let g = carrier.face_ref(alpha, 0)?;
    let h = carrier.face_ref(alpha, 1)?;
    let vx = carrier.face_ref(&f, 1)?;
    let vy = carrier.face_ref(&f, 0)?;
    let vz = carrier.face_ref(&g, 0)?;

    // Step 1: fill the inner 2-horn (f, g) to a thin triangle.
    let gen2 = generators::build("scaled-S:inner", &[2, 1])?;
    let horn2 = gen2.map.source().carrier();
    let assign2: BTreeMap<CellId, SimplexRef> = [
        (face_id(&[0]), vx.clone()),
        (face_id(&[1]), vy.clone()),
        (face_id(&[2]), vz.clone()),
        (face_id(&[0, 1]), f.clone()),
        (face_id(&[1, 2]), g.clone()),
    ]
    .into_iter()
    .collect();
    let f2 = DecoratedMap::new(
        SimplicialMap::new(horn2.clone(), carrier.clone(), assign2)?,
        gen2.map.source().clone(),
        x.clone(),
    )?;
    let filled2 = lifting::extensions(&f2, &gen2.map)?;
    let thin_fill = filled2
        .first()
        .ok_or_else(|| HtpyError::FillerFailed("no thin composite of the horn (f, g)".into()))?;
    let thin_witness = thin_fill.map().cell_image(&face_id(&[0, 1, 2]))?.clone();
    let h_prime = thin_fill.map().cell_image(&face_id(&[0, 2]))?.clone();

    // Step 2: fill the 3-horn with faces (thin, α, —, s₀f).
    let gen3 = generators::build("scaled-S:inner", &[3, 2])?;
    let horn3 = gen3.map.source().carrier();
    let assign3: BTreeMap<CellId, SimplexRef> = [
        (face_id(&[0]), vx.clone()),
        (face_id(&[1]), vx.clone()),
        (face_id(&[2]), vy.clone()),
        (face_id(&[3]), vz.clone()),
        (face_id(&[0, 1]), vx.degenerate(0)),
        (face_id(&[0, 2]), f.clone()),
        (face_id(&[1, 2]), f.clone()),
        (face_id(&[0, 3]), h.clone()),
        (face_id(&[1, 3]), h_prime.clone()),
        (face_id(&[2, 3]), g.clone()),
        (face_id(&[0, 1, 2]), f.degenerate(0)),
        (face_id(&[0, 2, 3]), alpha.clone()),
        (face_id(&[1, 2, 3]), thin_witness.clone()),
    ]
    .into_iter()
    .collect();
    let f3 = DecoratedMap::new(
        SimplicialMap::new(horn3.clone(), carrier.clone(), assign3)?,
        gen3.map.source().clone(),
        x.clone(),
    )?;
    let filled3 = lifting::extensions(&f3, &gen3.map)?;
    let upsilon = filled3
        .first()
        .ok_or_else(|| HtpyError::FillerFailed("no filler for the normalization 3-horn".into()))?;
    let alpha_hat = upsilon.map().cell_image(&face_id(&[0, 1, 3]))?.clone();
    Ok(NormalizedTriangle {
        upsilon: upsilon.map().clone(),
        thin_witness,
        alpha_hat,
    })
}

/// True when the decoration marks `r` or `r` is degenerate — convenience for callers
/// checking thinness of normalization output.
pub fn is_thin(x: &Decoration, r: &SimplexRef) -> bool {
    x.is_distinguished(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sskernel::{face_id, standard_complex, StandardKind};
    use crate::strat::{th_k, DecorationKind};

    fn simplex(n: usize) -> FiniteSimplicialSet {
        standard_complex(StandardKind::Simplex(n)).unwrap()
    }

    #[test]
    fn flat_simplices_have_only_degenerate_equivalences() {
        for n in 1..=3usize {
            let x = Decoration::flat(simplex(n), DecorationKind::Scaled);
            let eq = equivalence_edges(&x).unwrap();
            assert!(eq.iter().all(|e| !e.is_nondegenerate()), "n = {n}");
            assert!(!eq.is_empty());
        }
        // Even with all triangles thin, a poset nerve has no quasi-inverses.
        let sharp = Decoration::sharp(simplex(2));
        let eq = equivalence_edges(&sharp).unwrap();
        assert!(eq.iter().all(|e| !e.is_nondegenerate()));
    }

    #[test]
    fn interval_nerve_edges_are_all_equivalences() {
        let j = generators::special_object("J_sharp_trunc(3)").unwrap();
        let eq = equivalence_edges(&j).unwrap();
        for e in j.carrier().refs_of_dim(1) {
            assert!(eq.contains(&e), "{e:?}");
        }
    }

    #[test]
    fn fibrant_replacement_of_sharp_triangle() {
        let x = Decoration::sharp(simplex(2));
        let rep = fibrant_replacement(&x).unwrap();
        assert_eq!(rep.kind(), DecorationKind::Stratified);
        assert_eq!(rep.marks_in_dim(1).count(), 0);
        assert_eq!(rep.marks_in_dim(2).count(), 1);
    }

    #[test]
    fn fibrant_replacement_of_flat_edge_marks_nothing() {
        let x = Decoration::flat(simplex(1), DecorationKind::Scaled);
        let rep = fibrant_replacement(&x).unwrap();
        assert!((0..=1).all(|d| rep.marks_in_dim(d).count() == 0));
    }

    #[test]
    fn fibrant_replacement_of_truncated_interval_marks_all_edges() {
        let j = generators::special_object("J_sharp_trunc(3)").unwrap();
        let rep = fibrant_replacement(&j).unwrap();
        assert_eq!(rep.marks_in_dim(1).count(), 2);
        assert_eq!(rep.marks_in_dim(2).count(), 2);
        assert_eq!(rep.marks_in_dim(3).count(), 2);
    }

    #[test]
    fn core_drops_the_non_thin_triangle() {
        let flat = Decoration::flat(simplex(2), DecorationKind::Scaled);
        let c = core(&flat).unwrap();
        assert_eq!(c.cells(2).count(), 0);
        assert_eq!(c.cells(1).count(), 3);
        let sharp = Decoration::sharp(simplex(2));
        assert_eq!(core(&sharp).unwrap().cells(2).count(), 1);
    }

    #[test]
    fn normalization_in_the_thin_triangle() {
        let x = th_k(simplex(2), 0).with_kind(DecorationKind::Scaled);
        let alpha = SimplexRef::cell(face_id(&[0, 1, 2]));
        let norm = normalize_triangle(&x, &alpha).unwrap();
        norm.upsilon.validate().unwrap();
        assert_eq!(norm.upsilon.cell_image(&face_id(&[0, 2, 3])).unwrap(), &alpha);
        assert!(x.is_distinguished(&norm.thin_witness));
        // The whole 3-simplex is a degeneracy of the triangle, and α̂ = s₀(Δ^{02}).
        assert_eq!(norm.alpha_hat, SimplexRef::cell(face_id(&[0, 2])).degenerate(0));
        assert!(is_thin(&x, &norm.alpha_hat));
    }

    #[test]
    fn normalization_of_a_degenerate_triangle() {
        let x = th_k(simplex(1), 0).with_kind(DecorationKind::Scaled);
        let alpha = SimplexRef::cell(face_id(&[0, 1])).degenerate(0);
        let norm = normalize_triangle(&x, &alpha).unwrap();
        norm.upsilon.validate().unwrap();
        assert_eq!(norm.upsilon.cell_image(&face_id(&[0, 2, 3])).unwrap(), &alpha);
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let x = Decoration::flat(simplex(2), DecorationKind::Scaled);
        let e = SimplexRef::cell(face_id(&[0, 1]));
        assert!(matches!(
            normalize_triangle(&x, &e),
            Err(HtpyError::WrongDim { expected: 2, got: 1 })
        ));
    }
}
