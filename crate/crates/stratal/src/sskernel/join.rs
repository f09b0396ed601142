//! Joyal joins of finite simplicial sets.
//!
//! Nondegenerate cells of `X ⋆ Y` are the cells of `X`, the cells of `Y`, and pairs
//! `(x, y)` of nondegenerate cells with `dim (x, y) = dim x + dim y + 1`; the `X`-part
//! occupies the initial vertices.  Faces at index `i ≤ dim x` act on the `X`-part,
//! higher indices act on the `Y`-part with shifted degeneracy words, and removing a
//! 0-dimensional part collapses the pair to a pure cell of the other side.

use std::collections::BTreeMap;

use super::{CellId, FiniteSimplicialSet, KernelError, SimplexRef, SimplicialMap};

/// A join complex with its two end inclusions and the bookkeeping needed to decorate it.
#[derive(Debug, Clone)]
pub struct Join {
    pub complex: FiniteSimplicialSet,
    pub incl_left: SimplicialMap,
    pub incl_right: SimplicialMap,
    /// For every nondegenerate cell of the join: which part it comes from.
    pub parts: BTreeMap<CellId, JoinPart>,
}

/// Provenance of a join cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JoinPart {
    Left(CellId),
    Right(CellId),
    Pair(CellId, CellId),
}

fn left_id(c: &CellId) -> CellId {
    CellId::new(format!("inl({c})"))
}

fn right_id(c: &CellId) -> CellId {
    CellId::new(format!("inr({c})"))
}

fn pair_id(x: &CellId, y: &CellId) -> CellId {
    CellId::new(format!("({x})j({y})"))
}

/// Relabels a ref of `X` as a ref of the left part of the join (indices unchanged).
fn embed_left(r: &SimplexRef) -> SimplexRef {
    SimplexRef { word: r.word.clone(), target: left_id(&r.target) }
}

/// Relabels a ref of `Y` as a ref of the right part (indices unchanged: a pure right
/// simplex spans all vertices of its cell).
fn embed_right(r: &SimplexRef) -> SimplexRef {
    SimplexRef { word: r.word.clone(), target: right_id(&r.target) }
}

/// Builds `X ⋆ Y`.
pub fn join(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> Result<Join, KernelError> {
    let mut complex = FiniteSimplicialSet::empty();
    let mut parts = BTreeMap::new();
    // Left cells keep their face structure verbatim.
    for (c, n) in x.all_cells() {
        let faces = if n == 0 {
            Vec::new()
        } else {
            x.cell_faces(c)?.iter().map(embed_left).collect()
        };
        complex.add_cell(left_id(c), n, faces)?;
        parts.insert(left_id(c), JoinPart::Left(c.clone()));
    }
    for (c, n) in y.all_cells() {
        let faces = if n == 0 {
            Vec::new()
        } else {
            y.cell_faces(c)?.iter().map(embed_right).collect()
        };
        complex.add_cell(right_id(c), n, faces)?;
        parts.insert(right_id(c), JoinPart::Right(c.clone()));
    }
    // Pair cells, by total dimension so faces can refer down.
    let mut pairs: Vec<(usize, CellId, CellId, usize, usize)> = Vec::new();
    for (cx, p) in x.all_cells() {
        for (cy, q) in y.all_cells() {
            pairs.push((p + q + 1, cx.clone(), cy.clone(), p, q));
        }
    }
    pairs.sort();
    for (n, cx, cy, p, q) in pairs {
        let mut faces = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let face = if i <= p {
                if p == 0 {
                    embed_right(&SimplexRef::cell(cy.clone()))
                } else {
                    let (w, u) = {
                        let f = &x.cell_faces(&cx)?[i];
                        (f.word.clone(), f.target.clone())
                    };
                    SimplexRef { word: w, target: pair_id(&u, &cy) }
                }
            } else if q == 0 {
                embed_left(&SimplexRef::cell(cx.clone()))
            } else {
                let f = &y.cell_faces(&cy)?[i - p - 1];
                // Degeneracies acting in the right part shift by (left dim + 1).
                let mut r = SimplexRef::cell(pair_id(&cx, &f.target));
                for &j in f.word.ops().iter().rev() {
                    r = r.degenerate(j + p + 1);
                }
                r
            };
            faces.push(face);
        }
        complex.add_cell(pair_id(&cx, &cy), n, faces)?;
        parts.insert(pair_id(&cx, &cy), JoinPart::Pair(cx, cy));
    }
    let incl_left = SimplicialMap::new_unchecked(
        x.clone(),
        complex.clone(),
        x.all_cells().map(|(c, _)| (c.clone(), SimplexRef::cell(left_id(c)))).collect(),
    );
    let incl_right = SimplicialMap::new_unchecked(
        y.clone(),
        complex.clone(),
        y.all_cells().map(|(c, _)| (c.clone(), SimplexRef::cell(right_id(c)))).collect(),
    );
    Ok(Join { complex, incl_left, incl_right, parts })
}

/// The join-level ref spanned by a ref of `X` and a ref of `Y` (possibly degenerate):
/// normal form of `(s_A x̄, s_B ȳ)` over the pair cell `(x̄, ȳ)`.
pub fn join_pair_ref(rx: &SimplexRef, ry: &SimplexRef, x: &FiniteSimplicialSet) -> SimplexRef {
    let p_bar = x.cell_dim(&rx.target).expect("ref targets a stored cell");
    let mut out = SimplexRef::cell(pair_id(&rx.target, &ry.target));
    // Right-part degeneracies first (left part still has dimension p̄), shifted.
    for &j in ry.word.ops().iter().rev() {
        out = out.degenerate(j + p_bar + 1);
    }
    // Then left-part degeneracies, unshifted.
    for &j in rx.word.ops().iter().rev() {
        out = out.degenerate(j);
    }
    out
}

/// Functorial action of the join on maps: `f ⋆ g : X ⋆ Y → X′ ⋆ Y′`.
pub fn join_map(
    f: &SimplicialMap,
    g: &SimplicialMap,
    source_join: &Join,
    target_join: &Join,
) -> Result<SimplicialMap, KernelError> {
    let mut assign = BTreeMap::new();
    for (c, part) in &source_join.parts {
        let image = match part {
            JoinPart::Left(cx) => embed_left(f.cell_image(cx)?),
            JoinPart::Right(cy) => embed_right(g.cell_image(cy)?),
            JoinPart::Pair(cx, cy) => {
                join_pair_ref(f.cell_image(cx)?, g.cell_image(cy)?, f.target())
            }
        };
        assign.insert(c.clone(), image);
    }
    Ok(SimplicialMap::new_unchecked(
        source_join.complex.clone(),
        target_join.complex.clone(),
        assign,
    ))
}

#[cfg(test)]
mod tests {
    use super::super::standard::{standard_complex, StandardKind};
    use super::*;

    fn counts(x: &FiniteSimplicialSet) -> Vec<usize> {
        (0..=x.dim()).map(|n| x.cells(n).count()).collect()
    }

    #[test]
    fn ordinal_sum() {
        let d1 = standard_complex(StandardKind::Simplex(1)).unwrap();
        let d2 = standard_complex(StandardKind::Simplex(2)).unwrap();
        let j = join(&d1, &d2).unwrap();
        // Δ¹ ⋆ Δ² ≅ Δ⁴.
        assert_eq!(counts(&j.complex), vec![5, 10, 10, 5, 1]);
        j.complex.validate().unwrap();
        j.incl_left.validate().unwrap();
        j.incl_right.validate().unwrap();
    }

    #[test]
    fn cone_over_boundary_of_edge() {
        let b1 = standard_complex(StandardKind::Boundary(1)).unwrap();
        let d0 = standard_complex(StandardKind::Point).unwrap();
        let j = join(&b1, &d0).unwrap();
        assert_eq!(counts(&j.complex), vec![3, 2]);
        j.complex.validate().unwrap();
    }

    #[test]
    fn empty_is_unit() {
        let d2 = standard_complex(StandardKind::Simplex(2)).unwrap();
        let j = join(&FiniteSimplicialSet::empty(), &d2).unwrap();
        assert_eq!(counts(&j.complex), counts(&d2));
        j.complex.validate().unwrap();
    }
}
