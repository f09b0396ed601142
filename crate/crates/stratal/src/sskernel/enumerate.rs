//! Deterministic backtracking enumeration of simplicial maps.
//!
//! Cells are processed in (dimension, id) order; a candidate image for a cell must agree
//! with the already-assigned faces, so the search prunes eagerly.  Output is in
//! lexicographic order of assignments, independent of everything but the inputs.
//!
//! Targets flagged 0-coskeletal short-circuit the search: a map into a skeleton of a
//! 0-coskeleton is freely determined by its vertex images, so only vertex functions are
//! enumerated and the higher assignment is reconstructed through vertex tuples.

use std::collections::BTreeMap;

use super::{CellId, FiniteSimplicialSet, KernelError, SimplexRef, SimplicialMap};

/// All simplicial maps `X → Y` extending the partial assignment (keyed by nondegenerate
/// cells of `X`), in canonical order.
pub fn enumerate_maps(
    x: &FiniteSimplicialSet,
    y: &FiniteSimplicialSet,
    partial: &BTreeMap<CellId, SimplexRef>,
) -> Result<Vec<SimplicialMap>, KernelError> {
    enumerate_maps_with(x, y, partial, &|_, _| true)
}

/// Like [`enumerate_maps`], with an extra per-cell admissibility predicate (used for
/// decoration preservation: the predicate can reject a nondegenerate image of a
/// distinguished cell that is not distinguished).
pub fn enumerate_maps_with(
    x: &FiniteSimplicialSet,
    y: &FiniteSimplicialSet,
    partial: &BTreeMap<CellId, SimplexRef>,
    cell_ok: &dyn Fn(&CellId, &SimplexRef) -> bool,
) -> Result<Vec<SimplicialMap>, KernelError> {
    for (c, r) in partial {
        if x.cell_dim(c)? != y.ref_dim(r)? {
            return Err(KernelError::InconsistentPartial(c.clone()));
        }
    }
    if y.coskeletal0() {
        return enumerate_into_coskeletal(x, y, partial, cell_ok);
    }
    let order: Vec<(CellId, usize)> =
        x.all_cells().map(|(c, n)| (c.clone(), n)).collect();
    let candidates_by_dim: Vec<Vec<SimplexRef>> =
        (0..=x.dim()).map(|n| y.refs_of_dim(n)).collect();
    let mut assign: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
    let mut out = Vec::new();
    search(
        x,
        y,
        &order,
        0,
        &candidates_by_dim,
        partial,
        cell_ok,
        false,
        &mut assign,
        &mut out,
    )?;
    Ok(out.into_iter().map(|a| SimplicialMap::new_unchecked(x.clone(), y.clone(), a)).collect())
}

/// All isomorphisms `X → Y`, in canonical order.  Backtracks with injectivity tracking.
pub fn enumerate_isos(
    x: &FiniteSimplicialSet,
    y: &FiniteSimplicialSet,
) -> Result<Vec<SimplicialMap>, KernelError> {
    let max = x.dim().max(y.dim());
    for n in 0..=max {
        if x.cells(n).count() != y.cells(n).count() {
            return Ok(Vec::new());
        }
    }
    let order: Vec<(CellId, usize)> =
        x.all_cells().map(|(c, n)| (c.clone(), n)).collect();
    let candidates_by_dim: Vec<Vec<SimplexRef>> = (0..=if x.is_empty() { 0 } else { x.dim() })
        .map(|n| y.cells(n).map(|c| SimplexRef::cell(c.clone())).collect())
        .collect();
    let mut assign: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
    let mut out = Vec::new();
    search(
        x,
        y,
        &order,
        0,
        &candidates_by_dim,
        &BTreeMap::new(),
        &|_, _| true,
        true,
        &mut assign,
        &mut out,
    )?;
    Ok(out.into_iter().map(|a| SimplicialMap::new_unchecked(x.clone(), y.clone(), a)).collect())
}

#[allow(clippy::too_many_arguments)]
fn search(
    x: &FiniteSimplicialSet,
    y: &FiniteSimplicialSet,
    order: &[(CellId, usize)],
    pos: usize,
    candidates_by_dim: &[Vec<SimplexRef>],
    partial: &BTreeMap<CellId, SimplexRef>,
    cell_ok: &dyn Fn(&CellId, &SimplexRef) -> bool,
    injective: bool,
    assign: &mut BTreeMap<CellId, SimplexRef>,
    out: &mut Vec<BTreeMap<CellId, SimplexRef>>,
) -> Result<(), KernelError> {
    if pos == order.len() {
        out.push(assign.clone());
        return Ok(());
    }
    let (cell, n) = &order[pos];
    let pinned = partial.get(cell);
    let candidates: Vec<&SimplexRef> = match pinned {
        Some(r) => vec![r],
        None => candidates_by_dim[*n].iter().collect(),
    };
    'cands: for r in candidates {
        if !cell_ok(cell, r) {
            continue;
        }
        if injective && assign.values().any(|used| used == r) {
            continue;
        }
        // The candidate must agree with the images of all faces (already assigned).
        if *n > 0 {
            for i in 0..=*n {
                let face = x.face_ref(&SimplexRef::cell(cell.clone()), i)?;
                let mut expected = assign[&face.target].clone();
                for &j in face.word.ops().iter().rev() {
                    expected = expected.degenerate(j);
                }
                if expected != y.face_ref(r, i)? {
                    continue 'cands;
                }
            }
        }
        assign.insert(cell.clone(), r.clone());
        search(x, y, order, pos + 1, candidates_by_dim, partial, cell_ok, injective, assign, out)?;
        assign.remove(cell);
    }
    Ok(())
}

fn enumerate_into_coskeletal(
    x: &FiniteSimplicialSet,
    y: &FiniteSimplicialSet,
    partial: &BTreeMap<CellId, SimplexRef>,
    cell_ok: &dyn Fn(&CellId, &SimplexRef) -> bool,
) -> Result<Vec<SimplicialMap>, KernelError> {
    let xverts: Vec<CellId> = x.cells(0).cloned().collect();
    let yverts: Vec<CellId> = y.cells(0).cloned().collect();
    if xverts.is_empty() {
        return Ok(vec![SimplicialMap::new_unchecked(x.clone(), y.clone(), BTreeMap::new())]);
    }
    if yverts.is_empty() {
        return Ok(Vec::new());
    }
    let tuples = x.vertex_tuples();
    let mut out = Vec::new();
    let mut choice = vec![0usize; xverts.len()];
    'next: loop {
        // Build the vertex function for the current choice vector.
        let vmap: BTreeMap<&CellId, &CellId> =
            xverts.iter().zip(choice.iter().map(|&i| &yverts[i])).collect();
        let consistent = xverts
            .iter()
            .all(|v| partial.get(v).map_or(true, |r| r.target == *vmap[v]));
        if consistent {
            let mut assign = BTreeMap::new();
            let mut ok = true;
            'cells: for (c, _) in x.all_cells() {
                let image: Vec<CellId> =
                    tuples[c].iter().map(|v| (*vmap[v]).clone()).collect();
                let r = match y.ref_from_vertex_tuple(&image) {
                    Ok(r) => r,
                    Err(KernelError::NoSuchTuple(t)) => {
                        return Err(KernelError::Parameter(format!(
                            "0-coskeletal target is truncated below tuple {t:?}; \
                             materialize a deeper skeleton"
                        )));
                    }
                    Err(e) => return Err(e),
                };
                if let Some(pinned) = partial.get(c) {
                    if *pinned != r {
                        ok = false;
                        break 'cells;
                    }
                }
                if !cell_ok(c, &r) {
                    ok = false;
                    break 'cells;
                }
                assign.insert(c.clone(), r);
            }
            if ok {
                out.push(SimplicialMap::new_unchecked(x.clone(), y.clone(), assign));
            }
        }
        // Advance the choice vector (lexicographic, most significant first).
        let mut k = choice.len();
        while k > 0 {
            k -= 1;
            choice[k] += 1;
            if choice[k] < yverts.len() {
                continue 'next;
            }
            choice[k] = 0;
        }
        break;
    }
    Ok(out)
}
