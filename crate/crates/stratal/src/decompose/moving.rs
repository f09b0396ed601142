//! Extension and lifting of simplex-collapse transformations.
//!
//! Fix a monotone surjection `ρ : [n] → [m]` with its minimal section `σ`.  A
//! *transformation* over a subcomplex `A ⊆ Δⁿ` is a map `h : Δ¹ × A → C` into a scaled
//! set that collapses the prism direction along `ρ` in a controlled way: over vertices
//! in the image of `σ` (and over the step just before a collapsed vertex) the prism is
//! degenerate, and the bent triangles over edges of `A` are thin.  The extension
//! algorithm pushes a transformation from an admissible `A` to an admissible `B ⊇ A`
//! cell by cell; the lifting algorithm solves the same prism filtration in the source
//! of a map `p : X → Y`, using prescribed edge lifts over the new vertices.

use std::collections::BTreeMap;

use crate::generators::{simplex, vertex_set};
use crate::sskernel::{
    enumerate_maps_with, face_id, CellId, FiniteSimplicialSet, SimplexRef, SimplicialMap,
};
use crate::strat::Decoration;

use super::prism::Prism;
use super::{msg, DecompError};

/// The minimal section of a monotone surjection `ρ : [n] → [m]` presented by its value
/// list (`ρ(0) = 0`, consecutive steps 0 or 1): `σ(j) = min ρ⁻¹(j)`.
pub fn section_of(rho: &[usize]) -> Result<Vec<usize>, DecompError> {
    if rho.first() != Some(&0) {
        return Err(msg("a monotone surjection out of [n] must start at 0"));
    }
    for w in rho.windows(2) {
        if w[1] != w[0] && w[1] != w[0] + 1 {
            return Err(msg("the value list must be monotone with steps 0 or 1"));
        }
    }
    let m = *rho.last().expect("nonempty value list");
    let mut sigma = vec![0; m + 1];
    for j in 0..=m {
        sigma[j] = rho.iter().position(|&v| v == j).expect("surjective");
    }
    Ok(sigma)
}

fn in_section_image(i: usize, rho: &[usize], sigma: &[usize]) -> bool {
    sigma[rho[i]] == i
}

fn check_subcomplex(
    x: &FiniteSimplicialSet,
    n: usize,
    name: &str,
) -> Result<(), DecompError> {
    let ambient = simplex(n);
    for (c, _) in x.all_cells() {
        if !ambient.has_cell(c) {
            return Err(msg(format!("`{name}` is not a subcomplex of Δ^{n}: `{c}`")));
        }
    }
    Ok(())
}

/// Is the subcomplex `A ⊆ Δⁿ` admissible for `ρ`?  Requires `σρ(A) ⊆ A`, and for every
/// vertex `i` of `A` outside the image of `σ`, every face of `Δⁿ` with terminal vertex
/// `i` must lie in `A`.
pub fn is_admissible(
    n: usize,
    rho: &[usize],
    a: &FiniteSimplicialSet,
) -> Result<bool, DecompError> {
    if rho.len() != n + 1 {
        return Err(msg("ρ must be defined on the vertices of Δⁿ"));
    }
    check_subcomplex(a, n, "A")?;
    let sigma = section_of(rho)?;
    let ambient = simplex(n);
    for (c, _) in a.all_cells() {
        let image: std::collections::BTreeSet<usize> =
            vertex_set(c).into_iter().map(|v| sigma[rho[v]]).collect();
        let image_id = face_id(&image.iter().copied().collect::<Vec<_>>());
        if !a.has_cell(&image_id) {
            return Ok(false);
        }
    }
    for i in 0..=n {
        if !a.has_cell(&face_id(&[i])) || in_section_image(i, rho, &sigma) {
            continue;
        }
        for (c, _) in ambient.all_cells() {
            if vertex_set(c).last() == Some(&i) && !a.has_cell(c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn prism_over(
    prism: &Prism,
    x: &FiniteSimplicialSet,
) -> Result<FiniteSimplicialSet, DecompError> {
    let seed = prism
        .product
        .complex
        .all_cells()
        .filter(|(c, _)| x.has_cell(&prism.product.components[*c].1.target))
        .map(|(c, _)| c.clone())
        .collect();
    Ok(prism.product.complex.subcomplex(&seed)?)
}

/// The domain `Δ¹ × A ∪ {1} × B` of a partial transformation, as a subcomplex of the
/// prism `Δ¹ × Δⁿ`.
pub fn transformation_domain(
    n: usize,
    a: &FiniteSimplicialSet,
    b: &FiniteSimplicialSet,
) -> Result<FiniteSimplicialSet, DecompError> {
    check_subcomplex(a, n, "A")?;
    check_subcomplex(b, n, "B")?;
    let prism = Prism::new(n)?;
    let seed = prism
        .product
        .complex
        .all_cells()
        .filter(|(c, _)| {
            let chain = &prism.chain_of[*c];
            let right = &prism.product.components[*c].1.target;
            a.has_cell(right)
                || (chain.iter().all(|&(eps, _)| eps == 1) && b.has_cell(right))
        })
        .map(|(c, _)| c.clone())
        .collect();
    Ok(prism.product.complex.subcomplex(&seed)?)
}

fn split_chain(chain: &[(usize, usize)]) -> (Vec<usize>, Vec<usize>) {
    let j0 = chain.iter().filter(|&&(e, _)| e == 0).map(|&(_, v)| v).collect();
    let j1 = chain.iter().filter(|&&(e, _)| e == 1).map(|&(_, v)| v).collect();
    (j0, j1)
}

/// Checks the transformation conditions for `h : Δ¹ × A → C` (source must be exactly
/// the prism over `A`): degeneracy over section vertices and pre-collapse steps, and
/// thinness of the bent triangles over the edges of `A`.
pub fn check_transformation(
    c: &Decoration,
    rho: &[usize],
    a: &FiniteSimplicialSet,
    h: &SimplicialMap,
) -> Result<(), DecompError> {
    let n = rho.len().checked_sub(1).ok_or_else(|| msg("empty ρ"))?;
    check_subcomplex(a, n, "A")?;
    let sigma = section_of(rho)?;
    let prism = Prism::new(n)?;
    let prism_a = prism_over(&prism, a)?;
    if *h.source() != prism_a {
        return Err(msg("the map is not defined on exactly the prism over A"));
    }
    if h.target() != c.carrier() {
        return Err(msg("the map does not land in the given scaled set"));
    }
    for (cell, _) in prism_a.all_cells() {
        let chain = prism.chain_of[cell].clone();
        let (j0, j1) = split_chain(&chain);
        let Some(&i) = j0.last() else { continue };
        let collapse = if in_section_image(i, rho, &sigma) && j1 == [i] {
            // Retraction (0,i) ↦ (1,i): positions |J₀|−1, |J₀|.
            Some(j0.len() - 1)
        } else if !in_section_image(i, rho, &sigma)
            && i >= 1
            && j0.contains(&(i - 1))
            && (j1.is_empty() || j1 == [i])
        {
            // Retraction (0,i) ↦ (0,i−1): positions |J₀|−2, |J₀|−1.
            Some(j0.len() - 2)
        } else {
            None
        };
        if let Some(p) = collapse {
            let face: Vec<(usize, usize)> =
                chain.iter().copied().filter(|&x| x != (0, i)).collect();
            let face_cell = prism.cell_of(&face)?;
            let expected = h.cell_image(face_cell)?.degenerate(p);
            if *h.cell_image(cell)? != expected {
                return Err(msg(format!(
                    "the simplex over {chain:?} does not collapse along ρ"
                )));
            }
        }
    }
    for e in a.cells(1) {
        let vs: Vec<usize> = vertex_set(e).into_iter().collect();
        let tri = prism.cell_of(&[(0, vs[0]), (1, vs[0]), (1, vs[1])])?;
        if !c.is_distinguished(h.cell_image(tri)?) {
            return Err(msg(format!(
                "the bent triangle over the edge `{e}` is not thin"
            )));
        }
    }
    Ok(())
}

/// Is the chain of the shape `{(0,x),(1,x),(1,y)}` whose image must be thin?
fn bent_triangle(chain: &[(usize, usize)]) -> bool {
    matches!(chain, [(0, x), (1, x2), (1, y)] if x == x2 && x < y)
}

struct Filler<'a> {
    prism: &'a Prism,
    target: FiniteSimplicialSet,
}

impl Filler<'_> {
    /// Inserts `cell ↦ r` and propagates face images through the assignment,
    /// checking consistency.
    fn set(
        &self,
        assign: &mut BTreeMap<CellId, SimplexRef>,
        cell: &CellId,
        r: SimplexRef,
    ) -> Result<(), DecompError> {
        match assign.get(cell) {
            Some(prev) if *prev == r => return Ok(()),
            Some(prev) => {
                return Err(msg(format!(
                    "inconsistent images for `{cell}`: {} vs {}",
                    prev.label(),
                    r.label()
                )))
            }
            None => {}
        }
        assign.insert(cell.clone(), r.clone());
        let dim = self.prism.product.complex.cell_dim(cell)?;
        if dim == 0 {
            return Ok(());
        }
        for i in 0..=dim {
            let fr = self
                .prism
                .product
                .complex
                .face_ref(&SimplexRef::cell(cell.clone()), i)?;
            debug_assert!(fr.is_nondegenerate());
            let expected = self.target.face_ref(&r, i)?;
            self.set(assign, &fr.target.clone(), expected)?;
        }
        Ok(())
    }
}

/// Extends a transformation `g` defined on `Δ¹ × A ∪ {1} × B` to the whole prism over
/// `B`, for admissible `A ⊆ B`.  Degenerate cells are filled by the collapse
/// retractions of `ρ`; the remaining cells are filled through inner horns in `C`, with
/// the bent triangles required to land thin.
pub fn extend_transformation(
    c: &Decoration,
    rho: &[usize],
    a: &FiniteSimplicialSet,
    b: &FiniteSimplicialSet,
    g: &SimplicialMap,
) -> Result<SimplicialMap, DecompError> {
    let n = rho.len().checked_sub(1).ok_or_else(|| msg("empty ρ"))?;
    check_subcomplex(a, n, "A")?;
    check_subcomplex(b, n, "B")?;
    for (cell, _) in a.all_cells() {
        if !b.has_cell(cell) {
            return Err(msg("A must be a subcomplex of B"));
        }
    }
    if !is_admissible(n, rho, a)? {
        return Err(msg("A is not admissible for ρ"));
    }
    if !is_admissible(n, rho, b)? {
        return Err(msg("B is not admissible for ρ"));
    }
    let sigma = section_of(rho)?;
    let prism = Prism::new(n)?;
    let domain = transformation_domain(n, a, b)?;
    if *g.source() != domain {
        return Err(msg("the partial map is not defined on exactly Δ¹×A ∪ {1}×B"));
    }
    if g.target() != c.carrier() {
        return Err(msg("the partial map does not land in the given scaled set"));
    }
    // The restriction of g to Δ¹ × A must already be a transformation.
    let prism_a = prism_over(&prism, a)?;
    let restricted = SimplicialMap::new(
        prism_a.clone(),
        g.target().clone(),
        prism_a
            .all_cells()
            .map(|(cell, _)| Ok((cell.clone(), g.cell_image(cell)?.clone())))
            .collect::<Result<_, DecompError>>()?,
    )?;
    check_transformation(c, rho, a, &restricted)?;

    let prism_b = prism_over(&prism, b)?;
    let filler = Filler { prism: &prism, target: c.carrier().clone() };
    let mut assign: BTreeMap<CellId, SimplexRef> = g.assign().clone();

    // Fillable cells: (dim, bend index, |J₁|, chain), lexicographic.
    let mut fillable: Vec<(usize, usize, usize, Vec<(usize, usize)>, u8)> = Vec::new();
    for (cell, dim) in prism_b.all_cells() {
        if domain.has_cell(cell) {
            continue;
        }
        let chain = prism.chain_of[cell].clone();
        let (j0, j1) = split_chain(&chain);
        let &i = j0.last().ok_or_else(|| {
            msg("internal error: a cell outside {1}×B has an empty height-0 part")
        })?;
        let kind = if in_section_image(i, rho, &sigma) && j1 == [i] {
            1
        } else if !in_section_image(i, rho, &sigma)
            && i >= 1
            && j0.contains(&(i - 1))
            && (j1.is_empty() || j1 == [i])
        {
            2
        } else if j1.len() >= 2 && j1.contains(&i) {
            3
        } else {
            continue;
        };
        fillable.push((dim, i, j1.len(), chain, kind));
    }
    fillable.sort();

    for (_, i, _, chain, kind) in fillable {
        let cell = prism.cell_of(&chain)?.clone();
        if assign.contains_key(&cell) {
            continue;
        }
        let (j0, _) = split_chain(&chain);
        match kind {
            1 | 2 => {
                let p = if kind == 1 { j0.len() - 1 } else { j0.len() - 2 };
                let face: Vec<(usize, usize)> =
                    chain.iter().copied().filter(|&x| x != (0, i)).collect();
                let face_cell = prism.cell_of(&face)?;
                let r = assign
                    .get(face_cell)
                    .ok_or_else(|| {
                        msg(format!("face {face:?} is not yet filled for {chain:?}"))
                    })?
                    .degenerate(p);
                filler.set(&mut assign, &cell, r)?;
            }
            _ => {
                // Inner-horn fill at the vertex (1, i): the simplex and its face
                // opposite (1, i) are found together through an enumeration pinned on
                // every other face, with bent triangles required to land thin.
                let d = chain.len() - 1;
                let pos = chain
                    .iter()
                    .position(|&x| x == (1, i))
                    .expect("bend vertex present");
                let std = simplex(d);
                let mut pinned: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
                let mut bent: std::collections::BTreeSet<CellId> = Default::default();
                let mut co_fill: Vec<(CellId, CellId)> = Vec::new();
                for mask in 1u32..(1 << (d + 1)) {
                    let positions: Vec<usize> =
                        (0..=d).filter(|t| mask & (1 << t) != 0).collect();
                    let sub: Vec<(usize, usize)> =
                        positions.iter().map(|&t| chain[t]).collect();
                    let sub_cell = prism.cell_of(&sub)?.clone();
                    let id = face_id(&positions);
                    if bent_triangle(&sub) {
                        bent.insert(id.clone());
                    }
                    match assign.get(&sub_cell) {
                        Some(r) => {
                            pinned.insert(id, r.clone());
                        }
                        None => co_fill.push((id, sub_cell)),
                    }
                }
                let cdec = c;
                let cell_ok = |cid: &CellId, r: &SimplexRef| {
                    !bent.contains(cid) || cdec.is_distinguished(r)
                };
                let maps =
                    enumerate_maps_with(&std, c.carrier(), &pinned, &cell_ok)?;
                let m = maps.into_iter().next().ok_or_else(|| {
                    msg(format!("no thin filler exists for the simplex over {chain:?}"))
                })?;
                debug_assert!(co_fill.iter().any(|(id, _)| {
                    *id == face_id(&(0..=d).collect::<Vec<_>>())
                }));
                let _ = pos;
                for (id, sub_cell) in co_fill {
                    filler.set(&mut assign, &sub_cell, m.cell_image(&id)?.clone())?;
                }
            }
        }
    }

    let h = SimplicialMap::new(
        prism_b.clone(),
        c.carrier().clone(),
        prism_b
            .all_cells()
            .map(|(cell, _)| {
                assign
                    .get(cell)
                    .map(|r| (cell.clone(), r.clone()))
                    .ok_or_else(|| msg(format!("cell `{cell}` was never filled")))
            })
            .collect::<Result<_, DecompError>>()?,
    )?;
    check_transformation(c, rho, b, &h)?;
    Ok(h)
}

/// Lifts a prism `H : Δ¹ × B → Y` along `p : X → Y`, given a partial lift `f` on
/// `Δ¹ × A ∪ {1} × B` and a prescribed cartesian edge lift over every vertex of `B`
/// outside `A`.  Each simplex of `B` outside `A` is handled through the bent-simplex
/// filtration of its prism, solved by enumeration over `p`.
pub fn lift_transformation(
    p: &SimplicialMap,
    n: usize,
    a: &FiniteSimplicialSet,
    b: &FiniteSimplicialSet,
    f: &SimplicialMap,
    big_h: &SimplicialMap,
    prescribed: &BTreeMap<CellId, SimplexRef>,
) -> Result<SimplicialMap, DecompError> {
    check_subcomplex(a, n, "A")?;
    check_subcomplex(b, n, "B")?;
    let prism = Prism::new(n)?;
    let domain = transformation_domain(n, a, b)?;
    let prism_b = prism_over(&prism, b)?;
    if *f.source() != domain {
        return Err(msg("the partial lift is not defined on exactly Δ¹×A ∪ {1}×B"));
    }
    if *big_h.source() != prism_b {
        return Err(msg("the prism homotopy is not defined on exactly Δ¹×B"));
    }
    if f.target() != p.source() || big_h.target() != p.target() {
        return Err(msg("the lifting square has mismatched objects"));
    }
    for (cell, _) in domain.all_cells() {
        if p.apply(f.cell_image(cell)?)? != *big_h.cell_image(cell)? {
            return Err(msg(format!("the partial lift does not cover H at `{cell}`")));
        }
    }

    let filler = Filler { prism: &prism, target: p.source().clone() };
    let mut assign: BTreeMap<CellId, SimplexRef> = f.assign().clone();

    let mut cells: Vec<(usize, CellId)> =
        b.all_cells().filter(|(c, _)| !a.has_cell(c)).map(|(c, d)| (d, c.clone())).collect();
    cells.sort();
    for (d, beta) in cells {
        let verts: Vec<usize> = vertex_set(&beta).into_iter().collect();
        if d == 0 {
            let v = verts[0];
            let edge_cell = prism.cell_of(&[(0, v), (1, v)])?.clone();
            let e = prescribed
                .get(&beta)
                .ok_or_else(|| msg(format!("no prescribed edge lift over vertex `{beta}`")))?
                .clone();
            if p.apply(&e)? != *big_h.cell_image(&edge_cell)? {
                return Err(msg(format!(
                    "the prescribed edge over `{beta}` does not cover H"
                )));
            }
            let top = p.source().face_ref(&e, 0)?;
            let bottom_cell = prism.cell_of(&[(1, v)])?;
            if top != *assign.get(bottom_cell).expect("endpoint in the domain") {
                return Err(msg(format!(
                    "the prescribed edge over `{beta}` does not end at the lift of (1,{v})"
                )));
            }
            filler.set(&mut assign, &edge_cell, e)?;
            continue;
        }
        // Bent-simplex filtration of Δ¹ × β, from the bend at verts[0] upward.
        for k in 0..=d {
            let chain: Vec<(usize, usize)> = (0..=k)
                .map(|t| (0, verts[t]))
                .chain((k..=d).map(|t| (1, verts[t])))
                .collect();
            let dd = chain.len() - 1;
            let std = simplex(dd);
            let mut pinned: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
            let mut over: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
            let mut co_fill: Vec<(CellId, CellId)> = Vec::new();
            for mask in 1u32..(1 << (dd + 1)) {
                let positions: Vec<usize> =
                    (0..=dd).filter(|t| mask & (1 << t) != 0).collect();
                let sub: Vec<(usize, usize)> =
                    positions.iter().map(|&t| chain[t]).collect();
                let sub_cell = prism.cell_of(&sub)?.clone();
                let id = face_id(&positions);
                over.insert(id.clone(), big_h.cell_image(&sub_cell)?.clone());
                match assign.get(&sub_cell) {
                    Some(r) => {
                        pinned.insert(id, r.clone());
                    }
                    None => co_fill.push((id, sub_cell)),
                }
            }
            if co_fill.is_empty() {
                continue;
            }
            let cell_ok = |cid: &CellId, r: &SimplexRef| match over.get(cid) {
                Some(target) => p.apply(r).map(|img| img == *target).unwrap_or(false),
                None => false,
            };
            let maps = enumerate_maps_with(&std, p.source(), &pinned, &cell_ok)?;
            let m = maps.into_iter().next().ok_or_else(|| {
                msg(format!("no lift exists for the simplex over {chain:?}"))
            })?;
            for (id, sub_cell) in co_fill {
                filler.set(&mut assign, &sub_cell, m.cell_image(&id)?.clone())?;
            }
        }
    }

    let h = SimplicialMap::new(
        prism_b.clone(),
        p.source().clone(),
        prism_b
            .all_cells()
            .map(|(cell, _)| {
                assign
                    .get(cell)
                    .map(|r| (cell.clone(), r.clone()))
                    .ok_or_else(|| msg(format!("cell `{cell}` was never filled")))
            })
            .collect::<Result<_, DecompError>>()?,
    )?;
    for (cell, _) in prism_b.all_cells() {
        if p.apply(h.cell_image(cell)?)? != *big_h.cell_image(cell)? {
            return Err(msg(format!("the lift does not cover H at `{cell}`")));
        }
    }
    Ok(h)
}
