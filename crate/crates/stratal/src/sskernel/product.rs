//! Categorical products via the shuffle description.
//!
//! A simplex of `X × Y` is a pair of equidimensional simplices; it is nondegenerate
//! exactly when the two Eilenberg–Zilber words share no index (a shared index `i` would
//! exhibit the pair as `s_i` of something).  Faces are computed componentwise and then
//! renormalized by factoring out shared degeneracy directions.

use std::collections::BTreeMap;

use super::{CellId, FiniteSimplicialSet, KernelError, SimplexRef, SimplicialMap};

/// A product complex together with its projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub complex: FiniteSimplicialSet,
    pub proj_left: SimplicialMap,
    pub proj_right: SimplicialMap,
    /// Component refs of every nondegenerate product cell.
    pub components: BTreeMap<CellId, (SimplexRef, SimplexRef)>,
}

fn pair_id(rx: &SimplexRef, ry: &SimplexRef) -> CellId {
    CellId::new(format!("({})x({})", rx.label(), ry.label()))
}

/// Builds `X × Y` with nondegenerate cells the word-disjoint pairs of refs.
pub fn product(
    x: &FiniteSimplicialSet,
    y: &FiniteSimplicialSet,
) -> Result<Product, KernelError> {
    let mut complex = FiniteSimplicialSet::empty();
    let mut components: BTreeMap<CellId, (SimplexRef, SimplexRef)> = BTreeMap::new();
    if x.is_empty() || y.is_empty() {
        let empty = FiniteSimplicialSet::empty();
        return Ok(Product {
            complex: empty.clone(),
            proj_left: SimplicialMap::new_unchecked(empty.clone(), x.clone(), BTreeMap::new()),
            proj_right: SimplicialMap::new_unchecked(empty, y.clone(), BTreeMap::new()),
            components,
        });
    }
    let top = x.dim() + y.dim();
    // Collect the nondegenerate pairs dimension by dimension so faces can refer down.
    let mut by_dim: Vec<Vec<(SimplexRef, SimplexRef)>> = Vec::new();
    for n in 0..=top {
        let rxs = x.refs_of_dim(n);
        let rys = y.refs_of_dim(n);
        let mut level = Vec::new();
        for rx in &rxs {
            for ry in &rys {
                if rx.word.ops().iter().any(|i| ry.word.contains(*i)) {
                    continue;
                }
                level.push((rx.clone(), ry.clone()));
            }
        }
        by_dim.push(level);
    }
    for (n, level) in by_dim.iter().enumerate() {
        for (rx, ry) in level {
            let id = pair_id(rx, ry);
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let fx = x.face_ref(rx, i)?;
                        let fy = y.face_ref(ry, i)?;
                        pair_normalize(x, y, fx, fy)
                    })
                    .collect::<Result<Vec<_>, _>>()?
            };
            complex.add_cell(id.clone(), n, faces)?;
            components.insert(id, (rx.clone(), ry.clone()));
        }
    }
    let proj_left = SimplicialMap::new_unchecked(
        complex.clone(),
        x.clone(),
        components.iter().map(|(c, (rx, _))| (c.clone(), rx.clone())).collect(),
    );
    let proj_right = SimplicialMap::new_unchecked(
        complex.clone(),
        y.clone(),
        components.iter().map(|(c, (_, ry))| (c.clone(), ry.clone())).collect(),
    );
    Ok(Product { complex, proj_left, proj_right, components })
}

/// Normal form in `X × Y` of a componentwise pair of refs: factor out shared word
/// indices (each is a degeneracy direction of the pair), then name the residual
/// word-disjoint pair.
pub fn pair_normalize(
    x: &FiniteSimplicialSet,
    y: &FiniteSimplicialSet,
    mut rx: SimplexRef,
    mut ry: SimplexRef,
) -> Result<SimplexRef, KernelError> {
    let mut outer: Vec<usize> = Vec::new();
    loop {
        let shared =
            rx.word.ops().iter().copied().filter(|&i| ry.word.contains(i)).max();
        match shared {
            Some(i) => {
                // The pair equals s_i of its (i+1)-st face; factor and recurse.
                rx = x.face_ref(&rx, i + 1)?;
                ry = y.face_ref(&ry, i + 1)?;
                outer.push(i);
            }
            None => break,
        }
    }
    let mut out = SimplexRef::cell(pair_id(&rx, &ry));
    for &i in outer.iter().rev() {
        out = out.degenerate(i);
    }
    Ok(out)
}

/// Functorial action on products: the map `f × g` between two computed products.
pub fn product_map(
    f: &SimplicialMap,
    g: &SimplicialMap,
    source: &Product,
    target: &Product,
) -> Result<SimplicialMap, KernelError> {
    let mut assign: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
    for (c, (rx, ry)) in &source.components {
        let image =
            pair_normalize(f.target(), g.target(), f.apply(rx)?, g.apply(ry)?)?;
        assign.insert(c.clone(), image);
    }
    SimplicialMap::new(source.complex.clone(), target.complex.clone(), assign)
}
