//! Decorated binary constructions and mapping-space models: scaled products, Gray
//! products, marked-scaled joins, pushout-products, slices, and the two models of the
//! mapping ∞-category between two vertices together with the comparison map between
//! them.
//!
//! Slices and mapping complexes are "simplicial families": their `n`-cells are maps out
//! of a shape that varies functorially with `[n]` (a prism `Δ¹ × Δⁿ` or a join
//! `Δⁿ ⋆ K`).  A shared builder turns such a family into a [`FiniteSimplicialSet`] in
//! normal form by testing degeneracy through the family's own structure maps.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::sskernel::{
    face_id, join, join_pair_ref, join_map, product, product_map, pushout, pushout_induced,
    standard_complex, CellId, FiniteSimplicialSet, Join, JoinPart, KernelError, Product,
    SimplexRef, SimplicialMap, StandardKind,
};
use crate::sskernel::enumerate_maps_with;
use crate::strat::{Decoration, DecorationKind, DecoratedInclusion, DecoratedMap, StratError};

fn simplex(n: usize) -> FiniteSimplicialSet {
    standard_complex(StandardKind::Simplex(n)).expect("standard simplex")
}

/// The coface `δ_i : Δ^{n-1} → Δⁿ` (skips vertex `i`).
fn coface(n: usize, i: usize) -> SimplicialMap {
    let vmap: BTreeMap<CellId, CellId> = (0..n)
        .map(|j| (face_id(&[j]), face_id(&[if j < i { j } else { j + 1 }])))
        .collect();
    SimplicialMap::from_vertex_map(&simplex(n - 1), &simplex(n), &vmap)
        .expect("cofaces of standard simplices exist")
}

/// The codegeneracy `σ_i : Δ^{n+1} → Δⁿ` (repeats vertex `i`).
fn codegeneracy(n: usize, i: usize) -> SimplicialMap {
    let vmap: BTreeMap<CellId, CellId> = (0..=n + 1)
        .map(|j| (face_id(&[j]), face_id(&[if j <= i { j } else { j - 1 }])))
        .collect();
    SimplicialMap::from_vertex_map(&simplex(n + 1), &simplex(n), &vmap)
        .expect("codegeneracies of standard simplices exist")
}

fn degenerate_at(v: &CellId, n: usize) -> SimplexRef {
    let mut r = SimplexRef::cell(v.clone());
    for i in 0..n {
        r = r.degenerate(i);
    }
    r
}

// ---------------------------------------------------------------------------
// Decorated products.
// ---------------------------------------------------------------------------

/// A product carrier with its decoration and the underlying product bookkeeping.
#[derive(Debug, Clone)]
pub struct DecoratedProduct {
    pub decoration: Decoration,
    pub product: Product,
}

/// The product of two equally-kinded decorations: a product cell is distinguished
/// exactly when both of its components are (degenerate components count).
pub fn product_decorated(
    x: &Decoration,
    y: &Decoration,
) -> Result<DecoratedProduct, StratError> {
    if x.kind() != y.kind() {
        return Err(StratError::KindMismatch(x.kind(), y.kind()));
    }
    let prod = product(x.carrier(), y.carrier())?;
    let mut marks: BTreeMap<usize, BTreeSet<CellId>> = BTreeMap::new();
    for (c, (rx, ry)) in &prod.components {
        let n = prod.complex.cell_dim(c)?;
        if !x.kind().allows_dim(n) {
            continue;
        }
        if x.is_distinguished(rx) && y.is_distinguished(ry) {
            marks.entry(n).or_default().insert(c.clone());
        }
    }
    let decoration = Decoration::new(prod.complex.clone(), x.kind(), marks)?;
    Ok(DecoratedProduct { decoration, product: prod })
}

/// The scaled product: thinness is componentwise.
pub fn product_scaled(x: &Decoration, y: &Decoration) -> Result<DecoratedProduct, StratError> {
    for d in [x, y] {
        if d.kind() != DecorationKind::Scaled {
            return Err(StratError::KindMismatch(d.kind(), DecorationKind::Scaled));
        }
    }
    product_decorated(x, y)
}

/// The Gray product of two plain simplicial sets: carrier `K × L`, and a triangle is
/// thin exactly when its images in both factors are degenerate and, in addition, its
/// `Δ^{1,2}`-edge is degenerate in `K` or its `Δ^{0,1}`-edge is degenerate in `L`.
pub fn gray_product(
    k: &FiniteSimplicialSet,
    l: &FiniteSimplicialSet,
) -> Result<DecoratedProduct, StratError> {
    let prod = product(k, l)?;
    let mut thin: BTreeSet<CellId> = BTreeSet::new();
    for (c, (rk, rl)) in &prod.components {
        if prod.complex.cell_dim(c)? != 2 {
            continue;
        }
        if rk.is_nondegenerate() || rl.is_nondegenerate() {
            continue;
        }
        let last_in_k = k.face_ref(rk, 0)?; // the Δ^{1,2}-edge
        let first_in_l = l.face_ref(rl, 2)?; // the Δ^{0,1}-edge
        if !last_in_k.is_nondegenerate() || !first_in_l.is_nondegenerate() {
            thin.insert(c.clone());
        }
    }
    let marks = if thin.is_empty() {
        BTreeMap::new()
    } else {
        [(2, thin)].into_iter().collect()
    };
    let decoration = Decoration::new(prod.complex.clone(), DecorationKind::Scaled, marks)?;
    Ok(DecoratedProduct { decoration, product: prod })
}

// ---------------------------------------------------------------------------
// Marked-scaled joins.
// ---------------------------------------------------------------------------

/// A join carrier with its scaling and the underlying join bookkeeping.
#[derive(Debug, Clone)]
pub struct DecoratedJoin {
    pub decoration: Decoration,
    pub join: Join,
}

/// The join of a marked-scaled set `Z` with a scaled set `K`: the thin triangles are
/// `T_Z ⊔ [E_Z × K₀] ⊔ ∅ ⊔ T_K` under the decomposition of `(Z ⋆ K)₂` by parts.
pub fn join_marked_scaled(
    z: &Decoration,
    k: &Decoration,
) -> Result<DecoratedJoin, StratError> {
    if z.kind() != DecorationKind::MarkedScaled {
        return Err(StratError::KindMismatch(z.kind(), DecorationKind::MarkedScaled));
    }
    if k.kind() != DecorationKind::Scaled {
        return Err(StratError::KindMismatch(k.kind(), DecorationKind::Scaled));
    }
    let j = join(z.carrier(), k.carrier())?;
    let mut thin: BTreeSet<CellId> = BTreeSet::new();
    for (c, part) in &j.parts {
        if j.complex.cell_dim(c)? != 2 {
            continue;
        }
        let is_thin = match part {
            JoinPart::Left(cz) => z.is_marked_cell(cz),
            JoinPart::Right(ck) => k.is_marked_cell(ck),
            JoinPart::Pair(cz, ck) => {
                // A pair triangle is (edge of Z, vertex of K) or (vertex of Z, edge
                // of K); only the former can be thin, via the marking of Z.
                z.carrier().cell_dim(cz)? == 1
                    && k.carrier().cell_dim(ck)? == 0
                    && z.is_marked_cell(cz)
            }
        };
        if is_thin {
            thin.insert(c.clone());
        }
    }
    let marks = if thin.is_empty() {
        BTreeMap::new()
    } else {
        [(2, thin)].into_iter().collect()
    };
    let decoration = Decoration::new(j.complex.clone(), DecorationKind::Scaled, marks)?;
    Ok(DecoratedJoin { decoration, join: j })
}

// ---------------------------------------------------------------------------
// Pushout-products.
// ---------------------------------------------------------------------------

/// The pushout-product `i □ j` of two decorated monos: the induced inclusion
/// `(A×D) ⨿_{A×C} (B×C) ↪ B×D`, with product decorations on both sides (a pushout
/// cell is distinguished when one of its representatives is).
pub fn pushout_product(
    i: &DecoratedInclusion,
    j: &DecoratedInclusion,
) -> Result<DecoratedInclusion, StratError> {
    if i.source().kind() != j.source().kind() {
        return Err(StratError::KindMismatch(i.source().kind(), j.source().kind()));
    }
    let (a, b) = (i.source(), i.target());
    let (c, d) = (j.source(), j.target());
    let p_ac = product(a.carrier(), c.carrier())?;
    let p_ad = product_decorated(a, d)?;
    let p_bc = product_decorated(b, c)?;
    let p_bd = product_decorated(b, d)?;
    let id_a = SimplicialMap::identity(a.carrier());
    let id_b = SimplicialMap::identity(b.carrier());
    let id_c = SimplicialMap::identity(c.carrier());
    let id_d = SimplicialMap::identity(d.carrier());
    let f1 = product_map(&id_a, j.map(), &p_ac, &p_ad.product)?;
    let f2 = product_map(i.map(), &id_c, &p_ac, &p_bc.product)?;
    let corner = pushout(&f1, &f2)?;
    let u = product_map(i.map(), &id_d, &p_ad.product, &p_bd.product)?;
    let v = product_map(&id_b, j.map(), &p_bc.product, &p_bd.product)?;
    let induced = pushout_induced(&corner, &u, &v)?;

    // Corner decoration: a nondegenerate class is distinguished when some
    // nondegenerate representative from either leg is.
    let mut marks: BTreeMap<usize, BTreeSet<CellId>> = BTreeMap::new();
    for (leg, dec) in [(&corner.from_left, &p_ad.decoration), (&corner.from_right, &p_bc.decoration)]
    {
        for (cell, n) in leg.source().all_cells() {
            if !dec.is_marked_cell(cell) {
                continue;
            }
            let img = leg.cell_image(cell)?;
            if img.is_nondegenerate() {
                marks.entry(n).or_default().insert(img.target.clone());
            }
        }
    }
    let source = Decoration::new(corner.complex.clone(), i.source().kind(), marks)?;
    DecoratedInclusion::new(DecoratedMap::new(induced, source, p_bd.decoration)?)
}

// ---------------------------------------------------------------------------
// Simplicial families.
// ---------------------------------------------------------------------------

type FamilyKey = Vec<(CellId, SimplexRef)>;

fn family_key(m: &SimplicialMap) -> FamilyKey {
    m.assign().iter().map(|(c, r)| (c.clone(), r.clone())).collect()
}

/// A simplicial set whose `n`-cells are maps out of a varying shape, rebuilt in normal
/// form.  `witnesses` recovers the defining map of every nondegenerate cell;
/// `normalize` finds the normal-form ref of an arbitrary family member.
pub struct FamilyComplex {
    pub complex: FiniteSimplicialSet,
    pub witnesses: BTreeMap<CellId, SimplicialMap>,
    normal: Vec<HashMap<FamilyKey, SimplexRef>>,
}

impl FamilyComplex {
    pub fn normalize(&self, n: usize, m: &SimplicialMap) -> Option<&SimplexRef> {
        self.normal.get(n)?.get(&family_key(m))
    }
}

/// Builds the complex of a simplicial family.  `levels[n]` lists all abstract
/// `n`-simplices (closed under the family's faces and degeneracies within the listed
/// range); `face(n, σ, i)` and `degen(n, σ, i)` are the structure maps.  A simplex `σ`
/// is degenerate exactly when `σ = s_i(d_i σ)` for some `i`, which the builder tests
/// directly.
pub(crate) fn build_family(
    prefix: &str,
    levels: &[Vec<SimplicialMap>],
    face: &dyn Fn(usize, &SimplicialMap, usize) -> Result<SimplicialMap, KernelError>,
    degen: &dyn Fn(usize, &SimplicialMap, usize) -> Result<SimplicialMap, KernelError>,
) -> Result<FamilyComplex, KernelError> {
    let mut complex = FiniteSimplicialSet::empty();
    let mut witnesses = BTreeMap::new();
    let mut normal: Vec<HashMap<FamilyKey, SimplexRef>> = Vec::new();
    for (n, level) in levels.iter().enumerate() {
        normal.push(HashMap::new());
        let mut fresh = 0usize;
        for sigma in level {
            let key = family_key(sigma);
            if normal[n].contains_key(&key) {
                continue;
            }
            let mut witness_of_degeneracy = None;
            for i in 0..n {
                let tau = face(n, sigma, i)?;
                if degen(n - 1, &tau, i)? == *sigma {
                    witness_of_degeneracy = Some((i, tau));
                    break;
                }
            }
            let r = match witness_of_degeneracy {
                Some((i, tau)) => {
                    let lower = normal[n - 1]
                        .get(&family_key(&tau))
                        .ok_or_else(|| {
                            KernelError::Parameter(
                                "family levels are not closed under faces".into(),
                            )
                        })?
                        .clone();
                    lower.degenerate(i)
                }
                None => {
                    let id = CellId::new(format!("{prefix}{n}.{fresh}"));
                    fresh += 1;
                    let faces = if n == 0 {
                        Vec::new()
                    } else {
                        (0..=n)
                            .map(|i| {
                                let tau = face(n, sigma, i)?;
                                normal[n - 1]
                                    .get(&family_key(&tau))
                                    .cloned()
                                    .ok_or_else(|| {
                                        KernelError::Parameter(
                                            "family levels are not closed under faces".into(),
                                        )
                                    })
                            })
                            .collect::<Result<Vec<_>, _>>()?
                    };
                    complex.add_cell(id.clone(), n, faces)?;
                    witnesses.insert(id.clone(), sigma.clone());
                    SimplexRef::cell(id)
                }
            };
            normal[n].insert(key, r);
        }
    }
    complex.validate()?;
    Ok(FamilyComplex { complex, witnesses, normal })
}

// ---------------------------------------------------------------------------
// Slices.
// ---------------------------------------------------------------------------

/// A slice `X_{/f}`, truncated at the requested dimension.
pub struct Slice {
    /// The marked-scaled decoration of the slice carrier.
    pub decoration: Decoration,
    /// The projection to `X` (restriction to the `Δⁿ` part).
    pub projection: SimplicialMap,
    /// Defining map `Δⁿ ⋆ K → X` of every nondegenerate cell.
    pub witnesses: BTreeMap<CellId, SimplicialMap>,
    /// The join shapes `Δⁿ ⋆ K` for `n ≤ n_max`.
    pub joins: Vec<Join>,
    pub family: FamilyComplex,
}

/// The slice of a scaled set `X` under `f : (K, T_K) → X`: its `n`-cells are the scaled
/// maps `(Δⁿ ⋆ K, T_{Δⁿ⋆K}) → X` extending `f`, computed up to dimension `n_max`.  An
/// edge is marked when the map stays scaled after marking the `Δ¹` factor; a triangle
/// is thin when the map stays scaled after scaling the `Δ²` factor.
pub fn slice(x: &Decoration, f: &DecoratedMap, n_max: usize) -> Result<Slice, StratError> {
    if x.kind() != DecorationKind::Scaled {
        return Err(StratError::KindMismatch(x.kind(), DecorationKind::Scaled));
    }
    if f.target() != x {
        return Err(StratError::CarrierMismatch);
    }
    let k = f.source().carrier().clone();
    let mut joins = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        joins.push(join(&simplex(n), &k)?);
    }
    // The K-part of every level is pinned to f.
    let mut levels: Vec<Vec<SimplicialMap>> = Vec::with_capacity(n_max + 1);
    for jn in joins.iter() {
        let mut pinned: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
        for (c, _) in k.all_cells() {
            let inr = jn.incl_right.cell_image(c)?;
            pinned.insert(inr.target.clone(), f.map().cell_image(c)?.clone());
        }
        levels.push(enumerate_maps_with(&jn.complex, x.carrier(), &pinned, &|_, _| true)?);
    }
    let id_k = SimplicialMap::identity(&k);
    let face = |n: usize, sigma: &SimplicialMap, i: usize| {
        join_map(&coface(n, i), &id_k, &joins[n - 1], &joins[n])?.then(sigma)
    };
    let degen = |n: usize, sigma: &SimplicialMap, i: usize| {
        join_map(&codegeneracy(n, i), &id_k, &joins[n + 1], &joins[n])?.then(sigma)
    };
    let family = build_family("sl", &levels, &face, &degen)?;

    // Marking and scaling.
    let k_vertices: Vec<CellId> = k.cells(0).cloned().collect();
    let mut marks: BTreeMap<usize, BTreeSet<CellId>> = BTreeMap::new();
    for (c, n) in family.complex.all_cells() {
        let g = &family.witnesses[c];
        match n {
            1 => {
                // Marked: every pair triangle (Δ¹-edge, vertex of K) must land thin.
                let edge = SimplexRef::cell(face_id(&[0, 1]));
                let all_thin = k_vertices.iter().all(|kv| {
                    let tri = join_pair_ref(&edge, &SimplexRef::cell(kv.clone()), &simplex(1));
                    g.apply(&tri).map(|r| x.is_distinguished(&r)).unwrap_or(false)
                });
                if all_thin {
                    marks.entry(1).or_default().insert(c.clone());
                }
            }
            2 => {
                // Thin: the pure Δ²-part must land thin.
                let top = joins[2].incl_left.cell_image(&face_id(&[0, 1, 2]))?;
                if x.is_distinguished(&g.apply(top)?) {
                    marks.entry(2).or_default().insert(c.clone());
                }
            }
            _ => {}
        }
    }
    let decoration =
        Decoration::new(family.complex.clone(), DecorationKind::MarkedScaled, marks)?;

    // Projection: restrict each witness to the Δⁿ part.
    let mut proj_assign: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
    for (c, n) in family.complex.all_cells() {
        let top: Vec<usize> = (0..=n).collect();
        let inl = joins[n].incl_left.cell_image(&face_id(&top))?;
        proj_assign.insert(c.clone(), family.witnesses[c].apply(inl)?);
    }
    let projection =
        SimplicialMap::new(family.complex.clone(), x.carrier().clone(), proj_assign)?;
    let witnesses = family.witnesses.clone();
    Ok(Slice { decoration, projection, witnesses, joins, family })
}

// ---------------------------------------------------------------------------
// Mapping complexes.
// ---------------------------------------------------------------------------

/// A marked mapping complex between two vertices, with the defining map of every
/// nondegenerate cell.
pub struct Hom {
    pub decoration: Decoration,
    pub witnesses: BTreeMap<CellId, SimplicialMap>,
}

struct GrayHomData {
    decoration: Decoration,
    family: FamilyComplex,
    prisms: Vec<DecoratedProduct>,
}

fn hom_gray_internal(
    c: &Decoration,
    x: &CellId,
    y: &CellId,
    n_max: usize,
) -> Result<GrayHomData, StratError> {
    if c.kind() != DecorationKind::Scaled {
        return Err(StratError::KindMismatch(c.kind(), DecorationKind::Scaled));
    }
    let d1 = simplex(1);
    let mut prisms = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        prisms.push(gray_product(&d1, &simplex(n))?);
    }
    let (left0, left1) = (face_id(&[0]), face_id(&[1]));
    let mut levels: Vec<Vec<SimplicialMap>> = Vec::with_capacity(n_max + 1);
    for pn in prisms.iter() {
        let mut pinned: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
        for (cell, (rl, _)) in &pn.product.components {
            let d = pn.product.complex.cell_dim(cell)?;
            if rl.target == left0 {
                pinned.insert(cell.clone(), degenerate_at(x, d));
            } else if rl.target == left1 {
                pinned.insert(cell.clone(), degenerate_at(y, d));
            }
        }
        let thin: BTreeSet<CellId> = pn.decoration.marks_in_dim(2).cloned().collect();
        let cell_ok = move |cell: &CellId, r: &SimplexRef| -> bool {
            !thin.contains(cell) || c.is_distinguished(r)
        };
        levels.push(enumerate_maps_with(
            &pn.product.complex,
            c.carrier(),
            &pinned,
            &cell_ok,
        )?);
    }
    let id_d1 = SimplicialMap::identity(&d1);
    let face = |n: usize, sigma: &SimplicialMap, i: usize| {
        product_map(&id_d1, &coface(n, i), &prisms[n - 1].product, &prisms[n].product)?
            .then(sigma)
    };
    let degen = |n: usize, sigma: &SimplicialMap, i: usize| {
        product_map(&id_d1, &codegeneracy(n, i), &prisms[n + 1].product, &prisms[n].product)?
            .then(sigma)
    };
    let family = build_family("hg", &levels, &face, &degen)?;

    // Marking: an edge is marked when both nondegenerate triangles of its Δ¹×Δ¹ land
    // thin.
    let square_triangles: Vec<CellId> = prisms[1].product.complex.cells(2).cloned().collect();
    let mut marked: BTreeSet<CellId> = BTreeSet::new();
    for (cell, n) in family.complex.all_cells() {
        if n != 1 {
            continue;
        }
        let g = &family.witnesses[cell];
        if square_triangles
            .iter()
            .all(|t| g.cell_image(t).map(|r| c.is_distinguished(r)).unwrap_or(false))
        {
            marked.insert(cell.clone());
        }
    }
    let marks = if marked.is_empty() {
        BTreeMap::new()
    } else {
        [(1, marked)].into_iter().collect()
    };
    let decoration = Decoration::new(family.complex.clone(), DecorationKind::Marked, marks)?;
    Ok(GrayHomData { decoration, family, prisms })
}

/// The marked mapping complex `Hom(x, y)` modeled by Gray prisms: `n`-cells are scaled
/// maps `Δ¹ ×_gr Δⁿ → C` constant on `x` at one end and `y` at the other; an edge is
/// marked when both triangles of its square land thin.  Computed up to `n_max`.
pub fn hom_gray(
    c: &Decoration,
    x: &CellId,
    y: &CellId,
    n_max: usize,
) -> Result<Hom, StratError> {
    let data = hom_gray_internal(c, x, y, n_max)?;
    Ok(Hom { decoration: data.decoration, witnesses: data.family.witnesses })
}

struct SliceHomData {
    decoration: Decoration,
    witnesses: BTreeMap<CellId, SimplicialMap>,
    joins: Vec<Join>,
}

fn hom_slice_internal(
    c: &Decoration,
    x: &CellId,
    y: &CellId,
    n_max: usize,
) -> Result<SliceHomData, StratError> {
    let point = simplex(0);
    let k_dec = Decoration::flat(point.clone(), DecorationKind::Scaled);
    let const_y = DecoratedMap::new(
        SimplicialMap::constant(&point, c.carrier(), y)?,
        k_dec,
        c.clone(),
    )?;
    let sl = slice(c, &const_y, n_max)?;
    // Fiber over x: cells whose projection is totally degenerate at x.
    let keep: BTreeSet<CellId> = sl
        .decoration
        .carrier()
        .all_cells()
        .filter(|(cell, _)| {
            sl.projection.cell_image(cell).map(|r| r.target == *x).unwrap_or(false)
        })
        .map(|(cell, _)| cell.clone())
        .collect();
    let carrier = sl.decoration.carrier().subcomplex(&keep)?;
    let decoration = sl.decoration.restricted_to(&carrier).with_kind(DecorationKind::Marked);
    let witnesses = sl
        .witnesses
        .into_iter()
        .filter(|(cell, _)| carrier.has_cell(cell))
        .collect();
    Ok(SliceHomData { decoration, witnesses, joins: sl.joins })
}

/// The marked mapping complex `Hom^▷(x, y)`: the fiber over `x` of the slice of `C`
/// under `y`, with its marking.  Computed up to `n_max`.
pub fn hom_slice(
    c: &Decoration,
    x: &CellId,
    y: &CellId,
    n_max: usize,
) -> Result<Hom, StratError> {
    let data = hom_slice_internal(c, x, y, n_max)?;
    Ok(Hom { decoration: data.decoration, witnesses: data.witnesses })
}

/// The comparison map `Hom^▷(x, y) → Hom(x, y)` together with the marked-edge
/// detection verdict.
pub struct HomComparison {
    pub map: DecoratedMap,
    /// Whether every edge whose image is marked is itself marked.
    pub detects_marked: bool,
}

/// Builds the comparison map induced by the prism-to-cone projection
/// `Δ¹ × Δⁿ → Δ^{n+1}` sending `(i, 0) ↦ i` and `(i, 1) ↦ n+1`.
pub fn hom_comparison(
    c: &Decoration,
    x: &CellId,
    y: &CellId,
    n_max: usize,
) -> Result<HomComparison, StratError> {
    let hs = hom_slice_internal(c, x, y, n_max)?;
    let hg = hom_gray_internal(c, x, y, n_max)?;
    let mut assign: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
    for (cell, n) in hs.decoration.carrier().all_cells() {
        let witness = &hs.witnesses[cell];
        // q : Δ¹ × Δⁿ → Δ^{n+1}, (i, 0) ↦ i and (i, 1) ↦ n+1.
        let mut vmap: BTreeMap<CellId, CellId> = BTreeMap::new();
        for (pc, (rl, rr)) in &hg.prisms[n].product.components {
            if hg.prisms[n].product.complex.cell_dim(pc)? != 0 {
                continue;
            }
            let image = if rl.target == face_id(&[0]) {
                rr.target.clone()
            } else {
                face_id(&[n + 1])
            };
            vmap.insert(pc.clone(), image);
        }
        let q = SimplicialMap::from_vertex_map(
            &hg.prisms[n].product.complex,
            &simplex(n + 1),
            &vmap,
        )?;
        // ι : Δ^{n+1} ≅ Δⁿ ⋆ Δ⁰.
        let jn = &hs.joins[n];
        let dn1 = simplex(n + 1);
        let tuples = dn1.vertex_tuples();
        let mut iota_assign: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
        for (sc, _) in dn1.all_cells() {
            let verts: Vec<usize> = tuples[sc]
                .iter()
                .map(|v| v.as_str().parse::<usize>().expect("standard vertex name"))
                .collect();
            let has_cone = verts.contains(&(n + 1));
            let base: Vec<usize> = verts.iter().copied().filter(|&v| v <= n).collect();
            let image = if !has_cone {
                jn.incl_left.cell_image(&face_id(&base))?.clone()
            } else if base.is_empty() {
                jn.incl_right.cell_image(&face_id(&[0]))?.clone()
            } else {
                join_pair_ref(
                    &SimplexRef::cell(face_id(&base)),
                    &SimplexRef::cell(face_id(&[0])),
                    &simplex(n),
                )
            };
            iota_assign.insert(sc.clone(), image);
        }
        let iota = SimplicialMap::new(dn1, jn.complex.clone(), iota_assign)?;
        let composite = q.then(&iota)?.then(witness)?;
        let image = hg.family.normalize(n, &composite).ok_or_else(|| {
            KernelError::Parameter("comparison image escaped the mapping family".into())
        })?;
        assign.insert(cell.clone(), image.clone());
    }
    let map = SimplicialMap::new(
        hs.decoration.carrier().clone(),
        hg.decoration.carrier().clone(),
        assign,
    )?;
    let detects_marked = hs.decoration.carrier().cells(1).all(|e| {
        let image_marked =
            map.cell_image(e).map(|r| hg.decoration.is_distinguished(r)).unwrap_or(false);
        !image_marked || hs.decoration.is_marked_cell(e)
    });
    let map = DecoratedMap::new(map, hs.decoration, hg.decoration)?;
    Ok(HomComparison { map, detects_marked })
}
