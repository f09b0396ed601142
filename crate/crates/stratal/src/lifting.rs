//! Bounded right-lifting-property checking and the fibrancy / fibration / cartesian-edge
//! predicates built on it.
//!
//! Every check is *bounded*: the caller supplies a dimension cutoff `n_max`, the report
//! records it, and a "pass" only certifies the property for generator instances within
//! the bound.  Counterexamples are always the first in canonical enumeration order, so
//! reports are deterministic.

use std::collections::BTreeMap;

use serde_json::json;

use crate::generators::{self, GenError, GeneratorInstance};
use crate::sskernel::{
    enumerate_maps_with, standard_complex, CellId, KernelError, SimplexRef, SimplicialMap,
    StandardKind,
};
use crate::strat::{Decoration, DecorationKind, DecoratedInclusion, DecoratedMap, StratError};

/// Outcome of a bounded check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub pass: bool,
    pub bound: usize,
    pub counterexample: Option<Counterexample>,
}

/// The first failing lifting problem, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Token of the generator (or named condition) that failed.
    pub generator: String,
    /// The unliftable map, as an assignment of cell ids to target simplex labels.
    pub map: BTreeMap<String, String>,
}

impl Report {
    pub fn pass(bound: usize) -> Self {
        Report { pass: true, bound, counterexample: None }
    }

    pub fn fail(bound: usize, generator: String, map: &SimplicialMap) -> Self {
        let assignment = map
            .assign()
            .iter()
            .map(|(c, r)| (c.to_string(), r.label()))
            .collect();
        Report {
            pass: false,
            bound,
            counterexample: Some(Counterexample { generator, map: assignment }),
        }
    }

    /// Merges sequential sub-reports: the first failure wins.
    pub fn and(self, other: Report) -> Report {
        if self.pass {
            other
        } else {
            self
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "verdict": if self.pass { "pass" } else { "fail" },
            "bound": self.bound,
            "counterexample": self.counterexample.as_ref().map(|c| json!({
                "generator": c.generator,
                "map": c.map,
            })),
        })
    }
}

/// All decorated maps `a → x` (no pins): simplicial maps whose distinguished cells land
/// on distinguished simplices.
pub fn decorated_maps(
    a: &Decoration,
    x: &Decoration,
) -> Result<Vec<SimplicialMap>, KernelError> {
    enumerate_maps_with(a.carrier(), x.carrier(), &BTreeMap::new(), &|c, r| {
        !a.is_marked_cell(c) || x.is_distinguished(r)
    })
}

/// All extensions of `f : A → X` along the decorated mono `i : A ↪ B`: decorated maps
/// `g : B → X` with `g ∘ i = f`, in canonical order.
pub fn extensions(
    f: &DecoratedMap,
    i: &DecoratedInclusion,
) -> Result<Vec<DecoratedMap>, StratError> {
    if i.source().kind() != f.source().kind() {
        return Err(StratError::KindMismatch(i.source().kind(), f.source().kind()));
    }
    if i.source().carrier() != f.source().carrier() {
        return Err(StratError::CarrierMismatch);
    }
    let maps = extensions_of(f.map(), i, f.target())?;
    maps.into_iter()
        .map(|m| DecoratedMap::new(m, i.target().clone(), f.target().clone()))
        .collect()
}

/// Extension search on raw maps: all `g : B → X` with `g ∘ i = f`, respecting the
/// decoration of `i.target()` against `x`.
fn extensions_of(
    f: &SimplicialMap,
    i: &DecoratedInclusion,
    x: &Decoration,
) -> Result<Vec<SimplicialMap>, KernelError> {
    let b = i.target();
    let mut pinned: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
    for (c, _) in i.source().carrier().all_cells() {
        let img = i.map().cell_image(c)?;
        debug_assert!(img.is_nondegenerate());
        pinned.insert(img.target.clone(), f.cell_image(c)?.clone());
    }
    enumerate_maps_with(b.carrier(), x.carrier(), &pinned, &|c, r| {
        !b.is_marked_cell(c) || x.is_distinguished(r)
    })
}

/// Bounded right lifting property of `x` against a generator list: every decorated map
/// from a generator source into `x` must extend along the generator.
pub fn has_rlp(
    x: &Decoration,
    family: &[GeneratorInstance],
    n_max: usize,
) -> Result<Report, StratError> {
    for g in family {
        if g.map.target().carrier().dim() > n_max {
            continue;
        }
        for f in decorated_maps(g.map.source(), x)? {
            if extensions_of(&f, &g.map, x)?.is_empty() {
                return Ok(Report::fail(n_max, g.token(), &f));
            }
        }
    }
    Ok(Report::pass(n_max))
}

/// Bounded relative lifting property of `p : X → Y` against a generator list: every
/// commutative square (f : A → X decorated, g : B → Y decorated, p∘f = g∘i) must admit a
/// decorated diagonal h : B → X with h∘i = f and p∘h = g.
pub fn has_rlp_rel(
    p: &DecoratedMap,
    family: &[GeneratorInstance],
    n_max: usize,
) -> Result<Report, StratError> {
    for gen in family {
        if gen.map.target().carrier().dim() > n_max {
            continue;
        }
        let a = gen.map.source();
        let b = gen.map.target();
        for f in decorated_maps(a, p.source())? {
            let pf = f.then(p.map())?;
            for g in extensions_of(&pf, &gen.map, p.target())? {
                if !relative_lift_exists(p, &gen.map, &f, &g)? {
                    return Ok(Report::fail(
                        n_max,
                        gen.token(),
                        &square_witness(a, b, &f, &g),
                    ));
                }
            }
        }
    }
    Ok(Report::pass(n_max))
}

/// A single assignment describing a failing square: top map on `A`-cells, bottom map on
/// `B`-cells prefixed with `bot:`.
fn square_witness(
    a: &Decoration,
    b: &Decoration,
    f: &SimplicialMap,
    g: &SimplicialMap,
) -> SimplicialMap {
    // Only used for reporting; pack both assignments into one map-shaped witness.
    let mut assign: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
    for (c, _) in a.carrier().all_cells() {
        if let Ok(r) = f.cell_image(c) {
            assign.insert(CellId::new(format!("top:{c}")), r.clone());
        }
    }
    for (c, _) in b.carrier().all_cells() {
        if let Ok(r) = g.cell_image(c) {
            assign.insert(CellId::new(format!("bot:{c}")), r.clone());
        }
    }
    SimplicialMap::new_unchecked(a.carrier().clone(), f.target().clone(), assign)
}

fn relative_lift_exists(
    p: &DecoratedMap,
    i: &DecoratedInclusion,
    f: &SimplicialMap,
    g: &SimplicialMap,
) -> Result<bool, KernelError> {
    let b = i.target();
    let x = p.source();
    let mut pinned: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
    for (c, _) in i.source().carrier().all_cells() {
        let img = i.map().cell_image(c)?;
        pinned.insert(img.target.clone(), f.cell_image(c)?.clone());
    }
    let lifts = enumerate_maps_with(b.carrier(), x.carrier(), &pinned, &|c, r| {
        let decorated = !b.is_marked_cell(c) || x.is_distinguished(r);
        let over = p
            .map()
            .apply(r)
            .ok()
            .and_then(|pr| g.cell_image(c).ok().map(|gr| pr == *gr))
            .unwrap_or(false);
        decorated && over
    })?;
    Ok(!lifts.is_empty())
}

/// Object-level fibrancy classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectClass {
    /// Lifting against the scaled anodyne generators.
    WeakInfBicat,
    /// 2-trivial saturated complicial set: complicial horns, the reduced thinness list,
    /// 2-trivializers, and saturation maps.
    Complicial2,
    /// Lifting against the k-trivializers.
    KTrivial(usize),
    /// Lifting against the saturation maps.
    Saturated,
}

impl ObjectClass {
    pub fn parse(s: &str) -> Option<ObjectClass> {
        match s {
            "weak_inf_bicat" => Some(ObjectClass::WeakInfBicat),
            "complicial2" => Some(ObjectClass::Complicial2),
            "saturated" => Some(ObjectClass::Saturated),
            _ => {
                let rest = s.strip_prefix("k_trivial")?;
                let digits: String = rest.chars().filter(|c| c.is_ascii_digit()).collect();
                digits.parse().ok().map(ObjectClass::KTrivial)
            }
        }
    }

    fn bundle(self, n_max: usize) -> Result<Vec<GeneratorInstance>, GenError> {
        match self {
            ObjectClass::WeakInfBicat => generators::family("scaled_S", n_max),
            ObjectClass::Complicial2 => {
                let mut out = generators::family("complicial", n_max)?;
                out.extend(generators::family("thinness_2trivial", n_max)?);
                out.extend(generators::family(&format!("trivializer({})", 2), n_max)?);
                out.extend(generators::family("saturation", n_max)?);
                Ok(out)
            }
            ObjectClass::KTrivial(k) => {
                generators::family(&format!("trivializer({k})"), n_max)
            }
            ObjectClass::Saturated => generators::family("saturation", n_max),
        }
    }
}

/// Runs `has_rlp` against the family bundle of the named class.
pub fn classify(
    x: &Decoration,
    class: ObjectClass,
    n_max: usize,
) -> Result<Report, GenError> {
    let bundle = class.bundle(n_max)?;
    Ok(has_rlp(x, &bundle, n_max)?)
}

/// The scaled outer-horn inclusion `(Λⁿₙ, {Δ^{0,n−1,n}}|) ⊆ (Δⁿ, {Δ^{0,n−1,n}})` used
/// by the cartesian-edge condition.
fn outer_horn(n: usize, kind: DecorationKind) -> Result<DecoratedInclusion, StratError> {
    use crate::sskernel::face_id;
    let dn = standard_complex(StandardKind::Simplex(n))?;
    let marks = [(2, [face_id(&[0, n - 1, n])].into_iter().collect())].into_iter().collect();
    let target = Decoration::new(dn, kind, marks)?;
    let horn = standard_complex(StandardKind::Horn(n, n))?;
    DecoratedInclusion::restriction_inclusion(&horn, &target)
}

/// Bounded p-cartesian test for an edge `e` of the source of `p` (degenerate refs
/// allowed): every outer-horn problem whose last edge is `e`, over every compatible
/// bottom map, must admit a lift, for all `2 ≤ n ≤ n_max`.
pub fn is_cartesian_edge(
    p: &DecoratedMap,
    e: &SimplexRef,
    n_max: usize,
) -> Result<Report, StratError> {
    use crate::sskernel::face_id;
    for n in 2..=n_max {
        let incl = outer_horn(n, p.source().kind())?;
        let mut pinned: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
        pinned.insert(face_id(&[n - 1, n]), e.clone());
        let horn_dec = incl.source();
        let x = p.source();
        let sigmas = enumerate_maps_with(horn_dec.carrier(), x.carrier(), &pinned, &|c, r| {
            !horn_dec.is_marked_cell(c) || x.is_distinguished(r)
        })?;
        for sigma in sigmas {
            let p_sigma = sigma.then(p.map())?;
            for g in extensions_of(&p_sigma, &incl, p.target())? {
                if !relative_lift_exists(p, &incl, &sigma, &g)? {
                    return Ok(Report::fail(n_max, format!("outer-horn:n={n}"), &sigma));
                }
            }
        }
    }
    Ok(Report::pass(n_max))
}

/// Map-level fibration classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapClass {
    WeakFib,
    OuterFib,
    OuterCartesian,
    OuterCocartesian,
}

impl MapClass {
    pub fn parse(s: &str) -> Option<MapClass> {
        match s {
            "weak_fib" => Some(MapClass::WeakFib),
            "outer_fib" => Some(MapClass::OuterFib),
            "outer_cartesian" => Some(MapClass::OuterCartesian),
            "outer_cocartesian" => Some(MapClass::OuterCocartesian),
            _ => None,
        }
    }
}

/// Thin-detection: every triangle of `X` whose image is thin must itself be thin (the
/// converse is the decoration-preservation already carried by `p`).
fn detects_thin(p: &DecoratedMap, n_max: usize) -> Report {
    for t in p.source().carrier().cells(2) {
        let image_thin = p
            .map()
            .cell_image(t)
            .map(|r| p.target().is_distinguished(r))
            .unwrap_or(false);
        if image_thin && !p.source().is_marked_cell(t) {
            let witness = SimplicialMap::new_unchecked(
                p.source().carrier().clone(),
                p.target().carrier().clone(),
                [(t.clone(), p.map().cell_image(t).cloned().expect("image exists"))]
                    .into_iter()
                    .collect(),
            );
            return Report::fail(n_max, "thin-detection".to_owned(), &witness);
        }
    }
    Report::pass(n_max)
}

/// The unscaled collapsed-horn generators of the outer-fibration condition, as flat
/// decorated monos on the underlying simplicial sets.
fn unscaled_collapsed(n_max: usize) -> Result<Vec<GeneratorInstance>, GenError> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        for (tag, h, edge) in
            [("collapsed0", 0usize, [0usize, 1]), ("collapsedN", n, [n - 1, n])]
        {
            let map =
                generators::collapsed_horn(n, h, edge, None, DecorationKind::Scaled)?;
            out.push(GeneratorInstance {
                family: format!("unscaled-{tag}"),
                params: vec![n as i64],
                map,
            });
        }
    }
    Ok(out)
}

/// Bounded classification of a map of decorated sets.
pub fn classify_map(
    p: &DecoratedMap,
    class: MapClass,
    n_max: usize,
) -> Result<Report, GenError> {
    match class {
        MapClass::WeakFib => {
            let bundle = generators::family("weak_fib", n_max)?;
            Ok(has_rlp_rel(p, &bundle, n_max)?)
        }
        MapClass::OuterFib => {
            let thin = detects_thin(p, n_max);
            let weak = classify_map(p, MapClass::WeakFib, n_max)?;
            // Forget the decorations for the underlying-set lifting condition.
            let p_flat = DecoratedMap::new(
                p.map().clone(),
                Decoration::flat(p.source().carrier().clone(), DecorationKind::Scaled),
                Decoration::flat(p.target().carrier().clone(), DecorationKind::Scaled),
            )
            .map_err(GenError::Strat)?;
            let collapsed = has_rlp_rel(&p_flat, &unscaled_collapsed(n_max)?, n_max)?;
            Ok(thin.and(weak).and(collapsed))
        }
        MapClass::OuterCartesian => {
            let outer = classify_map(p, MapClass::OuterFib, n_max)?;
            if !outer.pass {
                return Ok(outer);
            }
            Ok(cartesian_edge_supply(p, n_max)?)
        }
        MapClass::OuterCocartesian => classify_map(&p.opposite(), MapClass::OuterCartesian, n_max),
    }
}

/// For every edge of `Y` and every lift of its endpoint, some lift of the edge ending
/// there must be p-cartesian (bounded by `n_max`).
fn cartesian_edge_supply(p: &DecoratedMap, n_max: usize) -> Result<Report, StratError> {
    let x = p.source().carrier();
    let y = p.target().carrier();
    for e_y in y.refs_of_dim(1) {
        let end_y = y.face_ref(&e_y, 0)?;
        for x1 in x.cells(0) {
            let over = p.map().cell_image(x1)?;
            if *over != end_y {
                continue;
            }
            let mut found = false;
            for cand in x.refs_of_dim(1) {
                if p.map().apply(&cand)? != e_y {
                    continue;
                }
                if x.face_ref(&cand, 0)? != SimplexRef::cell(x1.clone()) {
                    continue;
                }
                if is_cartesian_edge(p, &cand, n_max)?.pass {
                    found = true;
                    break;
                }
            }
            if !found {
                let witness = SimplicialMap::new_unchecked(
                    y.clone(),
                    y.clone(),
                    [(CellId::new(format!("over:{x1}")), e_y.clone())].into_iter().collect(),
                );
                return Ok(Report::fail(n_max, "cartesian-edge-supply".to_owned(), &witness));
            }
        }
    }
    Ok(Report::pass(n_max))
}
