//! Decorations on finite simplicial sets: markings (dimension 1), scalings
//! (dimension 2), stratifications (every positive dimension), and the marked-scaled
//! combination, together with the structure functors between them.
//!
//! Degenerate simplices always count as distinguished and are never stored; a
//! [`Decoration`] lists only nondegenerate distinguished cells, per dimension.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sskernel::{
    complex_from_json, complex_to_json, join, CellId, FiniteSimplicialSet, KernelError,
    SimplexRef, SimplicialMap,
};

/// Which dimensions a decoration may distinguish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecorationKind {
    /// Distinguished edges only.
    Marked,
    /// Distinguished ("thin") triangles only.
    Scaled,
    /// Distinguished simplices in every positive dimension.
    Stratified,
    /// A marking and a scaling together (the pair `(E, T)`).
    MarkedScaled,
}

impl DecorationKind {
    pub fn allows_dim(self, n: usize) -> bool {
        match self {
            DecorationKind::Marked => n == 1,
            DecorationKind::Scaled => n == 2,
            DecorationKind::Stratified => n >= 1,
            DecorationKind::MarkedScaled => n == 1 || n == 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DecorationKind::Marked => "marked",
            DecorationKind::Scaled => "scaled",
            DecorationKind::Stratified => "stratified",
            DecorationKind::MarkedScaled => "marked-scaled",
        }
    }

    pub fn parse(s: &str) -> Result<Self, StratError> {
        match s {
            "marked" => Ok(DecorationKind::Marked),
            "scaled" => Ok(DecorationKind::Scaled),
            "stratified" => Ok(DecorationKind::Stratified),
            "marked-scaled" => Ok(DecorationKind::MarkedScaled),
            _ => Err(StratError::UnknownKind(s.to_owned())),
        }
    }
}

#[derive(Debug, Error)]
pub enum StratError {
    #[error("unknown decoration kind `{0}`")]
    UnknownKind(String),
    #[error("kind {kind:?} does not distinguish cells in dimension {dim}")]
    DimNotAllowed { kind: DecorationKind, dim: usize },
    #[error("distinguished cell `{cell}` is not a cell of the carrier")]
    UnknownCell { cell: CellId },
    #[error("distinguished cell `{cell}` has dimension {found}, listed under {listed}")]
    WrongDim { cell: CellId, found: usize, listed: usize },
    #[error("decoration kinds do not match: {0:?} vs {1:?}")]
    KindMismatch(DecorationKind, DecorationKind),
    #[error("carriers of map and decorations disagree")]
    CarrierMismatch,
    #[error("map sends distinguished cell `{cell}` to an undistinguished simplex")]
    NotDecorated { cell: CellId },
    #[error("underlying simplicial map is not a monomorphism")]
    NotMono,
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// A decorated finite simplicial set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoration {
    carrier: FiniteSimplicialSet,
    kind: DecorationKind,
    marks: BTreeMap<usize, BTreeSet<CellId>>,
}

impl Decoration {
    /// Builds a decoration, validating that every listed cell exists, is nondegenerate
    /// (ids always refer to stored cells, which are nondegenerate by construction), has
    /// the dimension it is listed under, and that the kind allows that dimension.
    pub fn new(
        carrier: FiniteSimplicialSet,
        kind: DecorationKind,
        marks: BTreeMap<usize, BTreeSet<CellId>>,
    ) -> Result<Self, StratError> {
        let mut clean: BTreeMap<usize, BTreeSet<CellId>> = BTreeMap::new();
        for (&dim, cells) in &marks {
            if cells.is_empty() {
                continue;
            }
            if !kind.allows_dim(dim) {
                return Err(StratError::DimNotAllowed { kind, dim });
            }
            for c in cells {
                let found =
                    carrier.cell_dim(c).map_err(|_| StratError::UnknownCell { cell: c.clone() })?;
                if found != dim {
                    return Err(StratError::WrongDim { cell: c.clone(), found, listed: dim });
                }
            }
            clean.insert(dim, cells.clone());
        }
        Ok(Decoration { carrier, kind, marks: clean })
    }

    /// Nothing distinguished (beyond the implicit degenerates).
    pub fn flat(carrier: FiniteSimplicialSet, kind: DecorationKind) -> Self {
        Decoration { carrier, kind, marks: BTreeMap::new() }
    }

    /// Every triangle thin (scaled).
    pub fn sharp(carrier: FiniteSimplicialSet) -> Self {
        let marks = [(2, carrier.cells(2).cloned().collect::<BTreeSet<_>>())]
            .into_iter()
            .filter(|(_, s)| !s.is_empty())
            .collect();
        Decoration { carrier, kind: DecorationKind::Scaled, marks }
    }

    /// Every positive-dimensional simplex distinguished (stratified).
    pub fn sharp_stratified(carrier: FiniteSimplicialSet) -> Self {
        th_k(carrier, 0)
    }

    pub fn carrier(&self) -> &FiniteSimplicialSet {
        &self.carrier
    }

    pub fn kind(&self) -> DecorationKind {
        self.kind
    }

    pub fn marks(&self) -> &BTreeMap<usize, BTreeSet<CellId>> {
        &self.marks
    }

    pub fn marks_in_dim(&self, n: usize) -> impl Iterator<Item = &CellId> {
        self.marks.get(&n).into_iter().flatten()
    }

    pub fn is_marked_cell(&self, c: &CellId) -> bool {
        self.carrier
            .cell_dim(c)
            .ok()
            .and_then(|n| self.marks.get(&n))
            .is_some_and(|s| s.contains(c))
    }

    /// Distinguishedness of an arbitrary simplex: degenerates always count.
    pub fn is_distinguished(&self, r: &SimplexRef) -> bool {
        !r.is_nondegenerate() || self.is_marked_cell(&r.target)
    }

    /// Replaces the kind label, dropping marks in dimensions the new kind disallows.
    pub fn with_kind(&self, kind: DecorationKind) -> Self {
        let marks =
            self.marks.iter().filter(|(&d, _)| kind.allows_dim(d)).map(|(d, s)| (*d, s.clone()));
        Decoration { carrier: self.carrier.clone(), kind, marks: marks.collect() }
    }

    /// Restricts the decoration to a subcomplex (same cell ids): keeps exactly the marks
    /// whose cells the subcomplex contains.
    pub fn restricted_to(&self, sub: &FiniteSimplicialSet) -> Self {
        let marks = self
            .marks
            .iter()
            .map(|(d, cells)| {
                (*d, cells.iter().filter(|c| sub.has_cell(c)).cloned().collect())
            })
            .filter(|(_, s): &(usize, BTreeSet<CellId>)| !s.is_empty())
            .collect();
        Decoration { carrier: sub.clone(), kind: self.kind, marks }
    }

    /// The opposite decorated set: opposite carrier, same distinguished cell ids.
    pub fn opposite(&self) -> Decoration {
        Decoration { carrier: self.carrier.opposite(), kind: self.kind, marks: self.marks.clone() }
    }

    /// Adds marks (dims must be allowed by the kind).
    pub fn union_marks(
        &self,
        extra: &BTreeMap<usize, BTreeSet<CellId>>,
    ) -> Result<Self, StratError> {
        let mut marks = self.marks.clone();
        for (d, cells) in extra {
            marks.entry(*d).or_default().extend(cells.iter().cloned());
        }
        Decoration::new(self.carrier.clone(), self.kind, marks)
    }
}

/// `th_k`: distinguish exactly the simplices of dimension > k (stratified).
pub fn th_k(carrier: FiniteSimplicialSet, k: usize) -> Decoration {
    let mut marks: BTreeMap<usize, BTreeSet<CellId>> = BTreeMap::new();
    for (c, n) in carrier.all_cells() {
        if n > k {
            marks.entry(n).or_default().insert(c.clone());
        }
    }
    Decoration { carrier, kind: DecorationKind::Stratified, marks }
}

/// `**th**_k`: union an existing decoration with everything in dimension > k
/// (stratified output).
pub fn bold_th_k(dec: &Decoration, k: usize) -> Decoration {
    let mut out = th_k(dec.carrier.clone(), k);
    for (d, cells) in &dec.marks {
        out.marks.entry(*d).or_default().extend(cells.iter().cloned());
    }
    out
}

/// Embeds a scaling as a stratification (marks only in dimension 2).
pub fn iota(scaled: &Decoration) -> Result<Decoration, StratError> {
    if scaled.kind != DecorationKind::Scaled {
        return Err(StratError::KindMismatch(scaled.kind, DecorationKind::Scaled));
    }
    Ok(scaled.with_kind(DecorationKind::Stratified))
}

/// Keeps only the dimension-2 marks of a stratification; `underlying_scaled ∘ iota = id`.
pub fn underlying_scaled(strat: &Decoration) -> Result<Decoration, StratError> {
    if strat.kind != DecorationKind::Stratified {
        return Err(StratError::KindMismatch(strat.kind, DecorationKind::Stratified));
    }
    Ok(strat.with_kind(DecorationKind::Scaled))
}

/// Stratified join: carrier is the join, and a join cell is marked exactly when its
/// `X`-part or its `Y`-part is marked; the empty part never counts as marked.
pub fn join_stratified(x: &Decoration, y: &Decoration) -> Result<Decoration, StratError> {
    for d in [x, y] {
        if d.kind != DecorationKind::Stratified {
            return Err(StratError::KindMismatch(d.kind, DecorationKind::Stratified));
        }
    }
    let j = join(x.carrier(), y.carrier())?;
    let mut marks: BTreeMap<usize, BTreeSet<CellId>> = BTreeMap::new();
    for (c, n) in j.complex.all_cells() {
        if n == 0 {
            continue;
        }
        let marked = match &j.parts[c] {
            crate::sskernel::JoinPart::Left(cx) => x.is_marked_cell(cx),
            crate::sskernel::JoinPart::Right(cy) => y.is_marked_cell(cy),
            crate::sskernel::JoinPart::Pair(cx, cy) => {
                x.is_marked_cell(cx) || y.is_marked_cell(cy)
            }
        };
        if marked {
            marks.entry(n).or_default().insert(c.clone());
        }
    }
    Ok(Decoration { carrier: j.complex, kind: DecorationKind::Stratified, marks })
}

/// The marked core: the largest subcomplex all of whose edges are marked.
pub fn marked_core(x: &Decoration) -> Result<FiniteSimplicialSet, StratError> {
    let carrier = x.carrier();
    let mut keep: BTreeSet<CellId> = BTreeSet::new();
    'cells: for (c, n) in carrier.all_cells() {
        let top = SimplexRef::cell(c.clone());
        for pair in edge_positions(n) {
            let e = carrier.multi_face(&top, &pair)?;
            if !x.is_distinguished(&e) {
                continue 'cells;
            }
        }
        keep.insert(c.clone());
    }
    Ok(carrier.subcomplex(&keep)?)
}

/// The core of a scaled set: the largest subcomplex all of whose triangles are thin.
pub fn thin_core(x: &Decoration) -> Result<FiniteSimplicialSet, StratError> {
    let carrier = x.carrier();
    let mut keep: BTreeSet<CellId> = BTreeSet::new();
    'cells: for (c, n) in carrier.all_cells() {
        let top = SimplexRef::cell(c.clone());
        for triple in triangle_positions(n) {
            let t = carrier.multi_face(&top, &triple)?;
            if !x.is_distinguished(&t) {
                continue 'cells;
            }
        }
        keep.insert(c.clone());
    }
    Ok(carrier.subcomplex(&keep)?)
}

fn edge_positions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in (i + 1)..=n {
            out.push(vec![i, j]);
        }
    }
    out
}

fn triangle_positions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                out.push(vec![i, j, k]);
            }
        }
    }
    out
}

/// A simplicial map that preserves decorations: every distinguished source cell lands on
/// a distinguished simplex of the target (degenerates included).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedMap {
    map: SimplicialMap,
    source: Decoration,
    target: Decoration,
}

impl DecoratedMap {
    pub fn new(
        map: SimplicialMap,
        source: Decoration,
        target: Decoration,
    ) -> Result<Self, StratError> {
        if map.source() != source.carrier() || map.target() != target.carrier() {
            return Err(StratError::CarrierMismatch);
        }
        for (_, cells) in &source.marks {
            for c in cells {
                let image = map.cell_image(c)?;
                if !target.is_distinguished(image) {
                    return Err(StratError::NotDecorated { cell: c.clone() });
                }
            }
        }
        Ok(DecoratedMap { map, source, target })
    }

    /// Checks decoration preservation without erroring.
    pub fn preserves(map: &SimplicialMap, source: &Decoration, target: &Decoration) -> bool {
        source.marks.values().flatten().all(|c| {
            map.cell_image(c).map(|r| target.is_distinguished(r)).unwrap_or(false)
        })
    }

    pub fn map(&self) -> &SimplicialMap {
        &self.map
    }

    pub fn source(&self) -> &Decoration {
        &self.source
    }

    pub fn target(&self) -> &Decoration {
        &self.target
    }

    /// The opposite decorated map.
    pub fn opposite(&self) -> DecoratedMap {
        DecoratedMap {
            map: self.map.opposite(),
            source: self.source.opposite(),
            target: self.target.opposite(),
        }
    }
}

/// A decoration-preserving monomorphism: a [`DecoratedMap`] whose underlying simplicial
/// map is injective on cells with nondegenerate images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedInclusion(DecoratedMap);

impl DecoratedInclusion {
    pub fn new(inner: DecoratedMap) -> Result<Self, StratError> {
        if !inner.map().is_mono() {
            return Err(StratError::NotMono);
        }
        Ok(DecoratedInclusion(inner))
    }

    /// The inclusion of a decorated subcomplex into a decorated ambient complex, where
    /// the source decoration is the restriction of the target's.
    pub fn restriction_inclusion(
        sub: &FiniteSimplicialSet,
        ambient: &Decoration,
    ) -> Result<Self, StratError> {
        let incl = crate::sskernel::MonoInclusion::subcomplex_inclusion(sub, ambient.carrier())?;
        let source = ambient.restricted_to(sub);
        DecoratedInclusion::new(DecoratedMap::new(incl.into_map(), source, ambient.clone())?)
    }

    /// An identity-carrier inclusion that only adds decoration (source marks must be a
    /// subset of target marks).
    pub fn mark_extension(source: Decoration, target: Decoration) -> Result<Self, StratError> {
        let id = SimplicialMap::identity(source.carrier());
        DecoratedInclusion::new(DecoratedMap::new(id, source, target)?)
    }

    pub fn decorated(&self) -> &DecoratedMap {
        &self.0
    }

    pub fn map(&self) -> &SimplicialMap {
        self.0.map()
    }

    pub fn source(&self) -> &Decoration {
        self.0.source()
    }

    pub fn target(&self) -> &Decoration {
        self.0.target()
    }
}

/// Decoration JSON schema:
/// `{ "schema": 1, "complex": <complex>, "marks": {dim: [ids]}, "kind": … }`.
pub fn decoration_to_json(d: &Decoration) -> serde_json::Value {
    let marks: BTreeMap<String, Vec<String>> = d
        .marks
        .iter()
        .map(|(dim, cells)| {
            (dim.to_string(), cells.iter().map(|c| c.to_string()).collect())
        })
        .collect();
    serde_json::json!({
        "schema": 1,
        "complex": complex_to_json(d.carrier()),
        "marks": marks,
        "kind": d.kind().as_str(),
    })
}

pub fn decoration_from_json(v: &serde_json::Value) -> Result<Decoration, StratError> {
    let complex = complex_from_json(
        v.get("complex").ok_or_else(|| KernelError::Json("missing `complex`".into()))?,
    )?;
    let kind = DecorationKind::parse(
        v.get("kind").and_then(|k| k.as_str()).unwrap_or("stratified"),
    )?;
    let mut marks: BTreeMap<usize, BTreeSet<CellId>> = BTreeMap::new();
    if let Some(raw) = v.get("marks").and_then(|m| m.as_object()) {
        for (dim, cells) in raw {
            let dim: usize = dim
                .parse()
                .map_err(|_| KernelError::Json(format!("bad marks dimension `{dim}`")))?;
            let cells = cells
                .as_array()
                .ok_or_else(|| KernelError::Json("marks entries must be arrays".into()))?
                .iter()
                .map(|c| {
                    c.as_str()
                        .map(CellId::from)
                        .ok_or_else(|| KernelError::Json("mark ids must be strings".into()))
                })
                .collect::<Result<BTreeSet<_>, _>>()?;
            marks.insert(dim, cells);
        }
    }
    Decoration::new(complex, kind, marks)
}
