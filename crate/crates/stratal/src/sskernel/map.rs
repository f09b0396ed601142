//! Simplicial maps between finite complexes, and monomorphism inclusions.

use std::collections::BTreeMap;

use super::{CellId, FiniteSimplicialSet, KernelError, SimplexRef};

/// A simplicial map, stored as the assignment of a target simplex to every
/// nondegenerate source cell.  Validation checks commutation with every face map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: FiniteSimplicialSet,
    target: FiniteSimplicialSet,
    assign: BTreeMap<CellId, SimplexRef>,
}

impl SimplicialMap {
    /// Builds and validates a map from an explicit assignment.
    pub fn new(
        source: FiniteSimplicialSet,
        target: FiniteSimplicialSet,
        assign: BTreeMap<CellId, SimplexRef>,
    ) -> Result<Self, KernelError> {
        let map = SimplicialMap { source, target, assign };
        map.validate()?;
        Ok(map)
    }

    /// Builds a map without validating; for internal construction sites that guarantee
    /// correctness structurally (they should still be covered by tests).
    pub fn new_unchecked(
        source: FiniteSimplicialSet,
        target: FiniteSimplicialSet,
        assign: BTreeMap<CellId, SimplexRef>,
    ) -> Self {
        SimplicialMap { source, target, assign }
    }

    pub fn identity(x: &FiniteSimplicialSet) -> Self {
        let assign =
            x.all_cells().map(|(c, _)| (c.clone(), SimplexRef::cell(c.clone()))).collect();
        SimplicialMap { source: x.clone(), target: x.clone(), assign }
    }

    /// The constant map at a vertex of the target.
    pub fn constant(
        source: &FiniteSimplicialSet,
        target: &FiniteSimplicialSet,
        vertex: &CellId,
    ) -> Result<Self, KernelError> {
        if target.cell_dim(vertex)? != 0 {
            return Err(KernelError::Parameter(format!("`{vertex}` is not a vertex")));
        }
        let assign = source
            .all_cells()
            .map(|(c, n)| {
                let mut r = SimplexRef::cell(vertex.clone());
                for i in 0..n {
                    r = r.degenerate(i);
                }
                (c.clone(), r)
            })
            .collect();
        Ok(SimplicialMap { source: source.clone(), target: target.clone(), assign })
    }

    /// For vertex-named source and target: the map determined by a vertex function, when
    /// it exists (every source cell's image tuple must name a simplex of the target).
    pub fn from_vertex_map(
        source: &FiniteSimplicialSet,
        target: &FiniteSimplicialSet,
        vertex_map: &BTreeMap<CellId, CellId>,
    ) -> Result<Self, KernelError> {
        let tuples = source.vertex_tuples();
        let mut assign = BTreeMap::new();
        for (c, _) in source.all_cells() {
            let image: Vec<CellId> = tuples[c]
                .iter()
                .map(|v| {
                    vertex_map
                        .get(v)
                        .cloned()
                        .ok_or_else(|| KernelError::UnknownCell(v.clone()))
                })
                .collect::<Result<_, _>>()?;
            assign.insert(c.clone(), target.ref_from_vertex_tuple(&image)?);
        }
        Ok(SimplicialMap { source: source.clone(), target: target.clone(), assign })
    }

    pub fn source(&self) -> &FiniteSimplicialSet {
        &self.source
    }

    pub fn target(&self) -> &FiniteSimplicialSet {
        &self.target
    }

    pub fn assign(&self) -> &BTreeMap<CellId, SimplexRef> {
        &self.assign
    }

    pub fn cell_image(&self, c: &CellId) -> Result<&SimplexRef, KernelError> {
        self.assign.get(c).ok_or_else(|| KernelError::UnknownCell(c.clone()))
    }

    /// Image of an arbitrary simplex: apply the assignment to the nondegenerate core and
    /// re-apply the degeneracy word, renormalizing.
    pub fn apply(&self, r: &SimplexRef) -> Result<SimplexRef, KernelError> {
        let mut out = self.cell_image(&r.target)?.clone();
        for &j in r.word.ops().iter().rev() {
            out = out.degenerate(j);
        }
        Ok(out)
    }

    /// Checks dimensions and commutation with every face map.
    pub fn validate(&self) -> Result<(), KernelError> {
        for (c, n) in self.source.all_cells() {
            let image = self.cell_image(c)?;
            if self.target.ref_dim(image)? != n {
                return Err(KernelError::NotSimplicial { cell: c.clone(), index: 0 });
            }
            if n == 0 {
                continue;
            }
            for i in 0..=n {
                let lhs = self.apply(&self.source.face_ref(&SimplexRef::cell(c.clone()), i)?)?;
                let rhs = self.target.face_ref(image, i)?;
                if lhs != rhs {
                    return Err(KernelError::NotSimplicial { cell: c.clone(), index: i });
                }
            }
        }
        Ok(())
    }

    /// Composite `other ∘ self` (self first).
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap, KernelError> {
        if self.target != other.source {
            return Err(KernelError::Composition(
                "middle objects of a composite do not agree".into(),
            ));
        }
        let assign = self
            .assign
            .iter()
            .map(|(c, r)| Ok((c.clone(), other.apply(r)?)))
            .collect::<Result<_, KernelError>>()?;
        Ok(SimplicialMap {
            source: self.source.clone(),
            target: other.target.clone(),
            assign,
        })
    }

    /// True when the assignment is injective on nondegenerate cells and sends every
    /// nondegenerate cell to a nondegenerate cell (identity words).
    pub fn is_mono(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.assign.values().all(|r| r.is_nondegenerate() && seen.insert(r.target.clone()))
    }

    /// The opposite map between the opposite complexes (cell ids preserved, degeneracy
    /// words transported).
    pub fn opposite(&self) -> SimplicialMap {
        let assign = self
            .assign
            .iter()
            .map(|(c, r)| (c.clone(), self.target.opposite_ref(r)))
            .collect();
        SimplicialMap {
            source: self.source.opposite(),
            target: self.target.opposite(),
            assign,
        }
    }

    /// True when the map is an isomorphism (mono + bijective on cells per dimension).
    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.source.cell_count() == self.target.cell_count()
    }
}

/// A monomorphism of finite simplicial sets: injective on cells, degenerate-free images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoInclusion(SimplicialMap);

impl MonoInclusion {
    pub fn new(map: SimplicialMap) -> Result<Self, KernelError> {
        if !map.is_mono() {
            return Err(KernelError::Parameter("map is not a monomorphism".into()));
        }
        Ok(MonoInclusion(map))
    }

    /// The inclusion of a subcomplex (cells of the source must exist in the target under
    /// the same ids).
    pub fn subcomplex_inclusion(
        sub: &FiniteSimplicialSet,
        ambient: &FiniteSimplicialSet,
    ) -> Result<Self, KernelError> {
        let assign = sub
            .all_cells()
            .map(|(c, _)| {
                if ambient.has_cell(c) {
                    Ok((c.clone(), SimplexRef::cell(c.clone())))
                } else {
                    Err(KernelError::UnknownCell(c.clone()))
                }
            })
            .collect::<Result<_, _>>()?;
        let map = SimplicialMap::new(sub.clone(), ambient.clone(), assign)?;
        MonoInclusion::new(map)
    }

    pub fn map(&self) -> &SimplicialMap {
        &self.0
    }

    pub fn into_map(self) -> SimplicialMap {
        self.0
    }

    pub fn source(&self) -> &FiniteSimplicialSet {
        self.0.source()
    }

    pub fn target(&self) -> &FiniteSimplicialSet {
        self.0.target()
    }
}
