//! The finite simplicial set type: nondegenerate cells, normalized face data, and the
//! ref-level face/degeneracy calculus built on top of it.

use std::collections::{BTreeMap, BTreeSet};

use super::{CellId, DegeneracyWord, KernelError, SimplexRef};

/// A finite simplicial set presented by its nondegenerate cells.
///
/// `cells[n]` is the set of nondegenerate `n`-cells; `faces[c]` lists the `n + 1` faces
/// of an `n`-cell `c` (for `n ≥ 1`) as [`SimplexRef`]s in normal form.  Degenerate
/// simplices are never stored; they are denoted by refs with nonempty words.
///
/// Two optional flags record provenance that some algorithms exploit:
/// `vertex_named` means every cell id is the `.`-joined tuple of its vertex ids (true for
/// standard complexes and 0-coskeletal skeleta), enabling vertex-tuple addressing;
/// `coskeletal0` means the complex is a skeleton of a 0-coskeleton, so maps into it are
/// freely determined by vertex images (extension checks short-circuit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSimplicialSet {
    cells: Vec<BTreeSet<CellId>>,
    faces: BTreeMap<CellId, Vec<SimplexRef>>,
    dim_of: BTreeMap<CellId, usize>,
    vertex_named: bool,
    coskeletal0: bool,
}

impl FiniteSimplicialSet {
    /// The empty simplicial set.
    pub fn empty() -> Self {
        FiniteSimplicialSet {
            cells: Vec::new(),
            faces: BTreeMap::new(),
            dim_of: BTreeMap::new(),
            vertex_named: false,
            coskeletal0: false,
        }
    }

    /// Adds a nondegenerate `dim`-cell with the given faces (must be empty for `dim = 0`).
    /// Faces must point at already-registered cells of the right dimensions; the full
    /// simplicial-identity check is done by [`FiniteSimplicialSet::validate`].
    pub fn add_cell(
        &mut self,
        id: CellId,
        dim: usize,
        faces: Vec<SimplexRef>,
    ) -> Result<(), KernelError> {
        if dim > 0 && faces.len() != dim + 1 {
            return Err(KernelError::FaceCount { cell: id, dim, faces: faces.len() });
        }
        if dim == 0 && !faces.is_empty() {
            return Err(KernelError::FaceCount { cell: id, dim, faces: faces.len() });
        }
        for (i, f) in faces.iter().enumerate() {
            let found = self.ref_dim(f)?;
            if found != dim - 1 {
                return Err(KernelError::FaceDim { cell: id, index: i, found, expected: dim - 1 });
            }
        }
        while self.cells.len() <= dim {
            self.cells.push(BTreeSet::new());
        }
        self.cells[dim].insert(id.clone());
        self.dim_of.insert(id.clone(), dim);
        if dim > 0 {
            self.faces.insert(id, faces);
        }
        Ok(())
    }

    pub fn set_vertex_named(&mut self, flag: bool) {
        self.vertex_named = flag;
    }

    pub fn set_coskeletal0(&mut self, flag: bool) {
        self.coskeletal0 = flag;
    }

    pub fn vertex_named(&self) -> bool {
        self.vertex_named
    }

    pub fn coskeletal0(&self) -> bool {
        self.coskeletal0
    }

    /// Maximal dimension carrying a nondegenerate cell (0 for the empty complex too).
    pub fn dim(&self) -> usize {
        self.cells.iter().rposition(|s| !s.is_empty()).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.dim_of.is_empty()
    }

    pub fn has_cell(&self, id: &CellId) -> bool {
        self.dim_of.contains_key(id)
    }

    pub fn cell_dim(&self, id: &CellId) -> Result<usize, KernelError> {
        self.dim_of.get(id).copied().ok_or_else(|| KernelError::UnknownCell(id.clone()))
    }

    /// Nondegenerate `n`-cells, in id order.
    pub fn cells(&self, n: usize) -> impl Iterator<Item = &CellId> {
        self.cells.get(n).into_iter().flatten()
    }

    pub fn cell_count(&self) -> usize {
        self.dim_of.len()
    }

    /// All nondegenerate cells in (dimension, id) order.
    pub fn all_cells(&self) -> impl Iterator<Item = (&CellId, usize)> {
        self.cells.iter().enumerate().flat_map(|(n, set)| set.iter().map(move |c| (c, n)))
    }

    /// The stored faces of a nondegenerate cell of positive dimension.
    pub fn cell_faces(&self, id: &CellId) -> Result<&[SimplexRef], KernelError> {
        let dim = self.cell_dim(id)?;
        if dim == 0 {
            return Err(KernelError::FaceIndex { index: 0, dim: 0 });
        }
        Ok(self.faces.get(id).expect("faces stored for every positive-dimensional cell"))
    }

    /// Dimension of an arbitrary simplex ref.
    pub fn ref_dim(&self, r: &SimplexRef) -> Result<usize, KernelError> {
        Ok(self.cell_dim(&r.target)? + r.word.len())
    }

    /// The `i`-th face of an arbitrary simplex, in normal form.  Pushes `d_i` through the
    /// degeneracy word with the simplicial identities, then reads stored face data.
    pub fn face_ref(&self, r: &SimplexRef, i: usize) -> Result<SimplexRef, KernelError> {
        let dim = self.ref_dim(r)?;
        if i > dim {
            return Err(KernelError::FaceIndex { index: i, dim });
        }
        match r.word.ops().first() {
            None => {
                if dim == 0 {
                    return Err(KernelError::FaceIndex { index: i, dim });
                }
                Ok(self.cell_faces(&r.target)?[i].clone())
            }
            Some(&j) => {
                let inner = SimplexRef {
                    word: DegeneracyWord::new(r.word.ops()[1..].to_vec(), self.cell_dim(&r.target)?)
                        .expect("suffix of a normal word is normal"),
                    target: r.target.clone(),
                };
                if i == j || i == j + 1 {
                    Ok(inner)
                } else if i < j {
                    Ok(self.face_ref(&inner, i)?.degenerate(j - 1))
                } else {
                    Ok(self.face_ref(&inner, i - 1)?.degenerate(j))
                }
            }
        }
    }

    /// The face of a simplex spanned by a subset of its vertex positions (sorted,
    /// nonempty): iterated face maps removing the complementary positions.
    pub fn multi_face(&self, r: &SimplexRef, keep: &[usize]) -> Result<SimplexRef, KernelError> {
        let dim = self.ref_dim(r)?;
        let mut out = r.clone();
        for i in (0..=dim).rev() {
            if !keep.contains(&i) {
                out = self.face_ref(&out, i)?;
            }
        }
        Ok(out)
    }

    /// All simplices of dimension `n` (degenerate included), in canonical order.
    pub fn refs_of_dim(&self, n: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for (cell, d) in self.all_cells() {
            if d > n {
                continue;
            }
            let k = n - d;
            let mut words = Vec::new();
            enumerate_words(k, d, &mut Vec::new(), &mut words);
            for w in words {
                out.push(SimplexRef {
                    word: DegeneracyWord::new(w, d).expect("enumerated words are normal"),
                    target: cell.clone(),
                });
            }
        }
        out.sort();
        out
    }

    /// Checks every simplicial identity `d_i d_j = d_{j-1} d_i` (`i < j`) on every cell.
    pub fn validate(&self) -> Result<(), KernelError> {
        for (cell, n) in self.all_cells() {
            if n < 2 {
                continue;
            }
            let top = SimplexRef::cell(cell.clone());
            for j in 1..=n {
                for i in 0..j {
                    let a = self.face_ref(&self.face_ref(&top, j)?, i)?;
                    let b = self.face_ref(&self.face_ref(&top, i)?, j - 1)?;
                    if a != b {
                        return Err(KernelError::SimplicialIdentity { cell: cell.clone(), i, j });
                    }
                }
            }
        }
        Ok(())
    }

    /// Vertex tuples of every nondegenerate cell, computed bottom-up: the tuple of a cell
    /// of dimension `n` is (first `n` vertices of `d_n`, last vertex of `d_0`).
    pub fn vertex_tuples(&self) -> BTreeMap<CellId, Vec<CellId>> {
        let mut tuples: BTreeMap<CellId, Vec<CellId>> = BTreeMap::new();
        for (cell, n) in self.all_cells() {
            if n == 0 {
                tuples.insert(cell.clone(), vec![cell.clone()]);
                continue;
            }
            let faces = &self.faces[cell];
            let mut tuple = expand_tuple(&tuples, &faces[n]);
            let last = expand_tuple(&tuples, &faces[0]);
            tuple.push(last.last().expect("nonempty tuple").clone());
            tuples.insert(cell.clone(), tuple);
        }
        tuples
    }

    /// Vertex tuple of an arbitrary simplex ref (degeneracies repeat vertices).
    pub fn vertex_tuple_of_ref(
        &self,
        tuples: &BTreeMap<CellId, Vec<CellId>>,
        r: &SimplexRef,
    ) -> Vec<CellId> {
        expand_tuple(tuples, r)
    }

    /// For vertex-named complexes: the unique simplex with the given vertex tuple, found
    /// by collapsing adjacent repeats into degeneracies.  Errors when the collapsed tuple
    /// does not name a cell.
    pub fn ref_from_vertex_tuple(&self, tuple: &[CellId]) -> Result<SimplexRef, KernelError> {
        if !self.vertex_named {
            return Err(KernelError::NotVertexNamed);
        }
        if let Some(i) = (0..tuple.len().saturating_sub(1)).find(|&i| tuple[i] == tuple[i + 1]) {
            let mut shorter = tuple.to_vec();
            shorter.remove(i + 1);
            return Ok(self.ref_from_vertex_tuple(&shorter)?.degenerate(i));
        }
        let id = CellId::new(
            tuple.iter().map(|v| v.as_str()).collect::<Vec<_>>().join("."),
        );
        if self.has_cell(&id) {
            Ok(SimplexRef::cell(id))
        } else {
            Err(KernelError::NoSuchTuple(tuple.iter().map(|v| v.to_string()).collect()))
        }
    }

    /// The subcomplex spanned by the given nondegenerate cells (closure under faces).
    pub fn subcomplex(&self, seed: &BTreeSet<CellId>) -> Result<FiniteSimplicialSet, KernelError> {
        let mut keep: BTreeSet<CellId> = BTreeSet::new();
        let mut stack: Vec<CellId> = seed.iter().cloned().collect();
        while let Some(c) = stack.pop() {
            if !keep.insert(c.clone()) {
                continue;
            }
            let dim = self.cell_dim(&c)?;
            if dim > 0 {
                for f in self.cell_faces(&c)? {
                    if !keep.contains(&f.target) {
                        stack.push(f.target.clone());
                    }
                }
            }
        }
        let mut out = FiniteSimplicialSet::empty();
        out.vertex_named = self.vertex_named;
        for (cell, n) in self.all_cells() {
            if !keep.contains(cell) {
                continue;
            }
            let faces = if n == 0 { Vec::new() } else { self.faces[cell].clone() };
            out.add_cell(cell.clone(), n, faces)?;
        }
        Ok(out)
    }

    /// The `k`-skeleton: keep nondegenerate cells of dimension ≤ `k`.
    pub fn skeleton(&self, k: usize) -> FiniteSimplicialSet {
        let seed: BTreeSet<CellId> =
            self.all_cells().filter(|&(_, n)| n <= k).map(|(c, _)| c.clone()).collect();
        self.subcomplex(&seed).expect("skeleton seeds are valid cells")
    }

    /// The opposite simplicial set: face order reversed.  Cell ids are preserved, but the
    /// vertex-naming and coskeletality flags are dropped (tuples reverse).
    pub fn opposite(&self) -> FiniteSimplicialSet {
        let mut out = FiniteSimplicialSet::empty();
        for (cell, n) in self.all_cells() {
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n).map(|i| self.opposite_ref(&self.faces[cell][n - i])).collect()
            };
            out.add_cell(cell.clone(), n, faces).expect("opposite preserves dimensions");
        }
        out
    }

    /// Ref transport along op: `s_j` acting in dimension `m` becomes `s_{m-j}`.
    pub fn opposite_ref(&self, r: &SimplexRef) -> SimplexRef {
        let d = self.cell_dim(&r.target).expect("ref targets a stored cell");
        let mut acc = SimplexRef::cell(r.target.clone());
        let ops = r.word.ops();
        let k = ops.len();
        for t in (0..k).rev() {
            // ops[t] acts on dimension d + (k - 1 - t).
            let m = d + (k - 1 - t);
            acc = acc.degenerate(m - ops[t]);
        }
        acc
    }
}

fn expand_tuple(tuples: &BTreeMap<CellId, Vec<CellId>>, r: &SimplexRef) -> Vec<CellId> {
    let mut tuple = tuples[&r.target].clone();
    for &j in r.word.ops().iter().rev() {
        let v = tuple[j].clone();
        tuple.insert(j, v);
    }
    tuple
}

/// All strictly decreasing admissible words of length `k` whose innermost operator acts
/// on dimension `d`: innermost index in `0..=d`, each next index strictly larger and
/// admissible for the grown dimension.
fn enumerate_words(k: usize, d: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if acc.len() == k {
        out.push(acc.iter().rev().cloned().collect());
        return;
    }
    // acc holds indices innermost-first; the next operator acts on dimension d + acc.len().
    let lo = acc.last().map(|&j| j + 1).unwrap_or(0);
    let hi = d + acc.len();
    for j in lo..=hi {
        acc.push(j);
        enumerate_words(k, d, acc, out);
        acc.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_enumeration_counts() {
        // Over a vertex there is exactly one degenerate simplex per dimension, with the
        // forced normal word [n-1, …, 1, 0].
        let mut out = Vec::new();
        enumerate_words(2, 0, &mut Vec::new(), &mut out);
        assert_eq!(out, vec![vec![1, 0]]);
        let mut out = Vec::new();
        enumerate_words(1, 1, &mut Vec::new(), &mut out);
        assert_eq!(out, vec![vec![0], vec![1]]);
        let mut out = Vec::new();
        enumerate_words(2, 1, &mut Vec::new(), &mut out);
        assert_eq!(out, vec![vec![1, 0], vec![2, 0], vec![2, 1]]);
    }
}
