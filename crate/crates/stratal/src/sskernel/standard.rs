//! Standard complexes: simplices, boundaries, horns, faces, points.
//!
//! Cells are named by their vertex subsets, `.`-joined (`"0.2.3"` is the face spanned by
//! vertices 0, 2, 3), so all standard complexes are vertex-named.

use std::collections::BTreeSet;

use itertools::Itertools;

use super::{CellId, FiniteSimplicialSet, KernelError, SimplexRef};

/// The named subcomplexes of a standard simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardKind {
    /// The full `n`-simplex.
    Simplex(usize),
    /// Its boundary `∂Δⁿ`.
    Boundary(usize),
    /// The horn `Λⁿᵢ`: all codimension-1 faces containing vertex `i`.
    Horn(usize, usize),
    /// The face of `Δⁿ` spanned by a nonempty vertex subset.
    Face(BTreeSet<usize>),
    /// The point `Δ⁰`.
    Point,
}

/// Id of the face of a standard simplex spanned by a set of vertices.
pub fn face_id(vertices: &[usize]) -> CellId {
    CellId::new(vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("."))
}

/// Builds the named subcomplex of `Δⁿ` with canonical vertex-subset cell ids.
pub fn standard_complex(kind: StandardKind) -> Result<FiniteSimplicialSet, KernelError> {
    let (n, keep): (usize, Box<dyn Fn(&[usize]) -> bool>) = match kind {
        StandardKind::Point => (0, Box::new(|_| true)),
        StandardKind::Simplex(n) => (n, Box::new(|_| true)),
        StandardKind::Boundary(n) => (n, Box::new(move |s: &[usize]| s.len() < n + 1)),
        StandardKind::Horn(n, i) => {
            if i > n {
                return Err(KernelError::Parameter(format!("horn index {i} exceeds {n}")));
            }
            // A face lies in Λⁿᵢ iff it is contained in some d_j with j ≠ i, i.e. it is
            // neither the whole simplex nor the face opposite i.
            (
                n,
                Box::new(move |s: &[usize]| {
                    s.len() < n + 1 && !(s.len() == n && !s.contains(&i))
                }),
            )
        }
        StandardKind::Face(s) => {
            if s.is_empty() {
                return Err(KernelError::Parameter("face requires a nonempty vertex set".into()));
            }
            let n = *s.iter().max().expect("nonempty");
            (n, Box::new(move |t: &[usize]| t.iter().all(|v| s.contains(v))))
        }
    };
    let mut out = FiniteSimplicialSet::empty();
    for size in 1..=(n + 1) {
        for subset in (0..=n).combinations(size) {
            if !keep(&subset) {
                continue;
            }
            let dim = size - 1;
            let faces = if dim == 0 {
                Vec::new()
            } else {
                (0..size)
                    .map(|i| {
                        let mut f = subset.clone();
                        f.remove(i);
                        SimplexRef::cell(face_id(&f))
                    })
                    .collect()
            };
            out.add_cell(face_id(&subset), dim, faces)?;
        }
    }
    out.set_vertex_named(true);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(x: &FiniteSimplicialSet) -> Vec<usize> {
        (0..=x.dim()).map(|n| x.cells(n).count()).collect()
    }

    #[test]
    fn simplex_2_face_lattice() {
        let x = standard_complex(StandardKind::Simplex(2)).unwrap();
        assert_eq!(counts(&x), vec![3, 3, 1]);
        x.validate().unwrap();
    }

    #[test]
    fn horn_2_1_drops_triangle_and_long_edge() {
        let x = standard_complex(StandardKind::Horn(2, 1)).unwrap();
        assert_eq!(counts(&x), vec![3, 2]);
        assert!(x.has_cell(&face_id(&[0, 1])));
        assert!(x.has_cell(&face_id(&[1, 2])));
        assert!(!x.has_cell(&face_id(&[0, 2])));
        x.validate().unwrap();
    }

    #[test]
    fn boundary_3_counts() {
        let x = standard_complex(StandardKind::Boundary(3)).unwrap();
        assert_eq!(counts(&x), vec![4, 6, 4]);
        x.validate().unwrap();
    }
}
