//! Pushouts of finite simplicial sets.
//!
//! Colimits of presheaves are pointwise, so the pushout of `X ←f− A −g→ Y` is computed
//! dimension by dimension: all simplices of `X` and `Y` (degenerate included, enumerated
//! through their normal forms) are united whenever they are `f`/`g`-images of the same
//! simplex of `A`.  The resulting quotient simplicial set is then re-expressed in
//! Eilenberg–Zilber normal form: classes that are degeneracies of lower classes are not
//! stored, and every stored face is a normalized word over a stored cell.

use std::collections::{BTreeMap, HashMap};

use super::{CellId, FiniteSimplicialSet, KernelError, SimplexRef, SimplicialMap};

/// A pushout complex with its cocone maps.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub complex: FiniteSimplicialSet,
    pub from_left: SimplicialMap,
    pub from_right: SimplicialMap,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Side {
    Left,
    Right,
}

type Elem = (Side, SimplexRef);

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Per-dimension quotient data: each simplex of `X ⊔ Y` mapped to its class, classes
/// named by their canonical (minimal) member.
struct Quotient {
    class_of: Vec<HashMap<Elem, Elem>>,
    classes: Vec<Vec<Elem>>,
}

fn elem_label(e: &Elem) -> String {
    match e.0 {
        Side::Left => format!("X:{}", e.1.label()),
        Side::Right => format!("Y:{}", e.1.label()),
    }
}

/// Computes the pushout of `X ←f− A −g→ Y`.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pushout, KernelError> {
    if f.source() != g.source() {
        return Err(KernelError::Composition("pushout legs must share their source".into()));
    }
    let (a, x, y) = (f.source(), f.target(), g.target());
    let top = x.dim().max(y.dim());

    // Pointwise coequalizer per dimension.
    let mut q = Quotient { class_of: Vec::new(), classes: Vec::new() };
    for n in 0..=top {
        let mut elems: Vec<Elem> = Vec::new();
        elems.extend(x.refs_of_dim(n).into_iter().map(|r| (Side::Left, r)));
        elems.extend(y.refs_of_dim(n).into_iter().map(|r| (Side::Right, r)));
        elems.sort();
        let index: HashMap<Elem, usize> =
            elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut dsu = Dsu::new(elems.len());
        for r in a.refs_of_dim(n) {
            let fx = (Side::Left, f.apply(&r)?);
            let gy = (Side::Right, g.apply(&r)?);
            dsu.union(index[&fx], index[&gy]);
        }
        // Elements are sorted, so the DSU minimum is the canonical member.
        let mut class_of = HashMap::new();
        let mut classes: BTreeMap<usize, Elem> = BTreeMap::new();
        for (i, e) in elems.iter().enumerate() {
            let root = dsu.find(i);
            classes.entry(root).or_insert_with(|| elems[root].clone());
            class_of.insert(e.clone(), elems[root].clone());
        }
        q.class_of.push(class_of);
        q.classes.push(classes.into_values().collect());
    }

    // Identify degenerate classes: images of s_i : P_{n-1} → P_n.
    let mut degenerate: Vec<std::collections::HashSet<Elem>> = vec![Default::default(); top + 1];
    for n in 1..=top {
        let lower: Vec<Elem> = q.classes[n - 1].clone();
        for rep in lower {
            for i in 0..n {
                let img = (rep.0.clone(), rep.1.degenerate(i));
                degenerate[n].insert(q.class_of[n][&img].clone());
            }
        }
    }

    // Build the quotient complex over the nondegenerate classes.
    let mut complex = FiniteSimplicialSet::empty();
    let mut cell_name: HashMap<Elem, CellId> = HashMap::new();
    for n in 0..=top {
        for rep in &q.classes[n] {
            if degenerate[n].contains(rep) {
                continue;
            }
            cell_name.insert(rep.clone(), CellId::new(format!("q({})", elem_label(rep))));
        }
    }

    // Normal form of a class: peel off degeneracy directions until nondegenerate.
    fn ez(
        rep: &Elem,
        n: usize,
        q: &Quotient,
        degenerate: &[std::collections::HashSet<Elem>],
        cell_name: &HashMap<Elem, CellId>,
        x: &FiniteSimplicialSet,
        y: &FiniteSimplicialSet,
        memo: &mut HashMap<Elem, SimplexRef>,
    ) -> SimplexRef {
        if let Some(r) = memo.get(rep) {
            return r.clone();
        }
        let out = if !degenerate[n].contains(rep) {
            SimplexRef::cell(cell_name[rep].clone())
        } else {
            // Find (i, lower class) with s_i(lower) = rep; unique simplex, any witness.
            let mut found = None;
            'outer: for lower in &q.classes[n - 1] {
                for i in 0..n {
                    let img = (lower.0.clone(), lower.1.degenerate(i));
                    if q.class_of[n][&img] == *rep {
                        found = Some((i, lower.clone()));
                        break 'outer;
                    }
                }
            }
            let (i, lower) = found.expect("degenerate class has a degeneracy witness");
            ez(&lower, n - 1, q, degenerate, cell_name, x, y, memo).degenerate(i)
        };
        memo.insert(rep.clone(), out.clone());
        out
    }

    let mut memo: HashMap<Elem, SimplexRef> = HashMap::new();
    for n in 0..=top {
        for rep in q.classes[n].clone() {
            if degenerate[n].contains(&rep) {
                continue;
            }
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let side_complex = match rep.0 {
                            Side::Left => x,
                            Side::Right => y,
                        };
                        let face = (rep.0.clone(), side_complex.face_ref(&rep.1, i)?);
                        let class = q.class_of[n - 1][&face].clone();
                        Ok(ez(&class, n - 1, &q, &degenerate, &cell_name, x, y, &mut memo))
                    })
                    .collect::<Result<Vec<_>, KernelError>>()?
            };
            complex.add_cell(cell_name[&rep].clone(), n, faces)?;
        }
    }

    // Cocone maps.
    let mut left_assign = BTreeMap::new();
    for (c, n) in x.all_cells() {
        let class = q.class_of[n][&(Side::Left, SimplexRef::cell(c.clone()))].clone();
        left_assign
            .insert(c.clone(), ez(&class, n, &q, &degenerate, &cell_name, x, y, &mut memo));
    }
    let mut right_assign = BTreeMap::new();
    for (c, n) in y.all_cells() {
        let class = q.class_of[n][&(Side::Right, SimplexRef::cell(c.clone()))].clone();
        right_assign
            .insert(c.clone(), ez(&class, n, &q, &degenerate, &cell_name, x, y, &mut memo));
    }
    Ok(Pushout {
        from_left: SimplicialMap::new_unchecked(x.clone(), complex.clone(), left_assign),
        from_right: SimplicialMap::new_unchecked(y.clone(), complex.clone(), right_assign),
        complex,
    })
}

/// The unique map out of a pushout determined by a compatible cocone `u: X → Z`,
/// `v: Y → Z` (compatibility is implied by validation: every nondegenerate cell of the
/// pushout is the class of a nondegenerate cell of `X` or `Y`, and the resulting
/// assignment must commute with faces, which fails exactly when the cocone does not
/// coequalize).
pub fn pushout_induced(
    p: &Pushout,
    u: &SimplicialMap,
    v: &SimplicialMap,
) -> Result<SimplicialMap, KernelError> {
    if u.source() != p.from_left.source() || v.source() != p.from_right.source() {
        return Err(KernelError::Composition("cocone legs do not match the pushout span".into()));
    }
    if u.target() != v.target() {
        return Err(KernelError::Composition("cocone legs must share their target".into()));
    }
    let mut assign: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
    for (leg, w) in [(&p.from_left, u), (&p.from_right, v)] {
        for (c, _) in leg.source().all_cells() {
            let class = leg.cell_image(c)?;
            if class.is_nondegenerate() {
                assign.entry(class.target.clone()).or_insert(w.cell_image(c)?.clone());
            }
        }
    }
    SimplicialMap::new(p.complex.clone(), u.target().clone(), assign)
}
