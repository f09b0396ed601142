//! Finite 2-categories with explicit composition tables, 2-truncated orientals, the
//! scaled 2-nerve, and presentations of the homotopy 2-category.
//!
//! A [`FiniteTwoCategory`] stores every cell and every composite explicitly, so all the
//! axioms (associativity, units, interchange) are checked exhaustively by
//! [`FiniteTwoCategory::validate`].  The 2-truncated oriental [`oriental2`] turns `[n]`
//! into a 2-category whose 1-cells are subsets and whose 2-cells are inclusions; mapping
//! out of it defines the scaled 2-nerve [`nerve2`], where a triangle is thin exactly
//! when the atomic 2-cell `{0,2} ⇒ {0,1,2}` lands on an invertible 2-cell.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::sskernel::{CellId, FiniteSimplicialSet, KernelError, SimplexRef};
use crate::strat::{Decoration, DecorationKind, StratError};

/// Errors from 2-category validation, nerve construction, or serialization.
#[derive(Debug)]
pub enum TwoCatError {
    Message(String),
    Kernel(KernelError),
    Strat(StratError),
    Json(String),
}

impl fmt::Display for TwoCatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoCatError::Message(m) => write!(f, "{m}"),
            TwoCatError::Kernel(e) => write!(f, "{e}"),
            TwoCatError::Strat(e) => write!(f, "{e}"),
            TwoCatError::Json(m) => write!(f, "json: {m}"),
        }
    }
}

impl std::error::Error for TwoCatError {}

impl From<KernelError> for TwoCatError {
    fn from(e: KernelError) -> Self {
        TwoCatError::Kernel(e)
    }
}

impl From<StratError> for TwoCatError {
    fn from(e: StratError) -> Self {
        TwoCatError::Strat(e)
    }
}

fn msg(m: impl Into<String>) -> TwoCatError {
    TwoCatError::Message(m.into())
}

/// A 1-cell: an arrow between object indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneCell {
    pub label: String,
    pub src: usize,
    pub tgt: usize,
}

/// A 2-cell: an arrow between parallel 1-cell indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCell {
    pub label: String,
    pub src: usize,
    pub tgt: usize,
}

/// A fully-enumerated small 2-category.
///
/// Composition tables are keyed diagrammatically: `compose1[(f, g)]` is "`f` then `g`"
/// (defined when `tgt(f) = src(g)`), `vcomp[(α, β)]` is "`α` then `β`" vertically
/// (defined when the target 1-cell of `α` is the source 1-cell of `β`), and
/// `hcomp[(α, β)]` is the horizontal composite of `α` over `a → b` with `β` over
/// `b → c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTwoCategory {
    pub objects: Vec<String>,
    pub one_cells: Vec<OneCell>,
    pub two_cells: Vec<TwoCell>,
    pub compose1: BTreeMap<(usize, usize), usize>,
    pub vcomp: BTreeMap<(usize, usize), usize>,
    pub hcomp: BTreeMap<(usize, usize), usize>,
    /// Identity 1-cell per object.
    pub id1: Vec<usize>,
    /// Identity 2-cell per 1-cell.
    pub id2: Vec<usize>,
}

impl FiniteTwoCategory {
    /// Source and target objects of a 2-cell (via its underlying source 1-cell).
    fn two_objects(&self, t: usize) -> (usize, usize) {
        let f = &self.one_cells[self.two_cells[t].src];
        (f.src, f.tgt)
    }

    /// Exhaustively checks all the 2-category laws: index bounds, parallelism of
    /// 2-cells, totality of all three composition tables on exactly the composable
    /// pairs, source/target compatibility of composites, units, associativity of all
    /// three compositions, functoriality of identities, and the interchange law.
    pub fn validate(&self) -> Result<(), TwoCatError> {
        self.validate_shape()?;
        self.validate_compose1()?;
        self.validate_vcomp()?;
        self.validate_hcomp()?;
        self.validate_interchange()
    }

    fn validate_shape(&self) -> Result<(), TwoCatError> {
        let labels: BTreeSet<&str> = self.objects.iter().map(|s| s.as_str()).collect();
        if labels.len() != self.objects.len() {
            return Err(msg("duplicate object labels"));
        }
        let labels: BTreeSet<&str> = self.one_cells.iter().map(|c| c.label.as_str()).collect();
        if labels.len() != self.one_cells.len() {
            return Err(msg("duplicate 1-cell labels"));
        }
        let labels: BTreeSet<&str> = self.two_cells.iter().map(|c| c.label.as_str()).collect();
        if labels.len() != self.two_cells.len() {
            return Err(msg("duplicate 2-cell labels"));
        }
        for c in &self.one_cells {
            if c.src >= self.objects.len() || c.tgt >= self.objects.len() {
                return Err(msg(format!("1-cell `{}` has an out-of-range endpoint", c.label)));
            }
        }
        for c in &self.two_cells {
            if c.src >= self.one_cells.len() || c.tgt >= self.one_cells.len() {
                return Err(msg(format!("2-cell `{}` has an out-of-range boundary", c.label)));
            }
            let (f, g) = (&self.one_cells[c.src], &self.one_cells[c.tgt]);
            if f.src != g.src || f.tgt != g.tgt {
                return Err(msg(format!("2-cell `{}` is not between parallel 1-cells", c.label)));
            }
        }
        if self.id1.len() != self.objects.len() {
            return Err(msg("id1 must assign one 1-cell per object"));
        }
        for (o, &f) in self.id1.iter().enumerate() {
            let c = self.one_cells.get(f).ok_or_else(|| msg("id1 index out of range"))?;
            if c.src != o || c.tgt != o {
                return Err(msg(format!("id1 of object `{}` is not an endo-1-cell", self.objects[o])));
            }
        }
        if self.id2.len() != self.one_cells.len() {
            return Err(msg("id2 must assign one 2-cell per 1-cell"));
        }
        for (f, &t) in self.id2.iter().enumerate() {
            let c = self.two_cells.get(t).ok_or_else(|| msg("id2 index out of range"))?;
            if c.src != f || c.tgt != f {
                return Err(msg(format!("id2 of `{}` is not an endo-2-cell", self.one_cells[f].label)));
            }
        }
        Ok(())
    }

    fn validate_compose1(&self) -> Result<(), TwoCatError> {
        for (f, fc) in self.one_cells.iter().enumerate() {
            for (g, gc) in self.one_cells.iter().enumerate() {
                let composable = fc.tgt == gc.src;
                match self.compose1.get(&(f, g)) {
                    None if composable => {
                        return Err(msg(format!(
                            "compose1 missing `{}` ; `{}`",
                            fc.label, gc.label
                        )))
                    }
                    Some(_) if !composable => {
                        return Err(msg(format!(
                            "compose1 has a non-composable entry `{}` ; `{}`",
                            fc.label, gc.label
                        )))
                    }
                    Some(&h) => {
                        let hc = self
                            .one_cells
                            .get(h)
                            .ok_or_else(|| msg("compose1 value out of range"))?;
                        if hc.src != fc.src || hc.tgt != gc.tgt {
                            return Err(msg(format!(
                                "compose1 of `{}` ; `{}` has wrong endpoints",
                                fc.label, gc.label
                            )));
                        }
                    }
                    None => {}
                }
            }
        }
        for (f, fc) in self.one_cells.iter().enumerate() {
            if self.compose1[&(self.id1[fc.src], f)] != f || self.compose1[&(f, self.id1[fc.tgt])] != f
            {
                return Err(msg(format!("unit law fails for 1-cell `{}`", fc.label)));
            }
        }
        for (&(f, g), &fg) in &self.compose1 {
            for (h, hc) in self.one_cells.iter().enumerate() {
                if hc.src != self.one_cells[g].tgt {
                    continue;
                }
                let gh = self.compose1[&(g, h)];
                if self.compose1[&(fg, h)] != self.compose1[&(f, gh)] {
                    return Err(msg(format!(
                        "associativity fails for `{}` ; `{}` ; `{}`",
                        self.one_cells[f].label, self.one_cells[g].label, hc.label
                    )));
                }
            }
        }
        Ok(())
    }

    fn validate_vcomp(&self) -> Result<(), TwoCatError> {
        for (a, ac) in self.two_cells.iter().enumerate() {
            for (b, bc) in self.two_cells.iter().enumerate() {
                let composable = ac.tgt == bc.src;
                match self.vcomp.get(&(a, b)) {
                    None if composable => {
                        return Err(msg(format!("vcomp missing `{}` · `{}`", ac.label, bc.label)))
                    }
                    Some(_) if !composable => {
                        return Err(msg(format!(
                            "vcomp has a non-composable entry `{}` · `{}`",
                            ac.label, bc.label
                        )))
                    }
                    Some(&c) => {
                        let cc = self
                            .two_cells
                            .get(c)
                            .ok_or_else(|| msg("vcomp value out of range"))?;
                        if cc.src != ac.src || cc.tgt != bc.tgt {
                            return Err(msg(format!(
                                "vcomp of `{}` · `{}` has wrong boundary",
                                ac.label, bc.label
                            )));
                        }
                    }
                    None => {}
                }
            }
        }
        for (a, ac) in self.two_cells.iter().enumerate() {
            if self.vcomp[&(self.id2[ac.src], a)] != a || self.vcomp[&(a, self.id2[ac.tgt])] != a {
                return Err(msg(format!("vertical unit law fails for `{}`", ac.label)));
            }
        }
        for (&(a, b), &ab) in &self.vcomp {
            for (c, cc) in self.two_cells.iter().enumerate() {
                if cc.src != self.two_cells[b].tgt {
                    continue;
                }
                let bc = self.vcomp[&(b, c)];
                if self.vcomp[&(ab, c)] != self.vcomp[&(a, bc)] {
                    return Err(msg(format!(
                        "vertical associativity fails at `{}` · `{}` · `{}`",
                        self.two_cells[a].label, self.two_cells[b].label, cc.label
                    )));
                }
            }
        }
        Ok(())
    }

    fn validate_hcomp(&self) -> Result<(), TwoCatError> {
        for (a, ac) in self.two_cells.iter().enumerate() {
            let (_, a_tgt) = self.two_objects(a);
            for (b, bc) in self.two_cells.iter().enumerate() {
                let (b_src, _) = self.two_objects(b);
                let composable = a_tgt == b_src;
                match self.hcomp.get(&(a, b)) {
                    None if composable => {
                        return Err(msg(format!("hcomp missing `{}` ⋆ `{}`", ac.label, bc.label)))
                    }
                    Some(_) if !composable => {
                        return Err(msg(format!(
                            "hcomp has a non-composable entry `{}` ⋆ `{}`",
                            ac.label, bc.label
                        )))
                    }
                    Some(&c) => {
                        let cc = self
                            .two_cells
                            .get(c)
                            .ok_or_else(|| msg("hcomp value out of range"))?;
                        let src = self.compose1[&(ac.src, bc.src)];
                        let tgt = self.compose1[&(ac.tgt, bc.tgt)];
                        if cc.src != src || cc.tgt != tgt {
                            return Err(msg(format!(
                                "hcomp of `{}` ⋆ `{}` has wrong boundary",
                                ac.label, bc.label
                            )));
                        }
                    }
                    None => {}
                }
            }
        }
        for (a, ac) in self.two_cells.iter().enumerate() {
            let (o_src, o_tgt) = self.two_objects(a);
            let left = self.id2[self.id1[o_src]];
            let right = self.id2[self.id1[o_tgt]];
            if self.hcomp[&(left, a)] != a || self.hcomp[&(a, right)] != a {
                return Err(msg(format!("horizontal unit law fails for `{}`", ac.label)));
            }
        }
        for (&(a, b), &ab) in &self.hcomp {
            let (_, b_tgt) = self.two_objects(b);
            for (c, cc) in self.two_cells.iter().enumerate() {
                let (c_src, _) = self.two_objects(c);
                if c_src != b_tgt {
                    continue;
                }
                let bc = self.hcomp[&(b, c)];
                if self.hcomp[&(ab, c)] != self.hcomp[&(a, bc)] {
                    return Err(msg(format!(
                        "horizontal associativity fails at `{}` ⋆ `{}` ⋆ `{}`",
                        self.two_cells[a].label, self.two_cells[b].label, cc.label
                    )));
                }
            }
        }
        for (&(f, g), &fg) in &self.compose1 {
            if self.hcomp[&(self.id2[f], self.id2[g])] != self.id2[fg] {
                return Err(msg(format!(
                    "identity 2-cells are not functorial on `{}` ; `{}`",
                    self.one_cells[f].label, self.one_cells[g].label
                )));
            }
        }
        Ok(())
    }

    fn validate_interchange(&self) -> Result<(), TwoCatError> {
        let mut by_objects: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for &(a, b) in self.vcomp.keys() {
            by_objects.entry(self.two_objects(a)).or_default().push((a, b));
        }
        for ((o1, o2), left) in &by_objects {
            for ((p1, p2), right) in &by_objects {
                if p1 != o2 {
                    continue;
                }
                let _ = (o1, p2);
                for &(a, b) in left {
                    for &(c, d) in right {
                        let lhs = self.hcomp[&(self.vcomp[&(a, b)], self.vcomp[&(c, d)])];
                        let rhs = self.vcomp[&(self.hcomp[&(a, c)], self.hcomp[&(b, d)])];
                        if lhs != rhs {
                            return Err(msg(format!(
                                "interchange fails at (`{}` · `{}`) ⋆ (`{}` · `{}`)",
                                self.two_cells[a].label,
                                self.two_cells[b].label,
                                self.two_cells[c].label,
                                self.two_cells[d].label
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether a 2-cell has a two-sided vertical inverse, found by table search.
    pub fn is_invertible_2cell(&self, a: usize) -> bool {
        let ac = &self.two_cells[a];
        (0..self.two_cells.len()).any(|b| {
            let bc = &self.two_cells[b];
            bc.src == ac.tgt
                && bc.tgt == ac.src
                && self.vcomp[&(a, b)] == self.id2[ac.src]
                && self.vcomp[&(b, a)] == self.id2[ac.tgt]
        })
    }

    /// Index of a 1-cell by label.
    pub fn one_cell_index(&self, label: &str) -> Option<usize> {
        self.one_cells.iter().position(|c| c.label == label)
    }

    /// Index of a 2-cell by label.
    pub fn two_cell_index(&self, label: &str) -> Option<usize> {
        self.two_cells.iter().position(|c| c.label == label)
    }
}

// ---------------------------------------------------------------------------
// Construction helpers and fixtures
// ---------------------------------------------------------------------------

/// Builds the 2-category with only identity 2-cells on a given 1-category: one
/// identity 2-cell per 1-cell, vertical composition trivial, horizontal composition
/// given by `compose1`.
fn locally_discrete(
    objects: Vec<String>,
    one_cells: Vec<OneCell>,
    compose1: BTreeMap<(usize, usize), usize>,
    id1: Vec<usize>,
) -> FiniteTwoCategory {
    let two_cells: Vec<TwoCell> = one_cells
        .iter()
        .enumerate()
        .map(|(f, c)| TwoCell { label: format!("id({})", c.label), src: f, tgt: f })
        .collect();
    let id2: Vec<usize> = (0..one_cells.len()).collect();
    let vcomp: BTreeMap<(usize, usize), usize> =
        (0..one_cells.len()).map(|f| ((f, f), f)).collect();
    let hcomp: BTreeMap<(usize, usize), usize> =
        compose1.iter().map(|(&(f, g), &h)| ((f, g), h)).collect();
    FiniteTwoCategory { objects, one_cells, two_cells, compose1, vcomp, hcomp, id1, id2 }
}

/// The poset `[n]` viewed as a 2-category with identity 2-cells only.
pub fn from_poset(n: usize) -> FiniteTwoCategory {
    let objects: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let mut one_cells = Vec::new();
    let mut index = BTreeMap::new();
    for i in 0..=n {
        for j in i..=n {
            index.insert((i, j), one_cells.len());
            one_cells.push(OneCell { label: format!("{i}-{j}"), src: i, tgt: j });
        }
    }
    let mut compose1 = BTreeMap::new();
    for (&(i, j), &f) in &index {
        for (&(j2, k), &g) in &index {
            if j == j2 {
                compose1.insert((f, g), index[&(i, k)]);
            }
        }
    }
    let id1: Vec<usize> = (0..=n).map(|i| index[&(i, i)]).collect();
    locally_discrete(objects, one_cells, compose1, id1)
}

/// The walking isomorphism: two objects with mutually inverse arrows, identity
/// 2-cells only.
pub fn walking_iso() -> FiniteTwoCategory {
    let objects = vec!["a".to_string(), "b".to_string()];
    let one_cells = vec![
        OneCell { label: "id(a)".into(), src: 0, tgt: 0 },
        OneCell { label: "id(b)".into(), src: 1, tgt: 1 },
        OneCell { label: "f".into(), src: 0, tgt: 1 },
        OneCell { label: "g".into(), src: 1, tgt: 0 },
    ];
    let (ia, ib, f, g) = (0usize, 1usize, 2usize, 3usize);
    let compose1: BTreeMap<(usize, usize), usize> = [
        ((ia, ia), ia),
        ((ib, ib), ib),
        ((ia, f), f),
        ((f, ib), f),
        ((ib, g), g),
        ((g, ia), g),
        ((f, g), ia),
        ((g, f), ib),
    ]
    .into_iter()
    .collect();
    locally_discrete(objects, one_cells, compose1, vec![ia, ib])
}

/// The walking 2-cell `α : f ⇒ g` between two parallel arrows `a → b`; with
/// `invertible` a vertical inverse `β` is adjoined.
pub fn walking_two_cell(invertible: bool) -> FiniteTwoCategory {
    let objects = vec!["a".to_string(), "b".to_string()];
    let one_cells = vec![
        OneCell { label: "id(a)".into(), src: 0, tgt: 0 },
        OneCell { label: "id(b)".into(), src: 1, tgt: 1 },
        OneCell { label: "f".into(), src: 0, tgt: 1 },
        OneCell { label: "g".into(), src: 0, tgt: 1 },
    ];
    let (ia, ib, f, g) = (0usize, 1usize, 2usize, 3usize);
    let compose1: BTreeMap<(usize, usize), usize> = [
        ((ia, ia), ia),
        ((ib, ib), ib),
        ((ia, f), f),
        ((f, ib), f),
        ((ia, g), g),
        ((g, ib), g),
    ]
    .into_iter()
    .collect();
    let mut cat = locally_discrete(objects, one_cells, compose1, vec![ia, ib]);
    let alpha = cat.two_cells.len();
    cat.two_cells.push(TwoCell { label: "alpha".into(), src: f, tgt: g });
    cat.vcomp.insert((cat.id2[f], alpha), alpha);
    cat.vcomp.insert((alpha, cat.id2[g]), alpha);
    cat.hcomp.insert((cat.id2[ia], alpha), alpha);
    cat.hcomp.insert((alpha, cat.id2[ib]), alpha);
    if invertible {
        let beta = cat.two_cells.len();
        cat.two_cells.push(TwoCell { label: "beta".into(), src: g, tgt: f });
        cat.vcomp.insert((cat.id2[g], beta), beta);
        cat.vcomp.insert((beta, cat.id2[f]), beta);
        cat.vcomp.insert((alpha, beta), cat.id2[f]);
        cat.vcomp.insert((beta, alpha), cat.id2[g]);
        cat.hcomp.insert((cat.id2[ia], beta), beta);
        cat.hcomp.insert((beta, cat.id2[ib]), beta);
    }
    cat
}

// ---------------------------------------------------------------------------
// 2-truncated orientals
// ---------------------------------------------------------------------------

/// An oriental together with its subset bookkeeping, used by the nerve.
pub(crate) struct OrientalData {
    pub n: usize,
    pub cat: FiniteTwoCategory,
    /// Nonempty subsets of `[n]` aligned with `cat.one_cells`.
    pub one_subsets: Vec<Vec<usize>>,
    pub one_index: BTreeMap<Vec<usize>, usize>,
    /// Inclusion pairs `(S-index, T-index)` aligned with `cat.two_cells`.
    pub two_pairs: Vec<(usize, usize)>,
    pub two_index: BTreeMap<(usize, usize), usize>,
}

fn subset_label(s: &[usize]) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
}

pub(crate) fn oriental_data(n: usize) -> OrientalData {
    let mut one_subsets: Vec<Vec<usize>> = Vec::new();
    for mask in 1u64..(1u64 << (n + 1)) {
        one_subsets.push((0..=n).filter(|i| mask >> i & 1 == 1).collect());
    }
    one_subsets.sort();
    let one_index: BTreeMap<Vec<usize>, usize> =
        one_subsets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let one_cells: Vec<OneCell> = one_subsets
        .iter()
        .map(|s| OneCell { label: subset_label(s), src: s[0], tgt: *s.last().unwrap() })
        .collect();
    let is_subset = |s: &[usize], t: &[usize]| s.iter().all(|v| t.contains(v));
    let mut two_pairs = Vec::new();
    for (a, s) in one_subsets.iter().enumerate() {
        for (b, t) in one_subsets.iter().enumerate() {
            if s[0] == t[0] && s.last() == t.last() && is_subset(s, t) {
                two_pairs.push((a, b));
            }
        }
    }
    two_pairs.sort();
    let two_index: BTreeMap<(usize, usize), usize> =
        two_pairs.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let two_cells: Vec<TwoCell> = two_pairs
        .iter()
        .map(|&(a, b)| TwoCell {
            label: format!("{}=>{}", one_cells[a].label, one_cells[b].label),
            src: a,
            tgt: b,
        })
        .collect();
    let union = |s: &[usize], t: &[usize]| -> Vec<usize> {
        let set: BTreeSet<usize> = s.iter().chain(t.iter()).copied().collect();
        set.into_iter().collect()
    };
    let mut compose1 = BTreeMap::new();
    for (a, s) in one_subsets.iter().enumerate() {
        for (b, t) in one_subsets.iter().enumerate() {
            if s.last() == Some(&t[0]) {
                compose1.insert((a, b), one_index[&union(s, t)]);
            }
        }
    }
    let mut vcomp = BTreeMap::new();
    for (x, &(a, b)) in two_pairs.iter().enumerate() {
        for (y, &(b2, c)) in two_pairs.iter().enumerate() {
            if b == b2 {
                vcomp.insert((x, y), two_index[&(a, c)]);
            }
        }
    }
    let mut hcomp = BTreeMap::new();
    for (x, &(a, b)) in two_pairs.iter().enumerate() {
        for (y, &(c, d)) in two_pairs.iter().enumerate() {
            if one_cells[a].tgt == one_cells[c].src {
                let src = compose1[&(a, c)];
                let tgt = compose1[&(b, d)];
                hcomp.insert((x, y), two_index[&(src, tgt)]);
            }
        }
    }
    let id1: Vec<usize> = (0..=n).map(|i| one_index[&vec![i]]).collect();
    let id2: Vec<usize> = (0..one_subsets.len()).map(|f| two_index[&(f, f)]).collect();
    let cat = FiniteTwoCategory {
        objects: (0..=n).map(|i| i.to_string()).collect(),
        one_cells,
        two_cells,
        compose1,
        vcomp,
        hcomp,
        id1,
        id2,
    };
    OrientalData { n, cat, one_subsets, one_index, two_pairs, two_index }
}

/// The 2-truncated oriental on `[n]`: objects `0..=n`, 1-cells the nonempty subsets
/// `S ⊆ [n]` (as arrows `min S → max S`), 2-cells the inclusions between subsets with
/// equal endpoints, composition by union.  The atomic 2-cell is oriented
/// `{i,k} ⇒ {i,j,k}` (long edge towards the composite).
pub fn oriental2(n: usize) -> FiniteTwoCategory {
    oriental_data(n).cat
}

/// `oriental2(2)` with its unique non-identity 2-cell `{0,2} ⇒ {0,1,2}` made
/// invertible: `Hom(0,2)` becomes the two-object groupoid.
pub fn oriental2_t() -> FiniteTwoCategory {
    let data = oriental_data(2);
    let mut cat = data.cat;
    let u = data.two_index[&(data.one_index[&vec![0, 2]], data.one_index[&vec![0, 1, 2]])];
    let f02 = cat.two_cells[u].src;
    let f012 = cat.two_cells[u].tgt;
    let v = cat.two_cells.len();
    cat.two_cells.push(TwoCell { label: "0.1.2=>0.2".into(), src: f012, tgt: f02 });
    cat.vcomp.insert((u, v), cat.id2[f02]);
    cat.vcomp.insert((v, u), cat.id2[f012]);
    cat.vcomp.insert((cat.id2[f012], v), v);
    cat.vcomp.insert((v, cat.id2[f02]), v);
    let i0 = cat.id2[cat.id1[0]];
    let i2 = cat.id2[cat.id1[2]];
    cat.hcomp.insert((i0, v), v);
    cat.hcomp.insert((v, i2), v);
    cat
}

// ---------------------------------------------------------------------------
// 2-functors and their enumeration
// ---------------------------------------------------------------------------

/// A strict 2-functor, stored as index assignments aligned with the source category's
/// cell lists.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TwoFunctor {
    pub obj: Vec<usize>,
    pub one: Vec<usize>,
    pub two: Vec<usize>,
}

/// Checks that an assignment is a strict 2-functor `c → d`.
pub fn check_functor(c: &FiniteTwoCategory, d: &FiniteTwoCategory, f: &TwoFunctor) -> bool {
    if f.obj.len() != c.objects.len()
        || f.one.len() != c.one_cells.len()
        || f.two.len() != c.two_cells.len()
    {
        return false;
    }
    for (i, oc) in c.one_cells.iter().enumerate() {
        let img = &d.one_cells[f.one[i]];
        if img.src != f.obj[oc.src] || img.tgt != f.obj[oc.tgt] {
            return false;
        }
    }
    for (i, tc) in c.two_cells.iter().enumerate() {
        let img = &d.two_cells[f.two[i]];
        if img.src != f.one[tc.src] || img.tgt != f.one[tc.tgt] {
            return false;
        }
    }
    for (o, &i) in c.id1.iter().enumerate() {
        if f.one[i] != d.id1[f.obj[o]] {
            return false;
        }
    }
    for (g, &i) in c.id2.iter().enumerate() {
        if f.two[i] != d.id2[f.one[g]] {
            return false;
        }
    }
    c.compose1.iter().all(|(&(x, y), &z)| d.compose1[&(f.one[x], f.one[y])] == f.one[z])
        && c.vcomp.iter().all(|(&(x, y), &z)| d.vcomp[&(f.two[x], f.two[y])] == f.two[z])
        && c.hcomp.iter().all(|(&(x, y), &z)| d.hcomp[&(f.two[x], f.two[y])] == f.two[z])
}

struct FunctorSearch<'a> {
    c: &'a FiniteTwoCategory,
    d: &'a FiniteTwoCategory,
    d_one_by: BTreeMap<(usize, usize), Vec<usize>>,
    d_two_by: BTreeMap<(usize, usize), Vec<usize>>,
    c_id1_of: Vec<Option<usize>>,
    c_id2_of: Vec<Option<usize>>,
    comp1_by_max: Vec<Vec<(usize, usize, usize)>>,
    vcomp_by_max: Vec<Vec<(usize, usize, usize)>>,
    hcomp_by_max: Vec<Vec<(usize, usize, usize)>>,
    out: Vec<TwoFunctor>,
}

impl FunctorSearch<'_> {
    fn go_obj(&mut self, obj: &mut Vec<usize>) {
        if obj.len() == self.c.objects.len() {
            let mut one = Vec::with_capacity(self.c.one_cells.len());
            self.go_one(obj, &mut one);
            return;
        }
        for cand in 0..self.d.objects.len() {
            obj.push(cand);
            self.go_obj(obj);
            obj.pop();
        }
    }

    fn go_one(&mut self, obj: &[usize], one: &mut Vec<usize>) {
        let pos = one.len();
        if pos == self.c.one_cells.len() {
            let mut two = Vec::with_capacity(self.c.two_cells.len());
            self.go_two(obj, one, &mut two);
            return;
        }
        let oc = &self.c.one_cells[pos];
        let cands: Vec<usize> = match self.c_id1_of[pos] {
            Some(o) => vec![self.d.id1[obj[o]]],
            None => self
                .d_one_by
                .get(&(obj[oc.src], obj[oc.tgt]))
                .cloned()
                .unwrap_or_default(),
        };
        'cand: for cand in cands {
            one.push(cand);
            for &(f, g, h) in &self.comp1_by_max[pos] {
                if self.d.compose1[&(one[f], one[g])] != one[h] {
                    one.pop();
                    continue 'cand;
                }
            }
            self.go_one(obj, one);
            one.pop();
        }
    }

    fn go_two(&mut self, obj: &[usize], one: &[usize], two: &mut Vec<usize>) {
        let pos = two.len();
        if pos == self.c.two_cells.len() {
            self.out.push(TwoFunctor { obj: obj.to_vec(), one: one.to_vec(), two: two.clone() });
            return;
        }
        let tc = &self.c.two_cells[pos];
        let cands: Vec<usize> = match self.c_id2_of[pos] {
            Some(f) => vec![self.d.id2[one[f]]],
            None => self
                .d_two_by
                .get(&(one[tc.src], one[tc.tgt]))
                .cloned()
                .unwrap_or_default(),
        };
        'cand: for cand in cands {
            two.push(cand);
            for &(x, y, z) in &self.vcomp_by_max[pos] {
                if self.d.vcomp[&(two[x], two[y])] != two[z] {
                    two.pop();
                    continue 'cand;
                }
            }
            for &(x, y, z) in &self.hcomp_by_max[pos] {
                if self.d.hcomp[&(two[x], two[y])] != two[z] {
                    two.pop();
                    continue 'cand;
                }
            }
            self.go_two(obj, one, two);
            two.pop();
        }
    }
}

/// All strict 2-functors `c → d`, in lexicographic order of their index assignments,
/// found by layered backtracking: objects, then 1-cells (with composition-closure
/// pruning), then 2-cells.
pub fn enumerate_2functors(c: &FiniteTwoCategory, d: &FiniteTwoCategory) -> Vec<TwoFunctor> {
    let mut d_one_by: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, f) in d.one_cells.iter().enumerate() {
        d_one_by.entry((f.src, f.tgt)).or_default().push(i);
    }
    let mut d_two_by: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, t) in d.two_cells.iter().enumerate() {
        d_two_by.entry((t.src, t.tgt)).or_default().push(i);
    }
    let mut c_id1_of = vec![None; c.one_cells.len()];
    for (o, &f) in c.id1.iter().enumerate() {
        c_id1_of[f] = Some(o);
    }
    let mut c_id2_of = vec![None; c.two_cells.len()];
    for (f, &t) in c.id2.iter().enumerate() {
        c_id2_of[t] = Some(f);
    }
    let mut comp1_by_max = vec![Vec::new(); c.one_cells.len()];
    for (&(f, g), &h) in &c.compose1 {
        comp1_by_max[f.max(g).max(h)].push((f, g, h));
    }
    let mut vcomp_by_max = vec![Vec::new(); c.two_cells.len()];
    let mut hcomp_by_max = vec![Vec::new(); c.two_cells.len()];
    for (&(x, y), &z) in &c.vcomp {
        vcomp_by_max[x.max(y).max(z)].push((x, y, z));
    }
    for (&(x, y), &z) in &c.hcomp {
        hcomp_by_max[x.max(y).max(z)].push((x, y, z));
    }
    let mut search = FunctorSearch {
        c,
        d,
        d_one_by,
        d_two_by,
        c_id1_of,
        c_id2_of,
        comp1_by_max,
        vcomp_by_max,
        hcomp_by_max,
        out: Vec::new(),
    };
    search.go_obj(&mut Vec::with_capacity(c.objects.len()));
    search.out
}

// ---------------------------------------------------------------------------
// The scaled 2-nerve
// ---------------------------------------------------------------------------

/// Restriction of a functor out of an oriental along a monotone vertex map
/// `phi : [src.n] → [tgt.n]` (precomposition with the induced oriental functor).
pub(crate) fn restrict(
    f: &TwoFunctor,
    phi: &[usize],
    src: &OrientalData,
    tgt: &OrientalData,
) -> TwoFunctor {
    let obj: Vec<usize> = (0..=src.n).map(|i| f.obj[phi[i]]).collect();
    let img_idx: Vec<usize> = src
        .one_subsets
        .iter()
        .map(|s| {
            let mut img: Vec<usize> = s.iter().map(|&v| phi[v]).collect();
            img.dedup();
            tgt.one_index[&img]
        })
        .collect();
    let one: Vec<usize> = img_idx.iter().map(|&i| f.one[i]).collect();
    let two: Vec<usize> = src
        .two_pairs
        .iter()
        .map(|&(a, b)| f.two[tgt.two_index[&(img_idx[a], img_idx[b])]])
        .collect();
    TwoFunctor { obj, one, two }
}

/// Vertex map of the `i`-th face inclusion `[m-1] → [m]`.
fn delta(i: usize, m: usize) -> Vec<usize> {
    (0..m).map(|k| if k < i { k } else { k + 1 }).collect()
}

/// Vertex map of `[m] → [m]` collapsing `j+1` onto `j` (the composite `δ_{j+1} σ_j`).
fn collapse(j: usize, m: usize) -> Vec<usize> {
    (0..=m).map(|k| if k == j + 1 { j } else { k }).collect()
}

/// The scaled 2-nerve together with an index from functors to cells.
pub struct Nerve2 {
    pub decoration: Decoration,
    /// Per dimension, the nondegenerate functors and their cell ids.
    pub cells: Vec<BTreeMap<TwoFunctor, CellId>>,
}

fn normalize(
    m: usize,
    f: &TwoFunctor,
    orientals: &[OrientalData],
    cells: &[BTreeMap<TwoFunctor, CellId>],
) -> Result<SimplexRef, TwoCatError> {
    for j in 0..m {
        if restrict(f, &collapse(j, m), &orientals[m], &orientals[m]) == *f {
            let g = restrict(f, &delta(j + 1, m), &orientals[m - 1], &orientals[m]);
            return Ok(normalize(m - 1, &g, orientals, cells)?.degenerate(j));
        }
    }
    cells[m]
        .get(f)
        .map(|id| SimplexRef::cell(id.clone()))
        .ok_or_else(|| msg("internal error: nondegenerate functor missing from the nerve"))
}

/// The scaled 2-nerve of a finite 2-category, with its functor-to-cell index.
///
/// `m`-cells are the strict 2-functors `oriental2(m) → d` up to `n_max`, stored in
/// Eilenberg–Zilber normal form; a nondegenerate triangle is thin exactly when the
/// atomic 2-cell `{0,2} ⇒ {0,1,2}` maps to an invertible 2-cell of `d`.
pub fn nerve2_indexed(d: &FiniteTwoCategory, n_max: usize) -> Result<Nerve2, TwoCatError> {
    if n_max < 2 {
        return Err(msg("the scaled 2-nerve needs n_max ≥ 2"));
    }
    d.validate()?;
    let orientals: Vec<OrientalData> = (0..=n_max).map(oriental_data).collect();
    let mut complex = FiniteSimplicialSet::empty();
    let mut cells: Vec<BTreeMap<TwoFunctor, CellId>> = Vec::new();
    for m in 0..=n_max {
        let nondeg: Vec<TwoFunctor> = enumerate_2functors(&orientals[m].cat, d)
            .into_iter()
            .filter(|f| {
                (0..m).all(|j| restrict(f, &collapse(j, m), &orientals[m], &orientals[m]) != *f)
            })
            .collect();
        let mut level = BTreeMap::new();
        for (i, f) in nondeg.iter().enumerate() {
            let id = if m == 0 {
                CellId::new(d.objects[f.obj[0]].clone())
            } else {
                CellId::new(format!("n{m}.{i}"))
            };
            let faces = if m == 0 {
                Vec::new()
            } else {
                (0..=m)
                    .map(|i| {
                        let g = restrict(f, &delta(i, m), &orientals[m - 1], &orientals[m]);
                        normalize(m - 1, &g, &orientals, &cells)
                    })
                    .collect::<Result<Vec<_>, _>>()?
            };
            complex.add_cell(id.clone(), m, faces)?;
            level.insert(f.clone(), id);
        }
        cells.push(level);
    }
    complex.validate()?;
    let u = orientals[2].two_index
        [&(orientals[2].one_index[&vec![0, 2]], orientals[2].one_index[&vec![0, 1, 2]])];
    let thin: BTreeSet<CellId> = cells[2]
        .iter()
        .filter(|(f, _)| d.is_invertible_2cell(f.two[u]))
        .map(|(_, id)| id.clone())
        .collect();
    let marks = if thin.is_empty() {
        BTreeMap::new()
    } else {
        [(2usize, thin)].into_iter().collect()
    };
    let decoration = Decoration::new(complex, DecorationKind::Scaled, marks)?;
    Ok(Nerve2 { decoration, cells })
}

/// The scaled 2-nerve of a finite 2-category (see [`nerve2_indexed`]).
pub fn nerve2(d: &FiniteTwoCategory, n_max: usize) -> Result<Decoration, TwoCatError> {
    Ok(nerve2_indexed(d, n_max)?.decoration)
}

// ---------------------------------------------------------------------------
// Homotopy 2-category presentations
// ---------------------------------------------------------------------------

/// A 2-cell generator `α_σ : σ|₀₂ ⇒ σ|₁₂ ∘ σ|₀₁` attached to a nondegenerate
/// triangle; the target word lists the edges in path order `[σ|₀₁, σ|₁₂]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoGen {
    pub triangle: CellId,
    pub source: SimplexRef,
    pub target: Vec<SimplexRef>,
}

/// A pasting word in the 2-cell generators: generators of (possibly degenerate)
/// triangles, identity 2-cells of edges, and vertical/horizontal composites.
/// `Vert` composes in diagram order (`first`, then `then`); `Horiz` places `left`
/// over the earlier edges of the path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pasting2 {
    Gen { triangle: SimplexRef },
    Id { edge: SimplexRef },
    Vert { first: Box<Pasting2>, then: Box<Pasting2> },
    Horiz { left: Box<Pasting2>, right: Box<Pasting2> },
}

/// One pasting relation per nondegenerate 3-cell: the two composite pastings of its
/// faces agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PastingRelation {
    pub cell: CellId,
    pub lhs: Pasting2,
    pub rhs: Pasting2,
}

/// A presentation of the homotopy 2-category of a scaled simplicial set: generating
/// objects, 1-cell and 2-cell generators, invertibility assertions for thin
/// triangles, and pasting relations from 3-cells.  No equality decision is made.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation2 {
    pub objects: Vec<CellId>,
    pub one_generators: Vec<CellId>,
    pub two_generators: Vec<TwoGen>,
    pub invertible: Vec<CellId>,
    pub relations: Vec<PastingRelation>,
}

/// Reads off a presentation of the homotopy 2-category from a decorated simplicial
/// set: vertices, nondegenerate edges, one 2-cell generator per nondegenerate
/// triangle (oriented long edge ⇒ composite), invertibility for each thin triangle,
/// and one pasting relation per nondegenerate 3-cell.
pub fn ho2_presentation(x: &Decoration) -> Result<Presentation2, TwoCatError> {
    let carrier = x.carrier();
    let objects: Vec<CellId> = carrier.cells(0).cloned().collect();
    let one_generators: Vec<CellId> = carrier.cells(1).cloned().collect();
    let mut two_generators = Vec::new();
    for t in carrier.cells(2) {
        let r = SimplexRef::cell(t.clone());
        two_generators.push(TwoGen {
            triangle: t.clone(),
            source: carrier.face_ref(&r, 1)?,
            target: vec![carrier.face_ref(&r, 2)?, carrier.face_ref(&r, 0)?],
        });
    }
    let invertible: Vec<CellId> = x.marks_in_dim(2).cloned().collect();
    let mut relations = Vec::new();
    for c in carrier.cells(3) {
        let r = SimplexRef::cell(c.clone());
        let face = |i: usize| -> Result<Pasting2, TwoCatError> {
            Ok(Pasting2::Gen { triangle: carrier.face_ref(&r, i)? })
        };
        let lhs = Pasting2::Vert {
            first: Box::new(face(1)?),
            then: Box::new(Pasting2::Horiz {
                left: Box::new(face(3)?),
                right: Box::new(Pasting2::Id { edge: carrier.multi_face(&r, &[2, 3])? }),
            }),
        };
        let rhs = Pasting2::Vert {
            first: Box::new(face(2)?),
            then: Box::new(Pasting2::Horiz {
                left: Box::new(Pasting2::Id { edge: carrier.multi_face(&r, &[0, 1])? }),
                right: Box::new(face(0)?),
            }),
        };
        relations.push(PastingRelation { cell: c.clone(), lhs, rhs });
    }
    Ok(Presentation2 { objects, one_generators, two_generators, invertible, relations })
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct TwoCatJson {
    schema: u32,
    objects: Vec<String>,
    one_cells: Vec<(String, String, String)>,
    two_cells: Vec<(String, String, String)>,
    compose1: Vec<(String, String, String)>,
    vcomp: Vec<(String, String, String)>,
    hcomp: Vec<(String, String, String)>,
    id1: Vec<(String, String)>,
    id2: Vec<(String, String)>,
}

/// Serializes a 2-category to its stable JSON form: explicit cell lists plus
/// composition tables keyed by cell-label pairs.
pub fn twocat_to_json(cat: &FiniteTwoCategory) -> serde_json::Value {
    let obj = |i: usize| cat.objects[i].clone();
    let one = |i: usize| cat.one_cells[i].label.clone();
    let two = |i: usize| cat.two_cells[i].label.clone();
    let doc = TwoCatJson {
        schema: SCHEMA_VERSION,
        objects: cat.objects.clone(),
        one_cells: cat.one_cells.iter().map(|c| (c.label.clone(), obj(c.src), obj(c.tgt))).collect(),
        two_cells: cat.two_cells.iter().map(|c| (c.label.clone(), one(c.src), one(c.tgt))).collect(),
        compose1: cat.compose1.iter().map(|(&(f, g), &h)| (one(f), one(g), one(h))).collect(),
        vcomp: cat.vcomp.iter().map(|(&(a, b), &c)| (two(a), two(b), two(c))).collect(),
        hcomp: cat.hcomp.iter().map(|(&(a, b), &c)| (two(a), two(b), two(c))).collect(),
        id1: cat.id1.iter().enumerate().map(|(o, &f)| (obj(o), one(f))).collect(),
        id2: cat.id2.iter().enumerate().map(|(f, &t)| (one(f), two(t))).collect(),
    };
    serde_json::to_value(doc).expect("2-category serialization cannot fail")
}

/// Parses a 2-category from its JSON form and validates all the laws.
pub fn twocat_from_json(v: &serde_json::Value) -> Result<FiniteTwoCategory, TwoCatError> {
    let doc: TwoCatJson =
        serde_json::from_value(v.clone()).map_err(|e| TwoCatError::Json(e.to_string()))?;
    if doc.schema != SCHEMA_VERSION {
        return Err(TwoCatError::Json(format!(
            "unsupported schema version {} (expected {SCHEMA_VERSION})",
            doc.schema
        )));
    }
    let obj_index: BTreeMap<&str, usize> =
        doc.objects.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let look = |index: &BTreeMap<&str, usize>, label: &str, what: &str| {
        index
            .get(label)
            .copied()
            .ok_or_else(|| TwoCatError::Json(format!("unknown {what} `{label}`")))
    };
    let mut one_cells = Vec::new();
    for (label, s, t) in &doc.one_cells {
        one_cells.push(OneCell {
            label: label.clone(),
            src: look(&obj_index, s, "object")?,
            tgt: look(&obj_index, t, "object")?,
        });
    }
    let one_index: BTreeMap<&str, usize> =
        one_cells.iter().enumerate().map(|(i, c)| (c.label.as_str(), i)).collect();
    let mut two_cells = Vec::new();
    for (label, s, t) in &doc.two_cells {
        two_cells.push(TwoCell {
            label: label.clone(),
            src: look(&one_index, s, "1-cell")?,
            tgt: look(&one_index, t, "1-cell")?,
        });
    }
    let two_index: BTreeMap<&str, usize> =
        two_cells.iter().enumerate().map(|(i, c)| (c.label.as_str(), i)).collect();
    let table = |entries: &[(String, String, String)],
                 index: &BTreeMap<&str, usize>,
                 what: &str|
     -> Result<BTreeMap<(usize, usize), usize>, TwoCatError> {
        let mut out = BTreeMap::new();
        for (a, b, c) in entries {
            let key = (look(index, a, what)?, look(index, b, what)?);
            if out.insert(key, look(index, c, what)?).is_some() {
                return Err(TwoCatError::Json(format!("duplicate table entry (`{a}`, `{b}`)")));
            }
        }
        Ok(out)
    };
    let compose1 = table(&doc.compose1, &one_index, "1-cell")?;
    let vcomp = table(&doc.vcomp, &two_index, "2-cell")?;
    let hcomp = table(&doc.hcomp, &two_index, "2-cell")?;
    let mut id1 = vec![usize::MAX; doc.objects.len()];
    for (o, f) in &doc.id1 {
        id1[look(&obj_index, o, "object")?] = look(&one_index, f, "1-cell")?;
    }
    if id1.contains(&usize::MAX) {
        return Err(TwoCatError::Json("id1 does not cover every object".into()));
    }
    let mut id2 = vec![usize::MAX; one_cells.len()];
    for (f, t) in &doc.id2 {
        id2[look(&one_index, f, "1-cell")?] = look(&two_index, t, "2-cell")?;
    }
    if id2.contains(&usize::MAX) {
        return Err(TwoCatError::Json("id2 does not cover every 1-cell".into()));
    }
    let cat = FiniteTwoCategory {
        objects: doc.objects,
        one_cells,
        two_cells,
        compose1,
        vcomp,
        hcomp,
        id1,
        id2,
    };
    cat.validate()?;
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::simplex;
    use crate::sskernel::SimplicialMap;

    #[test]
    fn orientals_satisfy_all_laws() {
        for n in 0..=5 {
            oriental2(n).validate().unwrap_or_else(|e| panic!("oriental {n}: {e}"));
        }
        oriental2_t().validate().expect("inverted oriental");
    }

    #[test]
    fn fixtures_satisfy_all_laws() {
        from_poset(0).validate().expect("point");
        from_poset(3).validate().expect("poset [3]");
        walking_iso().validate().expect("walking iso");
        walking_two_cell(false).validate().expect("walking 2-cell");
        walking_two_cell(true).validate().expect("walking invertible 2-cell");
    }

    fn hom_one_cells(cat: &FiniteTwoCategory, a: usize, b: usize) -> Vec<usize> {
        cat.one_cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.src == a && c.tgt == b)
            .map(|(i, _)| i)
            .collect()
    }

    #[test]
    fn oriental_two_has_one_atomic_cell() {
        let cat = oriental2(2);
        let hom = hom_one_cells(&cat, 0, 2);
        assert_eq!(hom.len(), 2);
        let nonidentity: Vec<&TwoCell> = cat
            .two_cells
            .iter()
            .filter(|t| t.src != t.tgt && hom.contains(&t.src))
            .collect();
        assert_eq!(nonidentity.len(), 1);
        assert_eq!(nonidentity[0].label, "0.2=>0.1.2");
        assert!(!cat.is_invertible_2cell(cat.two_cell_index("0.2=>0.1.2").unwrap()));
        assert!(oriental2_t()
            .is_invertible_2cell(cat.two_cell_index("0.2=>0.1.2").unwrap()));
    }

    #[test]
    fn oriental_three_hom_is_the_inclusion_diamond() {
        let cat = oriental2(3);
        let hom = hom_one_cells(&cat, 0, 3);
        let labels: Vec<&str> = hom.iter().map(|&i| cat.one_cells[i].label.as_str()).collect();
        assert_eq!(labels, vec!["0.1.2.3", "0.1.3", "0.2.3", "0.3"]);
        let arrow = |s: &str, t: &str| {
            let (s, t) = (cat.one_cell_index(s).unwrap(), cat.one_cell_index(t).unwrap());
            cat.two_cells.iter().any(|c| c.src == s && c.tgt == t)
        };
        // Bottom to both middles to the top, with the middles incomparable.
        assert!(arrow("0.3", "0.1.3") && arrow("0.3", "0.2.3") && arrow("0.3", "0.1.2.3"));
        assert!(arrow("0.1.3", "0.1.2.3") && arrow("0.2.3", "0.1.2.3"));
        assert!(!arrow("0.1.3", "0.2.3") && !arrow("0.2.3", "0.1.3"));
    }

    #[test]
    fn oriental_one_is_the_arrow_poset() {
        let cat = oriental2(1);
        assert_eq!(cat.objects.len(), 2);
        assert_eq!(cat.one_cells.len(), 3);
        // Only identity 2-cells.
        assert!(cat.two_cells.iter().all(|t| t.src == t.tgt));
        assert_eq!(cat.two_cells.len(), 3);
    }

    #[test]
    fn functor_counts_match_cell_counts() {
        for d in [oriental2(2), walking_two_cell(true), from_poset(2)] {
            assert_eq!(enumerate_2functors(&oriental2(0), &d).len(), d.objects.len());
            assert_eq!(enumerate_2functors(&oriental2(1), &d).len(), d.one_cells.len());
        }
        // Functors oriental2(2) → poset [2] are monotone triples i ≤ j ≤ k in [2].
        let count = enumerate_2functors(&oriental2(2), &from_poset(2)).len();
        assert_eq!(count, 10);
        for f in enumerate_2functors(&oriental2(2), &walking_two_cell(true)) {
            assert!(check_functor(&oriental2(2), &walking_two_cell(true), &f));
        }
    }

    #[test]
    fn nerve_of_a_poset_is_the_sharp_simplex() {
        let nerve = nerve2(&from_poset(2), 3).expect("nerve");
        let target = simplex(2);
        let tuples = nerve.carrier().vertex_tuples();
        let mut assign = std::collections::BTreeMap::new();
        for (c, tuple) in &tuples {
            let names: Vec<CellId> = tuple.clone();
            assign.insert(c.clone(), target.ref_from_vertex_tuple(&names).expect("tuple"));
        }
        let map =
            SimplicialMap::new(nerve.carrier().clone(), target, assign).expect("comparison map");
        assert!(map.is_iso());
        // Sharp: every nondegenerate triangle is thin.
        let triangles: Vec<&CellId> = nerve.carrier().cells(2).collect();
        assert_eq!(triangles.len(), 1);
        assert!(triangles.iter().all(|t| nerve.is_marked_cell(t)));
    }

    #[test]
    fn identity_cell_of_the_oriental_nerve_is_not_thin() {
        let d = oriental2(2);
        let nerve = nerve2_indexed(&d, 2).expect("nerve");
        let identity = TwoFunctor {
            obj: (0..d.objects.len()).collect(),
            one: (0..d.one_cells.len()).collect(),
            two: (0..d.two_cells.len()).collect(),
        };
        let id = nerve.cells[2].get(&identity).expect("the identity functor is a 2-cell");
        assert!(!nerve.decoration.is_marked_cell(id));

        // The same shape over the inverted oriental is thin.
        let dt = oriental2_t();
        let nerve_t = nerve2_indexed(&dt, 2).expect("nerve");
        let same = TwoFunctor {
            obj: identity.obj.clone(),
            one: identity.one.clone(),
            two: identity.two.clone(),
        };
        let id = nerve_t.cells[2].get(&same).expect("the shared cells embed");
        assert!(nerve_t.decoration.is_marked_cell(id));
    }

    #[test]
    fn inverting_the_walking_two_cell_scales_its_triangle() {
        let plain = nerve2_indexed(&walking_two_cell(false), 2).expect("nerve");
        let inv = nerve2_indexed(&walking_two_cell(true), 2).expect("nerve");
        let d = walking_two_cell(false);
        let alpha = d.two_cell_index("alpha").unwrap();
        let data = oriental_data(2);
        let u_idx =
            data.two_index[&(data.one_index[&vec![0, 2]], data.one_index[&vec![0, 1, 2]])];
        let alpha_cells: Vec<&CellId> = plain.cells[2]
            .iter()
            .filter(|(f, _)| f.two[u_idx] == alpha)
            .map(|(_, id)| id)
            .collect();
        assert!(!alpha_cells.is_empty());
        for id in &alpha_cells {
            assert!(!plain.decoration.is_marked_cell(id));
        }
        // Same functors exist in the invertible version and are thin there.
        for (f, _) in plain.cells[2].iter().filter(|(f, _)| f.two[u_idx] == alpha) {
            let id = inv.cells[2].get(f).expect("cell persists");
            assert!(inv.decoration.is_marked_cell(id));
        }
    }

    #[test]
    fn ho2_counts_on_small_complexes() {
        let flat2 = Decoration::flat(simplex(2), DecorationKind::Scaled);
        let p = ho2_presentation(&flat2).expect("flat triangle");
        assert_eq!(p.objects.len(), 3);
        assert_eq!(p.one_generators.len(), 3);
        assert_eq!(p.two_generators.len(), 1);
        assert!(p.invertible.is_empty());
        assert!(p.relations.is_empty());
        let gen = &p.two_generators[0];
        assert_eq!(gen.source, SimplexRef::cell(CellId::new("0.2")));
        assert_eq!(
            gen.target,
            vec![SimplexRef::cell(CellId::new("0.1")), SimplexRef::cell(CellId::new("1.2"))]
        );

        let sharp2 = Decoration::sharp(simplex(2));
        let p = ho2_presentation(&sharp2).expect("sharp triangle");
        assert_eq!(p.invertible.len(), 1);

        let flat3 = Decoration::flat(simplex(3), DecorationKind::Scaled);
        let p = ho2_presentation(&flat3).expect("flat 3-simplex");
        assert_eq!(p.two_generators.len(), 4);
        assert_eq!(p.relations.len(), 1);
    }

    #[test]
    fn json_round_trip() {
        for cat in [oriental2_t(), walking_two_cell(true), from_poset(2)] {
            let v = twocat_to_json(&cat);
            let back = twocat_from_json(&v).expect("parse");
            assert_eq!(back, cat);
        }
        let mut v = twocat_to_json(&walking_iso());
        v["schema"] = serde_json::json!(99);
        assert!(twocat_from_json(&v).is_err());
    }
}
