//! Parametrized generating families of decorated monomorphisms, the special decorated
//! objects they refer to, and the cylinder-based Λ-construction of generators via
//! pushout-products.
//!
//! Every instance carries a stable token (e.g. `scaled-S:inner:n=3,i=1`) from which it
//! can be regenerated bit-identically.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::constructions::pushout_product;
use crate::sskernel::{
    face_id, pushout, pushout_induced, standard_complex, CellId, FiniteSimplicialSet,
    KernelError, SimplexRef, SimplicialMap, StandardKind,
};
use crate::strat::{
    th_k, Decoration, DecorationKind, DecoratedInclusion, DecoratedMap, StratError,
};

#[derive(Debug, Error)]
pub enum GenError {
    #[error("unknown generator family `{0}`")]
    UnknownFamily(String),
    #[error("unknown special object `{0}`")]
    UnknownObject(String),
    #[error("bad generator parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Strat(#[from] StratError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// One member of a generating family: the family key (variant-qualified), its integer
/// parameters, and the decorated monomorphism itself.
#[derive(Debug, Clone)]
pub struct GeneratorInstance {
    pub family: String,
    pub params: Vec<i64>,
    pub map: DecoratedInclusion,
}

/// Parameter names per family key, in token order.
const FAMILY_PARAMS: &[(&str, &[&str])] = &[
    ("scaled-S:inner", &["n", "i"]),
    ("scaled-S:saturate", &[]),
    ("scaled-S:collapsed0", &["n"]),
    ("weak-fib:inner", &["n", "i"]),
    ("weak-fib:collapsed0", &["n"]),
    ("weak-fib:collapsedN", &["n"]),
    ("complicial", &["n", "i"]),
    ("thinness", &["n", "i"]),
    ("thinness-2trivial", &["n", "i"]),
    ("trivializer", &["k", "n"]),
    ("saturation", &["n"]),
    ("prism-upper", &["n", "k"]),
    ("prism-lower", &["n", "k"]),
    ("marked-scaled-AS:inner", &["n", "i"]),
    ("marked-scaled-AS:cart", &["n"]),
    ("marked-scaled-AS:collapsed0", &["n"]),
    ("marked-scaled-AS:mark2", &[]),
];

impl GeneratorInstance {
    /// The stable CLI token, e.g. `scaled-S:inner:n=3,i=1`.
    pub fn token(&self) -> String {
        let names = FAMILY_PARAMS
            .iter()
            .find(|(k, _)| *k == self.family)
            .map(|(_, names)| *names)
            .unwrap_or(&[]);
        if self.params.is_empty() {
            self.family.clone()
        } else {
            let params: Vec<String> = names
                .iter()
                .zip(&self.params)
                .map(|(name, v)| format!("{name}={v}"))
                .collect();
            format!("{}:{}", self.family, params.join(","))
        }
    }
}

/// Rebuilds the instance named by a token; the result is bit-identical to the instance
/// that produced the token.
pub fn parse_instance(token: &str) -> Result<GeneratorInstance, GenError> {
    let (family, raw_params) = match token.rfind(':') {
        Some(pos) if token[pos + 1..].contains('=') => {
            (&token[..pos], Some(&token[pos + 1..]))
        }
        _ => (token, None),
    };
    let names = FAMILY_PARAMS
        .iter()
        .find(|(k, _)| *k == family)
        .map(|(_, names)| *names)
        .ok_or_else(|| GenError::UnknownFamily(family.to_owned()))?;
    let mut by_name: BTreeMap<&str, i64> = BTreeMap::new();
    if let Some(raw) = raw_params {
        for piece in raw.split(',') {
            let (k, v) = piece
                .split_once('=')
                .ok_or_else(|| GenError::BadParams(format!("expected `name=value` in `{piece}`")))?;
            let v: i64 =
                v.parse().map_err(|_| GenError::BadParams(format!("bad integer `{v}`")))?;
            by_name.insert(names.iter().find(|n| **n == k).copied().ok_or_else(|| {
                GenError::BadParams(format!("family `{family}` has no parameter `{k}`"))
            })?, v);
        }
    }
    let params: Vec<i64> = names
        .iter()
        .map(|n| {
            by_name
                .get(*n)
                .copied()
                .ok_or_else(|| GenError::BadParams(format!("missing parameter `{n}`")))
        })
        .collect::<Result<_, _>>()?;
    build(family, &params)
}

pub(crate) fn simplex(n: usize) -> FiniteSimplicialSet {
    standard_complex(StandardKind::Simplex(n)).expect("standard simplex")
}

fn usize_param(v: i64, name: &str) -> Result<usize, GenError> {
    usize::try_from(v).map_err(|_| GenError::BadParams(format!("`{name}` must be ≥ 0, got {v}")))
}

pub(crate) fn vertex_set(id: &CellId) -> BTreeSet<usize> {
    id.as_str().split('.').filter_map(|v| v.parse().ok()).collect()
}

/// Marks every cell of dimension ≥ 1 whose vertex set contains `required`.
fn containing_marks(
    x: &FiniteSimplicialSet,
    required: &[usize],
) -> BTreeMap<usize, BTreeSet<CellId>> {
    let mut marks: BTreeMap<usize, BTreeSet<CellId>> = BTreeMap::new();
    for (c, n) in x.all_cells() {
        if n == 0 {
            continue;
        }
        let verts = vertex_set(c);
        if required.iter().all(|v| verts.contains(v)) {
            marks.entry(n).or_default().insert(c.clone());
        }
    }
    marks
}

/// A horn inclusion `Λⁿᵢ ⊆ Δⁿ` with the target decoration restricted to the horn.
fn horn_restriction(
    n: usize,
    i: usize,
    target: Decoration,
) -> Result<DecoratedInclusion, GenError> {
    let horn = standard_complex(StandardKind::Horn(n, i))?;
    Ok(DecoratedInclusion::restriction_inclusion(&horn, &target)?)
}

/// The scaling `{Δ^{i−1,i,i+1}}` on `Δⁿ`, in the given kind.
fn triangle_scaling(n: usize, i: usize, kind: DecorationKind) -> Result<Decoration, GenError> {
    let tri = face_id(&[i - 1, i, i + 1]);
    let marks = [(2, [tri].into_iter().collect())].into_iter().collect();
    Ok(Decoration::new(simplex(n), kind, marks)?)
}

/// The collapsed-horn generator `Λⁿₕ ⨿_e Δ⁰ ⊆ Δⁿ ⨿_e Δ⁰` with the class of the
/// triangle `tri` scaled on both sides (where it exists); `e` is the collapsed edge.
pub(crate) fn collapsed_horn(
    n: usize,
    h: usize,
    edge: [usize; 2],
    tri: Option<[usize; 3]>,
    kind: DecorationKind,
) -> Result<DecoratedInclusion, GenError> {
    let horn = standard_complex(StandardKind::Horn(n, h))?;
    let dn = simplex(n);
    let e = simplex(1);
    let pt = standard_complex(StandardKind::Point)?;
    let vmap: BTreeMap<CellId, CellId> =
        [(face_id(&[0]), face_id(&[edge[0]])), (face_id(&[1]), face_id(&[edge[1]]))]
            .into_iter()
            .collect();
    let into_horn = SimplicialMap::from_vertex_map(&e, &horn, &vmap)?;
    let into_dn = SimplicialMap::from_vertex_map(&e, &dn, &vmap)?;
    let collapse = SimplicialMap::constant(&e, &pt, &face_id(&[0]))?;
    let ps = pushout(&into_horn, &collapse)?;
    let pt_push = pushout(&into_dn, &collapse)?;
    let horn_in_dn = crate::sskernel::MonoInclusion::subcomplex_inclusion(&horn, &dn)?;
    let u = horn_in_dn.map().then(&pt_push.from_left)?;
    let induced = pushout_induced(&ps, &u, &pt_push.from_right)?;

    let class_of = |leg: &SimplicialMap, verts: &[usize]| -> Result<CellId, GenError> {
        let img = leg.apply(&SimplexRef::cell(face_id(verts)))?;
        assert!(img.is_nondegenerate(), "scaled class collapsed to a degeneracy");
        Ok(img.target)
    };
    let mut target_marks: BTreeMap<usize, BTreeSet<CellId>> = BTreeMap::new();
    let mut source_marks: BTreeMap<usize, BTreeSet<CellId>> = BTreeMap::new();
    if let Some(t) = tri {
        target_marks
            .entry(2)
            .or_default()
            .insert(class_of(&pt_push.from_left, &t)?);
        if horn.has_cell(&face_id(&t)) {
            source_marks.entry(2).or_default().insert(class_of(&ps.from_left, &t)?);
        }
    }
    let source = Decoration::new(ps.complex.clone(), kind, source_marks)?;
    let target = Decoration::new(pt_push.complex.clone(), kind, target_marks)?;
    Ok(DecoratedInclusion::new(DecoratedMap::new(induced, source, target)?)?)
}

fn delta3_eq() -> Decoration {
    let marks: BTreeMap<usize, BTreeSet<CellId>> =
        [(1, [face_id(&[0, 2]), face_id(&[1, 3])].into_iter().collect())]
            .into_iter()
            .collect();
    th_k(simplex(3), 1).union_marks(&marks).expect("edges of Δ³ exist")
}

/// The truncated interval `sk_N(Cosk₀({0,1}))`: two nondegenerate cells per positive
/// dimension (the alternating vertex tuples), vertex-named and flagged 0-coskeletal.
fn j_skeleton(n_max: usize) -> FiniteSimplicialSet {
    let mut out = FiniteSimplicialSet::empty();
    out.set_vertex_named(true);
    for n in 0..=n_max {
        for start in [0usize, 1] {
            let tuple: Vec<CellId> =
                (0..=n).map(|k| CellId::from(((start + k) % 2).to_string())).collect();
            let id = CellId::new(
                tuple.iter().map(|v| v.as_str()).collect::<Vec<_>>().join("."),
            );
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let mut shorter = tuple.clone();
                        shorter.remove(i);
                        out.ref_from_vertex_tuple(&shorter)
                            .expect("lower interval cells already present")
                    })
                    .collect()
            };
            out.add_cell(id, n, faces).expect("interval cells are fresh");
        }
    }
    out.set_coskeletal0(true);
    out
}

/// The named special decorated objects.
pub fn special_object(name: &str) -> Result<Decoration, GenError> {
    if let Some(rest) = name.strip_prefix("J_trunc(").and_then(|r| r.strip_suffix(')')) {
        let n: usize =
            rest.parse().map_err(|_| GenError::BadParams(format!("bad truncation `{rest}`")))?;
        return Ok(Decoration::flat(j_skeleton(n), DecorationKind::Scaled));
    }
    if let Some(rest) = name.strip_prefix("J_sharp_trunc(").and_then(|r| r.strip_suffix(')')) {
        let n: usize =
            rest.parse().map_err(|_| GenError::BadParams(format!("bad truncation `{rest}`")))?;
        return Ok(Decoration::sharp(j_skeleton(n)));
    }
    match name {
        "delta3_eq" => Ok(delta3_eq()),
        "E2" => Ok(Decoration::flat(j_skeleton(2), DecorationKind::Stratified)),
        "th1_E2" => Ok(th_k(j_skeleton(2), 1)),
        _ => Err(GenError::UnknownObject(name.to_owned())),
    }
}

/// Builds the single instance of a family key at the given parameters.
pub fn build(family: &str, params: &[i64]) -> Result<GeneratorInstance, GenError> {
    let inst = |map: DecoratedInclusion| GeneratorInstance {
        family: family.to_owned(),
        params: params.to_vec(),
        map,
    };
    let two = |p: &[i64]| -> Result<(usize, usize), GenError> {
        match p {
            [n, i] => Ok((usize_param(*n, "n")?, usize_param(*i, "i")?)),
            _ => Err(GenError::BadParams(format!("expected 2 parameters, got {}", p.len()))),
        }
    };
    let one = |p: &[i64]| -> Result<usize, GenError> {
        match p {
            [n] => usize_param(*n, "n"),
            _ => Err(GenError::BadParams(format!("expected 1 parameter, got {}", p.len()))),
        }
    };
    match family {
        "scaled-S:inner" | "weak-fib:inner" => {
            let (n, i) = two(params)?;
            if n < 2 || i == 0 || i >= n {
                return Err(GenError::BadParams(format!("inner horn needs 0 < i < n, n ≥ 2; got n={n}, i={i}")));
            }
            let target = triangle_scaling(n, i, DecorationKind::Scaled)?;
            Ok(inst(horn_restriction(n, i, target)?))
        }
        "scaled-S:saturate" => {
            if !params.is_empty() {
                return Err(GenError::BadParams("saturate takes no parameters".into()));
            }
            let t: BTreeSet<CellId> = [
                face_id(&[0, 2, 4]),
                face_id(&[1, 2, 3]),
                face_id(&[0, 1, 3]),
                face_id(&[1, 3, 4]),
                face_id(&[0, 1, 2]),
            ]
            .into_iter()
            .collect();
            let mut t_prime = t.clone();
            t_prime.insert(face_id(&[0, 3, 4]));
            t_prime.insert(face_id(&[0, 1, 4]));
            let source = Decoration::new(
                simplex(4),
                DecorationKind::Scaled,
                [(2, t)].into_iter().collect(),
            )?;
            let target = Decoration::new(
                simplex(4),
                DecorationKind::Scaled,
                [(2, t_prime)].into_iter().collect(),
            )?;
            Ok(inst(DecoratedInclusion::mark_extension(source, target)?))
        }
        "scaled-S:collapsed0" | "weak-fib:collapsed0" => {
            let n = one(params)?;
            if n < 2 {
                return Err(GenError::BadParams(format!("collapsed horn needs n ≥ 2, got {n}")));
            }
            Ok(inst(collapsed_horn(n, 0, [0, 1], Some([0, 1, n]), DecorationKind::Scaled)?))
        }
        "weak-fib:collapsedN" => {
            let n = one(params)?;
            if n < 2 {
                return Err(GenError::BadParams(format!("collapsed horn needs n ≥ 2, got {n}")));
            }
            Ok(inst(collapsed_horn(
                n,
                n,
                [n - 1, n],
                Some([0, n - 1, n]),
                DecorationKind::Scaled,
            )?))
        }
        "complicial" => {
            let (n, i) = two(params)?;
            if n < 1 || i > n {
                return Err(GenError::BadParams(format!("complicial horn needs n ≥ 1, 0 ≤ i ≤ n; got n={n}, i={i}")));
            }
            let required = required_vertices(n, i);
            let marks = containing_marks(&simplex(n), &required);
            let target = Decoration::new(simplex(n), DecorationKind::Stratified, marks)?;
            Ok(inst(horn_restriction(n, i, target)?))
        }
        "thinness" => {
            let (n, i) = two(params)?;
            if n < 2 || i > n {
                return Err(GenError::BadParams(format!("thinness extension needs n ≥ 2, 0 ≤ i ≤ n; got n={n}, i={i}")));
            }
            let dn = simplex(n);
            let m_i = containing_marks(&dn, &required_vertices(n, i));
            let opposite = |j: usize| -> CellId {
                let verts: Vec<usize> = (0..=n).filter(|&v| v != j).collect();
                face_id(&verts)
            };
            let mut m_prime = m_i.clone();
            if i >= 1 {
                m_prime.entry(n - 1).or_default().insert(opposite(i - 1));
            }
            if i + 1 <= n {
                m_prime.entry(n - 1).or_default().insert(opposite(i + 1));
            }
            let mut m_dprime = m_i;
            for j in 0..=n {
                m_dprime.entry(n - 1).or_default().insert(opposite(j));
            }
            let source = Decoration::new(dn.clone(), DecorationKind::Stratified, m_prime)?;
            let target = Decoration::new(dn, DecorationKind::Stratified, m_dprime)?;
            Ok(inst(DecoratedInclusion::mark_extension(source, target)?))
        }
        "thinness-2trivial" => {
            let (n, i) = two(params)?;
            if !(n == 2 || n == 3) || i > n {
                return Err(GenError::BadParams(format!("reduced thinness list has n ∈ {{2,3}}, 0 ≤ i ≤ n; got n={n}, i={i}")));
            }
            let dn = simplex(n);
            let mut marks: BTreeMap<usize, BTreeSet<CellId>> = BTreeMap::new();
            for (c, d) in dn.all_cells() {
                if d == 0 {
                    continue;
                }
                let keep = if n == 2 {
                    // All faces containing vertex i.
                    vertex_set(c).contains(&i)
                } else {
                    // Faces of dimension ≥ 2 containing vertex i.
                    d >= 2 && vertex_set(c).contains(&i)
                };
                if keep {
                    marks.entry(d).or_default().insert(c.clone());
                }
            }
            if n == 3 {
                // Plus the edge {i−1,i,i+1} ∩ [3] in the end cases.
                if i == 0 {
                    marks.entry(1).or_default().insert(face_id(&[0, 1]));
                }
                if i == 3 {
                    marks.entry(1).or_default().insert(face_id(&[2, 3]));
                }
            }
            let source = Decoration::new(dn.clone(), DecorationKind::Stratified, marks)?;
            // In dimension 2 the extension marks everything.  In dimension 3
            // it only adds the missing triangle marks: the full-dimensional
            // thinness extensions impose no edge constraints beyond the
            // source, so marking all edges there would reject sound objects
            // (e.g. any complex with a doubly degenerate simplex over an
            // unmarked edge).
            let target = if n == 2 {
                th_k(dn, 0)
            } else {
                source.union_marks(th_k(dn, 1).marks())?
            };
            Ok(inst(DecoratedInclusion::mark_extension(source, target)?))
        }
        "trivializer" => {
            let (k, n) = match params {
                [k, n] => (usize_param(*k, "k")?, usize_param(*n, "n")?),
                _ => {
                    return Err(GenError::BadParams(format!(
                        "expected 2 parameters, got {}",
                        params.len()
                    )))
                }
            };
            if n <= k {
                return Err(GenError::BadParams(format!("trivializer needs n > k; got k={k}, n={n}")));
            }
            let dn = simplex(n);
            let source = Decoration::flat(dn.clone(), DecorationKind::Stratified);
            let marks = [(n, [face_id(&(0..=n).collect::<Vec<_>>())].into_iter().collect())]
                .into_iter()
                .collect();
            let target = Decoration::new(dn, DecorationKind::Stratified, marks)?;
            Ok(inst(DecoratedInclusion::mark_extension(source, target)?))
        }
        "saturation" => {
            let n = match params {
                [n] if *n >= -1 => *n,
                [n] => return Err(GenError::BadParams(format!("saturation needs n ≥ −1, got {n}"))),
                _ => {
                    return Err(GenError::BadParams(format!(
                        "expected 1 parameter, got {}",
                        params.len()
                    )))
                }
            };
            let (source, target) = if n == -1 {
                // Δ^{−1} = ∅, and join with the empty set is the identity.
                (delta3_eq(), th_k(simplex(3), 0))
            } else {
                let flat = Decoration::flat(simplex(n as usize), DecorationKind::Stratified);
                (
                    crate::strat::join_stratified(&delta3_eq(), &flat)?,
                    crate::strat::join_stratified(&th_k(simplex(3), 0), &flat)?,
                )
            };
            Ok(inst(DecoratedInclusion::mark_extension(source, target)?))
        }
        "prism-upper" | "prism-lower" => {
            let (n, k) = match params {
                [n, k] => (usize_param(*n, "n")?, usize_param(*k, "k")?),
                _ => {
                    return Err(GenError::BadParams(format!(
                        "expected 2 parameters, got {}",
                        params.len()
                    )))
                }
            };
            if k > n {
                return Err(GenError::BadParams(format!(
                    "prism horn needs n ≥ 1, 0 ≤ k ≤ n; got n={n}, k={k}"
                )));
            }
            // The scaling T_k: every triangle of Δ^{n+1} containing the edge {k, k+1}.
            let triangles: BTreeSet<CellId> = containing_marks(&simplex(n + 1), &[k, k + 1])
                .remove(&2)
                .unwrap_or_default();
            let target = Decoration::new(
                simplex(n + 1),
                DecorationKind::Scaled,
                [(2, triangles)].into_iter().collect(),
            )?;
            let h = if family == "prism-upper" { k } else { k + 1 };
            Ok(inst(horn_restriction(n + 1, h, target)?))
        }
        "marked-scaled-AS:inner" => {
            let (n, i) = two(params)?;
            if n < 2 || i == 0 || i >= n {
                return Err(GenError::BadParams(format!("inner horn needs 0 < i < n, n ≥ 2; got n={n}, i={i}")));
            }
            let target = triangle_scaling(n, i, DecorationKind::MarkedScaled)?;
            Ok(inst(horn_restriction(n, i, target)?))
        }
        "marked-scaled-AS:cart" => {
            let n = one(params)?;
            if n < 1 {
                return Err(GenError::BadParams("cartesian horn needs n ≥ 1".into()));
            }
            let marks =
                [(1, [face_id(&[n - 1, n])].into_iter().collect())].into_iter().collect();
            let target = Decoration::new(simplex(n), DecorationKind::MarkedScaled, marks)?;
            Ok(inst(horn_restriction(n, n, target)?))
        }
        "marked-scaled-AS:collapsed0" => {
            let n = one(params)?;
            if n < 2 {
                return Err(GenError::BadParams(format!("collapsed horn needs n ≥ 2, got {n}")));
            }
            Ok(inst(collapsed_horn(n, 0, [0, 1], None, DecorationKind::MarkedScaled)?))
        }
        "marked-scaled-AS:mark2" => {
            if !params.is_empty() {
                return Err(GenError::BadParams("mark2 takes no parameters".into()));
            }
            let d2 = simplex(2);
            let source = Decoration::flat(d2.clone(), DecorationKind::MarkedScaled);
            let marks = [(2, [face_id(&[0, 1, 2])].into_iter().collect())].into_iter().collect();
            let target = Decoration::new(d2, DecorationKind::MarkedScaled, marks)?;
            Ok(inst(DecoratedInclusion::mark_extension(source, target)?))
        }
        _ => Err(GenError::UnknownFamily(family.to_owned())),
    }
}

/// The vertex set `{i−1, i, i+1} ∩ [n]`.
fn required_vertices(n: usize, i: usize) -> Vec<usize> {
    let mut out = Vec::new();
    if i >= 1 {
        out.push(i - 1);
    }
    out.push(i);
    if i + 1 <= n {
        out.push(i + 1);
    }
    out
}

/// All instances of the named family with dimension parameter ≤ `n_max`, in canonical
/// order.  Accepted names: `scaled_S`, `weak_fib`, `complicial_horn` (or `complicial`),
/// `thinness`, `thinness_2trivial`, `trivializer(k)`, `saturation`, `marked_scaled_AS`
/// (dashes accepted for underscores throughout).
pub fn family(name: &str, n_max: usize) -> Result<Vec<GeneratorInstance>, GenError> {
    let canon = name.replace('-', "_");
    let mut out = Vec::new();
    let nm = n_max as i64;
    match canon.as_str() {
        "scaled_S" => {
            for n in 2..=nm {
                for i in 1..n {
                    out.push(build("scaled-S:inner", &[n, i])?);
                }
            }
            if nm >= 4 {
                out.push(build("scaled-S:saturate", &[])?);
            }
            for n in 2..=nm {
                out.push(build("scaled-S:collapsed0", &[n])?);
            }
        }
        "weak_fib" => {
            for n in 2..=nm {
                for i in 1..n {
                    out.push(build("weak-fib:inner", &[n, i])?);
                }
            }
            for n in 2..=nm {
                out.push(build("weak-fib:collapsed0", &[n])?);
            }
            for n in 2..=nm {
                out.push(build("weak-fib:collapsedN", &[n])?);
            }
        }
        "complicial" | "complicial_horn" => {
            for n in 1..=nm {
                for i in 0..=n {
                    out.push(build("complicial", &[n, i])?);
                }
            }
        }
        "thinness" => {
            for n in 2..=nm {
                for i in 0..=n {
                    out.push(build("thinness", &[n, i])?);
                }
            }
        }
        "thinness_2trivial" => {
            if nm >= 2 {
                for i in 0..=2 {
                    out.push(build("thinness-2trivial", &[2, i])?);
                }
            }
            if nm >= 3 {
                for i in 0..=3 {
                    out.push(build("thinness-2trivial", &[3, i])?);
                }
            }
        }
        "saturation" => {
            for n in -1..=nm {
                out.push(build("saturation", &[n])?);
            }
        }
        "marked_scaled_AS" => {
            for n in 2..=nm {
                for i in 1..n {
                    out.push(build("marked-scaled-AS:inner", &[n, i])?);
                }
            }
            for n in 1..=nm {
                out.push(build("marked-scaled-AS:cart", &[n])?);
            }
            for n in 2..=nm {
                out.push(build("marked-scaled-AS:collapsed0", &[n])?);
            }
            if nm >= 2 {
                out.push(build("marked-scaled-AS:mark2", &[])?);
            }
        }
        other => {
            // trivializer(k) / trivializer:k=K / trivializer_k form.
            if let Some(k) = parse_trivializer_k(other) {
                for n in (k as i64 + 1)..=nm {
                    out.push(build("trivializer", &[k as i64, n])?);
                }
            } else {
                return Err(GenError::UnknownFamily(name.to_owned()));
            }
        }
    }
    Ok(out)
}

fn parse_trivializer_k(name: &str) -> Option<usize> {
    let rest = name.strip_prefix("trivializer")?;
    let digits: String = rest.chars().filter(|c| c.is_ascii_digit()).collect();
    if rest.is_empty() || digits.is_empty() {
        return None;
    }
    digits.parse().ok()
}

/// The cylinder end inclusion `{0,1}_♭ → J_♯` (truncated).
fn cylinder_inclusion(trunc: usize) -> Result<DecoratedInclusion, GenError> {
    let ends = standard_complex(StandardKind::Boundary(1))?;
    let j = j_skeleton(trunc);
    let vmap: BTreeMap<CellId, CellId> =
        [(face_id(&[0]), face_id(&[0])), (face_id(&[1]), face_id(&[1]))].into_iter().collect();
    let map = SimplicialMap::from_vertex_map(&ends, &j, &vmap)?;
    let source = Decoration::flat(ends, DecorationKind::Scaled);
    let target = Decoration::sharp(j);
    Ok(DecoratedInclusion::new(DecoratedMap::new(map, source, target)?)?)
}

/// An endpoint inclusion `{ε} → J_♯` (truncated).
fn endpoint_inclusion(trunc: usize, eps: usize) -> Result<DecoratedInclusion, GenError> {
    let pt = standard_complex(StandardKind::Point)?;
    let j = j_skeleton(trunc);
    let vmap: BTreeMap<CellId, CellId> =
        [(face_id(&[0]), CellId::from(eps.to_string()))].into_iter().collect();
    let map = SimplicialMap::from_vertex_map(&pt, &j, &vmap)?;
    let source = Decoration::flat(pt, DecorationKind::Scaled);
    let target = Decoration::sharp(j);
    Ok(DecoratedInclusion::new(DecoratedMap::new(map, source, target)?)?)
}

/// The basic monomorphisms `∂Δⁿ_♭ ⊆ Δⁿ_♭` (`n ≤ n_max`) and `Δ²_♭ ⊆ Δ²_♯`.
fn mono_generators(n_max: usize) -> Result<Vec<DecoratedInclusion>, GenError> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        let boundary = standard_complex(StandardKind::Boundary(n))?;
        let ambient = Decoration::flat(simplex(n), DecorationKind::Scaled);
        out.push(DecoratedInclusion::restriction_inclusion(&boundary, &ambient)?);
    }
    if n_max >= 2 {
        let d2 = simplex(2);
        out.push(DecoratedInclusion::mark_extension(
            Decoration::flat(d2.clone(), DecorationKind::Scaled),
            Decoration::sharp(d2),
        )?);
    }
    Ok(out)
}

/// The Λ-construction: iterated pushout-products `∂ □ f` of the maps of `S` with the
/// cylinder end inclusion `{0,1} → J_♯` (J truncated to dimension `n_max + 1`), up to
/// the given depth, followed by the endpoint pushout-products `∂^ε □ i` over the basic
/// monomorphisms of dimension ≤ `n_max`.
pub fn lambda_generators(
    s: &[DecoratedInclusion],
    depth: usize,
    n_max: usize,
) -> Result<Vec<DecoratedInclusion>, GenError> {
    let cyl = cylinder_inclusion(n_max + 1)?;
    let mut out: Vec<DecoratedInclusion> = s.to_vec();
    let mut layer: Vec<DecoratedInclusion> = s.to_vec();
    for _ in 0..depth {
        if layer.is_empty() {
            break;
        }
        let next: Vec<DecoratedInclusion> = layer
            .iter()
            .map(|f| pushout_product(&cyl, f))
            .collect::<Result<_, _>>()?;
        out.extend(next.iter().cloned());
        layer = next;
    }
    for eps in 0..2 {
        let end = endpoint_inclusion(n_max + 1, eps)?;
        for i in mono_generators(n_max)? {
            out.push(pushout_product(&end, &i)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(x: &FiniteSimplicialSet) -> Vec<usize> {
        (0..=x.dim()).map(|n| x.cells(n).count()).collect()
    }

    #[test]
    fn saturate_generator_scalings() {
        let g = build("scaled-S:saturate", &[]).unwrap();
        let src: BTreeSet<String> =
            g.map.source().marks_in_dim(2).map(|c| c.to_string()).collect();
        let tgt: BTreeSet<String> =
            g.map.target().marks_in_dim(2).map(|c| c.to_string()).collect();
        let t: BTreeSet<String> = ["0.2.4", "1.2.3", "0.1.3", "1.3.4", "0.1.2"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(src, t);
        let mut t_prime = t;
        t_prime.insert("0.3.4".into());
        t_prime.insert("0.1.4".into());
        assert_eq!(tgt, t_prime);
    }

    #[test]
    fn inner_horn_generator_shapes() {
        let g = build("scaled-S:inner", &[2, 1]).unwrap();
        assert_eq!(counts(g.map.source().carrier()), vec![3, 2]);
        assert_eq!(counts(g.map.target().carrier()), vec![3, 3, 1]);
        // n = 2: the scaled triangle is the top cell, absent from the horn.
        assert_eq!(g.map.source().marks_in_dim(2).count(), 0);
        assert_eq!(
            g.map.target().marks_in_dim(2).map(|c| c.to_string()).collect::<Vec<_>>(),
            vec!["0.1.2"]
        );
        // n = 3, i = 1: the triangle 0.1.2 lies in the horn.
        let g3 = build("scaled-S:inner", &[3, 1]).unwrap();
        assert_eq!(g3.map.source().marks_in_dim(2).count(), 1);
    }

    #[test]
    fn collapsed_horn_generator_shapes() {
        let g = build("scaled-S:collapsed0", &[2]).unwrap();
        assert_eq!(counts(g.map.source().carrier()), vec![2, 1]);
        assert_eq!(counts(g.map.target().carrier()), vec![2, 2, 1]);
        assert_eq!(g.map.source().marks_in_dim(2).count(), 0);
        assert_eq!(g.map.target().marks_in_dim(2).count(), 1);
        assert!(g.map.map().is_mono());

        let g3 = build("scaled-S:collapsed0", &[3]).unwrap();
        // Λ³₀ collapsed: triangle 0.1.3 survives and is scaled on both sides.
        assert_eq!(g3.map.source().marks_in_dim(2).count(), 1);
        assert_eq!(g3.map.target().marks_in_dim(2).count(), 1);
        g3.map.map().validate().unwrap();
    }

    #[test]
    fn complicial_marking_counts() {
        // n = 2, i = 1: required vertices {0,1,2} → only the top triangle.
        let g = build("complicial", &[2, 1]).unwrap();
        let marked: Vec<String> =
            g.map.target().marks().values().flatten().map(|c| c.to_string()).collect();
        assert_eq!(marked, vec!["0.1.2"]);
        // n = 1, i = 0: required {0,1} → the edge.
        let g1 = build("complicial", &[1, 0]).unwrap();
        let marked1: Vec<String> =
            g1.map.target().marks().values().flatten().map(|c| c.to_string()).collect();
        assert_eq!(marked1, vec!["0.1"]);
    }

    #[test]
    fn complicial_marking_count_formula() {
        // |M_i| = 2^(n+1−|R|): supersets of the required set R.
        for n in 1..=5usize {
            for i in 0..=n {
                let g = build("complicial", &[n as i64, i as i64]).unwrap();
                let r = required_vertices(n, i).len();
                let expected = 1usize << (n + 1 - r);
                let got: usize = g.map.target().marks().values().map(|s| s.len()).sum();
                assert_eq!(got, expected, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn thinness_2trivial_marks() {
        let g = build("thinness-2trivial", &[2, 1]).unwrap();
        let src: BTreeSet<String> =
            g.map.source().marks().values().flatten().map(|c| c.to_string()).collect();
        assert_eq!(
            src,
            ["0.1", "1.2", "0.1.2"].into_iter().map(String::from).collect()
        );
        let tgt: usize = g.map.target().marks().values().map(|s| s.len()).sum();
        assert_eq!(tgt, 4); // th(Δ²): all positive-dimensional cells.

        let g30 = build("thinness-2trivial", &[3, 0]).unwrap();
        assert!(g30.map.source().is_marked_cell(&face_id(&[0, 1])));
        assert!(!g30.map.source().is_marked_cell(&face_id(&[2, 3])));
    }

    #[test]
    fn saturation_endpoints() {
        // n = −1 is literally Δ³_eq → th(Δ³).
        let g = build("saturation", &[-1]).unwrap();
        assert_eq!(*g.map.source(), special_object("delta3_eq").unwrap());
        assert_eq!(*g.map.target(), th_k(simplex(3), 0));
        // n = 0: carrier is Δ³ ⋆ Δ⁰ ≅ Δ⁴.
        let g0 = build("saturation", &[0]).unwrap();
        assert_eq!(counts(g0.map.source().carrier()), vec![5, 10, 10, 5, 1]);
        g0.map.map().validate().unwrap();
    }

    #[test]
    fn marked_scaled_cart_marks() {
        let g1 = build("marked-scaled-AS:cart", &[1]).unwrap();
        // Λ¹₁ is just the vertex 1: no marked edge on the source.
        assert_eq!(g1.map.source().marks().len(), 0);
        assert!(g1.map.target().is_marked_cell(&face_id(&[0, 1])));
        let g2 = build("marked-scaled-AS:cart", &[2]).unwrap();
        assert!(g2.map.source().is_marked_cell(&face_id(&[1, 2])));
        assert!(g2.map.target().is_marked_cell(&face_id(&[1, 2])));
        assert_eq!(g2.map.target().marks_in_dim(2).count(), 0);
    }

    #[test]
    fn special_objects() {
        let e2 = special_object("E2").unwrap();
        assert_eq!(counts(e2.carrier()), vec![2, 2, 2]);
        let th1 = special_object("th1_E2").unwrap();
        assert_eq!(th1.marks_in_dim(1).count(), 0);
        assert_eq!(th1.marks_in_dim(2).count(), 2);
        let j3 = special_object("J_trunc(3)").unwrap();
        assert_eq!(counts(j3.carrier()), vec![2, 2, 2, 2]);
        assert!(j3.carrier().coskeletal0());
        let js = special_object("J_sharp_trunc(3)").unwrap();
        assert_eq!(js.marks_in_dim(2).count(), 2);
        let eq = special_object("delta3_eq").unwrap();
        assert_eq!(eq.marks_in_dim(1).count(), 2);
        assert_eq!(eq.marks_in_dim(2).count(), 4);
        assert_eq!(eq.marks_in_dim(3).count(), 1);
    }

    #[test]
    fn tokens_round_trip() {
        for name in ["scaled_S", "weak_fib", "complicial", "thinness_2trivial", "saturation",
            "marked_scaled_AS", "trivializer(1)"]
        {
            for g in family(name, 3).unwrap() {
                let back = parse_instance(&g.token()).unwrap();
                assert_eq!(back.family, g.family);
                assert_eq!(back.params, g.params);
                assert_eq!(back.map.map(), g.map.map());
                assert_eq!(back.map.source(), g.map.source());
                assert_eq!(back.map.target(), g.map.target());
            }
        }
    }

    #[test]
    fn trivializer_family_range() {
        let f = family("trivializer(2)", 4).unwrap();
        let tokens: Vec<String> = f.iter().map(|g| g.token()).collect();
        assert_eq!(tokens, vec!["trivializer:k=2,n=3", "trivializer:k=2,n=4"]);
    }

    #[test]
    fn lambda_base_cases() {
        // Empty S: only the endpoint pushout-products survive.
        let only_ends = lambda_generators(&[], 7, 1).unwrap();
        assert_eq!(only_ends.len(), 4); // 2 ε × {∂Δ⁰⊆Δ⁰, ∂Δ¹⊆Δ¹}
        // ∂⁰ □ (∅ ⊆ Δ⁰) is an endpoint inclusion: a point into the interval skeleton.
        assert_eq!(counts(only_ends[0].source().carrier()), vec![1]);
        assert!(only_ends[0].map().is_mono());

        // Depth 0 keeps S itself first.
        let s = mono_generators(1).unwrap();
        let out = lambda_generators(&s, 0, 1).unwrap();
        assert_eq!(out[0].map(), s[0].map());
        assert_eq!(out.len(), s.len() + 4);
    }

    #[test]
    fn lambda_depth_one_is_a_cylinder_pushout_product() {
        let ambient = Decoration::flat(simplex(1), DecorationKind::Scaled);
        let b1 = standard_complex(StandardKind::Boundary(1)).unwrap();
        let f = DecoratedInclusion::restriction_inclusion(&b1, &ambient).unwrap();
        let out = lambda_generators(&[f.clone()], 1, 1).unwrap();
        // Entry 1 is ∂ □ f; its target is J_trunc × Δ¹.
        let g = &out[1];
        assert!(g.map().is_mono());
        g.map().validate().unwrap();
        let target = g.target().carrier();
        // (J truncated to dim 2) × Δ¹ has 4 vertices.
        assert_eq!(target.cells(0).count(), 4);
        // Source = (J × ∂Δ¹) ∪ ({0,1} × Δ¹): strictly smaller than the target.
        assert!(g.source().carrier().cell_count() < target.cell_count());
    }
}
