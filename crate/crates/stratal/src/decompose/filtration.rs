//! Closed-form certificates: prism filtrations and pushout-join corners.

use std::collections::{BTreeMap, BTreeSet};

use crate::constructions::{join_marked_scaled, product_scaled};
use crate::generators::{build, simplex, GeneratorInstance};
use crate::sskernel::{
    face_id, join_map, pushout, pushout_induced, standard_complex, CellId, SimplexRef,
    SimplicialMap, StandardKind,
};
use crate::strat::{DecoratedInclusion, DecoratedMap, Decoration, DecorationKind};

use super::prism::Prism;
use super::{msg, pushout_step, CertStep, Certificate, DecompError};

/// Which filtration of the prism inclusion to certify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrismVariant {
    /// `(Δ¹ × ∂Δⁿ) ∪ ({0} × Δⁿ) ⊆ Δ¹ × Δⁿ`, product scaling, prism horns at the
    /// initial vertex of each attached `(n+1)`-simplex.
    Upper,
    /// `(Δ¹ × ∂Δⁿ) ∪ ({1} × Δⁿ) ⊆ Δ¹ × Δⁿ`, product scaling, prism horns at the
    /// vertex after the bend.
    Lower,
    /// The upper inclusion against the larger scaling `L`: all triangles
    /// `{(0,i),(1,i),(1,j)}` and `{(0,i),(0,j),(1,j)}`.  All intermediate steps are
    /// inner-horn generators; only the final step is a prism horn.
    ScaledL,
}

impl PrismVariant {
    pub fn parse(s: &str) -> Option<PrismVariant> {
        match s {
            "upper" => Some(PrismVariant::Upper),
            "lower" => Some(PrismVariant::Lower),
            "scaled-L" | "scaled_L" => Some(PrismVariant::ScaledL),
            _ => None,
        }
    }
}

fn scaled_l_marks(prism: &Prism) -> BTreeSet<CellId> {
    let mut marks = BTreeSet::new();
    for c in prism.product.complex.cells(2) {
        let chain = &prism.chain_of[c];
        let is_l = match chain.as_slice() {
            [(0, i), (1, i2), (1, j)] => i == i2 && i < j,
            [(0, i), (0, j), (1, j2)] => j == j2 && i < j,
            _ => false,
        };
        if is_l {
            marks.insert(c.clone());
        }
    }
    marks
}

/// The certified filtration of the prism inclusion: the goal inclusion together with a
/// certificate whose `k`-th step attaches the `(n+1)`-simplex `τ_k` along a horn.
pub fn prism_filtration(
    n: usize,
    variant: PrismVariant,
) -> Result<(DecoratedInclusion, Certificate), DecompError> {
    if n == 0 && variant == PrismVariant::ScaledL {
        return Err(msg("the inner-horn filtration needs n ≥ 1"));
    }
    let prism = Prism::new(n)?;
    let flat1 = Decoration::flat(simplex(1), DecorationKind::Scaled);
    let flatn = Decoration::flat(simplex(n), DecorationKind::Scaled);
    let ambient = match variant {
        PrismVariant::Upper | PrismVariant::Lower => {
            product_scaled(&flat1, &flatn)?.decoration
        }
        PrismVariant::ScaledL => Decoration::new(
            prism.product.complex.clone(),
            DecorationKind::Scaled,
            [(2, scaled_l_marks(&prism))].into_iter().collect(),
        )?,
    };

    // The base: Δ¹ × ∂Δⁿ together with the closed endpoint slice.
    let endpoint = match variant {
        PrismVariant::Upper | PrismVariant::ScaledL => 0,
        PrismVariant::Lower => 1,
    };
    let top = face_id(&(0..=n).collect::<Vec<_>>());
    let mut seed: BTreeSet<CellId> = BTreeSet::new();
    for (c, _) in prism.product.complex.all_cells() {
        let (_, rr) = &prism.product.components[c];
        let in_boundary = rr.target != top;
        let in_endpoint = prism.chain_of[c].iter().all(|&(eps, _)| eps == endpoint);
        if in_boundary || in_endpoint {
            seed.insert(c.clone());
        }
    }
    let base = prism.product.complex.subcomplex(&seed)?;
    let goal = DecoratedInclusion::restriction_inclusion(&base, &ambient)?;

    let ks: Vec<usize> = match variant {
        PrismVariant::Upper | PrismVariant::ScaledL => (0..=n).rev().collect(),
        PrismVariant::Lower => (0..=n).collect(),
    };
    let mut current = goal.source().clone();
    let mut embed = goal.map().clone();
    let mut steps = Vec::new();
    for k in ks {
        let gen = match variant {
            PrismVariant::Upper => build("prism-upper", &[n as i64, k as i64])?,
            PrismVariant::Lower => build("prism-lower", &[n as i64, k as i64])?,
            PrismVariant::ScaledL if k >= 1 => {
                build("scaled-S:inner", &[n as i64 + 1, k as i64])?
            }
            PrismVariant::ScaledL => build("prism-upper", &[n as i64, 0])?,
        };
        let tau = prism.tau(k)?;
        // Pull each horn cell back along the (monic) embedding of the current object.
        let mut inverse: BTreeMap<CellId, CellId> = BTreeMap::new();
        for (c, _) in current.carrier().all_cells() {
            let img = embed.cell_image(c)?;
            debug_assert!(img.is_nondegenerate());
            inverse.insert(img.target.clone(), c.clone());
        }
        let mut assign: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
        for (c, _) in gen.map.source().carrier().all_cells() {
            let amb = tau.cell_image(c)?;
            let pre = inverse.get(&amb.target).ok_or_else(|| {
                msg(format!("horn cell `{c}` is not yet present at step k={k}"))
            })?;
            assign.insert(c.clone(), SimplexRef::cell(pre.clone()));
        }
        let attach = SimplicialMap::new(
            gen.map.source().carrier().clone(),
            current.carrier().clone(),
            assign,
        )?;
        let (next, p) = pushout_step(&gen, &attach, &current)?;
        embed = pushout_induced(&p, &tau, &embed)?;
        steps.push(CertStep { generator: gen.token(), attach: attach.assign().clone() });
        current = next;
    }
    if !embed.is_iso() {
        return Err(msg("internal error: the filtration does not exhaust the prism"));
    }
    Ok((goal, Certificate { steps, retract: None }))
}

/// The pushout-join (corner) of a marked-scaled inclusion `f : X ↪ Y` and a scaled
/// inclusion `g : A ↪ B`: the induced inclusion
/// `(X ⋆ B) ∪_{X ⋆ A} (Y ⋆ A) ↪ Y ⋆ B`.
pub fn pushout_join(
    f: &DecoratedInclusion,
    g: &DecoratedInclusion,
) -> Result<DecoratedInclusion, DecompError> {
    let (x, y) = (f.source(), f.target());
    let (a, b) = (g.source(), g.target());
    let xa = join_marked_scaled(x, a)?;
    let xb = join_marked_scaled(x, b)?;
    let ya = join_marked_scaled(y, a)?;
    let yb = join_marked_scaled(y, b)?;
    let id_x = SimplicialMap::identity(x.carrier());
    let id_y = SimplicialMap::identity(y.carrier());
    let id_a = SimplicialMap::identity(a.carrier());
    let id_b = SimplicialMap::identity(b.carrier());
    let to_xb = join_map(&id_x, g.map(), &xa.join, &xb.join)?;
    let to_ya = join_map(f.map(), &id_a, &xa.join, &ya.join)?;
    let p = pushout(&to_xb, &to_ya)?;
    let u = join_map(f.map(), &id_b, &xb.join, &yb.join)?;
    let v = join_map(&id_y, g.map(), &ya.join, &yb.join)?;
    let induced = pushout_induced(&p, &u, &v)?;
    let mut marks: BTreeMap<usize, BTreeSet<CellId>> = BTreeMap::new();
    for (leg, dec) in [(&p.from_left, &xb.decoration), (&p.from_right, &ya.decoration)] {
        for (dim, cells) in dec.marks() {
            for c in cells {
                let image = leg.cell_image(c)?;
                if image.is_nondegenerate() {
                    marks.entry(*dim).or_default().insert(image.target.clone());
                }
            }
        }
    }
    let corner = Decoration::new(p.complex.clone(), yb.decoration.kind(), marks)?;
    Ok(DecoratedInclusion::new(DecoratedMap::new(induced, corner, yb.decoration)?)?)
}

/// The four generator shapes whose corner against a flat boundary inclusion is
/// analysed in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PushoutJoinCase {
    /// Marked-scaled inner horn `(Λᵐᵢ ⊆ Δᵐ)`; the corner is a single pushout of the
    /// marked-scaled inner horn in dimension `m + n + 1` at the same index.
    Inner { m: usize, i: usize },
    /// Marked-scaled outer (cartesian) horn `(Λᵐₘ ⊆ Δᵐ)` with final edge marked; the
    /// corner is a single pushout of the marked-scaled *inner* horn in dimension
    /// `m + n + 1` at index `m`.
    Cart { m: usize },
    /// Collapsed zeroth horn; the corner is a single pushout of the collapsed horn in
    /// dimension `m + n + 1`.
    Collapsed0 { m: usize },
    /// The triangle-scaling generator `(Δ²)♭ → (Δ²)♯`; the corner is an isomorphism.
    Mark2,
}

impl PushoutJoinCase {
    fn generator(&self) -> Result<GeneratorInstance, DecompError> {
        Ok(match *self {
            PushoutJoinCase::Inner { m, i } => {
                build("marked-scaled-AS:inner", &[m as i64, i as i64])?
            }
            PushoutJoinCase::Cart { m } => build("marked-scaled-AS:cart", &[m as i64])?,
            PushoutJoinCase::Collapsed0 { m } => {
                build("marked-scaled-AS:collapsed0", &[m as i64])?
            }
            PushoutJoinCase::Mark2 => build("marked-scaled-AS:mark2", &[])?,
        })
    }

    fn corner_generator(&self, n: usize) -> Result<Option<GeneratorInstance>, DecompError> {
        Ok(match *self {
            PushoutJoinCase::Inner { m, i } => {
                Some(build("scaled-S:inner", &[(m + n + 1) as i64, i as i64])?)
            }
            PushoutJoinCase::Cart { m } => {
                Some(build("scaled-S:inner", &[(m + n + 1) as i64, m as i64])?)
            }
            PushoutJoinCase::Collapsed0 { m } => {
                Some(build("scaled-S:collapsed0", &[(m + n + 1) as i64])?)
            }
            PushoutJoinCase::Mark2 => None,
        })
    }
}

/// The corner of a marked-scaled generator against the flat boundary `∂Δⁿ ⊆ Δⁿ`,
/// together with a certificate decomposing it (a single pushout of the expected
/// generator, or the empty certificate when the corner is an isomorphism).
pub fn pushout_join_cells(
    case: PushoutJoinCase,
    n: usize,
) -> Result<(DecoratedInclusion, Certificate), DecompError> {
    let f = case.generator()?;
    let boundary = standard_complex(StandardKind::Boundary(n))?;
    let g = DecoratedInclusion::restriction_inclusion(
        &boundary,
        &Decoration::flat(simplex(n), DecorationKind::Scaled),
    )?;
    let goal = pushout_join(&f.map, &g)?;
    match case.corner_generator(n)? {
        None => {
            if !goal.map().is_iso() {
                return Err(msg("expected the corner to be an isomorphism"));
            }
            Ok((goal, Certificate::empty()))
        }
        Some(gen) => {
            let budget = super::SearchBudget::new(1, goal.target().carrier().cell_count());
            let cert = super::search_certificate(&goal, &[gen], &budget)?
                .ok_or_else(|| msg("no one-step certificate found for the corner"))?;
            Ok((goal, cert))
        }
    }
}
