//! Certified anodyne decompositions.
//!
//! A *certificate* explains a decorated inclusion as a finite composite of pushouts of
//! named generators, optionally followed by a single retract.  Certificates are plain
//! data: `verify_certificate` replays every pushout from scratch and accepts only when
//! the replayed composite is isomorphic to the stated goal (marks included), so a
//! certificate produced by any search is independently checkable.
//!
//! The module also contains closed-form certificate builders: the prism filtrations of
//! `Δ¹ × Δⁿ`, the pushout-join corner analysis, and the simplex-collapse extension and
//! lifting algorithms used by the moving construction for natural transformations.

mod filtration;
mod moving;
mod prism;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::{parse_instance, GenError, GeneratorInstance};
use crate::lifting::decorated_maps;
use crate::sskernel::{
    enumerate_maps_with, pushout, CellId, KernelError, Pushout, SimplexRef, SimplicialMap,
};
use crate::strat::{
    decoration_from_json, decoration_to_json, DecoratedInclusion, DecoratedMap, Decoration,
    StratError,
};

pub use filtration::{prism_filtration, pushout_join, pushout_join_cells, PrismVariant,
    PushoutJoinCase};
pub use moving::{check_transformation, extend_transformation, is_admissible,
    lift_transformation, section_of, transformation_domain};

#[derive(Debug, Error)]
pub enum DecompError {
    #[error("{0}")]
    Message(String),
    #[error(transparent)]
    Strat(#[from] StratError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn msg(s: impl Into<String>) -> DecompError {
    DecompError::Message(s.into())
}

/// One step of a certificate: a generator token and the attaching map of its source
/// into the object built so far (cell assignment, validated on replay).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertStep {
    pub generator: String,
    pub attach: BTreeMap<CellId, SimplexRef>,
}

/// A terminal retract: the goal target is exhibited as a retract of the built object
/// over the goal source, via a section and a retraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Retract {
    pub section: BTreeMap<CellId, SimplexRef>,
    pub retraction: BTreeMap<CellId, SimplexRef>,
}

/// A decomposition certificate: pushout steps followed by at most one retract.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub steps: Vec<CertStep>,
    pub retract: Option<Retract>,
}

impl Certificate {
    pub fn empty() -> Self {
        Certificate { steps: Vec::new(), retract: None }
    }
}

/// Search budget for `search_certificate`.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    /// Maximum number of pushout steps in a certificate.
    pub max_steps: usize,
    /// Maximum number of nondegenerate cells of any intermediate object.
    pub max_cells: usize,
    /// Maximum number of intermediate states explored before giving up.
    pub max_states: usize,
}

impl SearchBudget {
    pub fn new(max_steps: usize, max_cells: usize) -> Self {
        SearchBudget { max_steps, max_cells, max_states: 5000 }
    }
}

/// Replays one certificate step: the pushout of the generator along `attach`.
/// Returns the decorated pushout together with the raw pushout data.
fn pushout_step(
    gen: &GeneratorInstance,
    attach: &SimplicialMap,
    current: &Decoration,
) -> Result<(Decoration, Pushout), DecompError> {
    let src = gen.map.source();
    if src.kind() != current.kind() {
        return Err(msg(format!(
            "generator `{}` has kind {:?}, object has kind {:?}",
            gen.token(),
            src.kind(),
            current.kind()
        )));
    }
    if attach.source() != src.carrier() || attach.target() != current.carrier() {
        return Err(msg(format!(
            "attaching map of `{}` does not match the generator source and the object",
            gen.token()
        )));
    }
    for (dim, cells) in src.marks() {
        for c in cells {
            let image = attach.cell_image(c)?;
            if !current.is_distinguished(image) {
                return Err(msg(format!(
                    "attaching map of `{}` sends the marked {dim}-cell `{c}` to an \
                     undistinguished simplex",
                    gen.token()
                )));
            }
        }
    }
    let p = pushout(gen.map.map(), attach)?;
    let mut marks: BTreeMap<usize, std::collections::BTreeSet<CellId>> = BTreeMap::new();
    for (leg, dec) in [(&p.from_left, gen.map.target()), (&p.from_right, current)] {
        for (dim, cells) in dec.marks() {
            for c in cells {
                let image = leg.cell_image(c)?;
                if image.is_nondegenerate() {
                    marks.entry(*dim).or_default().insert(image.target.clone());
                }
            }
        }
    }
    let dec = Decoration::new(p.complex.clone(), current.kind(), marks)?;
    Ok((dec, p))
}

/// Searches for an isomorphism `φ : goal.target ≅ current` with `φ ∘ goal.map = inc`
/// and exactly matching marks.  Pins every cell in the image of the goal source, so the
/// search only branches over newly attached cells.
fn final_iso(
    goal: &DecoratedInclusion,
    current: &Decoration,
    inc: &SimplicialMap,
) -> Result<Option<SimplicialMap>, DecompError> {
    let target = goal.target();
    if target.carrier().cell_count() != current.carrier().cell_count() {
        return Ok(None);
    }
    let mut pinned: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
    for (c, _) in goal.source().carrier().all_cells() {
        let key = goal.map().cell_image(c)?;
        let val = inc.cell_image(c)?;
        if !val.is_nondegenerate() {
            return Ok(None);
        }
        if let Some(prev) = pinned.insert(key.target.clone(), val.clone()) {
            if prev != *val {
                return Ok(None);
            }
        }
    }
    let cell_ok = |c: &CellId, r: &SimplexRef| {
        r.is_nondegenerate()
            && target.is_marked_cell(c) == current.is_marked_cell(&r.target)
    };
    let maps = enumerate_maps_with(target.carrier(), current.carrier(), &pinned, &cell_ok)?;
    Ok(maps.into_iter().find(SimplicialMap::is_iso))
}

/// Verifies a retract datum against a replayed object.
fn verify_retract(
    goal: &DecoratedInclusion,
    current: &Decoration,
    inc: &SimplicialMap,
    retract: &Retract,
) -> Result<(), DecompError> {
    let target = goal.target();
    let s = SimplicialMap::new(
        target.carrier().clone(),
        current.carrier().clone(),
        retract.section.clone(),
    )
    .map_err(|e| msg(format!("retract section is not simplicial: {e}")))?;
    let r = SimplicialMap::new(
        current.carrier().clone(),
        target.carrier().clone(),
        retract.retraction.clone(),
    )
    .map_err(|e| msg(format!("retraction is not simplicial: {e}")))?;
    if !DecoratedMap::preserves(&s, target, current) {
        return Err(msg("retract section does not preserve marks"));
    }
    if !DecoratedMap::preserves(&r, current, target) {
        return Err(msg("retraction does not preserve marks"));
    }
    let rs = s.then(&r)?;
    if rs != SimplicialMap::identity(target.carrier()) {
        return Err(msg("retraction ∘ section is not the identity"));
    }
    let si = goal.map().then(&s)?;
    if si.assign() != inc.assign() {
        return Err(msg("section ∘ goal does not agree with the built inclusion"));
    }
    let ri = inc.then(&r)?;
    if ri.assign() != goal.map().assign() {
        return Err(msg("retraction ∘ built inclusion does not agree with the goal"));
    }
    Ok(())
}

/// Replays a certificate against its goal.  Every step is recomputed as an actual
/// pushout; the final object must be isomorphic to the goal target under the composite
/// of the pushout legs (or exhibit the stated retract).
pub fn verify_certificate(
    goal: &DecoratedInclusion,
    cert: &Certificate,
) -> Result<(), DecompError> {
    let mut current = goal.source().clone();
    let mut inc = SimplicialMap::identity(current.carrier());
    for (idx, step) in cert.steps.iter().enumerate() {
        let gen = parse_instance(&step.generator)
            .map_err(|e| msg(format!("step {idx}: {e}")))?;
        let attach = SimplicialMap::new(
            gen.map.source().carrier().clone(),
            current.carrier().clone(),
            step.attach.clone(),
        )
        .map_err(|e| msg(format!("step {idx}: attaching map is not simplicial: {e}")))?;
        let (next, p) = pushout_step(&gen, &attach, &current)
            .map_err(|e| msg(format!("step {idx}: {e}")))?;
        inc = inc.then(&p.from_right)?;
        current = next;
    }
    match &cert.retract {
        None => match final_iso(goal, &current, &inc)? {
            Some(_) => Ok(()),
            None => Err(msg(
                "the composite of the certified pushouts is not isomorphic to the goal",
            )),
        },
        Some(retract) => verify_retract(goal, &current, &inc, retract),
    }
}

/// Attempts to exhibit the goal target as a retract of `current` over the goal source.
fn search_retract(
    goal: &DecoratedInclusion,
    current: &Decoration,
    inc: &SimplicialMap,
) -> Result<Option<Retract>, DecompError> {
    let target = goal.target();
    // Section pins: s ∘ goal.map = inc.
    let mut s_pins: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
    for (c, _) in goal.source().carrier().all_cells() {
        let key = goal.map().cell_image(c)?.target.clone();
        let val = inc.cell_image(c)?.clone();
        if let Some(prev) = s_pins.insert(key, val.clone()) {
            if prev != val {
                return Ok(None);
            }
        }
    }
    let s_ok = |c: &CellId, r: &SimplexRef| {
        !target.is_marked_cell(c) || current.is_distinguished(r)
    };
    let sections =
        enumerate_maps_with(target.carrier(), current.carrier(), &s_pins, &s_ok)?;
    for s in sections.into_iter().filter(SimplicialMap::is_mono) {
        // Retraction pins: r ∘ s = id and r ∘ inc = goal.map.
        let mut r_pins: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
        let mut consistent = true;
        for (c, _) in goal.source().carrier().all_cells() {
            let key = inc.cell_image(c)?;
            if !key.is_nondegenerate() {
                consistent = false;
                break;
            }
            let val = goal.map().cell_image(c)?.clone();
            if let Some(prev) = r_pins.insert(key.target.clone(), val.clone()) {
                if prev != val {
                    consistent = false;
                    break;
                }
            }
        }
        if consistent {
            for (t, _) in target.carrier().all_cells() {
                let key = s.cell_image(t)?;
                debug_assert!(key.is_nondegenerate());
                let val = SimplexRef::cell(t.clone());
                if let Some(prev) = r_pins.insert(key.target.clone(), val.clone()) {
                    if prev != val {
                        consistent = false;
                        break;
                    }
                }
            }
        }
        if !consistent {
            continue;
        }
        let r_ok = |c: &CellId, r: &SimplexRef| {
            !current.is_marked_cell(c) || target.is_distinguished(r)
        };
        let retractions =
            enumerate_maps_with(current.carrier(), target.carrier(), &r_pins, &r_ok)?;
        if let Some(r) = retractions.into_iter().next() {
            return Ok(Some(Retract {
                section: s.assign().clone(),
                retraction: r.assign().clone(),
            }));
        }
    }
    Ok(None)
}

/// Breadth-first search for a certificate decomposing `goal` into pushouts of the
/// given generators (arbitrary decorated attaching maps, canonical order), within the
/// budget.  Returns `None` when the budget is exhausted.
pub fn search_certificate(
    goal: &DecoratedInclusion,
    family: &[GeneratorInstance],
    budget: &SearchBudget,
) -> Result<Option<Certificate>, DecompError> {
    let start = (
        goal.source().clone(),
        SimplicialMap::identity(goal.source().carrier()),
        Vec::<CertStep>::new(),
    );
    let mut queue = VecDeque::from([start]);
    let mut explored = 0usize;
    while let Some((current, inc, steps)) = queue.pop_front() {
        explored += 1;
        if explored > budget.max_states {
            return Ok(None);
        }
        if final_iso(goal, &current, &inc)?.is_some() {
            return Ok(Some(Certificate { steps, retract: None }));
        }
        if let Some(retract) = search_retract(goal, &current, &inc)? {
            return Ok(Some(Certificate { steps, retract: Some(retract) }));
        }
        if steps.len() == budget.max_steps {
            continue;
        }
        for gen in family {
            if gen.map.source().kind() != current.kind() {
                continue;
            }
            for attach in decorated_maps(gen.map.source(), &current)? {
                let (next, p) = match pushout_step(gen, &attach, &current) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                if next.carrier().cell_count() > budget.max_cells {
                    continue;
                }
                let mut next_steps = steps.clone();
                next_steps.push(CertStep {
                    generator: gen.token(),
                    attach: attach.assign().clone(),
                });
                queue.push_back((next, inc.then(&p.from_right)?, next_steps));
            }
        }
    }
    Ok(None)
}

// --- JSON -----------------------------------------------------------------------------
//
// Certified-goal schema:
// {
//   "goal": { "source": <decoration>, "target": <decoration>, "assign": {cell: ref} },
//   "steps": [ { "generator": token, "attach": {cell: ref} } ],
//   "retract": null | { "section": {cell: ref}, "retraction": {cell: ref} }
// }

pub fn goal_to_json(goal: &DecoratedInclusion) -> serde_json::Value {
    serde_json::json!({
        "source": decoration_to_json(goal.source()),
        "target": decoration_to_json(goal.target()),
        "assign": serde_json::to_value(goal.map().assign()).expect("assignment serializes"),
    })
}

pub fn goal_from_json(v: &serde_json::Value) -> Result<DecoratedInclusion, DecompError> {
    let source = decoration_from_json(
        v.get("source").ok_or_else(|| msg("missing `source`"))?,
    )?;
    let target = decoration_from_json(
        v.get("target").ok_or_else(|| msg("missing `target`"))?,
    )?;
    let assign: BTreeMap<CellId, SimplexRef> = serde_json::from_value(
        v.get("assign").ok_or_else(|| msg("missing `assign`"))?.clone(),
    )?;
    let map =
        SimplicialMap::new(source.carrier().clone(), target.carrier().clone(), assign)?;
    Ok(DecoratedInclusion::new(DecoratedMap::new(map, source, target)?)?)
}

pub fn certified_to_json(
    goal: &DecoratedInclusion,
    cert: &Certificate,
) -> serde_json::Value {
    serde_json::json!({
        "goal": goal_to_json(goal),
        "steps": serde_json::to_value(&cert.steps).expect("steps serialize"),
        "retract": serde_json::to_value(&cert.retract).expect("retract serializes"),
    })
}

pub fn certified_from_json(
    v: &serde_json::Value,
) -> Result<(DecoratedInclusion, Certificate), DecompError> {
    let goal = goal_from_json(v.get("goal").ok_or_else(|| msg("missing `goal`"))?)?;
    let steps: Vec<CertStep> = serde_json::from_value(
        v.get("steps").ok_or_else(|| msg("missing `steps`"))?.clone(),
    )?;
    let retract: Option<Retract> =
        serde_json::from_value(v.get("retract").cloned().unwrap_or(serde_json::Value::Null))?;
    Ok((goal, Certificate { steps, retract }))
}

#[cfg(test)]
mod tests;
