//! Acceptance suite: one test per acceptance criterion, each printing a single
//! pass/fail line (run with `--nocapture` to see them as they complete).
//!
//! Every criterion is checked against independent oracles where one exists:
//! brute-force vertex-function counting for map enumeration, vertex-coordinate
//! arithmetic for product/Gray/join decorations, a from-scratch 1-category nerve
//! for the scaled 2-nerve, and certificate replay for every decomposition.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use stratal::constructions::{gray_product, hom_comparison, join_marked_scaled, product_scaled};
use stratal::decompose::{
    check_transformation, extend_transformation, goal_from_json, prism_filtration,
    pushout_join_cells, search_certificate, transformation_domain, verify_certificate,
    Certificate, PrismVariant, PushoutJoinCase, SearchBudget,
};
use stratal::generators::build;
use stratal::homotopy::{equivalence_edges, fibrant_replacement};
use stratal::lifting::{classify, ObjectClass};
use stratal::sskernel::{
    enumerate_maps, face_id, product, standard_complex, JoinPart, StandardKind,
};
use stratal::strat::{decoration_from_json, Decoration, DecorationKind};
use stratal::twocat::{
    from_poset, nerve2, nerve2_indexed, oriental2, walking_iso, walking_two_cell,
    FiniteTwoCategory,
};
use stratal::{CellId, FiniteSimplicialSet, SimplexRef, SimplicialMap};

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

type Check = Result<(), String>;

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn report(number: usize, description: &str, outcome: Check) {
    match outcome {
        Ok(()) => println!("criterion {number:2} ({description}): pass"),
        Err(e) => {
            println!("criterion {number:2} ({description}): FAIL — {e}");
            panic!("criterion {number} failed: {e}");
        }
    }
}

fn ensure(cond: bool, what: impl ToString) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn simplex(n: usize) -> FiniteSimplicialSet {
    standard_complex(StandardKind::Simplex(n)).expect("standard simplex")
}

fn fixture(name: &str) -> Result<serde_json::Value, String> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("reading {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(err)
}

fn vertex_number(c: &CellId) -> usize {
    c.as_str().parse().expect("numeric vertex id")
}

// ---------------------------------------------------------------------------
// Criterion 1: kernel laws and map enumeration against a brute-force oracle
// ---------------------------------------------------------------------------

/// A random nonempty subcomplex of `Δⁿ` (deterministic given the RNG state).
fn random_subcomplex(n: usize, rng: &mut StdRng) -> FiniteSimplicialSet {
    let full = simplex(n);
    let mut seed: BTreeSet<CellId> = full
        .all_cells()
        .filter(|_| rng.gen_bool(0.4))
        .map(|(c, _)| c.clone())
        .collect();
    seed.insert(face_id(&[0]));
    full.subcomplex(&seed).expect("subcomplex of a standard simplex")
}

/// Brute-force count of simplicial maps between subcomplexes of standard simplices:
/// such complexes are nerves of vertex posets, so maps are exactly the vertex
/// functions that are weakly monotone on every cell and whose collapsed image spans
/// a cell of the target.
fn naive_map_count(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> usize {
    let xv: Vec<CellId> = x.cells(0).cloned().collect();
    let yv: Vec<usize> = y.cells(0).map(vertex_number).collect();
    let tuples = x.vertex_tuples();
    let mut count = 0usize;
    let total = yv.len().pow(xv.len() as u32);
    'code: for code in 0..total {
        let mut c = code;
        let mut f: BTreeMap<&CellId, usize> = BTreeMap::new();
        for v in &xv {
            f.insert(v, yv[c % yv.len()]);
            c /= yv.len();
        }
        for tuple in tuples.values() {
            let image: Vec<usize> = tuple.iter().map(|v| f[v]).collect();
            if image.windows(2).any(|w| w[0] > w[1]) {
                continue 'code;
            }
            let mut support = image.clone();
            support.dedup();
            if !y.has_cell(&face_id(&support)) {
                continue 'code;
            }
        }
        count += 1;
    }
    count
}

/// The simplicial identity `d_j d_i = d_{i-1} d_j` (`j < i`) on every stored cell.
fn check_simplicial_identities(x: &FiniteSimplicialSet) -> Check {
    for (c, n) in x.all_cells() {
        if n < 2 {
            continue;
        }
        let r = SimplexRef::cell(c.clone());
        for i in 1..=n {
            for j in 0..i {
                let a = x.face_ref(&x.face_ref(&r, i).map_err(err)?, j).map_err(err)?;
                let b = x.face_ref(&x.face_ref(&r, j).map_err(err)?, i - 1).map_err(err)?;
                ensure(a == b, format!("simplicial identity fails at `{c}` (i={i}, j={j})"))?;
            }
        }
    }
    Ok(())
}

fn criterion_1() -> Check {
    let mut rng = StdRng::seed_from_u64(17);
    for pair in 0..200 {
        let nx = rng.gen_range(1..=3usize);
        let ny = rng.gen_range(1..=7usize);
        let x = random_subcomplex(nx, &mut rng);
        let y = random_subcomplex(ny, &mut rng);
        x.validate().map_err(err)?;
        y.validate().map_err(err)?;
        check_simplicial_identities(&x)?;
        check_simplicial_identities(&y)?;
        let enumerated = enumerate_maps(&x, &y, &BTreeMap::new()).map_err(err)?;
        for m in &enumerated {
            m.validate().map_err(err)?;
        }
        let expected = naive_map_count(&x, &y);
        ensure(
            enumerated.len() == expected,
            format!(
                "pair {pair}: enumerate_maps found {} maps, vertex oracle counts {expected} \
                 (X ⊆ Δ^{nx}, Y ⊆ Δ^{ny})",
                enumerated.len()
            ),
        )?;
    }
    Ok(())
}

#[test]
fn criterion_01_enumeration_matches_vertex_oracle() {
    report(1, "kernel laws + 200 randomized enumeration oracles", criterion_1());
}

// ---------------------------------------------------------------------------
// Criterion 2: checked-in saturation certificates verify and are rediscovered
// ---------------------------------------------------------------------------

fn criterion_2() -> Check {
    for name in ["j1", "j2"] {
        let goal = goal_from_json(&fixture(&format!("{name}_goal.json"))?).map_err(err)?;
        let cert: Certificate =
            serde_json::from_value(fixture(&format!("{name}_cert.json"))?).map_err(err)?;
        verify_certificate(&goal, &cert)
            .map_err(|e| format!("{name}: checked-in certificate rejected: {e}"))?;
        let family = [build("scaled-S:saturate", &[]).map_err(err)?];
        let budget = SearchBudget::new(2, goal.target().carrier().cell_count());
        let found = search_certificate(&goal, &family, &budget)
            .map_err(err)?
            .ok_or(format!("{name}: search found no certificate within 2 steps"))?;
        ensure(found.steps.len() <= 2, format!("{name}: certificate uses >2 steps"))?;
        verify_certificate(&goal, &found)
            .map_err(|e| format!("{name}: rediscovered certificate rejected: {e}"))?;
    }
    Ok(())
}

#[test]
fn criterion_02_saturation_certificates() {
    report(2, "j1/j2 certificates verify and re-search within budget 2", criterion_2());
}

// ---------------------------------------------------------------------------
// Criterion 3: prism filtrations for n ≤ 4, all three variants
// ---------------------------------------------------------------------------

fn criterion_3() -> Check {
    for n in 0..=4usize {
        for variant in [PrismVariant::Upper, PrismVariant::Lower] {
            let (goal, cert) = prism_filtration(n, variant).map_err(err)?;
            ensure(
                cert.steps.len() == n + 1,
                format!("{variant:?} n={n}: expected {} steps", n + 1),
            )?;
            verify_certificate(&goal, &cert)
                .map_err(|e| format!("{variant:?} n={n}: {e}"))?;
        }
    }
    for n in 1..=4usize {
        let (goal, cert) = prism_filtration(n, PrismVariant::ScaledL).map_err(err)?;
        ensure(cert.steps.len() == n + 1, format!("ScaledL n={n}: expected {} steps", n + 1))?;
        for step in &cert.steps[..cert.steps.len() - 1] {
            ensure(
                step.generator.starts_with("scaled-S:inner"),
                format!("ScaledL n={n}: non-final step uses `{}`", step.generator),
            )?;
        }
        verify_certificate(&goal, &cert).map_err(|e| format!("ScaledL n={n}: {e}"))?;
    }
    Ok(())
}

#[test]
fn criterion_03_prism_filtrations() {
    report(3, "prism filtrations n ≤ 4, upper/lower/scaled-L", criterion_3());
}

// ---------------------------------------------------------------------------
// Criterion 4: pushout-join corners for the four generator shapes, m, n ≤ 2
// ---------------------------------------------------------------------------

fn criterion_4() -> Check {
    let cases = [
        PushoutJoinCase::Inner { m: 2, i: 1 },
        PushoutJoinCase::Cart { m: 1 },
        PushoutJoinCase::Cart { m: 2 },
        // The collapsed-horn generator only exists from dimension 2 up.
        PushoutJoinCase::Collapsed0 { m: 2 },
        PushoutJoinCase::Mark2,
    ];
    for case in cases {
        for n in 0..=2usize {
            let (goal, cert) = pushout_join_cells(case, n)
                .map_err(|e| format!("{case:?} n={n}: {e}"))?;
            verify_certificate(&goal, &cert)
                .map_err(|e| format!("{case:?} n={n}: replay rejected: {e}"))?;
        }
    }
    Ok(())
}

#[test]
fn criterion_04_pushout_join_corners() {
    report(4, "pushout-join corner certificates, all four shapes, m,n ≤ 2", criterion_4());
}

// ---------------------------------------------------------------------------
// Criterion 5: scaled 2-nerves are weak ∞-bicategories; 1-category nerves agree
// with a from-scratch construction
// ---------------------------------------------------------------------------

fn nerve_fixtures() -> Vec<(&'static str, FiniteTwoCategory)> {
    vec![
        ("poset[2]", from_poset(2)),
        ("poset[3]", from_poset(3)),
        ("walking-iso", walking_iso()),
        ("walking-2cell", walking_two_cell(false)),
        ("walking-inv-2cell", walking_two_cell(true)),
        ("oriental-2", oriental2(2)),
    ]
}

/// The nerve of a 1-category (a locally discrete 2-category), built directly from
/// composable tuples of non-identity arrows — no functor enumeration involved.
struct DirectNerve {
    complex: FiniteSimplicialSet,
    cells: BTreeMap<(usize, Vec<usize>), CellId>,
}

fn direct_nerve(cat: &FiniteTwoCategory, n_max: usize) -> Result<DirectNerve, String> {
    let identities: BTreeSet<usize> = cat.id1.iter().copied().collect();
    let mut complex = FiniteSimplicialSet::empty();
    let mut cells: BTreeMap<(usize, Vec<usize>), CellId> = BTreeMap::new();
    let mut level: Vec<(usize, Vec<usize>)> =
        (0..cat.objects.len()).map(|o| (o, Vec::new())).collect();
    for (idx, key) in level.iter().enumerate() {
        let id = CellId::new(format!("d0.{idx}"));
        complex.add_cell(id.clone(), 0, Vec::new()).map_err(err)?;
        cells.insert(key.clone(), id);
    }
    for m in 1..=n_max {
        let mut next: Vec<(usize, Vec<usize>)> = Vec::new();
        for (start, arrows) in &level {
            let end = arrows.last().map_or(*start, |&a| cat.one_cells[a].tgt);
            for (a, oc) in cat.one_cells.iter().enumerate() {
                if oc.src == end && !identities.contains(&a) {
                    let mut t = arrows.clone();
                    t.push(a);
                    next.push((*start, t));
                }
            }
        }
        next.sort();
        for (idx, (start, arrows)) in next.iter().enumerate() {
            let id = CellId::new(format!("d{m}.{idx}"));
            let mut faces = Vec::with_capacity(m + 1);
            for i in 0..=m {
                let face = if i == 0 {
                    let s = cat.one_cells[arrows[0]].tgt;
                    SimplexRef::cell(cells[&(s, arrows[1..].to_vec())].clone())
                } else if i == m {
                    SimplexRef::cell(cells[&(*start, arrows[..m - 1].to_vec())].clone())
                } else {
                    let c = *cat
                        .compose1
                        .get(&(arrows[i - 1], arrows[i]))
                        .ok_or("missing composite in 1-category")?;
                    let mut t = arrows.clone();
                    t.remove(i);
                    t[i - 1] = c;
                    if identities.contains(&c) {
                        t.remove(i - 1);
                        SimplexRef::cell(cells[&(*start, t)].clone()).degenerate(i - 1)
                    } else {
                        SimplexRef::cell(cells[&(*start, t)].clone())
                    }
                };
                faces.push(face);
            }
            complex.add_cell(id.clone(), m, faces).map_err(err)?;
            cells.insert((*start, arrows.clone()), id);
        }
        level = next;
    }
    complex.validate().map_err(err)?;
    Ok(DirectNerve { complex, cells })
}

/// Checks `nerve2(cat, n_max)` against the direct nerve: the spine map is an
/// isomorphism of carriers and every triangle of the 2-nerve is thin.
fn compare_one_category_nerve(cat: &FiniteTwoCategory, n_max: usize) -> Check {
    let nerve = nerve2_indexed(cat, n_max).map_err(err)?;
    let direct = direct_nerve(cat, n_max)?;
    let mut assign: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
    for (m, functors) in nerve.cells.iter().enumerate() {
        let oriental = oriental2(m);
        let spine_idx: Vec<usize> = (0..m)
            .map(|i| {
                let label = format!("{}.{}", i, i + 1);
                oriental
                    .one_cells
                    .iter()
                    .position(|c| c.label == label)
                    .expect("spine edge in the oriental")
            })
            .collect();
        for (f, cell) in functors {
            let arrows: Vec<usize> = spine_idx.iter().map(|&j| f.one[j]).collect();
            ensure(
                !arrows.iter().any(|a| cat.id1.contains(a)),
                format!("nondegenerate nerve cell `{cell}` has an identity on its spine"),
            )?;
            let key = (f.obj[0], arrows);
            let target = direct
                .cells
                .get(&key)
                .ok_or(format!("nerve cell `{cell}` has no counterpart in the direct nerve"))?;
            assign.insert(cell.clone(), SimplexRef::cell(target.clone()));
        }
    }
    let spine = SimplicialMap::new(
        nerve.decoration.carrier().clone(),
        direct.complex.clone(),
        assign,
    )
    .map_err(|e| format!("spine comparison is not simplicial: {e}"))?;
    ensure(spine.is_iso(), "spine comparison is not an isomorphism")?;
    let thin = nerve.decoration.marks_in_dim(2).count();
    let triangles = nerve.decoration.carrier().cells(2).count();
    ensure(
        thin == triangles,
        format!("only {thin} of {triangles} triangles are thin in a 1-category nerve"),
    )
}

fn criterion_5() -> Check {
    for (name, cat) in nerve_fixtures() {
        let nv = nerve2(&cat, 4).map_err(err)?;
        let r = classify(&nv, ObjectClass::WeakInfBicat, 4).map_err(err)?;
        ensure(
            r.pass,
            format!(
                "nerve of {name} fails the weak ∞-bicategory check: {:?}",
                r.counterexample
            ),
        )?;
    }
    for cat in [from_poset(2), from_poset(3), walking_iso()] {
        compare_one_category_nerve(&cat, 4)?;
    }
    Ok(())
}

#[test]
fn criterion_05_scaled_two_nerves() {
    report(5, "2-nerves pass fibrancy; 1-category nerves match direct nerve", criterion_5());
}

// ---------------------------------------------------------------------------
// Criterion 6: fibrant replacement yields 2-trivial saturated complicial sets
// ---------------------------------------------------------------------------

fn criterion_6() -> Check {
    for (name, cat) in [
        ("poset[2]", from_poset(2)),
        ("walking-iso", walking_iso()),
        ("walking-inv-2cell", walking_two_cell(true)),
    ] {
        let nv = nerve2(&cat, 4).map_err(err)?;
        let replaced = fibrant_replacement(&nv).map_err(err)?;
        let r = classify(&replaced, ObjectClass::Complicial2, 4).map_err(err)?;
        ensure(
            r.pass,
            format!(
                "replacement of the nerve of {name} fails the complicial check: {:?}",
                r.counterexample
            ),
        )?;
    }
    Ok(())
}

#[test]
fn criterion_06_fibrant_replacement() {
    report(6, "fibrant replacements pass the 2-trivial saturated check", criterion_6());
}

// ---------------------------------------------------------------------------
// Criterion 7: the two-out-of-three property for thin triangles, exhaustively
// ---------------------------------------------------------------------------

fn equivalent(eq: &BTreeSet<SimplexRef>, r: &SimplexRef) -> bool {
    !r.is_nondegenerate() || eq.contains(r)
}

/// All `σ : Δ³ → X` with `σ(013)` and `σ(023)` thin satisfy: (a) `σ(01)` an
/// equivalence and `σ(012)` thin force `σ(123)` thin; (b) `σ(23)` an equivalence and
/// `σ(123)` thin force `σ(012)` thin.
fn check_tetrahedra(x: &Decoration, eq: &BTreeSet<SimplexRef>, name: &str) -> Check {
    let d3 = simplex(3);
    let thin = |s: &SimplicialMap, verts: &[usize]| -> Result<bool, String> {
        Ok(x.is_distinguished(s.cell_image(&face_id(verts)).map_err(err)?))
    };
    for sigma in enumerate_maps(&d3, x.carrier(), &BTreeMap::new()).map_err(err)? {
        if !(thin(&sigma, &[0, 1, 3])? && thin(&sigma, &[0, 2, 3])?) {
            continue;
        }
        let e01 = sigma.cell_image(&face_id(&[0, 1])).map_err(err)?;
        let e23 = sigma.cell_image(&face_id(&[2, 3])).map_err(err)?;
        if equivalent(eq, e01) && thin(&sigma, &[0, 1, 2])? {
            ensure(
                thin(&sigma, &[1, 2, 3])?,
                format!("{name}: σ(123) not thin for σ = {:?}", sigma.assign()),
            )?;
        }
        if equivalent(eq, e23) && thin(&sigma, &[1, 2, 3])? {
            ensure(
                thin(&sigma, &[0, 1, 2])?,
                format!("{name}: σ(012) not thin for σ = {:?}", sigma.assign()),
            )?;
        }
    }
    Ok(())
}

/// All scaled `h : Δ¹ × Δ² → X` (every triangle whose `Δ²`-component is degenerate
/// lands thin) satisfy: (1) `h|Δ¹×{0}` an equivalence and `h(α₃)` thin force `h(α₀)`
/// thin; (2) `h|Δ¹×{2}` an equivalence and `h(α₀)` thin force `h(α₃)` thin.
fn check_prisms(x: &Decoration, eq: &BTreeSet<SimplexRef>, name: &str) -> Check {
    let prod = product(&simplex(1), &simplex(2)).map_err(err)?;
    let vnum: BTreeMap<CellId, (usize, usize)> = prod
        .complex
        .cells(0)
        .map(|c| {
            let (rl, rr) = &prod.components[c];
            (c.clone(), (vertex_number(&rl.target), vertex_number(&rr.target)))
        })
        .collect();
    let tuples = prod.complex.vertex_tuples();
    let chain = |c: &CellId| -> Vec<(usize, usize)> {
        tuples[c].iter().map(|v| vnum[v]).collect()
    };
    let cell_of = |want: &[(usize, usize)]| -> CellId {
        prod.complex
            .all_cells()
            .find(|(c, _)| chain(c) == want)
            .map(|(c, _)| c.clone())
            .expect("prism cell by chain")
    };
    let alpha: Vec<CellId> = (0..=3)
        .map(|i| {
            let want: Vec<(usize, usize)> =
                (0..3).map(|j| if j < i { (0, j) } else { (1, j) }).collect();
            cell_of(&want)
        })
        .collect();
    let bent: Vec<CellId> = prod
        .complex
        .cells(2)
        .filter(|c| !alpha.contains(c))
        .cloned()
        .collect();
    let edge0 = cell_of(&[(0, 0), (1, 0)]);
    let edge2 = cell_of(&[(0, 2), (1, 2)]);
    for h in enumerate_maps(&prod.complex, x.carrier(), &BTreeMap::new()).map_err(err)? {
        let lands_thin = |c: &CellId| -> Result<bool, String> {
            Ok(x.is_distinguished(h.cell_image(c).map_err(err)?))
        };
        let mut scaled = true;
        for c in &bent {
            if !lands_thin(c)? {
                scaled = false;
                break;
            }
        }
        if !scaled {
            continue;
        }
        let over0 = equivalent(eq, h.cell_image(&edge0).map_err(err)?);
        let over2 = equivalent(eq, h.cell_image(&edge2).map_err(err)?);
        if over0 && lands_thin(&alpha[3])? {
            ensure(
                lands_thin(&alpha[0])?,
                format!("{name}: h(α₀) not thin for h = {:?}", h.assign()),
            )?;
        }
        if over2 && lands_thin(&alpha[0])? {
            ensure(
                lands_thin(&alpha[3])?,
                format!("{name}: h(α₃) not thin for h = {:?}", h.assign()),
            )?;
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    for (name, cat) in [
        ("walking-iso", walking_iso()),
        ("walking-2cell", walking_two_cell(false)),
        ("oriental-2", oriental2(2)),
    ] {
        let nv = nerve2(&cat, 4).map_err(err)?;
        let eq = equivalence_edges(&nv).map_err(err)?;
        check_tetrahedra(&nv, &eq, name)?;
        check_prisms(&nv, &eq, name)?;
    }
    Ok(())
}

#[test]
fn criterion_07_thin_triangle_cancellation() {
    report(7, "exhaustive 2-out-of-3 for thin triangles over equivalences", criterion_7());
}

// ---------------------------------------------------------------------------
// Criterion 8: randomized simplex-collapse transformation instances
// ---------------------------------------------------------------------------

fn criterion_8() -> Check {
    let x = decoration_from_json(&fixture("nerve_walking_iso.json")?).map_err(err)?;
    // One enumeration of Δⁿ → X per dimension, sampled below.
    let maps_into: Vec<Vec<SimplicialMap>> = (0..=3usize)
        .map(|n| enumerate_maps(&simplex(n), x.carrier(), &BTreeMap::new()))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let mut rng = StdRng::seed_from_u64(23);
    for instance in 0..50 {
        let n = rng.gen_range(1..=3usize);
        let mut rho = vec![0usize];
        for _ in 1..=n {
            let step = usize::from(rng.gen_bool(0.5));
            rho.push(rho.last().unwrap() + step);
        }
        let u = &maps_into[n][rng.gen_range(0..maps_into[n].len())];
        let dn = simplex(n);
        let prod = product(&simplex(1), &dn).map_err(err)?;

        // Stage 1: extend the bare end `{1} × Δⁿ ↦ u` over the whole prism.
        let empty = FiniteSimplicialSet::empty();
        let domain0 = transformation_domain(n, &empty, &dn).map_err(err)?;
        let assign0: BTreeMap<CellId, SimplexRef> = domain0
            .all_cells()
            .map(|(c, _)| Ok((c.clone(), u.apply(&prod.components[c].1).map_err(err)?)))
            .collect::<Result<_, String>>()?;
        let g0 = SimplicialMap::new(domain0, x.carrier().clone(), assign0).map_err(err)?;
        let h = extend_transformation(&x, &rho, &empty, &dn, &g0)
            .map_err(|e| format!("instance {instance} (n={n}, ρ={rho:?}): stage 1: {e}"))?;
        check_transformation(&x, &rho, &dn, &h)
            .map_err(|e| format!("instance {instance}: stage-1 check: {e}"))?;

        // Stage 2: restrict to the face spanned by the section image and re-extend.
        let sigma: Vec<usize> =
            (0..=*rho.last().unwrap()).map(|j| rho.iter().position(|&v| v == j).unwrap()).collect();
        let seed: BTreeSet<CellId> = [face_id(&sigma)].into_iter().collect();
        let a = dn.subcomplex(&seed).map_err(err)?;
        let domain = transformation_domain(n, &a, &dn).map_err(err)?;
        let assign: BTreeMap<CellId, SimplexRef> = domain
            .all_cells()
            .map(|(c, _)| Ok((c.clone(), h.cell_image(c).map_err(err)?.clone())))
            .collect::<Result<_, String>>()?;
        let g = SimplicialMap::new(domain.clone(), x.carrier().clone(), assign).map_err(err)?;
        let h2 = extend_transformation(&x, &rho, &a, &dn, &g)
            .map_err(|e| format!("instance {instance} (n={n}, ρ={rho:?}): stage 2: {e}"))?;
        check_transformation(&x, &rho, &dn, &h2)
            .map_err(|e| format!("instance {instance}: stage-2 check: {e}"))?;
        for (c, _) in domain.all_cells() {
            ensure(
                h2.cell_image(c).map_err(err)? == g.cell_image(c).map_err(err)?,
                format!("instance {instance}: extension moved the prescribed cell `{c}`"),
            )?;
        }
    }
    Ok(())
}

#[test]
fn criterion_08_transformation_extension() {
    report(8, "50 randomized transformation extensions, n ≤ 3", criterion_8());
}

// ---------------------------------------------------------------------------
// Criterion 9: the mapping-space comparison map
// ---------------------------------------------------------------------------

fn criterion_9() -> Check {
    for (name, cat) in [
        ("poset[2]", from_poset(2)),
        ("walking-iso", walking_iso()),
        ("walking-2cell", walking_two_cell(false)),
    ] {
        let nv = nerve2(&cat, 4).map_err(err)?;
        let vertices: Vec<CellId> = nv.carrier().cells(0).cloned().collect();
        for vx in &vertices {
            for vy in &vertices {
                let hc = hom_comparison(&nv, vx, vy, 2)
                    .map_err(|e| format!("{name}, ({vx}, {vy}): {e}"))?;
                hc.map.map().validate().map_err(err)?;
                let src = hc.map.source().carrier();
                let tgt = hc.map.target().carrier();
                let images: BTreeSet<&CellId> = src
                    .cells(0)
                    .map(|v| {
                        let r = hc.map.map().cell_image(v).map_err(err)?;
                        ensure(r.is_nondegenerate(), "vertex image degenerate")?;
                        Ok(&hc.map.map().assign()[v].target)
                    })
                    .collect::<Result<_, String>>()?;
                ensure(
                    images.len() == src.cells(0).count()
                        && images.len() == tgt.cells(0).count(),
                    format!("{name}, ({vx}, {vy}): comparison is not a vertex bijection"),
                )?;
                ensure(
                    hc.detects_marked,
                    format!("{name}, ({vx}, {vy}): comparison does not detect marked edges"),
                )?;
            }
        }
    }
    Ok(())
}

#[test]
fn criterion_09_hom_comparison() {
    report(9, "hom comparison: well-defined, vertex-bijective, detects marks", criterion_9());
}

// ---------------------------------------------------------------------------
// Criterion 10: decoration oracles by vertex-coordinate arithmetic
// ---------------------------------------------------------------------------

fn criterion_10() -> Check {
    // Gray product: triangle ((a₀,b₀),(a₁,b₁),(a₂,b₂)) is thin iff both coordinate
    // chains repeat and additionally a₁ = a₂ or b₀ = b₁.
    for (nk, nl) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2)] {
        let g = gray_product(&simplex(nk), &simplex(nl)).map_err(err)?;
        let tuples = g.product.complex.vertex_tuples();
        let vnum: BTreeMap<CellId, (usize, usize)> = g
            .product
            .complex
            .cells(0)
            .map(|c| {
                let (rl, rr) = &g.product.components[c];
                (c.clone(), (vertex_number(&rl.target), vertex_number(&rr.target)))
            })
            .collect();
        for c in g.product.complex.cells(2) {
            let ch: Vec<(usize, usize)> = tuples[c].iter().map(|v| vnum[v]).collect();
            let (a, b): (Vec<usize>, Vec<usize>) = ch.iter().copied().unzip();
            let expected = (a[0] == a[1] || a[1] == a[2])
                && (b[0] == b[1] || b[1] == b[2])
                && (a[1] == a[2] || b[0] == b[1]);
            ensure(
                g.decoration.is_marked_cell(c) == expected,
                format!("Δ^{nk} ×_gr Δ^{nl}: triangle {ch:?} thinness disagrees with oracle"),
            )?;
        }
    }
    // Δ¹ ×_gr Δ¹ has exactly one thin nondegenerate triangle.
    let square = gray_product(&simplex(1), &simplex(1)).map_err(err)?;
    ensure(
        square.decoration.marks_in_dim(2).count() == 1,
        "Δ¹ ×_gr Δ¹ should have exactly one thin triangle",
    )?;

    // Scaled product of flat factors: thin iff both components degenerate.
    let flat1 = Decoration::flat(simplex(1), DecorationKind::Scaled);
    let flat2 = Decoration::flat(simplex(2), DecorationKind::Scaled);
    let p = product_scaled(&flat1, &flat2).map_err(err)?;
    {
        let tuples = p.product.complex.vertex_tuples();
        let vnum: BTreeMap<CellId, (usize, usize)> = p
            .product
            .complex
            .cells(0)
            .map(|c| {
                let (rl, rr) = &p.product.components[c];
                (c.clone(), (vertex_number(&rl.target), vertex_number(&rr.target)))
            })
            .collect();
        for c in p.product.complex.cells(2) {
            let ch: Vec<(usize, usize)> = tuples[c].iter().map(|v| vnum[v]).collect();
            let (a, b): (Vec<usize>, Vec<usize>) = ch.iter().copied().unzip();
            let expected = (a[0] == a[1] || a[1] == a[2]) && (b[0] == b[1] || b[1] == b[2]);
            ensure(
                p.decoration.is_marked_cell(c) == expected,
                format!("Δ¹♭ × Δ²♭: triangle {ch:?} thinness disagrees with oracle"),
            )?;
        }
    }

    // Marked-scaled join Δ¹ ⋆ Δ⁰ ≅ Δ²: the unique triangle is thin exactly when the
    // edge of the left factor is marked.
    for (marked, expected) in [(true, 1usize), (false, 0)] {
        let marks = if marked {
            [(1usize, [face_id(&[0, 1])].into_iter().collect::<BTreeSet<_>>())]
                .into_iter()
                .collect()
        } else {
            BTreeMap::new()
        };
        let z = Decoration::new(simplex(1), DecorationKind::MarkedScaled, marks).map_err(err)?;
        let k = Decoration::flat(simplex(0), DecorationKind::Scaled);
        let j = join_marked_scaled(&z, &k).map_err(err)?;
        ensure(
            j.decoration.carrier().cells(2).count() == 1,
            "Δ¹ ⋆ Δ⁰ should have one triangle",
        )?;
        ensure(
            j.decoration.marks_in_dim(2).count() == expected,
            format!("Δ¹ ⋆ Δ⁰ thin-triangle count should be {expected}"),
        )?;
        // The triangle really is the pair (left edge, right vertex).
        let tri = j.decoration.carrier().cells(2).next().unwrap();
        ensure(
            matches!(&j.join.parts[tri], JoinPart::Pair(a, _) if *a == face_id(&[0, 1])),
            "the Δ¹ ⋆ Δ⁰ triangle is not the expected pair cell",
        )?;
    }
    Ok(())
}

#[test]
fn criterion_10_decoration_oracles() {
    report(10, "Gray/product/join decorations match coordinate oracles", criterion_10());
}
