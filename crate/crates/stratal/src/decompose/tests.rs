use std::collections::{BTreeMap, BTreeSet};

use crate::generators::{build, simplex};
use crate::sskernel::{
    face_id, product, pushout, standard_complex, CellId, FiniteSimplicialSet, SimplexRef,
    SimplicialMap, StandardKind,
};
use crate::strat::{DecoratedInclusion, Decoration, DecorationKind};

use super::prism::Prism;
use super::*;

fn flat_scaled(x: FiniteSimplicialSet) -> Decoration {
    Decoration::flat(x, DecorationKind::Scaled)
}

// --- prism filtrations ----------------------------------------------------------------

#[test]
fn prism_filtrations_verify() {
    for variant in [PrismVariant::Upper, PrismVariant::Lower] {
        for n in 0..=2 {
            let (goal, cert) = prism_filtration(n, variant).unwrap();
            assert_eq!(cert.steps.len(), n + 1, "one step per bent simplex");
            verify_certificate(&goal, &cert)
                .unwrap_or_else(|e| panic!("{variant:?} n={n}: {e}"));
        }
    }
}

#[test]
fn prism_filtration_horn_indices() {
    let (_, upper) = prism_filtration(2, PrismVariant::Upper).unwrap();
    let tokens: Vec<&str> = upper.steps.iter().map(|s| s.generator.as_str()).collect();
    assert_eq!(
        tokens,
        vec!["prism-upper:n=2,k=2", "prism-upper:n=2,k=1", "prism-upper:n=2,k=0"]
    );
    let (_, lower) = prism_filtration(2, PrismVariant::Lower).unwrap();
    let tokens: Vec<&str> = lower.steps.iter().map(|s| s.generator.as_str()).collect();
    assert_eq!(
        tokens,
        vec!["prism-lower:n=2,k=0", "prism-lower:n=2,k=1", "prism-lower:n=2,k=2"]
    );
}

#[test]
fn larger_scaling_uses_inner_horns_except_at_the_end() {
    let (goal, cert) = prism_filtration(2, PrismVariant::ScaledL).unwrap();
    let tokens: Vec<&str> = cert.steps.iter().map(|s| s.generator.as_str()).collect();
    assert_eq!(
        tokens,
        vec!["scaled-S:inner:n=3,i=2", "scaled-S:inner:n=3,i=1", "prism-upper:n=2,k=0"]
    );
    verify_certificate(&goal, &cert).unwrap();
}

#[test]
fn tampered_certificate_is_rejected() {
    let (goal, cert) = prism_filtration(1, PrismVariant::Upper).unwrap();
    let mut broken = cert.clone();
    broken.steps.pop();
    assert!(verify_certificate(&goal, &broken).is_err());
    let mut relabeled = cert;
    // The final step attaches along the outer horn Λ²₀; the inner-horn generator has a
    // different source, so the recorded attachment no longer typechecks.
    relabeled.steps[1].generator = "scaled-S:inner:n=2,i=1".into();
    assert!(verify_certificate(&goal, &relabeled).is_err());
}

#[test]
fn certificates_round_trip_through_json() {
    let (goal, cert) = prism_filtration(1, PrismVariant::Lower).unwrap();
    let v = certified_to_json(&goal, &cert);
    let (goal2, cert2) = certified_from_json(&v).unwrap();
    assert_eq!(cert, cert2);
    assert_eq!(goal.map().assign(), goal2.map().assign());
    verify_certificate(&goal2, &cert2).unwrap();
}

// --- search ---------------------------------------------------------------------------

#[test]
fn inner_horn_inclusion_is_certified_in_one_step() {
    let target = crate::strat::th_k(simplex(2), 0).with_kind(DecorationKind::Scaled);
    let horn = standard_complex(StandardKind::Horn(2, 1)).unwrap();
    let goal = DecoratedInclusion::restriction_inclusion(&horn, &target).unwrap();
    let family = vec![build("scaled-S:inner", &[2, 1]).unwrap()];
    let cert = search_certificate(&goal, &family, &SearchBudget::new(1, 10))
        .unwrap()
        .expect("one pushout of the generator itself");
    assert_eq!(cert.steps.len(), 1);
    verify_certificate(&goal, &cert).unwrap();
}

#[test]
fn flat_boundary_inclusion_has_no_scaled_certificate() {
    let boundary = standard_complex(StandardKind::Boundary(2)).unwrap();
    let goal = DecoratedInclusion::restriction_inclusion(
        &boundary,
        &flat_scaled(simplex(2)),
    )
    .unwrap();
    let family = crate::generators::family("scaled_S", 3).unwrap();
    let found = search_certificate(&goal, &family, &SearchBudget::new(2, 20)).unwrap();
    assert!(found.is_none(), "a flat 2-simplex cannot be anodyne over its boundary");
}

/// The two scalings of Δ³ by "all triangles through a fixed inner vertex" extend to the
/// full scaling through a single pushout of the saturation generator along a vertex
/// collapse of Δ⁴.
#[test]
fn inner_vertex_scalings_saturate_in_one_step() {
    for (vertex, tris) in [
        (1usize, [[0, 1, 2], [0, 1, 3], [1, 2, 3]]),
        (2, [[0, 1, 2], [0, 2, 3], [1, 2, 3]]),
    ] {
        let marks: BTreeSet<CellId> = tris.iter().map(|t| face_id(t)).collect();
        let source = Decoration::new(
            simplex(3),
            DecorationKind::Scaled,
            [(2, marks)].into_iter().collect(),
        )
        .unwrap();
        let goal =
            DecoratedInclusion::mark_extension(source, Decoration::sharp(simplex(3)))
                .unwrap();
        let family = vec![build("scaled-S:saturate", &[]).unwrap()];
        let cert = search_certificate(&goal, &family, &SearchBudget::new(1, 40))
            .unwrap()
            .unwrap_or_else(|| panic!("no saturation step found for vertex {vertex}"));
        assert_eq!(cert.steps.len(), 1);
        verify_certificate(&goal, &cert).unwrap();
    }
}

#[test]
fn a_collapse_retract_verifies() {
    // The identity of the point, certified by attaching a collapsed horn and
    // retracting it away again.
    let point = flat_scaled(simplex(0));
    let goal = DecoratedInclusion::mark_extension(point.clone(), point.clone()).unwrap();
    let gen = build("scaled-S:collapsed0", &[2]).unwrap();
    let attach = SimplicialMap::constant(
        gen.map.source().carrier(),
        point.carrier(),
        &face_id(&[0]),
    )
    .unwrap();
    let p = pushout(gen.map.map(), &attach).unwrap();
    let retraction =
        SimplicialMap::constant(&p.complex, point.carrier(), &face_id(&[0])).unwrap();
    let cert = Certificate {
        steps: vec![CertStep {
            generator: gen.token(),
            attach: attach.assign().clone(),
        }],
        retract: Some(Retract {
            section: p.from_right.assign().clone(),
            retraction: retraction.assign().clone(),
        }),
    };
    verify_certificate(&goal, &cert).unwrap();
}

// --- pushout-joins --------------------------------------------------------------------

#[test]
fn corner_of_inner_horn_and_point_boundary() {
    let (goal, cert) = pushout_join_cells(PushoutJoinCase::Inner { m: 2, i: 1 }, 0).unwrap();
    assert_eq!(cert.steps.len(), 1);
    assert_eq!(cert.steps[0].generator, "scaled-S:inner:n=3,i=1");
    verify_certificate(&goal, &cert).unwrap();
}

#[test]
fn corner_of_cartesian_horn_is_an_inner_horn() {
    for n in 0..=1 {
        let (goal, cert) = pushout_join_cells(PushoutJoinCase::Cart { m: 1 }, n).unwrap();
        assert_eq!(cert.steps.len(), 1);
        assert_eq!(
            cert.steps[0].generator,
            format!("scaled-S:inner:n={},i=1", n + 2)
        );
        verify_certificate(&goal, &cert).unwrap();
    }
}

#[test]
fn corner_of_collapsed_horn_stays_collapsed() {
    let (goal, cert) =
        pushout_join_cells(PushoutJoinCase::Collapsed0 { m: 2 }, 0).unwrap();
    assert_eq!(cert.steps.len(), 1);
    assert_eq!(cert.steps[0].generator, "scaled-S:collapsed0:n=3");
    verify_certificate(&goal, &cert).unwrap();
}

#[test]
fn corner_of_edge_marking_is_an_isomorphism() {
    let (goal, cert) = pushout_join_cells(PushoutJoinCase::Mark2, 1).unwrap();
    assert!(cert.steps.is_empty());
    assert!(goal.map().is_iso());
    verify_certificate(&goal, &cert).unwrap();
}

#[test]
fn corner_against_a_triangle_scaling_is_an_isomorphism() {
    // Joining with the mark-only inclusion (Δ²)♭ → (Δ²)♯ changes no simplices.
    let f = build("marked-scaled-AS:inner", &[2, 1]).unwrap();
    let g = DecoratedInclusion::mark_extension(
        flat_scaled(simplex(2)),
        Decoration::sharp(simplex(2)),
    )
    .unwrap();
    let corner = pushout_join(&f.map, &g).unwrap();
    assert!(corner.map().is_iso());
}

// --- transformations ------------------------------------------------------------------

#[test]
fn sections_of_monotone_surjections() {
    assert_eq!(section_of(&[0, 0, 1]).unwrap(), vec![0, 2]);
    assert_eq!(section_of(&[0, 1, 1, 2]).unwrap(), vec![0, 1, 3]);
    assert!(section_of(&[0, 2]).is_err());
    assert!(section_of(&[1, 2]).is_err());
}

fn sub(n: usize, seeds: &[&[usize]]) -> FiniteSimplicialSet {
    let seed: BTreeSet<CellId> = seeds.iter().map(|vs| face_id(vs)).collect();
    simplex(n).subcomplex(&seed).unwrap()
}

#[test]
fn admissibility_for_an_edge_collapse() {
    // ρ = [0,0]: vertex 1 is collapsed onto vertex 0.
    assert!(is_admissible(1, &[0, 0], &sub(1, &[&[0]])).unwrap());
    assert!(is_admissible(1, &[0, 0], &sub(1, &[&[0, 1]])).unwrap());
    // {1} alone is not admissible: 1 is outside the section image, so the edge 01
    // (terminal vertex 1) would have to be present.
    assert!(!is_admissible(1, &[0, 0], &sub(1, &[&[1]])).unwrap());
    // σρ sends 2 to 1, so a subcomplex containing 2 must contain 1.
    assert!(!is_admissible(2, &[0, 1, 1], &sub(2, &[&[2]])).unwrap());
}

#[test]
fn right_projection_is_a_transformation_for_the_identity() {
    let prod = product(&simplex(1), &simplex(1)).unwrap();
    let c = flat_scaled(simplex(1));
    check_transformation(&c, &[0, 1], &simplex(1), &prod.proj_right).unwrap();
}

#[test]
fn transformation_conditions_catch_a_nondegenerate_prism() {
    // The identity of Δ¹ × Δ¹ is not a transformation for ρ = id: the simplex over a
    // section vertex must be degenerate.
    let prod = product(&simplex(1), &simplex(1)).unwrap();
    let c = flat_scaled(prod.complex.clone());
    let id = SimplicialMap::identity(&prod.complex);
    assert!(check_transformation(&c, &[0, 1], &simplex(1), &id).is_err());
}

#[test]
fn extension_from_the_endpoint_fills_the_whole_prism() {
    // ρ = [0,0] (collapse), A = ∅, B = Δ¹: a map on {1} × Δ¹ extends to the full
    // prism, entirely by degeneracies and one thin horn fill in the flat interval.
    let n = 1;
    let rho = [0usize, 0];
    let a = FiniteSimplicialSet::empty();
    let b = simplex(1);
    let c = flat_scaled(simplex(1));
    let domain = transformation_domain(n, &a, &b).unwrap();
    let prod = product(&simplex(1), &simplex(1)).unwrap();
    let g = SimplicialMap::new(
        domain.clone(),
        c.carrier().clone(),
        domain
            .all_cells()
            .map(|(cell, _)| (cell.clone(), prod.proj_right.cell_image(cell).unwrap().clone()))
            .collect(),
    )
    .unwrap();
    let h = extend_transformation(&c, &rho, &a, &b, &g).unwrap();
    check_transformation(&c, &rho, &b, &h).unwrap();
    // The collapsed vertex (0,1) retracts onto (0,0), which lies over vertex 0.
    let prism = Prism::new(1).unwrap();
    let v01 = prism.cell_of(&[(0, 1)]).unwrap();
    assert_eq!(*h.cell_image(v01).unwrap(), SimplexRef::cell(face_id(&[0])));
    // The prism edge over the section vertex 0 is degenerate.
    let e0 = prism.cell_of(&[(0, 0), (1, 0)]).unwrap();
    assert!(!h.cell_image(e0).unwrap().is_nondegenerate());
}

#[test]
fn extension_rejects_an_inadmissible_target() {
    let n = 1;
    let rho = [0usize, 0];
    let a = FiniteSimplicialSet::empty();
    let b = sub(1, &[&[1]]);
    let c = flat_scaled(simplex(1));
    let domain = transformation_domain(n, &a, &b).unwrap();
    let g = SimplicialMap::constant(&domain, c.carrier(), &face_id(&[1])).unwrap();
    assert!(extend_transformation(&c, &rho, &a, &b, &g).is_err());
}

#[test]
fn lift_along_the_identity_recovers_the_prism() {
    let n = 1;
    let a = FiniteSimplicialSet::empty();
    let b = simplex(1);
    let prism = product(&simplex(1), &simplex(1)).unwrap();
    let p = SimplicialMap::identity(&prism.complex);
    let big_h = SimplicialMap::identity(&prism.complex);
    let domain = transformation_domain(n, &a, &b).unwrap();
    let f = crate::sskernel::MonoInclusion::subcomplex_inclusion(&domain, &prism.complex)
        .unwrap()
        .into_map();
    // Prescribed edge over each vertex: the actual (vertical) prism edge, identified
    // by its endpoints.
    let mut prescribed: BTreeMap<CellId, SimplexRef> = BTreeMap::new();
    let tuples = prism.complex.vertex_tuples();
    let vertex_coord: BTreeMap<CellId, (String, String)> = prism
        .complex
        .cells(0)
        .map(|c| {
            let (rl, rr) = &prism.components[c];
            (c.clone(), (rl.target.to_string(), rr.target.to_string()))
        })
        .collect();
    for c in prism.complex.cells(1) {
        let vs = &tuples[c];
        let (e0, j0) = &vertex_coord[&vs[0]];
        let (e1, j1) = &vertex_coord[&vs[1]];
        if e0 == "0" && e1 == "1" && j0 == j1 {
            prescribed.insert(CellId::new(j0.clone()), SimplexRef::cell(c.clone()));
        }
    }
    let h = lift_transformation(&p, n, &a, &b, &f, &big_h, &prescribed).unwrap();
    assert_eq!(h.assign(), SimplicialMap::identity(&prism.complex).assign());
}
