//! Regenerates the checked-in JSON fixtures under `fixtures/`.
//!
//! Run from the workspace root:
//!
//! ```text
//! cargo run -p stratal --example make_fixtures
//! ```
//!
//! Output is deterministic; the files double as CLI input/output examples.

use std::collections::BTreeSet;
use std::path::PathBuf;

use stratal::decompose::{goal_to_json, search_certificate, SearchBudget};
use stratal::generators::build;
use stratal::sskernel::{face_id, standard_complex, StandardKind};
use stratal::strat::{decoration_to_json, DecoratedInclusion, Decoration, DecorationKind};
use stratal::twocat::{nerve2, oriental2, twocat_to_json, walking_iso};
use stratal::CellId;

fn write(dir: &PathBuf, name: &str, v: &serde_json::Value) {
    let text = format!("{}\n", serde_json::to_string_pretty(v).expect("serialize"));
    std::fs::write(dir.join(name), text).expect("write fixture");
    println!("wrote fixtures/{name}");
}

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    std::fs::create_dir_all(&dir).expect("create fixtures dir");

    // The flat boundary of the triangle: fails the weak-∞-bicategory check with an
    // inner-horn counterexample.
    let boundary2 = standard_complex(StandardKind::Boundary(2)).expect("boundary");
    let flat = Decoration::flat(boundary2, DecorationKind::Scaled);
    write(&dir, "boundary2_flat.json", &decoration_to_json(&flat));

    // The two inner-vertex scalings of Δ³ and their one-step saturation certificates.
    let d3 = standard_complex(StandardKind::Simplex(3)).expect("simplex");
    for (name, tris) in [
        ("j1", [[0usize, 1, 2], [0, 1, 3], [1, 2, 3]]),
        ("j2", [[0, 1, 2], [0, 2, 3], [1, 2, 3]]),
    ] {
        let marks: BTreeSet<CellId> = tris.iter().map(|t| face_id(t)).collect();
        let source = Decoration::new(
            d3.clone(),
            DecorationKind::Scaled,
            [(2, marks)].into_iter().collect(),
        )
        .expect("scaling");
        let goal = DecoratedInclusion::mark_extension(source, Decoration::sharp(d3.clone()))
            .expect("goal");
        let family = vec![build("scaled-S:saturate", &[]).expect("generator")];
        let cert = search_certificate(&goal, &family, &SearchBudget::new(1, 40))
            .expect("search")
            .expect("a one-step certificate exists");
        write(&dir, &format!("{name}_goal.json"), &goal_to_json(&goal));
        let cert_json = serde_json::json!({
            "schema": 1,
            "steps": serde_json::to_value(&cert.steps).expect("steps"),
            "retract": serde_json::Value::Null,
        });
        write(&dir, &format!("{name}_cert.json"), &cert_json);
    }

    // 2-category fixtures and the nerve used by the CLI examples.
    write(&dir, "walking_iso_twocat.json", &twocat_to_json(&walking_iso()));
    write(&dir, "oriental2_twocat.json", &twocat_to_json(&oriental2(2)));
    let nerve = nerve2(&walking_iso(), 4).expect("nerve");
    write(&dir, "nerve_walking_iso.json", &decoration_to_json(&nerve));
}
