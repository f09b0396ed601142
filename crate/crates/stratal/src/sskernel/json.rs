//! JSON round-tripping for complexes.
//!
//! Schema:
//! `{ "schema": 1, "dims": n, "cells": {dim: [ids]}, "faces": {id: [{"word": [..],
//! "target": id}]}, "vertex_named"?, "coskeletal0"? }` — all ids strings, round-trip
//! (`parse ∘ print = id`) required and tested.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CellId, DegeneracyWord, FiniteSimplicialSet, KernelError, SimplexRef};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct JsonRef {
    word: Vec<usize>,
    target: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonComplex {
    schema: u32,
    dims: usize,
    cells: BTreeMap<String, Vec<String>>,
    faces: BTreeMap<String, Vec<JsonRef>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    vertex_named: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    coskeletal0: bool,
}

/// Serializes a complex to the stable JSON schema.
pub fn complex_to_json(x: &FiniteSimplicialSet) -> serde_json::Value {
    let mut cells: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut faces: BTreeMap<String, Vec<JsonRef>> = BTreeMap::new();
    for (c, n) in x.all_cells() {
        cells.entry(n.to_string()).or_default().push(c.to_string());
        if n > 0 {
            faces.insert(
                c.to_string(),
                x.cell_faces(c)
                    .expect("positive-dimensional cell has faces")
                    .iter()
                    .map(|r| JsonRef {
                        word: r.word.ops().to_vec(),
                        target: r.target.to_string(),
                    })
                    .collect(),
            );
        }
    }
    serde_json::to_value(JsonComplex {
        schema: SCHEMA_VERSION,
        dims: x.dim(),
        cells,
        faces,
        vertex_named: x.vertex_named(),
        coskeletal0: x.coskeletal0(),
    })
    .expect("complex serialization cannot fail")
}

/// Parses a complex from the JSON schema, validating all simplicial identities.
pub fn complex_from_json(v: &serde_json::Value) -> Result<FiniteSimplicialSet, KernelError> {
    let parsed: JsonComplex =
        serde_json::from_value(v.clone()).map_err(|e| KernelError::Json(e.to_string()))?;
    if parsed.schema != SCHEMA_VERSION {
        return Err(KernelError::Json(format!(
            "unsupported schema version {} (expected {SCHEMA_VERSION})",
            parsed.schema
        )));
    }
    let mut by_dim: Vec<(usize, Vec<String>)> = Vec::new();
    for (d, ids) in &parsed.cells {
        let d: usize =
            d.parse().map_err(|_| KernelError::Json(format!("bad dimension key `{d}`")))?;
        by_dim.push((d, ids.clone()));
    }
    by_dim.sort();
    let mut out = FiniteSimplicialSet::empty();
    for (d, ids) in by_dim {
        for id in ids {
            let faces = if d == 0 {
                Vec::new()
            } else {
                let raw = parsed
                    .faces
                    .get(&id)
                    .ok_or_else(|| KernelError::Json(format!("cell `{id}` missing faces")))?;
                raw.iter()
                    .map(|jr| {
                        let target = CellId::new(jr.target.clone());
                        let base = out.cell_dim(&target)?;
                        Ok(SimplexRef {
                            word: DegeneracyWord::new(jr.word.clone(), base)?,
                            target,
                        })
                    })
                    .collect::<Result<Vec<_>, KernelError>>()?
            };
            out.add_cell(CellId::new(id), d, faces)?;
        }
    }
    out.set_vertex_named(parsed.vertex_named);
    out.set_coskeletal0(parsed.coskeletal0);
    out.validate()?;
    Ok(out)
}
