//! Batch command-line interface over the stratal toolkit.
//!
//! Every command emits a JSON report (to stdout, or to `--out`).  Exit codes: 0 for
//! success / a passing check, 1 for a checked failure (the report carries the
//! counterexample), 2 for usage or file-format errors.  Reports are deterministic:
//! identical invocations produce byte-identical output, independently of `--jobs`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use stratal::constructions::{
    gray_product, hom_comparison, hom_gray, hom_slice, join_marked_scaled, product_decorated,
    product_scaled, pushout_product, slice,
};
use stratal::decompose::{
    certified_to_json, extend_transformation, goal_from_json, prism_filtration,
    search_certificate, transformation_domain, verify_certificate, Certificate, PrismVariant,
    SearchBudget,
};
use stratal::generators;
use stratal::homotopy::{core, equivalence_edges, fibrant_replacement};
use stratal::lifting::{classify, classify_map, MapClass, ObjectClass};
use stratal::sskernel::{complex_to_json, pushout, standard_complex, StandardKind};
use stratal::strat::{
    decoration_from_json, decoration_to_json, join_stratified, DecoratedMap, Decoration,
    DecorationKind,
};
use stratal::twocat::{ho2_presentation, nerve2, oriental2, twocat_from_json, twocat_to_json};
use stratal::{CellId, SimplexRef, SimplicialMap};

#[derive(Parser)]
#[command(
    name = "stratal",
    version,
    about = "Decorated simplicial sets: constructions, bounded checks, certificates."
)]
struct Cli {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker count; accepted for compatibility — output is independent of it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a decorated-set file (simplicial identities and decoration rules).
    Validate { file: PathBuf },
    /// Build a compound object from input files.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Emit a generating family of decorated inclusions up to a dimension bound.
    Generators {
        family: String,
        #[arg(long)]
        nmax: usize,
    },
    /// Bounded object classification against a named class of generators.
    Check {
        file: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long)]
        nmax: usize,
    },
    /// Bounded map classification; the map sends same-named cells to each other
    /// unless `--assign` provides an explicit assignment.
    CheckMap {
        src: PathBuf,
        tgt: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        assign: Option<PathBuf>,
    },
    /// List the equivalence edges of a decorated set.
    EqEdges { file: PathBuf },
    /// The core spanned by the distinguished cells.
    Core { file: PathBuf },
    /// Fibrant replacement of a decorated set.
    Replace { file: PathBuf },
    /// Search for an anodyne-decomposition certificate of a goal inclusion.
    Decompose {
        goal: PathBuf,
        #[arg(long)]
        family: String,
        /// Maximum number of pushout steps.
        #[arg(long)]
        budget: usize,
        /// Dimension bound for the generating family.
        #[arg(long)]
        nmax: usize,
        /// Cap on intermediate cell counts (default: the goal target's cell count).
        #[arg(long)]
        max_cells: Option<usize>,
    },
    /// Verify a certificate file against a goal inclusion file.
    VerifyCert { goal: PathBuf, cert: PathBuf },
    /// Emit the certified prism filtration for `Δ¹ × Δⁿ`.
    Prism {
        #[arg(long)]
        n: usize,
        /// One of `upper`, `lower`, `scaled-L`.
        #[arg(long)]
        variant: String,
    },
    /// Extend a partial transformation over `Δ¹ × Δⁿ` (the moving construction).
    Move { complex: PathBuf, data: PathBuf },
    /// The scaled 2-nerve of a finite 2-category file.
    Nerve2 {
        twocat: PathBuf,
        #[arg(long)]
        nmax: usize,
    },
    /// Emit the 2-truncated oriental on `[n]`.
    Oriental {
        #[arg(long)]
        n: usize,
    },
    /// Emit a presentation of the homotopy 2-category of a decorated set.
    Ho2 { file: PathBuf },
}

#[derive(Subcommand)]
enum Construct {
    /// Product of two equally-kinded decorated sets (componentwise decoration).
    Product { x: PathBuf, y: PathBuf },
    /// Join: stratified ⋆ stratified, or marked-scaled ⋆ scaled.
    Join { x: PathBuf, y: PathBuf },
    /// Gray product of the underlying simplicial sets (scaled output).
    Gray { x: PathBuf, y: PathBuf },
    /// Pushout of two decorated maps with a common source.
    Pushout { left: PathBuf, right: PathBuf },
    /// Slice of a scaled set under a decorated map, up to a dimension bound.
    Slice {
        x: PathBuf,
        f: PathBuf,
        #[arg(long)]
        nmax: usize,
    },
    /// Mapping complex between two vertices, up to a dimension bound.
    Hom {
        c: PathBuf,
        x: String,
        y: String,
        #[arg(long)]
        nmax: usize,
        /// One of `gray`, `slice`, `compare`.
        #[arg(long, default_value = "gray")]
        model: String,
    },
    /// Pushout-product of two decorated inclusions.
    PushoutProduct { i: PathBuf, j: PathBuf },
}

/// A checked failure: exit code 1 with this report.
struct Checked(Value);

enum CliError {
    /// Usage or file-format problem: exit code 2.
    Usage(String),
    /// A checked failure with its report: exit code 1.
    Failed(Value),
}

impl From<Checked> for CliError {
    fn from(c: Checked) -> Self {
        CliError::Failed(c.0)
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_decoration(path: &Path) -> Result<Decoration, CliError> {
    decoration_from_json(&read_json(path)?)
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Reads a decorated map file `{source, target, assign}`.
fn read_decorated_map(path: &Path) -> Result<DecoratedMap, CliError> {
    let v = read_json(path)?;
    let get = |k: &str| {
        v.get(k).ok_or_else(|| usage(format!("{}: missing `{k}`", path.display())))
    };
    let source = decoration_from_json(get("source")?)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let target = decoration_from_json(get("target")?)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let assign: BTreeMap<CellId, SimplexRef> =
        serde_json::from_value(get("assign")?.clone())
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let map = SimplicialMap::new(source.carrier().clone(), target.carrier().clone(), assign)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    DecoratedMap::new(map, source, target)
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn report(command: &str, body: Value) -> Value {
    let mut base = json!({ "schema": 1, "command": command });
    base.as_object_mut()
        .expect("object")
        .extend(body.as_object().cloned().unwrap_or_default());
    base
}

fn check_report(command: &str, r: &stratal::lifting::Report) -> (Value, bool) {
    let mut v = report(command, json!({}));
    v.as_object_mut()
        .expect("object")
        .extend(r.to_json().as_object().cloned().unwrap_or_default());
    (v, r.pass)
}

fn run(cmd: Cmd) -> Result<Value, CliError> {
    match cmd {
        Cmd::Validate { file } => {
            let v = read_json(&file)?;
            match decoration_from_json(&v) {
                Ok(d) => Ok(report(
                    "validate",
                    json!({
                        "verdict": "pass",
                        "cells": d.carrier().cell_count(),
                        "kind": d.kind().as_str(),
                    }),
                )),
                Err(e) => Err(CliError::Failed(report(
                    "validate",
                    json!({ "verdict": "fail", "error": e.to_string() }),
                ))),
            }
        }
        Cmd::Construct { what } => run_construct(what),
        Cmd::Generators { family, nmax } => {
            let gens = generators::family(&family, nmax).map_err(usage)?;
            let instances: Vec<Value> = gens
                .iter()
                .map(|g| {
                    json!({
                        "token": g.token(),
                        "map": stratal::decompose::goal_to_json(&g.map),
                    })
                })
                .collect();
            Ok(report("generators", json!({ "family": family, "instances": instances })))
        }
        Cmd::Check { file, class, nmax } => {
            let x = read_decoration(&file)?;
            let class = ObjectClass::parse(&class.replace('-', "_"))
                .ok_or_else(|| usage(format!("unknown object class `{class}`")))?;
            let r = classify(&x, class, nmax).map_err(usage)?;
            let (v, pass) = check_report("check", &r);
            if pass {
                Ok(v)
            } else {
                Err(CliError::Failed(v))
            }
        }
        Cmd::CheckMap { src, tgt, class, nmax, assign } => {
            let source = read_decoration(&src)?;
            let target = read_decoration(&tgt)?;
            let assign: BTreeMap<CellId, SimplexRef> = match assign {
                Some(path) => serde_json::from_value(read_json(&path)?)
                    .map_err(|e| usage(format!("{}: {e}", path.display())))?,
                None => source
                    .carrier()
                    .all_cells()
                    .map(|(c, _)| (c.clone(), SimplexRef::cell(c.clone())))
                    .collect(),
            };
            let map = SimplicialMap::new(
                source.carrier().clone(),
                target.carrier().clone(),
                assign,
            )
            .map_err(usage)?;
            let p = DecoratedMap::new(map, source, target).map_err(usage)?;
            let class = MapClass::parse(&class.replace('-', "_"))
                .ok_or_else(|| usage(format!("unknown map class `{class}`")))?;
            let r = classify_map(&p, class, nmax).map_err(usage)?;
            let (v, pass) = check_report("check-map", &r);
            if pass {
                Ok(v)
            } else {
                Err(CliError::Failed(v))
            }
        }
        Cmd::EqEdges { file } => {
            let x = read_decoration(&file)?;
            let edges = equivalence_edges(&x).map_err(usage)?;
            let edges: Vec<Value> = edges
                .iter()
                .map(|r| serde_json::to_value(r).expect("refs serialize"))
                .collect();
            Ok(report("eq-edges", json!({ "edges": edges })))
        }
        Cmd::Core { file } => {
            let x = read_decoration(&file)?;
            let c = core(&x).map_err(usage)?;
            Ok(complex_to_json(&c))
        }
        Cmd::Replace { file } => {
            let x = read_decoration(&file)?;
            let y = fibrant_replacement(&x).map_err(usage)?;
            Ok(decoration_to_json(&y))
        }
        Cmd::Decompose { goal, family, budget, nmax, max_cells } => {
            let goal = goal_from_json(&read_json(&goal)?)
                .map_err(|e| usage(e.to_string()))?;
            let gens = generators::family(&family, nmax).map_err(usage)?;
            let cap = max_cells.unwrap_or_else(|| goal.target().carrier().cell_count());
            let sb = SearchBudget::new(budget, cap);
            match search_certificate(&goal, &gens, &sb).map_err(usage)? {
                Some(cert) => Ok(certified_to_json(&goal, &cert)),
                None => Err(CliError::Failed(report(
                    "decompose",
                    json!({
                        "verdict": "fail",
                        "error": "no certificate within budget",
                        "budget": budget,
                    }),
                ))),
            }
        }
        Cmd::VerifyCert { goal, cert } => {
            let goal = goal_from_json(&read_json(&goal)?)
                .map_err(|e| usage(e.to_string()))?;
            let v = read_json(&cert)?;
            let steps = serde_json::from_value(
                v.get("steps").cloned().unwrap_or_else(|| json!([])),
            )
            .map_err(usage)?;
            let retract =
                serde_json::from_value(v.get("retract").cloned().unwrap_or(Value::Null))
                    .map_err(usage)?;
            let cert = Certificate { steps, retract };
            match verify_certificate(&goal, &cert) {
                Ok(()) => Ok(report("verify-cert", json!({ "verdict": "pass" }))),
                Err(e) => Err(CliError::Failed(report(
                    "verify-cert",
                    json!({ "verdict": "fail", "error": e.to_string() }),
                ))),
            }
        }
        Cmd::Prism { n, variant } => {
            let variant = PrismVariant::parse(&variant)
                .ok_or_else(|| usage(format!("unknown prism variant `{variant}`")))?;
            let (goal, cert) =
                prism_filtration(n, variant).map_err(|e| usage(e.to_string()))?;
            Ok(certified_to_json(&goal, &cert))
        }
        Cmd::Move { complex, data } => {
            let c = read_decoration(&complex)?;
            let v = read_json(&data)?;
            let rho: Vec<usize> = serde_json::from_value(
                v.get("rho").cloned().unwrap_or(Value::Null),
            )
            .map_err(|e| usage(format!("bad `rho`: {e}")))?;
            let n = rho
                .len()
                .checked_sub(1)
                .ok_or_else(|| usage("`rho` must be nonempty"))?;
            let simplex = standard_complex(StandardKind::Simplex(n)).map_err(usage)?;
            let seeds = |key: &str| -> Result<BTreeSet<CellId>, CliError> {
                let raw: Vec<String> = serde_json::from_value(
                    v.get(key).cloned().unwrap_or_else(|| json!([])),
                )
                .map_err(|e| usage(format!("bad `{key}`: {e}")))?;
                Ok(raw.into_iter().map(CellId::new).collect())
            };
            let a = simplex.subcomplex(&seeds("a")?).map_err(usage)?;
            let b = simplex.subcomplex(&seeds("b")?).map_err(usage)?;
            let domain = transformation_domain(n, &a, &b)
                .map_err(|e| usage(e.to_string()))?;
            let assign: BTreeMap<CellId, SimplexRef> = serde_json::from_value(
                v.get("g").cloned().unwrap_or(Value::Null),
            )
            .map_err(|e| usage(format!("bad `g`: {e}")))?;
            let g = SimplicialMap::new(domain, c.carrier().clone(), assign)
                .map_err(usage)?;
            match extend_transformation(&c, &rho, &a, &b, &g) {
                Ok(h) => Ok(report(
                    "move",
                    json!({
                        "verdict": "pass",
                        "assign": serde_json::to_value(h.assign()).expect("assign serializes"),
                    }),
                )),
                Err(e) => Err(CliError::Failed(report(
                    "move",
                    json!({ "verdict": "fail", "error": e.to_string() }),
                ))),
            }
        }
        Cmd::Nerve2 { twocat, nmax } => {
            let d = twocat_from_json(&read_json(&twocat)?)
                .map_err(|e| usage(e.to_string()))?;
            let nerve = nerve2(&d, nmax).map_err(|e| usage(e.to_string()))?;
            Ok(decoration_to_json(&nerve))
        }
        Cmd::Oriental { n } => Ok(twocat_to_json(&oriental2(n))),
        Cmd::Ho2 { file } => {
            let x = read_decoration(&file)?;
            let p = ho2_presentation(&x).map_err(|e| usage(e.to_string()))?;
            let mut v = report("ho2", json!({}));
            v.as_object_mut().expect("object").insert(
                "presentation".into(),
                serde_json::to_value(&p).expect("presentation serializes"),
            );
            Ok(v)
        }
    }
}

fn run_construct(what: Construct) -> Result<Value, CliError> {
    match what {
        Construct::Product { x, y } => {
            let (x, y) = (read_decoration(&x)?, read_decoration(&y)?);
            let p = if x.kind() == DecorationKind::Scaled {
                product_scaled(&x, &y).map_err(usage)?
            } else {
                product_decorated(&x, &y).map_err(usage)?
            };
            Ok(decoration_to_json(&p.decoration))
        }
        Construct::Join { x, y } => {
            let (x, y) = (read_decoration(&x)?, read_decoration(&y)?);
            if x.kind() == DecorationKind::Stratified {
                let j = join_stratified(&x, &y).map_err(usage)?;
                Ok(decoration_to_json(&j))
            } else {
                let j = join_marked_scaled(&x, &y).map_err(usage)?;
                Ok(decoration_to_json(&j.decoration))
            }
        }
        Construct::Gray { x, y } => {
            let (x, y) = (read_decoration(&x)?, read_decoration(&y)?);
            let g = gray_product(x.carrier(), y.carrier()).map_err(usage)?;
            Ok(decoration_to_json(&g.decoration))
        }
        Construct::Pushout { left, right } => {
            let (l, r) = (read_decorated_map(&left)?, read_decorated_map(&right)?);
            if l.source() != r.source() {
                return Err(usage("pushout legs must share their source"));
            }
            if l.target().kind() != r.target().kind() {
                return Err(usage("pushout legs must have equally-kinded targets"));
            }
            let p = pushout(l.map(), r.map()).map_err(usage)?;
            let mut marks: BTreeMap<usize, BTreeSet<CellId>> = BTreeMap::new();
            for (leg, dec) in [(&p.from_left, l.target()), (&p.from_right, r.target())] {
                for (dim, cells) in dec.marks() {
                    for c in cells {
                        let image = leg.cell_image(c).map_err(usage)?;
                        if image.is_nondegenerate() {
                            marks.entry(*dim).or_default().insert(image.target.clone());
                        }
                    }
                }
            }
            let d = Decoration::new(p.complex.clone(), l.target().kind(), marks)
                .map_err(usage)?;
            Ok(decoration_to_json(&d))
        }
        Construct::Slice { x, f, nmax } => {
            let x = read_decoration(&x)?;
            let f = read_decorated_map(&f)?;
            let s = slice(&x, &f, nmax).map_err(usage)?;
            Ok(decoration_to_json(&s.decoration))
        }
        Construct::Hom { c, x, y, nmax, model } => {
            let c = read_decoration(&c)?;
            let (x, y) = (CellId::new(x), CellId::new(y));
            match model.as_str() {
                "gray" => {
                    let h = hom_gray(&c, &x, &y, nmax).map_err(usage)?;
                    Ok(decoration_to_json(&h.decoration))
                }
                "slice" => {
                    let h = hom_slice(&c, &x, &y, nmax).map_err(usage)?;
                    Ok(decoration_to_json(&h.decoration))
                }
                "compare" => {
                    let cmp = hom_comparison(&c, &x, &y, nmax).map_err(usage)?;
                    let v = report(
                        "hom-compare",
                        json!({
                            "verdict": if cmp.detects_marked { "pass" } else { "fail" },
                            "source": decoration_to_json(cmp.map.source()),
                            "target": decoration_to_json(cmp.map.target()),
                            "assign": serde_json::to_value(cmp.map.map().assign())
                                .expect("assign serializes"),
                        }),
                    );
                    if cmp.detects_marked {
                        Ok(v)
                    } else {
                        Err(CliError::Failed(v))
                    }
                }
                other => Err(usage(format!("unknown hom model `{other}`"))),
            }
        }
        Construct::PushoutProduct { i, j } => {
            let parse = |p: &Path| {
                goal_from_json(&read_json(p)?).map_err(|e| usage(e.to_string()))
            };
            let (i, j) = (parse(&i)?, parse(&j)?);
            let out = pushout_product(&i, &j).map_err(usage)?;
            Ok(stratal::decompose::goal_to_json(&out))
        }
    }
}

fn emit(out: Option<&Path>, v: &Value) -> std::io::Result<()> {
    let text = format!("{}\n", serde_json::to_string_pretty(v).expect("report serializes"));
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = cli.jobs;
    match run(cli.cmd) {
        Ok(v) => {
            if emit(cli.out.as_deref(), &v).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(v)) => {
            let _ = emit(cli.out.as_deref(), &v);
            ExitCode::from(1)
        }
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
