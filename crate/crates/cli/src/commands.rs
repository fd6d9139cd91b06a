//! Command implementations. Each returns an [`Outcome`] holding the JSON
//! document for standard output, a one-line summary for standard error,
//! and whether the command's verdict passed.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde_json::{json, Value};

use cfum_core::critical::{
    build_critical, certify_critical, find_path_or_binary, validate_extraction, CriticalRecipe,
};
use cfum_core::io::{parse_coloring, parse_hypergraph, parse_tree, write_coloring, write_hypergraph, write_tree};
use cfum_core::psf::{binary_odd_refuter, cf_b7_iterated, cf_color_from_psf, psf_from_ksubsets};
use cfum_core::random::rng;
use cfum_core::solver::{chromatic_number_exact, um_tree_exact, SolveBudget};
use cfum_core::transfer::{extremal_nonuniform, extremal_uniform, um_from_cf, um_from_cf_uniform, PartitionedHypergraph};
use cfum_core::tree::{complete_binary, path_hypergraph, um_color_complete_binary, um_color_path, verify_tree_coloring};
use cfum_core::{is_valid, Certificate, Coloring, ColoringKind, Error, Hypergraph, Result, SubdivisionWitness, Tree};

use crate::experiments;

pub const TIME_LIMIT_VAR: &str = "CFUM_TIME_LIMIT";

#[derive(Debug)]
pub struct Outcome {
    pub json: Value,
    pub summary: String,
    pub passed: bool,
}

impl Outcome {
    fn new(json: Value, summary: impl Into<String>, passed: bool) -> Self {
        Self {
            json,
            summary: summary.into(),
            passed,
        }
    }

    fn from_certificate(cert: &Certificate, summary: impl Into<String>) -> Self {
        Self::new(json!(cert), summary, cert.passed())
    }
}

/// 0 on pass, 1 on a semantic failure, 2 on bad usage or input.
pub fn exit_code(r: &Result<Outcome>) -> i32 {
    match r {
        Ok(o) if o.passed => 0,
        Ok(_) | Err(Error::Internal(_)) => 1,
        Err(_) => 2,
    }
}

/// JSON for a failed command, carrying the certificate when there is one.
pub fn error_json(e: &Error) -> Value {
    match e {
        Error::Rejected { reason, certificate } => json!({"error": reason, "certificate": certificate}),
        other => json!({"error": other.to_string()}),
    }
}

/// Default budget, with the time limit taken from `CFUM_TIME_LIMIT`
/// (seconds) when set.
pub fn budget() -> Result<SolveBudget> {
    let b = SolveBudget::default();
    match std::env::var(TIME_LIMIT_VAR) {
        Err(_) => Ok(b),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(secs) => Ok(b.with_time_limit(seconds(secs)?)),
            Err(_) => Err(Error::Precondition(format!("{TIME_LIMIT_VAR}={s:?} is not a number of seconds"))),
        },
    }
}

fn seconds(secs: f64) -> Result<Duration> {
    if secs > 0.0 && secs.is_finite() {
        Ok(Duration::from_secs_f64(secs))
    } else {
        Err(Error::Precondition(format!("time limit must be a positive number of seconds, got {secs}")))
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Instance(format!("cannot read {}: {e}", path.display())))
}

pub fn load_hypergraph(path: &Path) -> Result<Hypergraph> {
    parse_hypergraph(&read(path)?)
}

pub fn load_tree(path: &Path) -> Result<Tree> {
    parse_tree(&read(path)?)
}

pub fn load_coloring(path: &Path) -> Result<Coloring> {
    parse_coloring(&read(path)?)
}

/// Writes `{prefix}.{ext}` for each file and returns the paths written.
fn write_outputs(prefix: Option<&Path>, files: &[(&str, String)]) -> Result<Vec<String>> {
    let Some(prefix) = prefix else {
        return Ok(Vec::new());
    };
    files
        .iter()
        .map(|(ext, text)| {
            let mut p = PathBuf::from(prefix.as_os_str());
            p.as_mut_os_string().push(format!(".{ext}"));
            fs::write(&p, text)?;
            Ok(p.display().to_string())
        })
        .collect()
}

/// Where an instance comes from.
#[derive(Clone, Debug)]
pub enum Instance {
    Hypergraph(PathBuf),
    Tree(PathBuf),
}

pub fn verify(instance: &Instance, coloring: &Path, kind: ColoringKind) -> Result<Outcome> {
    let c = load_coloring(coloring)?;
    let cert = match instance {
        Instance::Hypergraph(p) => {
            let h = load_hypergraph(p)?;
            if c.len() != h.n() {
                return Err(Error::Instance(format!("coloring has {} entries for {} vertices", c.len(), h.n())));
            }
            is_valid(&h, &c, kind)?
        }
        Instance::Tree(p) => verify_tree_coloring(&load_tree(p)?, &c, kind)?,
    };
    let summary = match &cert.edge {
        None => format!("{kind}: pass"),
        Some(e) => format!("{kind}: fail on {e:?}"),
    };
    Ok(Outcome::from_certificate(&cert, summary))
}

/// `time_limit` (seconds) takes precedence over `CFUM_TIME_LIMIT`.
pub fn solve(instance: &Instance, kind: ColoringKind, max_colors: Option<u32>, time_limit: Option<f64>) -> Result<Outcome> {
    let mut b = budget()?;
    if let Some(k) = max_colors {
        b = b.with_max_colors(k);
    }
    if let Some(secs) = time_limit {
        b = b.with_time_limit(seconds(secs)?);
    }
    let r = match instance {
        Instance::Tree(p) if kind == ColoringKind::UniqueMaximum => um_tree_exact(&load_tree(p)?)?,
        Instance::Tree(p) => chromatic_number_exact(&path_hypergraph(&load_tree(p)?), kind, b),
        Instance::Hypergraph(p) => chromatic_number_exact(&load_hypergraph(p)?, kind, b),
    };
    let summary = match r.chi.exact() {
        Some(v) => format!("chi_{kind} = {v}"),
        None => format!("chi_{kind} in [{}, ...] (budget exhausted)", r.chi.lower_bound()),
    };
    Ok(Outcome::new(r.to_json(), summary, true))
}

fn instance_json(inst: &PartitionedHypergraph, files: Vec<String>) -> Value {
    json!({
        "n": inst.base.n(),
        "edges": inst.base.edge_count(),
        "parts": inst.parts,
        "warning": inst.warning,
        "files": files,
    })
}

/// Writes `{out}.hg` and the part coloring as `{out}.col`.
pub fn gen_extremal(n: usize, k: usize, l: Option<usize>, out: Option<&Path>) -> Result<Outcome> {
    let inst = match l {
        None => extremal_nonuniform(n, k)?,
        Some(l) => extremal_uniform(n, k, l)?,
    };
    let files = write_outputs(
        out,
        &[("hg", write_hypergraph(&inst.base)), ("col", write_coloring(&inst.part_coloring()))],
    )?;
    let summary = format!("{} vertices, {} edges, {} parts", inst.base.n(), inst.base.edge_count(), k);
    Ok(Outcome::new(instance_json(&inst, files), summary, true))
}

/// The canonical recipe, a seeded random one, or one read from JSON.
pub fn gen_critical(k: u32, seed: Option<u64>, recipe: Option<&Path>, out: Option<&Path>) -> Result<Outcome> {
    if k == 0 {
        return Err(Error::Precondition("level must be at least 1".into()));
    }
    let recipe = match (recipe, seed) {
        (Some(p), _) => serde_json::from_str(&read(p)?)?,
        (None, Some(s)) => CriticalRecipe::random(&mut rng(s), k),
        (None, None) => CriticalRecipe::canonical(k),
    };
    let t = build_critical(k, &recipe)?;
    let files = write_outputs(out, &[("tree", write_tree(&t))])?;
    let summary = format!("{k}-critical tree on {} vertices", t.n());
    Ok(Outcome::new(
        json!({"k": k, "n": t.n(), "edges": t.edges(), "recipe": recipe, "files": files}),
        summary,
        true,
    ))
}

pub fn gen_binary(d: u32, out: Option<&Path>) -> Result<Outcome> {
    let t = complete_binary(d)?;
    let files = write_outputs(out, &[("tree", write_tree(&t))])?;
    Ok(Outcome::new(json!({"d": d, "n": t.n(), "files": files}), format!("B_{d} on {} vertices", t.n()), true))
}

/// Verifies `c` on `t` for `kind` and reports it with the files written.
fn colored_tree(t: &Tree, c: &Coloring, kind: ColoringKind, out: Option<&Path>) -> Result<Outcome> {
    let cert = verify_tree_coloring(t, c, kind)?;
    let files = write_outputs(out, &[("tree", write_tree(t)), ("col", write_coloring(c))])?;
    let summary = format!("{} vertices, {} colors, {kind} {}", t.n(), c.colors_used(), verdict_word(&cert));
    Ok(Outcome::new(
        json!({
            "n": t.n(),
            "colors_used": c.colors_used(),
            "coloring": c.colors(),
            "certificate": cert,
            "files": files,
        }),
        summary,
        cert.passed(),
    ))
}

fn verdict_word(cert: &Certificate) -> &'static str {
    if cert.passed() {
        "pass"
    } else {
        "fail"
    }
}

pub fn color_um_from_cf(hypergraph: &Path, coloring: &Path, uniform: Option<usize>, out: Option<&Path>) -> Result<Outcome> {
    let h = load_hypergraph(hypergraph)?;
    let cf = load_coloring(coloring)?;
    let um = match uniform {
        None => um_from_cf(&h, &cf)?,
        Some(l) => um_from_cf_uniform(&h, &cf, l)?,
    };
    let cert = is_valid(&h, &um, ColoringKind::UniqueMaximum)?;
    let files = write_outputs(out, &[("col", write_coloring(&um))])?;
    let summary = format!(
        "{} cf colors -> {} um colors, um {}",
        cf.colors_used(),
        um.colors_used(),
        verdict_word(&cert)
    );
    Ok(Outcome::new(
        json!({
            "cf_colors": cf.colors_used(),
            "colors_used": um.colors_used(),
            "coloring": um.colors(),
            "certificate": cert,
            "files": files,
        }),
        summary,
        cert.passed(),
    ))
}

pub fn color_psf(n: u32, k: u32, r: u32, out: Option<&Path>) -> Result<Outcome> {
    let f = psf_from_ksubsets(n, k)?;
    let (t, c) = cf_color_from_psf(&f, r)?;
    colored_tree(&t, &c, ColoringKind::ConflictFree, out)
}

pub fn color_b7(iterate: u32, out: Option<&Path>) -> Result<Outcome> {
    let (t, c) = cf_b7_iterated(iterate)?;
    colored_tree(&t, &c, ColoringKind::ConflictFree, out)
}

pub fn color_um_path(n: usize, out: Option<&Path>) -> Result<Outcome> {
    colored_tree(&Tree::path_graph(n)?, &um_color_path(n)?, ColoringKind::UniqueMaximum, out)
}

pub fn color_um_binary(d: u32, out: Option<&Path>) -> Result<Outcome> {
    colored_tree(&complete_binary(d)?, &um_color_complete_binary(d)?, ColoringKind::UniqueMaximum, out)
}

/// `k` defaults to the level certified from the tree itself.
pub fn extract(tree: &Path, k: Option<u32>, l: u32) -> Result<Outcome> {
    let t = load_tree(tree)?;
    let k = match k {
        Some(k) => k,
        None => certify_critical(&t)?,
    };
    let r = find_path_or_binary(&t, k, l)?;
    let cert = validate_extraction(&t, k, l, &r);
    let summary = match &r {
        cfum_core::critical::ExtractionResult::Path { vertices } => format!("path on {} vertices", vertices.len()),
        cfum_core::critical::ExtractionResult::Binary { witness } => format!("subdivision of B_{}", witness.levels),
    };
    Ok(Outcome::new(json!({"k": k, "l": l, "result": r, "certificate": cert}), summary, cert.passed()))
}

/// Without a witness file the tree must be `B_d` in heap layout and the
/// identity embedding is used. A found refutation is a failing certificate.
pub fn refute(tree: &Path, coloring: &Path, k: u32, witness: Option<&Path>) -> Result<Outcome> {
    let t = load_tree(tree)?;
    let c = load_coloring(coloring)?;
    let w: SubdivisionWitness = match witness {
        Some(p) => serde_json::from_str(&read(p)?)?,
        None => {
            let n = t.n();
            let d = (n + 1).trailing_zeros();
            if !(n + 1).is_power_of_two() || complete_binary(d)? != t {
                return Err(Error::Precondition(
                    "without --witness the tree must be a complete binary tree in heap layout".into(),
                ));
            }
            SubdivisionWitness::identity(d)
        }
    };
    let cert = binary_odd_refuter(&t, &w, &c, k)?;
    let summary = match &cert.edge {
        Some(p) => format!("all-even path on {} vertices", p.len()),
        None => "no refutation forced".to_string(),
    };
    Ok(Outcome::from_certificate(&cert, summary))
}

pub fn experiment(name: &str, seed: u64) -> Result<Outcome> {
    let r = experiments::run(name, seed)?;
    let failed = r.failed_claims().count();
    let summary = format!(
        "{name}: {} of {} claims hold",
        r.claims.len() - failed,
        r.claims.len()
    );
    let passed = r.passed();
    Ok(Outcome::new(serde_json::to_value(&r)?, summary, passed))
}
