//! Named reproduction runs. Each experiment recomputes its claims from
//! scratch, checks every emitted coloring with a verifier, and records the
//! expected and computed values side by side.

use std::time::Instant;

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use cfum_core::critical::{
    build_critical, critical_trees_up_to_iso, find_path_or_binary, is_um_critical, structure_tree,
    validate_extraction, CriticalRecipe, ExtractionResult,
};
use cfum_core::psf::{
    b7_family, binary_odd_refuter, cf_b7_explicit, cf_b7_iterated, cf_color_from_psf,
    mono_subdivision_vector, optimize_ratio,
};
use cfum_core::random::{random_coloring, random_hypergraph, random_uniform_hypergraph, rng};
use cfum_core::solver::{chromatic_number_exact, exists_coloring_exhaustive, um_tree_exact, SolveBudget};
use cfum_core::subdivision::validate_subdivision;
use cfum_core::transfer::{
    check_transfer, extremal_nonuniform, extremal_uniform, general_bound, um_from_cf, um_from_cf_uniform,
    uniform_bound,
};
use cfum_core::tree::{
    ceil_log2_plus_one, complete_binary, odd_lower_bound_path, path_hypergraph, tree_path, um_color_path,
    verify_tree_coloring,
};
use cfum_core::{
    is_valid, parity_vector, Color, Coloring, ColoringKind, Error, Hypergraph, Result, SubdivisionWitness, Tree,
    Verdict,
};

pub const SCHEMA: &str = "cfum.experiment/1";

pub const NAMES: [&str; 13] = [
    "b7",
    "b12-iterated",
    "path-table",
    "gap-tree-8",
    "genhyp-tightness",
    "genhyp-random",
    "uniform-12-2-3",
    "critical-trees",
    "extraction",
    "vector-lemma",
    "sqrt-refuter",
    "ratio",
    "hierarchy",
];

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub statement: String,
    pub expected: Value,
    pub computed: Value,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub schema: &'static str,
    pub name: String,
    pub seed: u64,
    pub verdict: Verdict,
    pub claims: Vec<Claim>,
    pub stats: Value,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed_claims(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.verdict == Verdict::Fail)
    }
}

#[derive(Default)]
struct Claims {
    list: Vec<Claim>,
    stats: serde_json::Map<String, Value>,
}

impl Claims {
    fn check(&mut self, statement: impl Into<String>, expected: impl Serialize, computed: impl Serialize, ok: bool) {
        self.list.push(Claim {
            statement: statement.into(),
            expected: json!(expected),
            computed: json!(computed),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        });
    }

    fn equal<T: Serialize + PartialEq>(&mut self, statement: impl Into<String>, expected: T, computed: T) {
        let ok = expected == computed;
        self.check(statement, expected, computed, ok);
    }

    fn at_most(&mut self, statement: impl Into<String>, bound: usize, computed: usize) {
        self.check(statement, format!("<= {bound}"), computed, computed <= bound);
    }

    fn holds(&mut self, statement: impl Into<String>, ok: bool) {
        self.check(statement, true, ok, ok);
    }

    fn close(&mut self, statement: impl Into<String>, expected: f64, computed: f64, tol: f64) {
        self.check(statement, expected, computed, (expected - computed).abs() <= tol);
    }

    fn stat(&mut self, key: &str, value: impl Serialize) {
        self.stats.insert(key.into(), json!(value));
    }
}

/// Runs a named experiment. Unknown names are a precondition error.
pub fn run(name: &str, seed: u64) -> Result<ExperimentReport> {
    let start = Instant::now();
    let mut c = Claims::default();
    match name {
        "b7" => b7(&mut c)?,
        "b12-iterated" => b12_iterated(&mut c)?,
        "path-table" => path_table(&mut c)?,
        "gap-tree-8" => gap_tree_8(&mut c)?,
        "genhyp-tightness" => genhyp_tightness(&mut c)?,
        "genhyp-random" => genhyp_random(&mut c, seed)?,
        "uniform-12-2-3" => uniform_12_2_3(&mut c, seed)?,
        "critical-trees" => critical_trees(&mut c)?,
        "extraction" => extraction(&mut c, seed)?,
        "vector-lemma" => vector_lemma(&mut c, seed)?,
        "sqrt-refuter" => sqrt_refuter(&mut c, seed)?,
        "ratio" => ratio(&mut c),
        "hierarchy" => hierarchy(&mut c, seed)?,
        _ => {
            return Err(Error::Precondition(format!(
                "unknown experiment {name:?}; known: {}",
                NAMES.join(", ")
            )))
        }
    }
    c.stat("elapsed_ms", start.elapsed().as_secs_f64() * 1e3);
    let verdict = if c.list.iter().all(|x| x.verdict == Verdict::Pass) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(ExperimentReport {
        schema: SCHEMA,
        name: name.into(),
        seed,
        verdict,
        claims: c.list,
        stats: Value::Object(c.stats),
    })
}

fn passes(t: &Tree, col: &Coloring, kind: ColoringKind) -> Result<bool> {
    Ok(verify_tree_coloring(t, col, kind)?.passed())
}

fn path_count(t: &Tree) -> usize {
    t.n() * (t.n() + 1) / 2
}

fn exact(h: &Hypergraph, kind: ColoringKind) -> Result<(u32, Coloring)> {
    let r = chromatic_number_exact(h, kind, SolveBudget::default());
    match (r.chi.exact(), r.witness) {
        (Some(chi), Some(w)) => Ok((chi, w)),
        _ => Err(Error::Capacity(format!("exact {kind} search ran out of budget: {:?}", r.chi))),
    }
}

fn b7(c: &mut Claims) -> Result<()> {
    let (t, col) = cf_b7_explicit();
    c.equal("B7 explicit coloring uses 6 colors", 6, col.colors_used());
    c.holds("B7 explicit coloring is conflict-free", passes(&t, &col, ColoringKind::ConflictFree)?);
    c.equal("paths checked", path_count(&t), path_hypergraph(&t).edge_count());
    c.holds("every leaf has color 2", col.colors()[63..].iter().all(|&x| x == 2));
    c.holds("every leaf parent has color 1", col.colors()[31..63].iter().all(|&x| x == 1));
    c.holds("B7 coloring is not unique-maximum", !passes(&t, &col, ColoringKind::UniqueMaximum)?);
    Ok(())
}

fn b12_iterated(c: &mut Claims) -> Result<()> {
    let (t, col) = cf_b7_iterated(2)?;
    c.equal("vertices", 4095, t.n());
    c.at_most("colors used", 10, col.colors_used());
    c.holds("iterated coloring is conflict-free", passes(&t, &col, ColoringKind::ConflictFree)?);
    c.stat("paths", path_count(&t));
    let (_, via_family) = cf_color_from_psf(&b7_family(), 2)?;
    c.holds("grafting and the family construction agree", via_family == col);
    Ok(())
}

fn path_table(c: &mut Claims) -> Result<()> {
    let mut rows = Vec::new();
    for n in 1..=15 {
        let p = Tree::path_graph(n)?;
        let col = um_color_path(n)?;
        let k = ceil_log2_plus_one(n);
        let um_ok = passes(&p, &col, ColoringKind::UniqueMaximum)? && col.colors_used() == k as usize;
        let lower_ok = !odd_lower_bound_path(n, k - 1).passed() && odd_lower_bound_path(n, k).passed();
        c.holds(format!("P{n}: um = cf = odd = {k}"), um_ok && lower_ok);
        rows.push(json!({"n": n, "value": k}));
    }
    // the exact solvers agree on the short paths
    for n in 1..=7 {
        let h = path_hypergraph(&Tree::path_graph(n)?);
        let k = ceil_log2_plus_one(n);
        let got: Vec<u32> = [ColoringKind::UniqueMaximum, ColoringKind::ConflictFree, ColoringKind::Odd]
            .into_iter()
            .map(|kind| exact(&h, kind).map(|r| r.0))
            .collect::<Result<_>>()?;
        c.equal(format!("P{n}: exact (um, cf, odd)"), vec![k; 3], got);
    }
    c.stat("table", rows);
    Ok(())
}

fn gap_tree_8(c: &mut Claims) -> Result<()> {
    let t = build_critical(4, &CriticalRecipe::gap_tree())?;
    let two_p4 = Tree::new(8, vec![(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7), (1, 5)], None)?;
    c.holds("gap tree is two P4s joined at second vertices", t.is_isomorphic(&two_p4));
    let um = um_tree_exact(&t)?;
    c.equal("um", Some(4), um.chi.exact());
    c.holds("gap tree is 4-critical", is_um_critical(&t)?.passed());
    let h = path_hypergraph(&t);
    let two = exists_coloring_exhaustive(&h, ColoringKind::ConflictFree, 2)?;
    let three = exists_coloring_exhaustive(&h, ColoringKind::ConflictFree, 3)?;
    c.holds("no conflict-free 2-coloring among all 2^8", two.is_none());
    c.holds("a conflict-free 3-coloring exists among 3^8", three.is_some());
    let cf = exact(&h, ColoringKind::ConflictFree)?.0;
    c.equal("cf", 3, cf);
    c.equal("um - cf", Some(1), um.chi.exact().map(|u| i64::from(u) - i64::from(cf)));
    Ok(())
}

fn genhyp_tightness(c: &mut Claims) -> Result<()> {
    for (n, k) in [(4, 2), (6, 2), (6, 3)] {
        let inst = extremal_nonuniform(n, k)?;
        let parts = inst.part_coloring();
        c.holds(format!("({n},{k}) part coloring is conflict-free"), is_valid(&inst.base, &parts, ColoringKind::ConflictFree)?.passed());
        let (cf, _) = exact(&inst.base, ColoringKind::ConflictFree)?;
        let (um, _) = exact(&inst.base, ColoringKind::UniqueMaximum)?;
        c.equal(format!("({n},{k}) cf"), k as u32, cf);
        c.equal(format!("({n},{k}) um"), general_bound(n, k) as u32, um);
        let t = um_from_cf(&inst.base, &parts)?;
        c.holds(
            format!("({n},{k}) transferred coloring meets the bound"),
            check_transfer(&inst.base, &t, general_bound(n, k))?.passed(),
        );
    }
    Ok(())
}

fn genhyp_random(c: &mut Claims, seed: u64) -> Result<()> {
    let mut r = rng(seed);
    let (mut violations, mut tight) = (0, 0);
    for _ in 0..200 {
        let n = r.gen_range(1..=10);
        let m = r.gen_range(1..=12);
        let h = random_hypergraph(&mut r, n, m, n);
        let (k, cf) = exact(&h, ColoringKind::ConflictFree)?;
        let um = um_from_cf(&h, &cf)?;
        let bound = general_bound(n, k as usize);
        if !check_transfer(&h, &um, bound)?.passed() {
            violations += 1;
        }
        if um.colors_used() == bound {
            tight += 1;
        }
    }
    c.equal("instances violating the transfer bound", 0, violations);
    c.stat("instances", 200);
    c.stat("meeting_bound_exactly", tight);
    Ok(())
}

fn uniform_12_2_3(c: &mut Claims, seed: u64) -> Result<()> {
    let (n, k, l) = (12, 2, 3);
    let inst = extremal_uniform(n, k, l)?;
    let parts = inst.part_coloring();
    c.holds("part coloring is conflict-free", is_valid(&inst.base, &parts, ColoringKind::ConflictFree)?.passed());
    let one = Coloring::new(vec![1; n], 1)?;
    c.holds("one color is not conflict-free", !is_valid(&inst.base, &one, ColoringKind::ConflictFree)?.passed());
    let um = um_from_cf_uniform(&inst.base, &parts, l)?;
    c.holds("transferred coloring is unique-maximum", is_valid(&inst.base, &um, ColoringKind::UniqueMaximum)?.passed());
    c.equal("transferred coloring colors", uniform_bound(n, k, l), um.colors_used());
    let budget = SolveBudget::default().with_time_limit(std::time::Duration::from_secs(120));
    let exact_um = chromatic_number_exact(&inst.base, ColoringKind::UniqueMaximum, budget);
    c.check(
        "um lower bound from budgeted search",
        format!(">= {}", uniform_bound(n, k, l)),
        exact_um.chi,
        exact_um.chi.lower_bound() as usize >= uniform_bound(n, k, l),
    );
    c.stat("um_search", exact_um.to_json());

    // the refinement on random 3-uniform instances
    let mut r = rng(seed);
    let mut bad = 0;
    for _ in 0..100 {
        let n = r.gen_range(3..=10);
        let m = r.gen_range(1..=10);
        let h = random_uniform_hypergraph(&mut r, n, m, 3);
        let (_, cf) = exact(&h, ColoringKind::ConflictFree)?;
        let out = um_from_cf_uniform(&h, &cf, 3)?;
        let (um, _) = exact(&h, ColoringKind::UniqueMaximum)?;
        let sizes = class_sizes(&cf);
        let predicted = n - sizes[0] - sizes.get(1).map_or(0, |&s| s.min(l - 2)) + 1 + usize::from(sizes.len() > 1);
        let ok = is_valid(&h, &out, ColoringKind::UniqueMaximum)?.passed()
            && out.colors_used() == predicted
            && out.colors_used() >= um as usize;
        if !ok {
            bad += 1;
        }
    }
    c.equal("random 3-uniform instances with a bad refinement", 0, bad);
    Ok(())
}

fn class_sizes(col: &Coloring) -> Vec<usize> {
    let mut sizes = vec![0; col.palette() as usize];
    for &x in col.colors() {
        sizes[x as usize - 1] += 1;
    }
    sizes.retain(|&s| s > 0);
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

fn critical_trees(c: &mut Claims) -> Result<()> {
    for k in 1..=5 {
        let t = build_critical(k, &CriticalRecipe::canonical(k))?;
        c.equal(format!("k={k} vertices"), 1usize << (k - 1), t.n());
        c.equal(format!("k={k} um"), Some(k), um_tree_exact(&t)?.chi.exact());
        c.holds(format!("k={k} is critical"), is_um_critical(&t)?.passed());
        if k >= 2 {
            let s1 = structure_tree(&t, k, 1)?;
            c.holds(format!("k={k} 1-deep structure tree is an edge"), s1.is_isomorphic(&Tree::path_graph(2)?));
        }
        if k >= 3 {
            let s2 = structure_tree(&t, k, 2)?;
            c.holds(format!("k={k} 2-deep structure tree is P4"), s2.is_isomorphic(&Tree::path_graph(4)?));
        }
    }
    let counts: Vec<usize> = (1..=5)
        .map(|k| critical_trees_up_to_iso(k).map(|v| v.len()))
        .collect::<Result<_>>()?;
    c.stat("critical_trees_up_to_isomorphism", counts);
    Ok(())
}

fn extraction(c: &mut Claims, seed: u64) -> Result<()> {
    let mut r = rng(seed);
    let (mut failures, mut paths, mut binaries) = (0, 0, 0);
    for i in 0..50u32 {
        let k = 3 + i % 3;
        let recipe = CriticalRecipe::random(&mut r, k);
        let t = build_critical(k, &recipe)?;
        for l in 1..=2 {
            match find_path_or_binary(&t, k, l) {
                Ok(res) if validate_extraction(&t, k, l, &res).passed() => match res {
                    ExtractionResult::Path { .. } => paths += 1,
                    ExtractionResult::Binary { .. } => binaries += 1,
                },
                _ => failures += 1,
            }
        }
    }
    c.equal("extraction failures", 0, failures);
    c.stat("paths", paths);
    c.stat("binary", binaries);
    Ok(())
}

/// Largest `a` such that some subdivision of `B_a` in `t` has all branch
/// vertices colored `color`, by trying every vertex as the image of the root.
pub fn max_mono_depth(t: &Tree, col: &Coloring, color: Color) -> u32 {
    // down(v, from): deepest such subdivision rooted at v inside the side of v away from `from`
    // reach(u, p): max of down(w, .) over w in the side of u away from p
    fn down(t: &Tree, col: &Coloring, color: Color, v: usize, from: usize) -> u32 {
        if col.color(v) != color {
            return 0;
        }
        let mut best = [0u32; 2];
        for &u in t.neighbors(v) {
            if u != from {
                let x = reach(t, col, color, u, v);
                if x > best[0] {
                    best = [x, best[0]];
                } else if x > best[1] {
                    best[1] = x;
                }
            }
        }
        1 + best[1]
    }
    fn reach(t: &Tree, col: &Coloring, color: Color, u: usize, p: usize) -> u32 {
        let below = t.neighbors(u).iter().filter(|&&w| w != p).map(|&w| reach(t, col, color, w, u));
        below.fold(down(t, col, color, u, p), u32::max)
    }
    (0..t.n()).map(|v| down(t, col, color, v, usize::MAX)).max().unwrap_or(0)
}

fn vector_lemma(c: &mut Claims, seed: u64) -> Result<()> {
    let mut r = rng(seed);
    let mut bad = 0;
    for _ in 0..100 {
        let d = r.gen_range(1..=4);
        let k: Color = r.gen_range(1..=3);
        let t = complete_binary(d)?;
        let col = random_coloring(&mut r, t.n(), k);
        let mv = mono_subdivision_vector(&t, &SubdivisionWitness::identity(d), &col, k)?;
        let mut ok = mv.a.iter().sum::<u32>() == d;
        for (i, (&a, w)) in mv.a.iter().zip(&mv.witnesses).enumerate() {
            let color = i as Color + 1;
            ok &= a <= max_mono_depth(&t, &col, color);
            if let Some(w) = w {
                ok &= validate_subdivision(&t, w).passed()
                    && w.levels == a
                    && w.branch_map.iter().all(|&v| col.color(v) == color);
            }
        }
        if !ok {
            bad += 1;
        }
    }
    c.equal("colorings where the vector breaks an invariant or beats the oracle", 0, bad);
    Ok(())
}

fn sqrt_refuter(c: &mut Claims, seed: u64) -> Result<()> {
    let mut r = rng(seed);
    let t = complete_binary(9)?;
    let mut bad = 0;
    for _ in 0..100 {
        let col = random_coloring(&mut r, t.n(), 2);
        let cert = binary_odd_refuter(&t, &SubdivisionWitness::identity(9), &col, 2)?;
        let ok = match (&cert.verdict, &cert.edge, cert.endpoints) {
            (Verdict::Fail, Some(path), Some([a, b])) => {
                let mut host_path = tree_path(&t, a, b)?;
                host_path.sort_unstable();
                parity_vector(&col, path)?.is_zero() && &host_path == path
            }
            _ => false,
        };
        if !ok {
            bad += 1;
        }
    }
    c.equal("2-colorings of B9 without an all-even path", 0, bad);
    Ok(())
}

fn ratio(c: &mut Claims) {
    let r = optimize_ratio();
    c.close("x*", 2.0 / 3.0, r.x_star, 1e-6);
    c.close("max of x + H(x)", 3f64.log2(), r.value, 1e-9);
    c.close("grid search maximum", r.value, r.grid_value, 1e-9);
    c.close("grid search argmax", r.x_star, r.grid_x, 1e-6);
    c.holds("x = 1/2 gives 1.5", (0.5 + cfum_core::psf::entropy2(0.5) - 1.5).abs() < 1e-15);
}

fn hierarchy(c: &mut Claims, seed: u64) -> Result<()> {
    let mut r = rng(seed);
    let mut broken = 0;
    let mut histogram = std::collections::BTreeMap::<String, usize>::new();
    for _ in 0..500 {
        let n = r.gen_range(1..=8);
        let m = r.gen_range(1..=10);
        let h = random_hypergraph(&mut r, n, m, n);
        let k = r.gen_range(1..=4);
        let col = random_coloring(&mut r, n, k);
        let v = |kind| is_valid(&h, &col, kind).map(|x| x.passed());
        let (rb, um, cf, odd, nm) = (
            v(ColoringKind::Rainbow)?,
            v(ColoringKind::UniqueMaximum)?,
            v(ColoringKind::ConflictFree)?,
            v(ColoringKind::Odd)?,
            v(ColoringKind::NonMonochromatic)?,
        );
        if (rb && !um) || (um && !cf) || (cf && !(odd && nm)) {
            broken += 1;
        }
        let key: String = [rb, um, cf, odd, nm].iter().map(|&b| if b { '1' } else { '0' }).collect();
        *histogram.entry(key).or_default() += 1;
    }
    c.equal("pairs breaking rainbow => um => cf => odd and nm", 0, broken);
    c.stat("verdicts_rb_um_cf_odd_nm", histogram);
    Ok(())
}
