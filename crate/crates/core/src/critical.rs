//! UM-critical trees.
//!
//! A `k`-critical tree has `2^(k-1)` vertices and splits along its central
//! edge (the unique edge leaving two halves of equal size) into two
//! `(k-1)`-critical trees; joining any two `(k-1)`-critical trees by any
//! edge gives a `k`-critical tree. Repeating the split `l` times yields the
//! level-`l` decomposition and its structure tree.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::coloring::ColoringKind;
use crate::error::{Error, Result};
use crate::solver::{chromatic_number_exact, um_tree_exact, SolveBudget, TreeUmSolver, UM_TREE_CAPACITY};
use crate::subdivision::{ensure_valid, SubdivisionWitness};
use crate::tree::{path_hypergraph, Tree};

/// How a `k`-critical tree is assembled: a single vertex, or two recipes
/// of equal level joined by an edge between the named vertices (indices
/// local to each half).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum CriticalRecipe {
    Vertex,
    Join {
        left: Box<CriticalRecipe>,
        right: Box<CriticalRecipe>,
        left_vertex: usize,
        right_vertex: usize,
    },
}

impl CriticalRecipe {
    /// Always joins vertex 0 of both halves.
    pub fn canonical(k: u32) -> Self {
        assert!(k >= 1);
        if k == 1 {
            return Self::Vertex;
        }
        let half = Self::canonical(k - 1);
        Self::Join {
            left: Box::new(half.clone()),
            right: Box::new(half),
            left_vertex: 0,
            right_vertex: 0,
        }
    }

    /// Uniformly random connection vertices at every join.
    pub fn random(rng: &mut impl Rng, k: u32) -> Self {
        assert!(k >= 1);
        if k == 1 {
            return Self::Vertex;
        }
        let size = 1usize << (k - 2);
        Self::Join {
            left: Box::new(Self::random(rng, k - 1)),
            right: Box::new(Self::random(rng, k - 1)),
            left_vertex: rng.gen_range(0..size),
            right_vertex: rng.gen_range(0..size),
        }
    }

    /// Two canonical 4-vertex paths joined at middle vertices: the smallest
    /// tree whose CF and UM numbers differ.
    pub fn gap_tree() -> Self {
        Self::canonical(4)
    }

    /// The level `k` of the trees this recipe builds.
    pub fn level(&self) -> Result<u32> {
        match self {
            Self::Vertex => Ok(1),
            Self::Join {
                left,
                right,
                left_vertex,
                right_vertex,
            } => {
                let (a, b) = (left.level()?, right.level()?);
                if a != b {
                    return Err(Error::Instance(format!("joined halves have levels {a} and {b}")));
                }
                let size = 1usize << (a - 1);
                if *left_vertex >= size || *right_vertex >= size {
                    return Err(Error::Instance(format!(
                        "join vertex ({left_vertex}, {right_vertex}) outside halves of {size} vertices"
                    )));
                }
                Ok(a + 1)
            }
        }
    }

    fn edges(&self, offset: usize, out: &mut Vec<(usize, usize)>) -> usize {
        match self {
            Self::Vertex => 1,
            Self::Join {
                left,
                right,
                left_vertex,
                right_vertex,
            } => {
                let a = left.edges(offset, out);
                let b = right.edges(offset + a, out);
                out.push((offset + left_vertex, offset + a + right_vertex));
                a + b
            }
        }
    }
}

/// The tree built by `recipe`, which must have level `k`. Left-half
/// vertices come first, and the joining edge follows the halves' edges.
pub fn build_critical(k: u32, recipe: &CriticalRecipe) -> Result<Tree> {
    if k == 0 {
        return Err(Error::Precondition("level must be at least 1".into()));
    }
    let level = recipe.level()?;
    if level != k {
        return Err(Error::Instance(format!("recipe has level {level}, expected {k}")));
    }
    if k > 26 {
        return Err(Error::Capacity(format!("2^{} vertices is too many", k - 1)));
    }
    let mut edges = Vec::new();
    let n = recipe.edges(0, &mut edges);
    Tree::new(n, edges, None)
}


/// Passes iff deleting any vertex lowers the UM number.
pub fn is_um_critical(t: &Tree) -> Result<Certificate> {
    let mut solver = TreeUmSolver::new(t)?;
    let all = solver.full_mask();
    let k = solver.chi(all);
    for v in 0..t.n() {
        if solver.chi(all & !(1 << v)) == k {
            return Ok(Certificate::fail(Some(ColoringKind::UniqueMaximum), "removable-vertex")
                .with_detail(format!("deleting vertex {v} keeps the UM number at {k}")));
        }
    }
    Ok(Certificate::pass(Some(ColoringKind::UniqueMaximum)).with_detail(format!("{k}-critical")))
}

/// Subtree sizes of the connected set `set`, rooted at its smallest vertex.
/// Returns the edges `(parent, child)` with the child-side size.
fn rooted_sizes(t: &Tree, set: &[usize], inside: &[bool]) -> Vec<(usize, usize, usize)> {
    let root = set[0];
    let mut order = vec![root];
    let mut parent = vec![usize::MAX; t.n()];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in t.neighbors(u) {
            if inside[w] && parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut size = vec![1usize; t.n()];
    let mut out = Vec::new();
    for &u in order.iter().skip(1).rev() {
        size[parent[u]] += size[u];
        out.push((parent[u], u, size[u]));
    }
    out
}

/// The edge splitting the connected set `set` into two halves of equal
/// size, with the halves (the one holding the smaller vertex first). At
/// most one such edge exists.
fn split_set(t: &Tree, set: &[usize]) -> Option<((usize, usize), Vec<usize>, Vec<usize>)> {
    let n = set.len();
    if n < 2 || n % 2 == 1 {
        return None;
    }
    let mut inside = vec![false; t.n()];
    for &v in set {
        inside[v] = true;
    }
    let &(p, c, _) = rooted_sizes(t, set, &inside).iter().find(|e| e.2 == n / 2)?;
    let mut keep = inside.clone();
    keep[c] = false;
    let side_p: Vec<usize> = t
        .components_within(&keep)
        .into_iter()
        .find(|comp| comp.binary_search(&p).is_ok())
        .expect("parent side is a component");
    let mut in_p = vec![false; t.n()];
    for &v in &side_p {
        in_p[v] = true;
    }
    let side_c: Vec<usize> = set.iter().copied().filter(|&v| !in_p[v]).collect();
    let edge = (p.min(c), p.max(c));
    let (a, b) = if side_p[0] < side_c[0] {
        (side_p, side_c)
    } else {
        (side_c, side_p)
    };
    Some((edge, a, b))
}

/// The central edge of a `k`-critical tree, with both halves confirmed
/// `(k-1)`-critical by exact search.
pub fn central_edge(t: &Tree, k: u32) -> Result<(usize, usize)> {
    if k < 2 || t.n() != 1usize << (k - 1) {
        return Err(Error::Precondition(format!(
            "a {k}-critical tree has 2^{} vertices, got {}",
            k.saturating_sub(1),
            t.n()
        )));
    }
    let all: Vec<usize> = (0..t.n()).collect();
    let (edge, a, b) = split_set(t, &all)
        .ok_or_else(|| Error::Precondition("no edge splits the tree into equal halves".into()))?;
    for half in [&a, &b] {
        let um = um_tree_exact(&t.induced(half)?)?.chi.exact().expect("tree search is exact");
        if um != k - 1 {
            return Err(Error::Precondition(format!(
                "half {half:?} has UM number {um}, expected {}",
                k - 1
            )));
        }
    }
    Ok(edge)
}

/// Repeated central-edge splitting of a critical vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Level of the decomposed tree.
    pub k: u32,
    /// `levels[i]` holds the `2^i` vertex sets of the `(k-i)`-critical
    /// subtrees, each sorted; the two halves of a set sit next to each other.
    pub levels: Vec<Vec<Vec<usize>>>,
    /// `central_edges[i][j]` splits `levels[i][j]`.
    pub central_edges: Vec<Vec<(usize, usize)>>,
}

impl Decomposition {
    /// Splits the `k`-critical set `set` of `t` down to depth `depth`
    /// (`depth <= k - 1`). Fails if some set has no equal split.
    pub fn of_set(t: &Tree, set: &[usize], k: u32, depth: u32) -> Result<Self> {
        if k == 0 || depth >= k {
            return Err(Error::Precondition(format!("depth {depth} needs 1 <= depth < k = {k}")));
        }
        if k > 63 || set.len() != 1usize << (k - 1) {
            return Err(Error::Precondition(format!(
                "a {k}-critical tree has 2^{} vertices, got {}",
                k - 1,
                set.len()
            )));
        }
        let mut first = set.to_vec();
        first.sort_unstable();
        let mut levels = vec![vec![first]];
        let mut central_edges = Vec::new();
        for _ in 0..depth {
            let mut next = Vec::new();
            let mut cuts = Vec::new();
            for s in levels.last().unwrap() {
                let (e, a, b) = split_set(t, s).ok_or_else(|| {
                    Error::Precondition(format!("set of {} vertices has no central edge", s.len()))
                })?;
                cuts.push(e);
                next.push(a);
                next.push(b);
            }
            central_edges.push(cuts);
            levels.push(next);
        }
        Ok(Self {
            k,
            levels,
            central_edges,
        })
    }

    pub fn new(t: &Tree, k: u32, depth: u32) -> Result<Self> {
        let all: Vec<usize> = (0..t.n()).collect();
        Self::of_set(t, &all, k, depth)
    }

    pub fn depth(&self) -> u32 {
        self.levels.len() as u32 - 1
    }
}

/// Part index of each vertex at the deepest level (`usize::MAX` outside).
fn part_index(n: usize, parts: &[Vec<usize>]) -> Vec<usize> {
    let mut owner = vec![usize::MAX; n];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            owner[v] = i;
        }
    }
    owner
}

fn quotient(t: &Tree, parts: &[Vec<usize>]) -> Result<Tree> {
    let owner = part_index(t.n(), parts);
    let mut edges: Vec<(usize, usize)> = t
        .edges()
        .iter()
        .map(|&(u, v)| (owner[u], owner[v]))
        .filter(|&(a, b)| a != b && a != usize::MAX && b != usize::MAX)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    edges.sort_unstable();
    Tree::new(parts.len(), edges, None)
}

/// The `l`-deep structure tree of a `k`-critical tree: one vertex per part
/// of the level-`l` decomposition (in decomposition order), adjacent when
/// the parts are joined by an edge of `t`. It has `2^l` vertices and is
/// `(l+1)`-critical; `l = k - 1` gives a copy of `t`.
pub fn structure_tree(t: &Tree, k: u32, l: u32) -> Result<Tree> {
    if l == 0 || l >= k {
        return Err(Error::Precondition(format!("structure depth must satisfy 1 <= l < k, got l={l}, k={k}")));
    }
    let d = Decomposition::new(t, k, l)?;
    quotient(t, d.levels.last().unwrap())
}

/// Largest bottom set whose criticality is confirmed by exact search.
const CERTIFY_LEAF: usize = 32;

/// Confirms that `t` is `k`-critical for some `k` and returns it: every set
/// of the full decomposition has a central edge, and the bottom sets (at
/// most 32 vertices) have the UM number their size demands.
pub fn certify_critical(t: &Tree) -> Result<u32> {
    let n = t.n();
    if !n.is_power_of_two() {
        return Err(Error::Precondition(format!("{n} vertices is not a power of two")));
    }
    let k = n.trailing_zeros() + 1;
    let all: Vec<usize> = (0..n).collect();
    let depth = (n / CERTIFY_LEAF.min(n)).trailing_zeros();
    let bottom = if depth == 0 {
        vec![all]
    } else {
        Decomposition::of_set(t, &all, k, depth)?.levels.pop().unwrap()
    };
    let want = k - depth;
    for set in &bottom {
        let um = um_tree_exact(&t.induced(set)?)?.chi.exact().expect("tree search is exact");
        if um != want {
            return Err(Error::Precondition(format!(
                "subtree {set:?} has UM number {um}, a {want}-critical tree is needed"
            )));
        }
    }
    Ok(k)
}

/// A `B_3` subdivision on the first pair `u < v` of non-adjacent vertices
/// of degree at least 3, rooted next to `u` on their path.
pub fn find_b3_subdivision(t: &Tree) -> Option<SubdivisionWitness> {
    let high: Vec<usize> = (0..t.n()).filter(|&v| t.degree(v) >= 3).collect();
    let (u, v) = high
        .iter()
        .flat_map(|&u| high.iter().map(move |&v| (u, v)))
        .find(|&(u, v)| u < v && !t.are_adjacent(u, v))?;
    let path = t.path(u, v);
    let root = path[1];
    let arms = |x: usize, avoid: usize| -> Vec<usize> {
        t.neighbors(x).iter().copied().filter(|&w| w != avoid).take(2).collect()
    };
    let (lu, lv) = (arms(u, path[1]), arms(v, path[path.len() - 2]));
    let w = SubdivisionWitness {
        levels: 3,
        branch_map: vec![root, u, v, lu[0], lu[1], lv[0], lv[1]],
        paths: vec![
            t.path(root, u),
            t.path(root, v),
            vec![u, lu[0]],
            vec![u, lu[1]],
            vec![v, lv[0]],
            vec![v, lv[1]],
        ],
    };
    debug_assert!(crate::subdivision::validate_subdivision(t, &w).passed());
    Some(w)
}

/// Either a path with `2^l` vertices or a subdivision of `B_m`,
/// `m = ceil((k+l+3)/(l+2))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum ExtractionResult {
    Path { vertices: Vec<usize> },
    Binary { witness: SubdivisionWitness },
}

/// `ceil((k+l+3)/(l+2))`.
pub fn binary_depth(k: u32, l: u32) -> u32 {
    (k + l + 3).div_ceil(l + 2)
}

fn is_host_path(t: &Tree, p: &[usize]) -> bool {
    let mut seen = vec![false; t.n()];
    p.iter().all(|&v| v < t.n() && !std::mem::replace(&mut seen[v], true))
        && p.windows(2).all(|w| t.are_adjacent(w[0], w[1]))
}

/// Checks an extraction result against the promised sizes.
pub fn validate_extraction(t: &Tree, k: u32, l: u32, r: &ExtractionResult) -> Certificate {
    match r {
        ExtractionResult::Path { vertices } => {
            if vertices.len() != 1 << l {
                Certificate::fail(None, "wrong-path-length")
                    .with_detail(format!("{} vertices, expected {}", vertices.len(), 1 << l))
            } else if !is_host_path(t, vertices) {
                Certificate::fail(None, "not-a-host-path")
            } else {
                Certificate::pass(None)
            }
        }
        ExtractionResult::Binary { witness } => {
            let m = binary_depth(k, l);
            if witness.levels != m {
                Certificate::fail(None, "wrong-depth")
                    .with_detail(format!("B_{} found, B_{m} expected", witness.levels))
            } else {
                crate::subdivision::validate_subdivision(t, witness)
            }
        }
    }
}

enum Local {
    Path(Vec<usize>),
    B3(SubdivisionWitness),
}

/// Farthest vertex from `src` inside the connected set marked by `inside`.
fn farthest_within(t: &Tree, src: usize, inside: &[bool]) -> usize {
    let mut dist = vec![usize::MAX; t.n()];
    dist[src] = 0;
    let mut queue = std::collections::VecDeque::from([src]);
    let mut best = src;
    while let Some(u) = queue.pop_front() {
        if dist[u] > dist[best] {
            best = u;
        }
        for &w in t.neighbors(u) {
            if inside[w] && dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    best
}

/// The case analysis for an `(l+2)`-critical tree `c`: a path with `2^l`
/// vertices or a `B_3` subdivision.
fn claim(c: &Tree, l: u32) -> Result<Local> {
    let want = 1usize << l;
    if c.n() != 2 * want {
        return Err(Error::Internal(format!("claim expects {} vertices, got {}", 2 * want, c.n())));
    }
    if let Some(w) = find_b3_subdivision(c) {
        return Ok(Local::B3(w));
    }
    let high: Vec<usize> = (0..c.n()).filter(|&v| c.degree(v) >= 3).collect();
    let path = match high[..] {
        [] => {
            let mut p = c.diameter_path();
            if p[0] > p[p.len() - 1] {
                p.reverse();
            }
            p
        }
        _ => {
            let all: Vec<usize> = (0..c.n()).collect();
            let ((a, b), h1, h2) = split_set(c, &all)
                .ok_or_else(|| Error::Internal("critical tree without a central edge".into()))?;
            let mut in_h1 = vec![false; c.n()];
            for &v in &h1 {
                in_h1[v] = true;
            }
            let touches = |half_marker: bool| high.iter().any(|&h| in_h1[h] == half_marker);
            if !touches(true) || !touches(false) {
                // one half has no high-degree vertex, so it is a path
                let free = if touches(true) { &h2 } else { &h1 };
                let t = c.induced(free)?;
                t.diameter_path().into_iter().map(|i| free[i]).collect()
            } else {
                // the central edge joins the two high-degree vertices; extend
                // a longest path in each half to its endpoint of the edge
                let in_h2: Vec<bool> = in_h1.iter().map(|x| !x).collect();
                let (ea, eb) = if in_h1[a] { (a, b) } else { (b, a) };
                let fa = farthest_within(c, ea, &in_h1);
                let fb = farthest_within(c, eb, &in_h2);
                c.path(fa, fb)
            }
        }
    };
    if path.len() < want {
        return Err(Error::Internal(format!(
            "case analysis produced a path of {} vertices, {want} needed",
            path.len()
        )));
    }
    Ok(Local::Path(path[..want].to_vec()))
}

/// Runs the case analysis on the vertex set `set` of `t` and maps back.
fn claim_on_set(t: &Tree, set: &[usize], l: u32) -> Result<Local> {
    let local = t.induced(set)?;
    Ok(match claim(&local, l)? {
        Local::Path(p) => Local::Path(p.into_iter().map(|i| set[i]).collect()),
        Local::B3(w) => Local::B3(SubdivisionWitness {
            levels: w.levels,
            branch_map: w.branch_map.iter().map(|&i| set[i]).collect(),
            paths: w.paths.iter().map(|p| p.iter().map(|&i| set[i]).collect()).collect(),
        }),
    })
}

/// Finds a path with `2^l` vertices or a subdivision of `B_m`,
/// `m = ceil((k+l+3)/(l+2))`, in a `k`-critical tree, following the
/// induction on `k`.
pub fn find_path_or_binary(t: &Tree, k: u32, l: u32) -> Result<ExtractionResult> {
    if k < 3 || l == 0 {
        return Err(Error::Precondition(format!("need k >= 3 and l >= 1, got k={k}, l={l}")));
    }
    if l > 20 {
        return Err(Error::Precondition(format!("l = {l} is out of range")));
    }
    let found = certify_critical(t)?;
    if found != k {
        return Err(Error::Precondition(format!("tree is {found}-critical, not {k}-critical")));
    }
    let all: Vec<usize> = (0..t.n()).collect();
    let r = extract(t, &all, k, l)?;
    let cert = validate_extraction(t, k, l, &r);
    if !cert.passed() {
        return Err(Error::Internal(format!(
            "extraction produced an invalid witness ({}: {})",
            cert.reason.unwrap_or_default(),
            cert.detail.unwrap_or_default()
        )));
    }
    Ok(r)
}

fn extract(t: &Tree, set: &[usize], k: u32, l: u32) -> Result<ExtractionResult> {
    let m = binary_depth(k, l);
    if k <= l + 1 {
        // m = 2: any vertex with two neighbours in the set gives B_2 = P_3
        let mut inside = vec![false; t.n()];
        for &v in set {
            inside[v] = true;
        }
        let (root, kids) = set
            .iter()
            .map(|&v| (v, t.neighbors(v).iter().copied().filter(|&w| inside[w]).collect::<Vec<_>>()))
            .find(|(_, nb)| nb.len() >= 2)
            .ok_or_else(|| Error::Internal("no vertex has two neighbours inside a critical set".into()))?;
        let w = SubdivisionWitness::join(
            root,
            vec![root, kids[0]],
            &SubdivisionWitness::single(kids[0]),
            vec![root, kids[1]],
            &SubdivisionWitness::single(kids[1]),
        );
        return Ok(ExtractionResult::Binary { witness: w.truncated(m.min(2)) });
    }
    if k <= 2 * l + 3 {
        let sub = Decomposition::of_set(t, set, k, k - l - 2)?;
        let first = &sub.levels.last().unwrap()[0];
        return Ok(match claim_on_set(t, first, l)? {
            Local::Path(p) => ExtractionResult::Path { vertices: p },
            Local::B3(w) => ExtractionResult::Binary { witness: w.truncated(m.min(3)) },
        });
    }
    // structure tree of depth l + 2; its first half is (l+2)-critical
    let d = Decomposition::of_set(t, set, k, l + 2)?;
    let parts = d.levels.last().unwrap();
    let half: Vec<usize> = (0..parts.len() / 2).collect();
    let s_half = quotient(t, &parts[..half.len()])?;
    match claim(&s_half, l)? {
        Local::Path(ps) => {
            let (u, v) = (parts[ps[0]][0], parts[*ps.last().unwrap()][0]);
            let p = t.path(u, v);
            if p.len() < 1 << l {
                return Err(Error::Internal("lifted structure path is too short".into()));
            }
            Ok(ExtractionResult::Path { vertices: p[..1 << l].to_vec() })
        }
        Local::B3(sw) => {
            let leaves = &sw.branch_map[3..7];
            let mut subs = Vec::with_capacity(4);
            for &leaf in leaves {
                match extract(t, &parts[leaf], k - l - 2, l)? {
                    ExtractionResult::Path { vertices } => return Ok(ExtractionResult::Path { vertices }),
                    ExtractionResult::Binary { witness } => subs.push(witness),
                }
            }
            splice(t, &sw, parts, &subs, m).map(|witness| ExtractionResult::Binary { witness })
        }
    }
}

/// Builds `B_m` from a `B_3` of the structure tree whose four leaf parts
/// carry `B_{m-1}` witnesses. Level-2 branch vertices are medians of the
/// sub-witness roots; each leaf contributes the child sub-witness not
/// entered first by the path arriving from its level-2 branch vertex.
fn splice(
    t: &Tree,
    sw: &SubdivisionWitness,
    parts: &[Vec<usize>],
    subs: &[SubdivisionWitness],
    m: u32,
) -> Result<SubdivisionWitness> {
    if subs.iter().any(|s| s.levels != m - 1) {
        return Err(Error::Internal(format!("sub-witnesses must have {} levels", m - 1)));
    }
    let sigma: Vec<usize> = subs.iter().map(SubdivisionWitness::root).collect();
    let x = t.median(sigma[0], sigma[1], sigma[2]);
    let y = t.median(sigma[2], sigma[3], sigma[0]);
    let root_part = &parts[sw.branch_map[0]];
    let xy = t.path(x, y);
    let r = *xy
        .iter()
        .find(|v| root_part.binary_search(v).is_ok())
        .ok_or_else(|| Error::Internal("path between level-2 branch vertices misses the root part".into()))?;

    let pick = |from: usize, w: &SubdivisionWitness| -> SubdivisionWitness {
        let left_side = {
            let mut s = w.child_subwitness(0).vertex_set();
            s.extend(&w.path_to(1)[1..]);
            s.sort_unstable();
            s
        };
        let mut marks = w.vertex_set();
        marks.sort_unstable();
        let first_hit = t
            .path(from, w.root())
            .into_iter()
            .find(|v| marks.binary_search(v).is_ok())
            .expect("path ends at the witness root");
        // entering through the left arm leaves the right child free
        let entered_left = first_hit != w.root() && left_side.binary_search(&first_hit).is_ok();
        let side = usize::from(entered_left);
        w.child_subwitness(side)
    };
    let chosen: Vec<SubdivisionWitness> = [(x, 0), (x, 1), (y, 2), (y, 3)]
        .iter()
        .map(|&(from, i)| pick(from, &subs[i]))
        .collect();
    let lower = |b: usize, i: usize, j: usize| {
        SubdivisionWitness::join(
            b,
            t.path(b, chosen[i].root()),
            &chosen[i],
            t.path(b, chosen[j].root()),
            &chosen[j],
        )
    };
    let wx = lower(x, 0, 1);
    let wy = lower(y, 2, 3);
    let w = SubdivisionWitness::join(r, t.path(r, x), &wx, t.path(r, y), &wy);
    ensure_valid(t, &w, "spliced subdivision")?;
    Ok(w)
}

/// UM and odd numbers of a tree, with the cube root of UM for comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OddUmReport {
    pub um: u32,
    pub odd: u32,
    pub um_cbrt: f64,
}

pub fn odd_vs_um_consistency(t: &Tree, budget: SolveBudget) -> Result<OddUmReport> {
    if t.n() > UM_TREE_CAPACITY {
        return Err(Error::Capacity(format!("{} vertices exceeds {UM_TREE_CAPACITY}", t.n())));
    }
    let um = um_tree_exact(t)?.chi.exact().expect("tree search is exact");
    let r = chromatic_number_exact(&path_hypergraph(t), ColoringKind::Odd, budget);
    let odd = r
        .chi
        .exact()
        .ok_or_else(|| Error::Capacity(format!("odd search ran out of budget: {:?}", r.chi)))?;
    Ok(OddUmReport {
        um,
        odd,
        um_cbrt: (um as f64).cbrt(),
    })
}

/// All `k`-critical trees up to isomorphism, by joining every pair of
/// `(k-1)`-critical classes at every vertex pair.
pub fn critical_trees_up_to_iso(k: u32) -> Result<Vec<Tree>> {
    if k == 0 || k > 6 {
        return Err(Error::Precondition(format!("enumeration supports 1 <= k <= 6, got {k}")));
    }
    let mut classes = vec![Tree::path_graph(1)?];
    for _ in 2..=k {
        let mut next: Vec<Tree> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i..] {
                for u in 0..a.n() {
                    for v in 0..b.n() {
                        let mut edges = a.edges().to_vec();
                        edges.extend(b.edges().iter().map(|&(x, y)| (x + a.n(), y + a.n())));
                        edges.push((u, a.n() + v));
                        let joined = Tree::new(a.n() + b.n(), edges, None)?;
                        if seen.insert(joined.canonical_form()) {
                            next.push(joined);
                        }
                    }
                }
            }
        }
        classes = next;
    }
    Ok(classes)
}
