//! Exact small-n ground truth: the Turán oracle ex(n, sK3) and the
//! anti-Ramsey oracle ar(n, sK3).
//!
//! The Turán oracle enumerates graphs by descending edge count (exhaustive,
//! n <= 8) or runs a hitting-set style branch-and-bound for larger n. The
//! anti-Ramsey oracle enumerates colorings up to color relabeling as
//! restricted-growth strings over the canonical edge order, pruning any
//! prefix that already contains a rainbow sK3 among its fully colored
//! edges; merging colors never creates rainbow copies, so every
//! maximum-color rainbow-free coloring survives pruning.

use crate::graph::Graph;
use crate::rainbow::{find_rainbow_tiling, EdgeColoring};
use crate::search::{Budget, SearchOutcome};
use crate::tiling::has_tiling_of_size;
use serde::Serialize;
use std::collections::HashSet;
use std::io::Write;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("n={n} exceeds the oracle cap {cap}; raise the cap explicitly to force a long run")]
    NTooLarge { n: usize, cap: usize },
    #[error("s={s} out of range for n={n}")]
    SOutOfRange { s: usize, n: usize },
    #[error("oracle self-check failed: {0}")]
    Inconsistent(String),
    #[error("checkpoint I/O at {path}: {err}")]
    Checkpoint { path: String, err: String },
}

// ---------------------------------------------------------------------------
// Turán oracle
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExMode {
    Exhaustive,
    BranchAndBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExOracleResult {
    pub n: usize,
    pub s: usize,
    pub value: usize,
    pub witness: Graph,
    pub mode: ExMode,
    pub nodes_used: u64,
}

#[derive(Clone, Debug, Serialize)]
pub enum ExOracleOutcome {
    Complete(ExOracleResult),
    /// Budget ran out; the bounds bracket the true value.
    Indeterminate { nodes_used: u64, lower: usize, upper: usize },
}

impl ExOracleOutcome {
    pub fn complete(self) -> Option<ExOracleResult> {
        match self {
            ExOracleOutcome::Complete(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExOracleOptions {
    /// Full enumeration is used up to this n (2^C(n,2) graphs).
    pub exhaustive_cap: usize,
    pub budget: u64,
    pub force_branch_and_bound: bool,
}

impl Default for ExOracleOptions {
    fn default() -> Self {
        ExOracleOptions {
            exhaustive_cap: 8,
            budget: crate::search::DEFAULT_BUDGET,
            force_branch_and_bound: false,
        }
    }
}

/// Maximum number of edges of an sK3-free graph on n vertices, exactly.
pub fn ex_oracle(n: usize, s: usize, opts: &ExOracleOptions) -> Result<ExOracleOutcome, OracleError> {
    if s == 0 {
        return Err(OracleError::SOutOfRange { s, n });
    }
    if 3 * s > n {
        // sK3 does not fit: K_n itself is free.
        let witness = Graph::complete(n).expect("within capacity");
        let value = witness.edge_count();
        return Ok(ExOracleOutcome::Complete(ExOracleResult {
            n,
            s,
            value,
            witness,
            mode: ExMode::Exhaustive,
            nodes_used: 0,
        }));
    }
    if !opts.force_branch_and_bound && n <= opts.exhaustive_cap {
        ex_exhaustive(n, s, opts.budget)
    } else {
        ex_branch_and_bound(n, s, opts.budget)
    }
}

fn is_free(g: &Graph, s: usize) -> Option<bool> {
    let mut b = Budget::new(10_000_000);
    match has_tiling_of_size(g, s, &mut b) {
        SearchOutcome::Complete(found) => Some(!found),
        SearchOutcome::Indeterminate { .. } => None,
    }
}

/// Descending edge-count sweep: the first sK3-free graph found sits at the
/// extremal count.
fn ex_exhaustive(n: usize, s: usize, budget_limit: u64) -> Result<ExOracleOutcome, OracleError> {
    let all_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let m = all_edges.len();
    let mut budget = Budget::new(budget_limit);
    for absent in 0..=m {
        // All graphs missing exactly `absent` edges, in combination order.
        let mut comb: Vec<usize> = (0..absent).collect();
        loop {
            if !budget.tick() {
                return Ok(ExOracleOutcome::Indeterminate {
                    nodes_used: budget.used(),
                    lower: 0,
                    upper: m - absent,
                });
            }
            let mut drop = vec![false; m];
            for &i in &comb {
                drop[i] = true;
            }
            let g = Graph::from_edges(
                n,
                all_edges
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| !drop[i])
                    .map(|(_, &e)| e),
            )
            .expect("edge list is valid");
            match is_free(&g, s) {
                Some(true) => {
                    return Ok(ExOracleOutcome::Complete(ExOracleResult {
                        n,
                        s,
                        value: m - absent,
                        witness: g,
                        mode: ExMode::Exhaustive,
                        nodes_used: budget.used(),
                    }))
                }
                Some(false) => {}
                None => {
                    return Ok(ExOracleOutcome::Indeterminate {
                        nodes_used: budget.used(),
                        lower: 0,
                        upper: m - absent,
                    })
                }
            }
            if !next_combination(&mut comb, m) {
                break;
            }
        }
    }
    unreachable!("the empty graph is always sK3-free")
}

/// Lexicographic next k-combination of [0, m). Returns false after the last.
fn next_combination(comb: &mut [usize], m: usize) -> bool {
    let k = comb.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] != i + m - k {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Branch on deleting one edge of a freshly found s-tiling; any sK3-free
/// subgraph of K_n must miss at least one edge of every tiling.
fn ex_branch_and_bound(n: usize, s: usize, budget_limit: u64) -> Result<ExOracleOutcome, OracleError> {
    struct Bb {
        n: usize,
        s: usize,
        best: usize,
        witness: Option<Graph>,
        seen: HashSet<Vec<(u16, u16)>>,
        budget: Budget,
    }
    impl Bb {
        fn rec(&mut self, g: &Graph) -> bool {
            if !self.budget.tick() {
                return false;
            }
            if g.edge_count() <= self.best {
                return true;
            }
            let mut b = Budget::new(10_000_000);
            let witness_tiling = find_tiling_witness(g, self.s, &mut b);
            match witness_tiling {
                None => {
                    // sK3-free: candidate.
                    self.best = g.edge_count();
                    self.witness = Some(g.clone());
                    true
                }
                Some(tris) => {
                    for tri in &tris {
                        let pairs =
                            [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])];
                        for (u, v) in pairs {
                            let edges: Vec<(u16, u16)> = g
                                .edges()
                                .into_iter()
                                .filter(|&e| e != (u.min(v), u.max(v)))
                                .collect();
                            if !self.seen.insert(edges.clone()) {
                                continue;
                            }
                            let h = Graph::from_edges(
                                self.n,
                                edges.iter().map(|&(a, b)| (a as usize, b as usize)),
                            )
                            .expect("subgraph of K_n");
                            if !self.rec(&h) {
                                return false;
                            }
                        }
                    }
                    true
                }
            }
        }
    }
    let mut bb = Bb {
        n,
        s,
        best: 0,
        witness: None,
        seen: HashSet::new(),
        budget: Budget::new(budget_limit),
    };
    let complete = bb.rec(&Graph::complete(n).expect("within capacity"));
    if complete {
        let witness = bb.witness.expect("some sK3-free subgraph exists");
        Ok(ExOracleOutcome::Complete(ExOracleResult {
            n,
            s,
            value: bb.best,
            witness,
            mode: ExMode::BranchAndBound,
            nodes_used: bb.budget.used(),
        }))
    } else {
        Ok(ExOracleOutcome::Indeterminate {
            nodes_used: bb.budget.used(),
            lower: bb.best,
            upper: n * (n - 1) / 2,
        })
    }
}

/// First s disjoint triangles found, as concrete triples.
fn find_tiling_witness(g: &Graph, s: usize, budget: &mut Budget) -> Option<Vec<[u16; 3]>> {
    fn rec(
        g: &Graph,
        free: crate::graph::VertexSet,
        stack: &mut Vec<[u16; 3]>,
        target: usize,
        budget: &mut Budget,
    ) -> bool {
        if stack.len() == target {
            return true;
        }
        if !budget.tick() {
            return false;
        }
        if stack.len() + free.len() / 3 < target {
            return false;
        }
        let Some(v) = free.first() else { return false };
        let mut rest = free;
        rest.remove(v);
        let nbrs = g.neighbors(v).intersect(&rest);
        for a in nbrs.iter() {
            let common = nbrs.intersect(g.neighbors(a));
            for b in common.iter() {
                if b <= a {
                    continue;
                }
                let mut next = rest;
                next.remove(a);
                next.remove(b);
                stack.push([v as u16, a as u16, b as u16]);
                if rec(g, next, stack, target, budget) {
                    return true;
                }
                stack.pop();
            }
        }
        rec(g, rest, stack, target, budget)
    }
    let mut stack = Vec::new();
    if rec(g, g.vertex_set(), &mut stack, s, budget) {
        Some(stack)
    } else {
        None
    }
}

/// Brute-force isomorphism test for tiny graphs (n <= 8).
pub fn isomorphic_small(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.n();
    assert!(n <= 8, "permutation brute force is for n <= 8");
    let mut deg_a: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut deg_b: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if (0..n).all(|u| (u + 1..n).all(|v| a.has_edge(u, v) == b.has_edge(perm[u], perm[v]))) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

// ---------------------------------------------------------------------------
// Anti-Ramsey oracle
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct ArOracleResult {
    pub n: usize,
    pub s: usize,
    /// Minimum color count forcing a rainbow sK3 in every surjective
    /// coloring.
    pub ar: u32,
    /// = ar - 1: the maximum colors of a rainbow-free coloring.
    pub max_rainbow_free_colors: u32,
    /// A rainbow-free coloring attaining the maximum.
    pub witness: EdgeColoring,
    /// [ex(n,(s-1)K3)+2, ex(n,sK3)+1]; the result always lies inside.
    pub sandwich: (u32, u32),
    pub nodes_used: u64,
}

#[derive(Clone, Debug, Serialize)]
pub enum ArOracleOutcome {
    Complete(ArOracleResult),
    Indeterminate {
        nodes_used: u64,
        sandwich: (u32, u32),
        /// Best rainbow-free color count seen before exhaustion.
        best_known: u32,
    },
}

impl ArOracleOutcome {
    pub fn complete(self) -> Option<ArOracleResult> {
        match self {
            ArOracleOutcome::Complete(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ArOracleOptions {
    /// Hard cap on n (the search is doubly exponential); raise consciously.
    pub n_cap: usize,
    pub budget: u64,
    pub workers: usize,
    /// Completed search prefixes are appended here and skipped on resume.
    pub checkpoint: Option<PathBuf>,
}

impl Default for ArOracleOptions {
    fn default() -> Self {
        ArOracleOptions {
            n_cap: 6,
            budget: 20_000_000_000,
            workers: 1,
            checkpoint: None,
        }
    }
}

/// All placements of s vertex-disjoint triangles in K_n, each as its sorted
/// list of canonical edge indices.
fn tiling_structures(n: usize, s: usize) -> Vec<Vec<usize>> {
    let triples: Vec<[usize; 3]> = {
        let mut v = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    v.push([a, b, c]);
                }
            }
        }
        v
    };
    let pair_index = |u: usize, v: usize| u * (2 * n - u - 1) / 2 + (v - u - 1);
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        triples: &[[usize; 3]],
        from: usize,
        s: usize,
        used: u64,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        pair_index: &dyn Fn(usize, usize) -> usize,
    ) {
        if stack.len() == s {
            let mut edges: Vec<usize> = stack
                .iter()
                .flat_map(|&i| {
                    let t = triples[i];
                    [
                        pair_index(t[0], t[1]),
                        pair_index(t[0], t[2]),
                        pair_index(t[1], t[2]),
                    ]
                })
                .collect();
            edges.sort_unstable();
            out.push(edges);
            return;
        }
        for i in from..triples.len() {
            let t = triples[i];
            let mask = (1u64 << t[0]) | (1u64 << t[1]) | (1u64 << t[2]);
            if used & mask != 0 {
                continue;
            }
            stack.push(i);
            rec(triples, i + 1, s, used | mask, stack, out, pair_index);
            stack.pop();
        }
    }
    rec(&triples, 0, s, 0, &mut stack, &mut out, &pair_index);
    out
}

struct ArSearchCtx {
    edge_count: usize,
    /// Structures grouped by their last (largest) edge index.
    by_last_edge: Vec<Vec<Vec<usize>>>,
}

impl ArSearchCtx {
    fn new(n: usize, s: usize) -> Self {
        let edge_count = n * (n - 1) / 2;
        let mut by_last_edge: Vec<Vec<Vec<usize>>> = vec![Vec::new(); edge_count];
        for st in tiling_structures(n, s) {
            let last = *st.last().expect("structures are nonempty");
            by_last_edge[last].push(st);
        }
        ArSearchCtx { edge_count, by_last_edge }
    }

    /// True iff assigning colors[k] creates a rainbow structure ending at k.
    fn creates_rainbow(&self, colors: &[u32], k: usize) -> bool {
        'st: for st in &self.by_last_edge[k] {
            let mut mask: u128 = 0;
            for &e in st {
                let bit = 1u128 << (colors[e] - 1);
                if mask & bit != 0 {
                    continue 'st;
                }
                mask |= bit;
            }
            return true;
        }
        false
    }
}

struct PrefixTask {
    colors: Vec<u32>,
    maxc: u32,
}

#[derive(Clone, Debug, Serialize, serde::Deserialize)]
struct CheckpointLine {
    prefix: Vec<u32>,
    best_in_prefix: u32,
    witness: Option<Vec<u32>>,
    nodes: u64,
    exhausted: bool,
}

/// Exact anti-Ramsey number ar(n, sK3) by exhaustive coloring enumeration.
///
/// The search is seeded with the rainbow-extremal-graph construction at
/// ex(n,(s-1)K3)+1 colors, so only colorings beating the construction are
/// explored in depth.
pub fn ar_oracle(n: usize, s: usize, opts: &ArOracleOptions) -> Result<ArOracleOutcome, OracleError> {
    if n > opts.n_cap {
        return Err(OracleError::NTooLarge { n, cap: opts.n_cap });
    }
    if s == 0 || 3 * s > n {
        return Err(OracleError::SOutOfRange { s, n });
    }
    let ex_opts = ExOracleOptions::default();
    let ex_s = match ex_oracle(n, s, &ex_opts)? {
        ExOracleOutcome::Complete(r) => r,
        ExOracleOutcome::Indeterminate { .. } => {
            return Err(OracleError::Inconsistent("ex_oracle(n,s) exhausted".into()))
        }
    };
    // Seed: rainbow extremal (s-1)K3-free graph plus a monochromatic
    // complement; rainbow-free with ex(n,(s-1)K3)+1 colors when s >= 2.
    let (seed_coloring, sandwich_lo) = if s >= 2 {
        let ex_sm1 = match ex_oracle(n, s - 1, &ex_opts)? {
            ExOracleOutcome::Complete(r) => r,
            ExOracleOutcome::Indeterminate { .. } => {
                return Err(OracleError::Inconsistent("ex_oracle(n,s-1) exhausted".into()))
            }
        };
        let g = &ex_sm1.witness;
        let e = g.edge_count() as u32;
        let mut next = 0u32;
        let mut assign = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                assign.push(if g.has_edge(u, v) {
                    next += 1;
                    next
                } else {
                    e + 1
                });
            }
        }
        let full = e as usize == n * (n - 1) / 2;
        let num = if full { e } else { e + 1 };
        let c = EdgeColoring::from_canonical_colors(n, assign, num)
            .expect("seed scheme is total and surjective");
        (c, ex_sm1.value as u32 + 2)
    } else {
        (EdgeColoring::monochromatic(n), 3)
    };
    let sandwich = (sandwich_lo, ex_s.value as u32 + 1);
    // The seed must be rainbow-free; verify rather than trust.
    match find_rainbow_tiling(&seed_coloring, s, 1_000_000_000) {
        Ok(SearchOutcome::Complete(None)) => {}
        other => {
            return Err(OracleError::Inconsistent(format!(
                "seed coloring failed the rainbow-freeness check: {other:?}"
            )))
        }
    }
    let seed_colors = seed_coloring.num_colors();

    let ctx = ArSearchCtx::new(n, s);
    let edge_count = ctx.edge_count;
    // Enumerate surviving prefixes at a fixed depth, then finish each
    // independently (deterministic regardless of worker count).
    let prefix_depth = edge_count.min(7);
    let mut prefixes: Vec<PrefixTask> = Vec::new();
    {
        let mut colors = vec![0u32; edge_count];
        gen_prefixes(&ctx, &mut colors, 0, 0, prefix_depth, &mut prefixes);
    }
    // Resume: skip prefixes a previous run completed, but keep their bests.
    let mut done: HashSet<Vec<u32>> = HashSet::new();
    let mut resumed_best = seed_colors;
    let mut resumed_witness: Option<Vec<u32>> = None;
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            let text = std::fs::read_to_string(path).map_err(|e| OracleError::Checkpoint {
                path: path.display().to_string(),
                err: e.to_string(),
            })?;
            for line in text.lines().filter_map(|l| serde_json::from_str::<CheckpointLine>(l).ok())
            {
                if line.exhausted {
                    continue;
                }
                if line.best_in_prefix > resumed_best {
                    resumed_best = line.best_in_prefix;
                    resumed_witness = line.witness.clone();
                }
                done.insert(line.prefix);
            }
        }
    }
    // Every prefix gets the full budget so outcomes never depend on how
    // work was split across workers.
    let per_prefix_budget = opts.budget;

    let run_prefix = |task: &PrefixTask| -> (u32, Option<Vec<u32>>, u64, bool) {
        let mut colors = task.colors.clone();
        colors.resize(edge_count, 0);
        let mut budget = Budget::new(per_prefix_budget);
        let mut best = seed_colors;
        let mut witness: Option<Vec<u32>> = None;
        let complete = dfs_colorings(
            &ctx,
            &mut colors,
            prefix_depth,
            task.maxc,
            &mut best,
            &mut witness,
            &mut budget,
        );
        (best, witness, budget.used(), !complete)
    };

    let mut results: Vec<(usize, (u32, Option<Vec<u32>>, u64, bool))> = if opts.workers > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .expect("thread pool");
        pool.install(|| {
            prefixes
                .par_iter()
                .enumerate()
                .filter(|(_, t)| !done.contains(&t.colors))
                .map(|(i, t)| (i, run_prefix(t)))
                .collect()
        })
    } else {
        prefixes
            .iter()
            .enumerate()
            .filter(|(_, t)| !done.contains(&t.colors))
            .map(|(i, t)| (i, run_prefix(t)))
            .collect()
    };
    results.sort_by_key(|&(i, _)| i);

    let mut best = resumed_best;
    let mut witness_colors: Option<Vec<u32>> = resumed_witness;
    let mut nodes_total = 0u64;
    let mut any_exhausted = false;
    let mut checkpoint_out = match &opts.checkpoint {
        Some(path) => Some(
            std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| OracleError::Checkpoint {
                    path: path.display().to_string(),
                    err: e.to_string(),
                })?,
        ),
        None => None,
    };
    for (i, (prefix_best, prefix_witness, nodes, exhausted)) in &results {
        nodes_total += nodes;
        if *exhausted {
            any_exhausted = true;
        }
        if *prefix_best > best {
            best = *prefix_best;
            witness_colors = prefix_witness.clone();
        }
        if let Some(out) = checkpoint_out.as_mut() {
            let line = CheckpointLine {
                prefix: prefixes[*i].colors.clone(),
                best_in_prefix: *prefix_best,
                witness: prefix_witness.clone(),
                nodes: *nodes,
                exhausted: *exhausted,
            };
            writeln!(out, "{}", serde_json::to_string(&line).expect("serializable"))
                .map_err(|e| OracleError::Checkpoint {
                    path: "checkpoint".into(),
                    err: e.to_string(),
                })?;
        }
    }
    if any_exhausted {
        return Ok(ArOracleOutcome::Indeterminate {
            nodes_used: nodes_total,
            sandwich,
            best_known: best,
        });
    }
    let witness = match witness_colors {
        Some(colors) => EdgeColoring::from_canonical_colors(n, colors, best)
            .expect("restricted-growth leaves are surjective"),
        None => seed_coloring,
    };
    let ar = best + 1;
    if ar < sandwich.0 || ar > sandwich.1 {
        return Err(OracleError::Inconsistent(format!(
            "ar={ar} escapes the sandwich {sandwich:?}"
        )));
    }
    Ok(ArOracleOutcome::Complete(ArOracleResult {
        n,
        s,
        ar,
        max_rainbow_free_colors: best,
        witness,
        sandwich,
        nodes_used: nodes_total,
    }))
}

fn gen_prefixes(
    ctx: &ArSearchCtx,
    colors: &mut Vec<u32>,
    k: usize,
    maxc: u32,
    depth: usize,
    out: &mut Vec<PrefixTask>,
) {
    if k == depth {
        out.push(PrefixTask { colors: colors[..depth].to_vec(), maxc });
        return;
    }
    for c in 1..=maxc + 1 {
        colors[k] = c;
        if !ctx.creates_rainbow(colors, k) {
            gen_prefixes(ctx, colors, k + 1, maxc.max(c), depth, out);
        }
    }
    colors[k] = 0;
}

/// Depth-first over restricted-growth strings; returns false if the budget
/// ran out. `best` only ever increases; strictly better leaves replace the
/// witness.
fn dfs_colorings(
    ctx: &ArSearchCtx,
    colors: &mut Vec<u32>,
    k: usize,
    maxc: u32,
    best: &mut u32,
    witness: &mut Option<Vec<u32>>,
    budget: &mut Budget,
) -> bool {
    if k == ctx.edge_count {
        if maxc > *best {
            *best = maxc;
            *witness = Some(colors.clone());
        }
        return true;
    }
    if !budget.tick() {
        return false;
    }
    // Even coloring every remaining edge with a fresh color cannot beat
    // the best; prune.
    if maxc + (ctx.edge_count - k) as u32 <= *best {
        return true;
    }
    for c in 1..=maxc + 1 {
        colors[k] = c;
        if ctx.creates_rainbow(colors, k) {
            continue;
        }
        if !dfs_colorings(ctx, colors, k + 1, maxc.max(c), best, witness, budget) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_construction, ConstructionSpec, Family};

    #[test]
    fn ex_oracle_small_values() {
        let opts = ExOracleOptions::default();
        let r = ex_oracle(5, 1, &opts).unwrap().complete().unwrap();
        assert_eq!(r.value, 6); // Mantel floor(25/4)
        let r = ex_oracle(6, 2, &opts).unwrap().complete().unwrap();
        assert_eq!(r.value, 12);
        let r = ex_oracle(6, 3, &opts).unwrap().complete().unwrap();
        assert_eq!(r.value, 15); // 3K3 needs 9 vertices
    }

    #[test]
    fn ex_oracle_witness_is_k6_minus_triangle() {
        let opts = ExOracleOptions::default();
        let r = ex_oracle(6, 2, &opts).unwrap().complete().unwrap();
        let gamma2 = build_construction(&ConstructionSpec::new(Family::G2, 6, 1)).unwrap();
        assert!(isomorphic_small(&r.witness, &gamma2.graph));
    }

    #[test]
    fn branch_and_bound_agrees_with_exhaustive() {
        let mut opts = ExOracleOptions::default();
        opts.force_branch_and_bound = true;
        for (n, s) in [(6, 2), (6, 1), (7, 2)] {
            let bb = ex_oracle(n, s, &opts).unwrap().complete().unwrap();
            let ex = ex_oracle(n, s, &ExOracleOptions::default())
                .unwrap()
                .complete()
                .unwrap();
            assert_eq!(bb.value, ex.value, "({n},{s})");
            assert_eq!(bb.mode, ExMode::BranchAndBound);
        }
    }

    #[test]
    fn ex_oracle_monotone() {
        let opts = ExOracleOptions::default();
        let v65 = |n, s| ex_oracle(n, s, &opts).unwrap().complete().unwrap().value;
        assert!(v65(5, 1) <= v65(6, 1));
        assert!(v65(6, 1) <= v65(6, 2));
        assert!(v65(6, 2) <= v65(7, 2));
    }

    #[test]
    fn ar_oracle_triangle_cases() {
        let opts = ArOracleOptions { budget: 100_000_000, ..Default::default() };
        let r = ar_oracle(3, 1, &opts).unwrap().complete().unwrap();
        assert_eq!(r.ar, 3);
        let r = ar_oracle(4, 1, &opts).unwrap().complete().unwrap();
        assert_eq!(r.ar, 4);
        let r = ar_oracle(5, 1, &opts).unwrap().complete().unwrap();
        // Max rainbow-triangle-free colorings of K_n have n-1 colors.
        assert_eq!(r.ar, 5);
    }

    #[test]
    fn ar_oracle_rejects_large_n_by_default() {
        let opts = ArOracleOptions::default();
        assert!(matches!(
            ar_oracle(7, 2, &opts),
            Err(OracleError::NTooLarge { .. })
        ));
    }

    #[test]
    fn ar_oracle_deterministic_across_workers() {
        let base = ArOracleOptions { budget: 200_000_000, ..Default::default() };
        let r1 = ar_oracle(4, 1, &base).unwrap().complete().unwrap();
        let r2 = ar_oracle(
            4,
            1,
            &ArOracleOptions { workers: 4, ..base },
        )
        .unwrap()
        .complete()
        .unwrap();
        assert_eq!(r1.ar, r2.ar);
        assert_eq!(r1.witness, r2.witness);
    }

    #[test]
    fn next_combination_enumerates_all() {
        let mut comb = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut comb, 4) {
            count += 1;
        }
        assert_eq!(count, 6);
    }

    #[test]
    fn isomorphism_basics() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c4b = Graph::from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(isomorphic_small(&c4, &c4b));
        assert!(!isomorphic_small(&c4, &p4));
    }
}
