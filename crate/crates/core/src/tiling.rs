//! Exact maximum triangle tilings, lexicographically maximal tiling
//! triples, the sees-relations, critical vertices, and the ideal partition
//! with its peeling procedure.

use crate::formula::PartitionStats;
use crate::graph::{Graph, VertexSet};
pub use crate::search::{Budget, SearchOutcome, DEFAULT_BUDGET};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TilingError {
    #[error("{0:?} is not an edge of the graph")]
    NotAnEdge([u16; 2]),
    #[error("{0:?} is not a triangle of the graph")]
    NotATriangle([u16; 3]),
    #[error("seer and triangle share a vertex")]
    NotDisjoint,
    #[error("tiling triple invalid for this graph: {0}")]
    InvalidTriple(String),
}

/// A partition of V into triangles, matching edges, and singletons.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingTriple {
    pub triangles: Vec<[u16; 3]>,
    pub matching: Vec<[u16; 2]>,
    pub singletons: Vec<u16>,
}

impl TilingTriple {
    pub fn triangle_vertices(&self) -> VertexSet {
        VertexSet::from_iter(self.triangles.iter().flatten().map(|&v| v as usize))
    }

    pub fn matching_vertices(&self) -> VertexSet {
        VertexSet::from_iter(self.matching.iter().flatten().map(|&v| v as usize))
    }

    pub fn singleton_vertices(&self) -> VertexSet {
        VertexSet::from_iter(self.singletons.iter().map(|&v| v as usize))
    }

    /// Structural validity against a graph: disjoint, covering, and made of
    /// actual triangles and edges. Does not check maximality.
    pub fn validate(&self, g: &Graph) -> Result<(), TilingError> {
        let mut seen = VertexSet::EMPTY;
        let mut count = 0usize;
        let mut visit = |v: u16| -> Result<(), TilingError> {
            if (v as usize) >= g.n() || seen.contains(v as usize) {
                return Err(TilingError::InvalidTriple(format!(
                    "vertex {v} repeated or out of range"
                )));
            }
            seen.insert(v as usize);
            count += 1;
            Ok(())
        };
        for tri in &self.triangles {
            for &v in tri {
                visit(v)?;
            }
            if !is_triangle(g, *tri) {
                return Err(TilingError::NotATriangle(*tri));
            }
        }
        for e in &self.matching {
            for &v in e {
                visit(v)?;
            }
            if !g.has_edge(e[0] as usize, e[1] as usize) {
                return Err(TilingError::NotAnEdge(*e));
            }
        }
        for &v in &self.singletons {
            visit(v)?;
        }
        if count != g.n() {
            return Err(TilingError::InvalidTriple(format!(
                "covers {count} of {} vertices",
                g.n()
            )));
        }
        Ok(())
    }

    /// Independence of the leftover set, required of maximal triples.
    pub fn singletons_independent(&self, g: &Graph) -> bool {
        let s = self.singleton_vertices();
        g.edges_within(&s) == 0
    }

    /// Necessary local-maximality conditions: the singleton set is
    /// independent and no matching edge closes a triangle with a
    /// singleton (either would admit a lexicographically larger triple).
    pub fn locally_maximal(&self, g: &Graph) -> bool {
        if !self.singletons_independent(g) {
            return false;
        }
        let singles = self.singleton_vertices();
        self.matching.iter().all(|e| {
            g.neighbors(e[0] as usize)
                .intersect(g.neighbors(e[1] as usize))
                .intersect(&singles)
                .is_empty()
        })
    }
}

fn is_triangle(g: &Graph, t: [u16; 3]) -> bool {
    let (a, b, c) = (t[0] as usize, t[1] as usize, t[2] as usize);
    g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c)
}

// ---------------------------------------------------------------------------
// Maximum tiling search
// ---------------------------------------------------------------------------

/// Upper bound on the number of disjoint triangles inside `avail`: at most
/// one vertex of each triangle lies in any independent set, so a greedy
/// independent set I gives the sound cut (|avail| - |I|) / 2, capped by
/// |avail| / 3.
fn triangle_bound(g: &Graph, avail: &VertexSet) -> usize {
    let mut rest = *avail;
    let mut indep = 0usize;
    while !rest.is_empty() {
        // Smallest degree within the remaining set, ties to the lowest id.
        let mut best: Option<(usize, usize)> = None;
        for v in rest.iter() {
            let d = g.neighbors(v).intersect(&rest).len();
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, v));
            }
            if d == 0 {
                break;
            }
        }
        let (_, v) = best.expect("rest is nonempty");
        indep += 1;
        rest.remove(v);
        rest = rest.minus(g.neighbors(v));
    }
    ((avail.len() - indep) / 2).min(avail.len() / 3)
}

/// Exact maximum number of vertex-disjoint triangles, by backtracking with
/// a free-vertex upper-bound cut.
pub fn max_tiling_number(g: &Graph, budget_limit: u64) -> SearchOutcome<usize> {
    let mut budget = Budget::new(budget_limit);
    let mut best = 0usize;
    let free = g.vertex_set();
    if rec_max_size(g, free, 0, &mut best, &mut budget) {
        SearchOutcome::Complete(best)
    } else {
        SearchOutcome::Indeterminate { nodes_used: budget.used() }
    }
}

/// Whether the graph contains `s` vertex-disjoint triangles (first-witness
/// search; used by the Turán oracle).
pub fn has_tiling_of_size(g: &Graph, s: usize, budget: &mut Budget) -> SearchOutcome<bool> {
    if s == 0 {
        return SearchOutcome::Complete(true);
    }
    let mut found = false;
    let complete = rec_find_size(g, g.vertex_set(), 0, s, &mut found, budget);
    if complete || found {
        SearchOutcome::Complete(found)
    } else {
        SearchOutcome::Indeterminate { nodes_used: budget.used() }
    }
}

fn rec_max_size(
    g: &Graph,
    free: VertexSet,
    count: usize,
    best: &mut usize,
    budget: &mut Budget,
) -> bool {
    if !budget.tick() {
        return false;
    }
    if count > *best {
        *best = count;
    }
    let Some(v) = free.first() else { return true };
    if count + free.len() / 3 <= *best || count + triangle_bound(g, &free) <= *best {
        return true;
    }
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
            if !rec_max_size(g, next, count + 1, best, budget) {
                return false;
            }
        }
    }
    // v in no triangle of the tiling
    rec_max_size(g, rest, count, best, budget)
}

fn rec_find_size(
    g: &Graph,
    free: VertexSet,
    count: usize,
    target: usize,
    found: &mut bool,
    budget: &mut Budget,
) -> bool {
    if *found {
        return true;
    }
    if !budget.tick() {
        return false;
    }
    if count == target {
        *found = true;
        return true;
    }
    let Some(v) = free.first() else { return true };
    if count + free.len() / 3 < target || count + triangle_bound(g, &free) < target {
        return true;
    }
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
            if !rec_find_size(g, next, count + 1, target, found, budget) {
                return false;
            }
            if *found {
                return true;
            }
        }
    }
    rec_find_size(g, rest, count, target, found, budget)
}

// ---------------------------------------------------------------------------
// Maximum matching (exact)
// ---------------------------------------------------------------------------

/// Exact maximum matching size on the induced subgraph over `verts`.
pub fn max_matching_size(g: &Graph, verts: &VertexSet) -> usize {
    if verts.len() <= 24 {
        let mut best = greedy_matching_size(g, verts);
        rec_matching(g, *verts, 0, &mut best);
        best
    } else {
        petgraph_matching_size(g, verts)
    }
}

fn greedy_matching_size(g: &Graph, verts: &VertexSet) -> usize {
    let mut avail = *verts;
    let mut size = 0;
    while let Some(v) = avail.first() {
        avail.remove(v);
        if let Some(u) = g.neighbors(v).intersect(&avail).first() {
            avail.remove(u);
            size += 1;
        }
    }
    size
}

fn rec_matching(g: &Graph, avail: VertexSet, cur: usize, best: &mut usize) {
    if cur > *best {
        *best = cur;
    }
    let Some(v) = avail.first() else { return };
    if cur + avail.len() / 2 <= *best {
        return;
    }
    let mut rest = avail;
    rest.remove(v);
    for u in g.neighbors(v).intersect(&rest).iter() {
        let mut rest2 = rest;
        rest2.remove(u);
        rec_matching(g, rest2, cur + 1, best);
    }
    rec_matching(g, rest, cur, best);
}

fn petgraph_matching_size(g: &Graph, verts: &VertexSet) -> usize {
    use petgraph::graph::UnGraph;
    let vs: Vec<usize> = verts.iter().collect();
    let mut pg = UnGraph::<(), ()>::default();
    let idx: Vec<_> = vs.iter().map(|_| pg.add_node(())).collect();
    for (i, &u) in vs.iter().enumerate() {
        for (j, &v) in vs.iter().enumerate().skip(i + 1) {
            if g.has_edge(u, v) {
                pg.add_edge(idx[i], idx[j], ());
            }
        }
    }
    petgraph::algo::matching::maximum_matching(&pg).edges().count()
}

/// Canonical maximum matching on `verts`: the edge set chosen greedily in
/// canonical edge order among maximum matchings.
pub fn canonical_max_matching(g: &Graph, verts: &VertexSet) -> Vec<[u16; 2]> {
    let mut need = max_matching_size(g, verts);
    let mut avail = *verts;
    let mut out = Vec::with_capacity(need);
    'outer: while need > 0 {
        let vs: Vec<usize> = avail.iter().collect();
        for &u in &vs {
            let nbrs: Vec<usize> = g.neighbors(u).intersect(&avail).iter().collect();
            for v in nbrs {
                if v <= u {
                    continue;
                }
                let mut rest = avail;
                rest.remove(u);
                rest.remove(v);
                if max_matching_size(g, &rest) == need - 1 {
                    out.push([u as u16, v as u16]);
                    avail = rest;
                    need -= 1;
                    continue 'outer;
                }
            }
        }
        unreachable!("a maximum matching always extends edge by edge");
    }
    out
}

// ---------------------------------------------------------------------------
// Lexicographically maximal tiling triple
// ---------------------------------------------------------------------------

struct TripleSearch<'a> {
    g: &'a Graph,
    tstar: usize,
    /// The exact best remainder matching size, computed up front.
    target_m: usize,
    best_triangles: Vec<[u16; 3]>,
    stack: Vec<[u16; 3]>,
    done: bool,
    /// Matching upper bounds by free-set; the leaf remainder is always a
    /// subset of the current free set, so its maximum matching bounds
    /// every completion below a node.
    matching_ub: std::collections::HashMap<VertexSet, usize>,
}

/// Exact best remainder matching over all maximum tilings, by feasibility
/// search from the large end: an m-matching plus a disjoint tstar-tiling
/// exists iff some matched vertex set leaves a tiling behind. A matched
/// set that already breaks the tiling prunes its whole subtree (growing
/// the matching only shrinks the tiling's room), and such sets are
/// memoized across matching sizes.
fn best_remainder_matching(
    g: &Graph,
    tstar: usize,
    cap_m: usize,
    budget: &mut Budget,
) -> Option<usize> {
    /// Feasibility of a tstar-tiling avoiding `matched`, memoized; a cached
    /// witness short-circuits the common all-disjoint case.
    struct FeasCtx {
        memo: std::collections::HashMap<VertexSet, bool>,
        witness: Option<VertexSet>,
    }
    fn feasible(
        g: &Graph,
        matched: VertexSet,
        tstar: usize,
        ctx: &mut FeasCtx,
        budget: &mut Budget,
    ) -> Option<bool> {
        if let Some(w) = &ctx.witness {
            if w.is_disjoint(&matched) {
                return Some(true);
            }
        }
        if let Some(&b) = ctx.memo.get(&matched) {
            return Some(b);
        }
        let free = g.vertex_set().minus(&matched);
        let mut stack = Vec::new();
        let found = rec_find_stack(g, free, tstar, &mut stack, budget)?;
        ctx.memo.insert(matched, found);
        if found {
            ctx.witness = Some(VertexSet::from_iter(
                stack.iter().flatten().map(|&v| v as usize),
            ));
        }
        Some(found)
    }
    fn rec(
        g: &Graph,
        avail: VertexSet,
        need: usize,
        matched: VertexSet,
        ctx: &mut FeasCtx,
        tstar: usize,
        budget: &mut Budget,
    ) -> Option<bool> {
        if !budget.tick() {
            return None;
        }
        if !feasible(g, matched, tstar, ctx, budget)? {
            return Some(false);
        }
        if need == 0 {
            return Some(true);
        }
        if avail.len() < 2 * need {
            return Some(false);
        }
        let Some(v) = avail.first() else { return Some(false) };
        let mut rest = avail;
        rest.remove(v);
        for u in g.neighbors(v).intersect(&rest).iter() {
            let mut rest2 = rest;
            rest2.remove(u);
            let mut matched2 = matched;
            matched2.insert(v);
            matched2.insert(u);
            match rec(g, rest2, need - 1, matched2, ctx, tstar, budget) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
        }
        rec(g, rest, need, matched, ctx, tstar, budget)
    }
    let mut ctx = FeasCtx { memo: std::collections::HashMap::new(), witness: None };
    for m in (1..=cap_m).rev() {
        match rec(g, g.vertex_set(), m, VertexSet::EMPTY, &mut ctx, tstar, budget) {
            Some(true) => return Some(m),
            Some(false) => {}
            None => return None,
        }
    }
    Some(0)
}

/// First-witness tiling search recording the triangles; None on budget
/// exhaustion.
fn rec_find_stack(
    g: &Graph,
    free: VertexSet,
    target: usize,
    stack: &mut Vec<[u16; 3]>,
    budget: &mut Budget,
) -> Option<bool> {
    if stack.len() == target {
        return Some(true);
    }
    if !budget.tick() {
        return None;
    }
    if stack.len() + free.len() / 3 < target {
        return Some(false);
    }
    if stack.len() + triangle_bound(g, &free) < target {
        return Some(false);
    }
    let Some(v) = free.first() else { return Some(false) };
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
            match rec_find_stack(g, next, target, stack, budget) {
                Some(true) => return Some(true),
                Some(false) => {
                    stack.pop();
                }
                None => return None,
            }
        }
    }
    rec_find_stack(g, rest, target, stack, budget)
}

/// The lexicographically maximal tiling triple: |T| is the maximum tiling
/// number, and among maximum tilings the remainder matching is maximum.
/// Ties resolve to the earliest tiling in canonical enumeration order.
pub fn maximal_tiling_triple(g: &Graph, budget_limit: u64) -> SearchOutcome<TilingTriple> {
    let mut budget = Budget::new(budget_limit);
    let mut tstar = 0usize;
    if !rec_max_size(g, g.vertex_set(), 0, &mut tstar, &mut budget) {
        return SearchOutcome::Indeterminate { nodes_used: budget.used() };
    }
    let cap_m = (g.n() - 3 * tstar) / 2;
    let Some(target_m) = best_remainder_matching(g, tstar, cap_m, &mut budget) else {
        return SearchOutcome::Indeterminate { nodes_used: budget.used() };
    };
    let mut search = TripleSearch {
        g,
        tstar,
        target_m,
        best_triangles: Vec::new(),
        stack: Vec::new(),
        done: false,
        matching_ub: std::collections::HashMap::new(),
    };
    if !search.rec(g.vertex_set(), VertexSet::EMPTY, &mut budget) {
        return SearchOutcome::Indeterminate { nodes_used: budget.used() };
    }
    debug_assert!(search.done, "a tiling attaining the exact target exists");
    let triangles = search.best_triangles;
    let mut remainder = g.vertex_set();
    for tri in &triangles {
        for &v in tri {
            remainder.remove(v as usize);
        }
    }
    let matching = canonical_max_matching(g, &remainder);
    for e in &matching {
        for &v in e {
            remainder.remove(v as usize);
        }
    }
    let singletons: Vec<u16> = remainder.to_vec();
    let triple = TilingTriple { triangles, matching, singletons };
    debug_assert!(triple.validate(g).is_ok());
    debug_assert!(triple.singletons_independent(g));
    SearchOutcome::Complete(triple)
}

impl TripleSearch<'_> {
    /// First tiling in canonical enumeration order whose remainder attains
    /// the precomputed target matching size.
    fn rec(&mut self, free: VertexSet, skipped: VertexSet, budget: &mut Budget) -> bool {
        if self.done {
            return true;
        }
        if !budget.tick() {
            return false;
        }
        if self.stack.len() == self.tstar {
            // Skipped vertices stay in `free`; the remainder is everything
            // outside the chosen triangles.
            let remainder = free;
            let m = max_matching_size(self.g, &remainder);
            if m >= self.target_m {
                self.best_triangles = self.stack.clone();
                self.done = true;
            }
            return true;
        }
        let avail = free.minus(&skipped);
        let Some(v) = avail.first() else { return true };
        if self.stack.len() + avail.len() / 3 < self.tstar
            || self.stack.len() + triangle_bound(self.g, &avail) < self.tstar
        {
            return true;
        }
        // The remainder can only shrink below this node.
        let g = self.g;
        let ub = *self
            .matching_ub
            .entry(free)
            .or_insert_with(|| max_matching_size(g, &free));
        if ub < self.target_m {
            return true;
        }
        let mut rest_free = free;
        rest_free.remove(v);
        let mut rest_avail = avail;
        rest_avail.remove(v);
        let nbrs = self.g.neighbors(v).intersect(&rest_avail);
        for a in nbrs.iter() {
            let common = nbrs.intersect(self.g.neighbors(a));
            for b in common.iter() {
                if b <= a {
                    continue;
                }
                let mut next = rest_free;
                next.remove(a);
                next.remove(b);
                self.stack.push([v as u16, a as u16, b as u16]);
                let ok = self.rec(next, skipped, budget);
                self.stack.pop();
                if !ok {
                    return false;
                }
                if self.done {
                    return true;
                }
            }
        }
        let mut skipped2 = skipped;
        skipped2.insert(v);
        self.rec(free, skipped2, budget)
    }
}

// ---------------------------------------------------------------------------
// Sees relations
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeesKind {
    EdgeSees,
    VertexSees,
}

/// Witness for a sees-relation: the seer plus every seen triangle vertex.
#[derive(Clone, Debug, Serialize)]
pub struct SeesWitness {
    pub kind: SeesKind,
    pub seer_edge: Option<[u16; 2]>,
    pub seer_vertex: Option<u16>,
    pub triangle: [u16; 3],
    pub seen: Vec<u16>,
}

/// An edge `uv` sees a triangle vertex `w` when both `uw` and `vw` are
/// edges. Returns the witness listing all seen vertices, or `None`.
pub fn edge_sees(
    g: &Graph,
    e: [u16; 2],
    tri: [u16; 3],
) -> Result<Option<SeesWitness>, TilingError> {
    if !g.has_edge(e[0] as usize, e[1] as usize) {
        return Err(TilingError::NotAnEdge(e));
    }
    if !is_triangle(g, tri) {
        return Err(TilingError::NotATriangle(tri));
    }
    if tri.iter().any(|v| e.contains(v)) {
        return Err(TilingError::NotDisjoint);
    }
    let common = g.neighbors(e[0] as usize).intersect(g.neighbors(e[1] as usize));
    let seen: Vec<u16> = tri.iter().copied().filter(|&w| common.contains(w as usize)).collect();
    Ok((!seen.is_empty()).then_some(SeesWitness {
        kind: SeesKind::EdgeSees,
        seer_edge: Some(e),
        seer_vertex: None,
        triangle: tri,
        seen,
    }))
}

/// A vertex `w` sees a triangle when adjacent to at least two of its
/// vertices; the witness lists every adjacent triangle vertex.
pub fn vertex_sees(
    g: &Graph,
    w: u16,
    tri: [u16; 3],
) -> Result<Option<SeesWitness>, TilingError> {
    if !is_triangle(g, tri) {
        return Err(TilingError::NotATriangle(tri));
    }
    if tri.contains(&w) {
        return Err(TilingError::NotDisjoint);
    }
    let seen: Vec<u16> = tri
        .iter()
        .copied()
        .filter(|&v| g.has_edge(w as usize, v as usize))
        .collect();
    Ok((seen.len() >= 2).then_some(SeesWitness {
        kind: SeesKind::VertexSees,
        seer_edge: None,
        seer_vertex: Some(w),
        triangle: tri,
        seen,
    }))
}

#[inline]
fn edge_sees_fast(g: &Graph, u: usize, v: usize, tri: [u16; 3]) -> u8 {
    let common = g.neighbors(u).intersect(g.neighbors(v));
    let mut mask = 0u8;
    for (k, &w) in tri.iter().enumerate() {
        if common.contains(w as usize) {
            mask |= 1 << k;
        }
    }
    mask
}

/// A triangle sees another when one of its edges edge-sees it.
fn triangle_sees(g: &Graph, seer: [u16; 3], tri: [u16; 3]) -> bool {
    let pairs = [
        (seer[0] as usize, seer[1] as usize),
        (seer[0] as usize, seer[2] as usize),
        (seer[1] as usize, seer[2] as usize),
    ];
    pairs.iter().any(|&(u, v)| edge_sees_fast(g, u, v, tri) != 0)
}

// ---------------------------------------------------------------------------
// Ideal partition
// ---------------------------------------------------------------------------

/// Which reading of the T2 membership sentence is in force.
///
/// The defining sentence admits several parses; see the scanner's
/// interpretation report for the empirical comparison. `MatchingAndIota`
/// (exactly one seeing matching edge together with a seeing singleton) is
/// the reading under which the appendix bounds are theorems, and is the
/// default.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[derive(Default)]
pub enum T2Rule {
    /// (>= 2 triangle-seers) OR (one matching-seer AND >= 1 singleton-seer)
    Disjunctive,
    /// ((>= 2 triangle-seers) OR (one matching-seer)) AND (>= 1 singleton-seer)
    DisjunctiveRequiringIota,
    /// (one matching-seer) AND (>= 1 singleton-seer)
    #[default]
    MatchingAndIota,
    /// (>= 1 singleton-seer) AND (no singleton adjacent to all three
    /// triangle vertices). For maximal triples a matching-seer already
    /// excludes all-adjacent singletons, so this extends `MatchingAndIota`
    /// to the matching-unseen triangles whose seers share a seen pair.
    IotaSeenNoCone,
}


/// Candidate scan order for the peeling loop.
#[derive(Clone, Debug, Default)]
pub enum PeelOrder {
    /// Canonical (lexicographic triple) order each pass.
    #[default]
    Canonical,
    /// A fixed permutation of the candidate list scan order.
    Permuted(Vec<usize>),
}

#[derive(Clone, Debug, Default)]
pub struct PartitionOptions {
    pub t2_rule: T2Rule,
    pub peel_order: PeelOrder,
}

/// The split of T into T1..T4 plus critical-vertex data.
#[derive(Clone, Debug, Serialize)]
pub struct IdealPartition {
    pub t1: Vec<[u16; 3]>,
    pub t2: Vec<[u16; 3]>,
    /// In peel order.
    pub t3: Vec<[u16; 3]>,
    pub t4: Vec<[u16; 3]>,
    /// Critical vertex per T1 member, aligned with `t1`.
    pub critical: Vec<u16>,
    /// Non-critical T1 vertices.
    pub v_prime: VertexSet,
    /// Critical T1 vertices.
    pub v_dprime: VertexSet,
    /// Set when some seeing matching edge does not see the chosen critical
    /// vertex (impossible for maximal triples; kept for arbitrary input).
    pub claim42_violated: bool,
}

impl IdealPartition {
    pub fn class_vertices(&self, class: usize) -> VertexSet {
        let list = match class {
            0 => &self.t1,
            1 => &self.t2,
            2 => &self.t3,
            _ => &self.t4,
        };
        VertexSet::from_iter(list.iter().flatten().map(|&v| v as usize))
    }
}

/// Computes the ideal partition of the triple's triangles.
pub fn ideal_partition(
    g: &Graph,
    triple: &TilingTriple,
    opts: &PartitionOptions,
) -> Result<IdealPartition, TilingError> {
    triple.validate(g)?;
    let tris = &triple.triangles;
    // Matching-edge seers per triangle, as seen-vertex masks.
    let m_seen: Vec<Vec<u8>> = tris
        .iter()
        .map(|&tri| {
            triple
                .matching
                .iter()
                .filter_map(|e| {
                    let mask = edge_sees_fast(g, e[0] as usize, e[1] as usize, tri);
                    (mask != 0).then_some(mask)
                })
                .collect()
        })
        .collect();
    let mut t1 = Vec::new();
    let mut t1_masks: Vec<Vec<u8>> = Vec::new();
    let mut rest_idx = Vec::new();
    for (k, &tri) in tris.iter().enumerate() {
        if m_seen[k].len() >= 2 {
            t1.push(tri);
            t1_masks.push(m_seen[k].clone());
        } else {
            rest_idx.push(k);
        }
    }
    // T2 membership for the remaining triangles.
    let mut t2 = Vec::new();
    let mut d: Vec<[u16; 3]> = Vec::new();
    for &k in &rest_idx {
        let tri = tris[k];
        let t_seers = tris
            .iter()
            .enumerate()
            .filter(|&(j, &other)| j != k && triangle_sees(g, other, tri))
            .count();
        let m_count = m_seen[k].len();
        let mut i_seer = false;
        let mut i_cone = false;
        for &w in &triple.singletons {
            let adj = tri
                .iter()
                .filter(|&&v| g.has_edge(w as usize, v as usize))
                .count();
            i_seer |= adj >= 2;
            i_cone |= adj == 3;
        }
        let in_t2 = match opts.t2_rule {
            T2Rule::Disjunctive => t_seers >= 2 || (m_count == 1 && i_seer),
            T2Rule::DisjunctiveRequiringIota => (t_seers >= 2 || m_count == 1) && i_seer,
            T2Rule::MatchingAndIota => m_count == 1 && i_seer,
            T2Rule::IotaSeenNoCone => i_seer && !i_cone,
        };
        if in_t2 {
            t2.push(tri);
        } else {
            d.push(tri);
        }
    }
    // Peel T3 out of D: repeatedly remove the first candidate (in the scan
    // order) sending at most 8(|D|-1) edges to the rest of D, recomputing
    // after every removal.
    let scan_order: Vec<usize> = match &opts.peel_order {
        PeelOrder::Canonical => (0..d.len()).collect(),
        PeelOrder::Permuted(perm) => {
            let mut p: Vec<usize> = perm.iter().copied().filter(|&i| i < d.len()).collect();
            for i in 0..d.len() {
                if !p.contains(&i) {
                    p.push(i);
                }
            }
            p
        }
    };
    let mut in_d: Vec<bool> = vec![true; d.len()];
    let mut t3 = Vec::new();
    let mut d_size = d.len();
    loop {
        let mut moved = false;
        for &k in &scan_order {
            if !in_d[k] {
                continue;
            }
            let tri_set = VertexSet::from_iter(d[k].iter().map(|&v| v as usize));
            let others = VertexSet::from_iter(
                d.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k && in_d[j])
                    .flat_map(|(_, t)| t.iter().map(|&v| v as usize)),
            );
            let sends = g.edges_between(&tri_set, &others).expect("disjoint tiling parts");
            if sends <= 8 * (d_size - 1) {
                in_d[k] = false;
                d_size -= 1;
                t3.push(d[k]);
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    let t4: Vec<[u16; 3]> = d
        .iter()
        .enumerate()
        .filter(|&(j, _)| in_d[j])
        .map(|(_, &t)| t)
        .collect();
    // Critical vertices: the T1 vertex seen by the most matching edges,
    // ties to the lowest id (triangles are stored ascending).
    let mut critical = Vec::with_capacity(t1.len());
    let mut claim42_violated = false;
    let mut v_prime = VertexSet::EMPTY;
    let mut v_dprime = VertexSet::EMPTY;
    for (tri, masks) in t1.iter().zip(&t1_masks) {
        let mut counts = [0usize; 3];
        for &mask in masks {
            for (p, count) in counts.iter_mut().enumerate() {
                if mask >> p & 1 == 1 {
                    *count += 1;
                }
            }
        }
        let best = (0..3).max_by_key(|&p| (counts[p], std::cmp::Reverse(p))).unwrap();
        if masks.iter().any(|&mask| mask >> best & 1 == 0) {
            claim42_violated = true;
        }
        critical.push(tri[best]);
        v_dprime.insert(tri[best] as usize);
        for (p, &v) in tri.iter().enumerate() {
            if p != best {
                v_prime.insert(v as usize);
            }
        }
    }
    Ok(IdealPartition {
        t1,
        t2,
        t3,
        t4,
        critical,
        v_prime,
        v_dprime,
        claim42_violated,
    })
}

/// Counter vector (tau1..tau4, mu, iota) of a partitioned triple.
pub fn partition_stats(p: &IdealPartition, triple: &TilingTriple) -> PartitionStats {
    PartitionStats::new(
        p.t1.len() as u64,
        p.t2.len() as u64,
        p.t3.len() as u64,
        p.t4.len() as u64,
        triple.matching.len() as u64,
        triple.singletons.len() as u64,
    )
}

// ---------------------------------------------------------------------------
// Edge profile
// ---------------------------------------------------------------------------

pub const CLASS_NAMES: [&str; 6] = ["T1", "T2", "T3", "T4", "M", "I"];

/// Exact edge counts within and between the six vertex classes, plus the
/// derived quantities used by the structural claims.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeProfile {
    pub class_sizes: [usize; 6],
    /// Symmetric 6x6 matrix in class order T1,T2,T3,T4,M,I; the diagonal
    /// holds within-class counts.
    pub matrix: [[usize; 6]; 6],
    /// e(V' u V(M)), the graph H'.
    pub h_prime_edges: usize,
    /// e(V'')
    pub v_dprime_edges: usize,
    /// e(V'', V')
    pub v_dprime_to_v_prime: usize,
    /// e(V'', V(M))
    pub v_dprime_to_matching: usize,
}

pub fn part_edge_profile(g: &Graph, triple: &TilingTriple, p: &IdealPartition) -> EdgeProfile {
    let sets: [VertexSet; 6] = [
        p.class_vertices(0),
        p.class_vertices(1),
        p.class_vertices(2),
        p.class_vertices(3),
        triple.matching_vertices(),
        triple.singleton_vertices(),
    ];
    let mut matrix = [[0usize; 6]; 6];
    for i in 0..6 {
        matrix[i][i] = g.edges_within(&sets[i]);
        for j in i + 1..6 {
            let e = g.edges_between(&sets[i], &sets[j]).expect("classes are disjoint");
            matrix[i][j] = e;
            matrix[j][i] = e;
        }
    }
    let h_prime = p.v_prime.union(&sets[4]);
    EdgeProfile {
        class_sizes: std::array::from_fn(|i| sets[i].len()),
        matrix,
        h_prime_edges: g.edges_within(&h_prime),
        v_dprime_edges: g.edges_within(&p.v_dprime),
        v_dprime_to_v_prime: g
            .edges_between(&p.v_dprime, &p.v_prime)
            .expect("critical and non-critical vertices are disjoint"),
        v_dprime_to_matching: g
            .edges_between(&p.v_dprime, &sets[4])
            .expect("T1 and M vertices are disjoint"),
    }
}

impl EdgeProfile {
    /// Total over the partition-sum identity; equals the graph's edge count.
    pub fn total(&self) -> usize {
        let mut sum = 0;
        for i in 0..6 {
            for j in i..6 {
                sum += self.matrix[i][j];
            }
        }
        sum
    }
}
