//! Assertable encodings of the structural lemmas, facts, and claims, with
//! guard evaluation reported verbatim in every record.

use crate::formula::{poly_g, poly_h, PartitionStats};
use crate::graph::{Graph, VertexSet};
use crate::rainbow::{find_rainbow_tiling, representative_graph, EdgeColoring};
use crate::search::{Budget, SearchOutcome};
use crate::tiling::{
    ideal_partition, maximal_tiling_triple, part_edge_profile, partition_stats,
    IdealPartition, PartitionOptions, TilingTriple,
};
use serde::Serialize;

/// One checked bound. `holds` is vacuously true when the guard is off;
/// `informational` marks diagnostics that are never asserted.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub lhs: i64,
    pub rhs: i64,
    pub guard_satisfied: bool,
    pub holds: bool,
    pub informational: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LemmaReport {
    fn bound(lemma: impl Into<String>, lhs: i64, rhs: i64) -> Self {
        LemmaReport {
            lemma: lemma.into(),
            lhs,
            rhs,
            guard_satisfied: true,
            holds: lhs <= rhs,
            informational: false,
            note: None,
        }
    }

    fn guarded(lemma: impl Into<String>, guard: bool, lhs: i64, rhs: i64) -> Self {
        LemmaReport {
            lemma: lemma.into(),
            lhs,
            rhs,
            guard_satisfied: guard,
            holds: !guard || lhs <= rhs,
            informational: false,
            note: None,
        }
    }

    fn info(lemma: impl Into<String>, guard: bool, lhs: i64, rhs: i64, note: &str) -> Self {
        LemmaReport {
            lemma: lemma.into(),
            lhs,
            rhs,
            guard_satisfied: guard,
            holds: true,
            informational: true,
            note: Some(note.to_string()),
        }
    }

    /// A violated, asserted, guard-on bound.
    pub fn is_violation(&self) -> bool {
        self.guard_satisfied && !self.informational && !self.holds
    }
}

#[inline]
fn c2(k: i64) -> i64 {
    if k < 2 {
        0
    } else {
        k * (k - 1) / 2
    }
}

/// The per-part and cross-part bounds on a maximal tiling triple with an
/// ideal partition (the appendix lemma battery).
pub fn check_appendix_bounds(
    g: &Graph,
    triple: &TilingTriple,
    p: &IdealPartition,
) -> Vec<LemmaReport> {
    let profile = part_edge_profile(g, triple, p);
    let s = partition_stats(p, triple);
    let (t1, t2, t3, t4, m, i) = (
        s.tau1 as i64,
        s.tau2 as i64,
        s.tau3 as i64,
        s.tau4 as i64,
        s.mu as i64,
        s.iota as i64,
    );
    let e = |a: usize, b: usize| profile.matrix[a][b] as i64;
    const T1: usize = 0;
    const T2: usize = 1;
    const T3: usize = 2;
    const T4: usize = 3;
    const M: usize = 4;
    const I: usize = 5;
    let mut out = vec![
        LemmaReport::bound("A1.a e(I)=0", e(I, I), 0),
        LemmaReport::bound("A1.b e(I,M)<=im", e(I, M), i * m),
        LemmaReport::bound("A1.c e(M)<=m^2", e(M, M), m * m),
        LemmaReport::bound("A1.d e(M,T1)<=4mt1", e(M, T1), 4 * m * t1),
        LemmaReport::bound("A1.e e(I,T1)<=2it1", e(I, T1), 2 * i * t1),
        {
            // The printed item names e(I,T1) twice; the second occurrence
            // bounds e(T1), read with the +3t1 internal term.
            let mut r = LemmaReport::bound("A1.f e(T1)<=7C(t1,2)+3t1", e(T1, T1), 7 * c2(t1) + 3 * t1);
            r.note = Some("printed left side e(I,T1) read as e(T1)".to_string());
            r
        },
        LemmaReport::bound("A1.g e(I,T2)<=2it2", e(I, T2), 2 * i * t2),
        LemmaReport::bound("A1.h e(T2)<=8C(t2,2)+3t2", e(T2, T2), 8 * c2(t2) + 3 * t2),
        LemmaReport::bound(
            "A1.i e(T3)+e(T3,T4)<=8C(t3,2)+8t3t4+3t3",
            e(T3, T3) + e(T3, T4),
            8 * c2(t3) + 8 * t3 * t4 + 3 * t3,
        ),
    ];
    // A2: pair-class products, guarded on non-singleton left classes.
    for (j, tj, name) in [(T2, t2, "T2"), (T3, t3, "T3"), (T4, t4, "T4")] {
        out.push(LemmaReport::guarded(
            format!("A2.a e(T1,{name})<=7t1*{name}"),
            t1 != 1,
            e(T1, j),
            7 * t1 * tj,
        ));
    }
    for (j, tj, name) in [(T3, t3, "T3"), (T4, t4, "T4")] {
        out.push(LemmaReport::guarded(
            format!("A2.b e(T2,{name})<=8t2*{name}"),
            t2 != 1,
            e(T2, j),
            8 * t2 * tj,
        ));
    }
    // A3.a
    out.push(LemmaReport::bound(
        "A3.a e(T1,T2)+e(M,T2)",
        e(T1, T2) + e(M, T2),
        if m >= 1 { 7 * t1 * t2 + (2 + 3 * m) * t2 } else { 0 },
    ));
    // A3.b, j in {3,4}
    for (j, tj, name) in [(T3, t3, "T3"), (T4, t4, "T4")] {
        out.push(LemmaReport::bound(
            format!("A3.b e(T1,{name})+e(M,{name})"),
            e(T1, j) + e(M, j),
            if m >= 1 { 7 * t1 * tj + (3 + 3 * m) * tj } else { 0 },
        ));
    }
    // A3.c, j in {3,4}. The printed (2+i)t_j budget for the singleton side
    // fails on bare maximal triples once several singletons see one
    // triangle on a shared pair (smallest witness: a triangle plus three
    // singletons each adjacent to the same two corners). It is provable
    // when i <= 2 or when no T_j member has two singleton-seers, so that
    // is the guard; the unconditional per-triangle cap max(2i, 3) is
    // asserted alongside.
    let singles = triple.singleton_vertices();
    let seer_count = |tri: &[u16; 3]| -> i64 {
        triple
            .singletons
            .iter()
            .filter(|&&w| {
                tri.iter()
                    .filter(|&&v| g.has_edge(w as usize, v as usize))
                    .count()
                    >= 2
            })
            .count() as i64
    };
    for (j, tj, name, members) in [(T3, t3, "T3", &p.t3), (T4, t4, "T4", &p.t4)] {
        let max_seers = members.iter().map(&seer_count).max().unwrap_or(0);
        let mut r = LemmaReport::guarded(
            format!("A3.c e(T2,{name})+e(I,{name})"),
            i <= 2 || max_seers <= 1,
            e(T2, j) + e(I, j),
            if i >= 1 { 8 * t2 * tj + (2 + i) * tj } else { 0 },
        );
        if !r.guard_satisfied {
            r.note = Some(
                "printed budget needs i<=2 or single-seer triangles; cap below covers the rest"
                    .to_string(),
            );
        }
        out.push(r);
        let worst_iota = members
            .iter()
            .map(|tri| {
                let tri_set = VertexSet::from_iter(tri.iter().map(|&v| v as usize));
                g.edges_between(&singles, &tri_set).expect("classes disjoint") as i64
            })
            .max()
            .unwrap_or(0);
        out.push(LemmaReport::bound(
            format!("A3.c-cap e(I,T)<=max(2i,3) per {name} member"),
            worst_iota,
            (2 * i).max(3),
        ));
    }
    // A3.c refinement at t2 = 1: a T3/T4 triangle completely joined to the
    // T2 triangle admits at most i singleton edges.
    if t2 == 1 {
        let t2_set = p.class_vertices(1);
        let singles = triple.singleton_vertices();
        for tri in p.t3.iter().chain(p.t4.iter()) {
            let tri_set = VertexSet::from_iter(tri.iter().map(|&v| v as usize));
            let from_t2 = g.edges_between(&t2_set, &tri_set).expect("classes disjoint") as i64;
            let from_i = g.edges_between(&singles, &tri_set).expect("classes disjoint") as i64;
            out.push(LemmaReport::guarded(
                format!("A3.c-ref e(I,{tri:?})<=i when e(T2,{tri:?})=9"),
                from_t2 == 9,
                from_i,
                i,
            ));
        }
    }
    out
}

/// Guard expression of the sparse-T4 lemma, shared with its dense twin.
fn t4_sparse_threshold(t4: i64) -> i64 {
    8 * c2(t4) + 10 * t4 - 28
}

/// The discovered domain of the printed singleton budgets: i <= 2, or no
/// T3/T4 member is seen by two singletons. Outside it several singletons
/// can share one seen pair of a matching-unseen triangle, beating the
/// (2+i) budget that h and g inherit (smallest witness: an edge joined to
/// seven independent vertices).
fn iota_budget_guard(g: &Graph, triple: &TilingTriple, p: &IdealPartition) -> bool {
    if triple.singletons.len() <= 2 {
        return true;
    }
    p.t3.iter().chain(p.t4.iter()).all(|tri| {
        triple
            .singletons
            .iter()
            .filter(|&&w| {
                tri.iter()
                    .filter(|&&v| g.has_edge(w as usize, v as usize))
                    .count()
                    >= 2
            })
            .count()
            <= 1
    })
}

/// |H| <= h, |H| <= g under the sparse-T4 guard, and the dense-T4 h-bound
/// under its window guard — all three additionally under the iota-budget
/// guard their singleton terms require. The two unbounded-slack statements
/// are reported informationally.
pub fn check_global_bounds(
    g: &Graph,
    triple: &TilingTriple,
    p: &IdealPartition,
) -> Vec<LemmaReport> {
    let s = partition_stats(p, triple);
    let edges = g.edge_count() as i64;
    let h_val = poly_h(&s) as i64;
    let g_val = poly_g(&s) as i64;
    let t4 = s.tau4 as i64;
    let e_t4 = {
        let t4_set = p.class_vertices(3);
        g.edges_within(&t4_set) as i64
    };
    let iota_ok = iota_budget_guard(g, triple, p);
    let sparse = e_t4 <= t4_sparse_threshold(t4);
    let dense = e_t4 > t4_sparse_threshold(t4);
    let few_t4 = 3 * t4 < 2 * s.mu as i64 + s.iota as i64;
    let mut out = vec![
        LemmaReport::guarded("L2.1 |H|<=h", iota_ok, edges, h_val),
        LemmaReport::guarded("L2.4 |H|<=g when e(T4) sparse", iota_ok && sparse, edges, g_val),
        LemmaReport::guarded(
            "L2.5i |H|<=h when e(T4) dense and 3t4<2m+i",
            iota_ok && dense && few_t4,
            edges,
            h_val,
        ),
    ];
    // 2.5(ii)(iii) carry unspecified O(n) slack; emit measurements only.
    let t = (s.tau1 + s.tau2 + s.tau3 + s.tau4) as i64 - 1;
    if t >= 0 {
        let n = g.n() as i64;
        let e1 = crate::formula::piecewise::e1_formula(n as i128, t as i128) as i64;
        out.push(LemmaReport::info(
            "L2.5ii slack vs e1(n,t)",
            dense && 3 * t4 == 2 * s.mu as i64 + s.iota as i64,
            edges,
            e1,
            "informational: bound carries unspecified O(n) slack",
        ));
        out.push(LemmaReport::info(
            "L2.5iii slack vs branch-2 form",
            dense && 3 * t4 > 2 * s.mu as i64 + s.iota as i64,
            edges,
            c2(2 * t + 1) + (2 * t + 1) * (n - 2 * t - 1),
            "informational: bound carries unspecified O(n) slack",
        ));
    }
    out
}

/// Triangle-free graphs with minimum degree above 2n/5 are bipartite.
pub fn check_aes(g: &Graph) -> LemmaReport {
    let n = g.n() as i64;
    let triangle_free = g.is_triangle_free();
    let degree_ok = 5 * g.min_degree() as i64 > 2 * n;
    let guard = triangle_free && degree_ok;
    LemmaReport {
        lemma: "AES bipartite".to_string(),
        lhs: g.min_degree() as i64,
        rhs: 2 * n / 5,
        guard_satisfied: guard,
        holds: !guard || g.is_bipartite(),
        informational: false,
        note: None,
    }
}

/// The three stability windows, reported as a diagnostic with precondition
/// status; never asserted (large-n statement).
#[derive(Clone, Debug, Serialize)]
pub struct StabilityRecord {
    pub n: usize,
    pub t: u64,
    pub edge_count: usize,
    pub expected_edges: Option<i64>,
    pub precondition_met: Option<bool>,
    pub stats: Option<PartitionStats>,
    pub t1_window: Option<bool>,
    pub m_window: Option<bool>,
    pub i_window: Option<bool>,
    pub boundary_flags: Vec<String>,
    pub indeterminate: bool,
}

pub fn check_stability_predicates(g: &Graph, t: u64, budget: u64) -> StabilityRecord {
    let n = g.n();
    let mut rec = StabilityRecord {
        n,
        t,
        edge_count: g.edge_count(),
        expected_edges: None,
        precondition_met: None,
        stats: None,
        t1_window: None,
        m_window: None,
        i_window: None,
        boundary_flags: Vec::new(),
        indeterminate: false,
    };
    let expected = crate::formula::ex_abhp(&crate::formula::ProblemParams { n: n as u64, t })
        .map(|v| v.value + 2)
        .ok();
    rec.expected_edges = expected;
    let mut budget_counter = Budget::new(budget);
    let free = match crate::tiling::has_tiling_of_size(g, t as usize + 2, &mut budget_counter) {
        SearchOutcome::Complete(found) => !found,
        SearchOutcome::Indeterminate { .. } => {
            rec.indeterminate = true;
            return rec;
        }
    };
    rec.precondition_met = Some(free && expected == Some(rec.edge_count as i64));
    let triple = match maximal_tiling_triple(g, budget) {
        SearchOutcome::Complete(t) => t,
        SearchOutcome::Indeterminate { .. } => {
            rec.indeterminate = true;
            return rec;
        }
    };
    let p = match ideal_partition(g, &triple, &PartitionOptions::default()) {
        Ok(p) => p,
        Err(_) => {
            rec.indeterminate = true;
            return rec;
        }
    };
    let s = partition_stats(&p, &triple);
    rec.stats = Some(s);
    let (t1, m, i) = (s.tau1 as i64, s.mu as i64, s.iota as i64);
    let t = t as i64;
    let n = n as i64;
    rec.t1_window = Some(t - 1 <= t1 && t1 <= t + 1);
    // m in ((n-3(t+1))/2 - sqrt(2n)/2, (n-3(t+1))/2]  <=>  2m <= n-3(t+1)
    // and (n-3(t+1)-2m)^2 < 2n. Exact squared comparisons throughout.
    let r = n - 3 * (t + 1) - 2 * m;
    rec.m_window = Some(2 * m <= n - 3 * (t + 1) && r >= 0 && r * r < 2 * n);
    rec.i_window = Some(i * i < 2 * n);
    if t1 == t - 1 || t1 == t + 1 {
        rec.boundary_flags.push("t1 at window edge".to_string());
    }
    if r * r == 2 * n || (i * i == 2 * n) {
        rec.boundary_flags.push("sqrt(2n) boundary attained".to_string());
    }
    if 2 * m == n - 3 * (t + 1) {
        rec.boundary_flags.push("m at upper endpoint".to_string());
    }
    rec
}

/// Claims about representative graphs of rainbow-(t+2)K3-free colorings.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimsReport {
    /// None when the caller asked to assume the precondition.
    pub precondition_rainbow_free: Option<bool>,
    pub precondition_indeterminate: bool,
    pub stats: Option<PartitionStats>,
    pub reports: Vec<LemmaReport>,
}

pub fn check_representative_claims(
    c: &EdgeColoring,
    t: u64,
    budget: u64,
    assume_precondition: bool,
) -> ClaimsReport {
    let mut out = ClaimsReport {
        precondition_rainbow_free: None,
        precondition_indeterminate: false,
        stats: None,
        reports: Vec::new(),
    };
    if !assume_precondition {
        match find_rainbow_tiling(c, t as usize + 2, budget) {
            Ok(SearchOutcome::Complete(w)) => {
                out.precondition_rainbow_free = Some(w.is_none());
            }
            Ok(SearchOutcome::Indeterminate { .. }) | Err(_) => {
                out.precondition_indeterminate = true;
                return out;
            }
        }
    }
    // When the precondition fails, the claims are computed anyway but
    // reported informationally (guard off).
    let precondition_ok = out.precondition_rainbow_free.unwrap_or(true);
    let h = representative_graph(c);
    let triple = match maximal_tiling_triple(&h, budget) {
        SearchOutcome::Complete(t) => t,
        SearchOutcome::Indeterminate { .. } => {
            out.precondition_indeterminate = true;
            return out;
        }
    };
    let p = ideal_partition(&h, &triple, &PartitionOptions::default())
        .expect("triple from maximal_tiling_triple is valid");
    let s = partition_stats(&p, &triple);
    out.stats = Some(s);
    out.reports = claims_on_partition(&h, &triple, &p, precondition_ok);
    out
}

fn claims_on_partition(
    h: &Graph,
    triple: &TilingTriple,
    p: &IdealPartition,
    precondition_ok: bool,
) -> Vec<LemmaReport> {
    let mut reports = Vec::new();
    // Claim 4.1 (measurement): two matching edges spanning a C4.
    let mut c4_found = false;
    'outer: for (a, e1) in triple.matching.iter().enumerate() {
        for e2 in triple.matching.iter().skip(a + 1) {
            let (u1, v1) = (e1[0] as usize, e1[1] as usize);
            let (u2, v2) = (e2[0] as usize, e2[1] as usize);
            let parallel =
                (h.has_edge(u1, u2) && h.has_edge(v1, v2)) || (h.has_edge(u1, v2) && h.has_edge(v1, u2));
            if parallel {
                c4_found = true;
                break 'outer;
            }
        }
    }
    reports.push(LemmaReport::info(
        "C4.1 two M-edges span a C4",
        precondition_ok,
        c4_found as i64,
        1,
        "measurement: existence hypothesis needs |H| = N and large n",
    ));
    // Claim 4.2: all matching edges seeing a T1 triangle see one common
    // vertex (the critical vertex).
    reports.push(LemmaReport::guarded(
        "C4.2 seeing M-edges share the critical vertex",
        precondition_ok && !p.t1.is_empty(),
        p.claim42_violated as i64,
        0,
    ));
    // Claim 4.3 consequence: a non-critical vertex of one T1 triangle sends
    // at most 2 edges to any other T1 triangle.
    let mut worst = 0i64;
    for (a, tri_a) in p.t1.iter().enumerate() {
        let crit_a = p.critical[a];
        for (b, tri_b) in p.t1.iter().enumerate() {
            if a == b {
                continue;
            }
            let target = VertexSet::from_iter(tri_b.iter().map(|&v| v as usize));
            for &v in tri_a.iter().filter(|&&v| v != crit_a) {
                let mut sent = VertexSet::EMPTY;
                sent.insert(v as usize);
                let cnt = h.edges_between(&sent, &target).expect("disjoint triangles") as i64;
                worst = worst.max(cnt);
            }
        }
    }
    reports.push(LemmaReport::guarded(
        "C4.3 non-critical vertex sends <=2 into another T1 triangle",
        precondition_ok && p.t1.len() >= 2,
        worst,
        2,
    ));
    // Claim 4.4 (measurement): at most two T1 triangles seen by fewer than
    // eps*n matching edges, eps = 10^-3.
    let n = h.n() as i64;
    let mut weakly_seen = 0i64;
    for tri in &p.t1 {
        let seers = triple
            .matching
            .iter()
            .filter(|e| {
                let common = h
                    .neighbors(e[0] as usize)
                    .intersect(h.neighbors(e[1] as usize));
                tri.iter().any(|&v| common.contains(v as usize))
            })
            .count() as i64;
        // seers < n/1000, exactly.
        if 1000 * seers < n {
            weakly_seen += 1;
        }
    }
    reports.push(LemmaReport::info(
        "C4.4 at most two weakly seen T1 triangles",
        precondition_ok,
        weakly_seen,
        2,
        "measurement: hypothesis involves |H| = N and large n",
    ));
    // Claim 4.5: H' = H[V' u V(M)] is triangle-free.
    let h_prime = p.v_prime.union(&triple.matching_vertices());
    let triangle = h.triangle_in_subset(&h_prime);
    let mut r = LemmaReport::guarded(
        "C4.5 H' is triangle-free",
        precondition_ok,
        triangle.is_some() as i64,
        0,
    );
    if let Some(tri) = triangle {
        r.note = Some(format!("triangle {tri:?} inside V' u V(M)"));
    }
    reports.push(r);
    reports
}

/// Search record for the large complete tripartite subgraph statement.
#[derive(Clone, Debug, Serialize)]
pub struct TripartiteRecord {
    pub t1: usize,
    pub m: usize,
    pub target: (usize, usize, usize),
    /// None when the guard is vacuous at this scale (t1 <= 10).
    pub found: Option<bool>,
    pub note: String,
}

/// Diagnostic: look for K_{t1-10, m+t1-10, m+t1-10} inside
/// H[V(T1) u V(M)], mirroring the delete-an-endpoint argument.
pub fn check_tripartite_theorem(c: &EdgeColoring, budget: u64) -> TripartiteRecord {
    let h = representative_graph(c);
    let triple = match maximal_tiling_triple(&h, budget) {
        SearchOutcome::Complete(t) => t,
        SearchOutcome::Indeterminate { .. } => {
            return TripartiteRecord {
                t1: 0,
                m: 0,
                target: (0, 0, 0),
                found: None,
                note: "tiling search exhausted its budget".to_string(),
            }
        }
    };
    let p = ideal_partition(&h, &triple, &PartitionOptions::default())
        .expect("triple from maximal_tiling_triple is valid");
    let t1 = p.t1.len();
    let m = triple.matching.len();
    if t1 <= 10 {
        return TripartiteRecord {
            t1,
            m,
            target: (0, 0, 0),
            found: None,
            note: "vacuous at this scale: t1 <= 10".to_string(),
        };
    }
    let target = (t1 - 10, m + t1 - 10, m + t1 - 10);
    let h_prime = p.v_prime.union(&triple.matching_vertices());
    let Some((side_a, side_b)) = h.bipartition_of_subset(&h_prime) else {
        return TripartiteRecord {
            t1,
            m,
            target,
            found: Some(false),
            note: "H' is not bipartite".to_string(),
        };
    };
    let found = tripartite_search(&h, &p.v_dprime, &side_a, &side_b, target);
    TripartiteRecord {
        t1,
        m,
        target,
        found: Some(found.is_some()),
        note: "deletion search over (V'', A, B)".to_string(),
    }
}

/// Greedy endpoint-deletion search for a complete tripartite subgraph with
/// the given part sizes inside (part0, a, b); edges within part0 ignored.
/// Mirrors the proof's delete-one-endpoint-per-missing-edge argument, which
/// is exact whenever few cross pairs are missing.
pub fn tripartite_search(
    g: &Graph,
    part0: &VertexSet,
    a: &VertexSet,
    b: &VertexSet,
    target: (usize, usize, usize),
) -> Option<(VertexSet, VertexSet, VertexSet)> {
    let mut parts = [*part0, *a, *b];
    loop {
        if parts[0].len() < target.0 || parts[1].len() < target.1 || parts[2].len() < target.2 {
            return None;
        }
        // Count missing cross-pair incidences per vertex.
        let mut worst: Option<(usize, usize)> = None; // (missing count, vertex)
        let mut any_missing = false;
        for x in 0..3 {
            for y in x + 1..3 {
                for u in parts[x].iter() {
                    let missing = parts[y].len() - g.neighbors(u).intersect(&parts[y]).len();
                    if missing > 0 {
                        any_missing = true;
                        if worst.is_none_or(|(w, _)| missing > w) {
                            worst = Some((missing, u));
                        }
                    }
                }
                for u in parts[y].iter() {
                    let missing = parts[x].len() - g.neighbors(u).intersect(&parts[x]).len();
                    if missing > 0 {
                        any_missing = true;
                        if worst.is_none_or(|(w, _)| missing > w) {
                            worst = Some((missing, u));
                        }
                    }
                }
            }
        }
        if !any_missing {
            return Some((parts[0], parts[1], parts[2]));
        }
        let (_, v) = worst.expect("missing pair implies a worst vertex");
        for part in parts.iter_mut() {
            part.remove(v);
        }
    }
}
