//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line. Exact formula and identity verification, construction
//! properties, decomposition correctness, and oracle equivalence; the
//! large-n structure theorems are covered as diagnostics elsewhere.

use rainbow_ch::construct::{
    build_construction, closed_form_edges, verify_lower_bound_coloring, ConstructionSpec, Family,
};
use rainbow_ch::formula::facts::{Fact, FactScanConfig};
use rainbow_ch::formula::poly::{check_identity, IdentityId};
use rainbow_ch::formula::{
    scan_fact_inequalities, xi_from_constructions, xi_piecewise, PartitionStats, ProblemParams,
};
use rainbow_ch::graph::{Graph, VertexSet};
use rainbow_ch::lemmas::check_representative_claims;
use rainbow_ch::oracle::{
    ar_oracle, ex_oracle, isomorphic_small, ArOracleOptions, ArOracleOutcome, ExOracleOptions,
    ExOracleOutcome,
};
use rainbow_ch::rainbow::find_rainbow_tiling;
use rainbow_ch::scan::{graph_from_mask, random_graph, scan_for_counterexamples, ScanConfig};
use rainbow_ch::search::{SearchOutcome, DEFAULT_BUDGET};
use rainbow_ch::tiling::maximal_tiling_triple;
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

fn verdict(criterion: &str, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion}: {detail}");
}

/// Criterion 1: for every valid (family, n, t) with n <= 200 the built
/// edge count equals the closed form exactly.
#[test]
fn c1_construction_fidelity() {
    use rayon::prelude::*;
    let mismatches: Vec<String> = (3..=200u64)
        .into_par_iter()
        .flat_map_iter(|n| {
            let mut bad = Vec::new();
            for t in 0..=n / 3 {
                for family in Family::ALL {
                    let spec = ConstructionSpec::new(family, n, t);
                    let Ok(built) = build_construction(&spec) else { continue };
                    let want = closed_form_edges(&spec).expect("valid spec has a closed form");
                    if built.graph.edge_count() as i64 != want {
                        bad.push(format!(
                            "{family}({n},{t}): built {} vs closed {want}",
                            built.graph.edge_count()
                        ));
                    }
                }
            }
            bad
        })
        .collect();
    verdict(
        "1 construction fidelity",
        mismatches.is_empty(),
        &format!("all families, n <= 200; mismatches: {mismatches:?}"),
    );
}

/// Criterion 2: the six h-identities and both g-identities hold exactly at
/// 10^4 random admissible points each.
#[test]
fn c2_identity_suite() {
    let mut rng = SmallRng::seed_from_u64(2);
    let mut checked = 0u64;
    let mut failures = 0u64;
    for id in IdentityId::ALL {
        let mut points = 0u64;
        while points < 10_000 {
            let s = PartitionStats::new(
                rng.random_range(0..50),
                rng.random_range(0..50),
                rng.random_range(0..50),
                rng.random_range(0..50),
                rng.random_range(0..80),
                rng.random_range(0..80),
            );
            let x = rng.random_range(0..25);
            let Ok(v) = check_identity(id, &s, x) else { continue };
            points += 1;
            checked += 1;
            if !v.holds {
                failures += 1;
            }
        }
    }
    verdict(
        "2 identity suite",
        failures == 0,
        &format!("{checked} exact evaluations, {failures} failures"),
    );
}

/// Criterion 3: piecewise formula equals the max over built constructions
/// at every integer t at distance >= 2 from the interval boundaries, for
/// n in 60..=200; boundary-adjacent integers may disagree at most twice
/// per n.
#[test]
fn c3_piecewise_construction_agreement() {
    use rayon::prelude::*;
    let results: Vec<(u64, Vec<String>, u64)> = (60..=200u64)
        .into_par_iter()
        .map(|n| {
            let mut interior_mismatches = Vec::new();
            let mut boundary_mismatches = 0u64;
            for t in 0..=n / 3 {
                let p = ProblemParams::new(n, t).expect("t <= n/3");
                let (Ok(a), Ok(b)) = (xi_piecewise(&p), xi_from_constructions(&p)) else {
                    continue;
                };
                if rainbow_ch::formula::piecewise::xi_interior_point(n, t) {
                    if a.value != b.value {
                        interior_mismatches.push(format!(
                            "({n},{t}): formula {} vs constructions {}",
                            a.value, b.value
                        ));
                    }
                } else if a.value != b.value {
                    boundary_mismatches += 1;
                }
            }
            (n, interior_mismatches, boundary_mismatches)
        })
        .collect();
    let interior: Vec<&String> = results.iter().flat_map(|(_, m, _)| m).collect();
    let worst_boundary = results.iter().map(|&(_, _, b)| b).max().unwrap_or(0);
    let pass = interior.is_empty() && worst_boundary <= 2;
    verdict(
        "3 piecewise-construction agreement",
        pass,
        &format!(
            "n in 60..=200; interior mismatches {:?}; max boundary discrepancies per n = {worst_boundary}",
            interior
        ),
    );
}

/// Criterion 4: the inequality facts show zero violations over 10^6
/// sampled admissible tuples each, at n >= 3000.
#[test]
fn c4_fact_scans() {
    let mut all = Vec::new();
    for fact in [Fact::F22a, Fact::F22b, Fact::F23, Fact::F41, Fact::F42] {
        let cfg = FactScanConfig {
            samples: 1_000_000,
            seed: 4,
            workers: 4,
            ..Default::default()
        };
        let rep = scan_fact_inequalities(fact, &cfg).expect("scan runs");
        all.push((fact, rep.samples_checked, rep.violations.len()));
    }
    let pass = all.iter().all(|&(_, _, v)| v == 0);
    verdict(
        "4 fact scans",
        pass,
        &all.iter()
                .map(|(f, s, v)| format!("{f}: {s} samples {v} violations"))
                .collect::<Vec<_>>()
                .join("; ").to_string(),
    );
}

/// Criterion 5a: exact Turán oracle values with the extremal witness.
#[test]
fn c5a_ex_oracle_ground_truth() {
    let opts = ExOracleOptions::default();
    let r62 = match ex_oracle(6, 2, &opts).expect("oracle runs") {
        ExOracleOutcome::Complete(r) => r,
        other => panic!("ex(6,2) indeterminate: {other:?}"),
    };
    let gamma2 = build_construction(&ConstructionSpec::new(Family::G2, 6, 1)).unwrap();
    let iso = isomorphic_small(&r62.witness, &gamma2.graph);
    let abhp = rainbow_ch::formula::ex_abhp(&ProblemParams::new(6, 1).unwrap())
        .unwrap()
        .value;
    let r51 = match ex_oracle(5, 1, &opts).expect("oracle runs") {
        ExOracleOutcome::Complete(r) => r,
        other => panic!("ex(5,1) indeterminate: {other:?}"),
    };
    let pass = r62.value == 12 && iso && abhp == 12 && r51.value == 6;
    verdict(
        "5a Turán oracle",
        pass,
        &format!(
            "ex(6,2)={} witness-iso-to-K6-minus-triangle={iso} abhp(6,1)={abhp} ex(5,1)={}",
            r62.value, r51.value
        ),
    );
}

/// Criterion 5b: the anti-Ramsey oracle terminates, lands in the sandwich
/// [ex(6,1)+2, ex(6,2)+1] = [11,13], and its witness coloring at ar-1
/// colors is verified rainbow-free.
#[test]
fn c5b_ar_oracle_sandwich() {
    let opts = ArOracleOptions {
        workers: 8,
        budget: 50_000_000_000,
        ..Default::default()
    };
    let r = match ar_oracle(6, 2, &opts).expect("oracle runs") {
        ArOracleOutcome::Complete(r) => r,
        ArOracleOutcome::Indeterminate { nodes_used, sandwich, best_known } => {
            verdict(
                "5b anti-Ramsey oracle",
                false,
                &format!(
                    "indeterminate after {nodes_used} nodes (sandwich {sandwich:?}, best {best_known})"
                ),
            );
            return;
        }
    };
    let witness_free = matches!(
        find_rainbow_tiling(&r.witness, 2, DEFAULT_BUDGET).expect("s in range"),
        SearchOutcome::Complete(None)
    );
    let pass = (11..=13).contains(&r.ar)
        && r.sandwich == (11, 13)
        && r.witness.num_colors() == r.ar - 1
        && witness_free;
    verdict(
        "5b anti-Ramsey oracle",
        pass,
        &format!(
            "ar(6,2K3)={} sandwich {:?}, witness {} colors rainbow-free={witness_free}, {} nodes",
            r.ar,
            r.sandwich,
            r.witness.num_colors(),
            r.nodes_used
        ),
    );
}

/// Criterion 6: the lower-bound colorings admit no rainbow (t+2)K3,
/// exhaustively, for every valid family at the three stated sizes.
#[test]
fn c6_lower_bound_colorings() {
    use rayon::prelude::*;
    let mut cases = Vec::new();
    for &(n, t) in &[(15u64, 1u64), (18, 2), (20, 1)] {
        for family in [Family::E1, Family::E2, Family::E3, Family::E4, Family::E5] {
            let spec = ConstructionSpec::new(family, n, t);
            if build_construction(&spec).is_ok() {
                cases.push(spec);
            }
        }
    }
    let results: Vec<(String, bool)> = cases
        .par_iter()
        .map(|spec| {
            let label = format!("{}({},{})", spec.family, spec.n, spec.t);
            match verify_lower_bound_coloring(spec, 50_000_000_000) {
                Ok(SearchOutcome::Complete(v)) => (label, v.rainbow_free),
                other => (format!("{label}: {other:?}"), false),
            }
        })
        .collect();
    let failures: Vec<&String> = results.iter().filter(|(_, ok)| !ok).map(|(l, _)| l).collect();
    verdict(
        "6 lower-bound colorings",
        failures.is_empty(),
        &format!("{} cases exhaustively rainbow-free; failures: {failures:?}", results.len()),
    );
}

/// Unpruned exhaustive oracle for the lexicographic tiling value: every
/// disjoint triangle subset, every matching of the remainder, no cuts.
fn oracle_lex_value(g: &Graph) -> (usize, usize) {
    let tris = g.triangles();
    fn max_tiling(tris: &[[u16; 3]], from: usize, used: VertexSet, count: usize, best: &mut usize) {
        *best = (*best).max(count);
        for i in from..tris.len() {
            if tris[i].iter().any(|&v| used.contains(v as usize)) {
                continue;
            }
            let mut next = used;
            for &v in &tris[i] {
                next.insert(v as usize);
            }
            max_tiling(tris, i + 1, next, count + 1, best);
        }
    }
    fn naive_matching(g: &Graph, avail: VertexSet) -> usize {
        let Some(v) = avail.first() else { return 0 };
        let mut rest = avail;
        rest.remove(v);
        let mut best = naive_matching(g, rest);
        for u in g.neighbors(v).intersect(&rest).iter() {
            let mut rest2 = rest;
            rest2.remove(u);
            best = best.max(1 + naive_matching(g, rest2));
        }
        best
    }
    fn best_matching_over_tilings(
        g: &Graph,
        tris: &[[u16; 3]],
        from: usize,
        used: VertexSet,
        count: usize,
        target: usize,
        best_m: &mut usize,
    ) {
        if count == target {
            let remainder = g.vertex_set().minus(&used);
            *best_m = (*best_m).max(naive_matching(g, remainder));
            return;
        }
        for i in from..tris.len() {
            if tris[i].iter().any(|&v| used.contains(v as usize)) {
                continue;
            }
            let mut next = used;
            for &v in &tris[i] {
                next.insert(v as usize);
            }
            best_matching_over_tilings(g, tris, i + 1, next, count + 1, target, best_m);
        }
    }
    let mut tstar = 0;
    max_tiling(&tris, 0, VertexSet::EMPTY, 0, &mut tstar);
    let mut mstar = 0;
    best_matching_over_tilings(g, &tris, 0, VertexSet::EMPTY, 0, tstar, &mut mstar);
    (tstar, mstar)
}

/// Criterion 7: the maximal triple matches the unpruned exhaustive
/// enumeration on 500 random graphs with n <= 12, in both components.
#[test]
fn c7_decomposition_correctness() {
    use rayon::prelude::*;
    let mismatches: Vec<String> = (0..500u64)
        .into_par_iter()
        .filter_map(|k| {
            let mut rng = SmallRng::seed_from_u64(700 + k);
            let n = rng.random_range(6..=12);
            let p = [0.2, 0.5, 0.8][rng.random_range(0..3)];
            let g = random_graph(n, p, &mut rng);
            let triple = maximal_tiling_triple(&g, DEFAULT_BUDGET)
                .complete()
                .expect("small graphs complete");
            let got = (triple.triangles.len(), triple.matching.len());
            let want = oracle_lex_value(&g);
            (got != want).then(|| format!("{}: got {got:?} want {want:?}", g.to_graph6()))
        })
        .collect();
    verdict(
        "7 decomposition correctness",
        mismatches.is_empty(),
        &format!("500 random graphs vs unpruned oracle; mismatches: {mismatches:?}"),
    );
}

/// Criterion 8: zero violations of the guarded bound battery over every
/// graph on 6 vertices plus 10^5 random graphs on 7..12 vertices, with
/// peel-order verdict invariance throughout.
#[test]
fn c8_lemma_scan() {
    let mut cfg = ScanConfig::exhaustive(6);
    cfg.workers = 8;
    let exhaustive = scan_for_counterexamples(&cfg);
    let mut cfg = ScanConfig::random(7, 12, 100_000, 8);
    cfg.workers = 8;
    let random = scan_for_counterexamples(&cfg);
    let pass = exhaustive.violations.is_empty()
        && random.violations.is_empty()
        && exhaustive.peel_sensitivities.is_empty()
        && random.peel_sensitivities.is_empty()
        && exhaustive.indeterminate_instances == 0
        && random.indeterminate_instances == 0
        && exhaustive.instances == 32_768
        && random.instances == 100_000;
    verdict(
        "8 lemma scan",
        pass,
        &format!(
            "exhaustive n=6: {} instances {} violations; random: {} instances {} violations; \
sensitivities {}+{}; guard-off (printed combined budget, reported not asserted): {}+{}",
            exhaustive.instances,
            exhaustive.violations.len(),
            random.instances,
            random.violations.len(),
            exhaustive.peel_sensitivities.len(),
            random.peel_sensitivities.len(),
            exhaustive.guard_off_failures,
            random.guard_off_failures,
        ),
    );
}

/// Criterion 9: every triangle-free graph on n <= 7 with minimum degree
/// above 2n/5 is bipartite, exhaustively.
#[test]
fn c9_aes_exhaustive() {
    use rayon::prelude::*;
    let mut counterexamples = 0u64;
    let mut guarded = 0u64;
    for n in 3..=7usize {
        let total = 1u64 << (n * (n - 1) / 2);
        let (g_count, c_count): (u64, u64) = (0..total)
            .into_par_iter()
            .fold(
                || (0u64, 0u64),
                |(mut gg, mut cc), mask| {
                    let g = graph_from_mask(n, mask);
                    if 5 * g.min_degree() > 2 * n && g.is_triangle_free() {
                        gg += 1;
                        if !g.is_bipartite() {
                            cc += 1;
                        }
                    }
                    (gg, cc)
                },
            )
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        guarded += g_count;
        counterexamples += c_count;
    }
    verdict(
        "9 AES exhaustive",
        counterexamples == 0,
        &format!("{guarded} guarded triangle-free graphs on n <= 7, {counterexamples} non-bipartite"),
    );
}

/// Criterion 10: the structural claims hold on every guarded instance of
/// the representative graphs of the stated lower-bound colorings.
#[test]
fn c10_representative_claims() {
    let mut lines = Vec::new();
    let mut pass = true;
    for &(n, t) in &[(15u64, 1u64), (18, 2)] {
        let spec = ConstructionSpec::new(Family::E1, n, t);
        let coloring = rainbow_ch::construct::build_lower_bound_coloring(&spec).unwrap();
        let rep = check_representative_claims(&coloring, t, 50_000_000_000, false);
        pass &= rep.precondition_rainbow_free == Some(true);
        pass &= !rep.precondition_indeterminate;
        for r in &rep.reports {
            if r.is_violation() {
                pass = false;
                lines.push(format!("E1({n},{t}) {}: lhs={} rhs={}", r.lemma, r.lhs, r.rhs));
            }
        }
        let asserted = rep
            .reports
            .iter()
            .filter(|r| !r.informational && r.guard_satisfied)
            .count();
        lines.push(format!(
            "E1({n},{t}): precondition {:?}, {asserted} guarded claims hold",
            rep.precondition_rainbow_free
        ));
    }
    verdict("10 representative claims", pass, &lines.join("; "));
}
