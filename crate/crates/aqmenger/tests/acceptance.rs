//! Acceptance suite: one test per numbered criterion, each printing a
//! pass/fail line. Run `cargo test --test acceptance -- --nocapture` to see
//! every line; tests are ordered c01..c11 by name.

use std::time::{Duration, Instant};

use aqmenger::campaign::{run_campaign, CampaignConfig, CampaignMode, Target};
use aqmenger::{
    disjoint_path_count, is_strongly_menger, make_graph, min_cut, random_fault_set, AqGraph,
    CutSet, DisjointMode, EdgeId, FaultSet, FaultVariant, VertexId,
};

const JOBS: usize = 2;

fn pass(name: &str, detail: &str, elapsed: Duration) {
    println!(
        "[acceptance] {name}: PASS ({detail}, {:.2}s)",
        elapsed.as_secs_f64()
    );
}

fn assert_within(name: &str, elapsed: Duration, limit: Duration) {
    assert!(
        elapsed <= limit,
        "{name} took {:.2}s, over the {:.0}s limit",
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
}

// -------------------------------------------------------------------------
// c01: structure — |V| = k^n, regular degree, cross-edge counts
// -------------------------------------------------------------------------

#[test]
fn c01_structure() {
    let start = Instant::now();
    for (n, k) in [(1u8, 3u8), (1, 5), (2, 3), (2, 4), (2, 5), (3, 3), (3, 4)] {
        let g = make_graph(n, k).unwrap();
        assert_eq!(g.vertex_count(), (k as usize).pow(n as u32), "n={n} k={k}");
        let degree = if n >= 2 { 4 * n as usize - 2 } else { 2 };
        for u in g.vertex_ids() {
            assert_eq!(g.neighbors(u).len(), degree, "degree at n={n} k={k}");
        }
        if n >= 2 {
            let expected = 2 * (k as usize).pow(n as u32 - 1);
            for i in 0..k {
                let j = (i + 1) % k;
                let mut count = 0;
                for e in 0..g.edge_count() as u32 {
                    let (a, b) = g.edge_endpoints(EdgeId(e));
                    let (sa, sb) = (g.subcube_of(a), g.subcube_of(b));
                    if (sa == i && sb == j) || (sa == j && sb == i) {
                        count += 1;
                    }
                }
                assert_eq!(count, expected, "cross edges {i}-{j} at n={n} k={k}");
            }
        }
    }
    let elapsed = start.elapsed();
    assert_within("c01", elapsed, Duration::from_secs(1));
    pass("c01 structure", "7 parameter pairs", elapsed);
}

// -------------------------------------------------------------------------
// c02: global vertex and edge connectivity equal 4n-2 via all-pairs min cut
// -------------------------------------------------------------------------

#[test]
fn c02_connectivity() {
    let start = Instant::now();
    for (n, k) in [(2u8, 3u8), (2, 4), (2, 5), (3, 3)] {
        let g = make_graph(n, k).unwrap();
        let expected = 4 * n as usize - 2;
        let no_vertex_faults = FaultSet::empty(FaultVariant::Vertex, "none");
        let no_edge_faults = FaultSet::empty(FaultVariant::Edge, "none");

        let mut kappa = usize::MAX;
        let mut lambda = usize::MAX;
        for u in 0..g.vertex_count() as u32 {
            for v in u + 1..g.vertex_count() as u32 {
                let (u, v) = (VertexId(u), VertexId(v));
                if !g.are_adjacent(u, v) {
                    let cut = min_cut(&g, &no_vertex_faults, u, v).unwrap();
                    kappa = kappa.min(cut.len());
                }
                let cut = min_cut(&g, &no_edge_faults, u, v).unwrap();
                lambda = lambda.min(cut.len());
            }
        }
        assert_eq!(kappa, expected, "vertex connectivity at n={n} k={k}");
        assert_eq!(lambda, expected, "edge connectivity at n={n} k={k}");

        // removing one minimum cut really separates its pair
        let (u, v) = (VertexId(0), {
            let far = (0..g.vertex_count() as u32)
                .find(|&x| x != 0 && !g.are_adjacent(VertexId(0), VertexId(x)))
                .unwrap();
            VertexId(far)
        });
        if let CutSet::Vertices(vs) = min_cut(&g, &no_vertex_faults, u, v).unwrap() {
            let f = FaultSet::vertices(&g, vs, "cut").unwrap();
            assert_eq!(
                disjoint_path_count(&g, &f, DisjointMode::Vertex, u, v).unwrap(),
                0
            );
        } else {
            panic!("expected a vertex cut");
        }
    }
    let elapsed = start.elapsed();
    assert_within("c02", elapsed, Duration::from_secs(60));
    pass("c02 connectivity", "kappa = lambda = 4n-2 on 4 graphs", elapsed);
}

// -------------------------------------------------------------------------
// c03: exhaustive common-neighbor scans reproduce the exact case values
// -------------------------------------------------------------------------

#[test]
fn c03_common_neighbors() {
    let start = Instant::now();
    for (n, k) in [(2u8, 3u8), (2, 4), (2, 5), (3, 3), (3, 4)] {
        let g = make_graph(n, k).unwrap();
        // adjacent pairs: exact values by edge class
        for e in 0..g.edge_count() as u32 {
            let (u, v) = g.edge_endpoints(EdgeId(e));
            let kind = g.edge_kind(EdgeId(e));
            let got = g.common_neighbors(u, v).unwrap().len();
            let want = if n == 2 {
                if k == 3 {
                    3
                } else {
                    2
                }
            } else {
                let inner = kind.is_augmented() && kind.dim() >= 2 && kind.dim() < n;
                match (k, inner) {
                    (3, false) => 3,
                    (3, true) => 5,
                    (_, false) => 2,
                    (_, true) => 4,
                }
            };
            assert_eq!(got, want, "edge ({u},{v}) kind {} n={n} k={k}", kind.label());
        }
        // all pairs: maxima bounds
        let bound = if k == 3 {
            6
        } else if n == 2 {
            2
        } else {
            4
        };
        for u in 0..g.vertex_count() as u32 {
            for v in u + 1..g.vertex_count() as u32 {
                let got = g
                    .common_neighbors(VertexId(u), VertexId(v))
                    .unwrap()
                    .len();
                assert!(got <= bound, "pair ({u},{v}) cn {got} over {bound}");
            }
        }
        // the campaign sees the same picture
        let report = run_campaign(&CampaignConfig::new(n, k, Target::Cn)).unwrap();
        assert_eq!(report.totals.failures, 0);
    }
    let elapsed = start.elapsed();
    assert_within("c03", elapsed, Duration::from_secs(60));
    pass("c03 common-neighbors", "5 graphs, zero violations", elapsed);
}

// -------------------------------------------------------------------------
// c04: the worked example at vertex 120 of the 27-vertex cube
// -------------------------------------------------------------------------

#[test]
fn c04_worked_example() {
    let start = Instant::now();
    let g = make_graph(3, 3).unwrap();
    let lab = |s: &str| g.id_of_label(s).unwrap();

    let check = |a: &str, b: &str, expect: [&str; 2]| {
        let cn = g.common_neighbors(lab(a), lab(b)).unwrap();
        // full count per the adjacent-pair case split for augmented dim-2 edges
        assert_eq!(cn.len(), 5, "cn({a},{b})");
        // the two common neighbors outside the shared subcube are exact
        let cross: Vec<VertexId> = cn
            .into_iter()
            .filter(|&w| g.subcube_of(w) != g.subcube_of(lab(a)))
            .collect();
        let mut want = vec![lab(expect[0]), lab(expect[1])];
        want.sort();
        assert_eq!(cross, want, "cross-subcube cn({a},{b})");
    };
    check("120", "112", ["012", "220"]);
    check("120", "101", ["201", "020"]);

    let elapsed = start.elapsed();
    assert_within("c04", elapsed, Duration::from_secs(1));
    pass("c04 worked-example", "both pairs exact", elapsed);
}

// -------------------------------------------------------------------------
// c05: exhaustive edge-fault campaign at the 4n-4 budget on the 9-vertex cube
// -------------------------------------------------------------------------

#[test]
fn c05_thm2_exhaustive() {
    let start = Instant::now();
    // all C(27,4) = 17550 sets at the full budget
    let mut config = CampaignConfig::new(2, 3, Target::Thm2);
    config.mode = CampaignMode::Exhaustive;
    config.budget = Some(4);
    config.jobs = JOBS;
    let report = run_campaign(&config).unwrap();
    assert_eq!(report.totals.sets_tested, 17550);
    assert_eq!(report.totals.failures, 0, "{:?}", report.counterexamples.first());

    // and every smaller size, covering all sets of size <= 4
    let mut covered = report.totals.sets_tested;
    for budget in 0..4usize {
        let mut config = CampaignConfig::new(2, 3, Target::Thm2);
        config.mode = CampaignMode::Exhaustive;
        config.budget = Some(budget);
        config.jobs = JOBS;
        let report = run_campaign(&config).unwrap();
        assert_eq!(report.totals.failures, 0);
        covered += report.totals.sets_tested;
    }
    assert_eq!(covered, 1 + 27 + 351 + 2925 + 17550);

    let elapsed = start.elapsed();
    assert_within("c05", elapsed, Duration::from_secs(600));
    pass("c05 thm2-exhaustive", "20854 sets, 0 failures", elapsed);
}

// -------------------------------------------------------------------------
// c06: the 5-edge witness defeats strong Menger edge connectivity exactly
// -------------------------------------------------------------------------

#[test]
fn c06_witness3_sharpness() {
    let start = Instant::now();
    let mut config = CampaignConfig::new(2, 3, Target::Witness3);
    config.jobs = 1;
    let report = run_campaign(&config).unwrap();
    assert_eq!(report.totals.passes, 1, "witness must defeat strong Menger");
    assert_eq!(report.totals.failures, 0);

    // direct check of the bound: achieved <= 5 < required 6
    let g = make_graph(2, 3).unwrap();
    let case = aqmenger::campaign::build_witness(&g, &config).unwrap();
    assert_eq!(case.faults.len(), 5);
    let achieved =
        disjoint_path_count(&g, &case.faults, DisjointMode::Edge, case.pair.0, case.pair.1)
            .unwrap();
    assert!(achieved <= 5);
    assert_eq!(case.required, 6);

    let elapsed = start.elapsed();
    assert_within("c06", elapsed, Duration::from_secs(1));
    pass("c06 witness3-sharpness", "achieved <= 5 < 6", elapsed);
}

// -------------------------------------------------------------------------
// c07: sampled conditional campaign at budget 8n-10 = 6, plus the 7-edge
// conditional witness
// -------------------------------------------------------------------------

#[test]
fn c07_thm3_sampled_and_witness4() {
    let start = Instant::now();
    let mut config = CampaignConfig::new(2, 3, Target::Thm3);
    config.mode = CampaignMode::Sampled;
    config.trials = 10_000;
    config.seed = 20260808;
    config.jobs = JOBS;
    let report = run_campaign(&config).unwrap();
    assert_eq!(report.budget_used, 6);
    assert_eq!(report.totals.sets_tested, 10_000);
    assert_eq!(report.totals.failures, 0, "{:?}", report.counterexamples.first());

    let mut wconfig = CampaignConfig::new(2, 3, Target::Witness4);
    wconfig.jobs = 1;
    let wreport = run_campaign(&wconfig).unwrap();
    assert_eq!(wreport.totals.passes, 1);

    let g = make_graph(2, 3).unwrap();
    let case = aqmenger::campaign::build_witness(&g, &wconfig).unwrap();
    assert_eq!(case.faults.len(), 7);
    assert!(case.conditional);
    let achieved =
        disjoint_path_count(&g, &case.faults, DisjointMode::Edge, case.pair.0, case.pair.1)
            .unwrap();
    assert!(achieved <= 5, "witness achieved {achieved}");

    let elapsed = start.elapsed();
    assert_within("c07", elapsed, Duration::from_secs(900));
    pass(
        "c07 thm3-sampled",
        "10000 conditional sets pass; 7-edge witness fails at <= 5",
        elapsed,
    );
}

// -------------------------------------------------------------------------
// c08: vertex theorem — exact at (2,4), sampled at (3,4), witness at (3,4)
// -------------------------------------------------------------------------

#[test]
fn c08_thm1_vertex() {
    let start = Instant::now();

    // AQ_{2,4} fault-free: all C(16,2) = 120 pairs, exact
    let g24 = make_graph(2, 4).unwrap();
    let empty = FaultSet::empty(FaultVariant::Vertex, "none");
    let verdict = is_strongly_menger(&g24, &empty, DisjointMode::Vertex).unwrap();
    assert!(verdict.holds, "fault-free 16-vertex cube must hold");

    // AQ_{3,4}: 1000 sampled fault sets at the 4n-8 = 4 budget
    let mut config = CampaignConfig::new(3, 4, Target::Thm1);
    config.mode = CampaignMode::Sampled;
    config.trials = 1000;
    config.seed = 7;
    config.jobs = JOBS;
    let report = run_campaign(&config).unwrap();
    assert_eq!(report.budget_used, 4);
    assert_eq!(report.totals.sets_tested, 1000);
    assert_eq!(report.totals.failures, 0, "{:?}", report.counterexamples.first());

    // the 4n-7 = 5 vertex witness fails at required 10
    let g34 = make_graph(3, 4).unwrap();
    let wconfig = CampaignConfig::new(3, 4, Target::Witness2);
    let case = aqmenger::campaign::build_witness(&g34, &wconfig).unwrap();
    assert_eq!(case.faults.len(), 5);
    assert_eq!(case.required, 10);
    let achieved =
        disjoint_path_count(&g34, &case.faults, DisjointMode::Vertex, case.pair.0, case.pair.1)
            .unwrap();
    assert!(achieved < 10, "witness achieved {achieved}");

    let elapsed = start.elapsed();
    pass(
        "c08 thm1-vertex",
        "120 pairs exact; 1000 sampled sets pass; witness fails at required 10",
        elapsed,
    );
}

// -------------------------------------------------------------------------
// c09: large-component bounds — exhaustive at size 9, sampled at size 11
// -------------------------------------------------------------------------

#[test]
fn c09_large_component_bounds() {
    let start = Instant::now();

    // every one of the C(27,9) = 4686825 size-9 edge sets leaves a component
    // with at least 8 of the 9 vertices
    let mut config = CampaignConfig::new(2, 3, Target::Lemma8);
    config.mode = CampaignMode::Exhaustive;
    config.budget = Some(9);
    config.jobs = JOBS;
    let report = run_campaign(&config).unwrap();
    assert_eq!(report.totals.sets_tested, 4_686_825);
    assert_eq!(report.totals.failures, 0, "{:?}", report.counterexamples.first());

    // 100000 sampled size-11 sets leave a component with at least 7 vertices
    let mut config = CampaignConfig::new(2, 3, Target::Lemma9);
    config.mode = CampaignMode::Sampled;
    config.trials = 100_000;
    config.budget = Some(11);
    config.seed = 17;
    config.jobs = JOBS;
    let report = run_campaign(&config).unwrap();
    assert_eq!(report.totals.sets_tested, 100_000);
    assert_eq!(report.totals.failures, 0, "{:?}", report.counterexamples.first());

    let elapsed = start.elapsed();
    pass(
        "c09 large-component",
        "C(27,9) exhaustive >= |V|-1; 1e5 sampled size-11 >= |V|-2",
        elapsed,
    );
}

// -------------------------------------------------------------------------
// c10: max-flow counts equal the independent path-family enumerator
// -------------------------------------------------------------------------

mod oracle {
    //! Brute-force disjoint-path oracle, independent of the flow machinery:
    //! enumerate every simple u-v path, then find a maximum pairwise-disjoint
    //! family by branch-and-bound over first-edge groups.

    /// Adjacency as (neighbor, edge id) lists; masks fit in u64 at this scale.
    pub struct SmallGraph {
        pub adj: Vec<Vec<(usize, usize)>>,
    }

    #[derive(Clone, Copy)]
    pub enum Mode {
        Vertex,
        Edge,
    }

    struct PathRec {
        internal_vertices: u64,
        edges: u64,
        first_edge: usize,
    }

    fn enumerate_paths(g: &SmallGraph, u: usize, v: usize) -> Vec<PathRec> {
        let mut out = Vec::new();
        let mut stack_vmask = 1u64 << u;
        let mut path_edges: Vec<usize> = Vec::new();
        let mut path_vertices: Vec<usize> = vec![u];
        dfs(
            g,
            u,
            v,
            &mut stack_vmask,
            &mut path_edges,
            &mut path_vertices,
            &mut out,
        );
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        g: &SmallGraph,
        here: usize,
        target: usize,
        vmask: &mut u64,
        edges: &mut Vec<usize>,
        vertices: &mut Vec<usize>,
        out: &mut Vec<PathRec>,
    ) {
        for &(next, edge) in &g.adj[here] {
            if next == target {
                let mut emask = 0u64;
                for &e in edges.iter() {
                    emask |= 1 << e;
                }
                emask |= 1 << edge;
                let internal = vertices
                    .iter()
                    .skip(1)
                    .fold(0u64, |m, &x| m | (1 << x));
                out.push(PathRec {
                    internal_vertices: internal,
                    edges: emask,
                    first_edge: *edges.first().unwrap_or(&edge),
                });
                continue;
            }
            if *vmask & (1 << next) != 0 {
                continue;
            }
            *vmask |= 1 << next;
            edges.push(edge);
            vertices.push(next);
            dfs(g, next, target, vmask, edges, vertices, out);
            vertices.pop();
            edges.pop();
            *vmask &= !(1 << next);
        }
    }

    /// Maximum number of pairwise disjoint u-v paths, by exhaustive search.
    pub fn max_disjoint_paths(g: &SmallGraph, u: usize, v: usize, mode: Mode) -> usize {
        let paths = enumerate_paths(g, u, v);
        if paths.is_empty() {
            return 0;
        }
        // distinct first edges bound the family size by deg(u); deg(v) too
        let ub = g.adj[u].len().min(g.adj[v].len());
        // group paths by first edge: a family uses each group at most once
        let mut first_edges: Vec<usize> = paths.iter().map(|p| p.first_edge).collect();
        first_edges.sort_unstable();
        first_edges.dedup();
        let mut groups: Vec<Vec<&PathRec>> = vec![Vec::new(); first_edges.len()];
        for p in &paths {
            let gi = first_edges.binary_search(&p.first_edge).unwrap();
            groups[gi].push(p);
        }
        let mut best = 0;
        search(&groups, 0, 0, 0, 0, mode, ub, &mut best);
        best
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        groups: &[Vec<&PathRec>],
        gi: usize,
        used_vertices: u64,
        used_edges: u64,
        count: usize,
        mode: Mode,
        ub: usize,
        best: &mut usize,
    ) {
        if count > *best {
            *best = count;
        }
        if *best == ub || gi == groups.len() || count + (groups.len() - gi) <= *best {
            return;
        }
        // take a path from this group
        for p in &groups[gi] {
            let clash = match mode {
                Mode::Vertex => p.internal_vertices & used_vertices != 0,
                Mode::Edge => p.edges & used_edges != 0,
            };
            if clash {
                continue;
            }
            search(
                groups,
                gi + 1,
                used_vertices | p.internal_vertices,
                used_edges | p.edges,
                count + 1,
                mode,
                ub,
                best,
            );
            if *best == ub {
                return;
            }
        }
        // or skip it
        search(groups, gi + 1, used_vertices, used_edges, count, mode, ub, best);
    }
}

fn surviving_small_graph(g: &AqGraph, f: &FaultSet) -> oracle::SmallGraph {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for e in 0..g.edge_count() as u32 {
        if f.contains_edge(EdgeId(e)) {
            continue;
        }
        let (a, b) = g.edge_endpoints(EdgeId(e));
        if f.contains_vertex(a) || f.contains_vertex(b) {
            continue;
        }
        adj[a.index()].push((b.index(), e as usize));
        adj[b.index()].push((a.index(), e as usize));
    }
    oracle::SmallGraph { adj }
}

#[test]
fn c10_oracle_equivalence() {
    let start = Instant::now();
    let g = make_graph(2, 3).unwrap();

    let mut checked = 0u64;
    for mode in [DisjointMode::Vertex, DisjointMode::Edge] {
        let variant = match mode {
            DisjointMode::Vertex => FaultVariant::Vertex,
            DisjointMode::Edge => FaultVariant::Edge,
        };
        let oracle_mode = match mode {
            DisjointMode::Vertex => oracle::Mode::Vertex,
            DisjointMode::Edge => oracle::Mode::Edge,
        };
        let mut fault_sets = vec![FaultSet::empty(variant, "none")];
        for i in 0..100u64 {
            let size = (i % 6) as usize;
            fault_sets.push(random_fault_set(&g, size, variant, 1000 + i).unwrap());
        }
        for f in &fault_sets {
            let small = surviving_small_graph(&g, f);
            for u in 0..9u32 {
                for v in u + 1..9 {
                    if f.contains_vertex(VertexId(u)) || f.contains_vertex(VertexId(v)) {
                        continue;
                    }
                    let flow =
                        disjoint_path_count(&g, f, mode, VertexId(u), VertexId(v)).unwrap();
                    let brute = oracle::max_disjoint_paths(
                        &small,
                        u as usize,
                        v as usize,
                        oracle_mode,
                    );
                    assert_eq!(
                        flow, brute,
                        "mode {mode:?}, faults {:?}, pair ({u},{v})",
                        f.member_ids()
                    );
                    checked += 1;
                }
            }
        }
    }

    // the 5-cycle as a second family member
    let g15 = make_graph(1, 5).unwrap();
    for variant in [FaultVariant::Vertex, FaultVariant::Edge] {
        let (mode, omode) = match variant {
            FaultVariant::Vertex => (DisjointMode::Vertex, oracle::Mode::Vertex),
            FaultVariant::Edge => (DisjointMode::Edge, oracle::Mode::Edge),
        };
        let mut sets = vec![FaultSet::empty(variant, "none")];
        for i in 0..100u64 {
            sets.push(random_fault_set(&g15, (i % 6) as usize, variant, 9000 + i).unwrap());
        }
        for f in &sets {
            let small = surviving_small_graph(&g15, f);
            for u in 0..5u32 {
                for v in u + 1..5 {
                    if f.contains_vertex(VertexId(u)) || f.contains_vertex(VertexId(v)) {
                        continue;
                    }
                    let flow =
                        disjoint_path_count(&g15, f, mode, VertexId(u), VertexId(v)).unwrap();
                    let brute =
                        oracle::max_disjoint_paths(&small, u as usize, v as usize, omode);
                    assert_eq!(flow, brute, "5-cycle {variant:?} pair ({u},{v})");
                    checked += 1;
                }
            }
        }
    }

    let elapsed = start.elapsed();
    pass(
        "c10 oracle-equivalence",
        &format!("{checked} instances, flow == brute force"),
        elapsed,
    );
}

// -------------------------------------------------------------------------
// c11: identical configs yield identical reports modulo wall time
// -------------------------------------------------------------------------

#[test]
fn c11_determinism() {
    let start = Instant::now();

    let mut configs = Vec::new();
    let mut thm3 = CampaignConfig::new(2, 3, Target::Thm3);
    thm3.mode = CampaignMode::Sampled;
    thm3.trials = 300;
    thm3.seed = 5;
    configs.push(thm3);
    let mut lemma9 = CampaignConfig::new(2, 3, Target::Lemma9);
    lemma9.mode = CampaignMode::Sampled;
    lemma9.trials = 2000;
    lemma9.seed = 5;
    configs.push(lemma9);
    configs.push(CampaignConfig::new(2, 3, Target::Witness4));
    configs.push(CampaignConfig::new(2, 3, Target::Structure));

    for config in &configs {
        let mut a = run_campaign(config).unwrap();
        let mut b = run_campaign(config).unwrap();
        assert_eq!(a.content_hash, b.content_hash, "{}", config.target);
        a.wall_time_ms = 0;
        b.wall_time_ms = 0;
        assert_eq!(a.to_json(), b.to_json(), "{}", config.target);
    }

    // worker count must not change results
    let mut serial = CampaignConfig::new(2, 3, Target::Thm2);
    serial.mode = CampaignMode::Exhaustive;
    serial.budget = Some(3);
    let mut parallel = serial.clone();
    parallel.jobs = 2;
    let a = run_campaign(&serial).unwrap();
    let b = run_campaign(&parallel).unwrap();
    assert_eq!(a.totals, b.totals);
    assert_eq!(a.counterexamples, b.counterexamples);

    let elapsed = start.elapsed();
    pass("c11 determinism", "4 targets bit-stable; jobs-independent", elapsed);
}
