//! Campaign runner: reproducible verification experiments over enumerated or
//! sampled fault spaces, with machine-readable reports.
//!
//! A campaign fixes (n, k), a target, a fault budget, and a seed, then runs
//! the target's check over every enumerated fault set (exhaustive mode) or
//! over seeded draws (sampled mode). Workers shard the fault space by index
//! and results merge in index order, so a report depends only on its config,
//! never on scheduling. Wall time is the one nondeterministic field and is
//! excluded from the content hash.

use std::io::Write;
use std::thread;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::components::{self, ComponentScratch};
use crate::error::{Error, Result};
use crate::faults::{self, Combinations, WitnessCase};
use crate::menger::{self, DisjointMode, FaultSet, FaultVariant};
use crate::topology::{AqGraph, AqParams, EdgeId, EdgeKind, VertexId};

pub const SCHEMA_VERSION: &str = "1";
pub const DEFAULT_ENUM_CEILING: u64 = 10_000_000;
/// Hard cap on k^n for all-pairs Menger targets.
pub const MENGER_VERTEX_CAP: usize = 4096;
/// Environment variable the CLI reads to override the enumeration ceiling.
pub const ENUM_CEILING_ENV: &str = "AQMENGER_ENUM_CEILING";

/// What a campaign verifies.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    /// Vertex count, regularity, symmetry, subcube and cross-edge structure.
    Structure,
    /// Exact common-neighbor counts per edge class and the all-pairs maxima.
    Cn,
    /// Neighborhood expansion: within-subcube sets and whole-graph sets.
    Expansion,
    /// Large-component bound under vertex faults (budget 8n-12 or 8n-11).
    Lemma7,
    /// Large component misses at most 1 vertex under <= 8n-7 edge faults.
    Lemma8,
    /// Large component misses at most 2 vertices under <= 12n-13 edge faults.
    Lemma9,
    /// Strong Menger connectivity under vertex faults (budget 4n-9 or 4n-8).
    Thm1,
    /// Same check at n=3, k=3: reported but never asserted.
    Thm1Empirical,
    /// Strong Menger edge connectivity under <= 4n-4 edge faults.
    Thm2,
    /// Conditional strong Menger edge connectivity under <= 8n-10 edge faults.
    Thm3,
    /// Sharpness witness for the vertex budget.
    Witness2,
    /// Sharpness witness for the edge budget.
    Witness3,
    /// Sharpness witness for the conditional edge budget.
    Witness4,
}

impl Target {
    pub const ALL: [Target; 13] = [
        Target::Structure,
        Target::Cn,
        Target::Expansion,
        Target::Lemma7,
        Target::Lemma8,
        Target::Lemma9,
        Target::Thm1,
        Target::Thm1Empirical,
        Target::Thm2,
        Target::Thm3,
        Target::Witness2,
        Target::Witness3,
        Target::Witness4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Structure => "structure",
            Target::Cn => "cn",
            Target::Expansion => "expansion",
            Target::Lemma7 => "lemma7",
            Target::Lemma8 => "lemma8",
            Target::Lemma9 => "lemma9",
            Target::Thm1 => "thm1",
            Target::Thm1Empirical => "thm1-empirical",
            Target::Thm2 => "thm2",
            Target::Thm3 => "thm3",
            Target::Witness2 => "witness2",
            Target::Witness3 => "witness3",
            Target::Witness4 => "witness4",
        }
    }

    pub fn is_witness(self) -> bool {
        matches!(self, Target::Witness2 | Target::Witness3 | Target::Witness4)
    }

    fn is_menger(self) -> bool {
        matches!(
            self,
            Target::Thm1 | Target::Thm1Empirical | Target::Thm2 | Target::Thm3
        ) || self.is_witness()
    }

    fn fault_variant(self) -> Option<FaultVariant> {
        match self {
            Target::Lemma7 | Target::Thm1 | Target::Thm1Empirical => Some(FaultVariant::Vertex),
            Target::Lemma8 | Target::Lemma9 | Target::Thm2 | Target::Thm3 => {
                Some(FaultVariant::Edge)
            }
            _ => None,
        }
    }

    /// Default mode: full checks run exhaustively, fault campaigns sample.
    pub fn default_mode(self) -> CampaignMode {
        match self {
            Target::Structure | Target::Cn | Target::Expansion => CampaignMode::Exhaustive,
            t if t.is_witness() => CampaignMode::Exhaustive,
            _ => CampaignMode::Sampled,
        }
    }
}

impl std::str::FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Target::ALL
            .iter()
            .copied()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Target::ALL.iter().map(|t| t.name()).collect();
                format!("unknown target '{s}', expected one of: {}", names.join(", "))
            })
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CampaignMode {
    Exhaustive,
    Sampled,
}

impl std::str::FromStr for CampaignMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(CampaignMode::Exhaustive),
            "sampled" => Ok(CampaignMode::Sampled),
            other => Err(format!("unknown mode '{other}', expected exhaustive or sampled")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub n: u8,
    pub k: u8,
    pub target: Target,
    pub mode: CampaignMode,
    pub trials: u64,
    pub seed: u64,
    /// Budget override; must not exceed the target's bound unless `probe`.
    pub budget: Option<usize>,
    pub probe: bool,
    pub jobs: usize,
    pub ceiling: u64,
    /// Witness anchor vertex (default 0).
    pub anchor: Option<u32>,
    /// Witness augmented dimension (default 2).
    pub dim: Option<u8>,
}

impl CampaignConfig {
    pub fn new(n: u8, k: u8, target: Target) -> Self {
        CampaignConfig {
            n,
            k,
            target,
            mode: target.default_mode(),
            trials: 1000,
            seed: 1,
            budget: None,
            probe: false,
            jobs: 1,
            ceiling: DEFAULT_ENUM_CEILING,
            anchor: None,
            dim: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Totals {
    pub sets_tested: u64,
    pub passes: u64,
    pub failures: u64,
}

/// A replayable failure: the full fault set plus what went wrong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub index: u64,
    pub variant: FaultVariant,
    pub members: Vec<u32>,
    pub provenance: String,
    pub pair: Option<(u32, u32)>,
    pub achieved: Option<u64>,
    pub required: Option<u64>,
    pub detail: String,
}

/// Outcome of re-testing a witness with one fault removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeOutcome {
    pub removed: u32,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub schema_version: String,
    pub tool_version: String,
    pub config: CampaignConfig,
    pub budget_used: usize,
    pub totals: Totals,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
    /// One-element-removed re-tests; populated by witness targets.
    pub probe_results: Vec<ProbeOutcome>,
    pub wall_time_ms: u64,
    pub content_hash: String,
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

impl CampaignReport {
    /// Hash of the report with wall time zeroed and the hash field blank.
    pub fn compute_content_hash(&self) -> String {
        let mut clone = self.clone();
        clone.wall_time_ms = 0;
        clone.content_hash = String::new();
        let json = serde_json::to_string(&clone).expect("report serializes");
        format!("{:016x}", fnv1a(json.as_bytes()))
    }

    pub fn verify_content_hash(&self) -> bool {
        self.compute_content_hash() == self.content_hash
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn csv_header() -> &'static str {
        "schema_version,tool_version,n,k,target,mode,budget,trials,seed,jobs,\
         sets_tested,passes,failures,wall_time_ms,content_hash"
    }

    pub fn csv_row(&self) -> String {
        let mode = match self.config.mode {
            CampaignMode::Exhaustive => "exhaustive",
            CampaignMode::Sampled => "sampled",
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.schema_version,
            self.tool_version,
            self.config.n,
            self.config.k,
            self.config.target,
            mode,
            self.budget_used,
            self.config.trials,
            self.config.seed,
            self.config.jobs,
            self.totals.sets_tested,
            self.totals.passes,
            self.totals.failures,
            self.wall_time_ms,
            self.content_hash,
        )
    }
}

// ---------------------------------------------------------------------------
// Budgets and hypotheses
// ---------------------------------------------------------------------------

fn default_budget(g: &AqGraph, target: Target) -> Result<usize> {
    let n = g.params().n() as usize;
    let k = g.params().k();
    let need_n2 = |budget: usize| -> Result<usize> {
        if n >= 2 {
            Ok(budget)
        } else {
            Err(Error::HypothesisUnmet {
                reason: format!("target {target} needs n >= 2, got n={n}"),
            })
        }
    };
    match target {
        Target::Structure => Ok(0),
        Target::Cn => need_n2(0),
        Target::Expansion => need_n2(3),
        Target::Lemma7 => components::vertex_bound_budget(g),
        Target::Lemma8 => need_n2(8 * n - 7),
        Target::Lemma9 => need_n2(12 * n - 13),
        Target::Thm1 => {
            if k == 3 {
                if n >= 4 {
                    Ok(4 * n - 9)
                } else {
                    Err(Error::HypothesisUnmet {
                        reason: format!(
                            "target thm1 with k=3 needs n >= 4, got n={n}; \
                             n=3 is available as thm1-empirical"
                        ),
                    })
                }
            } else {
                need_n2(4 * n - 8)
            }
        }
        Target::Thm1Empirical => {
            if k == 3 && n == 3 {
                Ok(3) // 4n-9 at n=3
            } else {
                Err(Error::HypothesisUnmet {
                    reason: format!(
                        "target thm1-empirical is defined for n=3, k=3 only, got n={n}, k={k}"
                    ),
                })
            }
        }
        Target::Thm2 => need_n2(4 * n - 4),
        Target::Thm3 => need_n2(8 * n - 10),
        Target::Witness2 => {
            if n >= 3 {
                Ok(0)
            } else {
                Err(Error::HypothesisUnmet {
                    reason: format!("target witness2 needs n >= 3, got n={n}"),
                })
            }
        }
        Target::Witness3 | Target::Witness4 => need_n2(0),
    }
}

fn resolve_budget(g: &AqGraph, config: &CampaignConfig) -> Result<usize> {
    let base = default_budget(g, config.target)?;
    match config.budget {
        None => Ok(base),
        Some(b) => {
            if b > base && !config.probe {
                Err(Error::HypothesisUnmet {
                    reason: format!(
                        "budget {b} exceeds the {} bound {base}; pass --probe to explore beyond it",
                        config.target
                    ),
                })
            } else {
                Ok(b)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Single-set checks (shared by campaign workers and replay)
// ---------------------------------------------------------------------------

pub(crate) enum SetOutcome {
    Pass,
    Fail {
        pair: Option<(u32, u32)>,
        achieved: Option<u64>,
        required: Option<u64>,
        detail: String,
    },
}

struct Scratch {
    comp: ComponentScratch,
}

impl Scratch {
    fn new(g: &AqGraph) -> Self {
        Scratch {
            comp: ComponentScratch::new(g),
        }
    }
}

fn check_fault_set(
    g: &AqGraph,
    target: Target,
    members: &[u32],
    scratch: &mut Scratch,
) -> Result<SetOutcome> {
    let n_vertices = g.vertex_count();
    match target {
        Target::Lemma7 => {
            let large = scratch.comp.largest_after_vertex_faults(g, members);
            if large + members.len() + 1 >= n_vertices {
                Ok(SetOutcome::Pass)
            } else {
                Ok(SetOutcome::Fail {
                    pair: None,
                    achieved: Some(large as u64),
                    required: Some((n_vertices - members.len() - 1) as u64),
                    detail: format!(
                        "large component {large} < {} = |V| - |f| - 1",
                        n_vertices - members.len() - 1
                    ),
                })
            }
        }
        Target::Lemma8 | Target::Lemma9 => {
            let deficit = if target == Target::Lemma8 { 1 } else { 2 };
            let large = scratch.comp.largest_after_edge_faults(g, members);
            if large + deficit >= n_vertices {
                Ok(SetOutcome::Pass)
            } else {
                Ok(SetOutcome::Fail {
                    pair: None,
                    achieved: Some(large as u64),
                    required: Some((n_vertices - deficit) as u64),
                    detail: format!(
                        "large component {large} < {} = |V| - {deficit}",
                        n_vertices - deficit
                    ),
                })
            }
        }
        Target::Thm1 | Target::Thm1Empirical => {
            let f = FaultSet::vertices(g, members.iter().map(|&v| VertexId(v)), "check")?;
            let verdict = menger::is_strongly_menger(g, &f, DisjointMode::Vertex)?;
            Ok(outcome_from_verdict(verdict))
        }
        Target::Thm2 | Target::Thm3 => {
            let s = FaultSet::edges(g, members.iter().map(|&e| EdgeId(e)), "check")?;
            let verdict = menger::is_strongly_menger(g, &s, DisjointMode::Edge)?;
            Ok(outcome_from_verdict(verdict))
        }
        _ => Err(Error::Infeasible {
            reason: format!("target {target} has no per-set check"),
        }),
    }
}

fn outcome_from_verdict(verdict: menger::MengerVerdict) -> SetOutcome {
    if verdict.holds {
        SetOutcome::Pass
    } else {
        let w = verdict.witness.expect("failing verdict carries a witness");
        SetOutcome::Fail {
            pair: Some((w.u.0, w.v.0)),
            achieved: Some(w.achieved),
            required: Some(w.required),
            detail: format!(
                "pair ({}, {}): {} of {} disjoint paths",
                w.u.0, w.v.0, w.achieved, w.required
            ),
        }
    }
}

// ---------------------------------------------------------------------------
// Fault-space campaigns
// ---------------------------------------------------------------------------

struct ShardResult {
    tested: u64,
    passes: u64,
    skipped: u64,
    failures: Vec<Counterexample>,
}

fn make_counterexample(
    index: u64,
    variant: FaultVariant,
    members: Vec<u32>,
    provenance: String,
    outcome: SetOutcome,
) -> Counterexample {
    match outcome {
        SetOutcome::Pass => unreachable!("only failures become counterexamples"),
        SetOutcome::Fail {
            pair,
            achieved,
            required,
            detail,
        } => Counterexample {
            index,
            variant,
            members,
            provenance,
            pair,
            achieved,
            required,
            detail,
        },
    }
}

fn run_fault_campaign(
    g: &AqGraph,
    config: &CampaignConfig,
    budget: usize,
    notes: &mut Vec<String>,
) -> Result<(Totals, Vec<Counterexample>)> {
    let variant = config
        .target
        .fault_variant()
        .expect("fault campaigns have a variant");
    let conditional = config.target == Target::Thm3;
    let pool = match variant {
        FaultVariant::Vertex => g.vertex_count(),
        FaultVariant::Edge => g.edge_count(),
    };
    if budget > pool {
        return Err(Error::OutOfRange {
            what: "fault budget",
            value: budget,
            limit: pool,
        });
    }
    if conditional && g.edge_count() - budget < g.vertex_count() {
        return Err(Error::Unsatisfiable {
            reason: format!(
                "conditional sets of size {budget} cannot keep minimum degree 2"
            ),
        });
    }

    let total: u64 = match config.mode {
        CampaignMode::Exhaustive => {
            let count = faults::count_subsets(pool, budget);
            if count > config.ceiling as u128 {
                return Err(Error::Infeasible {
                    reason: format!(
                        "C({pool},{budget}) = {count} subsets exceeds the enumeration ceiling {}; \
                         use sampled mode",
                        config.ceiling
                    ),
                });
            }
            count as u64
        }
        CampaignMode::Sampled => config.trials,
    };

    let jobs = config.jobs.max(1).min(total.max(1) as usize);
    let seed = config.seed;
    let mode = config.mode;
    let target = config.target;

    let shard_results: Vec<Result<ShardResult>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs as u64)
            .map(|w| {
                let lo = total * w / jobs as u64;
                let hi = total * (w + 1) / jobs as u64;
                scope.spawn(move || -> Result<ShardResult> {
                    let mut scratch = Scratch::new(g);
                    let mut degree_scratch: Vec<u32> = Vec::new();
                    let mut out = ShardResult {
                        tested: 0,
                        passes: 0,
                        skipped: 0,
                        failures: Vec::new(),
                    };
                    match mode {
                        CampaignMode::Exhaustive => {
                            let mut combos = Combinations::from_rank(pool, budget, lo);
                            for index in lo..hi {
                                let members =
                                    combos.advance().expect("rank within total").to_vec();
                                if conditional
                                    && !faults::conditional_ok(g, &members, &mut degree_scratch)
                                {
                                    out.skipped += 1;
                                    continue;
                                }
                                out.tested += 1;
                                match check_fault_set(g, target, &members, &mut scratch)? {
                                    SetOutcome::Pass => out.passes += 1,
                                    fail => out.failures.push(make_counterexample(
                                        index,
                                        variant,
                                        members,
                                        format!("enum[{index}]"),
                                        fail,
                                    )),
                                }
                            }
                        }
                        CampaignMode::Sampled => {
                            for index in lo..hi {
                                let set = if conditional {
                                    faults::conditional_edge_fault_set(
                                        g,
                                        budget,
                                        faults::derive_seed(seed, index),
                                    )?
                                } else {
                                    faults::random_fault_set(
                                        g,
                                        budget,
                                        variant,
                                        faults::derive_seed(seed, index),
                                    )?
                                };
                                let members = set.member_ids();
                                out.tested += 1;
                                match check_fault_set(g, target, &members, &mut scratch)? {
                                    SetOutcome::Pass => out.passes += 1,
                                    fail => out.failures.push(make_counterexample(
                                        index,
                                        variant,
                                        members,
                                        set.provenance().to_string(),
                                        fail,
                                    )),
                                }
                            }
                        }
                    }
                    Ok(out)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("campaign worker panicked"))
            .collect()
    });

    let mut totals = Totals::default();
    let mut counterexamples = Vec::new();
    let mut skipped = 0;
    for shard in shard_results {
        let shard = shard?;
        totals.sets_tested += shard.tested;
        totals.passes += shard.passes;
        totals.failures += shard.failures.len() as u64;
        skipped += shard.skipped;
        counterexamples.extend(shard.failures);
    }
    counterexamples.sort_by_key(|c| c.index);
    if conditional && mode == CampaignMode::Exhaustive {
        notes.push(format!(
            "conditional filter: tested {} of {} enumerated sets ({} skipped)",
            totals.sets_tested, total, skipped
        ));
    }
    Ok((totals, counterexamples))
}

// ---------------------------------------------------------------------------
// Structure / cn / expansion campaigns
// ---------------------------------------------------------------------------

struct CheckCollector {
    totals: Totals,
    counterexamples: Vec<Counterexample>,
}

impl CheckCollector {
    fn new() -> Self {
        CheckCollector {
            totals: Totals::default(),
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        let index = self.totals.sets_tested;
        self.totals.sets_tested += 1;
        if ok {
            self.totals.passes += 1;
        } else {
            self.totals.failures += 1;
            self.counterexamples.push(Counterexample {
                index,
                variant: FaultVariant::Vertex,
                members: Vec::new(),
                provenance: "structural-check".to_string(),
                pair: None,
                achieved: None,
                required: None,
                detail: detail(),
            });
        }
    }
}

fn run_structure(g: &AqGraph, seed: u64) -> (Totals, Vec<Counterexample>) {
    let mut c = CheckCollector::new();
    let params = *g.params();
    let (n, k) = (params.n(), params.k());

    c.record(g.vertex_count() == params.vertex_count(), || {
        format!("vertex count {} != k^n", g.vertex_count())
    });
    c.record(
        2 * g.edge_count() == g.vertex_count() * params.degree(),
        || format!("edge count {} breaks regularity", g.edge_count()),
    );
    for u in g.vertex_ids() {
        c.record(g.neighbors(u).len() == params.degree(), || {
            format!("vertex {u} has degree {}", g.neighbors(u).len())
        });
    }
    // symmetry with inverse kinds
    let mut symmetric = true;
    for u in g.vertex_ids() {
        for &(v, kind) in g.neighbors(u) {
            if !g
                .neighbors(v)
                .iter()
                .any(|&(w, back)| w == u && back == kind.inverse())
            {
                symmetric = false;
            }
        }
    }
    c.record(symmetric, || "adjacency is not symmetric".to_string());

    if n >= 2 {
        // per-vertex kind split: 2n traditional, 2(n-1) augmented
        for u in g.vertex_ids() {
            let aug = g.neighbors(u).iter().filter(|(_, k)| k.is_augmented()).count();
            c.record(aug == 2 * (n as usize - 1), || {
                format!("vertex {u} has {aug} augmented edges")
            });
        }
        // cross-edge count between consecutive subcubes
        let expected_cross = 2 * (k as usize).pow(n as u32 - 1);
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
            c.record(count == expected_cross, || {
                format!("{count} cross edges between subcubes {i} and {j}, expected {expected_cross}")
            });
        }
        // extra neighbors: 4 per vertex, two per adjacent subcube
        for u in g.vertex_ids() {
            let extra = g.extra_neighbors(u).expect("n >= 2");
            let here = g.subcube_of(u);
            let up = extra
                .iter()
                .filter(|&&(v, _)| g.subcube_of(v) == (here + 1) % k)
                .count();
            let down = extra
                .iter()
                .filter(|&&(v, _)| g.subcube_of(v) == (here + k - 1) % k)
                .count();
            c.record(extra.len() == 4 && up == 2 && down == 2, || {
                format!("vertex {u} extra neighbors split {up}/{down}")
            });
        }
        // each subcube induces a copy of the (n-1)-cube under digit dropping
        let small = AqGraph::new(AqParams::new(n - 1, k).expect("n >= 2"));
        let side = (g.vertex_count() / k as usize) as u32;
        for i in 0..k {
            let sub = g.subcube_vertices(i).expect("n >= 2");
            let mut iso = true;
            for (a_idx, &a) in sub.iter().enumerate() {
                for &b in sub.iter().skip(a_idx + 1) {
                    let sa = VertexId(a.0 - side * i as u32);
                    let sb = VertexId(b.0 - side * i as u32);
                    if g.are_adjacent(a, b) != small.are_adjacent(sa, sb) {
                        iso = false;
                    }
                }
            }
            c.record(iso, || format!("subcube {i} is not a copy of the smaller cube"));
        }
    }

    // vertex-transitivity spot check: seeded digit translations preserve edges
    for probe in 0..4u64 {
        let mut delta = Vec::with_capacity(n as usize);
        let mut state = faults::derive_seed(seed, probe);
        for _ in 0..n {
            delta.push((state % k as u64) as u8);
            state = faults::derive_seed(state, 0x5eed);
        }
        let mut preserved = true;
        for e in 0..g.edge_count() as u32 {
            let (a, b) = g.edge_endpoints(EdgeId(e));
            if !g.are_adjacent(g.translate(a, &delta), g.translate(b, &delta)) {
                preserved = false;
            }
        }
        c.record(preserved, || {
            format!("translation by {delta:?} does not preserve adjacency")
        });
    }

    (c.totals, c.counterexamples)
}

/// Exact common-neighbor count expected for an edge of the given kind.
fn expected_cn(n: u8, k: u8, kind: EdgeKind) -> usize {
    if n == 2 {
        return if k == 3 { 3 } else { 2 };
    }
    let inner_augmented = kind.is_augmented() && kind.dim() >= 2 && kind.dim() < n;
    match (k, inner_augmented) {
        (3, false) => 3,
        (3, true) => 5,
        (_, false) => 2,
        (_, true) => 4,
    }
}

/// Upper bound on the common-neighbor count over all distinct pairs.
fn cn_bound(n: u8, k: u8) -> usize {
    if k == 3 {
        6
    } else if n == 2 {
        2
    } else {
        4
    }
}

fn run_cn(g: &AqGraph) -> (Totals, Vec<Counterexample>) {
    let mut c = CheckCollector::new();
    let (n, k) = (g.params().n(), g.params().k());
    for e in 0..g.edge_count() as u32 {
        let (u, v) = g.edge_endpoints(EdgeId(e));
        let kind = g.edge_kind(EdgeId(e));
        let got = g.common_neighbors(u, v).expect("distinct endpoints").len();
        let want = expected_cn(n, k, kind);
        c.record(got == want, || {
            format!(
                "edge ({u}, {v}) kind {} has {got} common neighbors, expected {want}",
                kind.label()
            )
        });
    }
    let bound = cn_bound(n, k);
    for u in 0..g.vertex_count() as u32 {
        for v in u + 1..g.vertex_count() as u32 {
            let got = g
                .common_neighbors(VertexId(u), VertexId(v))
                .expect("distinct")
                .len();
            c.record(got <= bound, || {
                format!("pair ({u}, {v}) has {got} common neighbors, bound {bound}")
            });
        }
    }
    (c.totals, c.counterexamples)
}

fn run_expansion(
    g: &AqGraph,
    config: &CampaignConfig,
    budget: usize,
) -> (Totals, Vec<Counterexample>) {
    let mut c = CheckCollector::new();
    let (n, k) = (g.params().n(), g.params().k());

    // within-subcube expansion: |N(U) outside the subcube| >= 2|U|
    for i in 0..k {
        let sub = g.subcube_vertices(i).expect("n >= 2");
        let cap = budget.min(sub.len());
        for size in 1..=cap {
            let mut combos = Combinations::new(sub.len(), size);
            while let Some(pick) = combos.advance() {
                let set: Vec<VertexId> = pick.iter().map(|&j| sub[j as usize]).collect();
                let outside = components::open_neighborhood(g, &set)
                    .into_iter()
                    .filter(|&w| g.subcube_of(w) != i)
                    .count();
                c.record(outside >= 2 * set.len(), || {
                    format!("set {set:?} in subcube {i} expands to only {outside}")
                });
            }
        }
    }

    // whole-graph neighborhood bound for n >= 3, k >= 4:
    // 2 <= |U| <= 8n-16 forces |N(U)| >= 8n-10
    if n >= 3 && k >= 4 {
        let floor = 8 * n as usize - 10;
        let max_size = 8 * n as usize - 16;
        for size in 2..=3.min(max_size) {
            let mut combos = Combinations::new(g.vertex_count(), size);
            while let Some(pick) = combos.advance() {
                let set: Vec<VertexId> = pick.iter().map(|&j| VertexId(j)).collect();
                let hood = components::open_neighborhood(g, &set).len();
                c.record(hood >= floor, || {
                    format!("set {set:?} has neighborhood {hood}, floor {floor}")
                });
            }
        }
        if config.mode == CampaignMode::Sampled && max_size >= 4 {
            for trial in 0..config.trials {
                let size = 4 + (faults::derive_seed(config.seed, trial) % (max_size as u64 - 3)) as usize;
                let set = faults::random_fault_set(
                    g,
                    size,
                    FaultVariant::Vertex,
                    faults::derive_seed(config.seed, trial ^ 0xabcd),
                )
                .expect("size within pool");
                let members: Vec<VertexId> =
                    set.member_ids().into_iter().map(VertexId).collect();
                let hood = components::open_neighborhood(g, &members).len();
                c.record(hood >= floor, || {
                    format!("sampled set {members:?} has neighborhood {hood}, floor {floor}")
                });
            }
        }
    }

    (c.totals, c.counterexamples)
}

// ---------------------------------------------------------------------------
// Witness campaigns
// ---------------------------------------------------------------------------

/// Build the witness a target refers to, honoring anchor and dim overrides.
pub fn build_witness(g: &AqGraph, config: &CampaignConfig) -> Result<WitnessCase> {
    let anchor = VertexId(config.anchor.unwrap_or(0));
    match config.target {
        Target::Witness2 => faults::vertex_cut_witness(g, anchor, config.dim.unwrap_or(2)),
        Target::Witness3 => {
            let kept = VertexId(g.neighbor_ids(anchor)[0]);
            faults::edge_star_witness(g, kept, anchor)
        }
        Target::Witness4 => faults::conditional_triangle_witness(g, anchor),
        other => Err(Error::Infeasible {
            reason: format!("target {other} is not a witness target"),
        }),
    }
}

fn run_witness(
    g: &AqGraph,
    config: &CampaignConfig,
    notes: &mut Vec<String>,
) -> Result<(Totals, Vec<Counterexample>, Vec<ProbeOutcome>)> {
    let case = build_witness(g, config)?;
    let (u, v) = case.pair;
    let achieved = menger::disjoint_path_count(g, &case.faults, case.mode, u, v)?;
    let du = menger::surviving_degree(g, &case.faults, u);
    let dv = menger::surviving_degree(g, &case.faults, v);
    let required = du.min(dv);
    let verdict = menger::is_strongly_menger(g, &case.faults, case.mode)?;

    notes.push(format!(
        "witness pair ({}, {}): {achieved} of {required} disjoint paths, bound {}",
        u.0, v.0, case.failure_bound
    ));
    if let Some(w) = &verdict.witness {
        notes.push(format!(
            "first failing pair overall: ({}, {}) with {} of {}",
            w.u.0, w.v.0, w.achieved, w.required
        ));
    }

    let confirmed = required == case.required
        && achieved <= case.failure_bound
        && achieved < required
        && !verdict.holds;

    let mut totals = Totals {
        sets_tested: 1,
        passes: 0,
        failures: 0,
    };
    let mut counterexamples = Vec::new();
    if confirmed {
        totals.passes = 1;
    } else {
        totals.failures = 1;
        counterexamples.push(Counterexample {
            index: 0,
            variant: case.faults.variant(),
            members: case.faults.member_ids(),
            provenance: case.faults.provenance().to_string(),
            pair: Some((u.0, v.0)),
            achieved: Some(achieved as u64),
            required: Some(required as u64),
            detail: format!(
                "witness did not defeat strong Menger: {achieved} of {required} \
                 (expected <= {})",
                case.failure_bound
            ),
        });
    }

    // sharpness probing: drop each fault in turn and re-test
    let mut probes = Vec::new();
    let members = case.faults.member_ids();
    for &removed in &members {
        let rest: Vec<u32> = members.iter().copied().filter(|&x| x != removed).collect();
        let shrunk = match case.faults.variant() {
            FaultVariant::Vertex => {
                FaultSet::vertices(g, rest.iter().map(|&x| VertexId(x)), "probe")?
            }
            FaultVariant::Edge => FaultSet::edges(g, rest.iter().map(|&x| EdgeId(x)), "probe")?,
        };
        let verdict = menger::is_strongly_menger(g, &shrunk, case.mode)?;
        probes.push(ProbeOutcome {
            removed,
            holds: verdict.holds,
        });
    }
    let restored = probes.iter().filter(|p| p.holds).count();
    notes.push(format!(
        "sharpness probe: {restored} of {} one-element-removed sets restore strong Menger",
        probes.len()
    ));

    Ok((totals, counterexamples, probes))
}

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

/// Run one campaign. The report is a pure function of the config apart from
/// wall time.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    let start = Instant::now();
    let params = AqParams::new(config.n, config.k)?;
    if config.target.is_menger() && params.vertex_count() > MENGER_VERTEX_CAP {
        return Err(Error::Infeasible {
            reason: format!(
                "k^n = {} exceeds the all-pairs Menger cap {MENGER_VERTEX_CAP}",
                params.vertex_count()
            ),
        });
    }
    let g = AqGraph::new(params);
    let budget = resolve_budget(&g, config)?;

    let mut notes: Vec<String> = Vec::new();
    if matches!(config.target, Target::Thm1 | Target::Thm1Empirical) {
        notes.push(
            "target checks vertex-disjoint strong Menger connectivity under vertex faults; \
             the statement is sometimes labelled 'edge connected' but the vertex reading is \
             the one verified here, and the edge-fault analogues are thm2 and thm3"
                .to_string(),
        );
    }
    if config.target == Target::Thm1Empirical {
        notes.push(
            "empirical-only target: results are reported, never asserted; k=3 needs n >= 4 \
             for the asserted form (thm1)"
                .to_string(),
        );
    }
    if config.budget.is_some() && config.probe {
        notes.push("probe mode: budget may exceed the target's bound".to_string());
    }

    let mut probe_results = Vec::new();
    let (totals, counterexamples) = match config.target {
        Target::Structure => run_structure(&g, config.seed),
        Target::Cn => run_cn(&g),
        Target::Expansion => run_expansion(&g, config, budget),
        Target::Witness2 | Target::Witness3 | Target::Witness4 => {
            let (t, c, p) = run_witness(&g, config, &mut notes)?;
            probe_results = p;
            (t, c)
        }
        _ => run_fault_campaign(&g, config, budget, &mut notes)?,
    };

    let mut report = CampaignReport {
        schema_version: SCHEMA_VERSION.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        budget_used: budget,
        totals,
        counterexamples,
        notes,
        probe_results,
        wall_time_ms: start.elapsed().as_millis() as u64,
        content_hash: String::new(),
    };
    report.content_hash = report.compute_content_hash();
    Ok(report)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Edgelist,
    Dot,
}

impl std::str::FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "edgelist" => Ok(ExportFormat::Edgelist),
            "dot" => Ok(ExportFormat::Dot),
            other => Err(format!("unknown format '{other}', expected edgelist or dot")),
        }
    }
}

/// Byte-deterministic graph export.
pub fn export_graph(params: AqParams, format: ExportFormat, w: &mut impl Write) -> Result<()> {
    let g = AqGraph::new(params);
    match format {
        ExportFormat::Edgelist => g.export_edgelist(w)?,
        ExportFormat::Dot => g.export_dot(w)?,
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReplayMismatch {
    pub index: u64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReplaySummary {
    pub hash_ok: bool,
    pub replayed: usize,
    pub reproduced: usize,
    pub mismatches: Vec<ReplayMismatch>,
}

impl ReplaySummary {
    pub fn all_reproduced(&self) -> bool {
        self.hash_ok && self.mismatches.is_empty()
    }
}

/// Re-run every stored counterexample and confirm it still fails the same
/// way. Also re-checks the report's content hash.
pub fn replay_report(report: &CampaignReport) -> Result<ReplaySummary> {
    let params = AqParams::new(report.config.n, report.config.k)?;
    let g = AqGraph::new(params);
    let mut summary = ReplaySummary {
        hash_ok: report.verify_content_hash(),
        replayed: 0,
        reproduced: 0,
        mismatches: Vec::new(),
    };
    let mut scratch = Scratch::new(&g);
    for cx in &report.counterexamples {
        summary.replayed += 1;
        let outcome = if report.config.target.is_witness() {
            replay_witness_counterexample(&g, report, cx)?
        } else {
            match check_fault_set(&g, report.config.target, &cx.members, &mut scratch)? {
                SetOutcome::Pass => Some("set now passes".to_string()),
                SetOutcome::Fail {
                    achieved, required, ..
                } => {
                    if achieved == cx.achieved && required == cx.required {
                        None
                    } else {
                        Some(format!(
                            "numbers changed: achieved {achieved:?} vs {:?}, required {required:?} vs {:?}",
                            cx.achieved, cx.required
                        ))
                    }
                }
            }
        };
        match outcome {
            None => summary.reproduced += 1,
            Some(detail) => summary.mismatches.push(ReplayMismatch {
                index: cx.index,
                detail,
            }),
        }
    }
    Ok(summary)
}

fn replay_witness_counterexample(
    g: &AqGraph,
    report: &CampaignReport,
    cx: &Counterexample,
) -> Result<Option<String>> {
    let mode = match cx.variant {
        FaultVariant::Vertex => DisjointMode::Vertex,
        FaultVariant::Edge => DisjointMode::Edge,
    };
    let faults = match cx.variant {
        FaultVariant::Vertex => FaultSet::vertices(
            g,
            cx.members.iter().map(|&x| VertexId(x)),
            cx.provenance.clone(),
        )?,
        FaultVariant::Edge => FaultSet::edges(
            g,
            cx.members.iter().map(|&x| EdgeId(x)),
            cx.provenance.clone(),
        )?,
    };
    let (u, v) = cx.pair.ok_or_else(|| Error::Infeasible {
        reason: format!(
            "witness counterexample {} in target {} has no pair",
            cx.index, report.config.target
        ),
    })?;
    let achieved = menger::disjoint_path_count(g, &faults, mode, VertexId(u), VertexId(v))? as u64;
    if Some(achieved) == cx.achieved {
        Ok(None)
    } else {
        Ok(Some(format!(
            "witness pair now achieves {achieved}, stored {:?}",
            cx.achieved
        )))
    }
}
