//! Component structure of the cube after vertex or edge deletions, and the
//! large-component bound checks used by the fault campaigns.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::faults;
use crate::menger::{FaultSet, FaultVariant};
use crate::topology::{AqGraph, EdgeId, EdgeKind, Sign, VertexId};

/// Partition of the surviving vertices into connected components, ordered by
/// descending size with ties broken by smallest member id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    components: Vec<Vec<VertexId>>,
    fault_variant: FaultVariant,
    fault_size: usize,
    provenance: String,
}

/// Serialized view: sizes and smallest members only.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub fault_variant: FaultVariant,
    pub fault_size: usize,
    pub provenance: String,
    pub components: Vec<ComponentEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub size: usize,
    pub smallest: u32,
}

impl ComponentReport {
    pub fn components(&self) -> &[Vec<VertexId>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// The large component (empty slice when nothing survives).
    pub fn large(&self) -> &[VertexId] {
        self.components.first().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn large_size(&self) -> usize {
        self.large().len()
    }

    /// Union of every component except the large one, ascending.
    pub fn small_union(&self) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self
            .components
            .iter()
            .skip(1)
            .flat_map(|c| c.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    pub fn summary(&self) -> ComponentSummary {
        ComponentSummary {
            fault_variant: self.fault_variant,
            fault_size: self.fault_size,
            provenance: self.provenance.clone(),
            components: self
                .components
                .iter()
                .map(|c| ComponentEntry {
                    size: c.len(),
                    smallest: c[0].0,
                })
                .collect(),
        }
    }
}

/// Exact partition of G - f into maximal connected subgraphs.
pub fn components_after_faults(g: &AqGraph, f: &FaultSet) -> ComponentReport {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    if f.variant() == FaultVariant::Vertex {
        if let Some(vs) = f.vertex_ids() {
            for v in vs {
                seen[v.index()] = true;
            }
        }
    }
    let mut components: Vec<Vec<VertexId>> = Vec::new();
    let mut queue: Vec<u32> = Vec::new();
    for start in 0..n as u32 {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        queue.clear();
        queue.push(start);
        let mut members = vec![VertexId(start)];
        while let Some(x) = queue.pop() {
            match f.variant() {
                FaultVariant::Vertex => {
                    for &y in g.neighbor_ids(VertexId(x)) {
                        if !seen[y as usize] {
                            seen[y as usize] = true;
                            queue.push(y);
                            members.push(VertexId(y));
                        }
                    }
                }
                FaultVariant::Edge => {
                    for &e in g.incident_edges(VertexId(x)) {
                        if f.contains_edge(e) {
                            continue;
                        }
                        let (a, b) = g.edge_endpoints(e);
                        let y = if a.0 == x { b.0 } else { a.0 };
                        if !seen[y as usize] {
                            seen[y as usize] = true;
                            queue.push(y);
                            members.push(VertexId(y));
                        }
                    }
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    ComponentReport {
        components,
        fault_variant: f.variant(),
        fault_size: f.len(),
        provenance: f.provenance().to_string(),
    }
}

// ---------------------------------------------------------------------------
// Hot-loop helper: size of the largest component, no member lists.
// ---------------------------------------------------------------------------

/// Reusable union-find buffers for fault campaigns that only need the size of
/// the large component.
pub(crate) struct ComponentScratch {
    parent: Vec<u32>,
    size: Vec<u32>,
    vertex_faulty: Vec<bool>,
    edge_faulty: Vec<bool>,
}

impl ComponentScratch {
    pub fn new(g: &AqGraph) -> Self {
        ComponentScratch {
            parent: vec![0; g.vertex_count()],
            size: vec![1; g.vertex_count()],
            vertex_faulty: vec![false; g.vertex_count()],
            edge_faulty: vec![false; g.edge_count()],
        }
    }

    fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i as u32;
        }
        self.size.iter_mut().for_each(|s| *s = 1);
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }

    pub fn largest_after_vertex_faults(&mut self, g: &AqGraph, faulty: &[u32]) -> usize {
        self.reset();
        for &v in faulty {
            self.vertex_faulty[v as usize] = true;
        }
        for e in 0..g.edge_count() as u32 {
            let (a, b) = g.edge_endpoints(EdgeId(e));
            if !self.vertex_faulty[a.index()] && !self.vertex_faulty[b.index()] {
                self.union(a.0, b.0);
            }
        }
        let mut best = 0;
        for v in 0..g.vertex_count() as u32 {
            if !self.vertex_faulty[v as usize] && self.parent[v as usize] == v {
                best = best.max(self.size[v as usize] as usize);
            }
        }
        for &v in faulty {
            self.vertex_faulty[v as usize] = false;
        }
        best
    }

    pub fn largest_after_edge_faults(&mut self, g: &AqGraph, faulty: &[u32]) -> usize {
        self.reset();
        for &e in faulty {
            self.edge_faulty[e as usize] = true;
        }
        for e in 0..g.edge_count() as u32 {
            if self.edge_faulty[e as usize] {
                continue;
            }
            let (a, b) = g.edge_endpoints(EdgeId(e));
            self.union(a.0, b.0);
        }
        let mut best = 0;
        for v in 0..g.vertex_count() as u32 {
            if self.parent[v as usize] == v {
                best = best.max(self.size[v as usize] as usize);
            }
        }
        for &e in faulty {
            self.edge_faulty[e as usize] = false;
        }
        best
    }
}

// ---------------------------------------------------------------------------
// Bound checks
// ---------------------------------------------------------------------------

/// Large-component bound under vertex faults: within budget (8n-12 for k=3
/// with n>=4, 8n-11 for k>=4 with n>=2) the large component keeps at least
/// |V| - |f| - 1 vertices.
pub fn check_large_component_vertex(g: &AqGraph, f: &FaultSet) -> Result<bool> {
    if f.variant() != FaultVariant::Vertex {
        return Err(Error::VariantMismatch {
            expected: "vertex",
            got: f.variant().name(),
        });
    }
    let (n, k) = (g.params().n() as usize, g.params().k());
    let budget = vertex_bound_budget(g)?;
    if f.len() > budget {
        return Err(Error::HypothesisUnmet {
            reason: format!(
                "|f| = {} exceeds the vertex budget {budget} for n={n}, k={k}",
                f.len()
            ),
        });
    }
    let report = components_after_faults(g, f);
    Ok(report.large_size() + f.len() + 1 >= g.vertex_count())
}

/// The vertex-fault budget for the large-component bound, or why it does not
/// apply to these parameters.
pub fn vertex_bound_budget(g: &AqGraph) -> Result<usize> {
    let (n, k) = (g.params().n() as usize, g.params().k());
    if k == 3 && n >= 4 {
        Ok(8 * n - 12)
    } else if k >= 4 && n >= 2 {
        Ok(8 * n - 11)
    } else {
        Err(Error::HypothesisUnmet {
            reason: format!("vertex bound needs k=3 with n>=4 or k>=4 with n>=2, got n={n}, k={k}"),
        })
    }
}

/// Shape of the smaller component when the cube disconnects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SmallerShape {
    Singleton(VertexId),
    /// The specific triangle {u, shift(u, <=2, -1), shift(u, <=2, +1)}.
    Triangle([VertexId; 3]),
    Other(Vec<VertexId>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeVerdict {
    pub matches: bool,
    pub component_sizes: Vec<usize>,
    pub smaller: SmallerShape,
}

/// For k = 3 and a disconnecting fault set within budget 8n-12, the surviving
/// graph must have exactly two components, the smaller being a singleton
/// (n >= 4) or a singleton or the specific augmented-dim-2 triangle (n = 3).
pub fn check_two_component_shape(g: &AqGraph, f: &FaultSet) -> Result<ShapeVerdict> {
    if f.variant() != FaultVariant::Vertex {
        return Err(Error::VariantMismatch {
            expected: "vertex",
            got: f.variant().name(),
        });
    }
    let (n, k) = (g.params().n() as usize, g.params().k());
    if k != 3 || n < 3 {
        return Err(Error::HypothesisUnmet {
            reason: format!("shape check needs k=3 and n>=3, got n={n}, k={k}"),
        });
    }
    let budget = 8 * n - 12;
    if f.len() > budget {
        return Err(Error::HypothesisUnmet {
            reason: format!("|f| = {} exceeds budget {budget}", f.len()),
        });
    }
    let report = components_after_faults(g, f);
    if report.component_count() < 2 {
        return Err(Error::HypothesisUnmet {
            reason: "surviving graph is connected; shape check needs a disconnection".to_string(),
        });
    }
    let sizes = report.sizes();
    let smaller_members = report.components().last().unwrap().clone();
    let smaller = classify_smaller(g, &smaller_members);
    let two = report.component_count() == 2;
    let matches = two
        && matches!(
            (&smaller, n),
            (SmallerShape::Singleton(_), _) | (SmallerShape::Triangle(_), 3)
        );
    Ok(ShapeVerdict {
        matches,
        component_sizes: sizes,
        smaller,
    })
}

fn classify_smaller(g: &AqGraph, members: &[VertexId]) -> SmallerShape {
    if members.len() == 1 {
        return SmallerShape::Singleton(members[0]);
    }
    if members.len() == 3 {
        for &u in members {
            let minus = g
                .neighbor_by_kind(
                    u,
                    EdgeKind::Augmented {
                        dim: 2,
                        sign: Sign::Minus,
                    },
                )
                .expect("n >= 3 admits augmented dim 2");
            let plus = g
                .neighbor_by_kind(
                    u,
                    EdgeKind::Augmented {
                        dim: 2,
                        sign: Sign::Plus,
                    },
                )
                .expect("n >= 3 admits augmented dim 2");
            let mut expect = [u, minus, plus];
            expect.sort_unstable();
            if expect == members[..3] {
                return SmallerShape::Triangle([u, minus, plus]);
            }
        }
    }
    SmallerShape::Other(members.to_vec())
}

/// Edge-fault budgets for the two large-component tiers.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeFaultTier {
    /// budget 8n-7, large component >= |V| - 1
    One,
    /// budget 12n-13, large component >= |V| - 2
    Two,
}

impl EdgeFaultTier {
    pub fn budget(self, n: usize) -> usize {
        match self {
            EdgeFaultTier::One => 8 * n - 7,
            EdgeFaultTier::Two => 12 * n - 13,
        }
    }

    /// How many vertices the large component may miss.
    pub fn deficit(self) -> usize {
        match self {
            EdgeFaultTier::One => 1,
            EdgeFaultTier::Two => 2,
        }
    }
}

/// Large-component bound under edge faults: within the tier budget the large
/// component misses at most the tier's deficit.
pub fn check_large_component_edge(g: &AqGraph, s: &FaultSet, tier: EdgeFaultTier) -> Result<bool> {
    if s.variant() != FaultVariant::Edge {
        return Err(Error::VariantMismatch {
            expected: "edge",
            got: s.variant().name(),
        });
    }
    let n = g.params().n() as usize;
    if n < 2 {
        return Err(Error::DimensionTooSmall {
            needs: 2,
            n: g.params().n(),
        });
    }
    let budget = tier.budget(n);
    if s.len() > budget {
        return Err(Error::HypothesisUnmet {
            reason: format!("|s| = {} exceeds tier budget {budget}", s.len()),
        });
    }
    let report = components_after_faults(g, s);
    Ok(report.large_size() + tier.deficit() >= g.vertex_count())
}

/// Sampled check of the regular-graph premise that turns large-component
/// bounds into strong Menger connectivity: with r the degree, every vertex
/// set of size at most budget + r - 1 must leave a component of size at
/// least |V| - |V_f| - 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PremiseReport {
    pub budget: usize,
    pub max_fault_size: usize,
    pub trials: u64,
    pub passes: u64,
    pub failures: u64,
    pub counterexamples: Vec<Vec<u32>>,
}

pub fn check_component_premise(
    g: &AqGraph,
    budget: usize,
    trials: u64,
    seed: u64,
) -> Result<PremiseReport> {
    let n = g.params().n();
    if n < 2 {
        return Err(Error::DimensionTooSmall { needs: 2, n });
    }
    let r = g.degree();
    if g.vertex_count() < 2 * r + 1 {
        return Err(Error::HypothesisUnmet {
            reason: format!(
                "premise needs |V| >= 2r+1 = {}, graph has {}",
                2 * r + 1,
                g.vertex_count()
            ),
        });
    }
    let max_fault_size = budget + r - 1;
    if max_fault_size >= g.vertex_count() {
        return Err(Error::Infeasible {
            reason: format!(
                "fault ceiling {max_fault_size} reaches the whole vertex set of {}",
                g.vertex_count()
            ),
        });
    }
    let mut scratch = ComponentScratch::new(g);
    let mut passes = 0;
    let mut failures = 0;
    let mut counterexamples = Vec::new();
    for trial in 0..trials {
        let size = (faults::derive_seed(seed, trial) % (max_fault_size as u64 + 1)) as usize;
        let set = faults::random_fault_set(
            g,
            size,
            FaultVariant::Vertex,
            faults::derive_seed(seed, trial ^ 0x9e37_79b9),
        )?;
        let members = set.member_ids();
        let large = scratch.largest_after_vertex_faults(g, &members);
        if large + size + 1 >= g.vertex_count() {
            passes += 1;
        } else {
            failures += 1;
            counterexamples.push(members);
        }
    }
    Ok(PremiseReport {
        budget,
        max_fault_size,
        trials,
        passes,
        failures,
        counterexamples,
    })
}

/// Open neighborhood of a vertex set: all neighbors of members, minus the
/// set itself. Ascending.
pub fn open_neighborhood(g: &AqGraph, set: &[VertexId]) -> Vec<VertexId> {
    let mut in_set = vec![false; g.vertex_count()];
    for &v in set {
        in_set[v.index()] = true;
    }
    let mut out: Vec<VertexId> = Vec::new();
    let mut seen = vec![false; g.vertex_count()];
    for &v in set {
        for &w in g.neighbor_ids(v) {
            if !in_set[w as usize] && !seen[w as usize] {
                seen[w as usize] = true;
                out.push(VertexId(w));
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::make_graph;

    #[test]
    fn no_faults_one_component() {
        let g = make_graph(2, 3).unwrap();
        let f = FaultSet::empty(FaultVariant::Vertex, "none");
        let report = components_after_faults(&g, &f);
        assert_eq!(report.sizes(), vec![9]);
        assert!(report.small_union().is_empty());
    }

    #[test]
    fn aq23_neighborhood_deletion_leaves_three_singletons() {
        // In AQ_{2,3} the two non-neighbors of a vertex share all six of its
        // neighbors, so deleting N(u) strands three singletons.
        let g = make_graph(2, 3).unwrap();
        let nf: Vec<VertexId> = g
            .neighbor_ids(VertexId(0))
            .iter()
            .map(|&x| VertexId(x))
            .collect();
        let f = FaultSet::vertices(&g, nf, "nbhd").unwrap();
        let report = components_after_faults(&g, &f);
        assert_eq!(report.sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn aq33_neighborhood_deletion_isolates_exactly_one() {
        let g = make_graph(3, 3).unwrap();
        let u = g.id_of_label("120").unwrap();
        let nf: Vec<VertexId> = g.neighbor_ids(u).iter().map(|&x| VertexId(x)).collect();
        let f = FaultSet::vertices(&g, nf, "nbhd").unwrap();
        let report = components_after_faults(&g, &f);
        assert_eq!(report.sizes(), vec![16, 1]);
        assert_eq!(report.small_union(), vec![u]);
    }

    #[test]
    fn partition_property() {
        let g = make_graph(2, 4).unwrap();
        let f = FaultSet::vertices(&g, [VertexId(1), VertexId(6), VertexId(9)], "t").unwrap();
        let report = components_after_faults(&g, &f);
        let total: usize = report.sizes().iter().sum();
        assert_eq!(total, g.vertex_count() - 3);
    }

    #[test]
    fn scratch_agrees_with_full_report() {
        let g = make_graph(2, 4).unwrap();
        let mut scratch = ComponentScratch::new(&g);
        for seed in 0..50u64 {
            let f = faults::random_fault_set(&g, (seed % 7) as usize, FaultVariant::Vertex, seed)
                .unwrap();
            let report = components_after_faults(&g, &f);
            let fast = scratch.largest_after_vertex_faults(&g, &f.member_ids());
            assert_eq!(report.large_size(), fast);

            let s =
                faults::random_fault_set(&g, (seed % 11) as usize, FaultVariant::Edge, seed ^ 1)
                    .unwrap();
            let report = components_after_faults(&g, &s);
            let fast = scratch.largest_after_edge_faults(&g, &s.member_ids());
            assert_eq!(report.large_size(), fast);
        }
    }

    #[test]
    fn vertex_bound_hypotheses() {
        let g23 = make_graph(2, 3).unwrap();
        let f = FaultSet::empty(FaultVariant::Vertex, "t");
        assert!(matches!(
            check_large_component_vertex(&g23, &f),
            Err(Error::HypothesisUnmet { .. })
        ));

        let g24 = make_graph(2, 4).unwrap();
        for seed in 0..20u64 {
            let f = faults::random_fault_set(&g24, 5, FaultVariant::Vertex, seed).unwrap();
            assert!(check_large_component_vertex(&g24, &f).unwrap());
        }
        let too_big = faults::random_fault_set(&g24, 6, FaultVariant::Vertex, 0).unwrap();
        assert!(matches!(
            check_large_component_vertex(&g24, &too_big),
            Err(Error::HypothesisUnmet { .. })
        ));
    }

    #[test]
    fn vertex_bound_on_aq34_neighborhood() {
        let g = make_graph(3, 4).unwrap();
        let nf: Vec<VertexId> = g
            .neighbor_ids(VertexId(0))
            .iter()
            .map(|&x| VertexId(x))
            .collect();
        assert_eq!(nf.len(), 10); // within budget 8n-11 = 13
        let f = FaultSet::vertices(&g, nf, "nbhd").unwrap();
        assert!(check_large_component_vertex(&g, &f).unwrap());
    }

    #[test]
    fn shape_singleton_and_triangle() {
        let g = make_graph(3, 3).unwrap();
        let u = g.id_of_label("120").unwrap();
        let nf: Vec<VertexId> = g.neighbor_ids(u).iter().map(|&x| VertexId(x)).collect();
        let f = FaultSet::vertices(&g, nf, "nbhd").unwrap();
        let verdict = check_two_component_shape(&g, &f).unwrap();
        assert!(verdict.matches);
        assert_eq!(verdict.smaller, SmallerShape::Singleton(u));

        // triangle {u, aug(2,-1), aug(2,+1)} and its neighborhood
        let minus = g
            .neighbor_by_kind(
                u,
                EdgeKind::Augmented {
                    dim: 2,
                    sign: Sign::Minus,
                },
            )
            .unwrap();
        let plus = g
            .neighbor_by_kind(
                u,
                EdgeKind::Augmented {
                    dim: 2,
                    sign: Sign::Plus,
                },
            )
            .unwrap();
        let tri = [u, minus, plus];
        let hood = open_neighborhood(&g, &tri);
        assert!(hood.len() <= 12, "triangle neighborhood within budget");
        let f = FaultSet::vertices(&g, hood, "tri-nbhd").unwrap();
        let verdict = check_two_component_shape(&g, &f).unwrap();
        assert!(verdict.matches);
        assert!(matches!(verdict.smaller, SmallerShape::Triangle(_)));
    }

    #[test]
    fn shape_needs_disconnection() {
        let g = make_graph(3, 3).unwrap();
        let f = FaultSet::vertices(&g, [VertexId(0)], "t").unwrap();
        assert!(matches!(
            check_two_component_shape(&g, &f),
            Err(Error::HypothesisUnmet { .. })
        ));
    }

    #[test]
    fn edge_bound_tiers() {
        let g = make_graph(2, 4).unwrap();
        let star: Vec<EdgeId> = g.incident_edges(VertexId(0)).to_vec();
        assert_eq!(star.len(), 6);
        let s = FaultSet::edges(&g, star, "star").unwrap();
        assert!(check_large_component_edge(&g, &s, EdgeFaultTier::One).unwrap());

        let g23 = make_graph(2, 3).unwrap();
        let over = faults::random_fault_set(&g23, 10, FaultVariant::Edge, 0).unwrap();
        assert!(matches!(
            check_large_component_edge(&g23, &over, EdgeFaultTier::One),
            Err(Error::HypothesisUnmet { .. })
        ));
        assert!(check_large_component_edge(&g23, &over, EdgeFaultTier::Two).is_ok());
    }

    #[test]
    fn shape_singleton_at_n4() {
        // 81-vertex cube: deleting one neighborhood (14 <= 8n-12 = 20
        // vertices) strands exactly a singleton
        let g = make_graph(4, 3).unwrap();
        let u = VertexId(17);
        let nf: Vec<VertexId> = g.neighbor_ids(u).iter().map(|&x| VertexId(x)).collect();
        assert_eq!(nf.len(), 14);
        let f = FaultSet::vertices(&g, nf, "nbhd").unwrap();
        let verdict = check_two_component_shape(&g, &f).unwrap();
        assert!(verdict.matches);
        assert_eq!(verdict.smaller, SmallerShape::Singleton(u));
        assert_eq!(verdict.component_sizes, vec![66, 1]);
    }

    #[test]
    fn premise_on_aq34_at_budget_four() {
        // fault ceiling 4 + 10 - 1 = 13; every sampled set keeps a component
        // missing at most |V_f| + 1 vertices
        let g = make_graph(3, 4).unwrap();
        let report = check_component_premise(&g, 4, 1000, 23).unwrap();
        assert_eq!(report.max_fault_size, 13);
        assert_eq!(report.passes, 1000);
        assert_eq!(report.failures, 0);
    }

    #[test]
    fn summary_serializes_sizes_and_smallest_members() {
        let g = make_graph(2, 3).unwrap();
        let nf: Vec<VertexId> = g
            .neighbor_ids(VertexId(0))
            .iter()
            .map(|&x| VertexId(x))
            .collect();
        let f = FaultSet::vertices(&g, nf, "nbhd").unwrap();
        let summary = components_after_faults(&g, &f).summary();
        let json = serde_json::to_value(&summary).unwrap();
        assert_eq!(json["fault_variant"], "vertex");
        assert_eq!(json["fault_size"], 6);
        assert_eq!(json["components"].as_array().unwrap().len(), 3);
        assert_eq!(json["components"][0]["size"], 1);
        assert_eq!(json["components"][0]["smallest"], 0);
    }

    #[test]
    fn premise_holds_when_connectivity_covers_it() {
        // budget 0 keeps |V_f| <= 5 below the connectivity 6, so the graph
        // stays connected and every trial passes
        let g = make_graph(2, 4).unwrap();
        let report = check_component_premise(&g, 0, 500, 11).unwrap();
        assert_eq!(report.max_fault_size, 5);
        assert_eq!(report.failures, 0);
        assert_eq!(report.passes, 500);
    }

    #[test]
    fn premise_rejects_degenerate_budget() {
        // budget 11 pushes the fault ceiling to 11 + 6 - 1 = 16 = |V|
        let g = make_graph(2, 4).unwrap();
        assert!(matches!(
            check_component_premise(&g, 11, 10, 0),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn premise_needs_enough_vertices() {
        // AQ_{2,3} has 9 < 2r+1 = 13 vertices, outside the premise hypothesis
        let g = make_graph(2, 3).unwrap();
        assert!(matches!(
            check_component_premise(&g, 0, 10, 0),
            Err(Error::HypothesisUnmet { .. })
        ));
    }

    #[test]
    fn expansion_within_subcubes_aq33() {
        // exhaustive |U| <= 3 inside each subcube: external neighborhood has
        // at least 2|U| vertices
        let g = make_graph(3, 3).unwrap();
        for i in 0..3u8 {
            let sub = g.subcube_vertices(i).unwrap();
            let m = sub.len();
            for a in 0..m {
                check_expansion(&g, i, &[sub[a]]);
                for b in a + 1..m {
                    check_expansion(&g, i, &[sub[a], sub[b]]);
                    for c in b + 1..m {
                        check_expansion(&g, i, &[sub[a], sub[b], sub[c]]);
                    }
                }
            }
        }
    }

    fn check_expansion(g: &AqGraph, subcube: u8, set: &[VertexId]) {
        let outside = open_neighborhood(g, set)
            .into_iter()
            .filter(|&w| g.subcube_of(w) != subcube)
            .count();
        assert!(
            outside >= 2 * set.len(),
            "expansion failed for {set:?} in subcube {subcube}"
        );
    }

    #[test]
    fn set_neighborhood_bound_aq34() {
        // exhaustive |U| in {2,3}: |N(U)| >= 8n-10 = 14 on the 64-vertex cube
        let g = make_graph(3, 4).unwrap();
        let n = g.vertex_count() as u32;
        for a in 0..n {
            for b in a + 1..n {
                let pair = [VertexId(a), VertexId(b)];
                assert!(open_neighborhood(&g, &pair).len() >= 14);
            }
        }
        // |U| = 3 sampled densely but deterministically to keep the test fast
        let mut checked = 0;
        for a in (0..n).step_by(3) {
            for b in (a + 1..n).step_by(2) {
                for c in (b + 1..n).step_by(5) {
                    let set = [VertexId(a), VertexId(b), VertexId(c)];
                    assert!(open_neighborhood(&g, &set).len() >= 14);
                    checked += 1;
                }
            }
        }
        assert!(checked > 1000);
    }
}
