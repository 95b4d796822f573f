//! Fault-set generation: seeded random sets, conditional edge sets that keep
//! minimum degree 2, lexicographic exhaustive enumeration, and the three
//! adversarial witnesses that show the Menger budgets are sharp.

use rand::seq::index::sample;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::menger::{DisjointMode, FaultSet, FaultVariant};
use crate::topology::{AqGraph, EdgeId, EdgeKind, Sign, VertexId};

/// Derive an independent stream seed from a campaign seed and a trial index;
/// one stream per trial keeps results independent of worker scheduling.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform sample of m vertices or edges, without replacement, reproducible
/// from the seed.
pub fn random_fault_set(g: &AqGraph, m: usize, variant: FaultVariant, seed: u64) -> Result<FaultSet> {
    let pool = match variant {
        FaultVariant::Vertex => g.vertex_count(),
        FaultVariant::Edge => g.edge_count(),
    };
    if m > pool {
        return Err(Error::OutOfRange {
            what: "fault-set size",
            value: m,
            limit: pool,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<u32> = sample(&mut rng, pool, m).iter().map(|i| i as u32).collect();
    let provenance = format!("random(seed={seed},m={m})");
    match variant {
        FaultVariant::Vertex => FaultSet::vertices(g, ids.into_iter().map(VertexId), provenance),
        FaultVariant::Edge => FaultSet::edges(g, ids.into_iter().map(EdgeId), provenance),
    }
}

const CONDITIONAL_RETRIES: usize = 64;

/// Edge fault set of size exactly m with minimum surviving degree >= 2:
/// rejection sampling first, then a greedy pass that never takes a vertex
/// below residual degree 2.
pub fn conditional_edge_fault_set(g: &AqGraph, m: usize, seed: u64) -> Result<FaultSet> {
    let edges = g.edge_count();
    if m > edges {
        return Err(Error::OutOfRange {
            what: "fault-set size",
            value: m,
            limit: edges,
        });
    }
    // keeping every vertex at degree >= 2 needs at least |V| surviving edges
    if edges - m < g.vertex_count() {
        return Err(Error::Unsatisfiable {
            reason: format!(
                "removing {m} of {edges} edges cannot keep minimum degree 2 on {} vertices",
                g.vertex_count()
            ),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degree = vec![0u32; g.vertex_count()];
    for attempt in 0..CONDITIONAL_RETRIES {
        let ids: Vec<u32> = sample(&mut rng, edges, m).iter().map(|i| i as u32).collect();
        for d in degree.iter_mut() {
            *d = g.degree() as u32;
        }
        for &e in &ids {
            let (a, b) = g.edge_endpoints(EdgeId(e));
            degree[a.index()] -= 1;
            degree[b.index()] -= 1;
        }
        if degree.iter().all(|&d| d >= 2) {
            let provenance = format!("conditional(seed={seed},m={m},attempt={attempt})");
            return FaultSet::edges(g, ids.into_iter().map(EdgeId), provenance);
        }
    }
    // greedy fallback over a seeded shuffle
    let mut order: Vec<u32> = (0..edges as u32).collect();
    for i in (1..order.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        order.swap(i, j);
    }
    for d in degree.iter_mut() {
        *d = g.degree() as u32;
    }
    let mut picked = Vec::with_capacity(m);
    for &e in &order {
        if picked.len() == m {
            break;
        }
        let (a, b) = g.edge_endpoints(EdgeId(e));
        if degree[a.index()] > 2 && degree[b.index()] > 2 {
            degree[a.index()] -= 1;
            degree[b.index()] -= 1;
            picked.push(e);
        }
    }
    if picked.len() < m {
        return Err(Error::Unsatisfiable {
            reason: format!(
                "could not build a conditional edge set of size {m} (got {})",
                picked.len()
            ),
        });
    }
    picked.sort_unstable();
    let provenance = format!("conditional-greedy(seed={seed},m={m})");
    FaultSet::edges(g, picked.into_iter().map(EdgeId), provenance)
}

/// C(pool, m), saturating.
pub fn count_subsets(pool: usize, m: usize) -> u128 {
    if m > pool {
        return 0;
    }
    let m = m.min(pool - m);
    let mut acc: u128 = 1;
    for i in 0..m {
        let num = (pool - i) as u128;
        acc = match acc.checked_mul(num) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Lexicographic enumeration of all m-subsets of 0..pool.
pub(crate) struct Combinations {
    pool: u32,
    m: u32,
    cur: Vec<u32>,
    started: bool,
    done: bool,
}

impl Combinations {
    pub fn new(pool: usize, m: usize) -> Self {
        Self::from_rank(pool, m, 0)
    }

    /// Start at the combination with the given lexicographic rank.
    pub fn from_rank(pool: usize, m: usize, rank: u64) -> Self {
        let total = count_subsets(pool, m);
        if (rank as u128) >= total {
            return Combinations {
                pool: pool as u32,
                m: m as u32,
                cur: Vec::new(),
                started: true,
                done: true,
            };
        }
        // combinatorial number system, most significant element first
        let mut cur = Vec::with_capacity(m);
        let mut remaining = rank as u128;
        let mut next_candidate = 0u32;
        for slot in 0..m {
            let mut x = next_candidate;
            loop {
                let below = count_subsets(pool - x as usize - 1, m - slot - 1);
                if remaining < below {
                    break;
                }
                remaining -= below;
                x += 1;
            }
            cur.push(x);
            next_candidate = x + 1;
        }
        Combinations {
            pool: pool as u32,
            m: m as u32,
            cur,
            started: false,
            done: false,
        }
    }

    /// The next combination, starting with the initial one.
    pub fn advance(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.cur);
        }
        let m = self.m as usize;
        let mut i = m;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.cur[i] < self.pool - self.m + i as u32 {
                break;
            }
        }
        self.cur[i] += 1;
        for j in i + 1..m {
            self.cur[j] = self.cur[j - 1] + 1;
        }
        Some(&self.cur)
    }
}

/// Streaming enumeration of size-m fault sets in lexicographic order, with a
/// stable index per emitted set. The optional conditional filter keeps only
/// edge sets with minimum surviving degree >= 2; filtered-out sets still
/// consume an index so distributed runs agree on numbering.
pub struct FaultSetStream<'g> {
    g: &'g AqGraph,
    combos: Combinations,
    variant: FaultVariant,
    conditional: bool,
    next_index: u64,
    degree_scratch: Vec<u32>,
}

impl<'g> FaultSetStream<'g> {
    pub fn total(&self) -> u128 {
        count_subsets(
            match self.variant {
                FaultVariant::Vertex => self.g.vertex_count(),
                FaultVariant::Edge => self.g.edge_count(),
            },
            self.combos.m as usize,
        )
    }
}

impl<'g> Iterator for FaultSetStream<'g> {
    type Item = (u64, FaultSet);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let members = self.combos.advance()?.to_vec();
            let index = self.next_index;
            self.next_index += 1;
            if self.conditional
                && !conditional_ok(self.g, &members, &mut self.degree_scratch)
            {
                continue;
            }
            let provenance = format!("enum[{index}]");
            let set = match self.variant {
                FaultVariant::Vertex => FaultSet::vertices(
                    self.g,
                    members.iter().map(|&v| VertexId(v)),
                    provenance,
                ),
                FaultVariant::Edge => {
                    FaultSet::edges(self.g, members.iter().map(|&e| EdgeId(e)), provenance)
                }
            }
            .expect("combination members are in range");
            return Some((index, set));
        }
    }
}

pub(crate) fn conditional_ok(g: &AqGraph, edge_members: &[u32], degree: &mut Vec<u32>) -> bool {
    degree.clear();
    degree.resize(g.vertex_count(), g.degree() as u32);
    for &e in edge_members {
        let (a, b) = g.edge_endpoints(EdgeId(e));
        degree[a.index()] -= 1;
        degree[b.index()] -= 1;
    }
    degree.iter().all(|&d| d >= 2)
}

/// All size-m fault sets, lexicographically, guarded by the enumeration
/// ceiling. Rejects with the exact cardinality when the space is too big.
pub fn enumerate_fault_sets<'g>(
    g: &'g AqGraph,
    m: usize,
    variant: FaultVariant,
    conditional: bool,
    ceiling: u64,
) -> Result<FaultSetStream<'g>> {
    if conditional && variant != FaultVariant::Edge {
        return Err(Error::VariantMismatch {
            expected: "edge",
            got: variant.name(),
        });
    }
    let pool = match variant {
        FaultVariant::Vertex => g.vertex_count(),
        FaultVariant::Edge => g.edge_count(),
    };
    if m > pool {
        return Err(Error::OutOfRange {
            what: "fault-set size",
            value: m,
            limit: pool,
        });
    }
    let total = count_subsets(pool, m);
    if total > ceiling as u128 {
        return Err(Error::Infeasible {
            reason: format!(
                "C({pool},{m}) = {total} subsets exceeds the enumeration ceiling {ceiling}; \
                 use sampled mode"
            ),
        });
    }
    Ok(FaultSetStream {
        g,
        combos: Combinations::new(pool, m),
        variant,
        conditional,
        next_index: 0,
        degree_scratch: Vec::new(),
    })
}

// ---------------------------------------------------------------------------
// Optimality witnesses
// ---------------------------------------------------------------------------

/// Which sharpness construction produced a witness.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// Vertex faults N(w) minus N[u] around an augmented edge (w, u).
    VertexCut,
    /// All edges at one vertex except a single kept edge.
    EdgeStar,
    /// Edges around a triangle, leaving one escape edge and degree >= 2.
    ConditionalTriangle,
}

/// A constructed fault set together with the pair it defeats and the exact
/// bounds it is expected to violate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessCase {
    pub kind: WitnessKind,
    pub mode: DisjointMode,
    /// true when the fault set keeps minimum surviving degree >= 2
    pub conditional: bool,
    pub faults: FaultSet,
    pub pair: (VertexId, VertexId),
    /// min of the pair's surviving degrees; always 4n-2 by construction
    pub required: usize,
    /// the disjoint-path count must come out <= this
    pub failure_bound: usize,
}

fn closed_neighborhood_of_set(g: &AqGraph, set: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
    let mut out: BTreeSet<VertexId> = set.clone();
    for &x in set {
        out.extend(g.neighbor_ids(x).iter().map(|&w| VertexId(w)));
    }
    out
}

/// Witness that the vertex-fault budget cannot grow: delete N(w) minus N[u]
/// for an augmented neighbor u = shift(w, <=dim, -1) with 2 <= dim <= n-1.
/// The set has exactly 4n-8 vertices for k=3 and 4n-7 for k >= 4, both
/// endpoints keep full degree 4n-2, yet fewer than 4n-2 vertex-disjoint
/// paths survive between u and a far vertex v.
///
/// v is the smallest-id vertex outside the distance-two ball around the
/// anchor edge. Small cubes (AQ_{3,3} has diameter 2) leave that ball
/// covering everything, so the selection falls back to the conditions the
/// bound actually needs: v outside N[w] with full surviving degree.
pub fn vertex_cut_witness(g: &AqGraph, anchor: VertexId, dim: u8) -> Result<WitnessCase> {
    let n = g.params().n();
    let k = g.params().k();
    if n < 3 {
        return Err(Error::DimensionTooSmall { needs: 3, n });
    }
    if dim < 2 || dim > n - 1 {
        return Err(Error::OutOfRange {
            what: "augmented dimension",
            value: dim as usize,
            limit: n as usize - 1,
        });
    }
    let w = anchor;
    let u = g.neighbor_by_kind(
        w,
        EdgeKind::Augmented {
            dim,
            sign: Sign::Minus,
        },
    )?;

    let nw: BTreeSet<VertexId> = g.neighbor_ids(w).iter().map(|&x| VertexId(x)).collect();
    let mut closed_u: BTreeSet<VertexId> =
        g.neighbor_ids(u).iter().map(|&x| VertexId(x)).collect();
    closed_u.insert(u);
    let members: BTreeSet<VertexId> = nw.difference(&closed_u).copied().collect();

    let expected = if k == 3 {
        4 * n as usize - 8
    } else {
        4 * n as usize - 7
    };
    assert_eq!(
        members.len(),
        expected,
        "vertex witness size must match the closed form"
    );

    let faults = FaultSet::vertices(
        g,
        members.iter().copied(),
        format!("vertex-cut-witness(anchor={},dim={dim})", w.0),
    )?;
    let degree = 4 * n as usize - 2;

    // primary: v avoids everything within distance two of the anchor edge
    let mut near: BTreeSet<VertexId> = nw.union(&closed_u).copied().collect();
    near = closed_neighborhood_of_set(g, &near);
    let v = g
        .vertex_ids()
        .find(|x| !near.contains(x) && *x != u && *x != w)
        .or_else(|| {
            g.vertex_ids().find(|&x| {
                x != u
                    && x != w
                    && !nw.contains(&x)
                    && crate::menger::surviving_degree(g, &faults, x) == degree
            })
        })
        .ok_or_else(|| Error::Unsatisfiable {
            reason: "no vertex keeps full degree away from the anchor; graph too small"
                .to_string(),
        })?;

    debug_assert_eq!(crate::menger::surviving_degree(g, &faults, u), degree);
    debug_assert_eq!(crate::menger::surviving_degree(g, &faults, v), degree);
    Ok(WitnessCase {
        kind: WitnessKind::VertexCut,
        mode: DisjointMode::Vertex,
        conditional: false,
        faults,
        pair: (u, v),
        required: degree,
        failure_bound: degree - 1,
    })
}

/// Witness that the edge-fault budget cannot grow: delete every edge at w
/// except (u, w). Exactly 4n-3 edges go, u and the far vertex v keep degree
/// 4n-2, but at most 4n-3 edge-disjoint paths remain between them.
pub fn edge_star_witness(g: &AqGraph, u: VertexId, w: VertexId) -> Result<WitnessCase> {
    let n = g.params().n();
    if n < 2 {
        return Err(Error::DimensionTooSmall { needs: 2, n });
    }
    let kept = g
        .edge_between(u, w)
        .ok_or_else(|| Error::Unsatisfiable {
            reason: format!("{u} and {w} are not adjacent"),
        })?;
    let members: Vec<EdgeId> = g
        .incident_edges(w)
        .iter()
        .copied()
        .filter(|&e| e != kept)
        .collect();
    assert_eq!(members.len(), 4 * n as usize - 3);

    let mut excluded: BTreeSet<VertexId> =
        g.neighbor_ids(w).iter().map(|&x| VertexId(x)).collect();
    excluded.insert(w);
    let v = g
        .vertex_ids()
        .find(|x| !excluded.contains(x))
        .ok_or_else(|| Error::Unsatisfiable {
            reason: "every vertex neighbors w; graph too small".to_string(),
        })?;

    let faults = FaultSet::edges(
        g,
        members,
        format!("edge-star-witness(u={},w={})", u.0, w.0),
    )?;
    let degree = 4 * n as usize - 2;
    debug_assert_eq!(crate::menger::surviving_degree(g, &faults, u), degree);
    debug_assert_eq!(crate::menger::surviving_degree(g, &faults, v), degree);
    Ok(WitnessCase {
        kind: WitnessKind::EdgeStar,
        mode: DisjointMode::Edge,
        conditional: false,
        faults,
        pair: (u, v),
        required: degree,
        failure_bound: degree - 1,
    })
}

/// Conditional witness: around the triangle {u, shift(u,1,+1), shift(u,<=2,+1)}
/// delete all edges at the two non-anchor corners except the triangle itself
/// and one escape edge. Exactly 8n-9 edges go, minimum degree stays >= 2,
/// yet at most 4n-3 edge-disjoint paths join u to a far vertex v.
pub fn conditional_triangle_witness(g: &AqGraph, anchor: VertexId) -> Result<WitnessCase> {
    let n = g.params().n();
    if n < 2 {
        return Err(Error::DimensionTooSmall { needs: 2, n });
    }
    let u = anchor;
    let u1 = g.neighbor_by_kind(
        u,
        EdgeKind::Traditional {
            dim: 1,
            sign: Sign::Plus,
        },
    )?;
    let u2 = g.neighbor_by_kind(
        u,
        EdgeKind::Augmented {
            dim: 2,
            sign: Sign::Plus,
        },
    )?;
    assert!(g.are_adjacent(u1, u2), "triangle corner edge must exist");

    let u0 = g
        .neighbor_ids(u1)
        .iter()
        .map(|&x| VertexId(x))
        .find(|&x| x != u && x != u2)
        .expect("degree 4n-2 >= 3 leaves an escape neighbor");

    let keep: BTreeSet<EdgeId> = [
        g.edge_between(u, u1).unwrap(),
        g.edge_between(u, u2).unwrap(),
        g.edge_between(u1, u2).unwrap(),
        g.edge_between(u1, u0).unwrap(),
    ]
    .into_iter()
    .collect();
    let mut members: BTreeSet<EdgeId> = BTreeSet::new();
    for corner in [u1, u2] {
        members.extend(
            g.incident_edges(corner)
                .iter()
                .copied()
                .filter(|e| !keep.contains(e)),
        );
    }
    assert_eq!(members.len(), 8 * n as usize - 9);

    let faults = FaultSet::edges(
        g,
        members.iter().copied(),
        format!("conditional-triangle-witness(anchor={})", u.0),
    )?;
    let degree = 4 * n as usize - 2;

    // primary: v sees neither corner. On AQ_{2,3} two adjacent neighborhoods
    // already cover all nine vertices, so fall back to any vertex that keeps
    // full degree (the escape vertex qualifies); the triangle bottleneck
    // argument only needs that.
    let mut excluded: BTreeSet<VertexId> =
        g.neighbor_ids(u1).iter().map(|&x| VertexId(x)).collect();
    excluded.extend(g.neighbor_ids(u2).iter().map(|&x| VertexId(x)));
    let v = g
        .vertex_ids()
        .find(|x| !excluded.contains(x) && *x != u1 && *x != u2)
        .or_else(|| {
            g.vertex_ids().find(|&x| {
                x != u
                    && x != u1
                    && x != u2
                    && crate::menger::surviving_degree(g, &faults, x) == degree
            })
        })
        .ok_or_else(|| Error::Unsatisfiable {
            reason: "no vertex keeps full degree away from the triangle; graph too small"
                .to_string(),
        })?;
    // the conditional model demands minimum surviving degree >= 2
    for x in g.vertex_ids() {
        assert!(
            crate::menger::surviving_degree(g, &faults, x) >= 2,
            "triangle witness must stay conditional"
        );
    }
    debug_assert_eq!(crate::menger::surviving_degree(g, &faults, u), degree);
    debug_assert_eq!(crate::menger::surviving_degree(g, &faults, v), degree);
    Ok(WitnessCase {
        kind: WitnessKind::ConditionalTriangle,
        mode: DisjointMode::Edge,
        conditional: true,
        faults,
        pair: (u, v),
        required: degree,
        failure_bound: 4 * n as usize - 3,
    })
}
