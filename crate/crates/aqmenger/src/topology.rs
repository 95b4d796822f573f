//! Augmented k-ary n-cube construction.
//!
//! Vertices are n-digit base-k labels `(a_n, ..., a_1)`. Two vertices are
//! adjacent through either a traditional edge, which shifts exactly one digit
//! by +-1 mod k, or an augmented edge, which shifts every digit from a_1 up to
//! some a_i (i >= 2) by the same +-1 mod k. For n >= 2 this makes the graph
//! (4n-2)-regular; for n = 1 it is a k-cycle.
//!
//! The graph is immutable after construction and every list it exposes is in
//! a fixed canonical order, so traversals, flows, and exports are
//! reproducible across runs and platforms.

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on k^n at construction time.
pub const MAX_VERTICES: u64 = 1 << 20;

/// Validated (n, k) pair.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AqParams {
    n: u8,
    k: u8,
}

impl AqParams {
    pub fn new(n: u8, k: u8) -> Result<Self> {
        if n < 1 || k < 3 {
            return Err(Error::InvalidParams { n, k });
        }
        let size = (k as u128).pow(n as u32);
        if size > MAX_VERTICES as u128 {
            return Err(Error::TooLarge {
                size,
                limit: MAX_VERTICES,
            });
        }
        Ok(AqParams { n, k })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    /// k^n
    pub fn vertex_count(&self) -> usize {
        (self.k as u64).pow(self.n as u32) as usize
    }

    /// Regular degree: 4n-2 for n >= 2, 2 for n = 1.
    pub fn degree(&self) -> usize {
        if self.n >= 2 {
            4 * self.n as usize - 2
        } else {
            2
        }
    }
}

/// Canonical vertex id: base-k positional encoding with a_1 least significant.
#[derive(
    Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Stable edge id, assigned in lexicographic (min-endpoint, max-endpoint) order.
#[derive(
    Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
pub struct EdgeId(pub u32);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Direction of a digit shift.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Sign::Minus => "-1",
            Sign::Plus => "+1",
        }
    }
}

/// Edge classification.
///
/// `Traditional { dim: i, sign: s }` shifts exactly digit a_i by s.
/// `Augmented { dim: i, sign: s }` shifts digits a_1..a_i by s (needs i >= 2).
///
/// The derived order (Traditional before Augmented, ascending dim, Minus
/// before Plus) is the canonical neighbor order used everywhere.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    Traditional { dim: u8, sign: Sign },
    Augmented { dim: u8, sign: Sign },
}

impl EdgeKind {
    pub fn dim(self) -> u8 {
        match self {
            EdgeKind::Traditional { dim, .. } | EdgeKind::Augmented { dim, .. } => dim,
        }
    }

    pub fn sign(self) -> Sign {
        match self {
            EdgeKind::Traditional { sign, .. } | EdgeKind::Augmented { sign, .. } => sign,
        }
    }

    pub fn is_augmented(self) -> bool {
        matches!(self, EdgeKind::Augmented { .. })
    }

    /// Kind of the same edge as seen from the other endpoint.
    pub fn inverse(self) -> EdgeKind {
        match self {
            EdgeKind::Traditional { dim, sign } => EdgeKind::Traditional {
                dim,
                sign: sign.flip(),
            },
            EdgeKind::Augmented { dim, sign } => EdgeKind::Augmented {
                dim,
                sign: sign.flip(),
            },
        }
    }

    fn validate(self, n: u8) -> Result<()> {
        let ok = match self {
            EdgeKind::Traditional { dim, .. } => dim >= 1 && dim <= n,
            EdgeKind::Augmented { dim, .. } => n >= 2 && dim >= 2 && dim <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidKind {
                n,
                detail: format!("{self:?}"),
            })
        }
    }

    /// All kinds valid for dimension n, in canonical order.
    pub fn all(n: u8) -> Vec<EdgeKind> {
        let mut kinds = Vec::with_capacity(if n >= 2 { 4 * n as usize - 2 } else { 2 });
        for dim in 1..=n {
            kinds.push(EdgeKind::Traditional {
                dim,
                sign: Sign::Minus,
            });
            kinds.push(EdgeKind::Traditional {
                dim,
                sign: Sign::Plus,
            });
        }
        for dim in 2..=n {
            kinds.push(EdgeKind::Augmented {
                dim,
                sign: Sign::Minus,
            });
            kinds.push(EdgeKind::Augmented {
                dim,
                sign: Sign::Plus,
            });
        }
        kinds.sort();
        kinds
    }

    /// Export label, "T,i,s" or "A,i,s".
    pub fn label(self) -> String {
        match self {
            EdgeKind::Traditional { dim, sign } => format!("T,{dim},{}", sign.label()),
            EdgeKind::Augmented { dim, sign } => format!("A,{dim},{}", sign.label()),
        }
    }
}

/// A vertex in digit form. `digits[i]` is a_{i+1}, so a_1 comes first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    digits: Vec<u8>,
}

impl Vertex {
    pub fn from_digits(digits: Vec<u8>, params: &AqParams) -> Result<Self> {
        if digits.len() != params.n as usize {
            return Err(Error::InvalidLabel {
                label: format!("{digits:?}"),
                detail: format!("expected {} digits", params.n),
            });
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= params.k) {
            return Err(Error::InvalidLabel {
                label: format!("{digits:?}"),
                detail: format!("digit {d} not below k={}", params.k),
            });
        }
        Ok(Vertex { digits })
    }

    pub fn from_id(id: VertexId, params: &AqParams) -> Self {
        let mut rest = id.0;
        let k = params.k as u32;
        let digits = (0..params.n)
            .map(|_| {
                let d = (rest % k) as u8;
                rest /= k;
                d
            })
            .collect();
        Vertex { digits }
    }

    /// Parse a label written in display order a_n..a_1, e.g. "120".
    /// Only supported for k <= 10.
    pub fn parse(label: &str, params: &AqParams) -> Result<Self> {
        if params.k > 10 {
            return Err(Error::InvalidLabel {
                label: label.to_string(),
                detail: "digit-string labels need k <= 10".to_string(),
            });
        }
        let mut digits: Vec<u8> = Vec::with_capacity(params.n as usize);
        for ch in label.chars().rev() {
            let d = ch.to_digit(10).ok_or_else(|| Error::InvalidLabel {
                label: label.to_string(),
                detail: format!("bad character '{ch}'"),
            })? as u8;
            digits.push(d);
        }
        Vertex::from_digits(digits, params)
    }

    pub fn id(&self, params: &AqParams) -> VertexId {
        let k = params.k as u32;
        let mut id = 0u32;
        for &d in self.digits.iter().rev() {
            id = id * k + d as u32;
        }
        VertexId(id)
    }

    /// Digits with a_1 first.
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// 1-based accessor: digit(i) = a_i.
    pub fn digit(&self, i: usize) -> u8 {
        self.digits[i - 1]
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Display order is a_n..a_1, matching labels like "120".
        for &d in self.digits.iter().rev() {
            if d < 10 {
                write!(f, "{d}")?;
            } else {
                write!(f, "[{d}]")?;
            }
        }
        Ok(())
    }
}

/// Immutable adjacency structure of an augmented k-ary n-cube.
#[derive(Clone, Debug)]
pub struct AqGraph {
    params: AqParams,
    /// Neighbor lists in canonical kind order.
    adj: Vec<Vec<(VertexId, EdgeKind)>>,
    /// Neighbor ids sorted ascending, for adjacency tests and intersections.
    adj_sorted: Vec<Vec<u32>>,
    /// Edge endpoints (u < v), sorted lexicographically; index = edge id.
    edges: Vec<(u32, u32)>,
    /// Kind of each edge as seen from its smaller endpoint.
    edge_kinds: Vec<EdgeKind>,
    /// Incident edge ids per vertex, ascending.
    incident: Vec<Vec<EdgeId>>,
}

impl AqGraph {
    /// Construct the graph for validated parameters.
    ///
    /// Construction asserts the distinct-neighbor property (degree exactly
    /// 4n-2 for n >= 2, or 2 for n = 1); a collision would mean a digit
    /// arithmetic bug, not a tolerable input.
    pub fn new(params: AqParams) -> Self {
        let count = params.vertex_count();
        let kinds = EdgeKind::all(params.n);
        let mut adj = Vec::with_capacity(count);
        for id in 0..count {
            let v = Vertex::from_id(VertexId(id as u32), &params);
            let mut row: Vec<(VertexId, EdgeKind)> = Vec::with_capacity(kinds.len());
            for &kind in &kinds {
                let nb = apply_kind(&v, kind, &params);
                row.push((nb.id(&params), kind));
            }
            let mut seen: Vec<u32> = row.iter().map(|(n, _)| n.0).collect();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(
                seen.len(),
                row.len(),
                "neighbor collision at vertex {id} for n={}, k={}",
                params.n,
                params.k
            );
            assert!(
                !seen.contains(&(id as u32)),
                "self-loop at vertex {id} for n={}, k={}",
                params.n,
                params.k
            );
            adj.push(row);
        }

        let adj_sorted: Vec<Vec<u32>> = adj
            .iter()
            .map(|row| {
                let mut ids: Vec<u32> = row.iter().map(|(n, _)| n.0).collect();
                ids.sort_unstable();
                ids
            })
            .collect();

        let mut edges: Vec<(u32, u32, EdgeKind)> = Vec::with_capacity(count * kinds.len() / 2);
        for (u, row) in adj.iter().enumerate() {
            for &(v, kind) in row {
                if (u as u32) < v.0 {
                    edges.push((u as u32, v.0, kind));
                }
            }
        }
        edges.sort_unstable_by_key(|&(u, v, _)| (u, v));
        let edge_kinds: Vec<EdgeKind> = edges.iter().map(|&(_, _, k)| k).collect();
        let edges: Vec<(u32, u32)> = edges.into_iter().map(|(u, v, _)| (u, v)).collect();

        let mut incident = vec![Vec::new(); count];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u as usize].push(EdgeId(i as u32));
            incident[v as usize].push(EdgeId(i as u32));
        }

        AqGraph {
            params,
            adj,
            adj_sorted,
            edges,
            edge_kinds,
            incident,
        }
    }

    pub fn params(&self) -> &AqParams {
        &self.params
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self) -> usize {
        self.params.degree()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.adj.len() as u32).map(VertexId)
    }

    pub fn vertex(&self, id: VertexId) -> Vertex {
        Vertex::from_id(id, &self.params)
    }

    pub fn id_of_label(&self, label: &str) -> Result<VertexId> {
        Ok(Vertex::parse(label, &self.params)?.id(&self.params))
    }

    fn check_vertex(&self, id: VertexId) -> Result<()> {
        if id.index() < self.adj.len() {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                what: "vertex id",
                value: id.index(),
                limit: self.adj.len() - 1,
            })
        }
    }

    /// Neighbors with kinds, in canonical kind order.
    pub fn neighbors(&self, u: VertexId) -> &[(VertexId, EdgeKind)] {
        &self.adj[u.index()]
    }

    /// Neighbor ids, ascending.
    pub fn neighbor_ids(&self, u: VertexId) -> &[u32] {
        &self.adj_sorted[u.index()]
    }

    pub fn are_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adj_sorted[u.index()].binary_search(&v.0).is_ok()
    }

    /// The unique neighbor of `u` reached by `kind`.
    pub fn neighbor_by_kind(&self, u: VertexId, kind: EdgeKind) -> Result<VertexId> {
        self.check_vertex(u)?;
        kind.validate(self.params.n)?;
        let v = Vertex::from_id(u, &self.params);
        Ok(apply_kind(&v, kind, &self.params).id(&self.params))
    }

    /// Vertices whose top digit a_n equals `i`; the induced subgraph is a
    /// copy of the (n-1)-dimensional cube. Requires n >= 2.
    pub fn subcube_vertices(&self, i: u8) -> Result<Vec<VertexId>> {
        if self.params.n < 2 {
            return Err(Error::DimensionTooSmall {
                needs: 2,
                n: self.params.n,
            });
        }
        if i >= self.params.k {
            return Err(Error::OutOfRange {
                what: "subcube index",
                value: i as usize,
                limit: self.params.k as usize - 1,
            });
        }
        let side = self.params.vertex_count() / self.params.k as usize;
        let lo = side as u32 * i as u32;
        Ok((lo..lo + side as u32).map(VertexId).collect())
    }

    /// Subcube index (top digit) of a vertex. Requires n >= 2.
    pub fn subcube_of(&self, u: VertexId) -> u8 {
        let side = (self.params.vertex_count() / self.params.k as usize) as u32;
        (u.0 / side) as u8
    }

    /// The four neighbors outside u's own subcube: Traditional(n, +-1) and
    /// Augmented(n, +-1), in canonical kind order. Requires n >= 2.
    pub fn extra_neighbors(&self, u: VertexId) -> Result<Vec<(VertexId, EdgeKind)>> {
        self.check_vertex(u)?;
        let n = self.params.n;
        if n < 2 {
            return Err(Error::DimensionTooSmall { needs: 2, n });
        }
        Ok(self.adj[u.index()]
            .iter()
            .copied()
            .filter(|&(_, kind)| kind.dim() == n)
            .collect())
    }

    /// N(u) intersect N(v), ascending. Its size is the common-neighbor count.
    pub fn common_neighbors(&self, u: VertexId, v: VertexId) -> Result<Vec<VertexId>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::IdenticalEndpoints);
        }
        let a = &self.adj_sorted[u.index()];
        let b = &self.adj_sorted[v.index()];
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(VertexId(a[i]));
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(out)
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let (u, v) = self.edges[e.index()];
        (VertexId(u), VertexId(v))
    }

    /// Kind of the edge as seen from its smaller endpoint.
    pub fn edge_kind(&self, e: EdgeId) -> EdgeKind {
        self.edge_kinds[e.index()]
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let key = (u.0.min(v.0), u.0.max(v.0));
        self.edges
            .binary_search(&key)
            .ok()
            .map(|i| EdgeId(i as u32))
    }

    /// Edge ids incident to `u`, ascending.
    pub fn incident_edges(&self, u: VertexId) -> &[EdgeId] {
        &self.incident[u.index()]
    }

    /// Digit-wise translation x -> x + delta (mod k); an automorphism of the
    /// graph for every delta. `delta` has a_1 first, like `Vertex::digits`.
    pub fn translate(&self, u: VertexId, delta: &[u8]) -> VertexId {
        let k = self.params.k;
        let v = Vertex::from_id(u, &self.params);
        let digits = v
            .digits()
            .iter()
            .zip(delta)
            .map(|(&d, &t)| (d + t) % k)
            .collect();
        Vertex { digits }.id(&self.params)
    }

    /// Edge-list export: one line per edge, "<id_u> <id_v> <kind>", in edge
    /// id order. Byte-deterministic for a given (n, k).
    pub fn export_edgelist(&self, w: &mut impl Write) -> std::io::Result<()> {
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            writeln!(w, "{u} {v} {}", self.edge_kinds[i].label())?;
        }
        Ok(())
    }

    /// DOT export with the kind as an edge attribute. Byte-deterministic.
    pub fn export_dot(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(w, "graph aq_{}_{} {{", self.params.n, self.params.k)?;
        for id in 0..self.adj.len() {
            writeln!(
                w,
                "  {id} [label=\"{}\"];",
                Vertex::from_id(VertexId(id as u32), &self.params)
            )?;
        }
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            writeln!(w, "  {u} -- {v} [kind=\"{}\"];", self.edge_kinds[i].label())?;
        }
        writeln!(w, "}}")?;
        Ok(())
    }
}

/// Construct the graph after validating raw parameters.
pub fn make_graph(n: u8, k: u8) -> Result<AqGraph> {
    Ok(AqGraph::new(AqParams::new(n, k)?))
}

fn apply_kind(v: &Vertex, kind: EdgeKind, params: &AqParams) -> Vertex {
    let k = params.k;
    let step = |d: u8, sign: Sign| -> u8 {
        match sign {
            Sign::Plus => (d + 1) % k,
            Sign::Minus => (d + k - 1) % k,
        }
    };
    let mut digits = v.digits().to_vec();
    match kind {
        EdgeKind::Traditional { dim, sign } => {
            let i = dim as usize - 1;
            digits[i] = step(digits[i], sign);
        }
        EdgeKind::Augmented { dim, sign } => {
            for d in digits.iter_mut().take(dim as usize) {
                *d = step(*d, sign);
            }
        }
    }
    Vertex { digits }
}
