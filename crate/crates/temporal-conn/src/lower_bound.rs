//! The quadratic lower-bound family: a simple connected temporal graph on 3n
//! vertices and n(n+9)/2 - 3 edges in which removing any 5n edges destroys
//! temporal connectivity, together with computational verifiers and the
//! fragile one-label variant that admits a linear-size certificate.
//!
//! Vertex layout: A = 0..n-1, H = n..2n-1, M = 2n..3n-1, embedding the
//! 1-based names a_j, h_j, m_j at offset j-1. Labels are scaled by 8n with
//! epsilon = 1/(8n), so every label in the family is an exact integer.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{PathMode, TemporalEdge, TemporalGraph, TimeLabel};
use crate::reach::{is_connected, sweep};

/// A partition of the complete graph K_n into n/2 Hamiltonian paths.
#[derive(Debug, Clone)]
pub struct HamiltonianPartition {
    pub n: usize,
    /// `paths[i]` is the zigzag path starting at vertex i, 0-based.
    pub paths: Vec<Vec<usize>>,
}

impl HamiltonianPartition {
    /// Underlying edge set of path `i` as ordered pairs.
    pub fn path_edges(&self, i: usize) -> Vec<(usize, usize)> {
        self.paths[i]
            .windows(2)
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .collect()
    }

    /// Checks the partition invariants by brute force: each path Hamiltonian,
    /// edge sets pairwise disjoint, union = all C(n,2) edges of K_n.
    pub fn check(&self) -> bool {
        if self.paths.len() != self.n / 2 {
            return false;
        }
        let mut all = BTreeSet::new();
        for (i, p) in self.paths.iter().enumerate() {
            if p.len() != self.n {
                return false;
            }
            let distinct: BTreeSet<usize> = p.iter().copied().collect();
            if distinct.len() != self.n || distinct.iter().any(|&v| v >= self.n) {
                return false;
            }
            for e in self.path_edges(i) {
                if !all.insert(e) {
                    return false; // shared edge
                }
            }
        }
        all.len() == self.n * (self.n - 1) / 2
    }
}

/// Partitions K_n (even n) into n/2 edge-disjoint Hamiltonian paths using the
/// zigzag family p_i = (a_i, a_{i-1}, a_{i+1}, a_{i-2}, a_{i+2}, ...), indices
/// mod n, for i in 0..n/2.
pub fn hamiltonian_partition(n: usize) -> Result<HamiltonianPartition> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "hamiltonian partition needs even n >= 2, got {n}"
        )));
    }
    let m = n as i64;
    let mut paths = Vec::with_capacity(n / 2);
    for i in 0..(n / 2) as i64 {
        let mut p = vec![i.rem_euclid(m) as usize];
        for k in 1..=(m / 2) {
            p.push((i - k).rem_euclid(m) as usize);
            if k < m / 2 {
                p.push((i + k).rem_euclid(m) as usize);
            }
        }
        paths.push(p);
    }
    Ok(HamiltonianPartition { n, paths })
}

/// The lower-bound construction plus the role annotations needed to verify it.
#[derive(Debug, Clone)]
pub struct LowerBoundGraph {
    pub graph: TemporalGraph,
    /// Parameter n; the graph has 3n vertices.
    pub n: usize,
    pub a_vertices: Vec<usize>,
    pub h_vertices: Vec<usize>,
    pub m_vertices: Vec<usize>,
    /// Edge index of each A-edge -> 1-based Hamiltonian path index i.
    pub a_edge_path_index: BTreeMap<usize, usize>,
    pub epsilon_scaled: TimeLabel,
}

impl LowerBoundGraph {
    /// Vertex id of a_j (1-based j).
    pub fn a(&self, j: usize) -> usize {
        j - 1
    }
    /// Vertex id of h_j (1-based j).
    pub fn h(&self, j: usize) -> usize {
        self.n + j - 1
    }
    /// Vertex id of m_j (1-based j).
    pub fn m(&self, j: usize) -> usize {
        2 * self.n + j - 1
    }
}

/// Builds the full construction for even n >= 6. The scale is fixed to 8n and
/// epsilon to 1/(8n); a plain label x is stored as x*8n and an epsilon
/// multiple x*eps as x.
///
/// For n in {2, 4} the inter-M edge set is empty or ill-defined, so the
/// builder requires n >= 6.
pub fn build_lower_bound(n: usize) -> Result<LowerBoundGraph> {
    if n < 6 || !n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "lower-bound construction needs even n >= 6, got {n}"
        )));
    }
    let scale = 8 * n as u64;
    let whole = |x: u64| TimeLabel(x * scale);
    let eps = |x: u64| TimeLabel(x); // x * epsilon, epsilon_scaled = 1

    let part = hamiltonian_partition(n)?;
    let mut edges: Vec<TemporalEdge> = Vec::new();
    let mut a_edge_path_index = BTreeMap::new();

    let a = |j: usize| j - 1;
    let h = |j: usize| n + j - 1;
    let m = |j: usize| 2 * n + j - 1;

    // Dense part: path p_i (1-based i) carries label i on all its edges.
    for i in 1..=n / 2 {
        let p = &part.paths[i - 1];
        for w in p.windows(2) {
            a_edge_path_index.insert(edges.len(), i);
            edges.push(TemporalEdge::new(w[0], w[1], whole(i as u64), 1));
        }
    }
    // Intermediate part: path endpoints joined to h_{2i-1} and h_{2i} at label i.
    for i in 1..=n / 2 {
        let p = &part.paths[i - 1];
        edges.push(TemporalEdge::new(p[0], h(2 * i - 1), whole(i as u64), 1));
        edges.push(TemporalEdge::new(p[n - 1], h(2 * i), whole(i as u64), 1));
    }
    // Entry vertices m_{2i-1}: large labels n/2+2i-1 and n/2+2i.
    // Exit vertices m_{2i}: the same multipliers times epsilon.
    for i in 1..=n / 2 {
        let lo = (n / 2 + 2 * i - 1) as u64;
        let hi = (n / 2 + 2 * i) as u64;
        edges.push(TemporalEdge::new(m(2 * i - 1), h(2 * i - 1), whole(lo), 1));
        edges.push(TemporalEdge::new(m(2 * i - 1), h(2 * i), whole(hi), 1));
        edges.push(TemporalEdge::new(m(2 * i), h(2 * i - 1), eps(lo), 1));
        edges.push(TemporalEdge::new(m(2 * i), h(2 * i), eps(hi), 1));
    }
    // Inter-M edges in the normative order {m_1,m_n}, {m_3,m_n}, ...,
    // {m_{n-3},m_n}, {m_{n-5},m_{n-2}}, ..., {m_1,m_4}; the k-th edge gets
    // label 1-(k-1)*eps.
    let mut mm_pairs: Vec<(usize, usize)> = Vec::new();
    for i in 1..=n / 2 - 1 {
        mm_pairs.push((2 * i - 1, n));
    }
    for i in (1..=n / 2 - 2).rev() {
        mm_pairs.push((2 * i - 1, 2 * i + 2));
    }
    for (k, &(x, y)) in mm_pairs.iter().enumerate() {
        edges.push(TemporalEdge::new(
            m(x),
            m(y),
            TimeLabel(scale - k as u64),
            1,
        ));
    }
    // Anchors: {m_{2i-1}, a_{2i-1}} at epsilon and {m_{2i}, a_{2i}} at n+1.
    for i in 1..=n / 2 {
        edges.push(TemporalEdge::new(m(2 * i - 1), a(2 * i - 1), eps(1), 1));
        edges.push(TemporalEdge::new(
            m(2 * i),
            a(2 * i),
            whole(n as u64 + 1),
            1,
        ));
    }

    let graph = TemporalGraph::new(3 * n, scale, edges)?;
    Ok(LowerBoundGraph {
        graph,
        n,
        a_vertices: (0..n).collect(),
        h_vertices: (n..2 * n).collect(),
        m_vertices: (2 * n..3 * n).collect(),
        a_edge_path_index,
        epsilon_scaled: TimeLabel(1),
    })
}

/// Result of verifying the lower-bound family.
#[derive(Debug, Clone)]
pub struct LowerBoundReport {
    /// Whether the full graph is temporally connected.
    pub connected: bool,
    /// Number of A-edge removals checked.
    pub a_edge_checks: usize,
    /// A-edge indices whose removal left the h_{2i} -> h_{2i-1} path intact.
    pub minimality_failures: Vec<usize>,
    /// Edges outside the dense part.
    pub non_a_edge_count: usize,
    /// The pigeonhole threshold 5n.
    pub pigeonhole_bound: usize,
}

impl LowerBoundReport {
    /// All three clauses hold: connected, every A-edge essential, and fewer
    /// than 5n non-A edges (so any 5n removals hit the dense part).
    pub fn passed(&self) -> bool {
        self.connected
            && self.minimality_failures.is_empty()
            && self.non_a_edge_count < self.pigeonhole_bound
    }
}

/// Verifies the construction computationally: (a) connectivity of the whole
/// graph, (b) for every A-edge of path i, its removal leaves no temporal
/// path from h_{2i} to h_{2i-1}, (c) the pigeonhole count of non-A edges.
pub fn verify_lower_bound(lb: &LowerBoundGraph, mode: PathMode) -> LowerBoundReport {
    let g = &lb.graph;
    let connected = is_connected(g, mode);
    let mut minimality_failures = Vec::new();
    let mut mask = vec![true; g.m()];
    for (&ei, &i) in &lb.a_edge_path_index {
        mask[ei] = false;
        let from = lb.h(2 * i);
        let to = lb.h(2 * i - 1);
        let table = sweep(g, from, TimeLabel(0), mode, Some(&mask));
        if table.reached(to) {
            minimality_failures.push(ei);
        }
        mask[ei] = true;
    }
    LowerBoundReport {
        connected,
        a_edge_checks: lb.a_edge_path_index.len(),
        minimality_failures,
        non_a_edge_count: g.m() - lb.a_edge_path_index.len(),
        pigeonhole_bound: 5 * lb.n,
    }
}

/// The fragile variant: the label of edge {a_1, m_1} raised from epsilon to 1.
pub fn build_fragile_variant(lb: &LowerBoundGraph) -> Result<TemporalGraph> {
    let a1 = lb.a(1);
    let m1 = lb.m(1);
    let idx = lb
        .graph
        .edges()
        .iter()
        .position(|e| e.touches(a1) && e.touches(m1) && e.label == lb.epsilon_scaled)
        .ok_or_else(|| {
            Error::Internal("lower-bound graph is missing the {a_1, m_1} anchor edge".into())
        })?;
    lb.graph
        .with_relabeled_edge(idx, TimeLabel(lb.graph.scale()))
}

/// Result of checking the linear-size certificate of the fragile variant.
#[derive(Debug, Clone)]
pub struct FragileReport {
    pub connected: bool,
    pub remaining_edges: usize,
    /// 6n - 4, derived from the construction's edge counts.
    pub expected_remaining: usize,
}

impl FragileReport {
    pub fn passed(&self) -> bool {
        self.connected && self.remaining_edges == self.expected_remaining
    }
}

/// Removes every A-edge whose path index exceeds 1 from `g` and checks that
/// the remainder is still temporally connected. On the fragile variant this
/// leaves a connected certificate with exactly 6n - 4 edges.
pub fn verify_fragile(g: &TemporalGraph, lb: &LowerBoundGraph, mode: PathMode) -> FragileReport {
    let mut mask = vec![true; g.m()];
    for (&ei, &i) in &lb.a_edge_path_index {
        if i > 1 {
            mask[ei] = false;
        }
    }
    let remaining_edges = mask.iter().filter(|&&k| k).count();
    let connected =
        (0..g.n()).all(|r| sweep(g, r, TimeLabel(0), mode, Some(&mask)).reached_count() == g.n());
    FragileReport {
        connected,
        remaining_edges,
        expected_remaining: 6 * lb.n - 4,
    }
}
