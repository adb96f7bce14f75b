//! Temporal-graph representation: vertices, labeled undirected edges, solutions.
//!
//! Time labels are stored as scaled non-negative integers: a rational label
//! `q` is stored as `q * scale` for a per-graph positive integer `scale`.
//! All algorithms use only ordering and equality of labels, so the scaling
//! keeps fractional label families (e.g. epsilon multiples) exact.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A scaled time label. Ordering of stored values equals ordering of the
/// rationals they encode (the scale is constant per graph).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimeLabel(pub u64);

impl TimeLabel {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for TimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Whether temporal paths must have strictly increasing labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathMode {
    /// Consecutive edge labels non-decreasing.
    NonStrict,
    /// Consecutive edge labels strictly increasing.
    Strict,
}

impl PathMode {
    /// True when a path arriving via label `prev` may continue via `next`.
    pub fn chains(self, prev: TimeLabel, next: TimeLabel) -> bool {
        match self {
            PathMode::NonStrict => prev <= next,
            PathMode::Strict => prev < next,
        }
    }
}

/// One availability of an undirected edge: endpoints, label, cost.
/// Endpoints are kept in `u < v` order; `(u, v, t)` and `(v, u, t)` denote
/// the same temporal edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TemporalEdge {
    pub u: usize,
    pub v: usize,
    pub label: TimeLabel,
    pub weight: u64,
}

impl TemporalEdge {
    pub fn new(u: usize, v: usize, label: TimeLabel, weight: u64) -> Self {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        TemporalEdge {
            u,
            v,
            label,
            weight,
        }
    }

    /// The endpoint opposite to `x`; panics if `x` is not an endpoint.
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            debug_assert_eq!(x, self.v);
            self.u
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// Underlying (unlabeled) edge as an ordered pair.
    pub fn underlying(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

/// An edge-weighted temporal graph: `n` vertices and an indexed list of
/// temporal edges. Multiple labels per underlying edge are allowed, but each
/// `(u, v, label)` triple appears at most once.
#[derive(Debug, Clone)]
pub struct TemporalGraph {
    n: usize,
    scale: u64,
    edges: Vec<TemporalEdge>,
    /// Edge indices incident to each vertex, sorted by (label, index).
    incident: Vec<Vec<usize>>,
    /// All edge indices sorted by (label, index).
    by_label: Vec<usize>,
}

impl TemporalGraph {
    pub fn new(n: usize, scale: u64, edges: Vec<TemporalEdge>) -> Result<Self> {
        if scale == 0 {
            return Err(Error::InvalidInput("scale must be positive".into()));
        }
        let mut seen = BTreeSet::new();
        for (i, e) in edges.iter().enumerate() {
            if e.u == e.v {
                return Err(Error::InvalidInput(format!(
                    "edge {i} is a self-loop at vertex {}",
                    e.u
                )));
            }
            if e.v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge {i} endpoint {} out of range (n = {n})",
                    e.v
                )));
            }
            if !seen.insert((e.u, e.v, e.label)) {
                return Err(Error::InvalidInput(format!(
                    "duplicate temporal edge ({}, {}, {})",
                    e.u, e.v, e.label
                )));
            }
        }
        let mut incident = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            incident[e.u].push(i);
            incident[e.v].push(i);
        }
        for list in &mut incident {
            list.sort_by_key(|&i| (edges[i].label, i));
        }
        let mut by_label: Vec<usize> = (0..edges.len()).collect();
        by_label.sort_by_key(|&i| (edges[i].label, i));
        Ok(TemporalGraph {
            n,
            scale,
            edges,
            incident,
            by_label,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    /// Number of temporal edges (M).
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &TemporalEdge {
        &self.edges[idx]
    }

    /// Maximum label present, or 0 on an edgeless graph.
    pub fn lifetime(&self) -> TimeLabel {
        self.edges
            .iter()
            .map(|e| e.label)
            .max()
            .unwrap_or(TimeLabel(0))
    }

    /// Edge indices incident to `v`, sorted by label.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// All edge indices sorted by (label, index).
    pub fn edges_by_label(&self) -> &[usize] {
        &self.by_label
    }

    /// Distinct labels present, ascending.
    pub fn distinct_labels(&self) -> Vec<TimeLabel> {
        let set: BTreeSet<TimeLabel> = self.edges.iter().map(|e| e.label).collect();
        set.into_iter().collect()
    }

    /// Map underlying edge -> indices of its temporal edges, labels ascending.
    pub fn underlying_map(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            map.entry(e.underlying()).or_default().push(i);
        }
        for v in map.values_mut() {
            v.sort_by_key(|&i| self.edges[i].label);
        }
        map
    }

    /// True when every underlying edge carries exactly one label.
    pub fn is_simple(&self) -> bool {
        self.underlying_map().values().all(|v| v.len() == 1)
    }

    /// A copy with one edge's label replaced. Re-validates invariants.
    pub fn with_relabeled_edge(&self, idx: usize, label: TimeLabel) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges[idx].label = label;
        TemporalGraph::new(self.n, self.scale, edges)
    }

    pub fn stats(&self) -> GraphStats {
        let mut degree = vec![BTreeSet::new(); self.n];
        for e in &self.edges {
            degree[e.u].insert(e.v);
            degree[e.v].insert(e.u);
        }
        GraphStats {
            n: self.n,
            temporal_edge_count: self.edges.len(),
            distinct_label_count: self.distinct_labels().len(),
            max_degree: degree.iter().map(|s| s.len()).max().unwrap_or(0),
            total_weight: self.edges.iter().map(|e| e.weight).sum(),
        }
    }
}

/// Summary counts of a temporal graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphStats {
    pub n: usize,
    pub temporal_edge_count: usize,
    pub distinct_label_count: usize,
    /// Maximum degree of the underlying graph.
    pub max_degree: usize,
    pub total_weight: u64,
}

/// A temporal path: alternating vertices and temporal-edge indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalPath {
    pub vertices: Vec<usize>,
    pub edge_indices: Vec<usize>,
}

impl TemporalPath {
    /// Checks the path invariants against `g`: consecutive vertices joined by
    /// the referenced edges and labels chaining under `mode`.
    pub fn is_valid(&self, g: &TemporalGraph, mode: PathMode) -> bool {
        if self.vertices.len() != self.edge_indices.len() + 1 {
            return false;
        }
        let mut prev: Option<TimeLabel> = None;
        for (step, &ei) in self.edge_indices.iter().enumerate() {
            let Some(e) = g.edges().get(ei) else {
                return false;
            };
            let (a, b) = (self.vertices[step], self.vertices[step + 1]);
            if !(e.u == a && e.v == b || e.u == b && e.v == a) {
                return false;
            }
            if let Some(p) = prev {
                if !mode.chains(p, e.label) {
                    return false;
                }
            }
            prev = Some(e.label);
        }
        true
    }

    pub fn cost(&self, g: &TemporalGraph) -> u64 {
        self.edge_indices.iter().map(|&i| g.edge(i).weight).sum()
    }
}

/// A subset of temporal edges of a graph, with its total cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    edge_indices: BTreeSet<usize>,
    cost: u64,
}

impl Solution {
    pub fn from_indices<I: IntoIterator<Item = usize>>(g: &TemporalGraph, iter: I) -> Result<Self> {
        let edge_indices: BTreeSet<usize> = iter.into_iter().collect();
        for &i in &edge_indices {
            if i >= g.m() {
                return Err(Error::InvalidInput(format!(
                    "solution references edge index {i}, graph has {} edges",
                    g.m()
                )));
            }
        }
        let cost = edge_indices.iter().map(|&i| g.edge(i).weight).sum();
        Ok(Solution { edge_indices, cost })
    }

    pub fn empty() -> Self {
        Solution {
            edge_indices: BTreeSet::new(),
            cost: 0,
        }
    }

    pub fn edge_indices(&self) -> &BTreeSet<usize> {
        &self.edge_indices
    }

    pub fn cost(&self) -> u64 {
        self.cost
    }

    pub fn len(&self) -> usize {
        self.edge_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_indices.is_empty()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.edge_indices.contains(&idx)
    }

    /// Membership mask over all edge indices of `g`.
    pub fn mask(&self, g: &TemporalGraph) -> Vec<bool> {
        let mut mask = vec![false; g.m()];
        for &i in &self.edge_indices {
            mask[i] = true;
        }
        mask
    }

    /// Distinct labels used per underlying edge.
    pub fn labels_per_underlying_edge(&self, g: &TemporalGraph) -> BTreeMap<(usize, usize), usize> {
        let mut map: BTreeMap<(usize, usize), BTreeSet<TimeLabel>> = BTreeMap::new();
        for &i in &self.edge_indices {
            let e = g.edge(i);
            map.entry(e.underlying()).or_default().insert(e.label);
        }
        map.into_iter().map(|(k, v)| (k, v.len())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tl(v: u64) -> TimeLabel {
        TimeLabel(v)
    }

    #[test]
    fn edge_endpoints_normalized() {
        let e = TemporalEdge::new(3, 1, tl(5), 2);
        assert_eq!((e.u, e.v), (1, 3));
        assert_eq!(e.other(1), 3);
        assert_eq!(e.other(3), 1);
    }

    #[test]
    fn rejects_self_loop() {
        let err = TemporalGraph::new(2, 1, vec![TemporalEdge::new(1, 1, tl(0), 0)]);
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rejects_out_of_range_endpoint() {
        let err = TemporalGraph::new(2, 1, vec![TemporalEdge::new(0, 2, tl(0), 0)]);
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rejects_duplicate_triple_in_either_orientation() {
        let err = TemporalGraph::new(
            3,
            1,
            vec![
                TemporalEdge::new(0, 1, tl(3), 7),
                TemporalEdge::new(1, 0, tl(3), 9),
            ],
        );
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn multi_labels_per_edge_allowed() {
        let g = TemporalGraph::new(
            2,
            1,
            vec![
                TemporalEdge::new(0, 1, tl(1), 1),
                TemporalEdge::new(0, 1, tl(2), 1),
            ],
        )
        .unwrap();
        assert!(!g.is_simple());
        assert_eq!(g.lifetime(), tl(2));
    }

    #[test]
    fn stats_on_empty_graph() {
        let g = TemporalGraph::new(3, 1, vec![]).unwrap();
        let s = g.stats();
        assert_eq!(s.temporal_edge_count, 0);
        assert_eq!(s.max_degree, 0);
        assert_eq!(s.distinct_label_count, 0);
        assert_eq!(s.total_weight, 0);
    }

    #[test]
    fn solution_cost_recomputed_from_indices() {
        let g = TemporalGraph::new(
            3,
            1,
            vec![
                TemporalEdge::new(0, 1, tl(1), 4),
                TemporalEdge::new(1, 2, tl(2), 6),
            ],
        )
        .unwrap();
        let sol = Solution::from_indices(&g, [0, 1]).unwrap();
        assert_eq!(sol.cost(), 10);
        assert!(Solution::from_indices(&g, [2]).is_err());
    }

    #[test]
    fn path_validity_checks_chaining() {
        let g = TemporalGraph::new(
            3,
            1,
            vec![
                TemporalEdge::new(0, 1, tl(3), 1),
                TemporalEdge::new(1, 2, tl(2), 1),
                TemporalEdge::new(1, 2, tl(3), 1),
            ],
        )
        .unwrap();
        let bad = TemporalPath {
            vertices: vec![0, 1, 2],
            edge_indices: vec![0, 1],
        };
        assert!(!bad.is_valid(&g, PathMode::NonStrict));
        let flat = TemporalPath {
            vertices: vec![0, 1, 2],
            edge_indices: vec![0, 2],
        };
        assert!(flat.is_valid(&g, PathMode::NonStrict));
        assert!(!flat.is_valid(&g, PathMode::Strict));
    }
}
