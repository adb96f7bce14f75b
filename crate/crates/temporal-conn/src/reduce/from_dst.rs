//! Directed Steiner Tree as rooted temporal connectivity (the hardness
//! direction).
//!
//! Every arc a = (u, v) is simulated by n-1 two-hop temporal paths through
//! its own auxiliary vertices z^a_i: the edge {u, z^a_i} has label i and
//! weight 0, the edge {z^a_i, v} has label i+1 and the arc's weight. A
//! Steiner tree arc at depth i uses copy i, so consecutive arcs chain
//! temporally; traversing a copy against the arc direction would need a
//! decreasing label pair, so no reverse shortcut exists. Auxiliaries must
//! be per-arc: if arcs shared an auxiliary, two of its weighted hops would
//! chain at equal labels and admit reverse traversals that undercut the
//! Steiner optimum. Zero-weight edges at label n+1 connect the root to
//! every auxiliary and non-terminal vertex.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Solution, TemporalEdge, TemporalGraph, TimeLabel};
use crate::steiner::{DstInstance, SteinerSolution};

/// The produced temporal graph plus the bookkeeping for both maps.
#[derive(Debug, Clone)]
pub struct DstToRtc {
    pub graph: TemporalGraph,
    /// Root vertex of the rooted temporal problem (same id as the DST root).
    pub root: usize,
    source_n: usize,
    num_arcs: usize,
    /// (arc index, i) -> edge index of {tail, z^a_i}.
    hop_in: BTreeMap<(usize, usize), usize>,
    /// (arc index, i) -> edge index of {z^a_i, head}.
    hop_out: BTreeMap<(usize, usize), usize>,
}

impl DstToRtc {
    /// Vertex id of z^a_i (1-based i in [n-1]).
    pub fn aux(&self, arc: usize, i: usize) -> usize {
        self.source_n + arc * (self.source_n - 1) + (i - 1)
    }

    /// Number of auxiliary vertices.
    pub fn aux_count(&self) -> usize {
        self.num_arcs * (self.source_n - 1)
    }

    /// Maps a feasible Steiner solution to a rooted solution of no larger
    /// cost: each reachable arc at BFS depth d is simulated by copy d+1,
    /// plus every zero-weight root edge.
    pub fn forward(&self, inst: &DstInstance, sol: &SteinerSolution) -> Result<Solution> {
        let n = self.source_n;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &ai in sol.arc_indices() {
            let a = inst.arcs[ai];
            adj[a.from].push(a.to);
        }
        let mut depth = vec![usize::MAX; n];
        depth[inst.root] = 0;
        let mut queue = VecDeque::from([inst.root]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        let mut edges: BTreeSet<usize> = (0..self.graph.m())
            .filter(|&i| self.graph.edge(i).weight == 0 && self.graph.edge(i).touches(self.root))
            .collect();
        for &ai in sol.arc_indices() {
            let a = inst.arcs[ai];
            if depth[a.from] == usize::MAX {
                continue; // not on any root path
            }
            let i = depth[a.from] + 1;
            if i > n - 1 {
                continue; // beyond any simple path; redundant arc
            }
            edges.insert(self.hop_in[&(ai, i)]);
            edges.insert(self.hop_out[&(ai, i)]);
        }
        Solution::from_indices(&self.graph, edges)
    }

    /// Maps a rooted solution back: every two-hop pattern tail - z^a_i -
    /// head present in the solution contributes arc a.
    pub fn backward(&self, inst: &DstInstance, sol: &Solution) -> Result<SteinerSolution> {
        let chosen = sol.edge_indices();
        let mut arcs = BTreeSet::new();
        for (&(ai, i), &out_idx) in &self.hop_out {
            if chosen.contains(&out_idx) && chosen.contains(&self.hop_in[&(ai, i)]) {
                arcs.insert(ai);
            }
        }
        SteinerSolution::from_indices(&inst.arcs, arcs)
    }
}

/// Builds the temporal graph simulating a Directed Steiner Tree instance.
/// The output has n + (n-1)*|arcs| vertices for a source instance on n
/// vertices with |arcs| arcs.
pub fn dst_to_rtc(inst: &DstInstance) -> Result<DstToRtc> {
    let n = inst.num_vertices;
    if n < 2 {
        return Err(Error::InvalidInput(
            "simulation needs at least two vertices".into(),
        ));
    }
    let aux = |arc: usize, i: usize| n + arc * (n - 1) + (i - 1);
    let mut edges: Vec<TemporalEdge> = Vec::new();
    let mut hop_in = BTreeMap::new();
    let mut hop_out = BTreeMap::new();
    for (ai, a) in inst.arcs.iter().enumerate() {
        for i in 1..n {
            hop_in.insert((ai, i), edges.len());
            edges.push(TemporalEdge::new(
                a.from,
                aux(ai, i),
                TimeLabel(i as u64),
                0,
            ));
            hop_out.insert((ai, i), edges.len());
            edges.push(TemporalEdge::new(
                aux(ai, i),
                a.to,
                TimeLabel(i as u64 + 1),
                a.weight,
            ));
        }
    }
    // Root edges at label n+1 to every auxiliary and non-terminal vertex.
    for ai in 0..inst.arcs.len() {
        for i in 1..n {
            edges.push(TemporalEdge::new(
                inst.root,
                aux(ai, i),
                TimeLabel(n as u64 + 1),
                0,
            ));
        }
    }
    for u in 0..n {
        if u != inst.root && !inst.terminals.contains(&u) {
            edges.push(TemporalEdge::new(inst.root, u, TimeLabel(n as u64 + 1), 0));
        }
    }
    let graph = TemporalGraph::new(n + inst.arcs.len() * (n - 1), 1, edges)?;
    Ok(DstToRtc {
        graph,
        root: inst.root,
        source_n: n,
        num_arcs: inst.arcs.len(),
        hop_in,
        hop_out,
    })
}
