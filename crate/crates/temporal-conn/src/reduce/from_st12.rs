//! Steiner Tree with weights 1 and 2 as unweighted all-pairs temporal
//! connectivity (the APX-hardness direction).
//!
//! Weight-2 edges are first subdivided through fresh non-terminals, giving a
//! uniform-weight Steiner instance. Its edges become label-3 temporal edges;
//! hubs p and q attach to every non-terminal at labels 4 and 2, chains
//! p - a_i - u_i (labels 1, 5) and u_i - b_i - q (labels 1, 5) cover the
//! terminals, and p - x - q (labels 1, 5) closes the hub pair. All temporal
//! edges have weight 1. A feasible TC solution must contain every gadget
//! edge, and its label-3 edges connect the terminals.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Solution, TemporalEdge, TemporalGraph, TimeLabel};

/// Undirected Steiner Tree instance with edge weights 1 and 2.
#[derive(Debug, Clone)]
pub struct SteinerInstance12 {
    pub num_vertices: usize,
    /// (u, v, weight in {1, 2}).
    pub edges: Vec<(usize, usize, u64)>,
    pub terminals: BTreeSet<usize>,
}

impl SteinerInstance12 {
    pub fn new(
        num_vertices: usize,
        edges: Vec<(usize, usize, u64)>,
        terminals: BTreeSet<usize>,
    ) -> Result<Self> {
        for &(u, v, w) in &edges {
            if u >= num_vertices || v >= num_vertices || u == v {
                return Err(Error::InvalidInput(format!("bad edge ({u}, {v})")));
            }
            if !(w == 1 || w == 2) {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) has weight {w}, expected 1 or 2"
                )));
            }
        }
        if let Some(&t) = terminals.iter().find(|&&t| t >= num_vertices) {
            return Err(Error::InvalidInput(format!("terminal {t} out of range")));
        }
        // Connectivity of the underlying graph.
        let mut adj = vec![Vec::new(); num_vertices];
        for &(u, v, _) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; num_vertices.max(1)];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidInput("underlying graph disconnected".into()));
        }
        Ok(SteinerInstance12 {
            num_vertices,
            edges,
            terminals,
        })
    }
}

/// The gadget graph plus the subdivided uniform instance and the maps.
#[derive(Debug, Clone)]
pub struct St12ToTc {
    pub graph: TemporalGraph,
    /// Uniform-weight edges after subdivision, as vertex pairs.
    pub uniform_edges: Vec<(usize, usize)>,
    /// Vertices of the subdivided graph (originals plus subdivision points).
    pub uniform_vertices: usize,
    pub terminals: Vec<usize>,
    /// Temporal edge index of each uniform Steiner edge (label 3).
    steiner_edge_idx: Vec<usize>,
    /// Subdivided-edge indices per original edge.
    pub halves_of_original: Vec<Vec<usize>>,
}

impl St12ToTc {
    /// Number of gadget (non-Steiner) temporal edges.
    pub fn gadget_edge_count(&self) -> usize {
        self.graph.m() - self.uniform_edges.len()
    }

    /// Temporal edge indices of the uniform Steiner edges.
    pub fn steiner_edges(&self) -> &[usize] {
        &self.steiner_edge_idx
    }

    /// Temporal edge indices outside the Steiner instance.
    pub fn gadget_edges(&self) -> Vec<usize> {
        let steiner: BTreeSet<usize> = self.steiner_edge_idx.iter().copied().collect();
        (0..self.graph.m())
            .filter(|i| !steiner.contains(i))
            .collect()
    }

    /// Maps a uniform Steiner solution (indices into `uniform_edges`) to a
    /// TC solution: every gadget edge plus the chosen label-3 edges.
    pub fn forward(&self, steiner_solution: &BTreeSet<usize>) -> Result<Solution> {
        let mut edges: BTreeSet<usize> = self.gadget_edges().into_iter().collect();
        for &ei in steiner_solution {
            let &idx = self.steiner_edge_idx.get(ei).ok_or_else(|| {
                Error::InvalidInput(format!("uniform edge index {ei} out of range"))
            })?;
            edges.insert(idx);
        }
        Solution::from_indices(&self.graph, edges)
    }

    /// Drops all non-label-3 edges; what remains is a uniform Steiner
    /// solution (indices into `uniform_edges`).
    pub fn backward(&self, sol: &Solution) -> BTreeSet<usize> {
        self.steiner_edge_idx
            .iter()
            .enumerate()
            .filter(|&(_, &idx)| sol.contains(idx))
            .map(|(ei, _)| ei)
            .collect()
    }

    /// True when the chosen uniform edges connect all terminals.
    pub fn uniform_feasible(&self, steiner_solution: &BTreeSet<usize>) -> bool {
        let mut adj = vec![Vec::new(); self.uniform_vertices];
        for &ei in steiner_solution {
            let (u, v) = self.uniform_edges[ei];
            adj[u].push(v);
            adj[v].push(u);
        }
        let Some(&start) = self.terminals.first() else {
            return true;
        };
        let mut seen = vec![false; self.uniform_vertices];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        self.terminals.iter().all(|&t| seen[t])
    }
}

/// Builds the unweighted temporal gadget for a Steiner(1,2) instance.
/// Requires at least one non-terminal after subdivision (the hub wiring
/// needs one); a weight-2 edge always provides one.
pub fn st12_to_tc(inst: &SteinerInstance12) -> Result<St12ToTc> {
    // Subdivide weight-2 edges.
    let mut uniform_vertices = inst.num_vertices;
    let mut uniform_edges: Vec<(usize, usize)> = Vec::new();
    let mut halves_of_original: Vec<Vec<usize>> = Vec::new();
    for &(u, v, w) in &inst.edges {
        if w == 1 {
            halves_of_original.push(vec![uniform_edges.len()]);
            uniform_edges.push((u, v));
        } else {
            let mid = uniform_vertices;
            uniform_vertices += 1;
            halves_of_original.push(vec![uniform_edges.len(), uniform_edges.len() + 1]);
            uniform_edges.push((u, mid));
            uniform_edges.push((mid, v));
        }
    }
    let terminals: Vec<usize> = inst.terminals.iter().copied().collect();
    let non_terminals: Vec<usize> = (0..uniform_vertices)
        .filter(|v| !inst.terminals.contains(v))
        .collect();
    if non_terminals.is_empty() {
        return Err(Error::InvalidInput(
            "gadget needs a non-terminal vertex; add one or use a weight-2 edge".into(),
        ));
    }
    let m = terminals.len();
    let p = uniform_vertices;
    let q = p + 1;
    let x = q + 1;
    let a_of = |i: usize| x + 1 + i;
    let b_of = |i: usize| x + 1 + m + i;
    let total_vertices = x + 1 + 2 * m;

    let mut edges: Vec<TemporalEdge> = Vec::new();
    let mut steiner_edge_idx = Vec::new();
    for &(u, v) in &uniform_edges {
        steiner_edge_idx.push(edges.len());
        edges.push(TemporalEdge::new(u, v, TimeLabel(3), 1));
    }
    for &t in &non_terminals {
        edges.push(TemporalEdge::new(p, t, TimeLabel(4), 1));
        edges.push(TemporalEdge::new(q, t, TimeLabel(2), 1));
    }
    for (i, &u_i) in terminals.iter().enumerate() {
        edges.push(TemporalEdge::new(p, a_of(i), TimeLabel(1), 1));
        edges.push(TemporalEdge::new(a_of(i), u_i, TimeLabel(5), 1));
        edges.push(TemporalEdge::new(u_i, b_of(i), TimeLabel(1), 1));
        edges.push(TemporalEdge::new(q, b_of(i), TimeLabel(5), 1));
    }
    edges.push(TemporalEdge::new(p, x, TimeLabel(1), 1));
    edges.push(TemporalEdge::new(x, q, TimeLabel(5), 1));

    let graph = TemporalGraph::new(total_vertices, 1, edges)?;
    Ok(St12ToTc {
        graph,
        uniform_edges,
        uniform_vertices,
        terminals,
        steiner_edge_idx,
        halves_of_original,
    })
}
