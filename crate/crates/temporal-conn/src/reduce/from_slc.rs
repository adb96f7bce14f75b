//! Symmetric Label Cover as all-pairs temporal connectivity (the hardness
//! direction).
//!
//! The gadget has vertex blocks V_U, V_C(U), V_W, V_C(W), V_X and two hubs
//! p, q. Choosing color a for u buys the weight-1 edge {u, (u,a)} at label
//! 1; choosing b for w buys {w, (w,b)} at label 4. A relation witness
//! (u,w,a,b) contributes the zero-weight bridge (u,a) -2- (u,w,a,b) -3-
//! (w,b), so u reaches w exactly when some allowed color pair is bought on
//! both sides. Hub edges at labels 5 and 0 connect everything else for
//! free, and label structure prevents any u-w shortcut through the hubs.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{Solution, TemporalEdge, TemporalGraph, TimeLabel};

/// Symmetric Label Cover: a complete bipartite relation structure over
/// parts of size k with c colors; every pair (u, w) carries a nonempty set
/// of allowed color pairs.
#[derive(Debug, Clone)]
pub struct SlcInstance {
    /// |U| = |W|.
    pub k: usize,
    /// Number of colors.
    pub c: usize,
    /// (u, w) -> allowed color pairs (a, b).
    pub relations: BTreeMap<(usize, usize), BTreeSet<(usize, usize)>>,
}

impl SlcInstance {
    pub fn new(
        k: usize,
        c: usize,
        relations: BTreeMap<(usize, usize), BTreeSet<(usize, usize)>>,
    ) -> Result<Self> {
        if k == 0 || c == 0 {
            return Err(Error::InvalidInput("k and c must be positive".into()));
        }
        for u in 0..k {
            for w in 0..k {
                let rel = relations.get(&(u, w));
                if rel.is_none_or(|r| r.is_empty()) {
                    return Err(Error::InvalidInput(format!(
                        "relation for pair ({u}, {w}) is empty; instance infeasible"
                    )));
                }
                for &(a, b) in rel.unwrap() {
                    if a >= c || b >= c {
                        return Err(Error::InvalidInput(format!(
                            "color pair ({a}, {b}) out of range for pair ({u}, {w})"
                        )));
                    }
                }
            }
        }
        Ok(SlcInstance { k, c, relations })
    }

    /// Total size of all relations (the gadget's V_X count).
    pub fn relation_size(&self) -> usize {
        self.relations.values().map(|r| r.len()).sum()
    }
}

/// A color assignment: one color set per U-vertex and per W-vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlcAssignment {
    pub u_colors: Vec<BTreeSet<usize>>,
    pub w_colors: Vec<BTreeSet<usize>>,
}

impl SlcAssignment {
    pub fn cost(&self) -> u64 {
        (self.u_colors.iter().map(BTreeSet::len).sum::<usize>()
            + self.w_colors.iter().map(BTreeSet::len).sum::<usize>()) as u64
    }

    /// Every pair (u, w) has some allowed pair with both colors assigned.
    pub fn is_feasible(&self, inst: &SlcInstance) -> bool {
        inst.relations.iter().all(|(&(u, w), rel)| {
            rel.iter()
                .any(|&(a, b)| self.u_colors[u].contains(&a) && self.w_colors[w].contains(&b))
        })
    }
}

/// The gadget graph plus the vertex naming needed by the maps.
#[derive(Debug, Clone)]
pub struct SlcToTc {
    pub graph: TemporalGraph,
    pub k: usize,
    pub c: usize,
    /// Edge index of {u, (u,a)}.
    u_color_edge: BTreeMap<(usize, usize), usize>,
    /// Edge index of {w, (w,b)}.
    w_color_edge: BTreeMap<(usize, usize), usize>,
    /// Edge indices incident to V_X vertices.
    x_edges: Vec<usize>,
}

impl SlcToTc {
    pub fn u_vertex(&self, u: usize) -> usize {
        u
    }
    pub fn uc_vertex(&self, u: usize, a: usize) -> usize {
        self.k + u * self.c + a
    }
    pub fn w_vertex(&self, w: usize) -> usize {
        self.k + self.k * self.c + w
    }
    pub fn wc_vertex(&self, w: usize, b: usize) -> usize {
        2 * self.k + self.k * self.c + w * self.c + b
    }
    pub fn p_vertex(&self) -> usize {
        self.graph.n() - 2
    }
    pub fn q_vertex(&self) -> usize {
        self.graph.n() - 1
    }

    /// Edge indices incident to the consistency block V_X.
    pub fn x_edge_indices(&self) -> &[usize] {
        &self.x_edges
    }

    /// Maps a feasible color assignment to a feasible TC solution of equal
    /// weight: all zero-weight edges plus the chosen color edges.
    pub fn forward(&self, assignment: &SlcAssignment) -> Result<Solution> {
        let mut edges: BTreeSet<usize> = (0..self.graph.m())
            .filter(|&i| self.graph.edge(i).weight == 0)
            .collect();
        for (u, colors) in assignment.u_colors.iter().enumerate() {
            for &a in colors {
                edges.insert(self.u_color_edge[&(u, a)]);
            }
        }
        for (w, colors) in assignment.w_colors.iter().enumerate() {
            for &b in colors {
                edges.insert(self.w_color_edge[&(w, b)]);
            }
        }
        Solution::from_indices(&self.graph, edges)
    }

    /// Reads the assignment back from the weight-1 edges of a TC solution.
    pub fn backward(&self, sol: &Solution) -> SlcAssignment {
        let mut u_colors = vec![BTreeSet::new(); self.k];
        let mut w_colors = vec![BTreeSet::new(); self.k];
        for (&(u, a), &idx) in &self.u_color_edge {
            if sol.contains(idx) {
                u_colors[u].insert(a);
            }
        }
        for (&(w, b), &idx) in &self.w_color_edge {
            if sol.contains(idx) {
                w_colors[w].insert(b);
            }
        }
        SlcAssignment { u_colors, w_colors }
    }
}

/// Builds the temporal gadget for a Symmetric Label Cover instance.
pub fn slc_to_tc(inst: &SlcInstance) -> Result<SlcToTc> {
    let (k, c) = (inst.k, inst.c);
    let u_vertex = |u: usize| u;
    let uc_vertex = |u: usize, a: usize| k + u * c + a;
    let w_vertex = |w: usize| k + k * c + w;
    let wc_vertex = |w: usize, b: usize| 2 * k + k * c + w * c + b;
    let x_base = 2 * k + 2 * k * c;
    let num_x = inst.relation_size();
    let p = x_base + num_x;
    let q = p + 1;

    let mut edges: Vec<TemporalEdge> = Vec::new();
    let mut u_color_edge = BTreeMap::new();
    let mut w_color_edge = BTreeMap::new();
    let mut x_edges = Vec::new();

    for u in 0..k {
        for a in 0..c {
            u_color_edge.insert((u, a), edges.len());
            edges.push(TemporalEdge::new(
                u_vertex(u),
                uc_vertex(u, a),
                TimeLabel(1),
                1,
            ));
        }
    }
    for w in 0..k {
        for b in 0..c {
            w_color_edge.insert((w, b), edges.len());
            edges.push(TemporalEdge::new(
                w_vertex(w),
                wc_vertex(w, b),
                TimeLabel(4),
                1,
            ));
        }
    }
    let mut x_id = x_base;
    for (&(u, w), rel) in &inst.relations {
        for &(a, b) in rel {
            x_edges.push(edges.len());
            edges.push(TemporalEdge::new(uc_vertex(u, a), x_id, TimeLabel(2), 0));
            x_edges.push(edges.len());
            edges.push(TemporalEdge::new(x_id, wc_vertex(w, b), TimeLabel(3), 0));
            x_id += 1;
        }
    }
    // Hub p: label 5 to V_U, V_C(U), V_C(W), V_X; label 0 to V_W.
    // Hub q: label 5 to V_U; label 0 to V_W, V_C(U), V_C(W), V_X.
    for u in 0..k {
        edges.push(TemporalEdge::new(p, u_vertex(u), TimeLabel(5), 0));
        edges.push(TemporalEdge::new(q, u_vertex(u), TimeLabel(5), 0));
        edges.push(TemporalEdge::new(p, w_vertex(u), TimeLabel(0), 0));
        edges.push(TemporalEdge::new(q, w_vertex(u), TimeLabel(0), 0));
    }
    for u in 0..k {
        for a in 0..c {
            edges.push(TemporalEdge::new(p, uc_vertex(u, a), TimeLabel(5), 0));
            edges.push(TemporalEdge::new(q, uc_vertex(u, a), TimeLabel(0), 0));
            edges.push(TemporalEdge::new(p, wc_vertex(u, a), TimeLabel(5), 0));
            edges.push(TemporalEdge::new(q, wc_vertex(u, a), TimeLabel(0), 0));
        }
    }
    for x in x_base..x_base + num_x {
        edges.push(TemporalEdge::new(p, x, TimeLabel(5), 0));
        edges.push(TemporalEdge::new(q, x, TimeLabel(0), 0));
    }

    let graph = TemporalGraph::new(q + 1, 1, edges)?;
    Ok(SlcToTc {
        graph,
        k,
        c,
        u_color_edge,
        w_color_edge,
        x_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PathMode;
    use crate::reach::{feasible, is_connected};
    use crate::solve::brute_force;

    fn tiny() -> SlcInstance {
        SlcInstance::new(1, 1, BTreeMap::from([((0, 0), BTreeSet::from([(0, 0)]))])).unwrap()
    }

    #[test]
    fn empty_relation_rejected() {
        let rel = BTreeMap::from([((0, 0), BTreeSet::new())]);
        assert!(SlcInstance::new(1, 1, rel).is_err());
        assert!(SlcInstance::new(1, 1, BTreeMap::new()).is_err());
    }

    #[test]
    fn vertex_census() {
        let inst = tiny();
        let red = slc_to_tc(&inst).unwrap();
        assert_eq!(
            red.graph.n(),
            2 * inst.k + 2 * inst.k * inst.c + inst.relation_size() + 2
        );
        assert!(is_connected(&red.graph, PathMode::NonStrict));
    }

    #[test]
    fn tiny_instance_optimum_is_two() {
        let red = slc_to_tc(&tiny()).unwrap();
        let opt = brute_force(&red.graph, PathMode::NonStrict, None)
            .unwrap()
            .unwrap();
        assert_eq!(opt.cost(), 2);
        let assignment = red.backward(&opt);
        assert!(assignment.is_feasible(&tiny()));
        assert_eq!(assignment.cost(), 2);
    }

    #[test]
    fn forward_map_preserves_weight_and_feasibility() {
        let inst = SlcInstance::new(
            2,
            2,
            BTreeMap::from([
                ((0, 0), BTreeSet::from([(0, 1)])),
                ((0, 1), BTreeSet::from([(0, 0)])),
                ((1, 0), BTreeSet::from([(1, 1)])),
                ((1, 1), BTreeSet::from([(1, 0), (0, 0)])),
            ]),
        )
        .unwrap();
        let red = slc_to_tc(&inst).unwrap();
        let assignment = SlcAssignment {
            u_colors: vec![BTreeSet::from([0]), BTreeSet::from([1])],
            w_colors: vec![BTreeSet::from([0, 1]), BTreeSet::from([0])],
        };
        assert!(assignment.is_feasible(&inst));
        let sol = red.forward(&assignment).unwrap();
        assert_eq!(sol.cost(), assignment.cost());
        assert!(feasible(&red.graph, &sol, PathMode::NonStrict, None).unwrap());
    }

    #[test]
    fn u_w_pairs_disconnected_without_consistency_block() {
        let inst = tiny();
        let red = slc_to_tc(&inst).unwrap();
        let survivors = (0..red.graph.m()).filter(|i| !red.x_edge_indices().contains(i));
        let sol = Solution::from_indices(&red.graph, survivors).unwrap();
        let mask = sol.mask(&red.graph);
        let table = crate::reach::sweep(
            &red.graph,
            red.u_vertex(0),
            TimeLabel(0),
            PathMode::NonStrict,
            Some(&mask),
        );
        assert!(!table.reached(red.w_vertex(0)));
    }
}
