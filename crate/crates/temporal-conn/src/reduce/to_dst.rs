//! Rooted temporal connectivity as Directed Steiner Tree.
//!
//! The Steiner graph has one non-terminal vertex per temporal edge, a root,
//! and one terminal per non-root vertex. An arc joins temporal edge (e1,t1)
//! to (e2,t2) with weight w(e2,t2) when the underlying edges differ, share
//! an endpoint, and t1 <= t2 (strictly increasing in strict mode): buying
//! the arc means continuing a temporal path over (e2,t2). Root arcs enter
//! the temporal edges at the source; zero-weight arcs leave each temporal
//! edge into the terminals of its endpoints.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{PathMode, Solution, TemporalGraph};
use crate::reach::prune_to_tree;
use crate::steiner::{reachable_with, Arc, DstInstance, SteinerSolution};

/// The instance together with the vertex naming needed by the maps.
#[derive(Debug, Clone)]
pub struct RtcToDst {
    pub instance: DstInstance,
    root: usize,
    mode: PathMode,
    num_temporal_edges: usize,
    /// (from, to) -> arc index.
    arc_index: BTreeMap<(usize, usize), usize>,
}

impl RtcToDst {
    /// Steiner vertex of temporal edge `i`.
    pub fn vertex_of_edge(&self, i: usize) -> usize {
        1 + i
    }

    /// Temporal edge of Steiner vertex `x`, when `x` encodes one.
    pub fn edge_of_vertex(&self, x: usize) -> Option<usize> {
        (1..=self.num_temporal_edges).contains(&x).then(|| x - 1)
    }

    /// Terminal vertex of graph vertex `u` (u != root).
    pub fn terminal_of(&self, u: usize) -> usize {
        let rank = if u < self.root { u } else { u - 1 };
        1 + self.num_temporal_edges + rank
    }

    /// Maps a feasible rooted solution to a Steiner solution of no larger
    /// cost: prune to a simple temporal tree, then buy the arcs along every
    /// root-to-vertex path plus all zero-weight arcs.
    pub fn forward(&self, g: &TemporalGraph, sol: &Solution) -> Result<SteinerSolution> {
        let tree = prune_to_tree(g, sol, self.root, self.mode)?;
        let mut arcs: BTreeSet<usize> = (0..self.instance.arcs.len())
            .filter(|&i| self.instance.arcs[i].weight == 0)
            .collect();
        let mask = tree.mask(g);
        let table = crate::reach::sweep(
            g,
            self.root,
            crate::graph::TimeLabel(0),
            self.mode,
            Some(&mask),
        );
        for v in 0..g.n() {
            if v == self.root {
                continue;
            }
            let path = table
                .witness(v)
                .ok_or_else(|| Error::Internal("pruned tree lost a vertex".into()))?;
            let seq = &path.edge_indices;
            let first = (0usize, self.vertex_of_edge(seq[0]));
            arcs.insert(
                *self
                    .arc_index
                    .get(&first)
                    .ok_or_else(|| Error::Internal("missing root arc in reduction".into()))?,
            );
            for w in seq.windows(2) {
                let key = (self.vertex_of_edge(w[0]), self.vertex_of_edge(w[1]));
                arcs.insert(*self.arc_index.get(&key).ok_or_else(|| {
                    Error::Internal("missing continuation arc in reduction".into())
                })?);
            }
        }
        SteinerSolution::from_indices(&self.instance.arcs, arcs)
    }

    /// Maps a Steiner solution back: keep the temporal edges whose Steiner
    /// vertex lies on some root-to-terminal path of the chosen arcs.
    pub fn backward(&self, g: &TemporalGraph, sol: &SteinerSolution) -> Result<Solution> {
        let fwd = reachable_with(
            self.instance.num_vertices,
            &self.instance.arcs,
            sol.arc_indices(),
            self.instance.root,
        );
        // Reverse reachability to any terminal.
        let reversed: Vec<Arc> = self
            .instance
            .arcs
            .iter()
            .map(|a| Arc {
                from: a.to,
                to: a.from,
                weight: a.weight,
            })
            .collect();
        let mut to_terminal = vec![false; self.instance.num_vertices];
        for &t in &self.instance.terminals {
            let seen = reachable_with(self.instance.num_vertices, &reversed, sol.arc_indices(), t);
            for (v, &s) in seen.iter().enumerate() {
                to_terminal[v] |= s;
            }
        }
        let kept = (0..self.instance.num_vertices)
            .filter(|&x| fwd[x] && to_terminal[x])
            .filter_map(|x| self.edge_of_vertex(x));
        Solution::from_indices(g, kept)
    }
}

/// Builds the Directed Steiner Tree instance for `rTC` on `g` from `r`.
pub fn rtc_to_dst(g: &TemporalGraph, r: usize, mode: PathMode) -> Result<RtcToDst> {
    if r >= g.n() {
        return Err(Error::InvalidInput(format!(
            "root {r} out of range (n = {})",
            g.n()
        )));
    }
    let m = g.m();
    let mut arcs: Vec<Arc> = Vec::new();
    // Root arcs into temporal edges at the source.
    for i in 0..m {
        if g.edge(i).touches(r) {
            arcs.push(Arc {
                from: 0,
                to: 1 + i,
                weight: g.edge(i).weight,
            });
        }
    }
    // Continuation arcs between temporal edges of different underlying edges
    // sharing an endpoint.
    for i in 0..m {
        let a = g.edge(i);
        for j in 0..m {
            if i == j {
                continue;
            }
            let b = g.edge(j);
            if a.underlying() == b.underlying() {
                continue;
            }
            let share = a.touches(b.u) || a.touches(b.v);
            if share && mode.chains(a.label, b.label) {
                arcs.push(Arc {
                    from: 1 + i,
                    to: 1 + j,
                    weight: b.weight,
                });
            }
        }
    }
    // Zero-weight arcs into the terminals of each temporal edge's endpoints.
    let terminal_of = |u: usize| 1 + m + if u < r { u } else { u - 1 };
    for i in 0..m {
        let e = g.edge(i);
        for u in [e.u, e.v] {
            if u != r {
                arcs.push(Arc {
                    from: 1 + i,
                    to: terminal_of(u),
                    weight: 0,
                });
            }
        }
    }
    let terminals: BTreeSet<usize> = (0..g.n()).filter(|&u| u != r).map(terminal_of).collect();
    let arc_index: BTreeMap<(usize, usize), usize> = arcs
        .iter()
        .enumerate()
        .map(|(idx, a)| ((a.from, a.to), idx))
        .collect();
    let instance = DstInstance::new(1 + m + (g.n() - 1), arcs, 0, terminals)?;
    Ok(RtcToDst {
        instance,
        root: r,
        mode,
        num_temporal_edges: m,
        arc_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{TemporalEdge, TimeLabel};
    use crate::reach::feasible;
    use crate::solve::brute_force;
    use crate::steiner::{dst_exact, dst_feasible};

    fn graph(n: usize, edges: &[(usize, usize, u64, u64)]) -> TemporalGraph {
        TemporalGraph::new(
            n,
            1,
            edges
                .iter()
                .map(|&(u, v, t, w)| TemporalEdge::new(u, v, TimeLabel(t), w))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn vertex_census() {
        let g = graph(4, &[(0, 1, 1, 1), (1, 2, 2, 3), (2, 3, 3, 1), (0, 2, 2, 2)]);
        let red = rtc_to_dst(&g, 0, PathMode::NonStrict).unwrap();
        assert_eq!(red.instance.num_vertices, 1 + g.m() + (g.n() - 1));
        assert_eq!(red.instance.terminals.len(), g.n() - 1);
    }

    #[test]
    fn single_edge_round_trip() {
        let g = graph(2, &[(0, 1, 5, 7)]);
        let red = rtc_to_dst(&g, 0, PathMode::NonStrict).unwrap();
        let dst_opt = dst_exact(&red.instance).unwrap();
        assert_eq!(dst_opt.cost(), 7);
        let back = red.backward(&g, &dst_opt).unwrap();
        assert_eq!(back.cost(), 7);
        assert!(feasible(&g, &back, PathMode::NonStrict, Some(0)).unwrap());
    }

    #[test]
    fn optimum_equality_small_fixed_instance() {
        let g = graph(
            4,
            &[
                (0, 1, 1, 2),
                (1, 2, 2, 3),
                (1, 2, 1, 5),
                (2, 3, 3, 1),
                (0, 3, 1, 9),
            ],
        );
        for mode in [PathMode::NonStrict, PathMode::Strict] {
            let red = rtc_to_dst(&g, 0, mode).unwrap();
            let dst_opt = dst_exact(&red.instance).unwrap();
            let rtc_opt = brute_force(&g, mode, Some(0)).unwrap().unwrap();
            assert_eq!(dst_opt.cost(), rtc_opt.cost(), "{mode:?}");

            let fwd = red.forward(&g, &rtc_opt).unwrap();
            assert!(dst_feasible(&red.instance, &fwd));
            assert!(fwd.cost() <= rtc_opt.cost());

            let back = red.backward(&g, &dst_opt).unwrap();
            assert!(feasible(&g, &back, mode, Some(0)).unwrap());
            assert!(back.cost() <= dst_opt.cost());
        }
    }
}
