//! All-pairs temporal connectivity as Directed Steiner Forest.
//!
//! Every temporal edge (e,t) becomes a pair of vertices joined by an arc of
//! weight w(e,t): entering the pair means the edge is available, crossing
//! the arc means it is bought. Zero-weight wait arcs walk the labels of one
//! underlying edge upward; zero-weight hand-off arcs jump from a used edge
//! to the earliest usable label of each adjacent edge; per-vertex source and
//! sink terminals attach with zero weight, and every ordered vertex pair is
//! a demand.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::graph::{PathMode, Solution, TemporalGraph};
use crate::steiner::{Arc, DsfInstance, SteinerSolution};

/// The instance together with the arc bookkeeping needed by the maps.
#[derive(Debug, Clone)]
pub struct TcToDsf {
    pub instance: DsfInstance,
    /// Arc index of (h1_i -> h2_i) per temporal edge i.
    buy_arc: Vec<usize>,
    /// Arc counts by class: (buy, wait, hand-off, terminal-attach).
    pub arc_census: (usize, usize, usize, usize),
}

impl TcToDsf {
    /// Vertex h1 of temporal edge `i` ("may use").
    pub fn h1(&self, i: usize) -> usize {
        2 * i
    }

    /// Vertex h2 of temporal edge `i` ("actually used").
    pub fn h2(&self, i: usize) -> usize {
        2 * i + 1
    }

    /// Maps a feasible TC solution to an equal-cost forest solution: all
    /// zero-weight arcs plus the buy arcs of the chosen temporal edges.
    pub fn forward(&self, sol: &Solution) -> Result<SteinerSolution> {
        let mut arcs: BTreeSet<usize> = (0..self.instance.arcs.len())
            .filter(|&i| self.instance.arcs[i].weight == 0)
            .collect();
        for &i in sol.edge_indices() {
            arcs.insert(self.buy_arc[i]);
        }
        SteinerSolution::from_indices(&self.instance.arcs, arcs)
    }

    /// Keeps the temporal edges whose buy arc was chosen.
    pub fn backward(&self, g: &TemporalGraph, sol: &SteinerSolution) -> Result<Solution> {
        let chosen: Vec<usize> = (0..g.m())
            .filter(|&i| sol.arc_indices().contains(&self.buy_arc[i]))
            .collect();
        Solution::from_indices(g, chosen)
    }
}

/// Builds the Directed Steiner Forest instance for `TC` on `g`.
pub fn tc_to_dsf(g: &TemporalGraph, mode: PathMode) -> Result<TcToDsf> {
    let m = g.m();
    let n = g.n();
    let h1 = |i: usize| 2 * i;
    let h2 = |i: usize| 2 * i + 1;
    let source_of = |v: usize| 2 * m + v;
    let sink_of = |v: usize| 2 * m + n + v;

    let mut arcs: Vec<Arc> = Vec::new();
    let mut buy_arc = Vec::with_capacity(m);
    for i in 0..m {
        buy_arc.push(arcs.len());
        arcs.push(Arc {
            from: h1(i),
            to: h2(i),
            weight: g.edge(i).weight,
        });
    }
    let buy_count = arcs.len();

    // Wait arcs along the sorted labels of each underlying edge.
    let underlying = g.underlying_map();
    for idxs in underlying.values() {
        for w in idxs.windows(2) {
            arcs.push(Arc {
                from: h1(w[0]),
                to: h1(w[1]),
                weight: 0,
            });
        }
    }
    let wait_count = arcs.len() - buy_count;

    // Hand-off arcs: from a used edge to the earliest usable label of each
    // adjacent underlying edge.
    for i in 0..m {
        let a = g.edge(i);
        for (&(u, v), idxs) in &underlying {
            if (u, v) == a.underlying() {
                continue;
            }
            if !(a.touches(u) || a.touches(v)) {
                continue;
            }
            // idxs is label-ascending; pick the first chaining label.
            if let Some(&j) = idxs
                .iter()
                .find(|&&j| mode.chains(a.label, g.edge(j).label))
            {
                arcs.push(Arc {
                    from: h2(i),
                    to: h1(j),
                    weight: 0,
                });
            }
        }
    }
    let handoff_count = arcs.len() - buy_count - wait_count;

    // Terminal attachments.
    for i in 0..m {
        let e = g.edge(i);
        for u in [e.u, e.v] {
            arcs.push(Arc {
                from: source_of(u),
                to: h1(i),
                weight: 0,
            });
            arcs.push(Arc {
                from: h2(i),
                to: sink_of(u),
                weight: 0,
            });
        }
    }
    let attach_count = arcs.len() - buy_count - wait_count - handoff_count;

    let mut demands = Vec::with_capacity(n * n.saturating_sub(1));
    for s in 0..n {
        for t in 0..n {
            if s != t {
                demands.push((source_of(s), sink_of(t)));
            }
        }
    }
    let instance = DsfInstance::new(2 * m + 2 * n, arcs, demands)?;
    Ok(TcToDsf {
        instance,
        buy_arc,
        arc_census: (buy_count, wait_count, handoff_count, attach_count),
    })
}

/// Convenience census used by tests: hand-off arcs are bounded by 2 * Delta
/// * M over the underlying maximum degree.
pub fn handoff_bound(g: &TemporalGraph) -> usize {
    2 * g.stats().max_degree * g.m()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::graph::{TemporalEdge, TimeLabel};
    use crate::reach::feasible;
    use crate::solve::brute_force;
    use crate::steiner::{dsf_brute, dsf_feasible};

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
    fn demand_count_is_n_times_n_minus_one() {
        let g = graph(4, &[(0, 1, 1, 1), (1, 2, 1, 1), (2, 3, 2, 1)]);
        let red = tc_to_dsf(&g, PathMode::NonStrict).unwrap();
        assert_eq!(red.instance.demands.len(), 4 * 3);
    }

    #[test]
    fn handoff_arcs_within_degree_bound() {
        let g = graph(
            4,
            &[
                (0, 1, 1, 1),
                (0, 1, 3, 1),
                (1, 2, 2, 1),
                (2, 3, 2, 1),
                (0, 2, 1, 1),
                (0, 3, 4, 1),
            ],
        );
        let red = tc_to_dsf(&g, PathMode::NonStrict).unwrap();
        let (_, _, handoffs, _) = red.arc_census;
        assert!(handoffs <= handoff_bound(&g));
    }

    #[test]
    fn optimum_equality_small_fixed_instance() {
        let g = graph(3, &[(0, 1, 1, 2), (1, 2, 1, 3), (0, 2, 2, 4), (0, 1, 2, 1)]);
        for mode in [PathMode::NonStrict, PathMode::Strict] {
            let tc_opt = brute_force(&g, mode, None).unwrap();
            let red = tc_to_dsf(&g, mode).unwrap();
            match dsf_brute(&red.instance) {
                Ok(dsf_opt) => {
                    let tc_opt = tc_opt.expect("both sides feasible");
                    assert_eq!(dsf_opt.cost(), tc_opt.cost(), "{mode:?}");

                    let fwd = red.forward(&tc_opt).unwrap();
                    assert!(dsf_feasible(&red.instance, &fwd));
                    assert_eq!(fwd.cost(), tc_opt.cost());

                    let back = red.backward(&g, &dsf_opt).unwrap();
                    assert!(feasible(&g, &back, mode, None).unwrap());
                    assert!(back.cost() <= dsf_opt.cost());
                }
                Err(Error::Infeasible(_)) => assert!(tc_opt.is_none()),
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }
}
