//! Exact minimum temporal connectivity on tiny instances by subset search.
//!
//! Zero-weight edges are always kept: adding one never raises the cost and
//! connectivity is monotone under edge addition, so some optimum contains
//! them all. The search branches only on positive-weight edges, trying
//! exclusion first, pruning branches whose remaining edge set is already
//! infeasible and branches whose accumulated cost reaches the incumbent.

use crate::error::{Error, Result};
use crate::graph::{PathMode, Solution, TemporalGraph};
use crate::reach::{is_connected_masked, is_r_connected_masked};

/// Default cap on the number of branching (positive-weight) edges.
pub const DEFAULT_CAP: usize = 22;

/// Minimum-cost feasible solution: r-connected when `root` is given,
/// connected for all ordered pairs otherwise. Returns `None` when the graph
/// itself is infeasible. See [`brute_force_with_cap`] for the cap semantics.
pub fn brute_force(
    g: &TemporalGraph,
    mode: PathMode,
    root: Option<usize>,
) -> Result<Option<Solution>> {
    brute_force_with_cap(g, mode, root, DEFAULT_CAP)
}

/// [`brute_force`] with an explicit cap on the edges the search may branch
/// on. Zero-weight edges are fixed into the solution and do not count
/// against the cap.
pub fn brute_force_with_cap(
    g: &TemporalGraph,
    mode: PathMode,
    root: Option<usize>,
    cap: usize,
) -> Result<Option<Solution>> {
    if let Some(r) = root {
        if r >= g.n() {
            return Err(Error::InvalidInput(format!(
                "root {r} out of range (n = {})",
                g.n()
            )));
        }
    }
    let branching: Vec<usize> = (0..g.m()).filter(|&i| g.edge(i).weight > 0).collect();
    if branching.len() > cap {
        return Err(Error::CapExceeded {
            what: "brute-force branching edges",
            cap,
            actual: branching.len(),
        });
    }

    let feasible_mask = |mask: &[bool]| -> bool {
        match root {
            Some(r) => is_r_connected_masked(g, r, mode, Some(mask)),
            None => is_connected_masked(g, mode, Some(mask)),
        }
    };

    let mut mask = vec![true; g.m()];
    if !feasible_mask(&mask) {
        return Ok(None);
    }

    // Branch on heavier edges first so exclusions pay off early.
    let mut order = branching;
    order.sort_by_key(|&i| (std::cmp::Reverse(g.edge(i).weight), i));

    struct Search<'a, F: Fn(&[bool]) -> bool> {
        g: &'a TemporalGraph,
        order: Vec<usize>,
        feasible: F,
        best_cost: u64,
        best_mask: Vec<bool>,
    }

    impl<F: Fn(&[bool]) -> bool> Search<'_, F> {
        /// `mask` holds chosen + undecided edges and is feasible on entry.
        fn run(&mut self, depth: usize, acc: u64, mask: &mut Vec<bool>) {
            if acc >= self.best_cost {
                return;
            }
            if depth == self.order.len() {
                self.best_cost = acc;
                self.best_mask = mask.clone();
                return;
            }
            let ei = self.order[depth];
            // Exclude branch first: it drives toward sparse, cheap incumbents.
            // Sound to skip when infeasible: subsets of an infeasible edge set
            // stay infeasible.
            mask[ei] = false;
            if (self.feasible)(mask) {
                self.run(depth + 1, acc, mask);
            }
            mask[ei] = true;
            self.run(depth + 1, acc + self.g.edge(ei).weight, mask);
        }
    }

    let mut search = Search {
        g,
        order,
        feasible: feasible_mask,
        best_cost: u64::MAX,
        best_mask: Vec::new(),
    };
    search.run(0, 0, &mut mask);
    debug_assert!(search.best_cost < u64::MAX);
    let chosen = (0..g.m()).filter(|&i| search.best_mask[i]);
    Ok(Some(Solution::from_indices(g, chosen)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{TemporalEdge, TimeLabel};

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
    fn single_edge_tc() {
        let g = graph(2, &[(0, 1, 1, 7)]);
        let sol = brute_force(&g, PathMode::NonStrict, None).unwrap().unwrap();
        assert_eq!(sol.cost(), 7);
        assert_eq!(sol.len(), 1);
    }

    #[test]
    fn unit_triangle_needs_two_edges() {
        let g = graph(3, &[(0, 1, 1, 1), (1, 2, 1, 1), (0, 2, 1, 1)]);
        let sol = brute_force(&g, PathMode::NonStrict, None).unwrap().unwrap();
        assert_eq!(sol.cost(), 2);
    }

    #[test]
    fn infeasible_graph_yields_none() {
        let g = graph(2, &[]);
        assert!(brute_force(&g, PathMode::NonStrict, None)
            .unwrap()
            .is_none());
        assert!(brute_force(&g, PathMode::NonStrict, Some(0))
            .unwrap()
            .is_none());
    }

    #[test]
    fn cap_refusal_reports_cap() {
        let edges: Vec<(usize, usize, u64, u64)> = (0..24)
            .map(|i| (i % 5, (i + 1) % 5 + 5, i as u64 + 1, 1))
            .collect();
        let g = graph(10, &edges);
        match brute_force_with_cap(&g, PathMode::NonStrict, None, 3) {
            Err(Error::CapExceeded { cap: 3, .. }) => {}
            other => panic!("expected cap refusal, got {other:?}"),
        }
    }

    #[test]
    fn rooted_optimum_smaller_than_tc() {
        // From the hub the label-1 edges suffice; strict TC must buy the
        // later labels for the leaf-to-leaf returns.
        let g = graph(3, &[(0, 1, 1, 1), (0, 2, 1, 1), (0, 1, 2, 5), (0, 2, 2, 5)]);
        let rooted = brute_force(&g, PathMode::Strict, Some(0)).unwrap().unwrap();
        assert_eq!(rooted.cost(), 2);
        let tc = brute_force(&g, PathMode::Strict, None).unwrap().unwrap();
        assert_eq!(tc.cost(), 12);
    }

    #[test]
    fn zero_weight_edges_kept_without_cost() {
        let g = graph(3, &[(0, 1, 1, 0), (1, 2, 1, 0), (0, 2, 1, 3)]);
        let sol = brute_force(&g, PathMode::NonStrict, None).unwrap().unwrap();
        assert_eq!(sol.cost(), 0);
        assert!(sol.contains(0) && sol.contains(1));
    }

    #[test]
    fn root_out_of_range_is_input_error() {
        let g = graph(2, &[(0, 1, 1, 1)]);
        assert!(brute_force(&g, PathMode::NonStrict, Some(5)).is_err());
    }
}
