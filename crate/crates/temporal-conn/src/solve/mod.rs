//! Minimum temporal-connectivity solvers: a brute-force oracle, exact DPs on
//! trees and bounded-treewidth graphs, the union-of-rooted-solutions TC
//! heuristic, and the sector-based 2-approximation on cycles.

pub mod brute;
pub mod cycle;
pub mod decomposition;
pub mod tree;
pub mod treewidth;

pub use brute::{brute_force, brute_force_with_cap, DEFAULT_CAP};
pub use cycle::{inc_path_costs, solve_cycle_tc, CycleOutcome};
pub use decomposition::{make_nice_decomposition, TreeDecomposition};
pub use tree::solve_tree_tc;
pub use treewidth::solve_rtc_treewidth;

use crate::error::{Error, Result};
use crate::graph::{PathMode, Solution, TemporalGraph};
use crate::reach::feasible;

/// All-pairs connectivity by solving the rooted problem from every vertex
/// and taking the union. With an exact rooted solver the result is feasible
/// for TC and costs at most n times the TC optimum.
pub fn tc_via_rooted_union<F>(
    g: &TemporalGraph,
    mode: PathMode,
    mut rtc_solver: F,
) -> Result<Solution>
where
    F: FnMut(&TemporalGraph, usize) -> Result<Solution>,
{
    let mut union = std::collections::BTreeSet::new();
    for r in 0..g.n() {
        let sol = rtc_solver(g, r).map_err(|e| match e {
            Error::Infeasible(msg) => Error::Infeasible(format!("root {r}: {msg}")),
            other => other,
        })?;
        union.extend(sol.edge_indices().iter().copied());
    }
    let sol = Solution::from_indices(g, union)?;
    if !feasible(g, &sol, mode, None)? {
        return Err(Error::Internal(
            "union of rooted solutions is not temporally connected".into(),
        ));
    }
    Ok(sol)
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
    fn union_of_single_edge_graph() {
        let g = graph(2, &[(0, 1, 1, 7)]);
        let sol = tc_via_rooted_union(&g, PathMode::NonStrict, |g, r| {
            Ok(brute_force(g, PathMode::NonStrict, Some(r))?.expect("feasible"))
        })
        .unwrap();
        assert_eq!(sol.cost(), 7);
    }

    #[test]
    fn union_on_uniform_star_is_the_star() {
        let g = graph(5, &[(0, 1, 1, 1), (0, 2, 1, 1), (0, 3, 1, 1), (0, 4, 1, 1)]);
        let sol = tc_via_rooted_union(&g, PathMode::NonStrict, |g, r| {
            Ok(brute_force(g, PathMode::NonStrict, Some(r))?.expect("feasible"))
        })
        .unwrap();
        assert_eq!(sol.len(), 4);
        assert_eq!(sol.cost(), 4);
    }

    #[test]
    fn union_infeasible_root_propagates() {
        let g = graph(3, &[(0, 1, 1, 1)]);
        let err = tc_via_rooted_union(&g, PathMode::NonStrict, |g, r| {
            brute_force(g, PathMode::NonStrict, Some(r))?
                .ok_or_else(|| Error::Infeasible("no rooted solution".into()))
        });
        assert!(matches!(err, Err(Error::Infeasible(_))));
    }
}
