//! Exact all-pairs temporal connectivity on temporal trees.
//!
//! Each underlying tree edge is traversed downward at one label and upward
//! at one label in some optimal solution, so at most two labels per edge are
//! ever needed. The DP attaches children one at a time: `g(u, j, in, out)`
//! is the cheapest way to serve the first `j` subtrees of `u` when entering
//! traffic arrives at `u` no later than... with last label bounded below by
//! `in` and departing traffic must leave with labels admissible for `out`.
//! Attaching child c_j with a downward label d and an upward label p costs
//! the two temporal edges (one if d = p) plus the child subtree solved with
//! bounds (d, p), and tightens the bounds of the earlier siblings to
//! (max(in, p), min(out, d)).

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{PathMode, Solution, TemporalGraph, TimeLabel};
use crate::reach::is_connected;

/// Label bound with sentinels below and above every label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Bound {
    NegInf,
    At(u64),
    PosInf,
}

impl Bound {
    /// May a path whose last label satisfies this lower bound continue on
    /// `label`?
    fn admits_departure(self, label: TimeLabel, mode: PathMode) -> bool {
        match self {
            Bound::NegInf => true,
            Bound::At(x) => mode.chains(TimeLabel(x), label),
            Bound::PosInf => false,
        }
    }

    /// May a path arriving via `label` still reach an exit restricted by
    /// this upper bound?
    fn admits_arrival(self, label: TimeLabel, mode: PathMode) -> bool {
        match self {
            Bound::PosInf => true,
            Bound::At(x) => mode.chains(label, TimeLabel(x)),
            Bound::NegInf => false,
        }
    }
}

struct TreeSolver {
    mode: PathMode,
    children: Vec<Vec<usize>>,
    /// Temporal edges of the underlying edge {u, child}: (label, weight, index).
    edge_labels: Vec<Vec<(u64, u64, usize)>>,
    memo: HashMap<(usize, usize, Bound, Bound), Option<u64>>,
    /// Chosen (down-label index, up-label index) per memo state with j > 0.
    choice: HashMap<(usize, usize, Bound, Bound), (usize, usize)>,
}

impl TreeSolver {
    /// Cheapest service of the first `j` child subtrees of `u`.
    fn g_value(&mut self, u: usize, j: usize, bin: Bound, bout: Bound) -> Option<u64> {
        if j == 0 {
            return Some(0);
        }
        let key = (u, j, bin, bout);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let child = self.children[u][j - 1];
        let labels = self.edge_labels[child].clone();
        let mut best: Option<u64> = None;
        let mut best_choice = (0usize, 0usize);
        for (di, &(down, wd, _)) in labels.iter().enumerate() {
            if !bin.admits_departure(TimeLabel(down), self.mode) {
                continue;
            }
            for (ui, &(up, wu, _)) in labels.iter().enumerate() {
                if !bout.admits_arrival(TimeLabel(up), self.mode) {
                    continue;
                }
                let pair_cost = if di == ui { wd } else { wd + wu };
                let Some(sub) = self.f_value(child, down, up) else {
                    continue;
                };
                let rest_in = bin.max(Bound::At(up));
                let rest_out = bout.min(Bound::At(down));
                let Some(rest) = self.g_value(u, j - 1, rest_in, rest_out) else {
                    continue;
                };
                let total = pair_cost + sub + rest;
                if best.is_none_or(|b| total < b) {
                    best = Some(total);
                    best_choice = (di, ui);
                }
            }
        }
        self.memo.insert(key, best);
        if best.is_some() {
            self.choice.insert(key, best_choice);
        }
        best
    }

    /// Subtree of `child` entered at label `down` and exited at label `up`.
    fn f_value(&mut self, child: usize, down: u64, up: u64) -> Option<u64> {
        self.g_value(
            child,
            self.children[child].len(),
            Bound::At(down),
            Bound::At(up),
        )
    }

    fn reconstruct(&self, u: usize, j: usize, bin: Bound, bout: Bound, out: &mut BTreeSet<usize>) {
        if j == 0 {
            return;
        }
        let key = (u, j, bin, bout);
        let &(di, ui) = self.choice.get(&key).expect("choice recorded for state");
        let child = self.children[u][j - 1];
        let (down, _, idx_down) = self.edge_labels[child][di];
        let (up, _, idx_up) = self.edge_labels[child][ui];
        out.insert(idx_down);
        out.insert(idx_up);
        self.reconstruct(
            child,
            self.children[child].len(),
            Bound::At(down),
            Bound::At(up),
            out,
        );
        self.reconstruct(
            u,
            j - 1,
            bin.max(Bound::At(up)),
            bout.min(Bound::At(down)),
            out,
        );
    }
}

/// Optimal all-pairs temporal connectivity on a temporal tree. The output
/// uses at most two labels per underlying edge.
pub fn solve_tree_tc(g: &TemporalGraph, mode: PathMode) -> Result<Solution> {
    let underlying = g.underlying_map();
    if g.n() == 0 {
        return Err(Error::InvalidInput("empty vertex set".into()));
    }
    // Tree check: n-1 underlying edges and statically connected.
    if underlying.len() != g.n() - 1 {
        return Err(Error::InvalidInput(format!(
            "underlying graph is not a tree: {} underlying edges on {} vertices",
            underlying.len(),
            g.n()
        )));
    }
    let mut adj = vec![Vec::new(); g.n()];
    for &(u, v) in underlying.keys() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; g.n()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut parent = vec![usize::MAX; g.n()];
    let mut children = vec![Vec::new(); g.n()];
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = u;
                children[u].push(v);
                queue.push_back(v);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::InvalidInput(
            "underlying graph is not a tree: disconnected".into(),
        ));
    }
    for ch in &mut children {
        ch.sort_unstable();
    }
    if !is_connected(g, mode) {
        return Err(Error::Infeasible(
            "temporal tree is not temporally connected".into(),
        ));
    }
    if g.n() == 1 {
        return Ok(Solution::empty());
    }

    // Labels of the edge joining each non-root vertex to its parent.
    let mut edge_labels = vec![Vec::new(); g.n()];
    for (&(u, v), idxs) in &underlying {
        let child = if parent[v] == u { v } else { u };
        debug_assert!(parent[child] == u + v - child);
        edge_labels[child] = idxs
            .iter()
            .map(|&i| (g.edge(i).label.value(), g.edge(i).weight, i))
            .collect();
        edge_labels[child].sort_unstable();
    }

    let mut solver = TreeSolver {
        mode,
        children,
        edge_labels,
        memo: HashMap::new(),
        choice: HashMap::new(),
    };
    let top_j = solver.children[0].len();
    let value = solver
        .g_value(0, top_j, Bound::NegInf, Bound::PosInf)
        .ok_or_else(|| {
            Error::Internal("tree DP found no solution on a connected temporal tree".into())
        })?;
    let mut indices = BTreeSet::new();
    solver.reconstruct(0, top_j, Bound::NegInf, Bound::PosInf, &mut indices);
    let sol = Solution::from_indices(g, indices)?;
    debug_assert_eq!(sol.cost(), value);
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::TemporalEdge;
    use crate::reach::feasible;
    use crate::solve::brute::brute_force;

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
    fn single_edge_one_label_serves_both_directions() {
        let g = graph(2, &[(0, 1, 1, 5)]);
        for mode in [PathMode::NonStrict, PathMode::Strict] {
            let sol = solve_tree_tc(&g, mode).unwrap();
            assert_eq!(sol.cost(), 5);
            assert_eq!(sol.len(), 1);
        }
    }

    #[test]
    fn two_edge_path_needs_three_temporal_edges() {
        let g = graph(3, &[(0, 1, 1, 1), (0, 1, 3, 1), (1, 2, 2, 1)]);
        let sol = solve_tree_tc(&g, PathMode::NonStrict).unwrap();
        assert_eq!(sol.cost(), 3);
        assert_eq!(
            sol.edge_indices().iter().copied().collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        assert!(feasible(&g, &sol, PathMode::NonStrict, None).unwrap());
    }

    #[test]
    fn rejects_non_tree() {
        let g = graph(3, &[(0, 1, 1, 1), (1, 2, 1, 1), (0, 2, 1, 1)]);
        assert!(matches!(
            solve_tree_tc(&g, PathMode::NonStrict),
            Err(Error::InvalidInput(_))
        ));
        let forest = graph(4, &[(0, 1, 1, 1), (2, 3, 1, 1), (0, 1, 2, 1)]);
        assert!(solve_tree_tc(&forest, PathMode::NonStrict).is_err());
    }

    #[test]
    fn temporally_disconnected_tree_is_infeasible() {
        // Strictly decreasing labels away from 0: vertex 2 cannot reach 0.
        let g = graph(3, &[(0, 1, 2, 1), (1, 2, 1, 1)]);
        assert!(matches!(
            solve_tree_tc(&g, PathMode::Strict),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn singleton_tree_is_trivial() {
        let g = graph(1, &[]);
        let sol = solve_tree_tc(&g, PathMode::NonStrict).unwrap();
        assert!(sol.is_empty());
    }

    #[test]
    fn matches_brute_force_on_fixed_instances() {
        // A star and a broom with mixed labels and weights, both modes.
        let star = graph(
            4,
            &[
                (0, 1, 1, 2),
                (0, 1, 4, 1),
                (0, 2, 2, 3),
                (0, 3, 3, 1),
                (0, 3, 1, 2),
            ],
        );
        let broom = graph(
            5,
            &[
                (0, 1, 2, 1),
                (1, 2, 3, 2),
                (1, 2, 1, 1),
                (2, 3, 4, 1),
                (2, 4, 2, 5),
                (2, 4, 4, 1),
            ],
        );
        for g in [&star, &broom] {
            for mode in [PathMode::NonStrict, PathMode::Strict] {
                let brute = brute_force(g, mode, None).unwrap();
                match solve_tree_tc(g, mode) {
                    Ok(sol) => {
                        assert!(feasible(g, &sol, mode, None).unwrap());
                        assert_eq!(sol.cost(), brute.unwrap().cost(), "{mode:?}");
                        for (_, cnt) in sol.labels_per_underlying_edge(g) {
                            assert!(cnt <= 2);
                        }
                    }
                    Err(Error::Infeasible(_)) => assert!(brute.is_none()),
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
    }
}
