//! Recursive density-greedy approximation for Directed Steiner Tree.
//!
//! Works on the metric closure: all-pairs shortest paths replace arcs, and
//! closure arcs are expanded back to original arc indices on output. The
//! depth-d recursion repeatedly picks the sub-tree of best density (cost per
//! newly covered terminal): at depth 1 a vertex connects terminals directly;
//! at greater depths it tries every intermediate vertex and terminal budget.
//! Feasible output only; no ratio is asserted.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::steiner::{dst_feasible, DstInstance, SteinerSolution};

struct Closure {
    n: usize,
    /// dist[u][v], u64::MAX when unreachable.
    dist: Vec<Vec<u64>>,
    /// next[u][v] = first arc index on a shortest u -> v path.
    next: Vec<Vec<Option<usize>>>,
}

impl Closure {
    fn build(inst: &DstInstance) -> Closure {
        let n = inst.num_vertices;
        let mut dist = vec![vec![u64::MAX; n]; n];
        let mut next = vec![vec![None; n]; n];
        for (v, row) in dist.iter_mut().enumerate() {
            row[v] = 0;
        }
        for (i, a) in inst.arcs.iter().enumerate() {
            if a.weight < dist[a.from][a.to] {
                dist[a.from][a.to] = a.weight;
                next[a.from][a.to] = Some(i);
            }
        }
        for k in 0..n {
            for u in 0..n {
                if dist[u][k] == u64::MAX {
                    continue;
                }
                for v in 0..n {
                    if dist[k][v] == u64::MAX {
                        continue;
                    }
                    let through = dist[u][k] + dist[k][v];
                    if through < dist[u][v] {
                        dist[u][v] = through;
                        next[u][v] = next[u][k];
                    }
                }
            }
        }
        Closure { n, dist, next }
    }

    /// Original arc indices along a shortest u -> v path.
    fn expand(&self, inst: &DstInstance, mut u: usize, v: usize, out: &mut BTreeSet<usize>) {
        while u != v {
            let ai = self.next[u][v].expect("path exists");
            out.insert(ai);
            u = inst.arcs[ai].to;
        }
    }
}

/// A partial tree in closure arcs: total closure cost plus covered terminals.
#[derive(Clone)]
struct Partial {
    cost: u64,
    /// (from, to) closure arcs used.
    closure_arcs: Vec<(usize, usize)>,
    covered: BTreeSet<usize>,
}

impl Partial {
    fn empty() -> Partial {
        Partial {
            cost: 0,
            closure_arcs: Vec::new(),
            covered: BTreeSet::new(),
        }
    }

    fn merge(&mut self, other: &Partial) {
        self.cost += other.cost;
        self.closure_arcs.extend(other.closure_arcs.iter().copied());
        self.covered.extend(other.covered.iter().copied());
    }
}

/// Best depth-d tree rooted at `v` covering up to `k` terminals of `pool`.
fn cover(cl: &Closure, depth: usize, v: usize, k: usize, pool: &BTreeSet<usize>) -> Partial {
    let mut tree = Partial::empty();
    if k == 0 || pool.is_empty() {
        return tree;
    }
    if depth <= 1 {
        // Directly attach the k cheapest reachable terminals.
        let mut options: Vec<(u64, usize)> = pool
            .iter()
            .filter(|&&t| cl.dist[v][t] != u64::MAX)
            .map(|&t| (cl.dist[v][t], t))
            .collect();
        options.sort_unstable();
        for &(d, t) in options.iter().take(k) {
            tree.cost += d;
            if t != v {
                tree.closure_arcs.push((v, t));
            }
            tree.covered.insert(t);
        }
        return tree;
    }
    let mut remaining: BTreeSet<usize> = pool.clone();
    let mut left = k;
    while left > 0 && !remaining.is_empty() {
        // Densest (u, k') sub-tree: cost of reaching u plus its best cover,
        // per newly covered terminal.
        let mut best: Option<(Partial, usize)> = None; // (sub-tree incl. v->u arc, u)
        let mut best_density = f64::INFINITY;
        for u in 0..cl.n {
            if cl.dist[v][u] == u64::MAX {
                continue;
            }
            for kk in 1..=left {
                let mut sub = cover(cl, depth - 1, u, kk, &remaining);
                if sub.covered.is_empty() {
                    continue;
                }
                sub.cost += cl.dist[v][u];
                if u != v {
                    sub.closure_arcs.push((v, u));
                }
                let density = sub.cost as f64 / sub.covered.len() as f64;
                if density < best_density {
                    best_density = density;
                    best = Some((sub, u));
                }
            }
        }
        let Some((sub, _)) = best else { break };
        left = left.saturating_sub(sub.covered.len());
        for t in &sub.covered {
            remaining.remove(t);
        }
        tree.merge(&sub);
    }
    tree
}

/// Density-greedy Directed Steiner Tree with recursion depth `depth` >= 1.
pub fn dst_greedy(inst: &DstInstance, depth: usize) -> Result<SteinerSolution> {
    if depth == 0 {
        return Err(Error::InvalidInput("greedy depth must be >= 1".into()));
    }
    let cl = Closure::build(inst);
    if let Some(&t) = inst
        .terminals
        .iter()
        .find(|&&t| cl.dist[inst.root][t] == u64::MAX)
    {
        return Err(Error::Infeasible(format!(
            "terminal {t} is unreachable from the root"
        )));
    }
    let pool: BTreeSet<usize> = inst.terminals.clone();
    let tree = cover(&cl, depth, inst.root, pool.len(), &pool);
    let mut arcs = BTreeSet::new();
    for &(u, v) in &tree.closure_arcs {
        cl.expand(inst, u, v, &mut arcs);
    }
    let sol = SteinerSolution::from_indices(&inst.arcs, arcs)?;
    if !dst_feasible(inst, &sol) {
        return Err(Error::Internal(
            "greedy produced an infeasible Steiner solution".into(),
        ));
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steiner::{dst_exact, Arc};

    fn arc(from: usize, to: usize, weight: u64) -> Arc {
        Arc { from, to, weight }
    }

    #[test]
    fn star_is_solved_exactly() {
        let inst = DstInstance::new(
            4,
            vec![arc(0, 1, 2), arc(0, 2, 3), arc(0, 3, 4)],
            0,
            BTreeSet::from([1, 2, 3]),
        )
        .unwrap();
        let greedy = dst_greedy(&inst, 2).unwrap();
        let exact = dst_exact(&inst).unwrap();
        assert_eq!(greedy.cost(), exact.cost());
        assert_eq!(greedy.cost(), 9);
    }

    #[test]
    fn greedy_never_beats_exact() {
        let inst = DstInstance::new(
            5,
            vec![
                arc(0, 1, 4),
                arc(1, 2, 1),
                arc(1, 3, 1),
                arc(0, 2, 3),
                arc(0, 3, 3),
                arc(2, 4, 2),
            ],
            0,
            BTreeSet::from([2, 3, 4]),
        )
        .unwrap();
        let exact = dst_exact(&inst).unwrap();
        for depth in 1..=3 {
            let greedy = dst_greedy(&inst, depth).unwrap();
            assert!(greedy.cost() >= exact.cost());
            assert!(dst_feasible(&inst, &greedy));
        }
    }

    #[test]
    fn unreachable_terminal_is_infeasible() {
        let inst = DstInstance::new(3, vec![arc(0, 1, 1)], 0, BTreeSet::from([2])).unwrap();
        assert!(matches!(dst_greedy(&inst, 2), Err(Error::Infeasible(_))));
    }

    #[test]
    fn zero_depth_rejected() {
        let inst = DstInstance::new(2, vec![arc(0, 1, 1)], 0, BTreeSet::from([1])).unwrap();
        assert!(dst_greedy(&inst, 0).is_err());
    }
}
