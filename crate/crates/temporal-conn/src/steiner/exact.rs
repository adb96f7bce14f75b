//! Exact Directed Steiner Tree by DP over terminal subsets.
//!
//! `best[S][v]` is the minimum cost of an arc set through which `v` reaches
//! every terminal in `S`. Subsets are processed in ascending order; each is
//! first combined from complementary sub-splits at the same vertex, then
//! closed under arc relaxation with a Dijkstra pass. Optimal directed
//! Steiner trees branch into arc-disjoint sub-trees, so the DP value is
//! exact; the reconstruction returns the union of the chosen arcs.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use crate::error::{Error, Result};
use crate::steiner::{dst_feasible, DstInstance, SteinerSolution};

/// Hard cap on |terminals| (the DP is exponential in it).
pub const TERMINAL_CAP: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    /// Combined from splits (S', v) and (S \ S', v).
    Split(u32),
    /// Relaxed through an arc (index) from its head's state.
    Relax(usize),
    Base,
}

/// Optimal Directed Steiner Tree solution.
pub fn dst_exact(inst: &DstInstance) -> Result<SteinerSolution> {
    let k = inst.terminals.len();
    if k > TERMINAL_CAP {
        return Err(Error::CapExceeded {
            what: "DST terminals",
            cap: TERMINAL_CAP,
            actual: k,
        });
    }
    let n = inst.num_vertices;
    let terms: Vec<usize> = inst.terminals.iter().copied().collect();
    let full: u32 = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    if k == 0 {
        return SteinerSolution::from_indices(&inst.arcs, []);
    }

    let mut in_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, a) in inst.arcs.iter().enumerate() {
        in_arcs[a.to].push(i);
    }

    let size = (full as usize) + 1;
    let mut best = vec![vec![u64::MAX; n]; size];
    let mut step = vec![vec![Step::Base; n]; size];
    for (ti, &t) in terms.iter().enumerate() {
        best[1 << ti][t] = 0;
    }

    for mask in 1..=full {
        let m = mask as usize;
        // Combine complementary splits at each vertex.
        let mut sub = (mask - 1) & mask;
        while sub > 0 {
            let other = mask & !sub;
            if sub < other {
                // Each unordered split handled once.
                sub = (sub - 1) & mask;
                continue;
            }
            for v in 0..n {
                let (a, b) = (best[sub as usize][v], best[other as usize][v]);
                if a != u64::MAX && b != u64::MAX && a + b < best[m][v] {
                    best[m][v] = a + b;
                    step[m][v] = Step::Split(sub);
                }
            }
            sub = (sub - 1) & mask;
        }
        // Close under arc relaxation: Dijkstra from the current estimates.
        let mut heap: BinaryHeap<(Reverse<u64>, usize)> = (0..n)
            .filter(|&v| best[m][v] != u64::MAX)
            .map(|v| (Reverse(best[m][v]), v))
            .collect();
        while let Some((Reverse(d), v)) = heap.pop() {
            if d > best[m][v] {
                continue;
            }
            // An arc (u, v) lets u reach S through v.
            for &ai in &in_arcs[v] {
                let arc = inst.arcs[ai];
                let u = arc.from;
                let cand = d + arc.weight;
                if cand < best[m][u] {
                    best[m][u] = cand;
                    step[m][u] = Step::Relax(ai);
                    heap.push((Reverse(cand), u));
                }
            }
        }
    }

    if best[full as usize][inst.root] == u64::MAX {
        return Err(Error::Infeasible(
            "some terminal is unreachable from the root".into(),
        ));
    }

    // Rebuild the arc set by walking the recorded steps.
    let mut arcs = BTreeSet::new();
    let mut stack = vec![(full, inst.root)];
    while let Some((mask, v)) = stack.pop() {
        match step[mask as usize][v] {
            Step::Base => {}
            Step::Split(sub) => {
                stack.push((sub, v));
                stack.push((mask & !sub, v));
            }
            Step::Relax(ai) => {
                arcs.insert(ai);
                stack.push((mask, inst.arcs[ai].to));
            }
        }
    }
    let sol = SteinerSolution::from_indices(&inst.arcs, arcs)?;
    debug_assert!(dst_feasible(inst, &sol));
    debug_assert!(sol.cost() <= best[full as usize][inst.root]);
    Ok(sol)
}
