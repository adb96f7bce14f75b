//! Sector-based 2-approximation for all-pairs temporal connectivity on
//! cycles.
//!
//! A sector is a contiguous vertex run (v_i..v_j) served by one increasing
//! temporal path v_i..v_k and one decreasing temporal path v_j..v_{k+1},
//! with the meet k outside {i..j-1}; together the two paths visit the whole
//! cycle, so every sector vertex reaches every other vertex. Some optimal
//! solution partitions the cycle into sectors in which no temporal edge is
//! used by two increasing (or two decreasing) paths, so charging each sector
//! its own paths at most doubles the optimum. The algorithm precomputes
//! minimum path costs in both directions, then finds the cheapest partition
//! into sectors for every rotation of the starting vertex.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{PathMode, Solution, TemporalGraph};
use crate::reach::{feasible, is_connected};

/// Chosen rotation and sectors alongside the output solution.
#[derive(Debug, Clone)]
pub struct CycleOutcome {
    pub solution: Solution,
    /// Vertex at which the first sector starts.
    pub rotation: usize,
    /// Sectors as (start vertex i, end vertex j, meet vertex k).
    pub sectors: Vec<(usize, usize, usize)>,
    /// Partition DP value; the realized union cost never exceeds it.
    pub dp_value: u64,
}

/// Per-position Pareto entry of the directional path DP.
#[derive(Debug, Clone, Copy)]
struct Entry {
    /// Label of the last edge used; `None` at the start position.
    label: Option<u64>,
    cost: u64,
    /// Predecessor entry at the previous position.
    prev: usize,
    /// Edge used to get here.
    edge: usize,
}

struct PathTable {
    /// `entries[start][steps]` = Pareto front (label ascending, cost strictly
    /// descending) of temporal paths covering `steps` consecutive edges from
    /// `start` in the table's direction.
    entries: Vec<Vec<Vec<Entry>>>,
}

impl PathTable {
    fn cost(&self, start: usize, steps: usize) -> Option<u64> {
        self.entries[start][steps].iter().map(|e| e.cost).min()
    }

    /// Edge indices of a minimum-cost path, if one exists.
    fn path_edges(&self, start: usize, steps: usize) -> Option<Vec<usize>> {
        let front = &self.entries[start][steps];
        let best = front
            .iter()
            .enumerate()
            .min_by_key(|(_, e)| e.cost)
            .map(|(i, _)| i)?;
        let mut edges = Vec::with_capacity(steps);
        let mut pos = steps;
        let mut idx = best;
        while pos > 0 {
            let e = self.entries[start][pos][idx];
            edges.push(e.edge);
            idx = e.prev;
            pos -= 1;
        }
        edges.reverse();
        Some(edges)
    }
}

/// Verifies the cyclic indexing and returns, per position p, the temporal
/// edges of the underlying edge {p, p+1 mod n} as (label, weight, index),
/// labels ascending.
fn cycle_edges(g: &TemporalGraph) -> Result<Vec<Vec<(u64, u64, usize)>>> {
    let n = g.n();
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "a cycle needs at least 3 vertices, got {n}"
        )));
    }
    let mut slots: Vec<Vec<(u64, u64, usize)>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        let (u, v) = e.underlying();
        let pos = if (u + 1) % n == v {
            u
        } else if (v + 1) % n == u {
            v
        } else {
            return Err(Error::InvalidInput(format!(
                "edge ({u}, {v}) is not a cycle edge; vertices must be indexed in cyclic order"
            )));
        };
        slots[pos].push((e.label.value(), e.weight, i));
    }
    for (p, s) in slots.iter_mut().enumerate() {
        if s.is_empty() {
            return Err(Error::InvalidInput(format!(
                "underlying cycle edge ({p}, {}) is missing",
                (p + 1) % n
            )));
        }
        s.sort_unstable();
    }
    Ok(slots)
}

/// Directional DP from every start. `slot_of(start, step)` names the
/// underlying-edge slot crossed at that step.
fn build_table<F>(
    g: &TemporalGraph,
    mode: PathMode,
    slots: &[Vec<(u64, u64, usize)>],
    slot_of: F,
) -> PathTable
where
    F: Fn(usize, usize) -> usize,
{
    let n = g.n();
    let mut entries = vec![Vec::new(); n];
    for (start, per_start) in entries.iter_mut().enumerate() {
        per_start.push(vec![Entry {
            label: None,
            cost: 0,
            prev: 0,
            edge: usize::MAX,
        }]);
        for step in 0..n - 1 {
            let prev_front: Vec<Entry> = per_start[step].clone();
            let mut cands: Vec<Entry> = Vec::new();
            for &(t, w, idx) in &slots[slot_of(start, step)] {
                // The front is label-ascending with strictly descending cost,
                // so the last admissible predecessor is the cheapest one.
                let admissible =
                    prev_front
                        .iter()
                        .enumerate()
                        .rev()
                        .find(|(_, pe)| match pe.label {
                            None => true,
                            Some(l) => {
                                mode.chains(crate::graph::TimeLabel(l), crate::graph::TimeLabel(t))
                            }
                        });
                if let Some((pi, pe)) = admissible {
                    cands.push(Entry {
                        label: Some(t),
                        cost: pe.cost + w,
                        prev: pi,
                        edge: idx,
                    });
                }
            }
            per_start.push(pareto(cands));
        }
    }
    PathTable { entries }
}

/// Keeps the label-ascending, cost-strictly-descending front.
fn pareto(mut cands: Vec<Entry>) -> Vec<Entry> {
    cands.sort_by_key(|e| (e.label, e.cost));
    let mut front: Vec<Entry> = Vec::new();
    for e in cands {
        if front.last().is_none_or(|f| e.cost < f.cost) {
            front.push(e);
        }
    }
    front
}

/// Minimum cost of a temporal path visiting v_i, v_{i+1}, ..., v_k in
/// increasing cyclic order, for every ordered pair (i, k); `None` when no
/// label assignment is temporal. Requires the underlying graph to be the
/// cycle C_n with vertices indexed in cyclic order.
pub fn inc_path_costs(g: &TemporalGraph, mode: PathMode) -> Result<Vec<Vec<Option<u64>>>> {
    let slots = cycle_edges(g)?;
    let table = build_table(g, mode, &slots, |start, step| (start + step) % g.n());
    let n = g.n();
    Ok((0..n)
        .map(|i| (0..n).map(|k| table.cost(i, (k + n - i) % n)).collect())
        .collect())
}

/// 2-approximate all-pairs temporal connectivity on a temporal cycle, with
/// the chosen rotation and sector structure.
pub fn cycle_decomposition(g: &TemporalGraph, mode: PathMode) -> Result<CycleOutcome> {
    let n = g.n();
    let slots = cycle_edges(g)?;
    if !is_connected(g, mode) {
        return Err(Error::Infeasible(
            "temporal cycle is not temporally connected".into(),
        ));
    }
    let inc = build_table(g, mode, &slots, |start, step| (start + step) % n);
    // Decreasing from `start`: step 0 crosses the edge {start-1, start}.
    let dec = build_table(g, mode, &slots, |start, step| {
        (start + 2 * n - 1 - step) % n
    });

    // sector_cost[i][j]: serve the run (v_i..v_j); meet k outside {i..j-1}.
    let in_run = |x: usize, i: usize, j: usize| (x + n - i) % n < (j + n - i) % n;
    let mut sector_cost = vec![vec![None::<u64>; n]; n];
    let mut sector_meet = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut best: Option<u64> = None;
            let mut best_k = 0;
            for k in 0..n {
                if in_run(k, i, j) {
                    continue;
                }
                let inc_steps = (k + n - i) % n;
                let dec_steps = (j + n - (k + 1) % n) % n;
                let (Some(a), Some(b)) = (inc.cost(i, inc_steps), dec.cost(j, dec_steps)) else {
                    continue;
                };
                if best.is_none_or(|c| a + b < c) {
                    best = Some(a + b);
                    best_k = k;
                }
            }
            sector_cost[i][j] = best;
            sector_meet[i][j] = best_k;
        }
    }

    // Cheapest partition of positions 0..=l (relative to rotation s) into
    // sectors; `part[l]` records the previous boundary, or None for a single
    // sector covering the whole prefix.
    let mut best_rotation: Option<(u64, usize, Vec<Option<usize>>)> = None;
    for s in 0..n {
        let vid = |pos: usize| (s + pos) % n;
        let mut c: Vec<Option<u64>> = vec![None; n];
        let mut part: Vec<Option<usize>> = vec![None; n];
        for l in 0..n {
            let mut best = sector_cost[vid(0)][vid(l)];
            let mut from = None;
            for j in 0..l {
                let (Some(prefix), Some(tail)) = (c[j], sector_cost[vid(j + 1)][vid(l)]) else {
                    continue;
                };
                if best.is_none_or(|b| prefix + tail < b) {
                    best = Some(prefix + tail);
                    from = Some(j);
                }
            }
            c[l] = best;
            part[l] = from;
        }
        if let Some(total) = c[n - 1] {
            if best_rotation.as_ref().is_none_or(|(b, _, _)| total < *b) {
                best_rotation = Some((total, s, part));
            }
        }
    }
    let (dp_value, rotation, part) = best_rotation.ok_or_else(|| {
        Error::Internal("connected temporal cycle admits no sector partition".into())
    })?;

    // Recover sector boundaries, then the union of their paths.
    let vid = |pos: usize| (rotation + pos) % n;
    let mut bounds = Vec::new();
    let mut l = n - 1;
    loop {
        match part[l] {
            Some(j) => {
                bounds.push((j + 1, l));
                l = j;
            }
            None => {
                bounds.push((0, l));
                break;
            }
        }
    }
    bounds.reverse();

    let mut union: BTreeSet<usize> = BTreeSet::new();
    let mut sectors = Vec::new();
    for &(a, b) in &bounds {
        let (i, j) = (vid(a), vid(b));
        let k = sector_meet[i][j];
        sectors.push((i, j, k));
        let inc_steps = (k + n - i) % n;
        let dec_steps = (j + n - (k + 1) % n) % n;
        union.extend(
            inc.path_edges(i, inc_steps)
                .expect("chosen sector has an increasing path"),
        );
        union.extend(
            dec.path_edges(j, dec_steps)
                .expect("chosen sector has a decreasing path"),
        );
    }
    let solution = Solution::from_indices(g, union)?;
    debug_assert!(solution.cost() <= dp_value);
    if !feasible(g, &solution, mode, None)? {
        return Err(Error::Internal(
            "sector union is not temporally connected".into(),
        ));
    }
    Ok(CycleOutcome {
        solution,
        rotation,
        sectors,
        dp_value,
    })
}

/// 2-approximate all-pairs temporal connectivity on a temporal cycle.
pub fn solve_cycle_tc(g: &TemporalGraph, mode: PathMode) -> Result<Solution> {
    Ok(cycle_decomposition(g, mode)?.solution)
}
