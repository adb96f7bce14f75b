//! Temporal reachability: earliest-arrival sweeps, connectivity predicates,
//! and pruning of feasible single-source solutions to simple temporal trees.
//!
//! The sweep processes temporal edges grouped by label in ascending order.
//! Within one label bucket, non-strict paths may chain through several
//! equal-label edges (a small BFS per bucket); strict paths may not.

use std::collections::BTreeSet;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{PathMode, Solution, TemporalGraph, TemporalPath, TimeLabel};

/// Earliest arrival per vertex plus predecessor links for path extraction.
#[derive(Debug, Clone)]
pub struct ArrivalTable {
    source: usize,
    start: TimeLabel,
    /// `arrival[v]` = minimum last-edge label over temporal paths source -> v
    /// whose first edge label is >= start; `start` itself for the source.
    pub arrival: Vec<Option<TimeLabel>>,
    /// `pred[v]` = (previous vertex, edge index) on a witness path.
    pred: Vec<Option<(usize, usize)>>,
}

impl ArrivalTable {
    pub fn reached(&self, v: usize) -> bool {
        self.arrival[v].is_some()
    }

    pub fn reached_count(&self) -> usize {
        self.arrival.iter().filter(|a| a.is_some()).count()
    }

    /// Witness temporal path from the source to `v`, if reached.
    pub fn witness(&self, v: usize) -> Option<TemporalPath> {
        self.arrival[v]?;
        let mut vertices = vec![v];
        let mut edge_indices = Vec::new();
        let mut cur = v;
        while cur != self.source {
            let (prev, ei) = self.pred[cur].expect("reached vertex has a predecessor");
            edge_indices.push(ei);
            vertices.push(prev);
            cur = prev;
        }
        vertices.reverse();
        edge_indices.reverse();
        Some(TemporalPath {
            vertices,
            edge_indices,
        })
    }

    pub fn start(&self) -> TimeLabel {
        self.start
    }
}

/// Computes earliest arrivals from `source`, considering only temporal paths
/// whose first edge label is at least `start`. Waiting at the source is
/// allowed in both modes; strictness constrains consecutive edges only.
pub fn earliest_arrival(
    g: &TemporalGraph,
    source: usize,
    start: TimeLabel,
    mode: PathMode,
) -> Result<ArrivalTable> {
    if source >= g.n() {
        return Err(Error::InvalidInput(format!(
            "source {source} out of range (n = {})",
            g.n()
        )));
    }
    Ok(sweep(g, source, start, mode, None))
}

/// Earliest arrivals restricted to the edges selected by `keep`.
pub(crate) fn sweep(
    g: &TemporalGraph,
    source: usize,
    start: TimeLabel,
    mode: PathMode,
    keep: Option<&[bool]>,
) -> ArrivalTable {
    let mut arrival: Vec<Option<TimeLabel>> = vec![None; g.n()];
    let mut pred: Vec<Option<(usize, usize)>> = vec![None; g.n()];
    arrival[source] = Some(start);

    let order = g.edges_by_label();
    let kept = |i: usize| keep.is_none_or(|m| m[i]);
    // Departure test from the state established before the current bucket.
    let can_depart = |arr: &[Option<TimeLabel>], u: usize, t: TimeLabel| -> bool {
        if u == source {
            return start <= t;
        }
        match arr[u] {
            Some(a) => mode.chains(a, t),
            None => false,
        }
    };

    let mut i = 0;
    while i < order.len() {
        let t = g.edge(order[i]).label;
        let mut j = i;
        while j < order.len() && g.edge(order[j]).label == t {
            j += 1;
        }
        let bucket = &order[i..j];
        if t < start {
            i = j;
            continue;
        }
        match mode {
            PathMode::Strict => {
                // No chaining within a bucket: all departures use pre-bucket state.
                let mut updates = Vec::new();
                for &ei in bucket {
                    if !kept(ei) {
                        continue;
                    }
                    let e = g.edge(ei);
                    for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                        if can_depart(&arrival, a, t) && arrival[b].is_none_or(|x| t < x) {
                            updates.push((b, a, ei));
                        }
                    }
                }
                for (b, a, ei) in updates {
                    if arrival[b].is_none_or(|x| t < x) {
                        arrival[b] = Some(t);
                        pred[b] = Some((a, ei));
                    }
                }
            }
            PathMode::NonStrict => {
                // BFS over the bucket: a vertex reached at label t may keep going.
                let mut queue: VecDeque<usize> = VecDeque::new();
                let mut touched: BTreeSet<usize> = BTreeSet::new();
                for &ei in bucket {
                    if !kept(ei) {
                        continue;
                    }
                    let e = g.edge(ei);
                    touched.insert(e.u);
                    touched.insert(e.v);
                }
                for &v in &touched {
                    if can_depart(&arrival, v, t) {
                        queue.push_back(v);
                    }
                }
                let mut in_queue: BTreeSet<usize> = queue.iter().copied().collect();
                while let Some(u) = queue.pop_front() {
                    in_queue.remove(&u);
                    for &ei in g.incident(u) {
                        let e = g.edge(ei);
                        if e.label != t || !kept(ei) {
                            continue;
                        }
                        let v = e.other(u);
                        if arrival[v].is_none_or(|x| t < x) {
                            arrival[v] = Some(t);
                            pred[v] = Some((u, ei));
                            if in_queue.insert(v) {
                                queue.push_back(v);
                            }
                        }
                    }
                }
            }
        }
        i = j;
    }

    ArrivalTable {
        source,
        start,
        arrival,
        pred,
    }
}

/// Earliest arrivals when only the solution's edges may be traversed.
pub fn earliest_arrival_within(
    g: &TemporalGraph,
    sol: &Solution,
    source: usize,
    start: TimeLabel,
    mode: PathMode,
) -> Result<ArrivalTable> {
    if source >= g.n() {
        return Err(Error::InvalidInput(format!(
            "source {source} out of range (n = {})",
            g.n()
        )));
    }
    if let Some(&bad) = sol.edge_indices().iter().find(|&&i| i >= g.m()) {
        return Err(Error::InvalidInput(format!(
            "solution references edge index {bad}, graph has {} edges",
            g.m()
        )));
    }
    let mask = sol.mask(g);
    Ok(sweep(g, source, start, mode, Some(&mask)))
}

/// True iff every vertex is reachable from `r` by a temporal path.
pub fn is_r_connected(g: &TemporalGraph, r: usize, mode: PathMode) -> Result<bool> {
    Ok(earliest_arrival(g, r, TimeLabel(0), mode)?.reached_count() == g.n())
}

pub(crate) fn is_r_connected_masked(
    g: &TemporalGraph,
    r: usize,
    mode: PathMode,
    keep: Option<&[bool]>,
) -> bool {
    sweep(g, r, TimeLabel(0), mode, keep).reached_count() == g.n()
}

/// True iff every ordered vertex pair is joined by a temporal path;
/// one earliest-arrival sweep per source.
pub fn is_connected(g: &TemporalGraph, mode: PathMode) -> bool {
    is_connected_masked(g, mode, None)
}

pub(crate) fn is_connected_masked(
    g: &TemporalGraph,
    mode: PathMode,
    keep: Option<&[bool]>,
) -> bool {
    (0..g.n()).all(|r| is_r_connected_masked(g, r, mode, keep))
}

/// Restricts `g` to the solution's edges and checks connectivity:
/// `r`-connectivity when `root` is given, all-pairs connectivity otherwise.
pub fn feasible(
    g: &TemporalGraph,
    sol: &Solution,
    mode: PathMode,
    root: Option<usize>,
) -> Result<bool> {
    if let Some(&bad) = sol.edge_indices().iter().find(|&&i| i >= g.m()) {
        return Err(Error::InvalidInput(format!(
            "solution references edge index {bad}, graph has {} edges",
            g.m()
        )));
    }
    let mask = sol.mask(g);
    match root {
        Some(r) => {
            if r >= g.n() {
                return Err(Error::InvalidInput(format!(
                    "root {r} out of range (n = {})",
                    g.n()
                )));
            }
            Ok(is_r_connected_masked(g, r, mode, Some(&mask)))
        }
        None => Ok(is_connected_masked(g, mode, Some(&mask))),
    }
}

/// Prunes a feasible single-source solution to a simple temporal tree:
/// the underlying kept edges form a spanning tree, each kept edge carries one
/// label, feasibility is preserved and the cost does not increase.
///
/// Per-vertex selection keeps the earliest arrival; ties are broken by
/// minimum path cost, then by lexicographically smallest edge-index sequence,
/// which makes the output deterministic.
pub fn prune_to_tree(
    g: &TemporalGraph,
    sol: &Solution,
    r: usize,
    mode: PathMode,
) -> Result<Solution> {
    if !feasible(g, sol, mode, Some(r))? {
        return Err(Error::Infeasible(format!(
            "solution is not {r}-connected; cannot prune"
        )));
    }
    let mask = sol.mask(g);

    // Per-vertex key: (arrival, path cost, path edge-index sequence).
    // Parent links are selected so that every prefix of a chosen path is the
    // chosen path of its endpoint, which makes the union of paths a tree.
    #[derive(Clone, PartialEq, Eq)]
    struct Key {
        arrival: TimeLabel,
        cost: u64,
        seq: Vec<usize>,
    }
    let mut key: Vec<Option<Key>> = vec![None; g.n()];
    let mut parent: Vec<Option<usize>> = vec![None; g.n()];
    key[r] = Some(Key {
        arrival: TimeLabel(0),
        cost: 0,
        seq: Vec::new(),
    });

    let order = g.edges_by_label();
    let mut i = 0;
    while i < order.len() {
        let t = g.edge(order[i]).label;
        let mut j = i;
        while j < order.len() && g.edge(order[j]).label == t {
            j += 1;
        }
        let bucket: Vec<usize> = order[i..j].iter().copied().filter(|&e| mask[e]).collect();
        // Relax the bucket to a fixpoint. Keys only decrease, and a candidate
        // through an edge is strictly larger than its tail's key, so the
        // parent links cannot form cycles.
        loop {
            let mut changed = false;
            for &ei in &bucket {
                let e = g.edge(ei);
                for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                    let Some(ka) = key[a].clone() else { continue };
                    let depart_ok = if a == r && ka.seq.is_empty() {
                        true
                    } else {
                        mode.chains(ka.arrival, t)
                    };
                    if !depart_ok {
                        continue;
                    }
                    let mut seq = ka.seq.clone();
                    seq.push(ei);
                    let cand = Key {
                        arrival: t,
                        cost: ka.cost + e.weight,
                        seq,
                    };
                    let better = match &key[b] {
                        None => true,
                        Some(kb) => {
                            (cand.arrival, cand.cost, &cand.seq) < (kb.arrival, kb.cost, &kb.seq)
                        }
                    };
                    if better && b != r {
                        key[b] = Some(cand);
                        parent[b] = Some(ei);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        i = j;
    }

    let kept: BTreeSet<usize> = parent.iter().flatten().copied().collect();
    debug_assert_eq!(kept.len(), g.n() - 1);
    Solution::from_indices(g, kept)
}
