//! Exact single-source temporal connectivity by dynamic programming over a
//! nice tree decomposition.
//!
//! A state assigns each bag vertex a flag and an arrival reference. Flag 1
//! means the vertex is already connected to the source (here or above in the
//! decomposition); flag 0 means its connection must still be bought inside
//! the current subtree, arriving exactly at the referenced time. Arrival
//! references are either a concrete label or a pointer to the bag vertex
//! arriving immediately before (an ordering within a group of equal labels,
//! which keeps parent links between same-label vertices acyclic). The source
//! vertex carries a dedicated reference that sorts below every label.
//!
//! Edges are bought at introduce nodes only: the introduced vertex either
//! buys its own parent edge from a bag vertex ordered before it, or serves
//! as the parent of a chosen subset of still-unconnected bag vertices
//! ordered after it (whose flags then switch to 1 in the child state).
//! Forget nodes commit the forgotten vertex's arrival, enumerating labels
//! and insertion points into the orderings; join nodes split the flag-0
//! obligations between the two children.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::{PathMode, Solution, TemporalGraph};
use crate::solve::decomposition::{BagKind, TreeDecomposition};

/// Hard cap on the decomposition width the solver accepts.
pub const MAX_WIDTH: usize = 4;

/// Arrival reference of one bag vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum TimeRef {
    /// The source: present from before every label.
    Source,
    /// Arrives exactly at this (scaled) label, anchoring an ordering chain.
    Label(u64),
    /// Arrives at the same label as the referenced vertex, immediately after.
    After(usize),
}

/// Resolved arrival time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum TimeVal {
    Sourced,
    At(u64),
}

/// One bag vertex entry: (vertex, connected flag, arrival reference).
type Entry = (usize, bool, TimeRef);
/// Canonical state: entries sorted by vertex id.
type State = Vec<Entry>;
/// Bought edge indices plus the child states of an optimal transition.
type Choice = (Vec<usize>, Vec<(usize, State)>);

fn entry_index(state: &State, v: usize) -> Option<usize> {
    state.binary_search_by_key(&v, |e| e.0).ok()
}

fn resolve(state: &State, v: usize) -> TimeVal {
    let mut cur = v;
    for _ in 0..=state.len() {
        let i = entry_index(state, cur).expect("chain member in state");
        match state[i].2 {
            TimeRef::Source => return TimeVal::Sourced,
            TimeRef::Label(t) => return TimeVal::At(t),
            TimeRef::After(x) => cur = x,
        }
    }
    panic!("ordering chain contains a cycle");
}

/// Strict precedence of `x` before `y` for parent links: earlier time, or —
/// in non-strict mode — the same time with `x` on `y`'s predecessor chain.
fn precedes(state: &State, x: usize, y: usize, mode: PathMode) -> bool {
    let tx = resolve(state, x);
    let ty = resolve(state, y);
    if tx < ty {
        return true;
    }
    if tx > ty || mode == PathMode::Strict {
        return false;
    }
    // Equal times: walk y's chain upward looking for x.
    let mut cur = y;
    loop {
        let i = entry_index(state, cur).expect("chain member in state");
        match state[i].2 {
            TimeRef::After(p) => {
                if p == x {
                    return true;
                }
                cur = p;
            }
            _ => return false,
        }
    }
}

/// Removes `v` from the state, splicing it out of its ordering chain.
fn splice_out(state: &State, v: usize) -> State {
    let i = entry_index(state, v).expect("vertex present");
    let ref_v = state[i].2;
    let mut out = Vec::with_capacity(state.len() - 1);
    for &(u, a, r) in state {
        if u == v {
            continue;
        }
        let r = if r == TimeRef::After(v) { ref_v } else { r };
        out.push((u, a, r));
    }
    out
}

struct TwSolver<'a> {
    td: &'a TreeDecomposition,
    r: usize,
    mode: PathMode,
    /// (min(u,v), max(u,v)) -> label -> (weight, edge index).
    edge_lookup: BTreeMap<(usize, usize), BTreeMap<u64, (u64, usize)>>,
    /// Distinct labels incident to each vertex (candidate arrival times).
    incident_labels: Vec<Vec<u64>>,
    memo: HashMap<(usize, State), Option<u64>>,
    /// Bought edges and child states of the optimal choice, for rebuilding.
    choice: HashMap<(usize, State), Choice>,
}

impl TwSolver<'_> {
    /// Weight and index of the temporal edge {a, b} at exactly `t`, if any.
    fn temporal_edge(&self, a: usize, b: usize, t: TimeVal) -> Option<(u64, usize)> {
        let TimeVal::At(t) = t else { return None };
        let key = (a.min(b), a.max(b));
        self.edge_lookup.get(&key)?.get(&t).copied()
    }

    fn solve(&mut self, node: usize, state: &State) -> Option<u64> {
        let key = (node, state.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        // Guard against accidental recursion on the same key.
        self.memo.insert(key.clone(), None);
        let (value, choice) = match self.td.kinds[node] {
            BagKind::Leaf => (Some(0), (Vec::new(), Vec::new())),
            BagKind::Introduce(v) => self.introduce(node, state, v),
            BagKind::Forget(v) => self.forget(node, state, v),
            BagKind::Join => self.join(node, state),
        };
        self.memo.insert(key.clone(), value);
        if value.is_some() {
            self.choice.insert(key, choice);
        }
        value
    }

    fn introduce(&mut self, node: usize, state: &State, v: usize) -> (Option<u64>, Choice) {
        let child = self.td.children[node][0];
        let i = entry_index(state, v).expect("introduced vertex in state");
        let (_, connected, _) = state[i];
        let t_v = resolve(state, v);

        // Parent edge for the introduced vertex itself.
        let parent_edge: Option<(u64, usize)> = if connected {
            Some((0, usize::MAX)) // no edge to buy
        } else {
            if v == self.r {
                return (None, (Vec::new(), Vec::new()));
            }
            let mut best: Option<(u64, usize)> = None;
            for &(x, _, _) in state.iter() {
                if x == v || !precedes(state, x, v, self.mode) {
                    continue;
                }
                if let Some((w, idx)) = self.temporal_edge(x, v, t_v) {
                    if best.is_none_or(|(bw, bi)| (w, idx) < (bw, bi)) {
                        best = Some((w, idx));
                    }
                }
            }
            best
        };
        let Some((parent_w, parent_idx)) = parent_edge else {
            return (None, (Vec::new(), Vec::new()));
        };

        // Unconnected bag vertices the introduced vertex could parent.
        let mut eligible: Vec<(usize, u64, usize)> = Vec::new(); // (vertex, w, idx)
        for &(y, a_y, _) in state.iter() {
            if y == v || a_y || !precedes(state, v, y, self.mode) {
                continue;
            }
            if let Some((w, idx)) = self.temporal_edge(v, y, resolve(state, y)) {
                eligible.push((y, w, idx));
            }
        }

        let base = splice_out(state, v);
        let mut best: Option<u64> = None;
        let mut best_choice = (Vec::new(), Vec::new());
        for subset in 0u32..(1u32 << eligible.len()) {
            let mut bought = Vec::new();
            let mut extra = 0u64;
            let mut child_state = base.clone();
            for (bit, &(y, w, idx)) in eligible.iter().enumerate() {
                if subset & (1 << bit) != 0 {
                    extra += w;
                    bought.push(idx);
                    let yi = entry_index(&child_state, y).expect("eligible vertex");
                    child_state[yi].1 = true;
                }
            }
            let Some(sub) = self.solve(child, &child_state) else {
                continue;
            };
            let total = sub + extra + parent_w;
            if best.is_none_or(|b| total < b) {
                if parent_idx != usize::MAX {
                    bought.push(parent_idx);
                }
                best = Some(total);
                best_choice = (bought, vec![(child, child_state)]);
            }
        }
        (best, best_choice)
    }

    fn forget(&mut self, node: usize, state: &State, v: usize) -> (Option<u64>, Choice) {
        let child = self.td.children[node][0];
        let mut best: Option<u64> = None;
        let mut best_choice = (Vec::new(), Vec::new());
        let try_state =
            |solver: &mut Self, s: State, best: &mut Option<u64>, best_choice: &mut Choice| {
                if let Some(val) = solver.solve(child, &s) {
                    if best.is_none_or(|b| val < b) {
                        *best = Some(val);
                        *best_choice = (Vec::new(), vec![(child, s)]);
                    }
                }
            };

        if v == self.r {
            // The source never needs a committed arrival.
            let mut s = state.clone();
            s.push((v, true, TimeRef::Source));
            s.sort_unstable_by_key(|e| e.0);
            try_state(self, s, &mut best, &mut best_choice);
            return (best, best_choice);
        }

        let labels = self.incident_labels[v].clone();
        // Fresh anchor at each candidate arrival label.
        for &t in &labels {
            let mut s = state.clone();
            s.push((v, false, TimeRef::Label(t)));
            s.sort_unstable_by_key(|e| e.0);
            try_state(self, s, &mut best, &mut best_choice);
        }
        if self.mode == PathMode::NonStrict {
            // Displace an existing anchor: v takes its label, the anchor
            // chains after v.
            for j in 0..state.len() {
                let (_, _, r_z) = state[j];
                let TimeRef::Label(t) = r_z else { continue };
                if !labels.contains(&t) {
                    continue;
                }
                let mut s = state.clone();
                s[j].2 = TimeRef::After(v);
                s.push((v, false, TimeRef::Label(t)));
                s.sort_unstable_by_key(|e| e.0);
                try_state(self, s, &mut best, &mut best_choice);
            }
            // Insert immediately after an existing vertex with a real time.
            for j in 0..state.len() {
                let (x, _, _) = state[j];
                let TimeVal::At(t) = resolve(state, x) else {
                    continue;
                };
                if !labels.contains(&t) {
                    continue;
                }
                let mut s = state.clone();
                for e in s.iter_mut() {
                    if e.2 == TimeRef::After(x) {
                        e.2 = TimeRef::After(v);
                    }
                }
                s.push((v, false, TimeRef::After(x)));
                s.sort_unstable_by_key(|e| e.0);
                try_state(self, s, &mut best, &mut best_choice);
            }
        }
        (best, best_choice)
    }

    fn join(&mut self, node: usize, state: &State) -> (Option<u64>, Choice) {
        let (c1, c2) = (self.td.children[node][0], self.td.children[node][1]);
        let open: Vec<usize> = state
            .iter()
            .filter(|&&(_, a, _)| !a)
            .map(|&(v, _, _)| v)
            .collect();
        let mut best: Option<u64> = None;
        let mut best_choice = (Vec::new(), Vec::new());
        for split in 0u32..(1u32 << open.len()) {
            // Obligations in bit-set positions go to c1, the rest to c2.
            let mut s1 = state.clone();
            let mut s2 = state.clone();
            for (bit, &v) in open.iter().enumerate() {
                let i = entry_index(state, v).expect("open vertex");
                if split & (1 << bit) != 0 {
                    s2[i].1 = true;
                } else {
                    s1[i].1 = true;
                }
            }
            let Some(v1) = self.solve(c1, &s1) else {
                continue;
            };
            let Some(v2) = self.solve(c2, &s2) else {
                continue;
            };
            let total = v1 + v2;
            if best.is_none_or(|b| total < b) {
                best = Some(total);
                best_choice = (Vec::new(), vec![(c1, s1), (c2, s2)]);
            }
        }
        (best, best_choice)
    }

    fn reconstruct(&self, node: usize, state: &State, out: &mut BTreeSet<usize>) {
        let key = (node, state.clone());
        let (bought, children) = self.choice.get(&key).expect("choice for optimal state");
        out.extend(bought.iter().copied());
        for (c, s) in children {
            self.reconstruct(*c, s, out);
        }
    }
}

/// Appends forget nodes above the root until the root bag is empty, so the
/// single answer state is the empty assignment.
fn with_empty_root(td: &TreeDecomposition) -> TreeDecomposition {
    let mut td = td.clone();
    while !td.bags[td.root].is_empty() {
        let bag = &td.bags[td.root];
        let v = *bag.last().expect("nonempty bag");
        let new_bag: Vec<usize> = bag.iter().copied().filter(|&u| u != v).collect();
        let idx = td.bags.len();
        td.bags.push(new_bag);
        td.children.push(vec![td.root]);
        td.kinds.push(BagKind::Forget(v));
        td.parent.push(None);
        td.parent[td.root] = Some(idx);
        td.root = idx;
    }
    td
}

/// Optimal single-source temporal connectivity given a nice tree
/// decomposition of the underlying graph.
pub fn solve_rtc_treewidth(
    g: &TemporalGraph,
    r: usize,
    td: &TreeDecomposition,
    mode: PathMode,
) -> Result<Solution> {
    if r >= g.n() {
        return Err(Error::InvalidInput(format!(
            "root {r} out of range (n = {})",
            g.n()
        )));
    }
    if !td.nice {
        return Err(Error::InvalidInput(
            "treewidth DP requires a nice decomposition".into(),
        ));
    }
    td.validate(g)?;
    if td.width > MAX_WIDTH {
        return Err(Error::CapExceeded {
            what: "tree decomposition width",
            cap: MAX_WIDTH,
            actual: td.width,
        });
    }
    let td = with_empty_root(td);

    let mut edge_lookup: BTreeMap<(usize, usize), BTreeMap<u64, (u64, usize)>> = BTreeMap::new();
    for (i, e) in g.edges().iter().enumerate() {
        let slot = edge_lookup
            .entry((e.u, e.v))
            .or_default()
            .entry(e.label.value())
            .or_insert((e.weight, i));
        // Keep the cheaper edge per (pair, label); duplicates are rejected by
        // the graph invariant anyway.
        if e.weight < slot.0 {
            *slot = (e.weight, i);
        }
    }
    let incident_labels: Vec<Vec<u64>> = (0..g.n())
        .map(|v| {
            let set: BTreeSet<u64> = g
                .incident(v)
                .iter()
                .map(|&i| g.edge(i).label.value())
                .collect();
            set.into_iter().collect()
        })
        .collect();

    let mut solver = TwSolver {
        td: &td,
        r,
        mode,
        edge_lookup,
        incident_labels,
        memo: HashMap::new(),
        choice: HashMap::new(),
    };
    let empty: State = Vec::new();
    let value = solver
        .solve(td.root, &empty)
        .ok_or_else(|| Error::Infeasible(format!("no temporally {r}-connected subgraph exists")))?;
    let mut indices = BTreeSet::new();
    solver.reconstruct(td.root, &empty, &mut indices);
    let sol = Solution::from_indices(g, indices)?;
    debug_assert_eq!(sol.cost(), value);
    Ok(sol)
}
