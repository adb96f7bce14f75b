//! Directed Steiner instances and desk-scale solvers: exact Directed Steiner
//! Tree by terminal-subset DP, a recursive density-greedy approximation, and
//! brute-force Directed Steiner Forest.

pub mod exact;
pub mod forest;
pub mod greedy;

pub use exact::dst_exact;
pub use forest::{dsf_brute, DSF_ARC_CAP};
pub use greedy::dst_greedy;

use std::collections::BTreeSet;
use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A weighted directed arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub weight: u64,
}

/// Directed Steiner Tree instance: connect the root to every terminal.
#[derive(Debug, Clone)]
pub struct DstInstance {
    pub num_vertices: usize,
    pub arcs: Vec<Arc>,
    pub root: usize,
    pub terminals: BTreeSet<usize>,
}

impl DstInstance {
    pub fn new(
        num_vertices: usize,
        arcs: Vec<Arc>,
        root: usize,
        terminals: BTreeSet<usize>,
    ) -> Result<Self> {
        if root >= num_vertices {
            return Err(Error::InvalidInput(format!(
                "root {root} out of range (n = {num_vertices})"
            )));
        }
        if let Some(&t) = terminals.iter().find(|&&t| t >= num_vertices) {
            return Err(Error::InvalidInput(format!(
                "terminal {t} out of range (n = {num_vertices})"
            )));
        }
        let mut seen = BTreeSet::new();
        for a in &arcs {
            if a.from >= num_vertices || a.to >= num_vertices {
                return Err(Error::InvalidInput(format!(
                    "arc ({}, {}) out of range",
                    a.from, a.to
                )));
            }
            if a.from == a.to {
                return Err(Error::InvalidInput(format!("self-loop arc at {}", a.from)));
            }
            if !seen.insert((a.from, a.to)) {
                return Err(Error::InvalidInput(format!(
                    "duplicate arc ({}, {})",
                    a.from, a.to
                )));
            }
        }
        Ok(DstInstance {
            num_vertices,
            arcs,
            root,
            terminals,
        })
    }
}

/// Directed Steiner Forest instance: satisfy every ordered demand pair.
#[derive(Debug, Clone)]
pub struct DsfInstance {
    pub num_vertices: usize,
    pub arcs: Vec<Arc>,
    pub demands: Vec<(usize, usize)>,
}

impl DsfInstance {
    pub fn new(num_vertices: usize, arcs: Vec<Arc>, demands: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for a in &arcs {
            if a.from >= num_vertices || a.to >= num_vertices {
                return Err(Error::InvalidInput(format!(
                    "arc ({}, {}) out of range",
                    a.from, a.to
                )));
            }
            if !seen.insert((a.from, a.to)) {
                return Err(Error::InvalidInput(format!(
                    "duplicate arc ({}, {})",
                    a.from, a.to
                )));
            }
        }
        let mut dseen = BTreeSet::new();
        for &(s, t) in &demands {
            if s >= num_vertices || t >= num_vertices {
                return Err(Error::InvalidInput(format!(
                    "demand ({s}, {t}) out of range"
                )));
            }
            if !dseen.insert((s, t)) {
                return Err(Error::InvalidInput(format!("duplicate demand ({s}, {t})")));
            }
        }
        Ok(DsfInstance {
            num_vertices,
            arcs,
            demands,
        })
    }
}

/// A subset of arcs of a Steiner instance with its total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerSolution {
    arc_indices: BTreeSet<usize>,
    cost: u64,
}

impl SteinerSolution {
    pub fn from_indices<I: IntoIterator<Item = usize>>(arcs: &[Arc], iter: I) -> Result<Self> {
        let arc_indices: BTreeSet<usize> = iter.into_iter().collect();
        for &i in &arc_indices {
            if i >= arcs.len() {
                return Err(Error::InvalidInput(format!(
                    "solution references arc index {i}, instance has {} arcs",
                    arcs.len()
                )));
            }
        }
        let cost = arc_indices.iter().map(|&i| arcs[i].weight).sum();
        Ok(SteinerSolution { arc_indices, cost })
    }

    pub fn arc_indices(&self) -> &BTreeSet<usize> {
        &self.arc_indices
    }

    pub fn cost(&self) -> u64 {
        self.cost
    }
}

/// Vertices reachable from `source` using only the selected arcs.
pub(crate) fn reachable_with(
    num_vertices: usize,
    arcs: &[Arc],
    selected: &BTreeSet<usize>,
    source: usize,
) -> Vec<bool> {
    let mut adj = vec![Vec::new(); num_vertices];
    for &i in selected {
        adj[arcs[i].from].push(arcs[i].to);
    }
    let mut seen = vec![false; num_vertices];
    seen[source] = true;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// True when the arc set connects the root to every terminal.
pub fn dst_feasible(inst: &DstInstance, sol: &SteinerSolution) -> bool {
    let seen = reachable_with(inst.num_vertices, &inst.arcs, sol.arc_indices(), inst.root);
    inst.terminals.iter().all(|&t| seen[t])
}

/// True when the arc set satisfies every demand pair.
pub fn dsf_feasible(inst: &DsfInstance, sol: &SteinerSolution) -> bool {
    let mut sources: Vec<usize> = inst.demands.iter().map(|&(s, _)| s).collect();
    sources.sort_unstable();
    sources.dedup();
    sources.iter().all(|&s| {
        let seen = reachable_with(inst.num_vertices, &inst.arcs, sol.arc_indices(), s);
        inst.demands
            .iter()
            .filter(|&&(src, _)| src == s)
            .all(|&(_, t)| seen[t])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_validation() {
        assert!(DstInstance::new(2, vec![], 5, BTreeSet::new()).is_err());
        assert!(DstInstance::new(
            2,
            vec![
                Arc {
                    from: 0,
                    to: 1,
                    weight: 1
                },
                Arc {
                    from: 0,
                    to: 1,
                    weight: 2
                }
            ],
            0,
            BTreeSet::new()
        )
        .is_err());
        assert!(DsfInstance::new(2, vec![], vec![(0, 1), (0, 1)]).is_err());
    }

    #[test]
    fn feasibility_checks() {
        let inst = DstInstance::new(
            3,
            vec![
                Arc {
                    from: 0,
                    to: 1,
                    weight: 1,
                },
                Arc {
                    from: 1,
                    to: 2,
                    weight: 1,
                },
            ],
            0,
            BTreeSet::from([2]),
        )
        .unwrap();
        let full = SteinerSolution::from_indices(&inst.arcs, [0, 1]).unwrap();
        assert!(dst_feasible(&inst, &full));
        let partial = SteinerSolution::from_indices(&inst.arcs, [0]).unwrap();
        assert!(!dst_feasible(&inst, &partial));
    }
}
