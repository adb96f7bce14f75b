//! Brute-force Directed Steiner Forest.
//!
//! Zero-weight arcs are always kept (they can only help feasibility and
//! never change the cost), so the search branches on positive-weight arcs
//! only, exclusion first, pruning infeasible remainders and branches at or
//! above the incumbent cost.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::steiner::{dsf_feasible, DsfInstance, SteinerSolution};

/// Cap on the number of branching (positive-weight) arcs.
pub const DSF_ARC_CAP: usize = 22;

/// Minimum-cost arc subset satisfying every demand.
pub fn dsf_brute(inst: &DsfInstance) -> Result<SteinerSolution> {
    let positive: Vec<usize> = (0..inst.arcs.len())
        .filter(|&i| inst.arcs[i].weight > 0)
        .collect();
    if positive.len() > DSF_ARC_CAP {
        return Err(Error::CapExceeded {
            what: "DSF branching arcs",
            cap: DSF_ARC_CAP,
            actual: positive.len(),
        });
    }
    let feasible = |selected: &BTreeSet<usize>| -> bool {
        let sol = SteinerSolution::from_indices(&inst.arcs, selected.iter().copied())
            .expect("indices in range");
        dsf_feasible(inst, &sol)
    };
    let all: BTreeSet<usize> = (0..inst.arcs.len()).collect();
    if !feasible(&all) {
        return Err(Error::Infeasible(
            "some demand pair is unsatisfiable even with every arc".into(),
        ));
    }

    let mut order = positive;
    order.sort_by_key(|&i| (std::cmp::Reverse(inst.arcs[i].weight), i));

    struct Search<'a, F: Fn(&BTreeSet<usize>) -> bool> {
        inst: &'a DsfInstance,
        order: Vec<usize>,
        feasible: F,
        best_cost: u64,
        best: BTreeSet<usize>,
    }

    impl<F: Fn(&BTreeSet<usize>) -> bool> Search<'_, F> {
        fn run(&mut self, depth: usize, acc: u64, selected: &mut BTreeSet<usize>) {
            if acc >= self.best_cost {
                return;
            }
            if depth == self.order.len() {
                self.best_cost = acc;
                self.best = selected.clone();
                return;
            }
            let ai = self.order[depth];
            selected.remove(&ai);
            if (self.feasible)(selected) {
                self.run(depth + 1, acc, selected);
            }
            selected.insert(ai);
            self.run(depth + 1, acc + self.inst.arcs[ai].weight, selected);
        }
    }

    let mut search = Search {
        inst,
        order,
        feasible,
        best_cost: u64::MAX,
        best: BTreeSet::new(),
    };
    let mut selected = all;
    search.run(0, 0, &mut selected);
    SteinerSolution::from_indices(&inst.arcs, search.best.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steiner::Arc;

    fn arc(from: usize, to: usize, weight: u64) -> Arc {
        Arc { from, to, weight }
    }

    #[test]
    fn single_demand_single_arc() {
        let inst = DsfInstance::new(2, vec![arc(0, 1, 3)], vec![(0, 1)]).unwrap();
        let sol = dsf_brute(&inst).unwrap();
        assert_eq!(sol.cost(), 3);
        assert_eq!(sol.arc_indices().len(), 1);
    }

    #[test]
    fn shared_arc_counted_once() {
        // Demands (0 -> 2) and (1 -> 2) share the arc into 2.
        let inst = DsfInstance::new(
            4,
            vec![arc(0, 3, 1), arc(1, 3, 1), arc(3, 2, 5)],
            vec![(0, 2), (1, 2)],
        )
        .unwrap();
        let sol = dsf_brute(&inst).unwrap();
        assert_eq!(sol.cost(), 7);
    }

    #[test]
    fn unsatisfiable_demand_is_infeasible() {
        let inst = DsfInstance::new(3, vec![arc(0, 1, 1)], vec![(0, 2)]).unwrap();
        assert!(matches!(dsf_brute(&inst), Err(Error::Infeasible(_))));
    }

    #[test]
    fn cheaper_detour_beats_direct_arc() {
        let inst = DsfInstance::new(
            3,
            vec![arc(0, 2, 10), arc(0, 1, 2), arc(1, 2, 3)],
            vec![(0, 2)],
        )
        .unwrap();
        assert_eq!(dsf_brute(&inst).unwrap().cost(), 5);
    }
}
