//! Heavier randomized cross-validation, ignored by default. Run with
//! `cargo test -p temporal-conn --test stress -- --ignored`.

use std::collections::BTreeSet;

use temporal_conn::generator::{gen_random, GenConfig, GraphKind, SplitMix64};
use temporal_conn::graph::{PathMode, TemporalEdge, TemporalGraph, TimeLabel};
use temporal_conn::reach::{feasible, is_connected, is_r_connected};
use temporal_conn::reduce::{dst_to_rtc, rtc_to_dst, tc_to_dsf};
use temporal_conn::solve::{
    brute_force, brute_force_with_cap, make_nice_decomposition, solve_cycle_tc,
    solve_rtc_treewidth, solve_tree_tc,
};
use temporal_conn::steiner::{dsf_brute, dsf_feasible, dst_exact, dst_feasible, Arc, DstInstance};
use temporal_conn::Error;

fn small_graph(kind: GraphKind, n: usize, labels: usize, weight_min: u64, seed: u64) -> TemporalGraph {
    gen_random(&GenConfig {
        weight_min,
        ..GenConfig::new(kind, n, labels, seed)
    })
    .unwrap()
}

#[test]
#[ignore = "heavy randomized suite"]
fn stress_tree_dp() {
    let mut rng = SplitMix64::new(0xABCD);
    let mut solved = 0;
    for case in 0..500u64 {
        let n = 2 + (case as usize % 6);
        let g = small_graph(GraphKind::Tree, n, 4, case % 2, rng.next_u64());
        if g.m() > 18 {
            continue;
        }
        for mode in [PathMode::NonStrict, PathMode::Strict] {
            let oracle = brute_force(&g, mode, None).unwrap();
            match solve_tree_tc(&g, mode) {
                Ok(sol) => {
                    assert_eq!(sol.cost(), oracle.unwrap().cost(), "case {case} {mode:?}");
                    assert!(feasible(&g, &sol, mode, None).unwrap());
                    solved += 1;
                }
                Err(Error::Infeasible(_)) => assert!(oracle.is_none()),
                Err(e) => panic!("case {case}: {e}"),
            }
        }
    }
    println!("tree DP stress: {solved} solved cases matched");
    assert!(solved > 100);
}

#[test]
#[ignore = "heavy randomized suite"]
fn stress_treewidth_dp() {
    let mut rng = SplitMix64::new(0xBEEF);
    let mut solved = 0;
    for case in 0..300u64 {
        let n = 3 + (case as usize % 4);
        let g = small_graph(GraphKind::General, n, 2, case % 2, rng.next_u64());
        if g.m() > 14 {
            continue;
        }
        let Ok(td) = make_nice_decomposition(&g, 4) else {
            continue;
        };
        for mode in [PathMode::NonStrict, PathMode::Strict] {
            for root in 0..g.n().min(3) {
                let oracle = brute_force(&g, mode, Some(root)).unwrap();
                match solve_rtc_treewidth(&g, root, &td, mode) {
                    Ok(sol) => {
                        let oracle = oracle.expect("dp feasible, oracle not");
                        assert_eq!(
                            sol.cost(),
                            oracle.cost(),
                            "case {case} {mode:?} root {root} graph {:?}",
                            g.edges()
                        );
                        assert!(feasible(&g, &sol, mode, Some(root)).unwrap());
                        solved += 1;
                    }
                    Err(Error::Infeasible(_)) => {
                        assert!(oracle.is_none(), "case {case} {mode:?} root {root}")
                    }
                    Err(e) => panic!("case {case}: {e}"),
                }
            }
        }
    }
    println!("treewidth DP stress: {solved} solved cases matched");
    assert!(solved > 300);
}

#[test]
#[ignore = "heavy randomized suite"]
fn stress_cycle_ratio_larger_n() {
    // Random labelings of long cycles are almost never temporally
    // connected, so build connected ones: from a random origin, each slot
    // carries one label of a rising run (increasing path) and one of a
    // falling-position run (decreasing path), forming a sector that serves
    // the whole cycle. Weights are random; a couple of random extra labels
    // are sprinkled on top.
    let mut rng = SplitMix64::new(0xCAFE);
    let mut checked = 0;
    for case in 0..60u64 {
        let n = 9 + (case as usize % 3); // beyond the acceptance sizes
        let origin = rng.below(n as u64) as usize;
        let mut edges = Vec::new();
        for s in 0..n - 1 {
            let u = (origin + s) % n;
            let v = (origin + s + 1) % n;
            edges.push(TemporalEdge::new(
                u,
                v,
                TimeLabel(s as u64 + 1),
                rng.range(1, 5),
            ));
            edges.push(TemporalEdge::new(
                u,
                v,
                TimeLabel(2 * n as u64 + (n - s) as u64),
                rng.range(1, 5),
            ));
        }
        // The slot closing the cycle only carries one cheap label.
        edges.push(TemporalEdge::new(
            (origin + n - 1) % n,
            origin,
            TimeLabel(rng.range(1, 3 * n as u64)),
            rng.range(1, 5),
        ));
        if n == 9 {
            edges.push(TemporalEdge::new(
                rng.below(n as u64) as usize,
                0,
                TimeLabel(rng.range(1, 3 * n as u64)),
                rng.range(1, 5),
            ));
        }
        let edges: Vec<TemporalEdge> = {
            // Drop duplicate (u, v, label) triples from the sprinkles.
            let mut seen = BTreeSet::new();
            edges
                .into_iter()
                .filter(|e| seen.insert((e.u, e.v, e.label)))
                .collect()
        };
        let Ok(g) = TemporalGraph::new(n, 1, edges) else {
            continue;
        };
        if g.underlying_map().len() != n {
            continue; // a sprinkle was a self-slot duplicate or chord
        }
        if g.underlying_map().keys().any(|&(u, v)| {
            !((u + 1) % n == v || (v + 1) % n == u)
        }) {
            continue;
        }
        assert!(is_connected(&g, PathMode::NonStrict), "case {case}");
        let sol = solve_cycle_tc(&g, PathMode::NonStrict).unwrap();
        assert!(feasible(&g, &sol, PathMode::NonStrict, None).unwrap());
        let opt = brute_force_with_cap(&g, PathMode::NonStrict, None, 24)
            .unwrap()
            .unwrap();
        assert!(
            sol.cost() <= 2 * opt.cost(),
            "case {case}: {} > 2*{}",
            sol.cost(),
            opt.cost()
        );
        checked += 1;
    }
    println!("cycle stress: {checked} instances within ratio 2");
    assert!(checked > 20);
}

#[test]
#[ignore = "heavy randomized suite"]
fn stress_reduction_round_trips() {
    let mut rng = SplitMix64::new(0xD00D);
    // rtc -> dst with zero weights allowed.
    let mut count = 0;
    for case in 0..200u64 {
        let n = 3 + (case as usize % 4);
        let g = small_graph(GraphKind::General, n, 2, 0, rng.next_u64());
        if g.m() > 10 {
            continue;
        }
        for mode in [PathMode::NonStrict, PathMode::Strict] {
            if !is_r_connected(&g, 0, mode).unwrap() {
                continue;
            }
            let red = rtc_to_dst(&g, 0, mode).unwrap();
            let dst_opt = dst_exact(&red.instance).unwrap();
            let rtc_opt = brute_force(&g, mode, Some(0)).unwrap().unwrap();
            assert_eq!(dst_opt.cost(), rtc_opt.cost(), "rtc->dst case {case} {mode:?}");
            let back = red.backward(&g, &dst_opt).unwrap();
            assert!(feasible(&g, &back, mode, Some(0)).unwrap());
            assert!(back.cost() <= dst_opt.cost());
            let fwd = red.forward(&g, &rtc_opt).unwrap();
            assert!(dst_feasible(&red.instance, &fwd));
            assert!(fwd.cost() <= rtc_opt.cost());
            count += 1;
        }
    }
    println!("rtc->dst stress: {count} round trips");
    assert!(count > 100);

    // dst -> rtc with adversarial weights (reverse-ride shapes included).
    let mut count = 0;
    for case in 0..200u64 {
        let n = 2 + (case as usize % 2);
        let mut arcs = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.below(3) < 2 {
                    arcs.push(Arc {
                        from: u,
                        to: v,
                        weight: rng.below(6),
                    });
                }
            }
        }
        let mut terminals: BTreeSet<usize> = (1..n).filter(|_| rng.below(2) == 0).collect();
        if terminals.is_empty() {
            terminals.insert(1 + rng.below(n as u64 - 1) as usize);
        }
        let inst = DstInstance::new(n, arcs, 0, terminals).unwrap();
        let Ok(dst_opt) = dst_exact(&inst) else { continue };
        let red = dst_to_rtc(&inst).unwrap();
        let rtc_opt =
            brute_force_with_cap(&red.graph, PathMode::NonStrict, Some(red.root), 40)
                .unwrap()
                .unwrap();
        assert_eq!(rtc_opt.cost(), dst_opt.cost(), "dst->rtc case {case}");
        count += 1;
    }
    println!("dst->rtc stress: {count} round trips");
    assert!(count > 100);

    // tc -> dsf with zero weights allowed.
    let mut count = 0;
    for case in 0..150u64 {
        let n = 3 + (case as usize % 2);
        let g = small_graph(GraphKind::General, n, 2, 0, rng.next_u64());
        if g.m() > 7 {
            continue;
        }
        for mode in [PathMode::NonStrict, PathMode::Strict] {
            let tc_opt = brute_force(&g, mode, None).unwrap();
            let red = tc_to_dsf(&g, mode).unwrap();
            match dsf_brute(&red.instance) {
                Ok(dsf_opt) => {
                    let tc_opt = tc_opt.expect("image feasible, source not");
                    assert_eq!(dsf_opt.cost(), tc_opt.cost(), "tc->dsf case {case} {mode:?}");
                    let back = red.backward(&g, &dsf_opt).unwrap();
                    assert!(feasible(&g, &back, mode, None).unwrap());
                    assert!(dsf_feasible(&red.instance, &red.forward(&tc_opt).unwrap()));
                    count += 1;
                }
                Err(Error::Infeasible(_)) => assert!(tc_opt.is_none()),
                Err(e) => panic!("case {case}: {e}"),
            }
        }
    }
    println!("tc->dsf stress: {count} round trips");
    assert!(count > 80);
}

#[test]
#[ignore = "heavy randomized suite"]
fn stress_multilabel_duplicate_weight_edges() {
    // Several labels on one underlying edge with differing weights; the
    // solvers must pick labels, not underlying edges.
    let g = TemporalGraph::new(
        3,
        1,
        vec![
            TemporalEdge::new(0, 1, TimeLabel(1), 5),
            TemporalEdge::new(0, 1, TimeLabel(2), 1),
            TemporalEdge::new(0, 1, TimeLabel(3), 5),
            TemporalEdge::new(1, 2, TimeLabel(2), 2),
            TemporalEdge::new(1, 2, TimeLabel(4), 1),
        ],
    )
    .unwrap();
    for mode in [PathMode::NonStrict, PathMode::Strict] {
        let tree = solve_tree_tc(&g, mode).unwrap();
        let brute = brute_force(&g, mode, None).unwrap().unwrap();
        assert_eq!(tree.cost(), brute.cost(), "{mode:?}");
        let td = make_nice_decomposition(&g, 4).unwrap();
        for root in 0..3 {
            let dp = solve_rtc_treewidth(&g, root, &td, mode).unwrap();
            let b = brute_force(&g, mode, Some(root)).unwrap().unwrap();
            assert_eq!(dp.cost(), b.cost(), "{mode:?} root {root}");
        }
    }
}
