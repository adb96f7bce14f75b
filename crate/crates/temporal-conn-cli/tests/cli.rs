//! End-to-end tests of the `tconn` binary: pipelines, exit codes, formats.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn tconn(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tconn"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn tconn");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("tconn runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("valid JSON report")
}

#[test]
fn gen_and_verify_lower_bound_pipeline() {
    let doc = tconn(&["gen", "lower-bound", "--n", "6"], "");
    assert!(doc.status.success());
    let verified = tconn(&["verify", "lower-bound"], &stdout(&doc));
    assert!(
        verified.status.success(),
        "verification failed: {}",
        stdout(&verified)
    );
}

#[test]
fn fragile_variant_verifies() {
    let lb = tconn(&["gen", "lower-bound", "--n", "6"], "");
    let frag = tconn(&["gen", "lower-bound", "--n", "6", "--fragile"], "");
    // The fragile document keeps the same annotations.
    let verified = tconn(&["verify", "lower-bound", "--fragile"], &stdout(&frag));
    assert!(verified.status.success());
    // The unmodified graph fails the fragile-certificate check: exit 3.
    let unmodified = tconn(&["verify", "lower-bound", "--fragile"], &stdout(&lb));
    assert_eq!(unmodified.status.code(), Some(3));
}

#[test]
fn tree_dp_oracle_ratio_is_one() {
    let g = tconn(
        &[
            "gen",
            "random-tree",
            "--n",
            "6",
            "--labels-per-edge",
            "3",
            "--connected",
            "--seed",
            "1",
        ],
        "",
    );
    let solved = tconn(
        &["solve", "tc", "--method", "tree-dp", "--oracle"],
        &stdout(&g),
    );
    assert!(solved.status.success());
    let report = json(&solved);
    assert_eq!(report["ratio"], 1.0);
    assert_eq!(report["feasible_check"], true);
}

#[test]
fn cycle_two_approx_ratio_within_two() {
    let g = tconn(
        &[
            "gen",
            "random-cycle",
            "--n",
            "7",
            "--labels-per-edge",
            "2",
            "--connected",
            "--seed",
            "2",
        ],
        "",
    );
    let solved = tconn(
        &["solve", "tc", "--method", "cycle-2approx", "--oracle"],
        &stdout(&g),
    );
    assert!(solved.status.success());
    let report = json(&solved);
    assert!(report["ratio"].as_f64().unwrap() <= 2.0);
    assert!(report["rotation"].is_number());
    assert!(report["sectors"].is_array());
}

#[test]
fn generation_is_deterministic() {
    let args = [
        "gen",
        "random-general",
        "--n",
        "9",
        "--labels-per-edge",
        "2",
        "--seed",
        "7",
    ];
    let a = tconn(&args, "");
    let b = tconn(&args, "");
    assert_eq!(stdout(&a), stdout(&b));
    assert!(!stdout(&a).is_empty());
}

#[test]
fn solve_reports_deterministic_modulo_wall_time() {
    let g = tconn(
        &[
            "gen",
            "random-general",
            "--n",
            "5",
            "--labels-per-edge",
            "2",
            "--connected",
            "--seed",
            "3",
        ],
        "",
    );
    let run = || {
        let out = tconn(
            &["solve", "tc", "--method", "brute", "--oracle"],
            &stdout(&g),
        );
        assert!(out.status.success());
        let mut v = json(&out);
        v.as_object_mut().unwrap().remove("wall_ms");
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn malformed_input_exits_4() {
    let out = tconn(&["check"], "tg 2\n");
    assert_eq!(out.status.code(), Some(4));
    let out = tconn(&["solve", "tc", "--method", "brute"], "not a graph\n");
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn infeasible_instance_exits_2() {
    let out = tconn(&["solve", "tc", "--method", "brute"], "tg 3 1\ne 0 1 1 1\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rtc_methods_agree_through_files() {
    let dir = std::env::temp_dir().join(format!("tconn-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let graph_path = dir.join("g.tg");
    let dst_path = dir.join("g.dst");

    let g = tconn(
        &[
            "gen",
            "random-general",
            "--n",
            "5",
            "--labels-per-edge",
            "2",
            "--connected",
            "--seed",
            "11",
        ],
        "",
    );
    std::fs::write(&graph_path, stdout(&g)).unwrap();

    let brute = tconn(
        &[
            "solve",
            "rtc",
            "--method",
            "brute",
            "--root",
            "0",
            graph_path.to_str().unwrap(),
        ],
        "",
    );
    let tw = tconn(
        &[
            "solve",
            "rtc",
            "--method",
            "treewidth-dp",
            "--root",
            "0",
            graph_path.to_str().unwrap(),
        ],
        "",
    );
    let via_dst = tconn(
        &[
            "solve",
            "rtc",
            "--method",
            "dst-reduce",
            "--root",
            "0",
            graph_path.to_str().unwrap(),
        ],
        "",
    );
    let b = json(&brute)["cost"].as_u64().unwrap();
    if tw.status.success() {
        assert_eq!(json(&tw)["cost"].as_u64().unwrap(), b);
    }
    assert_eq!(json(&via_dst)["cost"].as_u64().unwrap(), b);

    // The greedy Steiner backend stays feasible and never beats the optimum.
    let via_greedy = tconn(
        &[
            "solve",
            "rtc",
            "--method",
            "dst-reduce",
            "--steiner",
            "greedy",
            "--root",
            "0",
            graph_path.to_str().unwrap(),
        ],
        "",
    );
    assert!(via_greedy.status.success());
    let g_report = json(&via_greedy);
    assert_eq!(g_report["feasible_check"], true);
    assert!(g_report["cost"].as_u64().unwrap() >= b);

    // The written DST instance solves to the same optimum.
    let reduced = tconn(
        &[
            "reduce",
            "rtc-to-dst",
            "--root",
            "0",
            graph_path.to_str().unwrap(),
            "-o",
            dst_path.to_str().unwrap(),
        ],
        "",
    );
    assert!(reduced.status.success());
    let dst = tconn(
        &[
            "solve",
            "dst",
            "--method",
            "exact",
            dst_path.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(json(&dst)["cost"].as_u64().unwrap(), b);

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn check_reports_stats() {
    let out = tconn(&["check", "--json"], "tg 2 1\ne 0 1 3 7\n");
    assert!(out.status.success());
    let report = json(&out);
    assert_eq!(report["n"], 2);
    assert_eq!(report["temporal_edges"], 1);
    assert_eq!(report["total_weight"], 7);
    assert_eq!(report["connected"], true);
}

#[test]
fn oracle_verbs_report_costs() {
    let g = "tg 3 1\ne 0 1 1 2\ne 1 2 1 3\ne 0 2 2 4\n";
    let tc = tconn(&["oracle", "tc"], g);
    assert!(tc.status.success());
    let rtc = tconn(&["oracle", "rtc", "--root", "0"], g);
    assert!(rtc.status.success());
    assert!(json(&rtc)["cost"].as_u64().unwrap() <= json(&tc)["cost"].as_u64().unwrap());
}

#[test]
fn strict_mode_flag_changes_answers() {
    // Equal labels chain only non-strictly.
    let g = "tg 3 1\ne 0 1 1 1\ne 1 2 1 1\n";
    let loose = tconn(&["oracle", "rtc", "--root", "0"], g);
    assert!(loose.status.success());
    let strict = tconn(&["--mode", "strict", "oracle", "rtc", "--root", "0"], g);
    assert_eq!(strict.status.code(), Some(2));
}

#[test]
fn reduce_emits_parseable_instances() {
    let g = "tg 3 1\ne 0 1 1 2\ne 1 2 1 3\n";
    let dsf = tconn(&["reduce", "tc-to-dsf"], g);
    assert!(dsf.status.success());
    assert!(stdout(&dsf).starts_with("dsf "));
    let solved = tconn(&["solve", "dsf"], &stdout(&dsf));
    assert!(solved.status.success());
    assert_eq!(json(&solved)["cost"].as_u64().unwrap(), 5);

    let rtc = tconn(&["reduce", "dst-to-rtc"], "dst 2\nroot 0\nt 1\na 0 1 4\n");
    assert!(rtc.status.success());
    let solved = tconn(&["oracle", "rtc", "--root", "0"], &stdout(&rtc));
    assert_eq!(json(&solved)["cost"].as_u64().unwrap(), 4);

    let slc = tconn(&["reduce", "slc-to-tc"], "slc 1 1\nrel 0 0 0 0\n");
    assert!(slc.status.success());
    let solved = tconn(&["oracle", "tc"], &stdout(&slc));
    assert_eq!(json(&solved)["cost"].as_u64().unwrap(), 2);

    let st = tconn(&["reduce", "st12-to-tc"], "st12 2\nt 0\nt 1\ne 0 1 2\n");
    assert!(st.status.success());
    let solved = tconn(&["oracle", "tc"], &stdout(&st));
    assert_eq!(json(&solved)["cost"].as_u64().unwrap(), 14);
}
