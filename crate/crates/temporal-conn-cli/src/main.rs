//! `tconn`: generate, check, solve, reduce and verify temporal-connectivity
//! instances from the command line.
//!
//! Instances travel as plain text (see the library's io module); solver
//! results are printed as JSON. Exit codes: 0 success, 2 infeasible,
//! 3 verification failure, 4 input or parse error.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use temporal_conn::error::Error;
use temporal_conn::generator::{gen_random, gen_random_connected, GenConfig, GraphKind};
use temporal_conn::graph::{PathMode, Solution, TemporalGraph};
use temporal_conn::io as fmt;
use temporal_conn::lower_bound::{
    build_fragile_variant, build_lower_bound, verify_fragile, verify_lower_bound,
};
use temporal_conn::reach::{feasible, is_connected};
use temporal_conn::reduce::{dst_to_rtc, rtc_to_dst, slc_to_tc, st12_to_tc, tc_to_dsf};
use temporal_conn::solve::{
    brute_force, cycle::cycle_decomposition, make_nice_decomposition, solve_rtc_treewidth,
    solve_tree_tc, tc_via_rooted_union,
};
use temporal_conn::steiner::{dsf_brute, dsf_feasible, dst_exact, dst_feasible, dst_greedy};

#[derive(Parser)]
#[command(name = "tconn", version, about = "Temporal-connectivity toolbox")]
struct Cli {
    /// Temporal-path mode used by every command.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Nonstrict)]
    mode: ModeArg,
    /// Emit JSON where a command would print human-readable lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Nonstrict,
    Strict,
}

impl From<ModeArg> for PathMode {
    fn from(m: ModeArg) -> PathMode {
        match m {
            ModeArg::Nonstrict => PathMode::NonStrict,
            ModeArg::Strict => PathMode::Strict,
        }
    }
}

impl ModeArg {
    fn name(self) -> &'static str {
        match self {
            ModeArg::Nonstrict => "nonstrict",
            ModeArg::Strict => "strict",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Parse a temporal graph and report its stats and connectivity.
    Check {
        /// Input file; stdin when omitted.
        input: Option<PathBuf>,
    },
    /// Solve connectivity and Steiner problems.
    Solve {
        #[command(subcommand)]
        what: SolveCmd,
    },
    /// Transform instances between problem families.
    Reduce {
        #[command(subcommand)]
        what: ReduceCmd,
    },
    /// Verify generated constructions.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Exact reference optima for tiny instances.
    Oracle {
        #[command(subcommand)]
        what: OracleCmd,
    },
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    labels_per_edge: usize,
    #[arg(long, default_value_t = 1)]
    weight_min: u64,
    #[arg(long, default_value_t = 5)]
    weight_max: u64,
    /// Labels are drawn from 1..=max-label; 0 means 2n.
    #[arg(long, default_value_t = 0)]
    max_label: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rejection-sample sub-seeds until the instance is temporally connected.
    #[arg(long)]
    connected: bool,
    /// Output file; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCmd {
    /// The dense almost-minimally-connected family on 3n vertices.
    LowerBound {
        /// Even n >= 6.
        #[arg(long)]
        n: usize,
        /// Raise the label of edge {a_1, m_1} to 1 (linear certificate variant).
        #[arg(long)]
        fragile: bool,
        /// Output file; stdout when omitted (annotations inline).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Annotation sidecar; defaults to <output>.ann when -o is given.
        #[arg(long)]
        annot: Option<PathBuf>,
    },
    /// Random temporal tree.
    RandomTree(RandomArgs),
    /// Random temporal cycle with cyclic vertex order.
    RandomCycle(RandomArgs),
    /// Random connected temporal graph.
    RandomGeneral(RandomArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum TcMethod {
    Brute,
    TreeDp,
    RootedUnion,
    #[value(name = "cycle-2approx")]
    Cycle2Approx,
}

#[derive(Clone, Copy, ValueEnum)]
enum RtcMethod {
    Brute,
    TreewidthDp,
    DstReduce,
}

#[derive(Clone, Copy, ValueEnum)]
enum DstMethod {
    Exact,
    Greedy,
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Minimum-weight all-pairs temporal connectivity.
    Tc {
        #[arg(long, value_enum)]
        method: TcMethod,
        /// Also run the brute-force oracle and report the ratio.
        #[arg(long)]
        oracle: bool,
        input: Option<PathBuf>,
    },
    /// Minimum-weight single-source temporal connectivity.
    Rtc {
        #[arg(long, value_enum)]
        method: RtcMethod,
        #[arg(long)]
        root: usize,
        #[arg(long)]
        oracle: bool,
        /// Width cap for the treewidth DP decomposition.
        #[arg(long, default_value_t = 4)]
        width_cap: usize,
        /// Steiner backend for --method dst-reduce.
        #[arg(long, value_enum, default_value_t = DstMethod::Exact)]
        steiner: DstMethod,
        /// Recursion depth for the greedy Steiner backend.
        #[arg(long, default_value_t = 2)]
        depth: usize,
        input: Option<PathBuf>,
    },
    /// Directed Steiner Tree.
    Dst {
        #[arg(long, value_enum)]
        method: DstMethod,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        input: Option<PathBuf>,
    },
    /// Directed Steiner Forest (brute force).
    Dsf { input: Option<PathBuf> },
}

#[derive(Args)]
struct ReduceArgs {
    input: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Sidecar describing the vertex naming of the produced instance.
    #[arg(long)]
    map_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Rooted temporal connectivity -> Directed Steiner Tree.
    RtcToDst {
        #[arg(long)]
        root: usize,
        #[command(flatten)]
        common: ReduceArgs,
    },
    /// All-pairs temporal connectivity -> Directed Steiner Forest.
    TcToDsf(ReduceArgs),
    /// Directed Steiner Tree -> rooted temporal connectivity.
    DstToRtc(ReduceArgs),
    /// Symmetric Label Cover -> temporal connectivity gadget.
    SlcToTc(ReduceArgs),
    /// Steiner Tree with weights 1,2 -> unweighted temporal connectivity.
    St12ToTc(ReduceArgs),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Check connectivity, per-edge minimality and the pigeonhole count of
    /// a generated lower-bound graph (or its fragile variant).
    LowerBound {
        input: Option<PathBuf>,
        /// Annotations, when not inline in the input document.
        #[arg(long)]
        annot: Option<PathBuf>,
        /// Verify the linear-size certificate of the fragile variant instead.
        #[arg(long)]
        fragile: bool,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exact TC optimum by branch and bound.
    Tc { input: Option<PathBuf> },
    /// Exact rooted optimum by branch and bound.
    Rtc {
        #[arg(long)]
        root: usize,
        input: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct SolveReport {
    command: String,
    method: String,
    mode: String,
    input_digest: String,
    cost: u64,
    feasible_check: bool,
    edges: Vec<(usize, usize, u64)>,
    wall_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_cost: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rotation: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sectors: Option<Vec<(usize, usize, usize)>>,
}

#[derive(Serialize)]
struct SteinerReport {
    command: String,
    method: String,
    input_digest: String,
    cost: u64,
    feasible_check: bool,
    arcs: Vec<(usize, usize, u64)>,
    wall_ms: u128,
}

#[derive(Serialize)]
struct CheckReport {
    input_digest: String,
    n: usize,
    temporal_edges: usize,
    distinct_labels: usize,
    max_degree: usize,
    total_weight: u64,
    lifetime: u64,
    simple: bool,
    mode: String,
    connected: bool,
}

fn fnv1a(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xCBF2_9CE4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
    }
    format!("{hash:016x}")
}

fn read_input(path: &Option<PathBuf>) -> anyhow::Result<String> {
    match path {
        Some(p) => Ok(std::fs::read_to_string(p)?),
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

/// Writes to the file or stdout; a closed pipe downstream is not an error.
fn write_output(path: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => emit(text)?,
    }
    Ok(())
}

fn emit(text: &str) -> anyhow::Result<()> {
    use std::io::Write;
    if let Err(e) = std::io::stdout().write_all(text.as_bytes()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        return Err(e.into());
    }
    Ok(())
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Infeasible(_)) => 2,
        Some(Error::InvalidInput(_))
        | Some(Error::Parse { .. })
        | Some(Error::CapExceeded { .. }) => 4,
        Some(Error::Internal(_)) => 1,
        None => 4, // argument or io problems
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let mode: PathMode = cli.mode.into();
    match cli.command {
        Command::Gen { what } => gen(what, mode),
        Command::Check { input } => check(&input, cli.mode, cli.json),
        Command::Solve { what } => solve(what, cli.mode),
        Command::Reduce { what } => reduce(what, mode),
        Command::Verify { what } => verify(what, mode),
        Command::Oracle { what } => oracle(what, cli.mode),
    }
}

fn gen(cmd: GenCmd, mode: PathMode) -> anyhow::Result<ExitCode> {
    match cmd {
        GenCmd::LowerBound {
            n,
            fragile,
            output,
            annot,
        } => {
            let lb = build_lower_bound(n)?;
            let graph_text = if fragile {
                fmt::serialize_temporal_graph(&build_fragile_variant(&lb)?)
            } else {
                fmt::serialize_temporal_graph(&lb.graph)
            };
            let ann_text = fmt::serialize_lower_bound_annotations(&lb);
            match (&output, &annot) {
                (None, None) => {
                    // Single combined document on stdout.
                    emit(&format!("{graph_text}{ann_text}"))?;
                }
                (Some(out), ann) => {
                    std::fs::write(out, &graph_text)?;
                    let ann_path = ann.clone().unwrap_or_else(|| out.with_extension("ann"));
                    std::fs::write(ann_path, &ann_text)?;
                }
                (None, Some(ann_path)) => {
                    emit(&graph_text)?;
                    std::fs::write(ann_path, &ann_text)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        GenCmd::RandomTree(a) => gen_random_graph(GraphKind::Tree, a, mode),
        GenCmd::RandomCycle(a) => gen_random_graph(GraphKind::Cycle, a, mode),
        GenCmd::RandomGeneral(a) => gen_random_graph(GraphKind::General, a, mode),
    }
}

fn gen_random_graph(kind: GraphKind, a: RandomArgs, mode: PathMode) -> anyhow::Result<ExitCode> {
    let cfg = GenConfig {
        kind,
        n: a.n,
        labels_per_edge: a.labels_per_edge,
        weight_min: a.weight_min,
        weight_max: a.weight_max,
        max_label: a.max_label,
        seed: a.seed,
    };
    let g = if a.connected {
        gen_random_connected(&cfg, mode)?
    } else {
        gen_random(&cfg)?
    };
    write_output(&a.output, &fmt::serialize_temporal_graph(&g))?;
    Ok(ExitCode::SUCCESS)
}

fn check(input: &Option<PathBuf>, mode: ModeArg, json: bool) -> anyhow::Result<ExitCode> {
    let text = read_input(input)?;
    let g = fmt::parse_temporal_graph(&text)?;
    let stats = g.stats();
    let report = CheckReport {
        input_digest: fnv1a(text.as_bytes()),
        n: stats.n,
        temporal_edges: stats.temporal_edge_count,
        distinct_labels: stats.distinct_label_count,
        max_degree: stats.max_degree,
        total_weight: stats.total_weight,
        lifetime: g.lifetime().value(),
        simple: g.is_simple(),
        mode: mode.name().into(),
        connected: is_connected(&g, mode.into()),
    };
    if json {
        emit(&format!("{}\n", serde_json::to_string_pretty(&report)?))?;
    } else {
        println!(
            "n={} M={} labels={} max_degree={} total_weight={} lifetime={} simple={} {}-connected={}",
            report.n,
            report.temporal_edges,
            report.distinct_labels,
            report.max_degree,
            report.total_weight,
            report.lifetime,
            report.simple,
            report.mode,
            report.connected
        );
    }
    Ok(ExitCode::SUCCESS)
}

/// Identity of one solver run, threaded into its report.
struct RunInfo<'a> {
    command: &'a str,
    method: &'a str,
    mode: ModeArg,
    digest: String,
    root: Option<usize>,
    oracle: bool,
    started: Instant,
}

fn solution_report(
    run: RunInfo<'_>,
    g: &TemporalGraph,
    sol: &Solution,
) -> anyhow::Result<SolveReport> {
    let ok = feasible(g, sol, run.mode.into(), run.root)?;
    let (oracle_cost, ratio) = if run.oracle {
        let opt = brute_force(g, run.mode.into(), run.root)?
            .ok_or_else(|| Error::Infeasible("oracle found the instance infeasible".into()))?;
        let ratio = if opt.cost() == 0 {
            if sol.cost() == 0 {
                1.0
            } else {
                f64::INFINITY
            }
        } else {
            sol.cost() as f64 / opt.cost() as f64
        };
        (Some(opt.cost()), Some(ratio))
    } else {
        (None, None)
    };
    Ok(SolveReport {
        command: run.command.into(),
        method: run.method.into(),
        mode: run.mode.name().into(),
        input_digest: run.digest,
        cost: sol.cost(),
        feasible_check: ok,
        edges: sol
            .edge_indices()
            .iter()
            .map(|&i| {
                let e = g.edge(i);
                (e.u, e.v, e.label.value())
            })
            .collect(),
        wall_ms: run.started.elapsed().as_millis(),
        oracle_cost,
        ratio,
        rotation: None,
        sectors: None,
    })
}

fn emit_solution(report: &SolveReport) -> anyhow::Result<ExitCode> {
    emit(&format!("{}\n", serde_json::to_string_pretty(report)?))?;
    if !report.feasible_check {
        return Err(Error::Internal("solver output failed the feasibility check".into()).into());
    }
    Ok(ExitCode::SUCCESS)
}

fn solve(cmd: SolveCmd, mode: ModeArg) -> anyhow::Result<ExitCode> {
    match cmd {
        SolveCmd::Tc {
            method,
            oracle,
            input,
        } => {
            let text = read_input(&input)?;
            let digest = fnv1a(text.as_bytes());
            let g = fmt::parse_temporal_graph(&text)?;
            let started = Instant::now();
            let (name, sol, extra) = match method {
                TcMethod::Brute => {
                    let sol = brute_force(&g, mode.into(), None)?
                        .ok_or_else(|| Error::Infeasible("no connected subgraph".into()))?;
                    ("brute", sol, None)
                }
                TcMethod::TreeDp => ("tree-dp", solve_tree_tc(&g, mode.into())?, None),
                TcMethod::RootedUnion => {
                    let sol = tc_via_rooted_union(&g, mode.into(), |g, r| {
                        brute_force(g, mode.into(), Some(r))?
                            .ok_or_else(|| Error::Infeasible(format!("no {r}-connected subgraph")))
                    })?;
                    ("rooted-union", sol, None)
                }
                TcMethod::Cycle2Approx => {
                    let out = cycle_decomposition(&g, mode.into())?;
                    (
                        "cycle-2approx",
                        out.solution.clone(),
                        Some((out.rotation, out.sectors)),
                    )
                }
            };
            let run = RunInfo {
                command: "solve tc",
                method: name,
                mode,
                digest,
                root: None,
                oracle,
                started,
            };
            let mut report = solution_report(run, &g, &sol)?;
            if let Some((rotation, sectors)) = extra {
                report.rotation = Some(rotation);
                report.sectors = Some(sectors);
            }
            emit_solution(&report)
        }
        SolveCmd::Rtc {
            method,
            root,
            oracle,
            width_cap,
            steiner,
            depth,
            input,
        } => {
            let text = read_input(&input)?;
            let digest = fnv1a(text.as_bytes());
            let g = fmt::parse_temporal_graph(&text)?;
            let started = Instant::now();
            let (name, sol) = match method {
                RtcMethod::Brute => {
                    let sol = brute_force(&g, mode.into(), Some(root))?.ok_or_else(|| {
                        Error::Infeasible(format!("no {root}-connected subgraph"))
                    })?;
                    ("brute", sol)
                }
                RtcMethod::TreewidthDp => {
                    let td = make_nice_decomposition(&g, width_cap)?;
                    (
                        "treewidth-dp",
                        solve_rtc_treewidth(&g, root, &td, mode.into())?,
                    )
                }
                RtcMethod::DstReduce => {
                    let red = rtc_to_dst(&g, root, mode.into())?;
                    let steiner_sol = match steiner {
                        DstMethod::Exact => dst_exact(&red.instance)?,
                        DstMethod::Greedy => dst_greedy(&red.instance, depth)?,
                    };
                    ("dst-reduce", red.backward(&g, &steiner_sol)?)
                }
            };
            let run = RunInfo {
                command: "solve rtc",
                method: name,
                mode,
                digest,
                root: Some(root),
                oracle,
                started,
            };
            emit_solution(&solution_report(run, &g, &sol)?)
        }
        SolveCmd::Dst {
            method,
            depth,
            input,
        } => {
            let text = read_input(&input)?;
            let digest = fnv1a(text.as_bytes());
            let inst = fmt::parse_dst(&text)?;
            let started = Instant::now();
            let (name, sol) = match method {
                DstMethod::Exact => ("exact", dst_exact(&inst)?),
                DstMethod::Greedy => ("greedy", dst_greedy(&inst, depth)?),
            };
            let report = SteinerReport {
                command: "solve dst".into(),
                method: name.into(),
                input_digest: digest,
                cost: sol.cost(),
                feasible_check: dst_feasible(&inst, &sol),
                arcs: sol
                    .arc_indices()
                    .iter()
                    .map(|&i| {
                        let a = inst.arcs[i];
                        (a.from, a.to, a.weight)
                    })
                    .collect(),
                wall_ms: started.elapsed().as_millis(),
            };
            emit(&format!("{}\n", serde_json::to_string_pretty(&report)?))?;
            Ok(ExitCode::SUCCESS)
        }
        SolveCmd::Dsf { input } => {
            let text = read_input(&input)?;
            let digest = fnv1a(text.as_bytes());
            let inst = fmt::parse_dsf(&text)?;
            let started = Instant::now();
            let sol = dsf_brute(&inst)?;
            let report = SteinerReport {
                command: "solve dsf".into(),
                method: "brute".into(),
                input_digest: digest,
                cost: sol.cost(),
                feasible_check: dsf_feasible(&inst, &sol),
                arcs: sol
                    .arc_indices()
                    .iter()
                    .map(|&i| {
                        let a = inst.arcs[i];
                        (a.from, a.to, a.weight)
                    })
                    .collect(),
                wall_ms: started.elapsed().as_millis(),
            };
            emit(&format!("{}\n", serde_json::to_string_pretty(&report)?))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn reduce(cmd: ReduceCmd, mode: PathMode) -> anyhow::Result<ExitCode> {
    match cmd {
        ReduceCmd::RtcToDst { root, common } => {
            let text = read_input(&common.input)?;
            let g = fmt::parse_temporal_graph(&text)?;
            let red = rtc_to_dst(&g, root, mode)?;
            write_output(&common.output, &fmt::serialize_dst(&red.instance))?;
            if let Some(map_path) = &common.map_out {
                let mut map = String::from("# dst vertex -> role\n");
                map.push_str("root 0\n");
                for i in 0..g.m() {
                    map.push_str(&format!("edge-vertex {} {}\n", red.vertex_of_edge(i), i));
                }
                for u in 0..g.n() {
                    if u != root {
                        map.push_str(&format!("terminal {} {}\n", red.terminal_of(u), u));
                    }
                }
                std::fs::write(map_path, map)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        ReduceCmd::TcToDsf(common) => {
            let text = read_input(&common.input)?;
            let g = fmt::parse_temporal_graph(&text)?;
            let red = tc_to_dsf(&g, mode)?;
            write_output(&common.output, &fmt::serialize_dsf(&red.instance))?;
            if let Some(map_path) = &common.map_out {
                let mut map = String::from("# temporal edge -> (h1, h2)\n");
                for i in 0..g.m() {
                    map.push_str(&format!("edge-pair {i} {} {}\n", red.h1(i), red.h2(i)));
                }
                std::fs::write(map_path, map)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        ReduceCmd::DstToRtc(common) => {
            let text = read_input(&common.input)?;
            let inst = fmt::parse_dst(&text)?;
            let red = dst_to_rtc(&inst)?;
            write_output(&common.output, &fmt::serialize_temporal_graph(&red.graph))?;
            if let Some(map_path) = &common.map_out {
                let mut map = format!("root {}\n", red.root);
                for (ai, a) in inst.arcs.iter().enumerate() {
                    for i in 1..inst.num_vertices {
                        map.push_str(&format!(
                            "aux {} {} {} {} {}\n",
                            ai,
                            i,
                            red.aux(ai, i),
                            a.from,
                            a.to
                        ));
                    }
                }
                std::fs::write(map_path, map)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        ReduceCmd::SlcToTc(common) => {
            let text = read_input(&common.input)?;
            let inst = fmt::parse_slc(&text)?;
            let red = slc_to_tc(&inst)?;
            write_output(&common.output, &fmt::serialize_temporal_graph(&red.graph))?;
            if let Some(map_path) = &common.map_out {
                let mut map = format!("p {}\nq {}\n", red.p_vertex(), red.q_vertex());
                for u in 0..inst.k {
                    map.push_str(&format!("u {} {}\n", u, red.u_vertex(u)));
                    map.push_str(&format!("w {} {}\n", u, red.w_vertex(u)));
                }
                std::fs::write(map_path, map)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        ReduceCmd::St12ToTc(common) => {
            let text = read_input(&common.input)?;
            let inst = fmt::parse_st12(&text)?;
            let red = st12_to_tc(&inst)?;
            write_output(&common.output, &fmt::serialize_temporal_graph(&red.graph))?;
            if let Some(map_path) = &common.map_out {
                let mut map = String::from("# uniform steiner edge -> temporal edge index\n");
                for (ei, &idx) in red.steiner_edges().iter().enumerate() {
                    let (u, v) = red.uniform_edges[ei];
                    map.push_str(&format!("steiner-edge {ei} {u} {v} {idx}\n"));
                }
                std::fs::write(map_path, map)?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn verify(cmd: VerifyCmd, mode: PathMode) -> anyhow::Result<ExitCode> {
    match cmd {
        VerifyCmd::LowerBound {
            input,
            annot,
            fragile,
        } => {
            let mut text = read_input(&input)?;
            if let Some(ann) = &annot {
                text.push_str(&std::fs::read_to_string(ann)?);
            }
            let lb = fmt::parse_lower_bound_document(&text)?;
            if fragile {
                let report = verify_fragile(&lb.graph, &lb, mode);
                println!(
                    "fragile-certificate connected={} remaining={} expected={}",
                    report.connected, report.remaining_edges, report.expected_remaining
                );
                if report.passed() {
                    Ok(ExitCode::SUCCESS)
                } else {
                    Ok(ExitCode::from(3))
                }
            } else {
                let report = verify_lower_bound(&lb, mode);
                println!(
                    "connected={} a_edge_checks={} minimality_failures={} non_a_edges={} bound={}",
                    report.connected,
                    report.a_edge_checks,
                    report.minimality_failures.len(),
                    report.non_a_edge_count,
                    report.pigeonhole_bound
                );
                if report.passed() {
                    Ok(ExitCode::SUCCESS)
                } else {
                    Ok(ExitCode::from(3))
                }
            }
        }
    }
}

fn oracle(cmd: OracleCmd, mode: ModeArg) -> anyhow::Result<ExitCode> {
    let (input, root, command) = match cmd {
        OracleCmd::Tc { input } => (input, None, "oracle tc"),
        OracleCmd::Rtc { root, input } => (input, Some(root), "oracle rtc"),
    };
    let text = read_input(&input)?;
    let digest = fnv1a(text.as_bytes());
    let g = fmt::parse_temporal_graph(&text)?;
    let started = Instant::now();
    let sol = brute_force(&g, mode.into(), root)?
        .ok_or_else(|| Error::Infeasible("no feasible subset exists".into()))?;
    let run = RunInfo {
        command,
        method: "brute",
        mode,
        digest,
        root,
        oracle: false,
        started,
    };
    emit_solution(&solution_report(run, &g, &sol)?)
}
