//! Plain-text instance formats with positioned parse errors.
//!
//! Temporal graph: a `tg <n> <scale>` header followed by one
//! `e <u> <v> <label_scaled> <weight>` line per temporal edge; `#` starts a
//! comment. Vertices are 0-based. Serialization is canonical (header, then
//! edges in stored order), so parse-then-serialize is the identity on
//! canonical bytes.
//!
//! Steiner formats: `dst <n>` with `root <r>`, `t <v>` and `a <u> <v> <w>`
//! lines; `dsf <n>` with `pair <s> <t>` and `a <u> <v> <w>` lines.
//! Lower-bound annotations: `lb <n>` and `aedge <edge_index> <path_i>`
//! lines, appended to the graph text or kept as a sidecar.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{TemporalEdge, TemporalGraph, TimeLabel};
use crate::lower_bound::LowerBoundGraph;
use crate::reduce::{SlcInstance, SteinerInstance12};
use crate::steiner::{Arc, DsfInstance, DstInstance};

fn parse_fields(line: &str) -> Vec<&str> {
    line.split('#')
        .next()
        .unwrap_or("")
        .split_whitespace()
        .collect()
}

fn field<T: std::str::FromStr>(fields: &[&str], idx: usize, line: usize, what: &str) -> Result<T> {
    let raw = fields.get(idx).ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    raw.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid {what}: {raw}"),
    })
}

/// Parses the temporal-graph text format.
pub fn parse_temporal_graph(text: &str) -> Result<TemporalGraph> {
    let (g, rest) = parse_temporal_graph_partial(text)?;
    if let Some((lineno, keyword)) = rest.first() {
        return Err(Error::Parse {
            line: *lineno,
            msg: format!("unexpected record '{keyword}'"),
        });
    }
    Ok(g)
}

/// Parses the graph records and returns any trailing non-graph records as
/// (line number, first keyword) pairs, for combined documents.
fn parse_temporal_graph_partial(text: &str) -> Result<(TemporalGraph, Vec<(usize, String)>)> {
    let mut header: Option<(usize, u64)> = None;
    let mut edges = Vec::new();
    let mut rest = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let fields = parse_fields(raw);
        if fields.is_empty() {
            continue;
        }
        match fields[0] {
            "tg" => {
                if header.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "duplicate tg header".into(),
                    });
                }
                let n: usize = field(&fields, 1, lineno, "vertex count")?;
                let scale: u64 = field(&fields, 2, lineno, "scale")?;
                header = Some((n, scale));
            }
            "e" => {
                if header.is_none() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "edge before tg header".into(),
                    });
                }
                let u: usize = field(&fields, 1, lineno, "endpoint")?;
                let v: usize = field(&fields, 2, lineno, "endpoint")?;
                let label: u64 = field(&fields, 3, lineno, "label")?;
                let weight: u64 = field(&fields, 4, lineno, "weight")?;
                edges.push(TemporalEdge::new(u, v, TimeLabel(label), weight));
            }
            other => rest.push((lineno, other.to_string())),
        }
    }
    let (n, scale) = header.ok_or(Error::Parse {
        line: 1,
        msg: "missing tg header".into(),
    })?;
    Ok((TemporalGraph::new(n, scale, edges)?, rest))
}

/// Canonical temporal-graph serialization.
pub fn serialize_temporal_graph(g: &TemporalGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "tg {} {}", g.n(), g.scale());
    for e in g.edges() {
        let _ = writeln!(out, "e {} {} {} {}", e.u, e.v, e.label.value(), e.weight);
    }
    out
}

/// Lower-bound annotation lines (`lb`/`aedge`), appendable to the graph text.
pub fn serialize_lower_bound_annotations(lb: &LowerBoundGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lb {}", lb.n);
    for (&edge, &path) in &lb.a_edge_path_index {
        let _ = writeln!(out, "aedge {edge} {path}");
    }
    out
}

/// Parses a combined document (graph plus `lb`/`aedge` lines) or a graph
/// with a separate annotation text, rebuilding the lower-bound view.
pub fn parse_lower_bound_document(text: &str) -> Result<LowerBoundGraph> {
    let (graph, rest) = parse_temporal_graph_partial(text)?;
    let mut n: Option<usize> = None;
    let mut a_edge_path_index = BTreeMap::new();
    for (lineno, keyword) in &rest {
        let raw = text.lines().nth(lineno - 1).unwrap_or("");
        let fields = parse_fields(raw);
        match keyword.as_str() {
            "lb" => n = Some(field(&fields, 1, *lineno, "n")?),
            "aedge" => {
                let edge: usize = field(&fields, 1, *lineno, "edge index")?;
                let path: usize = field(&fields, 2, *lineno, "path index")?;
                if edge >= graph.m() {
                    return Err(Error::Parse {
                        line: *lineno,
                        msg: format!("aedge index {edge} out of range"),
                    });
                }
                a_edge_path_index.insert(edge, path);
            }
            other => {
                return Err(Error::Parse {
                    line: *lineno,
                    msg: format!("unexpected record '{other}'"),
                })
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 1,
        msg: "missing lb annotation line".into(),
    })?;
    if graph.n() != 3 * n {
        return Err(Error::InvalidInput(format!(
            "annotation says n = {n} but the graph has {} vertices",
            graph.n()
        )));
    }
    Ok(LowerBoundGraph {
        graph,
        n,
        a_vertices: (0..n).collect(),
        h_vertices: (n..2 * n).collect(),
        m_vertices: (2 * n..3 * n).collect(),
        a_edge_path_index,
        epsilon_scaled: TimeLabel(1),
    })
}

/// Serializes a lower-bound construction as one combined document.
pub fn serialize_lower_bound_document(lb: &LowerBoundGraph) -> String {
    let mut out = serialize_temporal_graph(&lb.graph);
    out.push_str(&serialize_lower_bound_annotations(lb));
    out
}

pub fn serialize_dst(inst: &DstInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dst {}", inst.num_vertices);
    let _ = writeln!(out, "root {}", inst.root);
    for &t in &inst.terminals {
        let _ = writeln!(out, "t {t}");
    }
    for a in &inst.arcs {
        let _ = writeln!(out, "a {} {} {}", a.from, a.to, a.weight);
    }
    out
}

pub fn parse_dst(text: &str) -> Result<DstInstance> {
    let mut n: Option<usize> = None;
    let mut root: Option<usize> = None;
    let mut terminals = BTreeSet::new();
    let mut arcs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let fields = parse_fields(raw);
        if fields.is_empty() {
            continue;
        }
        match fields[0] {
            "dst" => n = Some(field(&fields, 1, lineno, "vertex count")?),
            "root" => root = Some(field(&fields, 1, lineno, "root")?),
            "t" => {
                terminals.insert(field::<usize>(&fields, 1, lineno, "terminal")?);
            }
            "a" => arcs.push(Arc {
                from: field(&fields, 1, lineno, "arc tail")?,
                to: field(&fields, 2, lineno, "arc head")?,
                weight: field(&fields, 3, lineno, "arc weight")?,
            }),
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unexpected record '{other}'"),
                })
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 1,
        msg: "missing dst header".into(),
    })?;
    let root = root.ok_or(Error::Parse {
        line: 1,
        msg: "missing root line".into(),
    })?;
    DstInstance::new(n, arcs, root, terminals)
}

pub fn serialize_dsf(inst: &DsfInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dsf {}", inst.num_vertices);
    for &(s, t) in &inst.demands {
        let _ = writeln!(out, "pair {s} {t}");
    }
    for a in &inst.arcs {
        let _ = writeln!(out, "a {} {} {}", a.from, a.to, a.weight);
    }
    out
}

pub fn parse_dsf(text: &str) -> Result<DsfInstance> {
    let mut n: Option<usize> = None;
    let mut demands = Vec::new();
    let mut arcs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let fields = parse_fields(raw);
        if fields.is_empty() {
            continue;
        }
        match fields[0] {
            "dsf" => n = Some(field(&fields, 1, lineno, "vertex count")?),
            "pair" => demands.push((
                field(&fields, 1, lineno, "demand source")?,
                field(&fields, 2, lineno, "demand target")?,
            )),
            "a" => arcs.push(Arc {
                from: field(&fields, 1, lineno, "arc tail")?,
                to: field(&fields, 2, lineno, "arc head")?,
                weight: field(&fields, 3, lineno, "arc weight")?,
            }),
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unexpected record '{other}'"),
                })
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 1,
        msg: "missing dsf header".into(),
    })?;
    DsfInstance::new(n, arcs, demands)
}

/// SLC format: `slc <k> <c>` then `rel <u> <w> <a> <b>` per allowed pair.
pub fn parse_slc(text: &str) -> Result<SlcInstance> {
    let mut kc: Option<(usize, usize)> = None;
    let mut relations: BTreeMap<(usize, usize), BTreeSet<(usize, usize)>> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let fields = parse_fields(raw);
        if fields.is_empty() {
            continue;
        }
        match fields[0] {
            "slc" => {
                kc = Some((
                    field(&fields, 1, lineno, "k")?,
                    field(&fields, 2, lineno, "color count")?,
                ))
            }
            "rel" => {
                let u: usize = field(&fields, 1, lineno, "u")?;
                let w: usize = field(&fields, 2, lineno, "w")?;
                let a: usize = field(&fields, 3, lineno, "color a")?;
                let b: usize = field(&fields, 4, lineno, "color b")?;
                relations.entry((u, w)).or_default().insert((a, b));
            }
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unexpected record '{other}'"),
                })
            }
        }
    }
    let (k, c) = kc.ok_or(Error::Parse {
        line: 1,
        msg: "missing slc header".into(),
    })?;
    SlcInstance::new(k, c, relations)
}

pub fn serialize_slc(inst: &SlcInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "slc {} {}", inst.k, inst.c);
    for (&(u, w), rel) in &inst.relations {
        for &(a, b) in rel {
            let _ = writeln!(out, "rel {u} {w} {a} {b}");
        }
    }
    out
}

/// ST(1,2) format: `st12 <n>`, `t <v>` terminals, `e <u> <v> <w>` edges.
pub fn parse_st12(text: &str) -> Result<SteinerInstance12> {
    let mut n: Option<usize> = None;
    let mut terminals = BTreeSet::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let fields = parse_fields(raw);
        if fields.is_empty() {
            continue;
        }
        match fields[0] {
            "st12" => n = Some(field(&fields, 1, lineno, "vertex count")?),
            "t" => {
                terminals.insert(field::<usize>(&fields, 1, lineno, "terminal")?);
            }
            "e" => edges.push((
                field(&fields, 1, lineno, "endpoint")?,
                field(&fields, 2, lineno, "endpoint")?,
                field(&fields, 3, lineno, "weight")?,
            )),
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unexpected record '{other}'"),
                })
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 1,
        msg: "missing st12 header".into(),
    })?;
    SteinerInstance12::new(n, edges, terminals)
}

pub fn serialize_st12(inst: &SteinerInstance12) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "st12 {}", inst.num_vertices);
    for &t in &inst.terminals {
        let _ = writeln!(out, "t {t}");
    }
    for &(u, v, w) in &inst.edges {
        let _ = writeln!(out, "e {u} {v} {w}");
    }
    out
}
