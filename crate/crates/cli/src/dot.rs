//! Graphviz export.

use std::fmt::Write as _;

use unicast_core::graph::{EdgeId, NodeId, UnicastInstance};
use unicast_core::netcode::{GlobalCodeTable, NetworkCode};
use unicast_core::CodingVector;

const PALETTE: [&str; 8] = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quoted(name: &str) -> String {
    format!("\"{}\"", escape(name))
}

/// Linear combination such as `x0+2x3`, or `0`.
pub fn combination(v: &CodingVector) -> String {
    let terms: Vec<String> = v
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| if c == 1 { format!("x{k}") } else { format!("{c}x{k}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// DOT text of the instance graph. Session endpoints are colored and tagged
/// `S<i>` / `T<i>`. With a code, each edge is labeled by what its copies
/// carry, one combination per time unit.
pub fn export(instance: &UnicastInstance, code: Option<(&NetworkCode, &GlobalCodeTable)>) -> String {
    let g = instance.graph();
    let mut tags: Vec<Vec<String>> = vec![Vec::new(); g.node_count()];
    let mut color: Vec<Option<&str>> = vec![None; g.node_count()];
    for (i, s) in instance.sessions().iter().enumerate() {
        let c = PALETTE[i % PALETTE.len()];
        for (v, tag) in [(s.source, format!("S{}", i + 1)), (s.terminal, format!("T{}", i + 1))] {
            tags[v.0].push(tag);
            color[v.0].get_or_insert(c);
        }
    }
    let mut out = String::from("digraph instance {\n  rankdir=LR;\n  node [shape=circle];\n");
    for v in g.nodes() {
        let NodeId(i) = v;
        match color[i] {
            Some(c) => {
                writeln!(
                    out,
                    "  {} [label=\"{}\\n{}\", style=filled, fillcolor=\"{c}\", fontcolor=white];",
                    quoted(g.name(v)),
                    escape(g.name(v)),
                    tags[i].join(",")
                )
                .unwrap();
            }
            None => writeln!(out, "  {};", quoted(g.name(v))).unwrap(),
        }
    }
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        let EdgeId(id) = e;
        let label = match code {
            None => format!("e{id}"),
            Some((code, table)) => {
                let t = code.t();
                let parts: Vec<String> = (0..t).map(|layer| combination(table.get(EdgeId(id * t + layer)))).collect();
                format!("e{id}: {}", parts.join(" | "))
            }
        };
        writeln!(out, "  {} -> {} [label={}];", quoted(g.name(u)), quoted(g.name(v)), quoted(&label)).unwrap();
    }
    out.push_str("}\n");
    out
}
