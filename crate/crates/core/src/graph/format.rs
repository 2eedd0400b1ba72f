//! Line-based instance files.
//!
//! ```text
//! # comment
//! session <index> <source> <terminal> [rate=<r>]
//! edge <tail> <head> [cap=<c>]
//! ```
//!
//! Node names are arbitrary whitespace-free tokens, numbered by first
//! appearance. `cap=c` expands to `c` parallel unit edges. Session indices
//! start at 1 and must be contiguous.

use std::fmt::{self, Write as _};

use thiserror::Error;

use super::{DagBuilder, GraphError, NodeId, Session, UnicastInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number; 0 for whole-file problems.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("expected {0}")]
    Missing(&'static str),
    #[error("unexpected token `{0}`")]
    Unexpected(String),
    #[error("invalid number `{0}`")]
    BadNumber(String),
    #[error("{0} must be at least 1")]
    Zero(&'static str),
    #[error("duplicate session index {0}")]
    DuplicateSession(usize),
    #[error("session indices must be 1..={0} without gaps")]
    SessionGap(usize),
    #[error("unknown node `{0}` in session line")]
    UnknownNode(String),
    #[error("session source and terminal are the same node")]
    SourceIsTerminal,
    #[error("no sessions")]
    NoSessions,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

struct PendingSession {
    line: usize,
    index: usize,
    source: NodeId,
    terminal: NodeId,
    rate: usize,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn parse_count(line: usize, token: &str, key: &'static str) -> Result<usize, ParseError> {
    let value = token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| err(line, ParseErrorKind::Unexpected(token.to_string())))?;
    let n: usize = value.parse().map_err(|_| err(line, ParseErrorKind::BadNumber(value.to_string())))?;
    if n == 0 {
        return Err(err(line, ParseErrorKind::Zero(key)));
    }
    Ok(n)
}

pub fn parse_instance(text: &str) -> Result<UnicastInstance, ParseError> {
    let mut builder = DagBuilder::new();
    let mut in_edge_line = Vec::new();
    let mut pending: Vec<PendingSession> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(directive) = tokens.next() else { continue };
        match directive {
            "edge" => {
                let u = tokens.next().ok_or_else(|| err(line, ParseErrorKind::Missing("edge tail")))?;
                let v = tokens.next().ok_or_else(|| err(line, ParseErrorKind::Missing("edge head")))?;
                let cap = match tokens.next() {
                    Some(tok) => parse_count(line, tok, "cap")?,
                    None => 1,
                };
                if let Some(extra) = tokens.next() {
                    return Err(err(line, ParseErrorKind::Unexpected(extra.to_string())));
                }
                let (u, v) = (builder.node(u), builder.node(v));
                in_edge_line.resize(builder.node_count(), false);
                in_edge_line[u.0] = true;
                in_edge_line[v.0] = true;
                for _ in 0..cap {
                    builder.edge(u, v);
                }
            }
            "session" => {
                let index = tokens.next().ok_or_else(|| err(line, ParseErrorKind::Missing("session index")))?;
                let index: usize =
                    index.parse().map_err(|_| err(line, ParseErrorKind::BadNumber(index.to_string())))?;
                if index == 0 {
                    return Err(err(line, ParseErrorKind::Zero("session index")));
                }
                let s = tokens.next().ok_or_else(|| err(line, ParseErrorKind::Missing("session source")))?;
                let t = tokens.next().ok_or_else(|| err(line, ParseErrorKind::Missing("session terminal")))?;
                let rate = match tokens.next() {
                    Some(tok) => parse_count(line, tok, "rate")?,
                    None => 1,
                };
                if let Some(extra) = tokens.next() {
                    return Err(err(line, ParseErrorKind::Unexpected(extra.to_string())));
                }
                if pending.iter().any(|p| p.index == index) {
                    return Err(err(line, ParseErrorKind::DuplicateSession(index)));
                }
                if s == t {
                    return Err(err(line, ParseErrorKind::SourceIsTerminal));
                }
                let (source, terminal) = (builder.node(s), builder.node(t));
                pending.push(PendingSession { line, index, source, terminal, rate });
            }
            other => return Err(err(line, ParseErrorKind::UnknownDirective(other.to_string()))),
        }
    }

    if pending.is_empty() {
        return Err(err(0, ParseErrorKind::NoSessions));
    }
    in_edge_line.resize(builder.node_count(), false);
    for p in &pending {
        for node in [p.source, p.terminal] {
            if !in_edge_line[node.0] {
                let name = builder.name(node).to_string();
                return Err(err(p.line, ParseErrorKind::UnknownNode(name)));
            }
        }
    }
    pending.sort_by_key(|p| p.index);
    if pending.last().map(|p| p.index) != Some(pending.len()) {
        let gap = pending.iter().enumerate().find(|(i, p)| p.index != i + 1).map(|(_, p)| p.line).unwrap_or(0);
        return Err(err(gap, ParseErrorKind::SessionGap(pending.len())));
    }
    let sessions = pending.iter().map(|p| Session { source: p.source, terminal: p.terminal, rate: p.rate }).collect();
    let graph = builder.build().map_err(|e| err(0, e.into()))?;
    UnicastInstance::new(graph, sessions).map_err(|_| err(0, ParseErrorKind::NoSessions))
}

impl fmt::Display for UnicastInstance {
    /// Canonical form: sessions by index, then edges by id, defaults omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.graph();
        let mut out = String::new();
        for (i, s) in self.sessions().iter().enumerate() {
            write!(out, "session {} {} {}", i + 1, g.name(s.source), g.name(s.terminal))?;
            if s.rate != 1 {
                write!(out, " rate={}", s.rate)?;
            }
            out.push('\n');
        }
        for e in g.edge_ids() {
            let (u, v) = g.endpoints(e);
            writeln!(out, "edge {} {}", g.name(u), g.name(v))?;
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeId;

    #[test]
    fn smallest_valid_instance() {
        let inst = parse_instance("edge a b\nsession 1 a b\n").unwrap();
        assert_eq!(inst.graph().edge_count(), 1);
        assert_eq!(inst.session_count(), 1);
        assert_eq!(inst.sessions()[0].rate, 1);
    }

    #[test]
    fn two_cycle_is_rejected() {
        let e = parse_instance("edge a b\nedge b a\nsession 1 a b\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Graph(GraphError::Cycle(_))));
    }

    #[test]
    fn capacity_expands_to_parallel_edges() {
        let inst = parse_instance("session 1 a b\nedge a b cap=3\n").unwrap();
        assert_eq!(inst.graph().edge_count(), 3);
        assert!(inst.graph().edge_ids().all(|e| inst.graph().endpoints(e) == (NodeId(0), NodeId(1))));
        assert_eq!(inst.to_string(), "session 1 a b\nedge a b\nedge a b\nedge a b\n");
        assert_eq!(inst.graph().out_edges(NodeId(0)), &[EdgeId(0), EdgeId(1), EdgeId(2)]);
    }

    #[test]
    fn syntax_error_reports_line() {
        let e = parse_instance("# header\n\nedge a\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_instance("session 1 a b\nedge a b cap=x\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, ParseErrorKind::Unexpected(_) | ParseErrorKind::BadNumber(_)));
        let e = parse_instance("session 1 a b\nnode a\n").unwrap_err();
        assert_eq!(e, err(2, ParseErrorKind::UnknownDirective("node".into())));
    }

    #[test]
    fn duplicate_and_gapped_sessions() {
        let e = parse_instance("edge a b\nsession 1 a b\nsession 1 a b\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateSession(1));
        assert_eq!(e.line, 3);
        let e = parse_instance("edge a b\nsession 2 a b\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::SessionGap(1));
    }

    #[test]
    fn session_node_must_appear_on_an_edge() {
        let e = parse_instance("edge a b\nsession 1 a z\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownNode("z".into()));
        assert_eq!(e.line, 2);
    }

    #[test]
    fn comments_and_rates() {
        let text = "# two sessions\nsession 2 c d   # second\nsession 1 a b rate=2\nedge a b\nedge a b\nedge c d\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.sessions()[0].rate, 2);
        assert_eq!(inst.to_string(), "session 1 a b rate=2\nsession 2 c d\nedge a b\nedge a b\nedge c d\n");
    }

    #[test]
    fn canonical_text_round_trips() {
        let text = "session 1 s1 t1\nsession 2 s2 t2 rate=3\nedge s1 x\nedge s2 x\nedge x t1\nedge x t2\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.to_string(), text);
        assert_eq!(parse_instance(&inst.to_string()).unwrap(), inst);
    }
}
