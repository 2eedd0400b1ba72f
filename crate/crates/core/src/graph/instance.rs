use std::ops::Range;

use thiserror::Error;

use super::{Dag, DagBuilder, EdgeId, Embedding, NodeId};

/// One source-terminal pair. `rate` is the number of unit-entropy source
/// symbols the source emits per time unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Session {
    pub source: NodeId,
    pub terminal: NodeId,
    pub rate: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("an instance needs at least one session")]
    NoSessions,
    #[error("session {0} has rate 0")]
    ZeroRate(usize),
    #[error("session {0} references a node outside the graph")]
    UnknownNode(usize),
    #[error("session {0} has the same source and terminal")]
    SourceIsTerminal(usize),
}

/// A multiple-unicast instance: a DAG and an indexed list of sessions.
///
/// Sessions are 0-indexed in the API and 1-indexed in files and reports.
/// Source symbols are numbered globally: session `i` owns the contiguous
/// range [`UnicastInstance::symbols`]`(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnicastInstance {
    graph: Dag,
    sessions: Vec<Session>,
}

/// How a node of a normalized instance relates to the input instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeOrigin {
    Original(NodeId),
    /// Added source or terminal, wired to `attached_to` by parallel edges.
    Artificial {
        attached_to: NodeId,
    },
}

impl NodeOrigin {
    pub fn cluster(self) -> NodeId {
        match self {
            NodeOrigin::Original(v) => v,
            NodeOrigin::Artificial { attached_to } => attached_to,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub instance: UnicastInstance,
    /// Indexed by node id of the normalized instance.
    pub node_origin: Vec<NodeOrigin>,
    /// Original session index of every normalized session.
    pub session_origin: Vec<usize>,
}

impl Normalized {
    /// Embedding of the input graph into the normalized one. Original edges
    /// keep their ids; only valid for lifting codes when no rate was split.
    pub fn embedding(&self, original: &UnicastInstance) -> Embedding {
        Embedding {
            edge_image: original.graph().edge_ids().map(Some).collect(),
            node_cluster: self.node_origin.iter().map(|o| o.cluster()).collect(),
        }
    }
}

/// Copy of an instance in which every edge is replaced by `t` parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeExpansion {
    pub instance: UnicastInstance,
    pub t: usize,
    /// `(original edge, layer)` for each expanded edge, layers numbered from 0.
    pub lineage: Vec<(EdgeId, usize)>,
}

impl TimeExpansion {
    /// Expanded edge id of copy `layer` of original edge `e`.
    pub fn copy_of(&self, e: EdgeId, layer: usize) -> EdgeId {
        EdgeId(e.0 * self.t + layer)
    }

    /// Expanded symbol index of unit source `unit` of `session` at `layer`.
    pub fn symbol(&self, session: usize, unit: usize, layer: usize) -> usize {
        let rate = self.instance.sessions()[session].rate / self.t;
        self.instance.symbols(session).start + layer * rate + unit
    }
}

impl UnicastInstance {
    pub fn new(graph: Dag, sessions: Vec<Session>) -> Result<Self, InstanceError> {
        if sessions.is_empty() {
            return Err(InstanceError::NoSessions);
        }
        for (i, s) in sessions.iter().enumerate() {
            if s.rate == 0 {
                return Err(InstanceError::ZeroRate(i + 1));
            }
            if s.source.0 >= graph.node_count() || s.terminal.0 >= graph.node_count() {
                return Err(InstanceError::UnknownNode(i + 1));
            }
            if s.source == s.terminal {
                return Err(InstanceError::SourceIsTerminal(i + 1));
            }
        }
        Ok(Self { graph, sessions })
    }

    pub fn graph(&self) -> &Dag {
        &self.graph
    }

    pub fn sessions(&self) -> &[Session] {
        &self.sessions
    }

    pub fn session_count(&self) -> usize {
        self.sessions.len()
    }

    /// Total number of unit-rate source symbols.
    pub fn symbol_count(&self) -> usize {
        self.sessions.iter().map(|s| s.rate).sum()
    }

    pub fn symbols(&self, session: usize) -> Range<usize> {
        let start: usize = self.sessions[..session].iter().map(|s| s.rate).sum();
        start..start + self.sessions[session].rate
    }

    /// Session owning symbol `k`.
    pub fn symbol_session(&self, k: usize) -> usize {
        let mut acc = 0;
        for (i, s) in self.sessions.iter().enumerate() {
            acc += s.rate;
            if k < acc {
                return i;
            }
        }
        panic!("symbol {k} out of range");
    }

    /// Symbols observed at node `v`, ascending.
    pub fn symbols_at(&self, v: NodeId) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, s) in self.sessions.iter().enumerate() {
            if s.source == v {
                out.extend(self.symbols(i));
            }
        }
        out
    }

    pub fn is_endpoint(&self, v: NodeId) -> bool {
        self.sessions.iter().any(|s| s.source == v || s.terminal == v)
    }

    /// Nodes that are neither a source nor a terminal of any session.
    pub fn internal_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.graph.nodes().filter(move |&v| !self.is_endpoint(v))
    }

    /// No source has incoming edges and no terminal has outgoing edges.
    pub fn is_normalized(&self) -> bool {
        self.sessions
            .iter()
            .all(|s| self.graph.in_edges(s.source).is_empty() && self.graph.out_edges(s.terminal).is_empty())
    }

    /// Largest total degree over internal nodes (0 when there are none).
    pub fn max_internal_degree(&self) -> usize {
        self.internal_nodes().map(|v| self.graph.degree(v)).max().unwrap_or(0)
    }

    /// Same graph, sessions reordered so that new session `k` is old session `order[k]`.
    pub fn permute_sessions(&self, order: &[usize]) -> UnicastInstance {
        assert_eq!(order.len(), self.sessions.len());
        let sessions = order.iter().map(|&i| self.sessions[i]).collect();
        UnicastInstance { graph: self.graph.clone(), sessions }
    }

    /// Same sessions on an edge subgraph (see [`Dag::edge_subgraph`]).
    pub fn edge_subgraph(&self, keep: &[bool]) -> (UnicastInstance, Vec<EdgeId>) {
        let (graph, map) = self.graph.edge_subgraph(keep);
        (UnicastInstance { graph, sessions: self.sessions.clone() }, map)
    }

    pub fn with_sessions(&self, sessions: Vec<Session>) -> Result<UnicastInstance, InstanceError> {
        UnicastInstance::new(self.graph.clone(), sessions)
    }

    fn builder(&self) -> DagBuilder {
        let mut b = DagBuilder::new();
        for v in self.graph.nodes() {
            b.node(self.graph.name(v));
        }
        for e in self.graph.edge_ids() {
            let (u, v) = self.graph.endpoints(e);
            b.edge(u, v);
        }
        b
    }

    /// Moves every source off nodes with incoming edges and every terminal off
    /// nodes with outgoing edges by attaching a fresh node through `rate`
    /// parallel edges. With `split_rates`, a session of rate `r > 1` becomes
    /// `r` collocated unit-rate sessions: the first keeps its index, the
    /// others are appended after all existing sessions.
    pub fn normalize(&self, split_rates: bool) -> Normalized {
        let mut b = self.builder();
        let mut node_origin: Vec<NodeOrigin> = self.graph.nodes().map(NodeOrigin::Original).collect();
        let mut sessions = self.sessions.clone();
        for (i, s) in sessions.iter_mut().enumerate() {
            if !self.graph.in_edges(s.source).is_empty() {
                let fresh = b.fresh_node(&format!("{}.src{}", self.graph.name(s.source), i + 1));
                node_origin.push(NodeOrigin::Artificial { attached_to: s.source });
                for _ in 0..s.rate {
                    b.edge(fresh, s.source);
                }
                s.source = fresh;
            }
            if !self.graph.out_edges(s.terminal).is_empty() {
                let fresh = b.fresh_node(&format!("{}.dst{}", self.graph.name(s.terminal), i + 1));
                node_origin.push(NodeOrigin::Artificial { attached_to: s.terminal });
                for _ in 0..s.rate {
                    b.edge(s.terminal, fresh);
                }
                s.terminal = fresh;
            }
        }
        let mut session_origin: Vec<usize> = (0..sessions.len()).collect();
        if split_rates {
            let mut extra = Vec::new();
            for (i, s) in sessions.iter_mut().enumerate() {
                for _ in 1..s.rate {
                    extra.push((i, Session { rate: 1, ..*s }));
                }
                s.rate = 1;
            }
            for (i, s) in extra {
                session_origin.push(i);
                sessions.push(s);
            }
        }
        let graph = b.build().expect("attaching sources and sinks keeps the graph acyclic");
        Normalized { instance: UnicastInstance { graph, sessions }, node_origin, session_origin }
    }

    /// Gives session `i` a private source with `multiplicity[i]` parallel
    /// edges into its old source, and a private terminal fed by as many
    /// parallel edges from its old terminal. The connectivity of session `i`
    /// becomes `min(multiplicity[i], old connectivity)`.
    pub fn isolate_endpoints(&self, multiplicity: &[usize]) -> (UnicastInstance, Embedding) {
        assert_eq!(multiplicity.len(), self.sessions.len());
        let mut b = self.builder();
        let mut cluster: Vec<NodeId> = self.graph.nodes().collect();
        let mut sessions = self.sessions.clone();
        for (i, s) in sessions.iter_mut().enumerate() {
            let src = b.fresh_node(&format!("{}.in{}", self.graph.name(s.source), i + 1));
            cluster.push(s.source);
            let dst = b.fresh_node(&format!("{}.out{}", self.graph.name(s.terminal), i + 1));
            cluster.push(s.terminal);
            for _ in 0..multiplicity[i] {
                b.edge(src, s.source);
            }
            for _ in 0..multiplicity[i] {
                b.edge(s.terminal, dst);
            }
            s.source = src;
            s.terminal = dst;
        }
        let graph = b.build().expect("private endpoints keep the graph acyclic");
        let embedding = Embedding { edge_image: self.graph.edge_ids().map(Some).collect(), node_cluster: cluster };
        (UnicastInstance { graph, sessions }, embedding)
    }

    /// Replaces every edge by `t` parallel copies (copy `layer` of edge `e`
    /// gets id `e * t + layer`) and multiplies every rate by `t`.
    pub fn expand_time(&self, t: usize) -> TimeExpansion {
        assert!(t >= 1, "time expansion needs t >= 1");
        let mut edges = Vec::with_capacity(self.graph.edge_count() * t);
        let mut lineage = Vec::with_capacity(self.graph.edge_count() * t);
        for e in self.graph.edge_ids() {
            for layer in 0..t {
                edges.push(self.graph.endpoints(e));
                lineage.push((e, layer));
            }
        }
        let graph =
            Dag::from_parts(self.graph.names().to_vec(), edges).expect("parallel copies keep the graph acyclic");
        let sessions = self.sessions.iter().map(|s| Session { rate: s.rate * t, ..*s }).collect();
        TimeExpansion { instance: UnicastInstance { graph, sessions }, t, lineage }
    }
}
