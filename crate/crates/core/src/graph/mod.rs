//! Directed acyclic multigraphs with unit-capacity edges, and the
//! multiple-unicast instance model built on top of them.
//!
//! Nodes and edges are dense integer ids. Parallel edges are distinct edges.
//! Every ordering derived from a [`Dag`] (topological order, adjacency
//! lists) is deterministic: ties are broken by the smallest id.

mod embedding;
mod format;
mod instance;

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;

use thiserror::Error;

pub use embedding::Embedding;
pub use format::{parse_instance, ParseError, ParseErrorKind};
pub use instance::{InstanceError, NodeOrigin, Normalized, Session, TimeExpansion, UnicastInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("directed cycle through node `{0}`")]
    Cycle(String),
    #[error("edge endpoint {0} out of range")]
    NodeOutOfRange(usize),
    #[error("duplicate node name `{0}`")]
    DuplicateName(String),
}

/// Incrementally collects named nodes and edges before validation.
#[derive(Debug, Clone, Default)]
pub struct DagBuilder {
    names: Vec<String>,
    lookup: HashMap<String, NodeId>,
    edges: Vec<(NodeId, NodeId)>,
}

impl DagBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id of `name`, creating the node on first use.
    pub fn node(&mut self, name: &str) -> NodeId {
        if let Some(&id) = self.lookup.get(name) {
            return id;
        }
        let id = NodeId(self.names.len());
        self.names.push(name.to_string());
        self.lookup.insert(name.to_string(), id);
        id
    }

    pub fn find(&self, name: &str) -> Option<NodeId> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.names[id.0]
    }

    /// Adds a node with a fresh name derived from `base`.
    pub fn fresh_node(&mut self, base: &str) -> NodeId {
        let mut candidate = base.to_string();
        let mut k = 1;
        while self.lookup.contains_key(&candidate) {
            candidate = format!("{base}{k}");
            k += 1;
        }
        self.node(&candidate)
    }

    pub fn edge(&mut self, tail: NodeId, head: NodeId) -> EdgeId {
        self.edges.push((tail, head));
        EdgeId(self.edges.len() - 1)
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn build(self) -> Result<Dag, GraphError> {
        Dag::from_parts(self.names, self.edges)
    }
}

/// Immutable directed acyclic multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    names: Vec<String>,
    edges: Vec<(NodeId, NodeId)>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    topo: Vec<NodeId>,
    rank: Vec<usize>,
}

impl Dag {
    pub fn from_parts(names: Vec<String>, edges: Vec<(NodeId, NodeId)>) -> Result<Self, GraphError> {
        let n = names.len();
        let mut seen = HashMap::with_capacity(n);
        for name in &names {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(GraphError::DuplicateName(name.clone()));
            }
        }
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w.0 >= n {
                    return Err(GraphError::NodeOutOfRange(w.0));
                }
            }
            out_edges[u.0].push(EdgeId(id));
            in_edges[v.0].push(EdgeId(id));
        }

        // Kahn's algorithm, smallest ready node first.
        let mut indegree: Vec<usize> = in_edges.iter().map(Vec::len).collect();
        let mut ready: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| indegree[v] == 0).map(Reverse).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(Reverse(v)) = ready.pop() {
            topo.push(NodeId(v));
            for &e in &out_edges[v] {
                let h = edges[e.0].1 .0;
                indegree[h] -= 1;
                if indegree[h] == 0 {
                    ready.push(Reverse(h));
                }
            }
        }
        if topo.len() < n {
            let stuck = (0..n).find(|&v| indegree[v] > 0).unwrap_or(0);
            return Err(GraphError::Cycle(names[stuck].clone()));
        }
        let mut rank = vec![0; n];
        for (i, v) in topo.iter().enumerate() {
            rank[v.0] = i;
        }
        Ok(Self { names, edges, out_edges, in_edges, topo, rank })
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.names.len()).map(NodeId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    #[inline]
    pub fn tail(&self, e: EdgeId) -> NodeId {
        self.edges[e.0].0
    }

    #[inline]
    pub fn head(&self, e: EdgeId) -> NodeId {
        self.edges[e.0].1
    }

    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (NodeId, NodeId) {
        self.edges[e.0]
    }

    #[inline]
    pub fn out_edges(&self, v: NodeId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    #[inline]
    pub fn in_edges(&self, v: NodeId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.in_edges[v.0].len() + self.out_edges[v.0].len()
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<NodeId> {
        self.names.iter().position(|n| n == name).map(NodeId)
    }

    /// Nodes in topological order (smallest id among ready nodes first).
    pub fn topological_order(&self) -> &[NodeId] {
        &self.topo
    }

    /// Position of `v` in [`Dag::topological_order`].
    pub fn rank(&self, v: NodeId) -> usize {
        self.rank[v.0]
    }

    /// Edges sorted by the topological rank of their tail, then by id. Every
    /// edge appears after all edges entering its tail.
    pub fn edge_order(&self) -> Vec<EdgeId> {
        let mut order: Vec<EdgeId> = self.edge_ids().collect();
        order.sort_by_key(|&e| (self.rank[self.tail(e).0], e.0));
        order
    }

    /// Copy of the graph containing only the edges with `keep[e] == true`.
    /// Node ids are unchanged; the returned vector maps new edge ids to old.
    pub fn edge_subgraph(&self, keep: &[bool]) -> (Dag, Vec<EdgeId>) {
        let kept: Vec<EdgeId> = self.edge_ids().filter(|e| keep[e.0]).collect();
        let edges = kept.iter().map(|&e| self.edges[e.0]).collect();
        let dag = Dag::from_parts(self.names.clone(), edges).expect("edge subgraph of a DAG is a DAG");
        (dag, kept)
    }

    /// Whether `to` is reachable from `from` along directed edges.
    pub fn reaches(&self, from: NodeId, to: NodeId) -> bool {
        if from == to {
            return true;
        }
        let mut seen = vec![false; self.node_count()];
        let mut stack = vec![from];
        seen[from.0] = true;
        while let Some(v) = stack.pop() {
            for &e in self.out_edges(v) {
                let h = self.head(e);
                if h == to {
                    return true;
                }
                if !seen[h.0] {
                    seen[h.0] = true;
                    stack.push(h);
                }
            }
        }
        false
    }
}

/// An ordered edge sequence forming a directed walk in some [`Dag`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Path {
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn new(edges: Vec<EdgeId>) -> Self {
        Self { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    /// Whether consecutive edges chain head-to-tail in `dag`.
    pub fn is_valid_in(&self, dag: &Dag) -> bool {
        self.edges.iter().all(|e| e.0 < dag.edge_count())
            && self.edges.windows(2).all(|w| dag.head(w[0]) == dag.tail(w[1]))
    }

    pub fn start(&self, dag: &Dag) -> Option<NodeId> {
        self.edges.first().map(|&e| dag.tail(e))
    }

    pub fn end(&self, dag: &Dag) -> Option<NodeId> {
        self.edges.last().map(|&e| dag.head(e))
    }

    /// Node sequence visited by the path, starting with the tail of the first edge.
    pub fn nodes(&self, dag: &Dag) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.edges.len() + 1);
        if let Some(&first) = self.edges.first() {
            out.push(dag.tail(first));
        }
        out.extend(self.edges.iter().map(|&e| dag.head(e)));
        out
    }
}
