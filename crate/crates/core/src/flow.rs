//! Unit-capacity max-flow, edge-disjoint path extraction, connectivity
//! levels and cut-set bound witnesses.
//!
//! All flows are computed with BFS augmenting paths. Residual arcs out of a
//! node are explored by (neighbor id, edge id), so every result is a
//! deterministic function of the input.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::graph::{Dag, EdgeId, NodeId, Path, UnicastInstance};

/// Internal-node limit for exhaustive cut enumeration.
pub const CUT_ENUMERATION_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("requested {requested} edge-disjoint paths but the max-flow is {available}")]
    TooManyPaths { requested: usize, available: usize },
    #[error("{nodes} free nodes exceed the exhaustive enumeration limit of {limit}")]
    TooLarge { nodes: usize, limit: usize },
}

/// Per-session max-flow values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectivityVector(pub Vec<usize>);

impl ConnectivityVector {
    pub fn levels(&self) -> &[usize] {
        &self.0
    }

    /// Whether some component of `self` is strictly smaller than in `other`.
    pub fn is_reduced_from(&self, other: &ConnectivityVector) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a < b)
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &[usize]) -> bool {
        self.0.len() == other.len() && self.0.iter().zip(other).all(|(a, b)| a >= b)
    }
}

impl fmt::Display for ConnectivityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Edge-disjoint paths for one session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSet {
    pub session: usize,
    pub paths: Vec<Path>,
}

/// A node set whose out-cut is too small for the sessions it separates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutWitness {
    /// Source side of the cut, ascending.
    pub source_side: Vec<NodeId>,
    pub cut_edges: Vec<EdgeId>,
    /// Sessions with source inside and terminal outside, ascending.
    pub separated: Vec<usize>,
    pub capacity: usize,
    pub required_rate: usize,
}

struct Residual {
    /// Per node: (neighbor, edge, forward) sorted by (neighbor, edge).
    arcs: Vec<Vec<(NodeId, EdgeId, bool)>>,
}

impl Residual {
    fn new(dag: &Dag, usable: Option<&[bool]>) -> Self {
        let mut arcs = vec![Vec::new(); dag.node_count()];
        for e in dag.edge_ids() {
            if usable.is_some_and(|u| !u[e.0]) {
                continue;
            }
            let (u, v) = dag.endpoints(e);
            arcs[u.0].push((v, e, true));
            arcs[v.0].push((u, e, false));
        }
        for list in &mut arcs {
            list.sort_by_key(|&(n, e, fwd)| (n, e, !fwd));
        }
        Self { arcs }
    }
}

/// Result of a flow computation between node sets.
#[derive(Debug, Clone)]
pub(crate) struct Flow {
    pub value: usize,
    pub on_edge: Vec<bool>,
    /// Nodes reachable from the sources in the final residual graph.
    pub reachable: Vec<bool>,
}

/// Max-flow from `sources` to `sinks` over the edges allowed by `usable`,
/// stopping once `limit` units are routed.
pub(crate) fn flow_between(
    dag: &Dag,
    sources: &[NodeId],
    sinks: &[NodeId],
    usable: Option<&[bool]>,
    limit: usize,
) -> Flow {
    let n = dag.node_count();
    let residual = Residual::new(dag, usable);
    let mut on_edge = vec![false; dag.edge_count()];
    let mut is_sink = vec![false; n];
    for &t in sinks {
        is_sink[t.0] = true;
    }
    let mut starts: Vec<NodeId> = sources.to_vec();
    starts.sort();
    starts.dedup();
    let mut value = 0;
    loop {
        let mut parent: Vec<Option<(NodeId, EdgeId)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &s in &starts {
            seen[s.0] = true;
            queue.push_back(s);
        }
        let mut reached = None;
        if value < limit {
            'bfs: while let Some(v) = queue.pop_front() {
                for &(w, e, forward) in &residual.arcs[v.0] {
                    if seen[w.0] || on_edge[e.0] != !forward {
                        continue;
                    }
                    seen[w.0] = true;
                    parent[w.0] = Some((v, e));
                    if is_sink[w.0] {
                        reached = Some(w);
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
        } else {
            // Only the reachable set is needed.
            while let Some(v) = queue.pop_front() {
                for &(w, e, forward) in &residual.arcs[v.0] {
                    if !seen[w.0] && on_edge[e.0] == !forward {
                        seen[w.0] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        match reached {
            Some(mut w) => {
                while let Some((v, e)) = parent[w.0] {
                    on_edge[e.0] = !on_edge[e.0];
                    w = v;
                }
                value += 1;
            }
            None => return Flow { value, on_edge, reachable: seen },
        }
    }
}

fn session_flow(instance: &UnicastInstance, session: usize, usable: Option<&[bool]>, limit: usize) -> Flow {
    let s = instance.sessions()[session];
    flow_between(instance.graph(), &[s.source], &[s.terminal], usable, limit)
}

pub fn max_flow(instance: &UnicastInstance, session: usize) -> usize {
    session_flow(instance, session, None, usize::MAX).value
}

/// Max-flow of `session` using only edges with `usable[e] == true`.
pub fn max_flow_restricted(instance: &UnicastInstance, session: usize, usable: &[bool]) -> usize {
    session_flow(instance, session, Some(usable), usize::MAX).value
}

pub fn connectivity_level(instance: &UnicastInstance) -> ConnectivityVector {
    ConnectivityVector((0..instance.session_count()).map(|i| max_flow(instance, i)).collect())
}

pub fn connectivity_level_restricted(instance: &UnicastInstance, usable: &[bool]) -> ConnectivityVector {
    ConnectivityVector((0..instance.session_count()).map(|i| max_flow_restricted(instance, i, usable)).collect())
}

/// Splits an integral unit flow into source-to-sink paths, always leaving a
/// node through its smallest unused flow edge.
fn decompose(dag: &Dag, from: NodeId, to: NodeId, on_edge: &[bool], count: usize) -> Vec<Path> {
    let mut used = vec![false; dag.edge_count()];
    let mut paths = Vec::with_capacity(count);
    for _ in 0..count {
        let mut edges = Vec::new();
        let mut v = from;
        while v != to {
            let e = *dag.out_edges(v).iter().find(|e| on_edge[e.0] && !used[e.0]).expect("flow conservation");
            used[e.0] = true;
            edges.push(e);
            v = dag.head(e);
        }
        paths.push(Path::new(edges));
    }
    paths
}

/// `k` pairwise edge-disjoint paths for `session`.
pub fn edge_disjoint_paths(instance: &UnicastInstance, session: usize, k: usize) -> Result<PathSet, FlowError> {
    edge_disjoint_paths_restricted(instance, session, k, None)
}

pub fn edge_disjoint_paths_restricted(
    instance: &UnicastInstance,
    session: usize,
    k: usize,
    usable: Option<&[bool]>,
) -> Result<PathSet, FlowError> {
    let flow = session_flow(instance, session, usable, k);
    if flow.value < k {
        return Err(FlowError::TooManyPaths { requested: k, available: flow.value });
    }
    let s = instance.sessions()[session];
    let paths = decompose(instance.graph(), s.source, s.terminal, &flow.on_edge, k);
    Ok(PathSet { session, paths })
}

/// Capacity of the out-cut of `in_s` and the sessions it separates.
pub fn cut_capacity(instance: &UnicastInstance, in_s: &[bool]) -> (usize, Vec<usize>) {
    let g = instance.graph();
    let capacity = g.edge_ids().filter(|&e| in_s[g.tail(e).0] && !in_s[g.head(e).0]).count();
    let separated = instance
        .sessions()
        .iter()
        .enumerate()
        .filter(|(_, s)| in_s[s.source.0] && !in_s[s.terminal.0])
        .map(|(i, _)| i)
        .collect();
    (capacity, separated)
}

fn witness(instance: &UnicastInstance, in_s: &[bool]) -> CutWitness {
    let g = instance.graph();
    let (capacity, separated) = cut_capacity(instance, in_s);
    let required_rate = separated.iter().map(|&i| instance.sessions()[i].rate).sum();
    CutWitness {
        source_side: g.nodes().filter(|v| in_s[v.0]).collect(),
        cut_edges: g.edge_ids().filter(|&e| in_s[g.tail(e).0] && !in_s[g.head(e).0]).collect(),
        separated,
        capacity,
        required_rate,
    }
}

/// Endpoints of the sessions in `mask`, or `None` if a node is both a
/// selected source and a selected terminal (no cut can separate them).
fn subset_endpoints(instance: &UnicastInstance, mask: u64) -> Option<(Vec<NodeId>, Vec<NodeId>, usize)> {
    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    let mut rate = 0;
    for (i, s) in instance.sessions().iter().enumerate() {
        if mask >> i & 1 == 1 {
            sources.push(s.source);
            sinks.push(s.terminal);
            rate += s.rate;
        }
    }
    if sources.iter().any(|s| sinks.contains(s)) {
        return None;
    }
    Some((sources, sinks, rate))
}

fn check_size(instance: &UnicastInstance) -> Result<(), FlowError> {
    let internal = instance.internal_nodes().count();
    if internal > CUT_ENUMERATION_LIMIT {
        return Err(FlowError::TooLarge { nodes: internal, limit: CUT_ENUMERATION_LIMIT });
    }
    if instance.session_count() > 16 {
        return Err(FlowError::TooLarge { nodes: instance.session_count(), limit: 16 });
    }
    Ok(())
}

/// Searches for a cut-set bound violation.
///
/// Session subsets are visited in increasing bitmask order (session 1 is the
/// lowest bit). For each subset the minimum cut between its sources and its
/// terminals is computed by max-flow; the first subset whose minimum cut is
/// below its total rate yields the witness, with the source side taken as
/// the residual-reachable set.
pub fn cutset_infeasible(instance: &UnicastInstance) -> Result<Option<CutWitness>, FlowError> {
    check_size(instance)?;
    for mask in 1u64..1 << instance.session_count() {
        let Some((sources, sinks, rate)) = subset_endpoints(instance, mask) else { continue };
        let flow = flow_between(instance.graph(), &sources, &sinks, None, rate);
        if flow.value < rate {
            return Ok(Some(witness(instance, &flow.reachable)));
        }
    }
    Ok(None)
}

/// Exhaustive counterpart of [`cutset_infeasible`]: for each session subset
/// (same order) enumerates every node set containing the subset's sources
/// and none of its terminals, and keeps the smallest out-cut (first in
/// enumeration order among ties). Returns the first subset whose smallest cut
/// is below the subset's rate.
pub fn cutset_exhaustive(instance: &UnicastInstance) -> Result<Option<CutWitness>, FlowError> {
    check_size(instance)?;
    let g = instance.graph();
    for mask in 1u64..1 << instance.session_count() {
        let Some((sources, sinks, rate)) = subset_endpoints(instance, mask) else { continue };
        let free: Vec<NodeId> = g.nodes().filter(|v| !sources.contains(v) && !sinks.contains(v)).collect();
        if free.len() > CUT_ENUMERATION_LIMIT {
            return Err(FlowError::TooLarge { nodes: free.len(), limit: CUT_ENUMERATION_LIMIT });
        }
        let mut in_s = vec![false; g.node_count()];
        for s in &sources {
            in_s[s.0] = true;
        }
        let mut best: Option<(usize, Vec<bool>)> = None;
        for bits in 0u64..1 << free.len() {
            for (k, v) in free.iter().enumerate() {
                in_s[v.0] = bits >> k & 1 == 1;
            }
            let (capacity, _) = cut_capacity(instance, &in_s);
            if best.as_ref().is_none_or(|(c, _)| capacity < *c) {
                best = Some((capacity, in_s.clone()));
            }
        }
        let (capacity, set) = best.expect("at least one subset");
        if capacity < rate {
            return Ok(Some(witness(instance, &set)));
        }
    }
    Ok(None)
}
