use crate::graph::{DagBuilder, EdgeId, Embedding, NodeId, UnicastInstance};

use super::lift::{lift_code, LiftError};
use crate::netcode::NetworkCode;

/// Where an edge of a structured instance comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOrigin {
    Original(EdgeId),
    /// Internal wiring of the gadget that replaced this original node.
    Gadget(NodeId),
}

/// An instance whose internal nodes all have total degree at most three.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredInstance {
    pub instance: UnicastInstance,
    /// Original edge `e` is represented by edge `e` of the structured graph,
    /// and every original node by a cluster of structured nodes.
    pub embedding: Embedding,
    /// Indexed by structured edge id.
    pub origin: Vec<EdgeOrigin>,
}

impl StructuredInstance {
    /// Path (always a single edge) carrying original edge `e`.
    pub fn image(&self, e: EdgeId) -> Vec<EdgeId> {
        self.embedding.edge_image[e.0].into_iter().collect()
    }

    pub fn lift(&self, original: &UnicastInstance, code: &NetworkCode) -> Result<NetworkCode, LiftError> {
        lift_code(original, &self.instance, &self.embedding, code)
    }
}

/// Per-node ports: the structured node each original edge attaches to.
struct Ports {
    in_port: Vec<NodeId>,
    out_port: Vec<NodeId>,
}

/// Replaces every internal node of total degree above three by a crossbar
/// gadget.
///
/// For a node with in-edges `a_1..a_r` and out-edges `b_1..b_p`, in-edge
/// `a_i` enters a chain of fork nodes (in 1, out 2) with one leaf per
/// out-edge, out-edge `b_j` leaves a chain of merge nodes (in 2, out 1) with
/// one leaf per in-edge, and leaf `j` of fork `i` feeds leaf `i` of merge `j`.
/// A chain with a single leaf is one pass-through node. Any matching of
/// in-edges to out-edges routes through the gadget on edge-disjoint paths,
/// so connectivity is preserved, and since no internal node has degree
/// above three, edge-disjoint paths never share an internal node.
///
/// Original edges keep their ids; gadget edges are appended. The original
/// node's id becomes the first node of its gadget.
pub fn structure(instance: &UnicastInstance) -> StructuredInstance {
    let g = instance.graph();
    let mut b = DagBuilder::new();
    for v in g.nodes() {
        b.node(g.name(v));
    }
    let mut cluster: Vec<NodeId> = g.nodes().collect();
    let mut ports = Ports {
        in_port: g.edge_ids().map(|e| g.head(e)).collect(),
        out_port: g.edge_ids().map(|e| g.tail(e)).collect(),
    };
    // Gadget edges, added after the original edges.
    let mut wiring: Vec<(NodeId, NodeId, NodeId)> = Vec::new();

    for v in g.nodes() {
        if instance.is_endpoint(v) || g.degree(v) <= 3 {
            continue;
        }
        let ins = g.in_edges(v);
        let outs = g.out_edges(v);
        let (r, p) = (ins.len(), outs.len());
        let name = g.name(v).to_string();
        let mut first = true;
        let mut new_node = |b: &mut DagBuilder, cluster: &mut Vec<NodeId>| {
            if std::mem::take(&mut first) {
                v
            } else {
                let id = b.fresh_node(&format!("{name}.g"));
                cluster.push(v);
                id
            }
        };
        // fork_leaf[i][j]: node emitting crossbar edge (i, j).
        let mut fork_leaf = vec![Vec::with_capacity(p); r];
        for (i, &a) in ins.iter().enumerate() {
            let chain: Vec<NodeId> = (0..p.saturating_sub(1).max(1)).map(|_| new_node(&mut b, &mut cluster)).collect();
            ports.in_port[a.0] = chain[0];
            for w in chain.windows(2) {
                wiring.push((w[0], w[1], v));
            }
            for j in 0..p {
                fork_leaf[i].push(chain[j.min(chain.len() - 1)]);
            }
        }
        let mut merge_leaf = vec![Vec::with_capacity(r); p];
        for (j, &out) in outs.iter().enumerate() {
            let chain: Vec<NodeId> = (0..r.saturating_sub(1).max(1)).map(|_| new_node(&mut b, &mut cluster)).collect();
            ports.out_port[out.0] = *chain.last().expect("nonempty chain");
            for w in chain.windows(2) {
                wiring.push((w[0], w[1], v));
            }
            for i in 0..r {
                merge_leaf[j].push(chain[i.saturating_sub(1)]);
            }
        }
        for i in 0..r {
            for j in 0..p {
                wiring.push((fork_leaf[i][j], merge_leaf[j][i], v));
            }
        }
    }

    let mut origin = Vec::with_capacity(g.edge_count() + wiring.len());
    for e in g.edge_ids() {
        b.edge(ports.out_port[e.0], ports.in_port[e.0]);
        origin.push(EdgeOrigin::Original(e));
    }
    for &(x, y, v) in &wiring {
        b.edge(x, y);
        origin.push(EdgeOrigin::Gadget(v));
    }
    let graph = b.build().expect("gadgets are acyclic");
    let instance = UnicastInstance::new(graph, instance.sessions().to_vec()).expect("endpoints are kept");
    StructuredInstance {
        instance,
        embedding: Embedding { edge_image: g.edge_ids().map(Some).collect(), node_cluster: cluster },
        origin,
    }
}
