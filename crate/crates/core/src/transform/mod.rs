//! Instance reductions that preserve the connectivity vector, and the
//! overlap analysis used by the two-session code construction.

mod lift;
mod structure;

pub use lift::{lift_code, LiftError};
pub use structure::{structure, EdgeOrigin, StructuredInstance};

use crate::flow::{connectivity_level, connectivity_level_restricted};
use crate::graph::{EdgeId, Embedding, Path, UnicastInstance};

/// Result of [`minimize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimized {
    pub instance: UnicastInstance,
    /// Removed edges, as ids of the input instance, in removal order.
    pub removed: Vec<EdgeId>,
    /// Input edge id of every remaining edge, indexed by new edge id.
    pub kept: Vec<EdgeId>,
}

impl Minimized {
    /// Embedding of the input instance into the minimized one.
    pub fn embedding(&self, input: &UnicastInstance) -> Embedding {
        let mut edge_image = vec![None; input.graph().edge_count()];
        for (new, old) in self.kept.iter().enumerate() {
            edge_image[old.0] = Some(EdgeId(new));
        }
        Embedding { edge_image, node_cluster: input.graph().nodes().collect() }
    }
}

/// Deletes edges in ascending id order whenever the deletion keeps the
/// connectivity vector, repeating passes until one removes nothing.
pub fn minimize(instance: &UnicastInstance) -> Minimized {
    let target = connectivity_level(instance);
    let mut keep = vec![true; instance.graph().edge_count()];
    let mut removed = Vec::new();
    loop {
        let before = removed.len();
        for e in instance.graph().edge_ids() {
            if !keep[e.0] {
                continue;
            }
            keep[e.0] = false;
            if connectivity_level_restricted(instance, &keep) == target {
                removed.push(e);
            } else {
                keep[e.0] = true;
            }
        }
        if removed.len() == before {
            break;
        }
    }
    let (instance, kept) = instance.edge_subgraph(&keep);
    Minimized { instance, removed, kept }
}

/// Whether deleting any single edge lowers some connectivity component.
pub fn is_minimal(instance: &UnicastInstance) -> bool {
    let target = connectivity_level(instance);
    let mut keep = vec![true; instance.graph().edge_count()];
    instance.graph().edge_ids().all(|e| {
        keep[e.0] = false;
        let reduced = connectivity_level_restricted(instance, &keep).is_reduced_from(&target);
        keep[e.0] = true;
        reduced
    })
}

/// A maximal run of edges shared by two paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapSegment {
    pub edges: Vec<EdgeId>,
    /// Position of the first edge on the first path.
    pub first_offset: usize,
    /// Position of the first edge on the second path.
    pub second_offset: usize,
}

/// Maximal runs of consecutive edges of `p` that also lie on `q`, in
/// `p`-order. On a DAG a path visits each node once, so a run that is
/// consecutive on `p` is consecutive on `q` as well.
pub fn overlap_segments(p: &Path, q: &Path) -> Vec<OverlapSegment> {
    let position = |e: EdgeId| q.edges.iter().position(|&f| f == e);
    let mut segments: Vec<OverlapSegment> = Vec::new();
    let mut previous_shared = false;
    for (i, &e) in p.edges.iter().enumerate() {
        match position(e) {
            Some(j) => {
                if previous_shared {
                    segments.last_mut().expect("open segment").edges.push(e);
                } else {
                    segments.push(OverlapSegment { edges: vec![e], first_offset: i, second_offset: j });
                }
                previous_shared = true;
            }
            None => previous_shared = false,
        }
    }
    segments
}
