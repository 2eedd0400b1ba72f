use super::{Dag, EdgeId, NodeId};

/// Relates an original graph `G` to a derived graph `H`.
///
/// Every original edge maps to at most one edge of `H` (`None` when the edge
/// was dropped), and every node of `H` belongs to the cluster of exactly one
/// original node. Edges of `H` that are not images of original edges must
/// run inside a single cluster. Codes on `H` are contracted back onto `G`
/// cluster by cluster (see `netcode::lift_code`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub edge_image: Vec<Option<EdgeId>>,
    pub node_cluster: Vec<NodeId>,
}

impl Embedding {
    pub fn identity(dag: &Dag) -> Self {
        Self { edge_image: dag.edge_ids().map(Some).collect(), node_cluster: dag.nodes().collect() }
    }

    /// `self` maps G into H and `next` maps H into K; the result maps G into K.
    pub fn then(&self, next: &Embedding) -> Embedding {
        Embedding {
            edge_image: self.edge_image.iter().map(|img| img.and_then(|e| next.edge_image[e.0])).collect(),
            node_cluster: next.node_cluster.iter().map(|&v| self.node_cluster[v.0]).collect(),
        }
    }

    /// The same embedding between the `t`-fold time expansions of both graphs,
    /// using the expansion's edge numbering `e * t + layer`.
    pub fn expand(&self, t: usize) -> Embedding {
        let mut edge_image = Vec::with_capacity(self.edge_image.len() * t);
        for img in &self.edge_image {
            for layer in 0..t {
                edge_image.push(img.map(|e| EdgeId(e.0 * t + layer)));
            }
        }
        Embedding { edge_image, node_cluster: self.node_cluster.clone() }
    }

    /// Original edge whose image is `e`, if any.
    pub fn preimage(&self) -> Vec<Option<EdgeId>> {
        let len = self.edge_image.iter().flatten().map(|e| e.0 + 1).max().unwrap_or(0);
        let mut pre = vec![None; len];
        for (orig, img) in self.edge_image.iter().enumerate() {
            if let Some(e) = img {
                pre[e.0] = Some(EdgeId(orig));
            }
        }
        pre
    }
}
