use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Embedding, UnicastInstance};
use crate::netcode::{verify_code, CodeError, Input, NetworkCode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("invalid code on the derived instance: {0}")]
    Invalid(#[from] CodeError),
    #[error("code does not decode on the derived instance; refusing to lift")]
    NotDecodable,
    #[error("derived edge e{0} leaves its cluster without being the image of an original edge")]
    BadEmbedding(usize),
    #[error("lifted code fails to decode on the original instance")]
    LiftedFails,
}

type Expr = BTreeMap<Input, u32>;

/// Transfers a code from `derived` back onto `original`.
///
/// Each original node `u` corresponds to the cluster of derived nodes
/// `embedding` assigns to it. The derived code restricted to a cluster is a
/// linear map from the cluster's entering edges and observed source symbols
/// to its leaving edges; that map becomes the local coefficients of `u`.
/// Original edges without an image carry nothing. Sessions of both
/// instances must correspond one to one with equal rates.
pub fn lift_code(
    original: &UnicastInstance,
    derived: &UnicastInstance,
    embedding: &Embedding,
    code: &NetworkCode,
) -> Result<NetworkCode, LiftError> {
    let t = code.t();
    let h_inst = code.carrier(derived);
    let g_inst = code.carrier(original);
    let emb = if t == 1 { embedding.clone() } else { embedding.expand(t) };
    if !verify_code(derived, code)?.all_pass() {
        return Err(LiftError::NotDecodable);
    }
    let (g, h) = (g_inst.graph(), h_inst.graph());
    let field = code.field();
    let mut pre = emb.preimage();
    pre.resize(h.edge_count(), None);
    let cluster = |v: crate::graph::NodeId| emb.node_cluster[v.0];

    let mut exprs: Vec<Expr> = vec![Expr::new(); h.edge_count()];
    for f in h.edge_order() {
        let home = cluster(h.tail(f));
        let mut acc = Expr::new();
        let add = |acc: &mut Expr, input: Input, c: u32| {
            let slot = acc.entry(input).or_insert(0);
            *slot = field.add(*slot, c);
        };
        for &(input, c) in code.coefficients(f) {
            match input {
                Input::Symbol(_) => add(&mut acc, input, c),
                Input::Edge(f_in) => {
                    if cluster(h.tail(f_in)) == home {
                        for (&inner, &d) in &exprs[f_in.0] {
                            add(&mut acc, inner, field.mul(c, d));
                        }
                    } else {
                        let orig = pre[f_in.0].ok_or(LiftError::BadEmbedding(f_in.0))?;
                        add(&mut acc, Input::Edge(orig), c);
                    }
                }
            }
        }
        acc.retain(|_, c| *c != 0);
        exprs[f.0] = acc;
    }

    let mut lifted = NetworkCode::new(field, t, g.edge_count());
    for e in g.edge_ids() {
        if let Some(img) = emb.edge_image[e.0] {
            for (&input, &c) in &exprs[img.0] {
                lifted.set(e, input, c);
            }
        }
    }
    match verify_code(original, &lifted) {
        Ok(v) if v.all_pass() => Ok(lifted),
        _ => Err(LiftError::LiftedFails),
    }
}
