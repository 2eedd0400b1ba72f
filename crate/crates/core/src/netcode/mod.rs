//! Linear network codes: representation, propagation, decodability checks
//! and the constructive code assignments.

mod code;
mod format;
mod routing;
mod three_session;
mod two_session;

pub use code::{
    propagate, simulate, verify_code, verify_table, CodeError, GlobalCodeTable, Input, NetworkCode, TerminalCheck,
    Verification,
};
pub use format::{parse_code, write_code, CodeParseError};
pub use routing::route_uniform;
pub use three_session::assign_133;
pub use two_session::{assign_1m, code_two_session};

use thiserror::Error;

use crate::field::{in_span, CodingVector, PrimeField};
use crate::flow::{ConnectivityVector, FlowError};
use crate::graph::{EdgeId, UnicastInstance};
use crate::transform::LiftError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("expected {expected} sessions, found {found}")]
    SessionCount { expected: usize, found: usize },
    #[error("unsupported rates: {0}")]
    Rates(String),
    #[error("connectivity {found} does not meet the requirement {required}")]
    Connectivity { required: String, found: ConnectivityVector },
    #[error("instance is not minimal")]
    NotMinimal,
    #[error("instance is not structured (normalized, internal degree at most 3)")]
    NotStructured,
    #[error("path {path} of the rate-m session overlaps the rate-1 path in {segments} segments")]
    MultipleOverlaps { path: usize, segments: usize },
    #[error("no local coefficients produce the planned vector on edge {0}")]
    Unrealizable(EdgeId),
    #[error("constructed code fails verification")]
    Unverified,
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Lift(#[from] LiftError),
}

/// Finds local coefficients giving every edge its planned global vector.
/// Each edge combines the planned vectors of its tail's in-edges and the
/// symbols observed at its tail; zero plans get no coefficients.
pub(crate) fn realize(
    instance: &UnicastInstance,
    field: PrimeField,
    t: usize,
    planned: &[CodingVector],
) -> Result<NetworkCode, ConstructError> {
    let g = instance.graph();
    let len = instance.symbol_count();
    let mut code = NetworkCode::new(field, t, g.edge_count());
    for e in g.edge_order() {
        if planned[e.0].is_zero() {
            continue;
        }
        let tail = g.tail(e);
        let mut inputs: Vec<Input> = g.in_edges(tail).iter().map(|&f| Input::Edge(f)).collect();
        inputs.extend(instance.symbols_at(tail).into_iter().map(Input::Symbol));
        let rows: Vec<CodingVector> = inputs
            .iter()
            .map(|i| match *i {
                Input::Edge(f) => planned[f.0].clone(),
                Input::Symbol(k) => CodingVector::unit(field, len, k),
            })
            .collect();
        let coeffs = in_span(&planned[e.0], &rows).ok_or(ConstructError::Unrealizable(e))?;
        for (input, c) in inputs.into_iter().zip(coeffs) {
            code.set(e, input, c);
        }
    }
    Ok(code)
}

fn ensure_verified(instance: &UnicastInstance, code: NetworkCode) -> Result<NetworkCode, ConstructError> {
    if verify_code(instance, &code).map_err(|_| ConstructError::Unverified)?.all_pass() {
        Ok(code)
    } else {
        Err(ConstructError::Unverified)
    }
}
