use super::{ensure_verified, ConstructError, Input, NetworkCode};
use crate::field::PrimeField;
use crate::flow::{connectivity_level, edge_disjoint_paths};
use crate::graph::UnicastInstance;

/// Vector routing over `T = n` time units for `n` unit-rate sessions that
/// each have connectivity at least `n`.
///
/// Layer `a` of the time expansion is reserved for session `a`, which sends
/// all `n` of its symbols over `n` edge-disjoint paths inside that layer.
pub fn route_uniform(instance: &UnicastInstance, field: PrimeField) -> Result<NetworkCode, ConstructError> {
    let n = instance.session_count();
    if let Some(s) = instance.sessions().iter().find(|s| s.rate != 1) {
        return Err(ConstructError::Rates(format!("all rates must be 1, found {}", s.rate)));
    }
    let conn = connectivity_level(instance);
    if conn.levels().iter().any(|&k| k < n) {
        return Err(ConstructError::Connectivity { required: format!("every level >= {n}"), found: conn });
    }
    let expansion = instance.expand_time(n);
    let expanded = &expansion.instance;
    let mut code = NetworkCode::new(field, n, expanded.graph().edge_count());
    for session in 0..n {
        let paths = edge_disjoint_paths(instance, session, n)?;
        for (unit, path) in paths.paths.iter().enumerate() {
            let symbol = expanded.symbols(session).start + unit;
            let mut previous = None;
            for &e in &path.edges {
                let copy = expansion.copy_of(e, session);
                match previous {
                    None => code.set(copy, Input::Symbol(symbol), 1),
                    Some(p) => code.set(copy, Input::Edge(p), 1),
                }
                previous = Some(copy);
            }
        }
    }
    ensure_verified(instance, code)
}
