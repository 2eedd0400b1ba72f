use super::{code_two_session, ensure_verified, ConstructError, Input, NetworkCode};
use crate::field::PrimeField;
use crate::flow::{connectivity_level, edge_disjoint_paths};
use crate::graph::{EdgeId, Session, UnicastInstance};

/// Vector code over `T = 2` for three unit-rate sessions whose sorted
/// connectivity is at least `[1, 3, 3]`.
///
/// Sessions are ranked by connectivity (ties by index); the weakest one
/// sends one symbol per layer while each of the other two owns one layer
/// for both of its symbols. Each layer runs the two-session construction on
/// the union of one path of the weakest session and three paths of each of
/// the other two; all other edges carry nothing.
pub fn assign_133(instance: &UnicastInstance, field: PrimeField) -> Result<NetworkCode, ConstructError> {
    if instance.session_count() != 3 {
        return Err(ConstructError::SessionCount { expected: 3, found: instance.session_count() });
    }
    if instance.sessions().iter().any(|s| s.rate != 1) {
        return Err(ConstructError::Rates("all rates must be 1".into()));
    }
    let conn = connectivity_level(instance);
    let mut roles = [0, 1, 2];
    roles.sort_by_key(|&i| (conn.levels()[i], i));
    if conn.levels()[roles[0]] < 1 || conn.levels()[roles[1]] < 3 {
        return Err(ConstructError::Connectivity { required: "sorted >= [1,3,3]".into(), found: conn });
    }

    let g = instance.graph();
    let mut keep = vec![false; g.edge_count()];
    for (role, count) in [(roles[0], 1), (roles[1], 3), (roles[2], 3)] {
        for path in edge_disjoint_paths(instance, role, count)?.paths {
            for e in path.edges {
                keep[e.0] = true;
            }
        }
    }
    let (union, kept) = instance.edge_subgraph(&keep);

    let expansion = instance.expand_time(2);
    let expanded = &expansion.instance;
    let mut code = NetworkCode::new(field, 2, expanded.graph().edge_count());
    let weak = instance.sessions()[roles[0]];
    for (layer, &partner) in roles[1..].iter().enumerate() {
        let strong = instance.sessions()[partner];
        let pair = union
            .with_sessions(vec![Session { rate: 1, ..weak }, Session { rate: 2, ..strong }])
            .expect("sessions come from a valid instance");
        let sub = code_two_session(&pair, field)?;
        let map_input = |input: Input| match input {
            Input::Edge(h) => Input::Edge(expansion.copy_of(kept[h.0], layer)),
            Input::Symbol(0) => Input::Symbol(expansion.symbol(roles[0], 0, layer)),
            Input::Symbol(k) => Input::Symbol(expanded.symbols(partner).start + k - 1),
        };
        for (h, &e) in kept.iter().enumerate() {
            let target = expansion.copy_of(e, layer);
            for &(input, c) in sub.coefficients(EdgeId(h)) {
                code.set(target, map_input(input), c);
            }
        }
    }
    ensure_verified(instance, code)
}
