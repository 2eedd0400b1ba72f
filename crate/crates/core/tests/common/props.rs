//! Property bodies, shared by the proptest suite and the acceptance run.

use std::collections::HashSet;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use unicast_core::field::PrimeField;
use unicast_core::flow::{connectivity_level, cutset_exhaustive, cutset_infeasible, edge_disjoint_paths, max_flow};
use unicast_core::graph::{parse_instance, UnicastInstance};
use unicast_core::netcode::{parse_code, propagate, route_uniform, simulate, verify_code, write_code, NetworkCode};
use unicast_core::oracle::classify_triple;
use unicast_core::random::{random_exact, rng};
use unicast_core::transform::{is_minimal, lift_code, minimize, structure, LiftError};

use super::{random_code, reference_max_flow, reference_min_cut};

type Outcome = Result<(), TestCaseError>;

/// Concrete values pushed through the local coefficients equal the global
/// vectors applied to the same source values.
pub fn simulation_consistency((inst, seed, t, q): (UnicastInstance, u64, usize, u32)) -> Outcome {
    let field = PrimeField::new(q).unwrap();
    let mut r = rng(seed);
    let expanded = inst.expand_time(t).instance;
    let code = random_code(&mut r, &expanded, field, t);
    let table = propagate(&expanded, &code);
    let sources: Vec<u32> = (0..expanded.symbol_count()).map(|_| rand::Rng::gen_range(&mut r, 0..q)).collect();
    let values = simulate(&expanded, &code, &sources);
    for e in expanded.graph().edge_ids() {
        prop_assert_eq!(values[e.0], table.get(e).dot(&sources), "edge {}", e);
    }
    Ok(())
}

/// Max-flow agrees with an independent augmenting-path count, and exactly
/// that many edge-disjoint paths can be extracted.
pub fn menger_equivalence(inst: UnicastInstance) -> Outcome {
    let g = inst.graph();
    for (i, s) in inst.sessions().iter().enumerate() {
        let k = max_flow(&inst, i);
        prop_assert_eq!(k, reference_max_flow(g, s.source, s.terminal));
        let set = edge_disjoint_paths(&inst, i, k).unwrap();
        prop_assert_eq!(set.paths.len(), k);
        let mut used = HashSet::new();
        for p in &set.paths {
            prop_assert!(p.is_valid_in(g));
            prop_assert_eq!(p.start(g), Some(s.source));
            prop_assert_eq!(p.end(g), Some(s.terminal));
            for &e in &p.edges {
                prop_assert!(used.insert(e), "edge {} on two paths", e);
            }
        }
        prop_assert!(edge_disjoint_paths(&inst, i, k + 1).is_err());
    }
    Ok(())
}

/// On graphs small enough to enumerate, max-flow equals the smallest cut.
pub fn max_flow_min_cut(inst: UnicastInstance) -> Outcome {
    for (i, s) in inst.sessions().iter().enumerate() {
        prop_assert_eq!(max_flow(&inst, i), reference_min_cut(inst.graph(), s.source, s.terminal));
    }
    Ok(())
}

/// Flow-based and enumerative cut-set checks agree, and any witness really
/// is a cut that is too small for the sessions it separates.
pub fn cut_enumeration_agrees(inst: UnicastInstance) -> Outcome {
    let fast = cutset_infeasible(&inst).unwrap();
    let slow = cutset_exhaustive(&inst).unwrap();
    prop_assert_eq!(fast.is_some(), slow.is_some());
    for w in fast.iter().chain(slow.iter()) {
        prop_assert!(w.capacity < w.required_rate);
        prop_assert_eq!(w.capacity, w.cut_edges.len());
        let inside: HashSet<_> = w.source_side.iter().copied().collect();
        let g = inst.graph();
        let leaving = g.edge_ids().filter(|&e| inside.contains(&g.tail(e)) && !inside.contains(&g.head(e))).count();
        prop_assert_eq!(leaving, w.capacity);
    }
    if let (Some(a), Some(b)) = (&fast, &slow) {
        prop_assert_eq!(a.capacity, b.capacity);
    }
    Ok(())
}

/// Minimization keeps the connectivity vector, yields a minimal instance,
/// and changes nothing when applied again.
pub fn minimize_fixpoint(inst: UnicastInstance) -> Outcome {
    let once = minimize(&inst);
    prop_assert_eq!(connectivity_level(&once.instance), connectivity_level(&inst));
    prop_assert!(is_minimal(&once.instance));
    let twice = minimize(&once.instance);
    prop_assert!(twice.removed.is_empty());
    prop_assert_eq!(twice.instance, once.instance);
    Ok(())
}

/// Structuring bounds internal degree by three, keeps the connectivity
/// vector, and makes each session's edge-disjoint paths internally
/// vertex-disjoint.
pub fn structure_degree_connectivity(inst: UnicastInstance) -> Outcome {
    let st = structure(&inst);
    let out = &st.instance;
    prop_assert!(out.max_internal_degree() <= 3);
    prop_assert_eq!(connectivity_level(out), connectivity_level(&inst));
    let g = out.graph();
    for i in 0..out.session_count() {
        let set = edge_disjoint_paths(out, i, max_flow(out, i)).unwrap();
        let mut seen = HashSet::new();
        for p in &set.paths {
            let nodes = p.nodes(g);
            for v in &nodes[1..nodes.len() - 1] {
                prop_assert!(seen.insert(*v), "node {} on two paths of session {}", v, i + 1);
            }
        }
    }
    Ok(())
}

/// A decodable code on a structured, minimized instance lifts to a
/// decodable code on the input; an undecodable one is refused.
pub fn lift_preserves_decodability((seed, n): (u64, usize)) -> Outcome {
    let field = PrimeField::new(2).unwrap();
    let inst = random_exact(&mut rng(seed), &vec![n; n]);
    let st = structure(&inst);
    let min = minimize(&st.instance);
    let embedding = st.embedding.then(&min.embedding(&st.instance));
    let code = route_uniform(&min.instance, field).unwrap();
    let lifted = lift_code(&inst, &min.instance, &embedding, &code).unwrap();
    prop_assert!(verify_code(&inst, &lifted).unwrap().all_pass());
    let direct = st.lift(&inst, &route_uniform(&st.instance, field).unwrap()).unwrap();
    prop_assert!(verify_code(&inst, &direct).unwrap().all_pass());
    let zero = NetworkCode::new(field, code.t(), code.edge_count());
    prop_assert_eq!(lift_code(&inst, &min.instance, &embedding, &zero), Err(LiftError::NotDecodable));
    Ok(())
}

/// Verdicts depend only on the sorted triple, and raising a level never
/// turns a feasible triple infeasible.
pub fn classification_monotone((k, raise): ([usize; 3], usize)) -> Outcome {
    let v = classify_triple(k).unwrap();
    for perm in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let w = classify_triple(perm.map(|i| k[i])).unwrap();
        prop_assert_eq!(w.sorted, v.sorted);
        prop_assert_eq!(w.status, v.status);
    }
    if k[raise] < 3 {
        let mut up = k;
        up[raise] += 1;
        prop_assert!(!v.is_feasible() || classify_triple(up).unwrap().is_feasible());
    }
    Ok(())
}

/// Instance files keep edge ids and endpoint names (node ids follow file
/// order), and code files read back to the same code.
pub fn formats_round_trip((inst, seed): (UnicastInstance, u64)) -> Outcome {
    let text = inst.to_string();
    let back = parse_instance(&text).unwrap();
    prop_assert_eq!(back.to_string(), text);
    let (g, h) = (inst.graph(), back.graph());
    prop_assert_eq!(g.edge_count(), h.edge_count());
    for e in g.edge_ids() {
        let ((u, v), (x, y)) = (g.endpoints(e), h.endpoints(e));
        prop_assert_eq!((g.name(u), g.name(v)), (h.name(x), h.name(y)));
    }
    prop_assert_eq!(connectivity_level(&back), connectivity_level(&inst));
    let field = PrimeField::new(3).unwrap();
    let expanded = inst.expand_time(2).instance;
    let code = random_code(&mut rng(seed), &expanded, field, 2);
    let table = propagate(&expanded, &code);
    prop_assert_eq!(parse_code(&write_code(&code, Some(&table))).unwrap(), code);
    Ok(())
}
