//! Helpers shared by the integration suites: instance builders, random codes
//! and independent reference implementations.
#![allow(dead_code)]

use std::collections::VecDeque;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use unicast_core::field::PrimeField;
use unicast_core::graph::{Dag, DagBuilder, NodeId, Session, UnicastInstance};
use unicast_core::netcode::{Input, NetworkCode};
use unicast_core::random::{random_exact, random_instance, rng};

pub const PROPTEST_SEED: u64 = 0x5eed_c0de;
pub const CASES_PER_PROPERTY: u32 = 64;

pub fn proptest_config() -> Config {
    Config {
        cases: CASES_PER_PROPERTY,
        rng_seed: RngSeed::Fixed(PROPTEST_SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Lane-grid instance with 1 to 3 sessions of connectivity at least 1..=3.
pub fn lane_instance() -> impl Strategy<Value = UnicastInstance> {
    (any::<u64>(), prop::collection::vec(1usize..=3, 1..=3))
        .prop_map(|(seed, levels)| random_instance(&mut rng(seed), &levels))
}

/// Dense random DAG on at most nine nodes; small enough for exhaustive cuts.
pub fn small_instance() -> impl Strategy<Value = UnicastInstance> {
    any::<u64>().prop_map(|seed| small_dag_instance(&mut rng(seed)))
}

pub fn small_dag_instance(r: &mut ChaCha8Rng) -> UnicastInstance {
    let n = r.gen_range(4..=9);
    let mut b = DagBuilder::new();
    let nodes: Vec<NodeId> = (0..n).map(|i| b.node(&format!("v{i}"))).collect();
    for i in 0..n {
        for j in i + 1..n {
            let copies = if r.gen_bool(0.45) { 1 + usize::from(r.gen_bool(0.2)) } else { 0 };
            for _ in 0..copies {
                b.edge(nodes[i], nodes[j]);
            }
        }
    }
    let count = r.gen_range(1..=3);
    let sessions = (0..count)
        .map(|_| {
            let s = r.gen_range(0..n - 1);
            let t = r.gen_range(s + 1..n);
            Session { source: nodes[s], terminal: nodes[t], rate: r.gen_range(1..=2) }
        })
        .collect();
    UnicastInstance::new(b.build().unwrap(), sessions).unwrap()
}

/// Exact-connectivity `[1, m+1]` instance with rates `(1, m)`, structured
/// and minimized: the input class of the two-session constructor.
pub fn two_session_instance(r: &mut ChaCha8Rng, m: usize) -> UnicastInstance {
    let inst = random_exact(r, &[1, m + 1]);
    let sessions = inst.sessions().iter().zip([1, m]).map(|(s, rate)| Session { rate, ..*s }).collect();
    let inst = inst.with_sessions(sessions).unwrap();
    let structured = unicast_core::transform::structure(&inst);
    unicast_core::transform::minimize(&structured.instance).instance
}

/// Random local coefficients for every edge of `expanded`.
pub fn random_code(r: &mut ChaCha8Rng, expanded: &UnicastInstance, field: PrimeField, t: usize) -> NetworkCode {
    let g = expanded.graph();
    let mut code = NetworkCode::new(field, t, g.edge_count());
    for e in g.edge_ids() {
        let tail = g.tail(e);
        let inputs = g
            .in_edges(tail)
            .iter()
            .map(|&f| Input::Edge(f))
            .chain(expanded.symbols_at(tail).into_iter().map(Input::Symbol));
        for input in inputs {
            code.set(e, input, r.gen_range(0..field.q()));
        }
    }
    code
}

/// Max-flow by repeated breadth-first augmentation on a dense capacity matrix.
pub fn reference_max_flow(g: &Dag, s: NodeId, t: NodeId) -> usize {
    let n = g.node_count();
    let mut cap = vec![vec![0i64; n]; n];
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        cap[u.0][v.0] += 1;
    }
    let mut flow = 0;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[s.0] = s.0;
        let mut queue = VecDeque::from([s.0]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if cap[u][v] > 0 && parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t.0] == usize::MAX {
            return flow;
        }
        let mut v = t.0;
        while v != s.0 {
            let u = parent[v];
            cap[u][v] -= 1;
            cap[v][u] += 1;
            v = u;
        }
        flow += 1;
    }
}

/// Smallest number of edges leaving a node set that holds `s` but not `t`,
/// by enumerating all such sets.
pub fn reference_min_cut(g: &Dag, s: NodeId, t: NodeId) -> usize {
    let n = g.node_count();
    assert!(n <= 16, "enumeration is exponential in the node count");
    (0u32..1 << n)
        .filter(|m| m >> s.0 & 1 == 1 && m >> t.0 & 1 == 0)
        .map(|m| {
            g.edge_ids()
                .filter(|&e| {
                    let (u, v) = g.endpoints(e);
                    m >> u.0 & 1 == 1 && m >> v.0 & 1 == 0
                })
                .count()
        })
        .min()
        .unwrap()
}

pub mod props;

pub fn simulation_input() -> impl Strategy<Value = (UnicastInstance, u64, usize, u32)> {
    (lane_instance(), any::<u64>(), 1usize..=2, prop::sample::select(vec![2u32, 3, 5]))
}

pub fn lift_input() -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 1usize..=3)
}

pub fn triple_input() -> impl Strategy<Value = ([usize; 3], usize)> {
    ([1usize..=3, 1usize..=3, 1usize..=3], 0usize..3)
}

pub fn round_trip_input() -> impl Strategy<Value = (UnicastInstance, u64)> {
    (lane_instance(), any::<u64>())
}
