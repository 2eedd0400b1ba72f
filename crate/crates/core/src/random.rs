//! Seeded random instances with guaranteed connectivity.
//!
//! Nodes sit on a grid of lanes and levels; every lane is a chain along the
//! levels. A session that must reach connectivity `k` gets a private source
//! and terminal joined to `k` distinct lanes, so its paths are edge-disjoint
//! by construction. Rate-1 sessions instead take a weaving path that jumps
//! between lanes, which makes it cross the other sessions' paths. Random
//! forward edges are added as noise.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{DagBuilder, NodeId, Session, UnicastInstance};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Instance whose connectivity vector dominates `levels`. All rates are 1.
pub fn random_instance(rng: &mut ChaCha8Rng, levels: &[usize]) -> UnicastInstance {
    random_instance_with_rates(rng, levels, &vec![1; levels.len()])
}

pub fn random_instance_with_rates(rng: &mut ChaCha8Rng, levels: &[usize], rates: &[usize]) -> UnicastInstance {
    assert_eq!(levels.len(), rates.len());
    let max_level = levels.iter().copied().max().unwrap_or(1).max(1);
    let lanes = max_level + rng.gen_range(0..=2);
    let depth = rng.gen_range(4..=7);
    let mut b = DagBuilder::new();
    let grid: Vec<Vec<NodeId>> =
        (0..lanes).map(|l| (0..depth).map(|d| b.node(&format!("n{l}_{d}"))).collect()).collect();
    for lane in &grid {
        for w in lane.windows(2) {
            b.edge(w[0], w[1]);
        }
    }
    let mut sessions = Vec::with_capacity(levels.len());
    for (i, (&k, &rate)) in levels.iter().zip(rates).enumerate() {
        let s = b.node(&format!("s{}", i + 1));
        let t = b.node(&format!("t{}", i + 1));
        if k <= 1 {
            weave(rng, &mut b, &grid, s, t);
        } else {
            let mut chosen: Vec<usize> = (0..lanes).collect();
            chosen.shuffle(rng);
            for &lane in &chosen[..k] {
                let start = rng.gen_range(0..depth / 2);
                let end = rng.gen_range(depth / 2..depth);
                b.edge(s, grid[lane][start]);
                b.edge(grid[lane][end], t);
            }
        }
        sessions.push(Session { source: s, terminal: t, rate });
    }
    let noise = rng.gen_range(0..=depth);
    for _ in 0..noise {
        let (la, lb) = (rng.gen_range(0..lanes), rng.gen_range(0..lanes));
        let from = rng.gen_range(0..depth - 1);
        let to = rng.gen_range(from + 1..depth);
        b.edge(grid[la][from], grid[lb][to]);
    }
    let graph = b.build().expect("edges go to strictly higher levels");
    UnicastInstance::new(graph, sessions).expect("sessions are valid")
}

/// Path from `s` to `t` that follows lanes and hops to a random other lane
/// one level up at random points.
fn weave(rng: &mut ChaCha8Rng, b: &mut DagBuilder, grid: &[Vec<NodeId>], s: NodeId, t: NodeId) {
    let depth = grid[0].len();
    let mut lane = rng.gen_range(0..grid.len());
    let mut level = rng.gen_range(0..depth / 2);
    b.edge(s, grid[lane][level]);
    let end = rng.gen_range(level.max(depth / 2)..depth);
    while level < end {
        let next = if rng.gen_bool(0.5) { rng.gen_range(0..grid.len()) } else { lane };
        if next != lane {
            b.edge(grid[lane][level], grid[next][level + 1]);
        }
        lane = next;
        level += 1;
    }
    b.edge(grid[lane][level], t);
}

/// Instance whose connectivity vector equals `levels` exactly: a random
/// instance with every session moved to private endpoints joined by
/// `levels[i]` parallel edges.
pub fn random_exact(rng: &mut ChaCha8Rng, levels: &[usize]) -> UnicastInstance {
    random_instance(rng, levels).isolate_endpoints(levels).0
}
