//! Fixed inputs for the criterion benchmarks under `benches/`.

use unicast_core::graph::UnicastInstance;
use unicast_core::oracle::example;
use unicast_core::random::{random_exact, random_instance, rng};

/// A seeded lane-grid instance dominating `levels`.
pub fn lane_grid(seed: u64, levels: &[usize]) -> UnicastInstance {
    random_instance(&mut rng(seed), levels)
}

/// A seeded instance with connectivity exactly `levels`.
pub fn exact(seed: u64, levels: &[usize]) -> UnicastInstance {
    random_exact(&mut rng(seed), levels)
}

pub fn figure(id: &str) -> UnicastInstance {
    example(id).expect("built-in example")
}
