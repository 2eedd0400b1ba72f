mod common;

use std::time::{Duration, Instant};

use common::two_session_instance;
use unicast_core::field::PrimeField;
use unicast_core::flow::{connectivity_level, edge_disjoint_paths};
use unicast_core::netcode::{assign_133, assign_1m, code_two_session, route_uniform, verify_code};
use unicast_core::random::{random_exact, random_instance_with_rates, rng};
use unicast_core::transform::{is_minimal, overlap_segments};

const PER_INSTANCE: Duration = Duration::from_secs(1);

fn gf(q: u32) -> PrimeField {
    PrimeField::new(q).unwrap()
}

#[test]
fn two_session_inputs_are_minimal_structured_and_exact() {
    let mut r = rng(0x1_0001);
    for i in 0..30 {
        let m = 1 + i % 3;
        let inst = two_session_instance(&mut r, m);
        assert_eq!(connectivity_level(&inst).levels(), &[1, m + 1]);
        assert!(inst.max_internal_degree() <= 3);
        assert!(is_minimal(&inst));
    }
}

#[test]
fn two_session_construction_decodes_everywhere() {
    let mut r = rng(0x1_0002);
    for i in 0..120 {
        let m = 1 + i % 3;
        let inst = two_session_instance(&mut r, m);
        for q in [2, 3, 5] {
            let code = assign_1m(&inst, gf(q)).unwrap_or_else(|e| panic!("instance {i}, q={q}: {e}"));
            assert!(verify_code(&inst, &code).unwrap().all_pass(), "instance {i}, q={q}");
        }
    }
}

#[test]
fn paths_of_minimal_structured_instances_overlap_at_most_once() {
    let mut r = rng(0x1_0003);
    for i in 0..200 {
        let m = 1 + i % 3;
        let inst = two_session_instance(&mut r, m);
        let weak = edge_disjoint_paths(&inst, 0, 1).unwrap();
        let strong = edge_disjoint_paths(&inst, 1, m + 1).unwrap();
        for p in &strong.paths {
            let segments = overlap_segments(&weak.paths[0], p);
            assert!(segments.len() <= 1, "instance {i}: {} segments", segments.len());
        }
    }
}

#[test]
fn pipeline_handles_unstructured_inputs() {
    let mut r = rng(0x1_0004);
    for i in 0..40 {
        let m = 1 + i % 3;
        let raw = random_instance_with_rates(&mut r, &[1, m + 1], &[1, m]);
        let (inst, _) = raw.isolate_endpoints(&[1, m + 1]);
        let code = code_two_session(&inst, gf(2)).unwrap_or_else(|e| panic!("instance {i}: {e}"));
        assert!(verify_code(&inst, &code).unwrap().all_pass());
    }
}

#[test]
fn uniform_routing_on_random_triples() {
    let mut r = rng(0x1_0005);
    for i in 0..100 {
        let inst = random_exact(&mut r, &[3, 3, 3]);
        let start = Instant::now();
        let code = route_uniform(&inst, gf(2)).unwrap_or_else(|e| panic!("instance {i}: {e}"));
        assert!(start.elapsed() < PER_INSTANCE);
        assert_eq!(code.t(), 3);
        assert!(verify_code(&inst, &code).unwrap().all_pass(), "instance {i}");
    }
}

#[test]
fn vector_code_on_random_dominating_triples() {
    let mut r = rng(0x1_0006);
    let shapes = [[1, 3, 3], [3, 1, 3], [3, 3, 1], [2, 3, 3], [3, 2, 3], [3, 3, 3]];
    for i in 0..100 {
        let levels = shapes[i % shapes.len()];
        let inst = random_exact(&mut r, &levels);
        let start = Instant::now();
        let code = assign_133(&inst, gf(2)).unwrap_or_else(|e| panic!("instance {i} {levels:?}: {e}"));
        assert!(start.elapsed() < PER_INSTANCE, "instance {i} took {:?}", start.elapsed());
        assert_eq!(code.t(), 2);
        assert!(verify_code(&inst, &code).unwrap().all_pass(), "instance {i}");
    }
}

#[test]
fn vector_code_tolerates_surplus_connectivity() {
    let mut r = rng(0x1_0007);
    for i in 0..20 {
        let inst = unicast_core::random::random_instance(&mut r, &[1, 3, 3]);
        let code = assign_133(&inst, gf(3)).unwrap_or_else(|e| panic!("instance {i}: {e}"));
        assert!(verify_code(&inst, &code).unwrap().all_pass());
    }
}
