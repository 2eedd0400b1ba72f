mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(proptest_config())]

    #[test]
    fn simulation_matches_global_vectors(input in simulation_input()) {
        props::simulation_consistency(input)?;
    }

    #[test]
    fn max_flow_matches_disjoint_paths(inst in lane_instance()) {
        props::menger_equivalence(inst)?;
    }

    #[test]
    fn max_flow_equals_enumerated_min_cut(inst in small_instance()) {
        props::max_flow_min_cut(inst)?;
    }

    #[test]
    fn cut_searches_agree(inst in small_instance()) {
        props::cut_enumeration_agrees(inst)?;
    }

    #[test]
    fn minimize_reaches_a_fixpoint(inst in lane_instance()) {
        props::minimize_fixpoint(inst)?;
    }

    #[test]
    fn structure_bounds_degree(inst in lane_instance()) {
        props::structure_degree_connectivity(inst)?;
    }

    #[test]
    fn lifting_keeps_codes_decodable(input in lift_input()) {
        props::lift_preserves_decodability(input)?;
    }

    #[test]
    fn classification_is_symmetric_and_monotone(input in triple_input()) {
        props::classification_monotone(input)?;
    }

    #[test]
    fn files_round_trip(input in round_trip_input()) {
        props::formats_round_trip(input)?;
    }
}
