//! Canonical example instances.
//!
//! Each generator is a fixed instance text, so ids are identical whether an
//! instance is built in memory or written and re-read.

use crate::graph::{parse_instance, UnicastInstance};

/// Three sessions, connectivity `[2,2,2]`. Every source reaches two relays
/// `v1`, `v2`; the node set `{s1,s2,s3,v1,v2}` leaves through two edges.
pub const FIG2A: &str = "\
session 1 s1 t1
session 2 s2 t2
session 3 s3 t3
edge s1 v1
edge s1 v2
edge s2 v1
edge s2 v2
edge s3 v1
edge s3 v2
edge v1 u1
edge v2 u2
edge u1 t1
edge u1 t2
edge u1 t3
edge u2 t1
edge u2 t2
edge u2 t3
";

/// Three sessions, connectivity `[1,1,3]`. Sessions 1 and 2 share the single
/// edge leaving `{s1,s2,v1}`.
pub const FIG2B: &str = "\
session 1 s1 t1
session 2 s2 t2
session 3 s3 t3
edge s1 v1
edge s2 v1
edge v1 w
edge w t1
edge w t2
edge s3 w
edge w t3
edge s3 x
edge x t3
edge s3 y
edge y t3
";

/// Two sessions with rates `{2, 1}` and connectivity `[2,3]`, no violated
/// cut, yet no code. Edge roles: `a-b` and `c-d` form the upper chain,
/// `s1-u`, `u-x` and `w-z` the lower one; `t1` hears `c-d` (via `d`) and
/// `w-z`, `t2` hears `a-b`, `u-x` and `w-z`.
pub const FIG3: &str = "\
session 1 s1 t1 rate=2
session 2 s2 t2
edge s1 a
edge s2 a
edge a b
edge b t2
edge b c
edge s2 c
edge c d
edge d t1
edge d u
edge s1 u
edge u x
edge x t2
edge x w
edge s2 w
edge w z
edge z t1
edge z t2
";

/// [`FIG3`] with the rate-2 session split into two collocated unit
/// sessions: connectivity `[2,3,2]`.
pub const COR232: &str = "\
session 1 s1 t1
session 2 s2 t2
session 3 s1 t1
edge s1 a
edge s2 a
edge a b
edge b t2
edge b c
edge s2 c
edge c d
edge d t1
edge d u
edge s1 u
edge u x
edge x t2
edge x w
edge s2 w
edge w z
edge z t1
edge z t2
";

/// Two sessions, connectivity `[2,2]`. The two unicasts must cross twice
/// (`u1-u2` then `w1-w2` for session 2, `u1-u2` then `u3-u4` for session 1),
/// so edge-disjoint routing is impossible, while coding `x1 + x2` on `u1-u2`
/// lets `w1` and `u3` each strip off the foreign symbol.
pub const FIG1: &str = "\
session 1 s1 t1
session 2 s2 t2
edge s1 u1
edge s1 w1
edge s2 u1
edge s2 u3
edge u1 u2
edge u2 u3
edge u2 w1
edge w1 w2
edge w2 w3
edge w2 t2
edge u3 u4
edge u4 t1
edge u4 w3
edge w3 w4
edge w4 t1
edge w4 t2
";

/// Example ids accepted by [`example`], with their instance texts.
pub const EXAMPLES: [(&str, &str); 5] =
    [("fig1", FIG1), ("fig2a", FIG2A), ("fig2b", FIG2B), ("fig3", FIG3), ("cor232", COR232)];

fn build(text: &str) -> UnicastInstance {
    parse_instance(text).expect("built-in example parses")
}

pub fn gen_222() -> UnicastInstance {
    build(FIG2A)
}

pub fn gen_113() -> UnicastInstance {
    build(FIG2B)
}

pub fn gen_23_rate21() -> UnicastInstance {
    build(FIG3)
}

pub fn gen_232() -> UnicastInstance {
    build(COR232)
}

pub fn gen_fig1() -> UnicastInstance {
    build(FIG1)
}

/// Instance text of a built-in example.
pub fn example_text(id: &str) -> Option<&'static str> {
    EXAMPLES.iter().find(|(name, _)| *name == id).map(|(_, text)| *text)
}

pub fn example(id: &str) -> Option<UnicastInstance> {
    example_text(id).map(build)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::connectivity_level;

    #[test]
    fn advertised_connectivity() {
        let cases: [(&str, &[usize]); 5] = [
            ("fig1", &[2, 2]),
            ("fig2a", &[2, 2, 2]),
            ("fig2b", &[1, 1, 3]),
            ("fig3", &[2, 3]),
            ("cor232", &[2, 3, 2]),
        ];
        for (id, levels) in cases {
            assert_eq!(connectivity_level(&example(id).unwrap()).levels(), levels, "{id}");
        }
    }

    #[test]
    fn split_rates_of_fig3_give_cor232() {
        let split = gen_23_rate21().normalize(true);
        assert_eq!(split.instance, gen_232());
        assert_eq!(split.session_origin, vec![0, 1, 0]);
    }

    #[test]
    fn texts_are_canonical() {
        for (_, text) in EXAMPLES {
            assert_eq!(build(text).to_string(), text);
        }
    }
}
