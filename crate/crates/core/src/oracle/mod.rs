//! Feasibility classification for three unit-rate sessions, canonical
//! counter-examples, and exhaustive code search.

mod generators;
mod search;

pub use generators::{
    example, example_text, gen_113, gen_222, gen_232, gen_23_rate21, gen_fig1, COR232, EXAMPLES, FIG1, FIG2A, FIG2B,
    FIG3,
};
pub use search::{brute_force_routing, brute_force_scalar, SearchConfig, SearchMode, SearchReport, DEFAULT_BUDGET};

use std::fmt;

use thiserror::Error;

use crate::flow::connectivity_level;
use crate::graph::UnicastInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Routing,
    Scalar,
    VectorT2,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Routing => "routing",
            Strategy::Scalar => "scalar",
            Strategy::VectorT2 => "vector-T2",
        })
    }
}

/// Evidence behind an infeasibility verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Witness {
    /// A concrete counter-example, by generator name.
    Generator(&'static str),
    /// Infeasible by the characterization, without a built counter-example.
    CharacterizationOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Feasible(Strategy),
    Infeasible(Witness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// Connectivity levels in ascending order.
    pub sorted: [usize; 3],
    pub status: Status,
    /// `permutation[i]` is the query position holding `sorted[i]`.
    pub permutation: [usize; 3],
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self.status, Status::Feasible(_))
    }

    /// The witness instance with sessions reordered so that its
    /// connectivity vector equals the queried triple.
    pub fn witness_instance(&self) -> Option<UnicastInstance> {
        let Status::Infeasible(Witness::Generator(id)) = self.status else { return None };
        let inst = match id {
            "gen_222" => gen_222(),
            "gen_113" => gen_113(),
            "gen_232" => gen_232(),
            _ => return None,
        };
        let levels = connectivity_level(&inst).0;
        let mut query = [0; 3];
        for (i, &p) in self.permutation.iter().enumerate() {
            query[p] = self.sorted[i];
        }
        let mut used = [false; 3];
        let order: Vec<usize> = query
            .iter()
            .map(|&k| {
                let j = (0..3).find(|&j| !used[j] && levels[j] == k).expect("witness matches the sorted triple");
                used[j] = true;
                j
            })
            .collect();
        Some(inst.permute_sessions(&order))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.sorted;
        match self.status {
            Status::Feasible(s) => write!(f, "feasible [{a},{b},{c}] strategy={s}"),
            Status::Infeasible(Witness::Generator(g)) => write!(f, "infeasible [{a},{b},{c}] witness={g}"),
            Status::Infeasible(Witness::CharacterizationOnly) => {
                write!(f, "infeasible [{a},{b},{c}] witness=characterization-only")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("connectivity levels must lie in 1..=3, got {0:?}")]
pub struct TripleError(pub [usize; 3]);

/// Feasibility of three unit-rate sessions from their connectivity levels.
pub fn classify_triple(k: [usize; 3]) -> Result<Verdict, TripleError> {
    if k.iter().any(|&x| !(1..=3).contains(&x)) {
        return Err(TripleError(k));
    }
    let mut permutation = [0, 1, 2];
    permutation.sort_by_key(|&i| (k[i], i));
    let sorted = permutation.map(|i| k[i]);
    let status = if sorted == [3, 3, 3] {
        Status::Feasible(Strategy::Routing)
    } else if sorted[0] >= 1 && sorted[1] >= 3 {
        Status::Feasible(Strategy::VectorT2)
    } else {
        Status::Infeasible(match sorted {
            [2, 2, 2] => Witness::Generator("gen_222"),
            [1, 1, 3] => Witness::Generator("gen_113"),
            [2, 2, 3] => Witness::Generator("gen_232"),
            _ => Witness::CharacterizationOnly,
        })
    };
    Ok(Verdict { sorted, status, permutation })
}
