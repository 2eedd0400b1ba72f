use std::fmt;

use thiserror::Error;

use crate::field::{in_span, CodingVector, PrimeField};
use crate::graph::{EdgeId, UnicastInstance};

/// What a local coefficient multiplies: an in-edge of the tail, or a source
/// symbol observed at the tail (global symbol index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Input {
    Edge(EdgeId),
    Symbol(usize),
}

impl fmt::Display for Input {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Input::Edge(e) => write!(f, "e{}", e.0),
            Input::Symbol(k) => write!(f, "x{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("code covers {code} edges but the {t}-expanded instance has {graph}")]
    EdgeCount { code: usize, graph: usize, t: usize },
    #[error("edge e{edge}: input {input} is not available at the tail")]
    UnavailableInput { edge: usize, input: Input },
    #[error("edge e{edge}: coefficient {value} is not an element of GF({q})")]
    OutOfField { edge: usize, value: u32, q: u32 },
}

/// A linear network code on the `t`-fold time expansion of an instance
/// (`t == 1` for scalar codes). Edge `e` of the expansion is copy
/// `e % t` of original edge `e / t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkCode {
    field: PrimeField,
    t: usize,
    /// Per expanded edge, nonzero coefficients sorted by input.
    local: Vec<Vec<(Input, u32)>>,
}

impl NetworkCode {
    /// The all-zero code.
    pub fn new(field: PrimeField, t: usize, edge_count: usize) -> Self {
        assert!(t >= 1);
        Self { field, t, local: vec![Vec::new(); edge_count] }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn edge_count(&self) -> usize {
        self.local.len()
    }

    /// Sets one local coefficient; zero removes the entry.
    pub fn set(&mut self, edge: EdgeId, input: Input, value: u32) {
        let value = self.field.reduce(value as i64);
        let list = &mut self.local[edge.0];
        match list.binary_search_by_key(&input, |&(i, _)| i) {
            Ok(pos) if value == 0 => {
                list.remove(pos);
            }
            Ok(pos) => list[pos].1 = value,
            Err(_) if value == 0 => {}
            Err(pos) => list.insert(pos, (input, value)),
        }
    }

    pub fn get(&self, edge: EdgeId, input: Input) -> u32 {
        let list = &self.local[edge.0];
        list.binary_search_by_key(&input, |&(i, _)| i).map(|p| list[p].1).unwrap_or(0)
    }

    pub fn coefficients(&self, edge: EdgeId) -> &[(Input, u32)] {
        &self.local[edge.0]
    }

    /// Clears every coefficient of `edge`.
    pub fn clear(&mut self, edge: EdgeId) {
        self.local[edge.0].clear();
    }

    /// Expanded instance the code lives on.
    pub fn carrier(&self, instance: &UnicastInstance) -> UnicastInstance {
        if self.t == 1 {
            instance.clone()
        } else {
            instance.expand_time(self.t).instance
        }
    }

    /// Checks that every coefficient refers to an input available at the
    /// tail of its edge in the expanded instance.
    pub fn validate(&self, expanded: &UnicastInstance) -> Result<(), CodeError> {
        let g = expanded.graph();
        if g.edge_count() != self.local.len() {
            return Err(CodeError::EdgeCount { code: self.local.len(), graph: g.edge_count(), t: self.t });
        }
        for e in g.edge_ids() {
            let tail = g.tail(e);
            for &(input, value) in &self.local[e.0] {
                if value >= self.field.q() {
                    return Err(CodeError::OutOfField { edge: e.0, value, q: self.field.q() });
                }
                let ok = match input {
                    Input::Edge(f) => f.0 < g.edge_count() && g.head(f) == tail,
                    Input::Symbol(k) => {
                        k < expanded.symbol_count() && expanded.sessions()[expanded.symbol_session(k)].source == tail
                    }
                };
                if !ok {
                    return Err(CodeError::UnavailableInput { edge: e.0, input });
                }
            }
        }
        Ok(())
    }
}

/// Global coding vector of every edge, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalCodeTable {
    pub vectors: Vec<CodingVector>,
}

impl GlobalCodeTable {
    pub fn get(&self, e: EdgeId) -> &CodingVector {
        &self.vectors[e.0]
    }

    /// Every vector has at most one nonzero entry and that entry is 1.
    pub fn is_routing(&self) -> bool {
        self.vectors.iter().all(|v| v.weight() <= 1 && v.entries().iter().all(|&c| c <= 1))
    }
}

/// Global vectors computed in topological edge order. `expanded` must be the
/// instance the code lives on and the code must validate against it.
pub fn propagate(expanded: &UnicastInstance, code: &NetworkCode) -> GlobalCodeTable {
    let g = expanded.graph();
    let field = code.field();
    let len = expanded.symbol_count();
    let mut vectors = vec![CodingVector::zeros(field, len); g.edge_count()];
    for e in g.edge_order() {
        let mut acc = CodingVector::zeros(field, len);
        for &(input, c) in code.coefficients(e) {
            match input {
                Input::Edge(f) => acc.add_scaled(c, &vectors[f.0]),
                Input::Symbol(k) => acc.add_scaled(c, &CodingVector::unit(field, len, k)),
            }
        }
        vectors[e.0] = acc;
    }
    GlobalCodeTable { vectors }
}

/// Pushes concrete source values through the local coefficients edge by edge.
pub fn simulate(expanded: &UnicastInstance, code: &NetworkCode, sources: &[u32]) -> Vec<u32> {
    let g = expanded.graph();
    let field = code.field();
    let mut values = vec![0u32; g.edge_count()];
    for e in g.edge_order() {
        let mut acc = 0;
        for &(input, c) in code.coefficients(e) {
            let x = match input {
                Input::Edge(f) => values[f.0],
                Input::Symbol(k) => sources[k],
            };
            acc = field.add(acc, field.mul(c, x));
        }
        values[e.0] = acc;
    }
    values
}

/// Decoding outcome at one terminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalCheck {
    pub session: usize,
    /// Per own-session symbol, coefficients over [`TerminalCheck::received`]
    /// reproducing its unit vector, or `None` when it is not in the span.
    pub decoding: Vec<Option<Vec<u32>>>,
    /// What the terminal combines: its in-edges, then symbols observed at it.
    pub received: Vec<Input>,
}

impl TerminalCheck {
    pub fn passes(&self) -> bool {
        self.decoding.iter().all(Option::is_some)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub terminals: Vec<TerminalCheck>,
}

impl Verification {
    pub fn all_pass(&self) -> bool {
        self.terminals.iter().all(TerminalCheck::passes)
    }

    pub fn passing(&self) -> Vec<bool> {
        self.terminals.iter().map(TerminalCheck::passes).collect()
    }
}

/// Checks decodability against an already propagated table.
pub fn verify_table(expanded: &UnicastInstance, table: &GlobalCodeTable, field: PrimeField) -> Verification {
    let g = expanded.graph();
    let len = expanded.symbol_count();
    let terminals = expanded
        .sessions()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut received: Vec<Input> = g.in_edges(s.terminal).iter().map(|&e| Input::Edge(e)).collect();
            received.extend(expanded.symbols_at(s.terminal).into_iter().map(Input::Symbol));
            let rows: Vec<CodingVector> = received
                .iter()
                .map(|r| match *r {
                    Input::Edge(e) => table.vectors[e.0].clone(),
                    Input::Symbol(k) => CodingVector::unit(field, len, k),
                })
                .collect();
            let decoding = expanded.symbols(i).map(|k| in_span(&CodingVector::unit(field, len, k), &rows)).collect();
            TerminalCheck { session: i, decoding, received }
        })
        .collect();
    Verification { terminals }
}

/// Whether every terminal can recover its own session's symbols. `instance`
/// is the unexpanded instance; the code's `t` selects the expansion.
pub fn verify_code(instance: &UnicastInstance, code: &NetworkCode) -> Result<Verification, CodeError> {
    let expanded = code.carrier(instance);
    code.validate(&expanded)?;
    let table = propagate(&expanded, code);
    Ok(verify_table(&expanded, &table, code.field()))
}
