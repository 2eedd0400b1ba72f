//! Exhaustive search for linear or routing codes on small instances.
//!
//! Edges are assigned in topological order (tail rank, then id). An edge's
//! choices are the coefficient tuples over its free positions (in-edges of
//! its tail by id, then symbols observed at its tail), enumerated in
//! lexicographic order. Only tuples that are zero or whose first nonzero
//! entry is 1 are tried: rescaling an edge and compensating downstream
//! never changes what terminals can decode, and the lexicographically first
//! code always has this form, so the first code found is the same as with
//! full enumeration.
//!
//! After each assignment every affected terminal is tested against an upper
//! bound on what it can still receive: its assigned in-edges, assigned edges
//! whose head still has unassigned out-edges and reaches the terminal, and
//! the symbols observed at nodes with unassigned out-edges that reach it.
//! A terminal whose own symbols are outside that span prunes the subtree.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::field::PrimeField;
use crate::graph::{EdgeId, UnicastInstance};
use crate::netcode::{verify_code, Input, NetworkCode};

pub const DEFAULT_BUDGET: u64 = 1 << 36;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Arbitrary local coefficients over GF(q).
    Linear,
    /// Every edge forwards one available symbol or nothing.
    Routing,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Linear => "linear",
            SearchMode::Routing => "routing",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub q: u32,
    pub t: usize,
    /// Maximum number of edge assignments visited.
    pub budget: u64,
    pub jobs: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { q: 2, t: 1, budget: DEFAULT_BUDGET, jobs: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub mode: SearchMode,
    pub q: u32,
    pub t: usize,
    /// Edge assignments visited, including pruned ones.
    pub enumerated: u64,
    /// The lexicographically first decodable code, if one was found.
    pub code: Option<NetworkCode>,
    /// The whole space was searched and holds no code.
    pub exhausted: bool,
}

impl SearchReport {
    pub fn budget_exceeded(&self) -> bool {
        self.code.is_none() && !self.exhausted
    }
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode={}", self.mode)?;
        writeln!(f, "field={}", self.q)?;
        writeln!(f, "T={}", self.t)?;
        writeln!(f, "enumerated={}", self.enumerated)?;
        writeln!(f, "exhausted={}", self.exhausted)?;
        write!(f, "found={}", self.code.is_some())
    }
}

/// Upper bound on what a terminal can still receive.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Bound {
    terminal: usize,
    edges: Vec<usize>,
    symbols: Vec<usize>,
}

struct Problem {
    field: PrimeField,
    inverse: Vec<u32>,
    mode: SearchMode,
    t: usize,
    len: usize,
    order: Vec<EdgeId>,
    position: Vec<usize>,
    inputs: Vec<Vec<Input>>,
    /// Symbols observed at each position's tail.
    tail_symbols: Vec<Vec<usize>>,
    /// Linear mode: coefficient tuples per arity.
    tuples: BTreeMap<usize, Vec<Vec<u32>>>,
    own: Vec<Vec<usize>>,
    initial: Vec<Bound>,
    /// Bounds to test after assigning each position.
    checks: Vec<Vec<Bound>>,
}

fn tuples_for(q: u32, arity: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; arity]];
    let total = (q as u64).checked_pow(arity as u32).expect("arity too large for exhaustive search");
    for code in 1..total {
        let mut digits = vec![0u32; arity];
        let mut rest = code;
        for d in digits.iter_mut().rev() {
            *d = (rest % q as u64) as u32;
            rest /= q as u64;
        }
        if digits.iter().find(|&&d| d != 0) == Some(&1) {
            out.push(digits);
        }
    }
    out
}

impl Problem {
    fn new(expanded: &UnicastInstance, field: PrimeField, mode: SearchMode, t: usize) -> Self {
        let g = expanded.graph();
        let n_nodes = g.node_count();
        let order = g.edge_order();
        let mut position = vec![0; g.edge_count()];
        for (p, e) in order.iter().enumerate() {
            position[e.0] = p;
        }
        let mut inputs = Vec::with_capacity(order.len());
        let mut tail_symbols = Vec::with_capacity(order.len());
        let mut tuples = BTreeMap::new();
        for &e in &order {
            let tail = g.tail(e);
            let symbols = expanded.symbols_at(tail);
            let mut list: Vec<Input> = g.in_edges(tail).iter().map(|&f| Input::Edge(f)).collect();
            list.extend(symbols.iter().map(|&k| Input::Symbol(k)));
            if mode == SearchMode::Linear {
                tuples.entry(list.len()).or_insert_with(|| tuples_for(field.q(), list.len()));
            }
            inputs.push(list);
            tail_symbols.push(symbols);
        }

        // reach[u][v]: v reachable from u (reflexive).
        let mut reach = vec![vec![false; n_nodes]; n_nodes];
        for &u in g.topological_order().iter().rev() {
            reach[u.0][u.0] = true;
            for &e in g.out_edges(u) {
                let below = reach[g.head(e).0].clone();
                for (r, b) in reach[u.0].iter_mut().zip(below) {
                    *r |= b;
                }
            }
        }
        // last_out[u]: position of the last out-edge of u, if any.
        let last_out: Vec<Option<usize>> =
            g.nodes().map(|u| g.out_edges(u).iter().map(|e| position[e.0]).max()).collect();
        let bound_at = |assigned: usize, terminal: usize| -> Bound {
            let tnode = expanded.sessions()[terminal].terminal;
            let open = |u: crate::graph::NodeId| last_out[u.0].is_some_and(|l| l >= assigned);
            let edges = (0..assigned)
                .filter(|&j| {
                    let h = g.head(order[j]);
                    h == tnode || (open(h) && reach[h.0][tnode.0])
                })
                .collect();
            let mut symbols = expanded.symbols_at(tnode);
            for u in g.nodes() {
                if u != tnode && open(u) && reach[u.0][tnode.0] {
                    symbols.extend(expanded.symbols_at(u));
                }
            }
            symbols.sort_unstable();
            symbols.dedup();
            Bound { terminal, edges, symbols }
        };
        let sessions = expanded.session_count();
        let initial: Vec<Bound> = (0..sessions).map(|i| bound_at(0, i)).collect();
        let mut checks = Vec::with_capacity(order.len());
        let mut previous = initial.clone();
        for p in 0..order.len() {
            let current: Vec<Bound> = (0..sessions).map(|i| bound_at(p + 1, i)).collect();
            let due = current
                .iter()
                .zip(&previous)
                .filter(|(c, prev)| c != prev || c.edges.contains(&p))
                .map(|(c, _)| c.clone())
                .collect();
            checks.push(due);
            previous = current;
        }
        let q = field.q();
        let inverse = (0..q).map(|a| if a == 0 { 0 } else { field.inv(a).expect("nonzero") }).collect();
        Self {
            field,
            inverse,
            mode,
            t,
            len: expanded.symbol_count(),
            order,
            position,
            inputs,
            tail_symbols,
            tuples,
            own: (0..sessions).map(|i| expanded.symbols(i).collect()).collect(),
            initial,
            checks,
        }
    }

    fn depth(&self) -> usize {
        self.order.len()
    }
}

/// Mutable search state of one worker.
struct Worker<'a> {
    p: &'a Problem,
    vectors: Vec<u32>,
    carried: Vec<Option<usize>>,
    route_options: Vec<Vec<Option<usize>>>,
    scratch: Vec<u32>,
}

enum Outcome {
    Found(Vec<usize>),
    Exhausted,
    Stopped,
}

impl<'a> Worker<'a> {
    fn new(p: &'a Problem) -> Self {
        Self {
            p,
            vectors: vec![0; p.depth() * p.len],
            carried: vec![None; p.depth()],
            route_options: vec![Vec::new(); p.depth()],
            scratch: Vec::new(),
        }
    }

    fn enter(&mut self, depth: usize) {
        if self.p.mode == SearchMode::Routing {
            let mut opts: Vec<usize> = self.p.tail_symbols[depth].clone();
            for input in &self.p.inputs[depth] {
                if let Input::Edge(f) = input {
                    if let Some(k) = self.carried[self.p.position[f.0]] {
                        opts.push(k);
                    }
                }
            }
            opts.sort_unstable();
            opts.dedup();
            // Forwarding something never hurts a routing solution, so an
            // idle edge is only tried when nothing is available.
            let list = &mut self.route_options[depth];
            list.clear();
            if opts.is_empty() {
                list.push(None);
            }
            list.extend(opts.into_iter().map(Some));
        }
    }

    fn option_count(&self, depth: usize) -> usize {
        match self.p.mode {
            SearchMode::Linear => self.p.tuples[&self.p.inputs[depth].len()].len(),
            SearchMode::Routing => self.route_options[depth].len(),
        }
    }

    fn apply(&mut self, depth: usize, choice: usize) {
        let p = self.p;
        let len = p.len;
        let (before, rest) = self.vectors.split_at_mut(depth * len);
        let out = &mut rest[..len];
        out.fill(0);
        match p.mode {
            SearchMode::Linear => {
                let tuple = &p.tuples[&p.inputs[depth].len()][choice];
                let q = p.field.q();
                for (input, &c) in p.inputs[depth].iter().zip(tuple) {
                    if c == 0 {
                        continue;
                    }
                    match *input {
                        Input::Symbol(k) => out[k] = (out[k] + c) % q,
                        Input::Edge(f) => {
                            let src = &before[p.position[f.0] * len..][..len];
                            for (o, &s) in out.iter_mut().zip(src) {
                                *o = (*o + c * s) % q;
                            }
                        }
                    }
                }
            }
            SearchMode::Routing => {
                let k = self.route_options[depth][choice];
                self.carried[depth] = k;
                if let Some(k) = k {
                    out[k] = 1;
                }
            }
        }
    }

    fn decodable(&mut self, bound: &Bound) -> bool {
        let p = self.p;
        let (len, q) = (p.len, p.field.q());
        let rows = bound.edges.len() + bound.symbols.len();
        self.scratch.clear();
        self.scratch.resize(rows * len, 0);
        for (r, &j) in bound.edges.iter().enumerate() {
            self.scratch[r * len..][..len].copy_from_slice(&self.vectors[j * len..][..len]);
        }
        for (r, &k) in bound.symbols.iter().enumerate() {
            self.scratch[(bound.edges.len() + r) * len + k] = 1;
        }
        // Row reduce, remembering pivot columns.
        let m = &mut self.scratch;
        let mut pivots = Vec::with_capacity(len);
        let mut rank = 0;
        for col in 0..len {
            let Some(r) = (rank..rows).find(|&r| m[r * len + col] != 0) else { continue };
            for c in 0..len {
                m.swap(r * len + c, rank * len + c);
            }
            let inv = p.inverse[m[rank * len + col] as usize];
            for c in 0..len {
                m[rank * len + c] = m[rank * len + c] * inv % q;
            }
            for other in 0..rows {
                let factor = m[other * len + col];
                if other != rank && factor != 0 {
                    for c in 0..len {
                        let sub = factor * m[rank * len + c] % q;
                        m[other * len + c] = (m[other * len + c] + q - sub) % q;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        // A unit vector is in a row space in reduced form iff its column is a
        // pivot whose row has no other nonzero entry.
        p.own[bound.terminal].iter().all(|&k| {
            pivots.iter().position(|&c| c == k).is_some_and(|r| (0..len).all(|c| c == k || m[r * len + c] == 0))
        })
    }

    fn passes(&mut self, bounds: &[Bound]) -> bool {
        bounds.iter().all(|b| self.decodable(b))
    }

    /// Recomputes the state for an already checked prefix.
    fn replay(&mut self, prefix: &[usize]) {
        for (d, &c) in prefix.iter().enumerate() {
            self.enter(d);
            self.apply(d, c);
        }
    }

    /// Depth-first search below `prefix`.
    fn run(&mut self, prefix: &[usize], counter: &Counter, abort: &dyn Fn() -> bool) -> Outcome {
        let n = self.p.depth();
        self.replay(prefix);
        let base = prefix.len();
        if base == n {
            return Outcome::Found(prefix.to_vec());
        }
        let mut choice: Vec<usize> = prefix.to_vec();
        choice.resize(n, 0);
        let mut depth = base;
        self.enter(depth);
        let mut local = 0u64;
        loop {
            if choice[depth] >= self.option_count(depth) {
                if depth == base {
                    counter.add(local);
                    return Outcome::Exhausted;
                }
                depth -= 1;
                choice[depth] += 1;
                continue;
            }
            local += 1;
            if local & 0x3ff == 0 {
                counter.add(local);
                local = 0;
                if counter.over() || abort() {
                    return Outcome::Stopped;
                }
            } else if counter.single && counter.total() + local > counter.budget {
                counter.add(local);
                return Outcome::Stopped;
            }
            self.apply(depth, choice[depth]);
            let p = self.p;
            if self.passes(&p.checks[depth]) {
                depth += 1;
                if depth == n {
                    counter.add(local);
                    return Outcome::Found(choice);
                }
                choice[depth] = 0;
                self.enter(depth);
            } else {
                choice[depth] += 1;
            }
        }
    }

    /// Surviving one-level extensions of `prefix`.
    fn extend(&mut self, prefix: &[usize], counter: &Counter) -> Vec<Vec<usize>> {
        self.replay(prefix);
        let depth = prefix.len();
        self.enter(depth);
        let mut out = Vec::new();
        for c in 0..self.option_count(depth) {
            counter.add(1);
            self.apply(depth, c);
            let p = self.p;
            if self.passes(&p.checks[depth]) {
                let mut next = prefix.to_vec();
                next.push(c);
                out.push(next);
            }
        }
        out
    }

    fn build_code(&mut self, choice: &[usize]) -> NetworkCode {
        let p = self.p;
        let mut code = NetworkCode::new(p.field, p.t, p.depth());
        for (d, &c) in choice.iter().enumerate() {
            self.enter(d);
            self.apply(d, c);
            let e = p.order[d];
            match p.mode {
                SearchMode::Linear => {
                    let tuple = &p.tuples[&p.inputs[d].len()][c];
                    for (&input, &v) in p.inputs[d].iter().zip(tuple) {
                        code.set(e, input, v);
                    }
                }
                SearchMode::Routing => {
                    if let Some(k) = self.carried[d] {
                        let input = if p.tail_symbols[d].contains(&k) {
                            Input::Symbol(k)
                        } else {
                            *p.inputs[d]
                                .iter()
                                .find(|i| matches!(i, Input::Edge(f) if self.carried[p.position[f.0]] == Some(k)))
                                .expect("carried symbol has a source")
                        };
                        code.set(e, input, 1);
                    }
                }
            }
        }
        code
    }
}

struct Counter {
    total: AtomicU64,
    budget: u64,
    single: bool,
}

impl Counter {
    fn add(&self, n: u64) {
        self.total.fetch_add(n, Ordering::Relaxed);
    }

    fn total(&self) -> u64 {
        self.total.load(Ordering::Relaxed)
    }

    fn over(&self) -> bool {
        self.total() > self.budget
    }
}

fn search(instance: &UnicastInstance, config: SearchConfig, mode: SearchMode) -> SearchReport {
    let field = PrimeField::new(config.q).expect("search field must be prime");
    let t = config.t.max(1);
    let expanded = if t == 1 { instance.clone() } else { instance.expand_time(t).instance };
    let problem = Problem::new(&expanded, field, mode, t);
    let counter = Counter { total: AtomicU64::new(0), budget: config.budget, single: config.jobs <= 1 };
    let mut report = SearchReport { mode, q: config.q, t, enumerated: 0, code: None, exhausted: false };
    let mut worker = Worker::new(&problem);
    if !worker.passes(&problem.initial) {
        report.exhausted = true;
        return report;
    }

    let found: Option<Vec<usize>> = if config.jobs <= 1 {
        match worker.run(&[], &counter, &|| false) {
            Outcome::Found(c) => Some(c),
            Outcome::Exhausted => {
                report.exhausted = true;
                None
            }
            Outcome::Stopped => None,
        }
    } else {
        // Split the space into lexicographically ordered prefixes.
        let mut tasks: Vec<Vec<usize>> = vec![Vec::new()];
        let mut depth = 0;
        while tasks.len() < config.jobs * 16 && depth < problem.depth() && !counter.over() {
            tasks = tasks.iter().flat_map(|t| worker.extend(t, &counter)).collect();
            depth += 1;
        }
        let next = AtomicUsize::new(0);
        let best = AtomicUsize::new(usize::MAX);
        let stopped = AtomicBool::new(counter.over());
        let results: Mutex<BTreeMap<usize, Vec<usize>>> = Mutex::new(BTreeMap::new());
        std::thread::scope(|scope| {
            for _ in 0..config.jobs {
                scope.spawn(|| {
                    let mut worker = Worker::new(&problem);
                    loop {
                        let i = next.fetch_add(1, Ordering::SeqCst);
                        if i >= tasks.len() || i > best.load(Ordering::SeqCst) || stopped.load(Ordering::SeqCst) {
                            break;
                        }
                        let abort = || best.load(Ordering::SeqCst) < i || stopped.load(Ordering::SeqCst);
                        match worker.run(&tasks[i], &counter, &abort) {
                            Outcome::Found(c) => {
                                results.lock().expect("no poisoned workers").insert(i, c);
                                best.fetch_min(i, Ordering::SeqCst);
                            }
                            Outcome::Exhausted => {}
                            Outcome::Stopped => {
                                if counter.over() {
                                    stopped.store(true, Ordering::SeqCst);
                                }
                            }
                        }
                    }
                });
            }
        });
        let best = best.load(Ordering::SeqCst);
        if best != usize::MAX {
            results.into_inner().expect("no poisoned workers").remove(&best)
        } else {
            report.exhausted = !stopped.load(Ordering::SeqCst) && !counter.over();
            None
        }
    };

    report.enumerated = counter.total();
    if let Some(choice) = found {
        let code = worker.build_code(&choice);
        assert!(
            verify_code(instance, &code).is_ok_and(|v| v.all_pass()),
            "search returned a code that does not decode"
        );
        report.code = Some(code);
    }
    report
}

/// Exhaustive search for a linear code over GF(q) on the `T`-fold
/// expansion (`T = 1` gives scalar codes).
pub fn brute_force_scalar(instance: &UnicastInstance, config: SearchConfig) -> SearchReport {
    search(instance, config, SearchMode::Linear)
}

/// Exhaustive search for a routing solution on the `T`-fold expansion.
pub fn brute_force_routing(instance: &UnicastInstance, config: SearchConfig) -> SearchReport {
    search(instance, SearchConfig { q: 2, ..config }, SearchMode::Routing)
}
