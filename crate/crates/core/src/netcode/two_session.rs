//! Scalar codes for two sessions of rates 1 and `m` with connectivity
//! `[1, m + 1]`.

use super::{ensure_verified, realize, ConstructError, NetworkCode};
use crate::field::{CodingVector, PrimeField};
use crate::flow::{connectivity_level, edge_disjoint_paths};
use crate::graph::{Path, UnicastInstance};
use crate::transform::{is_minimal, lift_code, minimize, overlap_segments, structure};

struct Planner<'a> {
    field: PrimeField,
    len: usize,
    planned: &'a mut [CodingVector],
}

impl Planner<'_> {
    fn unit(&self, k: usize) -> CodingVector {
        CodingVector::unit(self.field, self.len, k)
    }

    fn paint(&mut self, edges: &[crate::graph::EdgeId], v: &CodingVector) {
        for e in edges {
            self.planned[e.0] = v.clone();
        }
    }

    /// `spare` holds the rate-m session's paths still unused, `symbols` the
    /// symbols still to deliver (always one fewer than the paths).
    fn plan(
        &mut self,
        main: &Path,
        x1: usize,
        mut spare: Vec<Path>,
        mut symbols: Vec<usize>,
    ) -> Result<(), ConstructError> {
        debug_assert_eq!(spare.len(), symbols.len() + 1);
        if symbols.is_empty() {
            let v = self.unit(x1);
            self.paint(&main.edges, &v);
            return Ok(());
        }
        let overlaps: Vec<_> = spare.iter().map(|q| overlap_segments(main, q)).collect();
        if let Some(free) = (0..spare.len()).rev().find(|&j| overlaps[j].is_empty()) {
            let path = spare.remove(free);
            let sym = symbols.pop().expect("nonempty");
            let v = self.unit(sym);
            self.paint(&path.edges, &v);
            return self.plan(main, x1, spare, symbols);
        }
        if let Some((j, segs)) = overlaps.iter().enumerate().find(|(_, s)| s.len() != 1) {
            return Err(ConstructError::MultipleOverlaps { path: j + 1, segments: segs.len() });
        }
        // Relabel the paths in the order their segments appear along `main`.
        let mut order: Vec<usize> = (0..spare.len()).collect();
        order.sort_by_key(|&j| overlaps[j][0].first_offset);

        let field = self.field;
        let mut sum = CodingVector::zeros(field, self.len);
        for &sym in &symbols {
            sum.add_scaled(1, &self.unit(sym));
        }
        let mut running = self.unit(x1);
        let mut cursor = 0;
        let last = order.len() - 1;
        for (rank, &j) in order.iter().enumerate() {
            let seg = &overlaps[j][0];
            let q = &spare[j];
            let entering = if rank < last { self.unit(symbols[rank]) } else { sum.clone() };
            self.paint(&q.edges[..seg.second_offset], &entering);
            self.paint(&main.edges[cursor..seg.first_offset], &running);
            if rank < last {
                running.add_scaled(1, &entering);
            } else {
                running.add_scaled(field.neg(1), &entering);
            }
            self.paint(&q.edges[seg.second_offset..], &running);
            cursor = seg.first_offset + seg.edges.len();
        }
        self.paint(&main.edges[cursor..], &running);
        Ok(())
    }
}

/// Scalar code on a minimal structured instance with two sessions of rates
/// `1` and `m` and connectivity exactly `[1, m + 1]`.
///
/// If the rate-1 path misses one of the other session's paths, a symbol is
/// routed on that path and the rest is solved recursively. Otherwise every
/// path meets the rate-1 path in exactly one segment; taking the paths in
/// segment order, path `i` feeds symbol `i` into its segment, which then
/// carries `x + y_1 + ... + y_i`, and the last path feeds the sum of all
/// `y` so its segment carries `x` again.
pub fn assign_1m(instance: &UnicastInstance, field: PrimeField) -> Result<NetworkCode, ConstructError> {
    if instance.session_count() != 2 {
        return Err(ConstructError::SessionCount { expected: 2, found: instance.session_count() });
    }
    let (r1, m) = (instance.sessions()[0].rate, instance.sessions()[1].rate);
    if r1 != 1 {
        return Err(ConstructError::Rates(format!("expected rates (1, m), found ({r1}, {m})")));
    }
    let conn = connectivity_level(instance);
    if conn.levels() != [1, m + 1] {
        return Err(ConstructError::Connectivity { required: format!("[1,{}]", m + 1), found: conn });
    }
    if !instance.is_normalized() || instance.max_internal_degree() > 3 {
        return Err(ConstructError::NotStructured);
    }
    if !is_minimal(instance) {
        return Err(ConstructError::NotMinimal);
    }
    let main = edge_disjoint_paths(instance, 0, 1)?.paths.remove(0);
    let spare = edge_disjoint_paths(instance, 1, m + 1)?.paths;
    let mut planned = vec![CodingVector::zeros(field, instance.symbol_count()); instance.graph().edge_count()];
    let mut planner = Planner { field, len: instance.symbol_count(), planned: &mut planned };
    planner.plan(&main, instance.symbols(0).start, spare, instance.symbols(1).collect())?;
    let code = realize(instance, field, 1, &planned)?;
    ensure_verified(instance, code)
}

/// [`assign_1m`] for any two-session instance with rates `(1, m)` and
/// connectivity at least `[1, m + 1]`: private endpoints cap the
/// connectivity at exactly `[1, m + 1]`, then the graph is structured and
/// minimized, and the resulting code is lifted back.
pub fn code_two_session(instance: &UnicastInstance, field: PrimeField) -> Result<NetworkCode, ConstructError> {
    if instance.session_count() != 2 {
        return Err(ConstructError::SessionCount { expected: 2, found: instance.session_count() });
    }
    let m = instance.sessions()[1].rate;
    if instance.sessions()[0].rate != 1 {
        return Err(ConstructError::Rates("first session must have rate 1".into()));
    }
    let conn = connectivity_level(instance);
    if !conn.dominates(&[1, m + 1]) {
        return Err(ConstructError::Connectivity { required: format!(">= [1,{}]", m + 1), found: conn });
    }
    let (isolated, to_isolated) = instance.isolate_endpoints(&[1, m + 1]);
    let structured = structure(&isolated);
    let minimized = minimize(&structured.instance);
    let code = assign_1m(&minimized.instance, field)?;
    let embedding = to_isolated.then(&structured.embedding).then(&minimized.embedding(&structured.instance));
    Ok(lift_code(instance, &minimized.instance, &embedding, &code)?)
}
