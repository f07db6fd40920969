//! The labelled-copy backtracking engine.
//!
//! A pattern is embedded class-respectingly into a host: pattern class `c`
//! goes into host class `class_map[c]`, vertices landing in one host class
//! stay distinct, edges must land on host edges and hyperedges on host
//! hyperedges. Copies are subcomplexes, not induced: host edges between
//! image vertices that the pattern does not demand are fine.
//!
//! Some pattern vertices may be pinned to host vertices up front; the engine
//! then counts (or enumerates, or finds) assignments of the remaining
//! `active` vertices. Only constraints with all endpoints among
//! active-or-pinned vertices apply, so taking `active` to be a vertex subset
//! S counts copies of the induced subcomplex on S.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bits::BitRow;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::par;

/// Where the second endpoint of a pending hyperedge filter lives.
#[derive(Clone, Copy, Debug)]
enum Other {
    Pinned(Vertex),
    Pos(usize),
}

#[derive(Clone, Copy, Debug)]
struct TriAction {
    other: Other,
    target: usize,
}

pub(crate) struct Engine<'a> {
    host: &'a Complex,
    /// Active pattern vertices in placement order.
    positions: Vec<Vertex>,
    host_class: Vec<usize>,
    init_cand: Vec<BitRow>,
    /// Per position: later positions connected by a pattern edge.
    edge_actions: Vec<Vec<usize>>,
    /// Per position: hyperedge filters that become tight here.
    tri_actions: Vec<Vec<TriAction>>,
    /// Per depth: no constraints among positions >= depth, so the subtree
    /// count may collapse to a product of falling factorials.
    tail_free: Vec<bool>,
    pinned: Vec<(Vertex, Vertex)>,
    /// Set when a constraint is statically unsatisfiable (e.g. a pattern
    /// edge between two classes mapped to the same host class).
    unsat: bool,
}

pub(crate) struct Spec<'a> {
    pub pattern: &'a Complex,
    pub class_map: &'a [usize],
    pub active: &'a [Vertex],
    pub pinned: &'a [(Vertex, Vertex)],
    pub use_hyperedges: bool,
    /// Explicit placement order over `active`; the default is descending
    /// complex degree.
    pub order: Option<&'a [Vertex]>,
}

impl<'a> Engine<'a> {
    pub fn compile(spec: &Spec<'_>, host: &'a Complex) -> Result<Engine<'a>> {
        let pattern = spec.pattern;
        if spec.class_map.len() != pattern.k() {
            return Err(Error::structure(format!(
                "class map covers {} classes but the pattern has {}",
                spec.class_map.len(),
                pattern.k()
            )));
        }
        if let Some(&c) = spec.class_map.iter().find(|&&c| c >= host.k()) {
            return Err(Error::structure(format!(
                "class map targets host class {c} but the host has {} classes",
                host.k()
            )));
        }
        let in_pattern =
            |v: Vertex| v.class < pattern.k() && v.index < pattern.class_sizes()[v.class];
        for &v in spec.active {
            if !in_pattern(v) {
                return Err(Error::structure(format!(
                    "active vertex ({},{}) not in pattern",
                    v.class, v.index
                )));
            }
        }
        for &(p, h) in spec.pinned {
            if !in_pattern(p) {
                return Err(Error::structure(format!(
                    "pinned vertex ({},{}) not in pattern",
                    p.class, p.index
                )));
            }
            let hc = spec.class_map[p.class];
            if h.class != hc || h.index >= host.class_sizes()[h.class] {
                return Err(Error::structure(format!(
                    "pin ({},{}) -> ({},{}) does not respect the class map",
                    p.class, p.index, h.class, h.index
                )));
            }
        }
        let mut scope: Vec<Vertex> = spec.active.to_vec();
        scope.extend(spec.pinned.iter().map(|&(p, _)| p));
        {
            let mut sorted = scope.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != scope.len() {
                return Err(Error::structure("active and pinned vertex sets overlap"));
            }
        }
        let pin_of = |v: Vertex| spec.pinned.iter().find(|&&(p, _)| p == v).map(|&(_, h)| h);
        let in_scope = |v: Vertex| spec.active.contains(&v) || pin_of(v).is_some();

        // pinned-only constraints must already hold: the pins are a copy
        for &(p, h) in spec.pinned {
            for &(q, g) in spec.pinned {
                if p < q && pattern.has_edge(p, q) && !host.has_edge(h, g) {
                    return Err(Error::domain(format!(
                        "pinned map is not a copy: pattern edge ({},{})-({},{}) has no host edge",
                        p.class, p.index, q.class, q.index
                    )));
                }
                if p < q && h == g {
                    return Err(Error::domain(
                        "pinned map sends two vertices to one host vertex",
                    ));
                }
            }
        }
        if spec.use_hyperedges {
            for t in pattern.hyperedges() {
                if let (Some(a), Some(b), Some(c)) = (pin_of(t[0]), pin_of(t[1]), pin_of(t[2])) {
                    if !host.has_hyperedge(a, b, c) {
                        return Err(Error::domain(
                            "pinned map is not a copy: a pattern hyperedge lands outside the host hyperedges",
                        ));
                    }
                }
            }
        }

        // placement order: descending complex degree, then (class, index),
        // unless the caller supplies its own order
        let positions = match spec.order {
            Some(order) => {
                let mut a = order.to_vec();
                let mut b = spec.active.to_vec();
                a.sort();
                b.sort();
                if a != b {
                    return Err(Error::structure(
                        "placement order must be a permutation of the active vertices",
                    ));
                }
                order.to_vec()
            }
            None => {
                let mut positions = spec.active.to_vec();
                positions.sort_by(|&a, &b| {
                    pattern
                        .complex_degree(b)
                        .cmp(&pattern.complex_degree(a))
                        .then(a.cmp(&b))
                });
                positions
            }
        };

        let pos_of = |v: Vertex| positions.iter().position(|&x| x == v);
        let host_class: Vec<usize> = positions.iter().map(|&v| spec.class_map[v.class]).collect();
        let mut unsat = false;

        // initial candidate rows: full class, minus pinned-neighbour filters
        let mut init_cand: Vec<BitRow> = positions
            .iter()
            .zip(&host_class)
            .map(|(_, &hc)| BitRow::full(host.class_sizes()[hc]))
            .collect();
        let mut edge_actions: Vec<Vec<usize>> = vec![Vec::new(); positions.len()];
        let mut tri_actions: Vec<Vec<TriAction>> = vec![Vec::new(); positions.len()];

        for (u, v) in pattern.graph().edges() {
            if !in_scope(u) || !in_scope(v) {
                continue;
            }
            match (pos_of(u), pos_of(v)) {
                (Some(pu), Some(pv)) => {
                    if host_class[pu] == host_class[pv] {
                        // a host class has no internal edges
                        unsat = true;
                        continue;
                    }
                    let (a, b) = if pu < pv { (pu, pv) } else { (pv, pu) };
                    edge_actions[a].push(b);
                }
                (Some(pu), None) => {
                    let h = pin_of(v).unwrap();
                    if h.class == host_class[pu] {
                        unsat = true;
                        continue;
                    }
                    init_cand[pu].and_assign(host.graph().neighbours_in(h, host_class[pu]));
                }
                (None, Some(pv)) => {
                    let h = pin_of(u).unwrap();
                    if h.class == host_class[pv] {
                        unsat = true;
                        continue;
                    }
                    init_cand[pv].and_assign(host.graph().neighbours_in(h, host_class[pv]));
                }
                (None, None) => {}
            }
        }

        if spec.use_hyperedges {
            for t in pattern.hyperedges() {
                if !t.iter().all(|&x| in_scope(x)) {
                    continue;
                }
                let mut active_pos: Vec<usize> = t.iter().filter_map(|&x| pos_of(x)).collect();
                active_pos.sort_unstable();
                match active_pos.len() {
                    0 => {} // all pinned, validated above
                    1 => {
                        // two pinned endpoints: filter the initial candidates
                        let target = active_pos[0];
                        let pins: Vec<Vertex> = t.iter().filter_map(|&x| pin_of(x)).collect();
                        let keep: Vec<usize> = init_cand[target]
                            .iter()
                            .filter(|&w| {
                                host.has_hyperedge(
                                    pins[0],
                                    pins[1],
                                    Vertex::new(host_class[target], w),
                                )
                            })
                            .collect();
                        init_cand[target] = BitRow::from_indices(init_cand[target].len(), keep);
                    }
                    2 => {
                        let pin = t.iter().find_map(|&x| pin_of(x)).unwrap();
                        let (first, second) = (active_pos[0], active_pos[1]);
                        tri_actions[first].push(TriAction {
                            other: Other::Pinned(pin),
                            target: second,
                        });
                    }
                    _ => {
                        let (a, b, c) = (active_pos[0], active_pos[1], active_pos[2]);
                        tri_actions[b].push(TriAction {
                            other: Other::Pos(a),
                            target: c,
                        });
                    }
                }
            }
        }

        // tail_free[d]: no edge between two positions >= d and no hyperedge
        // filter that still has to fire at a position >= d
        let n = positions.len();
        let mut tail_free = vec![true; n + 1];
        for d in (0..n).rev() {
            let mut free = tail_free[d + 1];
            if edge_actions[d].iter().any(|&q| q >= d) {
                free = false;
            }
            if !tri_actions[d].is_empty() {
                free = false;
            }
            tail_free[d] = free;
        }

        Ok(Engine {
            host,
            positions,
            host_class,
            init_cand,
            edge_actions,
            tri_actions,
            tail_free,
            pinned: spec.pinned.to_vec(),
            unsat,
        })
    }

    fn used_init(&self) -> Vec<BitRow> {
        let mut used: Vec<BitRow> = self
            .host
            .class_sizes()
            .iter()
            .map(|&n| BitRow::empty(n))
            .collect();
        for &(_, h) in &self.pinned {
            used[h.class].set(h.index);
        }
        used
    }

    /// Falling-factorial product for an unconstrained tail, or None when the
    /// candidate rows within some host class differ (the count is then a
    /// permanent, not a product).
    fn tail_product(&self, depth: usize, cand: &[BitRow], used: &[BitRow]) -> Option<BigUint> {
        let mut per_class: Vec<(usize, usize, BitRow)> = Vec::new(); // (class, multiplicity, row)
        for (q, cand_row) in cand.iter().enumerate().skip(depth) {
            let hc = self.host_class[q];
            let mut row = cand_row.clone();
            row.and_not_assign(&used[hc]);
            match per_class.iter_mut().find(|(c, _, _)| *c == hc) {
                Some((_, mult, existing)) => {
                    if *existing != row {
                        return None;
                    }
                    *mult += 1;
                }
                None => per_class.push((hc, 1, row)),
            }
        }
        let mut total = BigUint::one();
        for (_, mult, row) in per_class {
            let m = row.count();
            if m < mult {
                return Some(BigUint::zero());
            }
            for i in 0..mult {
                total *= BigUint::from(m - i);
            }
        }
        Some(total)
    }

    /// Apply the actions triggered by placing position `depth` at host
    /// vertex `v`, recording undo state. Returns false when some candidate
    /// row emptied (callers may still recurse; the empty row prunes there).
    fn apply_actions(
        &self,
        depth: usize,
        v: usize,
        cand: &mut [BitRow],
        chosen: &[usize],
        undo: &mut Vec<(usize, BitRow)>,
    ) {
        let placed = Vertex::new(self.host_class[depth], v);
        for &q in &self.edge_actions[depth] {
            undo.push((q, cand[q].clone()));
            cand[q].and_assign(self.host.graph().neighbours_in(placed, self.host_class[q]));
        }
        for act in &self.tri_actions[depth] {
            let other = match act.other {
                Other::Pinned(h) => h,
                Other::Pos(p) => Vertex::new(self.host_class[p], chosen[p]),
            };
            let q = act.target;
            undo.push((q, cand[q].clone()));
            let keep: Vec<usize> = cand[q]
                .iter()
                .filter(|&w| {
                    self.host
                        .has_hyperedge(other, placed, Vertex::new(self.host_class[q], w))
                })
                .collect();
            cand[q] = BitRow::from_indices(cand[q].len(), keep);
        }
    }

    fn dfs_count(
        &self,
        depth: usize,
        cand: &mut [BitRow],
        used: &mut [BitRow],
        chosen: &mut [usize],
    ) -> BigUint {
        let n = self.positions.len();
        if depth == n {
            return BigUint::one();
        }
        if self.tail_free[depth] {
            if let Some(product) = self.tail_product(depth, cand, used) {
                return product;
            }
        }
        let hc = self.host_class[depth];
        let mut row = cand[depth].clone();
        row.and_not_assign(&used[hc]);
        if depth == n - 1 {
            return BigUint::from(row.count());
        }
        let mut total = BigUint::zero();
        for v in row.iter() {
            used[hc].set(v);
            chosen[depth] = v;
            let mut undo = Vec::new();
            self.apply_actions(depth, v, cand, chosen, &mut undo);
            total += self.dfs_count(depth + 1, cand, used, chosen);
            for (q, saved) in undo.into_iter().rev() {
                cand[q] = saved;
            }
            used[hc].clear(v);
        }
        total
    }

    pub fn count(&self, parallel: bool) -> BigUint {
        if self.unsat {
            return BigUint::zero();
        }
        let n = self.positions.len();
        if n == 0 {
            return BigUint::one();
        }
        let used0 = self.used_init();
        if n == 1 || !parallel {
            let mut cand = self.init_cand.clone();
            let mut used = used0;
            let mut chosen = vec![usize::MAX; n];
            return self.dfs_count(0, &mut cand, &mut used, &mut chosen);
        }
        let hc = self.host_class[0];
        let mut root = self.init_cand[0].clone();
        root.and_not_assign(&used0[hc]);
        let roots: Vec<usize> = root.iter().collect();
        par::sum_over(roots.len(), |i| {
            let v = roots[i];
            let mut cand = self.init_cand.clone();
            let mut used = self.used_init();
            let mut chosen = vec![usize::MAX; n];
            used[hc].set(v);
            chosen[0] = v;
            let mut undo = Vec::new();
            self.apply_actions(0, v, &mut cand, &chosen, &mut undo);
            self.dfs_count(1, &mut cand, &mut used, &mut chosen)
        })
    }

    fn dfs_visit<F>(
        &self,
        depth: usize,
        cand: &mut [BitRow],
        used: &mut [BitRow],
        chosen: &mut [usize],
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[(Vertex, Vertex)]) -> ControlFlow<()>,
    {
        let n = self.positions.len();
        if depth == n {
            let assignment: Vec<(Vertex, Vertex)> = self
                .positions
                .iter()
                .enumerate()
                .map(|(i, &p)| (p, Vertex::new(self.host_class[i], chosen[i])))
                .collect();
            return visit(&assignment);
        }
        let hc = self.host_class[depth];
        let mut row = cand[depth].clone();
        row.and_not_assign(&used[hc]);
        for v in row.iter() {
            used[hc].set(v);
            chosen[depth] = v;
            let mut undo = Vec::new();
            self.apply_actions(depth, v, cand, chosen, &mut undo);
            let flow = self.dfs_visit(depth + 1, cand, used, chosen, visit);
            for (q, saved) in undo.into_iter().rev() {
                cand[q] = saved;
            }
            used[hc].clear(v);
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Visit every embedding of the active vertices, in lexicographic order
    /// of the placement sequence. Sequential.
    pub fn for_each<F>(&self, mut visit: F)
    where
        F: FnMut(&[(Vertex, Vertex)]) -> ControlFlow<()>,
    {
        if self.unsat {
            return;
        }
        let n = self.positions.len();
        let mut cand = self.init_cand.clone();
        let mut used = self.used_init();
        let mut chosen = vec![usize::MAX; n];
        let _ = self.dfs_visit(0, &mut cand, &mut used, &mut chosen, &mut visit);
    }

    /// The embedding whose placement sequence is lexicographically least,
    /// if any; deterministic under parallelism (lowest root candidate wins).
    pub fn find_first(&self, parallel: bool) -> Option<Vec<(Vertex, Vertex)>> {
        if self.unsat {
            return None;
        }
        let n = self.positions.len();
        if n == 0 {
            return Some(Vec::new());
        }
        if n == 1 || !parallel {
            let mut found = None;
            self.for_each(|assignment| {
                found = Some(assignment.to_vec());
                ControlFlow::Break(())
            });
            return found;
        }
        let used0 = self.used_init();
        let hc = self.host_class[0];
        let mut root = self.init_cand[0].clone();
        root.and_not_assign(&used0[hc]);
        let roots: Vec<usize> = root.iter().collect();
        par::first_over(roots.len(), |i| {
            let v = roots[i];
            let mut cand = self.init_cand.clone();
            let mut used = self.used_init();
            let mut chosen = vec![usize::MAX; n];
            used[hc].set(v);
            chosen[0] = v;
            let mut undo = Vec::new();
            self.apply_actions(0, v, &mut cand, &chosen, &mut undo);
            let mut found = None;
            let _ = self.dfs_visit(1, &mut cand, &mut used, &mut chosen, &mut |assignment| {
                found = Some(assignment.to_vec());
                ControlFlow::Break(())
            });
            found
        })
    }

    /// Sequential search that records the deepest partial assignment and the
    /// position whose candidate row emptied there.
    pub fn find_with_trace(&self) -> std::result::Result<Vec<(Vertex, Vertex)>, FailureTrace> {
        if self.unsat {
            return Err(FailureTrace {
                deepest: Vec::new(),
                stuck: self.positions.first().copied(),
            });
        }
        let n = self.positions.len();
        let mut cand = self.init_cand.clone();
        let mut used = self.used_init();
        let mut chosen = vec![usize::MAX; n];
        let mut best_depth = 0usize;
        let mut best_partial: Vec<(Vertex, Vertex)> = Vec::new();
        let mut stuck: Option<Vertex> = self.positions.first().copied();
        let result = self.dfs_trace(
            0,
            &mut cand,
            &mut used,
            &mut chosen,
            &mut best_depth,
            &mut best_partial,
            &mut stuck,
        );
        match result {
            Some(found) => Ok(found),
            None => Err(FailureTrace {
                deepest: best_partial,
                stuck,
            }),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs_trace(
        &self,
        depth: usize,
        cand: &mut [BitRow],
        used: &mut [BitRow],
        chosen: &mut [usize],
        best_depth: &mut usize,
        best_partial: &mut Vec<(Vertex, Vertex)>,
        stuck: &mut Option<Vertex>,
    ) -> Option<Vec<(Vertex, Vertex)>> {
        let n = self.positions.len();
        if depth == n {
            return Some(
                self.positions
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| (p, Vertex::new(self.host_class[i], chosen[i])))
                    .collect(),
            );
        }
        let hc = self.host_class[depth];
        let mut row = cand[depth].clone();
        row.and_not_assign(&used[hc]);
        if row.is_empty() && depth >= *best_depth {
            *best_depth = depth;
            *best_partial = self
                .positions
                .iter()
                .take(depth)
                .enumerate()
                .map(|(i, &p)| (p, Vertex::new(self.host_class[i], chosen[i])))
                .collect();
            *stuck = Some(self.positions[depth]);
        }
        for v in row.iter() {
            used[hc].set(v);
            chosen[depth] = v;
            let mut undo = Vec::new();
            self.apply_actions(depth, v, cand, chosen, &mut undo);
            let found = self.dfs_trace(
                depth + 1,
                cand,
                used,
                chosen,
                best_depth,
                best_partial,
                stuck,
            );
            for (q, saved) in undo.into_iter().rev() {
                cand[q] = saved;
            }
            used[hc].clear(v);
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Deepest partial embedding reached by a failed search, plus the pattern
/// vertex whose candidate set emptied.
#[derive(Clone, Debug)]
pub struct FailureTrace {
    pub deepest: Vec<(Vertex, Vertex)>,
    pub stuck: Option<Vertex>,
}
