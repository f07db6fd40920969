//! Exact Ramsey numbers for tiny 3-uniform patterns, by backtracking over
//! 2-colourings of complete hypergraphs with monochromatic-copy pruning.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{triples_of, Hypergraph3, TripleColouring};

/// Caps on the pattern size; the search is exponential in the colouring.
pub const MAX_PATTERN_VERTICES: usize = 6;
pub const MAX_PATTERN_EDGES: usize = 4;

/// Pipeline-scale constants, kept as run metadata. The output constant is
/// the max of 2 T0 / c, N0 and 2 T0 n0; nothing asymptotic is asserted
/// about it at desk scale.
#[derive(Clone, Debug, Serialize)]
pub struct RamseyConfig {
    pub m: usize,
    pub t0: usize,
    pub ell0: usize,
    /// Target clique order for the reduced hypergraph.
    pub k: usize,
    pub c0: f64,
    pub cap_big_t: usize,
    pub cap_big_n: usize,
    pub cap_small_n: usize,
    pub max_degree: usize,
}

impl RamseyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::domain("m must be at least 1"));
        }
        if self.k < 2 * self.max_degree + 1 {
            return Err(Error::domain(format!(
                "clique target k = {} below 2 * max degree + 1 = {}",
                self.k,
                2 * self.max_degree + 1
            )));
        }
        Ok(())
    }

    pub fn output_constant(&self, c: f64) -> f64 {
        (2.0 * self.cap_big_t as f64 / c)
            .max(self.cap_big_n as f64)
            .max(2.0 * (self.cap_big_t * self.cap_small_n) as f64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RamseyValue {
    Exact(usize),
    /// The search ran out of levels or budget knowing only R >= this.
    AtLeast(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct RamseyOutcome {
    pub value: RamseyValue,
    /// Avoiding colourings found along the way, one per exceeded level.
    pub certificates: Vec<(usize, TripleColouring)>,
    pub nodes_explored: u64,
    pub budget_exhausted: bool,
}

/// Compute R(pattern) by increasing m: find a colouring of the complete
/// 3-uniform hypergraph on m vertices with no monochromatic copy of the
/// pattern (then R > m, certificate stored), or exhaust the colouring space
/// (then R = m). Stops at `m_max` or after `budget` search nodes with
/// honest bounds.
pub fn exact_ramsey(pattern: &Hypergraph3, m_max: usize, budget: u64) -> Result<RamseyOutcome> {
    if pattern.n() > MAX_PATTERN_VERTICES || pattern.edge_count() as usize > MAX_PATTERN_EDGES {
        return Err(Error::capacity(format!(
            "the exact search is capped at {MAX_PATTERN_VERTICES} vertices and {MAX_PATTERN_EDGES} hyperedges"
        )));
    }
    if pattern.edge_count() == 0 {
        // a copy with no hyperedges is monochromatic vacuously
        return Ok(RamseyOutcome {
            value: RamseyValue::Exact(pattern.n()),
            certificates: Vec::new(),
            nodes_explored: 0,
            budget_exhausted: false,
        });
    }
    let mut nodes = 0u64;
    let mut certificates = Vec::new();
    let mut lo = pattern.n(); // R >= |V(H)| since smaller hosts hold no copy
    for m in pattern.n()..=m_max {
        match search_avoiding(pattern, m, budget, &mut nodes) {
            SearchResult::Avoiding(col) => {
                certificates.push((m, col));
                lo = m + 1;
            }
            SearchResult::None => {
                return Ok(RamseyOutcome {
                    value: RamseyValue::Exact(m),
                    certificates,
                    nodes_explored: nodes,
                    budget_exhausted: false,
                });
            }
            SearchResult::Budget => {
                return Ok(RamseyOutcome {
                    value: RamseyValue::AtLeast(lo),
                    certificates,
                    nodes_explored: nodes,
                    budget_exhausted: true,
                });
            }
        }
    }
    Ok(RamseyOutcome {
        value: RamseyValue::AtLeast(lo),
        certificates,
        nodes_explored: nodes,
        budget_exhausted: false,
    })
}

enum SearchResult {
    Avoiding(TripleColouring),
    None,
    Budget,
}

/// DFS over the triples of K_m in rank order. The first triple is pinned to
/// colour 0 (swapping the colours of an avoiding colouring yields another
/// avoiding colouring, so this loses nothing). A branch dies as soon as the
/// triple just coloured completes a monochromatic pattern copy among the
/// assigned triples of its colour.
fn search_avoiding(pattern: &Hypergraph3, m: usize, budget: u64, nodes: &mut u64) -> SearchResult {
    let triples = triples_of(m);
    if triples.is_empty() {
        // no triples to colour; avoiding iff no copy fits, i.e. m < |V(H)|
        return if m >= pattern.n() && pattern.edge_count() == 0 {
            SearchResult::None
        } else {
            SearchResult::Avoiding(TripleColouring::new(m, Vec::new()).unwrap())
        };
    }
    let mut colours: Vec<u8> = Vec::with_capacity(triples.len());
    let mut sets: [HashSet<[usize; 3]>; 2] = [HashSet::new(), HashSet::new()];
    let outcome = dfs(pattern, m, &triples, &mut colours, &mut sets, budget, nodes);
    match outcome {
        Some(true) => {
            let col = TripleColouring::new(m, colours).expect("complete assignment");
            SearchResult::Avoiding(col)
        }
        Some(false) => SearchResult::None,
        None => SearchResult::Budget,
    }
}

/// Some(true): avoiding colouring sits in `colours`. Some(false): subtree
/// exhausted. None: budget ran out.
fn dfs(
    pattern: &Hypergraph3,
    m: usize,
    triples: &[[usize; 3]],
    colours: &mut Vec<u8>,
    sets: &mut [HashSet<[usize; 3]>; 2],
    budget: u64,
    nodes: &mut u64,
) -> Option<bool> {
    let depth = colours.len();
    if depth == triples.len() {
        return Some(true);
    }
    let choices: &[u8] = if depth == 0 { &[0] } else { &[0, 1] };
    for &c in choices {
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        let t = triples[depth];
        sets[c as usize].insert(t);
        colours.push(c);
        let creates_copy = mono_copy_using(pattern, &sets[c as usize], t, m);
        let result = if creates_copy {
            Some(false)
        } else {
            dfs(pattern, m, triples, colours, sets, budget, nodes)
        };
        if result != Some(false) {
            return result; // avoiding found, or budget exhausted
        }
        colours.pop();
        sets[c as usize].remove(&t);
    }
    Some(false)
}

/// Is there a copy of the pattern inside `coloured` that uses the triple
/// `anchor`? Patterns are tiny, so this maps pattern hyperedges one at a
/// time with an injective partial vertex map.
fn mono_copy_using(
    pattern: &Hypergraph3,
    coloured: &HashSet<[usize; 3]>,
    anchor: [usize; 3],
    m: usize,
) -> bool {
    if m < pattern.n() {
        return false;
    }
    let edges: Vec<[usize; 3]> = pattern.edges().copied().collect();
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut map: Vec<Option<usize>> = vec![None; pattern.n()];
    for (anchor_idx, _) in edges.iter().enumerate() {
        for perm in &perms {
            let e = edges[anchor_idx];
            let mut ok = true;
            let mut touched = Vec::new();
            for (slot, &p) in perm.iter().enumerate() {
                let pv = e[slot];
                let hv = anchor[p];
                match map[pv] {
                    None => {
                        if map.contains(&Some(hv)) {
                            ok = false;
                            break;
                        }
                        map[pv] = Some(hv);
                        touched.push(pv);
                    }
                    Some(existing) if existing == hv => {}
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let mut rest: Vec<[usize; 3]> = edges.clone();
                rest.remove(anchor_idx);
                if extend_edges(&rest, coloured, &mut map) {
                    return true;
                }
            }
            for pv in touched {
                map[pv] = None;
            }
        }
    }
    false
}

/// Try to map every remaining pattern hyperedge onto a coloured triple,
/// extending the injective vertex map.
fn extend_edges(
    edges: &[[usize; 3]],
    coloured: &HashSet<[usize; 3]>,
    map: &mut Vec<Option<usize>>,
) -> bool {
    let Some((idx, edge)) = edges
        .iter()
        .enumerate()
        .max_by_key(|(_, e)| e.iter().filter(|&&v| map[v].is_some()).count())
        .map(|(i, e)| (i, *e))
    else {
        return true;
    };
    let rest: Vec<[usize; 3]> = edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != idx)
        .map(|(_, &e)| e)
        .collect();
    for t in coloured {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        'perm: for perm in &perms {
            let mut touched = Vec::new();
            for (slot, &p) in perm.iter().enumerate() {
                let pv = edge[slot];
                let hv = t[p];
                match map[pv] {
                    None => {
                        if map.contains(&Some(hv)) {
                            for &u in &touched {
                                map[u] = None;
                            }
                            continue 'perm;
                        }
                        map[pv] = Some(hv);
                        touched.push(pv);
                    }
                    Some(existing) if existing == hv => {}
                    _ => {
                        for &u in &touched {
                            map[u] = None;
                        }
                        continue 'perm;
                    }
                }
            }
            if extend_edges(&rest, coloured, map) {
                return true;
            }
            for &u in &touched {
                map[u] = None;
            }
        }
    }
    false
}

/// Re-validate a certificate: scan both colour classes outright for a
/// monochromatic copy; an avoiding colouring has none.
pub fn colouring_avoids(pattern: &Hypergraph3, colouring: &TripleColouring) -> bool {
    let m = colouring.m();
    if m < pattern.n() {
        return true;
    }
    if pattern.edge_count() == 0 {
        return false;
    }
    for colour in 0..2u8 {
        let set: HashSet<[usize; 3]> = colouring
            .entries()
            .filter(|&(_, c)| c == colour)
            .map(|(t, _)| t)
            .collect();
        let edges: Vec<[usize; 3]> = pattern.edges().copied().collect();
        let mut map: Vec<Option<usize>> = vec![None; pattern.n()];
        if extend_edges(&edges, &set, &mut map) {
            return false;
        }
    }
    true
}
