//! Triads (3-partite graphs), their triangles, and hypergraph-regularity
//! verification against a 3-uniform hyperedge set living on the triangles.

use std::collections::HashSet;

use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::bits::BitRow;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::par;
use crate::rng::SeqRng;

/// Edge cap for the exhaustive-tiny strategy (2^12 subtriads).
pub const EXHAUSTIVE_TINY_EDGE_CAP: u64 = 12;

/// A 3-partite graph. Sides are indexed 0, 1, 2; `labels` carries the
/// original class or cluster ids for reporting.
#[derive(Clone, Debug)]
pub struct Triad {
    pub labels: [usize; 3],
    pub ij: BipartiteGraph,
    pub jk: BipartiteGraph,
    pub ik: BipartiteGraph,
}

impl Triad {
    pub fn new(
        labels: [usize; 3],
        ij: BipartiteGraph,
        jk: BipartiteGraph,
        ik: BipartiteGraph,
    ) -> Result<Self> {
        if labels[0] == labels[1] || labels[1] == labels[2] || labels[0] == labels[2] {
            return Err(Error::structure("triad class labels must be distinct"));
        }
        if ij.left_size() != ik.left_size()
            || ij.right_size() != jk.left_size()
            || jk.right_size() != ik.right_size()
        {
            return Err(Error::structure("triad parts disagree on side sizes"));
        }
        Ok(Triad { labels, ij, jk, ik })
    }

    pub fn sizes(&self) -> [usize; 3] {
        [
            self.ij.left_size(),
            self.ij.right_size(),
            self.jk.right_size(),
        ]
    }

    pub fn edge_count(&self) -> u64 {
        self.ij.edge_count() + self.jk.edge_count() + self.ik.edge_count()
    }
}

/// Hyperedges projected onto a triad's three sides, in local coordinates.
#[derive(Clone, Debug, Default)]
pub struct TriadHypergraph {
    edges: HashSet<[u32; 3]>,
}

impl TriadHypergraph {
    pub fn new(edges: impl IntoIterator<Item = [usize; 3]>) -> Self {
        TriadHypergraph {
            edges: edges
                .into_iter()
                .map(|t| [t[0] as u32, t[1] as u32, t[2] as u32])
                .collect(),
        }
    }

    #[inline]
    pub fn contains(&self, u: usize, v: usize, w: usize) -> bool {
        self.edges.contains(&[u as u32, v as u32, w as u32])
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.edges
            .iter()
            .map(|t| [t[0] as usize, t[1] as usize, t[2] as usize])
    }
}

/// The induced triad of a complex on classes i < j < k, together with the
/// complex's hyperedges on those classes.
pub fn triad_of_complex(
    h: &Complex,
    i: usize,
    j: usize,
    k: usize,
) -> Result<(Triad, TriadHypergraph)> {
    if !(i < j && j < k && k < h.k()) {
        return Err(Error::domain(format!(
            "need classes i < j < k < {}, got ({i},{j},{k})",
            h.k()
        )));
    }
    let triad = Triad::new(
        [i, j, k],
        h.graph().pair(i, j).clone(),
        h.graph().pair(j, k).clone(),
        h.graph().pair(i, k).clone(),
    )?;
    let edges = h.hyperedges().filter_map(|t| {
        if t[0].class == i && t[1].class == j && t[2].class == k {
            Some([t[0].index, t[1].index, t[2].index])
        } else {
            None
        }
    });
    Ok((triad, TriadHypergraph::new(edges)))
}

/// Visit every triangle (u, v, w) of the triad, one vertex per side.
pub fn for_each_triangle(p: &Triad, mut f: impl FnMut(usize, usize, usize)) {
    for u in 0..p.ij.left_size() {
        let row_uk = p.ik.row_left(u);
        for v in p.ij.row_left(u).iter() {
            let mut common = p.jk.row_left(v).clone();
            common.and_assign(row_uk);
            for w in common.iter() {
                f(u, v, w);
            }
        }
    }
}

/// t(P): the number of triangles, counted by row intersection, fanned out
/// over the first side.
pub fn triangle_count(p: &Triad) -> u64 {
    par::sum_over(p.ij.left_size(), |u| {
        let row_uk = p.ik.row_left(u);
        p.ij.row_left(u)
            .iter()
            .map(|v| p.jk.row_left(v).intersection_count(row_uk) as u64)
            .sum()
    })
}

/// Single-threaded reference path for [`triangle_count`].
pub fn triangle_count_serial(p: &Triad) -> u64 {
    let mut t = 0u64;
    for_each_triangle(p, |_, _, _| t += 1);
    t
}

/// Materialize T(P) if it fits under `cap`; triads are otherwise streamed.
pub fn triangles_capped(p: &Triad, cap: usize) -> Result<Vec<[usize; 3]>> {
    let t = triangle_count(p);
    if t > cap as u64 {
        return Err(Error::capacity(format!(
            "triad has {t} triangles, above the materialization cap {cap}"
        )));
    }
    let mut out = Vec::with_capacity(t as usize);
    for_each_triangle(p, |u, v, w| out.push([u, v, w]));
    Ok(out)
}

/// d_G(P): the proportion of P's triangles that are hyperedges of G;
/// 0 when P has no triangles.
pub fn triad_density(g: &TriadHypergraph, p: &Triad) -> Rational64 {
    let mut t: i64 = 0;
    let mut hits: i64 = 0;
    for_each_triangle(p, |u, v, w| {
        t += 1;
        if g.contains(u, v, w) {
            hits += 1;
        }
    });
    if t == 0 {
        Rational64::new(0, 1)
    } else {
        Rational64::new(hits, t)
    }
}

/// The hypergraph whose edges are exactly the triangles of P that are NOT
/// edges of `g` (the complement within T(P)).
pub fn complement_on_triad(g: &TriadHypergraph, p: &Triad) -> TriadHypergraph {
    let mut edges = Vec::new();
    for_each_triangle(p, |u, v, w| {
        if !g.contains(u, v, w) {
            edges.push([u, v, w]);
        }
    });
    TriadHypergraph::new(edges)
}

/// A subtriad: a subgraph of each part of some triad.
#[derive(Clone, Debug)]
pub struct Subtriad {
    pub ij: BipartiteGraph,
    pub jk: BipartiteGraph,
    pub ik: BipartiteGraph,
}

impl Serialize for Subtriad {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        fn edges(bg: &BipartiteGraph) -> Vec<(usize, usize)> {
            bg.edges().collect()
        }
        let mut st = s.serialize_struct("Subtriad", 3)?;
        st.serialize_field("ij", &edges(&self.ij))?;
        st.serialize_field("jk", &edges(&self.jk))?;
        st.serialize_field("ik", &edges(&self.ik))?;
        st.end()
    }
}

impl Subtriad {
    /// The subtriad induced by vertex subsets of each side.
    pub fn induced(p: &Triad, x: &BitRow, y: &BitRow, z: &BitRow) -> Subtriad {
        Subtriad {
            ij: p.ij.masked(x, y),
            jk: p.jk.masked(y, z),
            ik: p.ik.masked(x, z),
        }
    }

    pub fn full(p: &Triad) -> Subtriad {
        Subtriad {
            ij: p.ij.clone(),
            jk: p.jk.clone(),
            ik: p.ik.clone(),
        }
    }

    pub fn validate_against(&self, p: &Triad) -> Result<()> {
        for (part, sup, name) in [
            (&self.ij, &p.ij, "ij"),
            (&self.jk, &p.jk, "jk"),
            (&self.ik, &p.ik, "ik"),
        ] {
            if part.left_size() != sup.left_size() || part.right_size() != sup.right_size() {
                return Err(Error::structure(format!(
                    "subtriad part {name} has wrong dimensions"
                )));
            }
            if !part.is_subgraph_of(sup) {
                return Err(Error::structure(format!(
                    "subtriad part {name} has an edge outside the triad"
                )));
            }
        }
        Ok(())
    }

    #[inline]
    fn contains_triangle(&self, u: usize, v: usize, w: usize) -> bool {
        self.ij.has_edge(u, v) && self.jk.has_edge(v, w) && self.ik.has_edge(u, w)
    }
}

/// t(Q-tuple) and d_G(Q-tuple): triangles of the union of the subtriads'
/// triangle sets, with multiplicity discarded, and the hyperedge proportion
/// over that union; density 0 when the union is empty.
pub fn tuple_density(
    g: &TriadHypergraph,
    p: &Triad,
    tuple: &[Subtriad],
) -> Result<(u64, Rational64)> {
    if tuple.is_empty() {
        return Err(Error::domain("tuple of subtriads must be non-empty"));
    }
    for q in tuple {
        q.validate_against(p)?;
    }
    Ok(tuple_density_unchecked(g, p, tuple))
}

fn tuple_density_unchecked(
    g: &TriadHypergraph,
    p: &Triad,
    tuple: &[Subtriad],
) -> (u64, Rational64) {
    let mut t: i64 = 0;
    let mut hits: i64 = 0;
    // every subtriad triangle is a triangle of P, so streaming T(P) covers
    // the union without materializing it
    for_each_triangle(p, |u, v, w| {
        if tuple.iter().any(|q| q.contains_triangle(u, v, w)) {
            t += 1;
            if g.contains(u, v, w) {
                hits += 1;
            }
        }
    });
    let d = if t == 0 {
        Rational64::new(0, 1)
    } else {
        Rational64::new(hits, t)
    };
    (t as u64, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TriadStrategy {
    /// Vertex-induced subtriads: degree-guided splits plus random subsets.
    Induced,
    /// Random edge subsets of each part.
    EdgeSampled,
    /// All single subtriads of a triad with at most
    /// [`EXHAUSTIVE_TINY_EDGE_CAP`] edges; a pass is a proof over the r = 1
    /// quantifier.
    ExhaustiveTiny,
}

#[derive(Clone, Debug, Serialize)]
pub struct TupleWitness {
    pub tuple: Vec<Subtriad>,
    pub t: u64,
    #[serde(serialize_with = "crate::density::ser_ratio")]
    pub density: Rational64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TriadRegVerdict {
    pub regular: bool,
    pub witness: Option<TupleWitness>,
    pub strategy: TriadStrategy,
}

/// Check whether the triad is (d3, delta3, r)-regular with respect to `g`:
/// every r-tuple of subtriads capturing at least `delta3 * t(P)` triangles
/// must have hypergraph density within `delta3` of `d3` (strictly).
///
/// The quantifier ranges over all r-tuples of arbitrary subtriads, so except
/// for `ExhaustiveTiny` (restricted to r = 1 on tiny triads) a pass means
/// only "no witness found" under the strategy's search; a fail always
/// carries a re-checkable witness.
#[allow(clippy::too_many_arguments)]
pub fn check_triad_regular(
    g: &TriadHypergraph,
    p: &Triad,
    d3: f64,
    delta3: f64,
    r: usize,
    strategy: TriadStrategy,
    budget: u64,
    seed: u64,
) -> Result<TriadRegVerdict> {
    if !(0.0..=1.0).contains(&delta3) || delta3 == 0.0 {
        return Err(Error::domain("delta3 must lie in (0, 1]"));
    }
    if r == 0 {
        return Err(Error::domain("r must be at least 1"));
    }
    let t_p = triangle_count(p);
    let threshold = delta3 * t_p as f64;
    let violates = |t: u64, d: Rational64| -> bool {
        t as f64 >= threshold && (d3 - d.to_f64().unwrap()).abs() >= delta3
    };

    let witness = match strategy {
        TriadStrategy::ExhaustiveTiny => exhaustive_tiny_search(g, p, violates)?,
        TriadStrategy::Induced => induced_search(g, p, r, budget, seed, &violates),
        TriadStrategy::EdgeSampled => edge_sampled_search(g, p, r, budget, seed, &violates),
    };

    Ok(match witness {
        Some((tuple, _, _)) => {
            let tuple = minimize_witness(g, p, tuple, &violates);
            let (t, density) = tuple_density_unchecked(g, p, &tuple);
            TriadRegVerdict {
                regular: false,
                witness: Some(TupleWitness { tuple, t, density }),
                strategy,
            }
        }
        None => TriadRegVerdict {
            regular: true,
            witness: None,
            strategy,
        },
    })
}

type FoundTuple = (Vec<Subtriad>, u64, Rational64);

fn exhaustive_tiny_search(
    g: &TriadHypergraph,
    p: &Triad,
    violates: impl Fn(u64, Rational64) -> bool,
) -> Result<Option<FoundTuple>> {
    let e = p.edge_count();
    if e > EXHAUSTIVE_TINY_EDGE_CAP {
        return Err(Error::capacity(format!(
            "exhaustive-tiny strategy needs at most {EXHAUSTIVE_TINY_EDGE_CAP} triad edges, got {e}"
        )));
    }
    let all_edges: Vec<(u8, usize, usize)> =
        p.ij.edges()
            .map(|(u, v)| (0u8, u, v))
            .chain(p.jk.edges().map(|(u, v)| (1u8, u, v)))
            .chain(p.ik.edges().map(|(u, v)| (2u8, u, v)))
            .collect();
    let sizes = p.sizes();
    for mask in 0u64..(1 << all_edges.len()) {
        let mut q = Subtriad {
            ij: BipartiteGraph::empty(sizes[0], sizes[1]),
            jk: BipartiteGraph::empty(sizes[1], sizes[2]),
            ik: BipartiteGraph::empty(sizes[0], sizes[2]),
        };
        for (bit, &(part, u, v)) in all_edges.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                match part {
                    0 => q.ij.add_edge(u, v),
                    1 => q.jk.add_edge(u, v),
                    _ => q.ik.add_edge(u, v),
                }
            }
        }
        let tuple = vec![q];
        let (t, d) = tuple_density_unchecked(g, p, &tuple);
        if violates(t, d) {
            return Ok(Some((tuple, t, d)));
        }
    }
    Ok(None)
}

/// Per-side vertex scores for the degree-guided candidates: the hyperedge
/// fraction among the triangles through each vertex. A planted density
/// deviation aligned with a vertex subset separates the scores.
fn side_scores(g: &TriadHypergraph, p: &Triad) -> [Vec<(f64, usize)>; 3] {
    let sizes = p.sizes();
    let mut tri = [
        vec![0u64; sizes[0]],
        vec![0u64; sizes[1]],
        vec![0u64; sizes[2]],
    ];
    let mut hit = tri.clone();
    for_each_triangle(p, |u, v, w| {
        tri[0][u] += 1;
        tri[1][v] += 1;
        tri[2][w] += 1;
        if g.contains(u, v, w) {
            hit[0][u] += 1;
            hit[1][v] += 1;
            hit[2][w] += 1;
        }
    });
    let score = |side: usize| -> Vec<(f64, usize)> {
        (0..sizes[side])
            .map(|x| {
                let t = tri[side][x];
                let r = if t == 0 {
                    0.0
                } else {
                    hit[side][x] as f64 / t as f64
                };
                (r, x)
            })
            .collect()
    };
    [score(0), score(1), score(2)]
}

fn induced_search(
    g: &TriadHypergraph,
    p: &Triad,
    r: usize,
    budget: u64,
    seed: u64,
    violates: &impl Fn(u64, Rational64) -> bool,
) -> Option<FoundTuple> {
    let sizes = p.sizes();
    let full: [BitRow; 3] = [
        BitRow::full(sizes[0]),
        BitRow::full(sizes[1]),
        BitRow::full(sizes[2]),
    ];

    let try_tuple = |tuple: Vec<Subtriad>| -> Option<FoundTuple> {
        let (t, d) = tuple_density_unchecked(g, p, &tuple);
        violates(t, d).then_some((tuple, t, d))
    };

    // Deterministic candidates first: for each side, the halves and quarters
    // of the score order and of the index order, other sides full. These
    // expose irregularities aligned with a vertex subset.
    let mut scores = side_scores(g, p);
    for side in scores.iter_mut() {
        side.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
    }
    for side in 0..3 {
        let n = sizes[side];
        if n < 2 {
            continue;
        }
        let by_score: Vec<usize> = scores[side].iter().map(|&(_, x)| x).collect();
        let by_index: Vec<usize> = (0..n).collect();
        for order in [&by_score, &by_index] {
            for frac in [2usize, 4] {
                let m = n.div_ceil(frac);
                for part in [&order[..m], &order[n - m..]] {
                    let mut sets = full.clone();
                    sets[side] = BitRow::from_indices(n, part.iter().copied());
                    let q = Subtriad::induced(p, &sets[0], &sets[1], &sets[2]);
                    if let Some(found) = try_tuple(vec![q; r]) {
                        return Some(found);
                    }
                }
            }
        }
    }

    // Random induced tuples for the remaining budget.
    let mut rng = SeqRng::new(seed);
    for _ in 0..budget {
        let tuple: Vec<Subtriad> = (0..r)
            .map(|_| {
                let mut sets = Vec::with_capacity(3);
                for &n in &sizes {
                    let size = rng.range_inclusive(1.min(n), n);
                    sets.push(BitRow::from_indices(n, rng.subset(n, size)));
                }
                Subtriad::induced(p, &sets[0], &sets[1], &sets[2])
            })
            .collect();
        if let Some(found) = try_tuple(tuple) {
            return Some(found);
        }
    }
    None
}

fn edge_sampled_search(
    g: &TriadHypergraph,
    p: &Triad,
    r: usize,
    budget: u64,
    seed: u64,
    violates: &impl Fn(u64, Rational64) -> bool,
) -> Option<FoundTuple> {
    let mut rng = SeqRng::new(seed);
    let sizes = p.sizes();
    for _ in 0..budget {
        let tuple: Vec<Subtriad> = (0..r)
            .map(|_| {
                // keep-probability drawn per subtriad so both dense and
                // sparse subsets get explored
                let keep = rng.unit();
                let mut q = Subtriad {
                    ij: BipartiteGraph::empty(sizes[0], sizes[1]),
                    jk: BipartiteGraph::empty(sizes[1], sizes[2]),
                    ik: BipartiteGraph::empty(sizes[0], sizes[2]),
                };
                for (sub, sup) in [(&mut q.ij, &p.ij), (&mut q.jk, &p.jk), (&mut q.ik, &p.ik)] {
                    for (u, v) in sup.edges() {
                        if rng.unit() < keep {
                            sub.add_edge(u, v);
                        }
                    }
                }
                q
            })
            .collect();
        let (t, d) = tuple_density_unchecked(g, p, &tuple);
        if violates(t, d) {
            return Some((tuple, t, d));
        }
    }
    None
}

/// Greedily shrink a witness tuple while it still violates: drop whole
/// subtriads, then single edges. Smaller counterexamples are checkable by
/// hand. Skipped for witnesses with many edges.
fn minimize_witness(
    g: &TriadHypergraph,
    p: &Triad,
    mut tuple: Vec<Subtriad>,
    violates: &impl Fn(u64, Rational64) -> bool,
) -> Vec<Subtriad> {
    let still_violates = |tuple: &[Subtriad]| -> bool {
        if tuple.is_empty() {
            return false;
        }
        let (t, d) = tuple_density_unchecked(g, p, tuple);
        violates(t, d)
    };
    // drop redundant subtriads
    let mut i = 0;
    while i < tuple.len() && tuple.len() > 1 {
        let mut shorter = tuple.clone();
        shorter.remove(i);
        if still_violates(&shorter) {
            tuple = shorter;
        } else {
            i += 1;
        }
    }
    let total_edges: u64 = tuple
        .iter()
        .map(|q| q.ij.edge_count() + q.jk.edge_count() + q.ik.edge_count())
        .sum();
    if total_edges > 400 {
        return tuple;
    }
    // single greedy pass over edges
    for qi in 0..tuple.len() {
        for part in 0..3 {
            let edges: Vec<(usize, usize)> = match part {
                0 => tuple[qi].ij.edges().collect(),
                1 => tuple[qi].jk.edges().collect(),
                _ => tuple[qi].ik.edges().collect(),
            };
            for (u, v) in edges {
                match part {
                    0 => tuple[qi].ij.remove_edge(u, v),
                    1 => tuple[qi].jk.remove_edge(u, v),
                    _ => tuple[qi].ik.remove_edge(u, v),
                }
                if !still_violates(&tuple) {
                    match part {
                        0 => tuple[qi].ij.add_edge(u, v),
                        1 => tuple[qi].jk.add_edge(u, v),
                        _ => tuple[qi].ik.add_edge(u, v),
                    }
                }
            }
        }
    }
    tuple
}

/// Strategy bundle for whole-complex regularity checks.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Strategies {
    pub graph_mode: crate::density::CheckMode,
    pub triad_strategy: TriadStrategy,
    pub triad_budget: u64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TripleStatus {
    Regular,
    /// The induced triad carries no hyperedges; this does not fail
    /// k-partite regularity.
    ZeroDensity,
    Irregular,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub classes: (usize, usize),
    pub status: crate::density::RegStatus,
    #[serde(serialize_with = "crate::density::ser_ratio")]
    pub density: Rational64,
    pub witness: Option<crate::density::SubsetWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleReport {
    pub classes: (usize, usize, usize),
    pub status: TripleStatus,
    #[serde(serialize_with = "crate::density::ser_ratio")]
    pub density: Rational64,
    pub witness: Option<TupleWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexRegReport {
    pub pairs: Vec<PairReport>,
    pub triples: Vec<TripleReport>,
    /// The (d3, delta3, d2, delta2, r)-regular predicate under the chosen
    /// strategies: every pair regular or empty, every triad regular or
    /// hypergraph-empty.
    pub regular: bool,
}

/// Check the whole complex: its underlying k-partite graph must be
/// (d2, delta2)-regular (each pair regular or empty) and each induced triad
/// must be (d3, delta3, r)-regular with respect to the hyperedges or carry
/// none at all.
#[allow(clippy::too_many_arguments)]
pub fn check_complex_regular(
    h: &Complex,
    d3: f64,
    delta3: f64,
    d2: f64,
    delta2: f64,
    r: usize,
    strategies: Strategies,
) -> Result<ComplexRegReport> {
    let k = h.k();
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            let bg = h.graph().pair(i, j);
            let verdict = crate::density::check_d_delta_regular_bipartite(
                bg,
                d2,
                delta2,
                strategies.graph_mode,
                strategies.seed ^ ((i as u64) << 32 | j as u64),
            )?;
            let total = (bg.left_size() * bg.right_size()) as i64;
            pairs.push(PairReport {
                classes: (i, j),
                status: verdict.status,
                density: Rational64::new(bg.edge_count() as i64, total.max(1)),
                witness: verdict.witness,
            });
        }
    }
    let mut triples = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            for l in (j + 1)..k {
                let (p, g) = triad_of_complex(h, i, j, l)?;
                let density = triad_density(&g, &p);
                if g.is_empty() {
                    triples.push(TripleReport {
                        classes: (i, j, l),
                        status: TripleStatus::ZeroDensity,
                        density,
                        witness: None,
                    });
                    continue;
                }
                let verdict = check_triad_regular(
                    &g,
                    &p,
                    d3,
                    delta3,
                    r,
                    strategies.triad_strategy,
                    strategies.triad_budget,
                    strategies.seed ^ ((i as u64) << 40 | (j as u64) << 20 | l as u64),
                )?;
                triples.push(TripleReport {
                    classes: (i, j, l),
                    status: if verdict.regular {
                        TripleStatus::Regular
                    } else {
                        TripleStatus::Irregular
                    },
                    density,
                    witness: verdict.witness,
                });
            }
        }
    }
    let regular = pairs
        .iter()
        .all(|p| p.status != crate::density::RegStatus::Irregular)
        && triples.iter().all(|t| t.status != TripleStatus::Irregular);
    Ok(ComplexRegReport {
        pairs,
        triples,
        regular,
    })
}

/// Re-check a triad witness: recompute the tuple density from scratch and
/// confirm both the size threshold and the density deviation.
pub fn verify_triad_witness(
    g: &TriadHypergraph,
    p: &Triad,
    d3: f64,
    delta3: f64,
    w: &TupleWitness,
) -> bool {
    if w.tuple.iter().any(|q| q.validate_against(p).is_err()) {
        return false;
    }
    let (t, d) = tuple_density_unchecked(g, p, &w.tuple);
    t == w.t
        && d == w.density
        && t as f64 >= delta3 * triangle_count(p) as f64
        && (d3 - d.to_f64().unwrap()).abs() >= delta3
}
