//! Partition machinery: cluster partitions with edge-disjoint bipartite
//! slice families, their validity and regularity reports, good pairs and
//! triples, the reduced hypergraph, clique search, triad-system selection,
//! and the toy Ramsey pipeline helpers.

pub mod ramsey;

use std::collections::HashMap;

use num_rational::Rational64;
use serde::Serialize;

use crate::complex::Complex;
use crate::density::{
    check_d_delta_regular_bipartite, check_delta_regular_bipartite, CheckMode, RegStatus,
};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Vertex};
use crate::hypergraph::Hypergraph3;
use crate::rng::{KeyedRng, SeqRng};
use crate::triad::{
    check_triad_regular, complement_on_triad, triad_density, triangle_count, Triad,
    TriadHypergraph, TriadStrategy,
};

/// A vertex partition into an exceptional set and t equal clusters, with an
/// edge-disjoint family of bipartite graphs covering each cluster pair.
/// Slice 0 is the garbage slice and never enters a triad.
#[derive(Clone, Debug)]
pub struct RegularityPartition {
    exceptional: Vec<usize>,
    clusters: Vec<Vec<usize>>,
    ell: usize,
    /// Per pair i < j (triangular order): the number of proper slices and
    /// the slice index of every (u, v) slot.
    pairs: Vec<PairSlices>,
    /// global vertex -> (cluster, local index), None for exceptional
    locate: Vec<Option<(usize, usize)>>,
}

#[derive(Clone, Debug)]
struct PairSlices {
    ell_ij: usize,
    assign: Vec<u16>,
}

fn tri_index(t: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < t);
    i * t - i * (i + 1) / 2 + (j - i - 1)
}

impl RegularityPartition {
    /// Build and validate: equal cluster sizes, disjoint clusters covering
    /// the vertex set together with the exceptional set, per-pair slice
    /// counts within the cap. The assignment-matrix representation makes
    /// the slices edge-disjoint and covering by construction.
    pub fn new(
        total_vertices: usize,
        exceptional: Vec<usize>,
        clusters: Vec<Vec<usize>>,
        ell: usize,
        pair_assignments: Vec<(usize, Vec<u16>)>,
    ) -> Result<Self> {
        let t = clusters.len();
        if t == 0 {
            return Err(Error::structure("a partition needs at least one cluster"));
        }
        let n = clusters[0].len();
        if clusters.iter().any(|c| c.len() != n) {
            return Err(Error::structure("clusters must all have the same size"));
        }
        let mut locate = vec![None; total_vertices];
        let mut seen = vec![false; total_vertices];
        for (ci, cluster) in clusters.iter().enumerate() {
            for (li, &v) in cluster.iter().enumerate() {
                if v >= total_vertices || seen[v] {
                    return Err(Error::structure(format!(
                        "vertex {v} out of range or repeated"
                    )));
                }
                seen[v] = true;
                locate[v] = Some((ci, li));
            }
        }
        for &v in &exceptional {
            if v >= total_vertices || seen[v] {
                return Err(Error::structure(format!(
                    "vertex {v} out of range or repeated"
                )));
            }
            seen[v] = true;
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::structure("partition does not cover the vertex set"));
        }
        if pair_assignments.len() != t * (t - 1) / 2 {
            return Err(Error::structure(format!(
                "expected {} pair assignments, got {}",
                t * (t - 1) / 2,
                pair_assignments.len()
            )));
        }
        let mut pairs = Vec::with_capacity(pair_assignments.len());
        for (idx, (ell_ij, assign)) in pair_assignments.into_iter().enumerate() {
            if ell_ij > ell {
                return Err(Error::structure(format!(
                    "pair {idx} declares {ell_ij} slices, above the cap {ell}"
                )));
            }
            if assign.len() != n * n {
                return Err(Error::structure(format!(
                    "pair {idx} assignment has {} slots, expected {}",
                    assign.len(),
                    n * n
                )));
            }
            if let Some(&a) = assign.iter().find(|&&a| a as usize > ell_ij) {
                return Err(Error::structure(format!(
                    "pair {idx} assigns slice {a} above its slice count {ell_ij}"
                )));
            }
            pairs.push(PairSlices { ell_ij, assign });
        }
        Ok(RegularityPartition {
            exceptional,
            clusters,
            ell,
            pairs,
            locate,
        })
    }

    pub fn t(&self) -> usize {
        self.clusters.len()
    }

    /// Common cluster size n.
    pub fn cluster_size(&self) -> usize {
        self.clusters[0].len()
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn ell_ij(&self, i: usize, j: usize) -> usize {
        self.pairs[tri_index(self.t(), i, j)].ell_ij
    }

    pub fn exceptional(&self) -> &[usize] {
        &self.exceptional
    }

    pub fn cluster(&self, i: usize) -> &[usize] {
        &self.clusters[i]
    }

    pub fn locate(&self, v: usize) -> Option<(usize, usize)> {
        self.locate.get(v).copied().flatten()
    }

    /// The bipartite graph P^{ij}_alpha between clusters i < j.
    pub fn slice(&self, i: usize, j: usize, alpha: usize) -> BipartiteGraph {
        let n = self.cluster_size();
        let ps = &self.pairs[tri_index(self.t(), i, j)];
        let mut bg = BipartiteGraph::empty(n, n);
        for u in 0..n {
            for v in 0..n {
                if ps.assign[u * n + v] as usize == alpha {
                    bg.add_edge(u, v);
                }
            }
        }
        bg
    }

    pub fn slice_edge_count(&self, i: usize, j: usize, alpha: usize) -> u64 {
        let ps = &self.pairs[tri_index(self.t(), i, j)];
        ps.assign.iter().filter(|&&a| a as usize == alpha).count() as u64
    }

    /// The triad built from slices alpha, beta, gamma of the pairs (i,j),
    /// (j,k) and (i,k), for clusters i < j < k.
    pub fn triad(
        &self,
        i: usize,
        j: usize,
        k: usize,
        alpha: usize,
        beta: usize,
        gamma: usize,
    ) -> Result<Triad> {
        if !(i < j && j < k && k < self.t()) {
            return Err(Error::domain("triad clusters must satisfy i < j < k < t"));
        }
        Triad::new(
            [i, j, k],
            self.slice(i, j, alpha),
            self.slice(j, k, beta),
            self.slice(i, k, gamma),
        )
    }

    /// Hyperedges of `g` that land in clusters (i, j, k), in local
    /// coordinates.
    pub fn project_hypergraph(
        &self,
        g: &Hypergraph3,
        i: usize,
        j: usize,
        k: usize,
    ) -> TriadHypergraph {
        let mut edges = Vec::new();
        for t in g.edges() {
            let located: Vec<(usize, usize)> = t.iter().filter_map(|&v| self.locate(v)).collect();
            if located.len() != 3 {
                continue;
            }
            let mut by_cluster = located;
            by_cluster.sort_unstable();
            if by_cluster[0].0 == i && by_cluster[1].0 == j && by_cluster[2].0 == k {
                edges.push([by_cluster[0].1, by_cluster[1].1, by_cluster[2].1]);
            }
        }
        TriadHypergraph::new(edges)
    }
}

/// Random equal split of `0..total` into t clusters plus remainder, with
/// every cross edge assigned to one of ell slices uniformly; the garbage
/// slice stays empty. Deterministic per seed.
pub fn random_slicing_partition(
    total: usize,
    t: usize,
    ell: usize,
    seed: u64,
) -> Result<RegularityPartition> {
    if t == 0 || ell == 0 || total < t {
        return Err(Error::domain(
            "need t >= 1, ell >= 1 and at least t vertices",
        ));
    }
    let mut order: Vec<usize> = (0..total).collect();
    let mut rng = SeqRng::new(seed);
    rng.shuffle(&mut order);
    let n = total / t;
    let clusters: Vec<Vec<usize>> = (0..t)
        .map(|i| {
            let mut c = order[i * n..(i + 1) * n].to_vec();
            c.sort_unstable();
            c
        })
        .collect();
    let exceptional: Vec<usize> = order[t * n..].to_vec();
    let keyed = KeyedRng::new(seed ^ 0x51ce);
    let mut pair_assignments = Vec::with_capacity(t * (t - 1) / 2);
    for i in 0..t {
        for j in (i + 1)..t {
            let stream = crate::rng::pair_stream(i, j);
            let assign: Vec<u16> = (0..n * n)
                .map(|slot| 1 + (keyed.word(stream, slot as u64) % ell as u64) as u16)
                .collect();
            pair_assignments.push((ell, assign));
        }
    }
    RegularityPartition::new(total, exceptional, clusters, ell, pair_assignments)
}

/// Constants derived for a partition under the usual conventions
/// d2 = 1/ell and delta2 = sqrt(eps2).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PartitionConstants {
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
    pub delta3: f64,
    pub r: usize,
    pub d2: f64,
    pub delta2: f64,
}

impl PartitionConstants {
    pub fn derive(ell: usize, eps1: f64, eps2: f64, eps3: f64, delta3: f64, r: usize) -> Self {
        PartitionConstants {
            eps1,
            eps2,
            eps3,
            delta3,
            r,
            d2: 1.0 / ell as f64,
            delta2: eps2.sqrt(),
        }
    }
}

/// Default slice-regularity tolerance for a given slice count, and the
/// tuple budget it implies. Pure configuration; nothing asymptotic is
/// claimed for these.
pub fn default_eps2(ell: usize, eps1: f64) -> f64 {
    (1.0 / ell as f64).min(eps1 / 4.0) * 0.1
}

pub fn default_r(_t: usize, ell: usize, eps1: f64) -> usize {
    (1.0 / default_eps2(ell, eps1)).ceil().max(1.0) as usize
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub pair: (usize, usize),
    pub garbage_edges: u64,
    pub garbage_ok: bool,
    /// Slices whose density strays from 1/ell by more than eps2.
    pub off_density_slices: Vec<usize>,
    /// Slices (including the garbage slice) failing eps2-regularity.
    pub irregular_slices: Vec<usize>,
    pub uncovered_edges: u64,
}

/// The partition-validity report: items (iv) and (v). Items (i)-(iii) are
/// structural invariants enforced at construction.
#[derive(Clone, Debug, Serialize)]
pub struct PartitionCheck {
    pub t: usize,
    pub ell: usize,
    pub n: usize,
    pub per_pair: Vec<PairCheck>,
    /// (iv): edges not covered by an eps2-regular slice.
    pub uncovered_edges: u64,
    pub uncovered_allowed: f64,
    pub iv_ok: bool,
    /// (v): pairs with an oversized garbage slice or an off-density slice.
    pub bad_pairs: u64,
    pub bad_pairs_allowed: f64,
    pub v_ok: bool,
}

/// Check items (iv) and (v): all but eps1 * C(t,2) * n^2 edges must lie in
/// eps2-regular slices, and all but eps1 * C(t,2) pairs must have a small
/// garbage slice and all proper slice densities within eps2 of 1/ell.
pub fn check_partition(
    partition: &RegularityPartition,
    eps1: f64,
    eps2: f64,
    mode: CheckMode,
    seed: u64,
) -> Result<PartitionCheck> {
    let t = partition.t();
    let n = partition.cluster_size();
    let ell = partition.ell();
    let mut per_pair = Vec::new();
    let mut uncovered_total = 0u64;
    let mut bad_pairs = 0u64;
    for i in 0..t {
        for j in (i + 1)..t {
            let ell_ij = partition.ell_ij(i, j);
            let garbage_edges = partition.slice_edge_count(i, j, 0);
            let garbage_ok = garbage_edges as f64 <= eps1 * (n * n) as f64;
            let mut off_density = Vec::new();
            let mut irregular = Vec::new();
            let mut uncovered = 0u64;
            for alpha in 0..=ell_ij {
                let bg = partition.slice(i, j, alpha);
                let edges = bg.edge_count();
                if alpha >= 1 {
                    let density = edges as f64 / (n * n) as f64;
                    if (density - 1.0 / ell as f64).abs() > eps2 {
                        off_density.push(alpha);
                    }
                }
                let verdict = check_delta_regular_bipartite(
                    &bg,
                    eps2,
                    mode,
                    seed ^ ((i as u64) << 40 | (j as u64) << 20 | alpha as u64),
                )?;
                if verdict.status == RegStatus::Irregular {
                    irregular.push(alpha);
                    uncovered += edges;
                }
            }
            uncovered_total += uncovered;
            if !garbage_ok || !off_density.is_empty() {
                bad_pairs += 1;
            }
            per_pair.push(PairCheck {
                pair: (i, j),
                garbage_edges,
                garbage_ok,
                off_density_slices: off_density,
                irregular_slices: irregular,
                uncovered_edges: uncovered,
            });
        }
    }
    let pairs_total = (t * (t - 1) / 2) as f64;
    let uncovered_allowed = eps1 * pairs_total * (n * n) as f64;
    let bad_pairs_allowed = eps1 * pairs_total;
    Ok(PartitionCheck {
        t,
        ell,
        n,
        per_pair,
        uncovered_edges: uncovered_total,
        uncovered_allowed,
        iv_ok: uncovered_total as f64 <= uncovered_allowed,
        bad_pairs,
        bad_pairs_allowed,
        v_ok: bad_pairs as f64 <= bad_pairs_allowed,
    })
}

/// One triad's classification within a partition survey.
#[derive(Clone, Debug, Serialize)]
pub struct TriadOutcome {
    pub clusters: [usize; 3],
    pub slices: [usize; 3],
    pub triangles: u64,
    pub density_num: i64,
    pub density_den: i64,
    pub regular: bool,
}

/// Classify every triad over the proper slices of every cluster triple.
/// Each triad is checked at its own density d = d_G(P), the canonical
/// instantiation of "regular for some d".
#[allow(clippy::too_many_arguments)]
pub fn survey_triads(
    g: &Hypergraph3,
    partition: &RegularityPartition,
    delta3: f64,
    r: usize,
    strategy: TriadStrategy,
    budget: u64,
    seed: u64,
) -> Result<Vec<TriadOutcome>> {
    let t = partition.t();
    let mut out = Vec::new();
    for i in 0..t {
        for j in (i + 1)..t {
            for k in (j + 1)..t {
                let hyper = partition.project_hypergraph(g, i, j, k);
                for alpha in 1..=partition.ell_ij(i, j) {
                    for beta in 1..=partition.ell_ij(j, k) {
                        for gamma in 1..=partition.ell_ij(i, k) {
                            let triad = partition.triad(i, j, k, alpha, beta, gamma)?;
                            let triangles = triangle_count(&triad);
                            let density = triad_density(&hyper, &triad);
                            let verdict = check_triad_regular(
                                &hyper,
                                &triad,
                                rational_to_f64(density),
                                delta3,
                                r,
                                strategy,
                                budget,
                                seed ^ tag(i, j, k, alpha, beta, gamma),
                            )?;
                            out.push(TriadOutcome {
                                clusters: [i, j, k],
                                slices: [alpha, beta, gamma],
                                triangles,
                                density_num: *density.numer(),
                                density_den: *density.denom(),
                                regular: verdict.regular,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn tag(i: usize, j: usize, k: usize, a: usize, b: usize, c: usize) -> u64 {
    ((i as u64) << 50)
        ^ ((j as u64) << 40)
        ^ ((k as u64) << 30)
        ^ ((a as u64) << 20)
        ^ ((b as u64) << 10)
        ^ (c as u64)
}

fn rational_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / (*r.denom() as f64)
}

/// The regular-partition test: the triangle mass of irregular triads must
/// stay below delta3 |G|^3.
#[derive(Clone, Debug, Serialize)]
pub struct RegularMass {
    pub mass: u128,
    pub threshold: f64,
    pub pass: bool,
    pub irregular_triads: u64,
    pub total_triads: u64,
}

pub fn check_regular_partition(
    g: &Hypergraph3,
    partition: &RegularityPartition,
    delta3: f64,
    r: usize,
    strategy: TriadStrategy,
    budget: u64,
    seed: u64,
) -> Result<RegularMass> {
    let survey = survey_triads(g, partition, delta3, r, strategy, budget, seed)?;
    regular_mass_from_survey(g, &survey, delta3)
}

pub fn regular_mass_from_survey(
    g: &Hypergraph3,
    survey: &[TriadOutcome],
    delta3: f64,
) -> Result<RegularMass> {
    let mass: u128 = survey
        .iter()
        .filter(|o| !o.regular)
        .map(|o| o.triangles as u128)
        .sum();
    let total = g.n() as f64;
    let threshold = delta3 * total * total * total;
    Ok(RegularMass {
        mass,
        threshold,
        pass: (mass as f64) < threshold,
        irregular_triads: survey.iter().filter(|o| !o.regular).count() as u64,
        total_triads: survey.len() as u64,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairClass {
    pub pair: (usize, usize),
    pub good: bool,
    pub garbage_ok: bool,
    pub densities_ok: bool,
    pub irregular_slices: u64,
    pub irregular_allowed: f64,
    /// The consequence ell_ij >= ell/2 of the density bullet; reported,
    /// and expected to hold whenever the pair is good.
    pub ell_half_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleClass {
    pub triple: [usize; 3],
    pub good: bool,
    pub pairs_good: bool,
    pub irregular_triads: u64,
    pub irregular_allowed: f64,
}

/// Good pairs, good triples, and the soft fraction report.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub constants: PartitionConstants,
    pub pairs: Vec<PairClass>,
    pub triples: Vec<TripleClass>,
    pub good_triples: Vec<[usize; 3]>,
    /// Fraction of triples that are not good, against the reference bound
    /// 40 delta3 / eps3. Reported, never asserted: the bound describes
    /// regularity-lemma outputs, and a random slicing is not one.
    pub bad_triple_fraction: f64,
    pub reference_bound: f64,
}

/// Classify pairs (small garbage slice, slice densities near 1/ell, few
/// slice-regularity failures) and triples (all pairs good, few irregular
/// triads).
#[allow(clippy::too_many_arguments)]
pub fn classify_pairs_triples(
    g: &Hypergraph3,
    partition: &RegularityPartition,
    eps1: f64,
    eps2: f64,
    eps3: f64,
    delta3: f64,
    r: usize,
    graph_mode: CheckMode,
    triad_strategy: TriadStrategy,
    triad_budget: u64,
    seed: u64,
) -> Result<Classification> {
    let t = partition.t();
    let n = partition.cluster_size();
    let ell = partition.ell();
    let constants = PartitionConstants::derive(ell, eps1, eps2, eps3, delta3, r);
    let mut pairs = Vec::new();
    let mut pair_good = HashMap::new();
    for i in 0..t {
        for j in (i + 1)..t {
            let ell_ij = partition.ell_ij(i, j);
            let garbage_ok = partition.slice_edge_count(i, j, 0) as f64 <= eps1 * (n * n) as f64;
            let mut densities_ok = true;
            let mut irregular = 0u64;
            for alpha in 1..=ell_ij {
                let bg = partition.slice(i, j, alpha);
                let density = bg.edge_count() as f64 / (n * n) as f64;
                if (density - constants.d2).abs() > eps2 {
                    densities_ok = false;
                }
                let verdict = check_d_delta_regular_bipartite(
                    &bg,
                    constants.d2,
                    constants.delta2,
                    graph_mode,
                    seed ^ tag(i, j, 0, alpha, 0, 1),
                )?;
                if verdict.status == RegStatus::Irregular {
                    irregular += 1;
                }
            }
            let irregular_allowed = eps3 * ell as f64 / 6.0;
            let good = garbage_ok && densities_ok && irregular as f64 <= irregular_allowed;
            let ell_half_ok = 2 * ell_ij >= ell;
            pair_good.insert((i, j), good);
            pairs.push(PairClass {
                pair: (i, j),
                good,
                garbage_ok,
                densities_ok,
                irregular_slices: irregular,
                irregular_allowed,
                ell_half_ok,
            });
        }
    }
    let survey = survey_triads(g, partition, delta3, r, triad_strategy, triad_budget, seed)?;
    let mut triples = Vec::new();
    let mut good_triples = Vec::new();
    for i in 0..t {
        for j in (i + 1)..t {
            for k in (j + 1)..t {
                let pairs_good = pair_good[&(i, j)] && pair_good[&(j, k)] && pair_good[&(i, k)];
                let irregular = survey
                    .iter()
                    .filter(|o| o.clusters == [i, j, k] && !o.regular)
                    .count() as u64;
                let irregular_allowed = eps3 * (ell * ell * ell) as f64;
                let good = pairs_good && irregular as f64 <= irregular_allowed;
                if good {
                    good_triples.push([i, j, k]);
                }
                triples.push(TripleClass {
                    triple: [i, j, k],
                    good,
                    pairs_good,
                    irregular_triads: irregular,
                    irregular_allowed,
                });
            }
        }
    }
    let total_triples = triples.len().max(1) as f64;
    let bad = triples.iter().filter(|t| !t.good).count() as f64;
    Ok(Classification {
        constants,
        pairs,
        triples,
        good_triples,
        bad_triple_fraction: bad / total_triples,
        reference_bound: 40.0 * delta3 / eps3,
    })
}

/// Vertex per cluster, hyperedge per good triple.
pub fn reduced_hypergraph(classification: &Classification, t: usize) -> Hypergraph3 {
    let mut r = Hypergraph3::new(t);
    for &[i, j, k] in &classification.good_triples {
        r.add_edge(i, j, k)
            .expect("good triples are distinct clusters");
    }
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct TuranOutcome {
    pub clique: Option<Vec<usize>>,
    /// Hyperedge density e(R) / C(t,3), reported against the diagnostic
    /// threshold; the search itself is unconditional.
    pub density: f64,
    pub c0: f64,
    pub density_above_c0: bool,
}

/// Exhaustive backtracking search for k clusters whose every triple is a
/// hyperedge of the reduced hypergraph. The density threshold c0 is a
/// diagnostic only.
pub fn turan_clique(r: &Hypergraph3, k: usize, c0: f64) -> Result<TuranOutcome> {
    let t = r.n();
    if t < k {
        return Err(Error::domain(format!(
            "need at least k = {k} vertices, have {t}"
        )));
    }
    let total = if t >= 3 {
        (t * (t - 1) * (t - 2) / 6) as f64
    } else {
        0.0
    };
    let density = if total > 0.0 {
        r.edge_count() as f64 / total
    } else {
        0.0
    };
    let clique = if k <= 2 {
        Some((0..k).collect())
    } else {
        let mut current: Vec<usize> = Vec::new();
        find_clique(r, k, 0, &mut current)
    };
    Ok(TuranOutcome {
        clique,
        density,
        c0,
        density_above_c0: density >= c0,
    })
}

fn find_clique(
    r: &Hypergraph3,
    k: usize,
    from: usize,
    current: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if current.len() == k {
        return Some(current.clone());
    }
    for v in from..r.n() {
        let extends = current
            .iter()
            .enumerate()
            .all(|(ai, &a)| current[ai + 1..].iter().all(|&b| r.has_edge(a, b, v)));
        if extends {
            current.push(v);
            if let Some(found) = find_clique(r, k, v + 1, current) {
                return Some(found);
            }
            current.pop();
        }
    }
    None
}

/// Parameters for selecting one slice per clique pair.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SelectParams {
    pub d2: f64,
    pub delta2: f64,
    pub delta3: f64,
    pub r: usize,
    pub graph_mode: CheckMode,
    pub triad_strategy: TriadStrategy,
    pub triad_budget: u64,
}

/// An accepted slice choice for every pair of the clique clusters.
#[derive(Clone, Debug, Serialize)]
pub struct TriadSystem {
    /// (cluster pair, chosen slice alpha), for clique clusters in
    /// ascending order.
    pub choice: Vec<((usize, usize), usize)>,
}

impl TriadSystem {
    pub fn alpha(&self, i: usize, j: usize) -> usize {
        self.choice
            .iter()
            .find(|&&((a, b), _)| (a, b) == (i, j))
            .map(|&(_, alpha)| alpha)
            .expect("pair belongs to the clique")
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum Offender {
    Slice {
        pair: (usize, usize),
        alpha: usize,
    },
    Triad {
        clusters: [usize; 3],
        slices: [usize; 3],
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct SelectFailure {
    pub retries: u64,
    /// The check that failed most often across all retries.
    pub worst_offender: Option<Offender>,
    pub worst_failures: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelectionOutcome {
    pub accepted: Option<TriadSystem>,
    pub retries_used: u64,
    pub failure: Option<SelectFailure>,
}

/// Repeatedly draw one proper slice per clique pair uniformly; accept once
/// every chosen slice is (d2, delta2)-regular and every induced triad is
/// regular at its own density with respect to `g`.
pub fn select_triad_system(
    g: &Hypergraph3,
    partition: &RegularityPartition,
    clique: &[usize],
    params: &SelectParams,
    seed: u64,
    max_retries: u64,
) -> Result<SelectionOutcome> {
    let mut clusters = clique.to_vec();
    clusters.sort_unstable();
    if clusters.windows(2).any(|w| w[0] == w[1]) || clusters.iter().any(|&c| c >= partition.t()) {
        return Err(Error::domain(
            "clique clusters must be distinct and in range",
        ));
    }
    let mut rng = SeqRng::new(seed);
    let mut offender_counts: HashMap<String, (Offender, u64)> = HashMap::new();
    for retry in 0..max_retries {
        let mut choice = Vec::new();
        for (ai, &a) in clusters.iter().enumerate() {
            for &b in &clusters[ai + 1..] {
                let ell_ij = partition.ell_ij(a, b);
                choice.push(((a, b), rng.range_inclusive(1, ell_ij)));
            }
        }
        let system = TriadSystem { choice };
        match validate_system(g, partition, &clusters, &system, params, seed ^ retry)? {
            None => {
                return Ok(SelectionOutcome {
                    accepted: Some(system),
                    retries_used: retry + 1,
                    failure: None,
                })
            }
            Some(offender) => {
                let key = format!("{offender:?}");
                offender_counts
                    .entry(key)
                    .and_modify(|e| e.1 += 1)
                    .or_insert((offender, 1));
            }
        }
    }
    let worst = offender_counts
        .into_values()
        .max_by_key(|&(_, count)| count);
    Ok(SelectionOutcome {
        accepted: None,
        retries_used: max_retries,
        failure: Some(SelectFailure {
            retries: max_retries,
            worst_failures: worst.as_ref().map_or(0, |&(_, c)| c),
            worst_offender: worst.map(|(o, _)| o),
        }),
    })
}

/// None when the system passes; otherwise the first offending check.
pub fn validate_system(
    g: &Hypergraph3,
    partition: &RegularityPartition,
    clusters: &[usize],
    system: &TriadSystem,
    params: &SelectParams,
    seed: u64,
) -> Result<Option<Offender>> {
    for &((a, b), alpha) in &system.choice {
        let bg = partition.slice(a, b, alpha);
        let verdict = check_d_delta_regular_bipartite(
            &bg,
            params.d2,
            params.delta2,
            params.graph_mode,
            seed ^ tag(a, b, 0, alpha, 0, 2),
        )?;
        if verdict.status == RegStatus::Irregular {
            return Ok(Some(Offender::Slice {
                pair: (a, b),
                alpha,
            }));
        }
    }
    for (ai, &a) in clusters.iter().enumerate() {
        for (bi, &b) in clusters.iter().enumerate().skip(ai + 1) {
            for &c in &clusters[bi + 1..] {
                let (alpha, beta, gamma) =
                    (system.alpha(a, b), system.alpha(b, c), system.alpha(a, c));
                let triad = partition.triad(a, b, c, alpha, beta, gamma)?;
                let hyper = partition.project_hypergraph(g, a, b, c);
                let d = rational_to_f64(triad_density(&hyper, &triad));
                let verdict = check_triad_regular(
                    &hyper,
                    &triad,
                    d,
                    params.delta3,
                    params.r,
                    params.triad_strategy,
                    params.triad_budget,
                    seed ^ tag(a, b, c, alpha, beta, gamma),
                )?;
                if !verdict.regular {
                    return Ok(Some(Offender::Triad {
                        clusters: [a, b, c],
                        slices: [alpha, beta, gamma],
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TriadColour {
    Red,
    Blue,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColouredTriple {
    pub clusters: [usize; 3],
    pub colour: TriadColour,
    pub density_num: i64,
    pub density_den: i64,
}

/// Colour each clique triple red when the triad of chosen slices has
/// density at least 1/2 with respect to `g`, blue otherwise; density 1/2
/// exactly is red.
pub fn colour_clique_by_density(
    g: &Hypergraph3,
    partition: &RegularityPartition,
    clusters: &[usize],
    system: &TriadSystem,
) -> Result<Vec<ColouredTriple>> {
    let mut out = Vec::new();
    for (ai, &a) in clusters.iter().enumerate() {
        for (bi, &b) in clusters.iter().enumerate().skip(ai + 1) {
            for &c in &clusters[bi + 1..] {
                let triad = partition.triad(
                    a,
                    b,
                    c,
                    system.alpha(a, b),
                    system.alpha(b, c),
                    system.alpha(a, c),
                )?;
                let hyper = partition.project_hypergraph(g, a, b, c);
                let density = triad_density(&hyper, &triad);
                let colour = if density >= Rational64::new(1, 2) {
                    TriadColour::Red
                } else {
                    TriadColour::Blue
                };
                out.push(ColouredTriple {
                    clusters: [a, b, c],
                    colour,
                    density_num: *density.numer(),
                    density_den: *density.denom(),
                });
            }
        }
    }
    Ok(out)
}

/// Independent per-triangle thinning of the hyperedges on the clique's
/// triads, targeting density 1/2 (each hyperedge survives with probability
/// 1/(2d)). Hyperedges outside the listed triads are kept. Deterministic
/// per seed.
pub fn thin_to_half(
    g: &Hypergraph3,
    partition: &RegularityPartition,
    clusters: &[usize],
    system: &TriadSystem,
    seed: u64,
) -> Result<Hypergraph3> {
    let keyed = KeyedRng::new(seed);
    let mut keep_prob: HashMap<[usize; 3], f64> = HashMap::new();
    let mut in_scope: HashMap<[usize; 3], Triad> = HashMap::new();
    for (ai, &a) in clusters.iter().enumerate() {
        for (bi, &b) in clusters.iter().enumerate().skip(ai + 1) {
            for &c in &clusters[bi + 1..] {
                let triad = partition.triad(
                    a,
                    b,
                    c,
                    system.alpha(a, b),
                    system.alpha(b, c),
                    system.alpha(a, c),
                )?;
                let hyper = partition.project_hypergraph(g, a, b, c);
                let d = rational_to_f64(triad_density(&hyper, &triad));
                if d > 0.5 {
                    keep_prob.insert([a, b, c], 0.5 / d);
                }
                in_scope.insert([a, b, c], triad);
            }
        }
    }
    let mut thinned = Hypergraph3::new(g.n());
    for t in g.edges() {
        let mut keep = true;
        if let Some(located) = t
            .iter()
            .map(|&v| partition.locate(v))
            .collect::<Option<Vec<_>>>()
        {
            let mut by_cluster = located;
            by_cluster.sort_unstable();
            let key = [by_cluster[0].0, by_cluster[1].0, by_cluster[2].0];
            if let (Some(&p), Some(triad)) = (keep_prob.get(&key), in_scope.get(&key)) {
                // only thin hyperedges sitting on triangles of the chosen triad
                let (u, v, w) = (by_cluster[0].1, by_cluster[1].1, by_cluster[2].1);
                let on_triad =
                    triad.ij.has_edge(u, v) && triad.jk.has_edge(v, w) && triad.ik.has_edge(u, w);
                if on_triad {
                    let idx =
                        ((u * partition.cluster_size() + v) * partition.cluster_size() + w) as u64;
                    let stream = crate::rng::triple_stream(key[0], key[1], key[2]);
                    keep = keyed.unit(stream, idx) < p;
                }
            }
        }
        if keep {
            thinned.add_edge(t[0], t[1], t[2])?;
        }
    }
    Ok(thinned)
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityPair {
    pub clusters: [usize; 3],
    pub red_num: i64,
    pub red_den: i64,
    pub blue_num: i64,
    pub blue_den: i64,
    /// red + blue = 1 exactly, recomputed from the complement hyperedge
    /// set; both zero when the triad has no triangles.
    pub coupled: bool,
}

/// Red density and the independently computed blue density of each clique
/// triad; they must sum to one exactly whenever triangles exist.
pub fn blue_complement_densities(
    g: &Hypergraph3,
    partition: &RegularityPartition,
    clusters: &[usize],
    system: &TriadSystem,
) -> Result<Vec<DensityPair>> {
    let mut out = Vec::new();
    for (ai, &a) in clusters.iter().enumerate() {
        for (bi, &b) in clusters.iter().enumerate().skip(ai + 1) {
            for &c in &clusters[bi + 1..] {
                let triad = partition.triad(
                    a,
                    b,
                    c,
                    system.alpha(a, b),
                    system.alpha(b, c),
                    system.alpha(a, c),
                )?;
                let hyper = partition.project_hypergraph(g, a, b, c);
                let red = triad_density(&hyper, &triad);
                let blue_set = complement_on_triad(&hyper, &triad);
                let blue = triad_density(&blue_set, &triad);
                let coupled = if triangle_count(&triad) == 0 {
                    red == Rational64::ZERO && blue == Rational64::ZERO
                } else {
                    red + blue == Rational64::new(1, 1)
                };
                out.push(DensityPair {
                    clusters: [a, b, c],
                    red_num: *red.numer(),
                    red_den: *red.denom(),
                    blue_num: *blue.numer(),
                    blue_den: *blue.denom(),
                    coupled,
                });
            }
        }
    }
    Ok(out)
}

/// Greedy proper assignment of a bounded-degree hypergraph's vertices to
/// `num_classes` classes: adjacent vertices (sharing a hyperedge) land in
/// different classes. First-fit in descending degree order; with
/// num_classes at least 2 * max degree + 1 this cannot run out.
pub fn assign_to_classes(h: &Hypergraph3, num_classes: usize) -> Result<Vec<usize>> {
    let n = h.n();
    let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); n];
    for t in h.edges() {
        for &a in t {
            for &b in t {
                if a != b && !neighbours[a].contains(&b) {
                    neighbours[a].push(b);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(neighbours[v].len()));
    let mut assignment = vec![usize::MAX; n];
    for &v in &order {
        let used: Vec<usize> = neighbours[v]
            .iter()
            .filter_map(|&u| (assignment[u] != usize::MAX).then_some(assignment[u]))
            .collect();
        let Some(class) = (0..num_classes).find(|c| !used.contains(c)) else {
            return Err(Error::structure(format!(
                "greedy assignment ran out of classes at vertex {v}; this cannot happen with \
                 2 * max degree + 1 classes"
            )));
        };
        assignment[v] = class;
    }
    Ok(assignment)
}

/// Build the k-partite pattern complex of a flat hypergraph under a class
/// assignment, plus the map from flat vertex ids to pattern vertices.
pub fn pattern_complex_from_assignment(
    h: &Hypergraph3,
    assignment: &[usize],
    num_classes: usize,
) -> Result<(Complex, Vec<Vertex>)> {
    if assignment.len() != h.n() {
        return Err(Error::structure(
            "assignment does not cover the pattern vertices",
        ));
    }
    let mut sizes = vec![0usize; num_classes];
    let mut placed = Vec::with_capacity(h.n());
    for &class in assignment {
        if class >= num_classes {
            return Err(Error::structure("assignment targets a class out of range"));
        }
        placed.push(Vertex::new(class, sizes[class]));
        sizes[class] += 1;
    }
    let triples: Vec<[Vertex; 3]> = h
        .edges()
        .map(|t| [placed[t[0]], placed[t[1]], placed[t[2]]])
        .collect();
    let complex = crate::complex::close_complex(sizes, triples, [])?;
    Ok((complex, placed))
}

/// The host complex the pipeline embeds into: classes are the clique
/// clusters, the underlying graph is the chosen slices, and the hyperedges
/// are the colour-winning hyperedges that form triangles of those slices.
pub fn host_complex_from_system(
    g: &Hypergraph3,
    partition: &RegularityPartition,
    clusters: &[usize],
    system: &TriadSystem,
) -> Result<Complex> {
    let n = partition.cluster_size();
    let k = clusters.len();
    let mut graph = crate::graph::KPartiteGraph::new(vec![n; k])?;
    for (ai, &a) in clusters.iter().enumerate() {
        for (bi, &b) in clusters.iter().enumerate().skip(ai + 1) {
            let slice = partition.slice(a, b, system.alpha(a, b));
            for (u, v) in slice.edges() {
                graph.add_edge(Vertex::new(ai, u), Vertex::new(bi, v))?;
            }
        }
    }
    let mut triples = Vec::new();
    for (ai, &a) in clusters.iter().enumerate() {
        for (bi, &b) in clusters.iter().enumerate().skip(ai + 1) {
            for (ci, &c) in clusters.iter().enumerate().skip(bi + 1) {
                let hyper = partition.project_hypergraph(g, a, b, c);
                for [u, v, w] in hyper.iter() {
                    let (x, y, z) = (Vertex::new(ai, u), Vertex::new(bi, v), Vertex::new(ci, w));
                    if graph.has_edge(x, y) && graph.has_edge(y, z) && graph.has_edge(x, z) {
                        triples.push([x, y, z]);
                    }
                }
            }
        }
    }
    Complex::new(graph, triples)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_single_slice(total: usize, t: usize) -> RegularityPartition {
        // ell = 1: every cross edge in slice 1, garbage empty
        let n = total / t;
        let clusters: Vec<Vec<usize>> =
            (0..t).map(|i| ((i * n)..((i + 1) * n)).collect()).collect();
        let exceptional: Vec<usize> = (t * n..total).collect();
        let pair_assignments: Vec<(usize, Vec<u16>)> = (0..t * (t - 1) / 2)
            .map(|_| (1usize, vec![1u16; n * n]))
            .collect();
        RegularityPartition::new(total, exceptional, clusters, 1, pair_assignments).unwrap()
    }

    #[test]
    fn construction_validates_equal_sizes() {
        let bad = RegularityPartition::new(
            5,
            vec![4],
            vec![vec![0, 1], vec![2, 3, 4]],
            1,
            vec![(1, vec![1; 4])],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn construction_validates_cover() {
        let bad = RegularityPartition::new(
            6,
            vec![],
            vec![vec![0, 1], vec![2, 3]],
            1,
            vec![(1, vec![1; 4])],
        );
        assert!(matches!(bad, Err(Error::Structure(_))));
    }

    #[test]
    fn slicing_partition_shapes() {
        let p = random_slicing_partition(10, 3, 2, 7).unwrap();
        assert_eq!(p.t(), 3);
        assert_eq!(p.cluster_size(), 3);
        assert_eq!(p.exceptional().len(), 1);
        // slices partition the complete bipartite graph
        for i in 0..3 {
            for j in (i + 1)..3 {
                let total: u64 = (0..=p.ell_ij(i, j))
                    .map(|a| p.slice_edge_count(i, j, a))
                    .sum();
                assert_eq!(total, 9);
                assert_eq!(p.slice_edge_count(i, j, 0), 0);
            }
        }
    }

    #[test]
    fn single_slice_is_complete() {
        let p = random_slicing_partition(12, 3, 1, 3).unwrap();
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert_eq!(p.slice_edge_count(i, j, 1), 16);
            }
        }
    }

    #[test]
    fn slice_densities_near_uniform() {
        // ell = 4, n = 64: each slice density within 4 sigma of 1/4
        let p = random_slicing_partition(2 * 64, 2, 4, 11).unwrap();
        let n2 = 64.0 * 64.0;
        let mean = n2 / 4.0;
        let sd = (n2 * 0.25f64 * 0.75).sqrt();
        for alpha in 1..=4 {
            let e = p.slice_edge_count(0, 1, alpha) as f64;
            assert!((e - mean).abs() < 4.0 * sd, "slice {alpha}: {e}");
        }
    }

    #[test]
    fn check_partition_complete_single_slice() {
        let p = complete_single_slice(8, 2);
        let report = check_partition(&p, 0.1, 0.3, CheckMode::Exhaustive, 0).unwrap();
        assert!(report.iv_ok, "complete slice is delta-regular");
        assert!(report.v_ok);
        assert_eq!(report.bad_pairs, 0);
        // density |1 - 1/1| = 0 <= eps2
        assert!(report.per_pair[0].off_density_slices.is_empty());
    }

    #[test]
    fn garbage_heavy_partition_fails_v() {
        // ell = 1 but everything dumped into the garbage slice
        let n = 4;
        let clusters = vec![(0..n).collect::<Vec<_>>(), (n..2 * n).collect()];
        let p = RegularityPartition::new(2 * n, vec![], clusters, 1, vec![(1, vec![0u16; n * n])])
            .unwrap();
        let report = check_partition(&p, 0.1, 0.3, CheckMode::Exhaustive, 0).unwrap();
        assert_eq!(report.bad_pairs, 1);
        assert!(!report.v_ok);
    }

    #[test]
    fn empty_hypergraph_regular_partition() {
        let p = complete_single_slice(9, 3);
        let g = Hypergraph3::new(9);
        let report =
            check_regular_partition(&g, &p, 0.5, 1, TriadStrategy::Induced, 20, 0).unwrap();
        assert_eq!(report.mass, 0);
        assert!(report.pass);
    }

    #[test]
    fn delta3_one_always_passes() {
        let p = complete_single_slice(9, 3);
        let mut g = Hypergraph3::new(9);
        g.add_edge(0, 3, 6).unwrap();
        let report =
            check_regular_partition(&g, &p, 1.0, 1, TriadStrategy::Induced, 20, 0).unwrap();
        assert!(report.pass, "mass {} under |G|^3", report.mass);
    }

    #[test]
    fn classification_complete_single_slice_all_good() {
        let total = 12;
        let p = complete_single_slice(total, 3);
        // all triangles of the (complete) triads as hyperedges: a global
        // complete hypergraph restricted to cross-cluster triples
        let mut g = Hypergraph3::new(total);
        for u in 0..total {
            for v in (u + 1)..total {
                for w in (v + 1)..total {
                    g.add_edge(u, v, w).unwrap();
                }
            }
        }
        let cls = classify_pairs_triples(
            &g,
            &p,
            0.1,
            0.3,
            0.5,
            0.2,
            1,
            CheckMode::Exhaustive,
            TriadStrategy::Induced,
            30,
            0,
        )
        .unwrap();
        assert!(cls.pairs.iter().all(|pc| pc.good));
        assert!(cls.triples.iter().all(|tc| tc.good));
        assert!(cls.pairs.iter().all(|pc| pc.ell_half_ok));
        let r = reduced_hypergraph(&cls, p.t());
        assert_eq!(r.edge_count(), 1);
    }

    #[test]
    fn bad_pair_poisons_its_triples() {
        // t = 3, one pair's garbage slice overloaded
        let n = 4;
        let clusters: Vec<Vec<usize>> =
            (0..3).map(|i| ((i * n)..((i + 1) * n)).collect()).collect();
        let mut assignments: Vec<(usize, Vec<u16>)> = Vec::new();
        for idx in 0..3 {
            if idx == 0 {
                assignments.push((1, vec![0u16; n * n])); // pair (0,1): all garbage
            } else {
                assignments.push((1, vec![1u16; n * n]));
            }
        }
        let p = RegularityPartition::new(3 * n, vec![], clusters, 1, assignments).unwrap();
        let g = Hypergraph3::new(3 * n);
        let cls = classify_pairs_triples(
            &g,
            &p,
            0.1,
            0.3,
            0.5,
            0.5,
            1,
            CheckMode::Exhaustive,
            TriadStrategy::Induced,
            10,
            0,
        )
        .unwrap();
        let bad_pair = cls.pairs.iter().find(|pc| pc.pair == (0, 1)).unwrap();
        assert!(!bad_pair.good);
        // every triple contains the only bad pair here (t = 3)
        assert!(cls.triples.iter().all(|tc| !tc.good));
        assert!(cls.good_triples.is_empty());
        let r = reduced_hypergraph(&cls, 3);
        assert_eq!(r.edge_count(), 0);
    }

    #[test]
    fn random_slicing_report_pinned() {
        // t = 4, ell = 2 over 48 vertices: densities sit near 1/2 and the
        // garbage slice is empty, so item (v) holds; sampled regularity at
        // eps2 = 0.3 finds no witness on this pinned seed, so (iv) holds too
        let p = random_slicing_partition(48, 4, 2, 21).unwrap();
        let report = check_partition(&p, 0.1, 0.3, CheckMode::Sampled { budget: 150 }, 21).unwrap();
        assert!(report.iv_ok);
        assert!(report.v_ok);
        assert_eq!(report.bad_pairs, 0);
    }

    #[test]
    fn planted_triad_mass_is_its_triangle_count() {
        // one cluster per class of a planted host: the only triad is the
        // planted one, so the irregular mass is exactly t(P) = n^3
        use crate::models::{planted_host, HostParams, PlantingSpec};
        let n = 10;
        let (host, _) = planted_host(
            &HostParams {
                k: 3,
                n,
                d2: 1.0,
                d3: 0.0,
                seed: 4,
            },
            &PlantingSpec {
                class: 0,
                vertices: (0..n / 2).collect(),
                d3_override: 1.0,
            },
        )
        .unwrap();
        // clusters = classes, global id = class * n + index
        let p = complete_single_slice(3 * n, 3);
        let mut g = Hypergraph3::new(3 * n);
        for t in host.hyperedges() {
            g.add_edge(
                t[0].class * n + t[0].index,
                t[1].class * n + t[1].index,
                t[2].class * n + t[2].index,
            )
            .unwrap();
        }
        let report =
            check_regular_partition(&g, &p, 0.1, 1, TriadStrategy::Induced, 60, 4).unwrap();
        assert_eq!(report.irregular_triads, 1);
        assert_eq!(report.mass, (n * n * n) as u128);
        // cross-check: the same triad fails the standalone verifier at the
        // same density and tolerance
        let (triad, hyper) = crate::triad::triad_of_complex(&host, 0, 1, 2).unwrap();
        let d = triad_density(&hyper, &triad);
        let verdict = check_triad_regular(
            &hyper,
            &triad,
            *d.numer() as f64 / *d.denom() as f64,
            0.1,
            1,
            TriadStrategy::Induced,
            60,
            4,
        )
        .unwrap();
        assert!(!verdict.regular);
        // mass threshold delta3 |G|^3 = 0.1 * 27000 = 2700 > 1000: pass
        assert!(report.pass);
    }

    #[test]
    fn all_irregular_slices_fail_selection_with_named_offender() {
        // ell = 1 with the proper slice of every pair shaped like the
        // half-block graph: every slice check fails, so the selection
        // exhausts its retries and names an offender
        let n = 8;
        let t = 3;
        let clusters: Vec<Vec<usize>> =
            (0..t).map(|i| ((i * n)..((i + 1) * n)).collect()).collect();
        let half_block_assign: Vec<u16> = (0..n * n)
            .map(|slot| {
                let (u, v) = (slot / n, slot % n);
                if (u < n / 2) == (v < n / 2) {
                    1
                } else {
                    0
                }
            })
            .collect();
        let assignments: Vec<(usize, Vec<u16>)> = (0..t * (t - 1) / 2)
            .map(|_| (1usize, half_block_assign.clone()))
            .collect();
        let p = RegularityPartition::new(t * n, vec![], clusters, 1, assignments).unwrap();
        let g = Hypergraph3::new(t * n);
        let params = SelectParams {
            d2: 0.5,
            delta2: 0.3,
            delta3: 0.3,
            r: 1,
            graph_mode: CheckMode::Exhaustive,
            triad_strategy: TriadStrategy::Induced,
            triad_budget: 10,
        };
        let out = select_triad_system(&g, &p, &[0, 1, 2], &params, 9, 5).unwrap();
        assert!(out.accepted.is_none());
        let failure = out.failure.unwrap();
        assert_eq!(failure.retries, 5);
        assert!(matches!(
            failure.worst_offender,
            Some(Offender::Slice { .. })
        ));
        assert!(failure.worst_failures >= 1);
    }

    #[test]
    fn turan_clique_complete_and_empty() {
        let full = Hypergraph3::complete(6);
        let out = turan_clique(&full, 4, 0.8).unwrap();
        let clique = out.clique.unwrap();
        assert_eq!(clique.len(), 4);
        // re-verify every triple
        for (ai, &a) in clique.iter().enumerate() {
            for (bi, &b) in clique.iter().enumerate().skip(ai + 1) {
                for &c in &clique[bi + 1..] {
                    assert!(full.has_edge(a, b, c));
                }
            }
        }
        let empty = Hypergraph3::new(5);
        assert!(turan_clique(&empty, 3, 0.5).unwrap().clique.is_none());
        assert!(turan_clique(&empty, 6, 0.5).is_err());
    }

    #[test]
    fn turan_avoids_the_deleted_vertex() {
        // complete on 7 vertices minus all triples containing vertex 0
        let mut r = Hypergraph3::new(7);
        for u in 1..7 {
            for v in (u + 1)..7 {
                for w in (v + 1)..7 {
                    r.add_edge(u, v, w).unwrap();
                }
            }
        }
        let clique = turan_clique(&r, 4, 0.5).unwrap().clique.unwrap();
        assert!(!clique.contains(&0));
    }

    #[test]
    fn select_system_single_slice_accepts_immediately() {
        let total = 12;
        let p = complete_single_slice(total, 3);
        let mut g = Hypergraph3::new(total);
        for u in 0..total {
            for v in (u + 1)..total {
                for w in (v + 1)..total {
                    g.add_edge(u, v, w).unwrap();
                }
            }
        }
        let params = SelectParams {
            d2: 1.0,
            delta2: 0.3,
            delta3: 0.2,
            r: 1,
            graph_mode: CheckMode::Exhaustive,
            triad_strategy: TriadStrategy::Induced,
            triad_budget: 20,
        };
        let out = select_triad_system(&g, &p, &[0, 1, 2], &params, 5, 4).unwrap();
        let system = out.accepted.expect("single complete slice must pass");
        assert_eq!(out.retries_used, 1);
        // accepted system re-validates under the same checks
        assert!(validate_system(&g, &p, &[0, 1, 2], &system, &params, 5)
            .unwrap()
            .is_none());
    }

    #[test]
    fn colouring_and_complement_coupling() {
        let total = 12;
        let p = complete_single_slice(total, 3);
        let mut g = Hypergraph3::new(total);
        // only triples touching cluster 0's first two vertices are red
        for u in 0..2 {
            for v in 4..8 {
                for w in 8..12 {
                    g.add_edge(u, v, w).unwrap();
                }
            }
        }
        let system = TriadSystem {
            choice: vec![((0, 1), 1), ((1, 2), 1), ((0, 2), 1)],
        };
        let coloured = colour_clique_by_density(&g, &p, &[0, 1, 2], &system).unwrap();
        assert_eq!(coloured.len(), 1);
        // 2*4*4 red triangles of 64: density 1/2 exactly, hence red
        assert_eq!(coloured[0].colour, TriadColour::Red);
        assert_eq!((coloured[0].density_num, coloured[0].density_den), (1, 2));
        let pairs = blue_complement_densities(&g, &p, &[0, 1, 2], &system).unwrap();
        assert!(pairs.iter().all(|dp| dp.coupled));
    }

    #[test]
    fn colouring_extremes() {
        let total = 9;
        let p = complete_single_slice(total, 3);
        let system = TriadSystem {
            choice: vec![((0, 1), 1), ((1, 2), 1), ((0, 2), 1)],
        };
        // no hyperedges: the single clique triple is blue at density 0
        let empty = Hypergraph3::new(total);
        let coloured = colour_clique_by_density(&empty, &p, &[0, 1, 2], &system).unwrap();
        assert_eq!(coloured[0].colour, TriadColour::Blue);
        assert_eq!(coloured[0].density_num, 0);
        // all cross triangles hyperedged: red at density 1
        let mut full = Hypergraph3::new(total);
        for u in 0..3 {
            for v in 3..6 {
                for w in 6..9 {
                    full.add_edge(u, v, w).unwrap();
                }
            }
        }
        let coloured = colour_clique_by_density(&full, &p, &[0, 1, 2], &system).unwrap();
        assert_eq!(coloured[0].colour, TriadColour::Red);
        assert_eq!((coloured[0].density_num, coloured[0].density_den), (1, 1));
    }

    #[test]
    fn thinning_targets_half_density() {
        // dense red triad (density 1) thinned towards 1/2; the thinned
        // hypergraph is a subset, deterministic per seed, and its triad
        // density lands near the target
        let n = 12;
        let total = 3 * n;
        let p = complete_single_slice(total, 3);
        let mut g = Hypergraph3::new(total);
        for u in 0..n {
            for v in n..2 * n {
                for w in 2 * n..3 * n {
                    g.add_edge(u, v, w).unwrap();
                }
            }
        }
        let system = TriadSystem {
            choice: vec![((0, 1), 1), ((1, 2), 1), ((0, 2), 1)],
        };
        let thinned = thin_to_half(&g, &p, &[0, 1, 2], &system, 77).unwrap();
        assert_eq!(
            thinned,
            thin_to_half(&g, &p, &[0, 1, 2], &system, 77).unwrap()
        );
        for t in thinned.edges() {
            assert!(g.has_edge(t[0], t[1], t[2]));
        }
        let triad = p.triad(0, 1, 2, 1, 1, 1).unwrap();
        let hyper = p.project_hypergraph(&thinned, 0, 1, 2);
        let d = triad_density(&hyper, &triad);
        let d = *d.numer() as f64 / *d.denom() as f64;
        // binomial mean 1/2 over n^3 = 1728 draws: 4 sigma is about 0.05
        assert!((d - 0.5).abs() < 0.05, "thinned density {d}");
        // a triad at density exactly 1/2 is left alone
        let mut half = Hypergraph3::new(total);
        for u in 0..n / 2 {
            for v in n..2 * n {
                for w in 2 * n..3 * n {
                    half.add_edge(u, v, w).unwrap();
                }
            }
        }
        let untouched = thin_to_half(&half, &p, &[0, 1, 2], &system, 99).unwrap();
        assert_eq!(untouched, half);
    }

    #[test]
    fn greedy_assignment_respects_hyperedges() {
        let mut h = Hypergraph3::new(6);
        h.add_edge(0, 1, 2).unwrap();
        h.add_edge(2, 3, 4).unwrap();
        h.add_edge(4, 5, 0).unwrap();
        let delta = h.max_degree();
        let classes = 2 * delta + 1;
        let assignment = assign_to_classes(&h, classes).unwrap();
        for t in h.edges() {
            assert_ne!(assignment[t[0]], assignment[t[1]]);
            assert_ne!(assignment[t[1]], assignment[t[2]]);
            assert_ne!(assignment[t[0]], assignment[t[2]]);
        }
        let (pattern, placed) = pattern_complex_from_assignment(&h, &assignment, classes).unwrap();
        assert_eq!(pattern.num_vertices(), 6);
        assert_eq!(pattern.e3(), 3);
        assert_eq!(placed.len(), 6);
    }

    #[test]
    fn host_complex_closure_holds() {
        let total = 12;
        let p = complete_single_slice(total, 3);
        let mut g = Hypergraph3::new(total);
        g.add_edge(0, 4, 8).unwrap();
        g.add_edge(1, 5, 9).unwrap();
        let system = TriadSystem {
            choice: vec![((0, 1), 1), ((1, 2), 1), ((0, 2), 1)],
        };
        let host = host_complex_from_system(&g, &p, &[0, 1, 2], &system).unwrap();
        assert_eq!(host.k(), 3);
        assert_eq!(host.e3(), 2);
        for t in host.hyperedges() {
            assert!(host.has_edge(t[0], t[1]));
        }
    }
}
