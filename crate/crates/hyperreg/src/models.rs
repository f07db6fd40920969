//! Seeded random generators: binomial host complexes, bounded-degree
//! pattern complexes, and planted-irregular negative controls.

use serde::Serialize;

use crate::complex::{close_complex, degree_profile, Complex};
use crate::error::{Error, Result};
use crate::graph::{KPartiteGraph, Vertex};
use crate::rng::{pair_stream, triple_stream, KeyedRng, SeqRng};

/// Parameters for the binomial host model: each cross pair is an edge with
/// probability `d2`, then each triangle of the resulting graph is a
/// hyperedge with probability `d3`.
#[derive(Clone, Debug, Serialize)]
pub struct HostParams {
    pub k: usize,
    /// Size of every vertex class.
    pub n: usize,
    pub d2: f64,
    pub d3: f64,
    pub seed: u64,
}

impl HostParams {
    fn validate(&self) -> Result<()> {
        if self.k == 0 || self.n == 0 {
            return Err(Error::domain("host needs k >= 1 and n >= 1"));
        }
        if !(0.0..=1.0).contains(&self.d2) || !(0.0..=1.0).contains(&self.d3) {
            return Err(Error::domain("densities must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// Density override on all triangles meeting a vertex subset of one class.
#[derive(Clone, Debug, Serialize)]
pub struct PlantingSpec {
    pub class: usize,
    pub vertices: Vec<usize>,
    pub d3_override: f64,
}

/// Where a generated host came from; emitted next to generated files.
#[derive(Clone, Debug, Serialize)]
pub struct HostProvenance {
    pub params: HostParams,
    pub planting: Option<PlantingSpec>,
    pub edge_count: u64,
    pub hyperedge_count: u64,
}

fn binomial_host(params: &HostParams, planting: Option<&PlantingSpec>) -> Result<Complex> {
    params.validate()?;
    if let Some(p) = planting {
        if p.class >= params.k || p.vertices.iter().any(|&v| v >= params.n) {
            return Err(Error::structure(format!(
                "planted subset out of range: class {} of k = {}, n = {}",
                p.class, params.k, params.n
            )));
        }
        if !(0.0..=1.0).contains(&p.d3_override) {
            return Err(Error::domain("density override must lie in [0, 1]"));
        }
    }
    let rng = KeyedRng::new(params.seed);
    let (k, n) = (params.k, params.n);
    let mut graph = KPartiteGraph::new(vec![n; k])?;
    for i in 0..k {
        for j in (i + 1)..k {
            let stream = pair_stream(i, j);
            for u in 0..n {
                for v in 0..n {
                    if rng.unit(stream, (u * n + v) as u64) < params.d2 {
                        graph.add_edge(Vertex::new(i, u), Vertex::new(j, v))?;
                    }
                }
            }
        }
    }
    let planted_bits: Option<(usize, Vec<bool>)> = planting.map(|p| {
        let mut bits = vec![false; n];
        for &v in &p.vertices {
            bits[v] = true;
        }
        (p.class, bits)
    });
    let mut triples = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            for l in (j + 1)..k {
                let stream = triple_stream(i, j, l);
                for u in 0..n {
                    let row_uj = graph.neighbours_in(Vertex::new(i, u), j);
                    let row_ul = graph.neighbours_in(Vertex::new(i, u), l).clone();
                    for v in row_uj.iter() {
                        let mut common = graph.neighbours_in(Vertex::new(j, v), l).clone();
                        common.and_assign(&row_ul);
                        for w in common.iter() {
                            // A draw per triangle, keyed by its coordinates.
                            let idx = ((u * n + v) * n + w) as u64;
                            let threshold = match &planted_bits {
                                Some((class, bits))
                                    if (*class == i && bits[u])
                                        || (*class == j && bits[v])
                                        || (*class == l && bits[w]) =>
                                {
                                    planting.unwrap().d3_override
                                }
                                _ => params.d3,
                            };
                            if rng.unit(stream, idx) < threshold {
                                triples.push([
                                    Vertex::new(i, u),
                                    Vertex::new(j, v),
                                    Vertex::new(l, w),
                                ]);
                            }
                        }
                    }
                }
            }
        }
    }
    Complex::new(graph, triples)
}

/// A random binomial host complex; deterministic per seed. Closure holds by
/// construction since hyperedges are drawn only on triangles.
pub fn random_host(params: &HostParams) -> Result<Complex> {
    binomial_host(params, None)
}

/// As [`random_host`], but triangles meeting the planted subset use the
/// override density. With an override equal to `d3` the draws are identical.
pub fn planted_host(
    params: &HostParams,
    planting: &PlantingSpec,
) -> Result<(Complex, HostProvenance)> {
    let complex = binomial_host(params, Some(planting))?;
    let provenance = HostProvenance {
        params: params.clone(),
        planting: Some(planting.clone()),
        edge_count: complex.e2(),
        hyperedge_count: complex.e3(),
    };
    Ok((complex, provenance))
}

pub fn host_provenance(params: &HostParams, complex: &Complex) -> HostProvenance {
    HostProvenance {
        params: params.clone(),
        planting: None,
        edge_count: complex.e2(),
        hyperedge_count: complex.e3(),
    }
}

/// Parameters for the bounded-degree pattern generator.
#[derive(Clone, Debug, Serialize)]
pub struct PatternParams {
    pub k: usize,
    pub class_sizes: Vec<usize>,
    /// Budget on the complex degree (max of graph and hypergraph degree).
    pub max_degree: usize,
    pub target_hyperedges: usize,
    pub seed: u64,
}

/// Outcome of pattern generation. `shortfall` is set when the target could
/// not be met under the degree budget; no silent failure.
#[derive(Clone, Debug)]
pub struct PatternOutcome {
    pub complex: Complex,
    pub achieved_degree: usize,
    pub shortfall: bool,
}

/// Hyperedges added by rejection sampling, keeping every vertex's complex
/// degree (after closure) within the budget. Deterministic per seed.
pub fn random_pattern(params: &PatternParams) -> Result<PatternOutcome> {
    if params.k != params.class_sizes.len() {
        return Err(Error::domain(format!(
            "k = {} but {} class sizes given",
            params.k,
            params.class_sizes.len()
        )));
    }
    if params.target_hyperedges > 0 && params.max_degree < 2 {
        return Err(Error::domain(
            "a nonempty hyperedge set forces graph degree 2, so the degree budget must be >= 2",
        ));
    }
    let mut rng = SeqRng::new(params.seed);
    let nonempty: Vec<usize> = (0..params.k)
        .filter(|&c| params.class_sizes[c] > 0)
        .collect();
    if params.target_hyperedges > 0 && nonempty.len() < 3 {
        return Err(Error::domain(
            "hyperedges need at least three nonempty classes",
        ));
    }

    let mut triples: Vec<[Vertex; 3]> = Vec::new();
    let mut complex = close_complex(params.class_sizes.clone(), triples.iter().copied(), [])?;
    let max_attempts = 200 * params.target_hyperedges + 100;
    let mut attempts = 0;
    while triples.len() < params.target_hyperedges && attempts < max_attempts {
        attempts += 1;
        // three distinct nonempty classes, one vertex each
        let mut cs = nonempty.clone();
        rng.shuffle(&mut cs);
        let mut picked: Vec<usize> = cs[..3].to_vec();
        picked.sort_unstable();
        let t = [
            Vertex::new(picked[0], rng.below(params.class_sizes[picked[0]])),
            Vertex::new(picked[1], rng.below(params.class_sizes[picked[1]])),
            Vertex::new(picked[2], rng.below(params.class_sizes[picked[2]])),
        ];
        if complex.has_hyperedge(t[0], t[1], t[2]) {
            continue;
        }
        let mut candidate = triples.clone();
        candidate.push(t);
        let closed = close_complex(params.class_sizes.clone(), candidate.iter().copied(), [])?;
        let busted = t
            .iter()
            .any(|&x| closed.complex_degree(x) > params.max_degree)
            || t.iter().any(|&x| {
                closed
                    .neighbours(x)
                    .iter()
                    .any(|&y| closed.complex_degree(y) > params.max_degree)
            });
        if busted {
            continue;
        }
        triples = candidate;
        complex = closed;
    }
    let achieved = degree_profile(&complex).max_degree;
    debug_assert!(achieved <= params.max_degree);
    Ok(PatternOutcome {
        shortfall: triples.len() < params.target_hyperedges,
        achieved_degree: achieved,
        complex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::serialize_complex;

    #[test]
    fn extreme_densities() {
        let full = random_host(&HostParams {
            k: 3,
            n: 3,
            d2: 1.0,
            d3: 1.0,
            seed: 1,
        })
        .unwrap();
        assert_eq!(full, Complex::complete(vec![3, 3, 3]).unwrap());
        let empty = random_host(&HostParams {
            k: 3,
            n: 3,
            d2: 0.0,
            d3: 1.0,
            seed: 1,
        })
        .unwrap();
        assert_eq!(empty.e2(), 0);
        assert_eq!(empty.e3(), 0);
    }

    #[test]
    fn determinism_byte_equal() {
        let p = HostParams {
            k: 3,
            n: 12,
            d2: 0.5,
            d3: 0.5,
            seed: 99,
        };
        let a = serialize_complex(&random_host(&p).unwrap());
        let b = serialize_complex(&random_host(&p).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn edge_counts_near_binomial_mean() {
        // one cross pair of a k=3, n=40 host has mean 800 and sd ~ 20
        for seed in 0..10u64 {
            let h = random_host(&HostParams {
                k: 3,
                n: 40,
                d2: 0.5,
                d3: 0.5,
                seed,
            })
            .unwrap();
            let mean = 3.0 * 1600.0 * 0.5;
            let sd = (3.0f64 * 1600.0 * 0.25).sqrt();
            let e = h.e2() as f64;
            assert!(
                (e - mean).abs() < 4.0 * sd,
                "seed {seed}: edge count {e} too far from {mean}"
            );
        }
    }

    #[test]
    fn pattern_target_zero() {
        let out = random_pattern(&PatternParams {
            k: 3,
            class_sizes: vec![2, 2, 2],
            max_degree: 4,
            target_hyperedges: 0,
            seed: 3,
        })
        .unwrap();
        assert_eq!(out.complex.e3(), 0);
        assert_eq!(out.achieved_degree, 0);
        assert!(!out.shortfall);
    }

    #[test]
    fn pattern_single_slot_is_one_triple() {
        let out = random_pattern(&PatternParams {
            k: 3,
            class_sizes: vec![1, 1, 1],
            max_degree: 2,
            target_hyperedges: 1,
            seed: 3,
        })
        .unwrap();
        assert_eq!(out.complex.e3(), 1);
        assert_eq!(out.complex.e2(), 3);
        assert_eq!(out.achieved_degree, 2);
    }

    #[test]
    fn degree_budget_is_hard() {
        for seed in 0..100u64 {
            let out = random_pattern(&PatternParams {
                k: 6,
                class_sizes: vec![4; 6],
                max_degree: 6,
                target_hyperedges: 12,
                seed,
            })
            .unwrap();
            let profile = degree_profile(&out.complex);
            assert!(
                profile.max_degree <= 6,
                "seed {seed} exceeded budget: {}",
                profile.max_degree
            );
        }
    }

    #[test]
    fn planted_override_equal_to_background_changes_nothing() {
        let p = HostParams {
            k: 3,
            n: 10,
            d2: 0.6,
            d3: 0.4,
            seed: 11,
        };
        let plain = random_host(&p).unwrap();
        let (planted, prov) = planted_host(
            &p,
            &PlantingSpec {
                class: 0,
                vertices: (0..5).collect(),
                d3_override: 0.4,
            },
        )
        .unwrap();
        assert_eq!(plain, planted);
        assert!(prov.planting.is_some());
    }

    #[test]
    fn planted_subset_out_of_range() {
        let p = HostParams {
            k: 3,
            n: 10,
            d2: 0.6,
            d3: 0.4,
            seed: 11,
        };
        let err = planted_host(
            &p,
            &PlantingSpec {
                class: 0,
                vertices: vec![10],
                d3_override: 0.9,
            },
        );
        assert!(matches!(err, Err(Error::Structure(_))));
    }
}
