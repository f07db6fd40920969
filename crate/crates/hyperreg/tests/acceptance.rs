//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`; failures
//! re-print their output automatically). Tolerances and thresholds are
//! pinned in the constants next to each criterion.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::ToPrimitive;

use hyperreg::bits::BitRow;
use hyperreg::complex::{close_complex, Complex};
use hyperreg::counting::moments::{moment_concentration, second_moment_check};
use hyperreg::counting::transform::{
    blow_up, flatten_pattern, hyperedge_class_triples, partial_complement,
};
use hyperreg::counting::{
    count_copies, count_extensions, count_graph_copies, enumerate_sub_copies, predicted_count,
    predicted_extension,
};
use hyperreg::density::{
    check_d_delta_regular_bipartite, half_block, verify_band_witness, CheckMode, RegStatus,
};
use hyperreg::embed::{embed, validate_embedding, EmbedOutcome, EmbedStrategy, EmbedderConfig};
use hyperreg::format::serialize_complex;
use hyperreg::graph::{BipartiteGraph, Vertex};
use hyperreg::hypergraph::triples_of;
use hyperreg::hypergraph::Hypergraph3;
use hyperreg::models::{
    planted_host, random_host, random_pattern, HostParams, PatternParams, PlantingSpec,
};
use hyperreg::partition::ramsey::{colouring_avoids, exact_ramsey, RamseyValue};
use hyperreg::partition::{classify_pairs_triples, reduced_hypergraph, RegularityPartition};
use hyperreg::rng::SeqRng;
use hyperreg::triad::{
    check_triad_regular, complement_on_triad, triad_density, triad_of_complex, tuple_density,
    verify_triad_witness, Subtriad, TriadStrategy,
};

fn v(c: usize, i: usize) -> Vertex {
    Vertex::new(c, i)
}

fn k3_pattern() -> Complex {
    close_complex(vec![1, 1, 1], [[v(0, 0), v(1, 0), v(2, 0)]], []).unwrap()
}

fn outcome(criterion: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {criterion}: {detail}");
    assert!(pass, "[{tag}] {criterion}: {detail}");
}

/// Criterion 1: the extension sum rule holds with exact integer equality on
/// 100 random (H, H', G) instances with host class sizes <= 8.
#[test]
fn criterion_01_extension_sum_rule() {
    let started = std::time::Instant::now();
    let mut rng = SeqRng::new(0xC1);
    for case in 0..100u64 {
        let n = 4 + rng.below(5); // host class sizes 4..8
        let host = random_host(&HostParams {
            k: 3,
            n,
            d2: 0.4 + 0.4 * rng.unit(),
            d3: 0.3 + 0.5 * rng.unit(),
            seed: case,
        })
        .unwrap();
        let sizes = vec![1 + rng.below(2), 1 + rng.below(2), 1 + rng.below(2)];
        let pattern = random_pattern(&PatternParams {
            k: 3,
            class_sizes: sizes,
            max_degree: 4,
            target_hyperedges: 1 + rng.below(2),
            seed: 5000 + case,
        })
        .unwrap()
        .complex;
        let map = [0usize, 1, 2];
        // H = induced subcomplex on a random nonempty proper subset
        let all: Vec<Vertex> = pattern.vertices().collect();
        let keep = 1 + rng.below(all.len().max(2) - 1);
        let sub: Vec<Vertex> = rng
            .subset(all.len(), keep)
            .into_iter()
            .map(|i| all[i])
            .collect();
        let mut total = BigUint::ZERO;
        enumerate_sub_copies(&pattern, &map, &sub, &host, |phi| {
            total += count_extensions(&pattern, &map, phi, &host).unwrap();
            ControlFlow::Continue(())
        })
        .unwrap();
        let direct = count_copies(&pattern, &map, &host).unwrap();
        assert_eq!(total, direct, "case {case}: sum rule broke");
    }
    let elapsed = started.elapsed();
    outcome(
        "criterion 1 (extension sum rule)",
        elapsed.as_secs() < 120,
        &format!("100 instances, exact equality, {elapsed:?} (budget 2 min)"),
    );
}

/// Criterion 2: the partial-complement identity holds exactly on 50 random
/// instances with k = 3 and class sizes <= 6.
#[test]
fn criterion_02_partial_complement_identity() {
    let started = std::time::Instant::now();
    let mut rng = SeqRng::new(0xC2);
    for case in 0..50u64 {
        let n = 3 + rng.below(4); // 3..6
        let host = random_host(&HostParams {
            k: 3,
            n,
            d2: 0.5 + 0.4 * rng.unit(),
            d3: 0.3 + 0.4 * rng.unit(),
            seed: 100 + case,
        })
        .unwrap();
        let pattern = k3_pattern();
        let map = [0usize, 1, 2];
        let triples = hyperedge_class_triples(&pattern, &map).unwrap();
        let mut total = BigUint::ZERO;
        for mask in 0u32..(1 << triples.len()) {
            let chosen: Vec<[usize; 3]> = triples
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &t)| t)
                .collect();
            let complement = partial_complement(&host, &chosen).unwrap();
            total += count_copies(&pattern, &map, &complement).unwrap();
        }
        let graph_copies = count_graph_copies(&pattern, &map, &host).unwrap();
        assert_eq!(total, graph_copies, "case {case}");
    }
    let elapsed = started.elapsed();
    outcome(
        "criterion 2 (partial-complement identity)",
        elapsed.as_secs() < 120,
        &format!("50 instances, exact equality, {elapsed:?} (budget 2 min)"),
    );
}

/// Criterion 3: the blow-up sandwich |H|_G <= |H*|_{G*} <= |H|_G +
/// |H|^2 n^(|H|-1) holds exactly on 50 random instances with
/// multiplicities <= 3.
#[test]
fn criterion_03_blow_up_sandwich() {
    let mut rng = SeqRng::new(0xC3);
    for case in 0..50u64 {
        let n = 3 + rng.below(3); // 3..5
        let host = random_host(&HostParams {
            k: 3,
            n,
            d2: 0.5 + 0.4 * rng.unit(),
            d3: 0.4 + 0.4 * rng.unit(),
            seed: 200 + case,
        })
        .unwrap();
        let sizes = vec![1 + rng.below(3), 1 + rng.below(3), 1 + rng.below(2)];
        let pattern = random_pattern(&PatternParams {
            k: 3,
            class_sizes: sizes.clone(),
            max_degree: 5,
            target_hyperedges: 1 + rng.below(3),
            seed: 6000 + case,
        })
        .unwrap()
        .complex;
        let map = [0usize, 1, 2];
        let copies = count_copies(&pattern, &map, &host).unwrap();
        let (blown, _) = blow_up(&host, &sizes).unwrap();
        let flat = flatten_pattern(&pattern).unwrap();
        let flat_map: Vec<usize> = (0..flat.k()).collect();
        let star = count_copies(&flat, &flat_map, &blown).unwrap();
        let h = pattern.num_vertices();
        let slack = BigUint::from(h * h) * BigUint::from(n).pow(h as u32 - 1);
        assert!(copies <= star, "case {case}: lower bound");
        assert!(star <= &copies + slack, "case {case}: upper bound");
    }
    outcome(
        "criterion 3 (blow-up sandwich)",
        true,
        "50 instances, multiplicities <= 3, exact inequalities",
    );
}

/// Criterion 4: the second-moment inequalities glued <= S2 <= glued +
/// (t'-t)^2 n^(2t'-t-1) hold exactly on 50 random instances.
#[test]
fn criterion_04_second_moment_inequalities() {
    let mut rng = SeqRng::new(0xC4);
    for case in 0..50u64 {
        let n = 3 + rng.below(4);
        let host = random_host(&HostParams {
            k: 3,
            n,
            d2: 0.5 + 0.4 * rng.unit(),
            d3: 0.4 + 0.4 * rng.unit(),
            seed: 300 + case,
        })
        .unwrap();
        let pattern = random_pattern(&PatternParams {
            k: 3,
            class_sizes: vec![1 + rng.below(2), 1 + rng.below(2), 1 + rng.below(2)],
            max_degree: 4,
            target_hyperedges: 1 + rng.below(2),
            seed: 7000 + case,
        })
        .unwrap()
        .complex;
        let map = [0usize, 1, 2];
        let all: Vec<Vertex> = pattern.vertices().collect();
        if all.len() < 2 {
            continue;
        }
        let keep = 1 + rng.below(all.len() - 1);
        let shared: Vec<Vertex> = rng
            .subset(all.len(), keep)
            .into_iter()
            .map(|i| all[i])
            .collect();
        let check = second_moment_check(&pattern, &map, &shared, &host).unwrap();
        assert!(check.lower_ok, "case {case}: glued > S2");
        assert!(check.upper_ok, "case {case}: S2 > glued + overlap");
    }
    outcome(
        "criterion 4 (second-moment inequalities)",
        true,
        "50 instances, exact inequalities both sides",
    );
}

/// Criterion 5: over 10 pinned seeds at k = 3, n = 40, d2 = 0.6, d3 = 0.5,
/// the mean of |K3|_G / (n^3 d2^3 d3) lies in [0.9, 1.1].
#[test]
fn criterion_05_counting_lemma_statistical() {
    let started = std::time::Instant::now();
    let pattern = k3_pattern();
    let map = [0usize, 1, 2];
    let predicted = predicted_count(&pattern, 40, 0.6, 0.5).unwrap();
    let mut ratios = Vec::new();
    for seed in 0..10u64 {
        let host = random_host(&HostParams {
            k: 3,
            n: 40,
            d2: 0.6,
            d3: 0.5,
            seed,
        })
        .unwrap();
        let count = count_copies(&pattern, &map, &host).unwrap();
        ratios.push(count.to_f64().unwrap() / predicted);
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let elapsed = started.elapsed();
    outcome(
        "criterion 5 (counting-lemma statistics)",
        (0.9..=1.1).contains(&mean) && elapsed.as_secs() < 60,
        &format!("mean ratio {mean:.4} over 10 seeds in [0.9, 1.1], {elapsed:?} (budget 1 min)"),
    );
}

/// Criterion 6, as stated: same host family (k = 3, n = 40, d2 = 0.6,
/// d3 = 0.5), H the 2-vertex edge complex, H' the complete 3-vertex
/// complex; the fraction of H-copies whose extension count falls outside
/// (1 +- 0.25) * predicted must be <= 0.1 on at least 8 of 10 pinned seeds.
///
/// This criterion cannot pass at n = 40: conditioned on the placed edge,
/// each of the n candidate vertices completes a copy independently with
/// probability d2^2 d3 = 0.18, so the extension count is Binomial(40, 0.18)
/// with mean 7.2 and standard deviation 2.43. The exact binomial mass
/// outside [5.4, 9.0] is 0.42, and each seed's empirical fraction averages
/// ~960 such copies, so every seed lands near 0.42, far above 0.1. The same
/// harness at n = 200 (where the binomial mass outside +-25% drops to 0.08)
/// passes cleanly, which isolates the failure to the pinned n.
#[test]
fn criterion_06_extension_lemma_statistical() {
    let pattern = k3_pattern();
    let map = [0usize, 1, 2];
    let sub = [v(0, 0), v(1, 0)];
    let run_family = |n: usize| -> Vec<f64> {
        let predicted = predicted_extension(&pattern, &sub, n, 0.6, 0.5).unwrap();
        (0..10u64)
            .map(|seed| {
                let host = random_host(&HostParams {
                    k: 3,
                    n,
                    d2: 0.6,
                    d3: 0.5,
                    seed,
                })
                .unwrap();
                let mut values = Vec::new();
                enumerate_sub_copies(&pattern, &map, &sub, &host, |phi| {
                    let ext = count_extensions(&pattern, &map, phi, &host).unwrap();
                    values.push(ext.to_f64().unwrap());
                    ControlFlow::Continue(())
                })
                .unwrap();
                moment_concentration(&values, predicted, 0.2, 0.25).outlier_fraction
            })
            .collect()
    };
    // context line: the identical harness at n = 200 (not the gate)
    let at_200 = run_family(200);
    let ok_200 = at_200.iter().filter(|&&f| f <= 0.1).count();
    println!(
        "[info] criterion 6 harness at n = 200: {ok_200}/10 seeds with outlier fraction <= 0.1 \
         (fractions {:?})",
        at_200
            .iter()
            .map(|f| (f * 1000.0).round() / 1000.0)
            .collect::<Vec<_>>()
    );
    // the gate as stated, at n = 40
    let fractions = run_family(40);
    let passing = fractions.iter().filter(|&&f| f <= 0.1).count();
    outcome(
        "criterion 6 (extension-lemma statistics at n = 40)",
        passing >= 8,
        &format!(
            "{passing}/10 seeds with outlier fraction <= 0.1; per-seed fractions {:?}; \
             the Binomial(40, 0.18) extension count puts 42% of copies outside (1 +- 0.25) * 7.2 \
             on every seed, so the stated gate is unattainable at n = 40 (see the n = 200 line above)",
            fractions.iter().map(|f| (f * 1000.0).round() / 1000.0).collect::<Vec<_>>()
        ),
    );
}

/// Criterion 7: embedder completeness on 200 random instances with host
/// class sizes <= 7: embed succeeds exactly when the copy count is
/// positive, and every returned embedding re-validates.
#[test]
fn criterion_07_embedder_completeness() {
    let mut rng = SeqRng::new(0xC7);
    let mut embedded = 0u32;
    let mut absent = 0u32;
    let mut checked = 0u32;
    let mut case = 0u64;
    while checked < 200 {
        case += 1;
        let n = 3 + rng.below(5); // 3..7
        let host = random_host(&HostParams {
            k: 3,
            n,
            d2: 0.35 + 0.4 * rng.unit(),
            d3: 0.2 + 0.5 * rng.unit(),
            seed: 400 + case,
        })
        .unwrap();
        let pattern = random_pattern(&PatternParams {
            k: 3,
            class_sizes: vec![1 + rng.below(2), 1 + rng.below(2), 1 + rng.below(2)],
            max_degree: 4,
            target_hyperedges: 1 + rng.below(2),
            seed: 8000 + case,
        })
        .unwrap()
        .complex;
        let map = [0usize, 1, 2];
        if hyperreg::embed::check_respects_partition(&pattern, &map, &host).is_err() {
            // precondition cases are exercised in the unit tests; the
            // completeness statement is about searchable instances
            continue;
        }
        checked += 1;
        let count = count_copies(&pattern, &map, &host).unwrap();
        let strategy = if checked.is_multiple_of(2) {
            EmbedStrategy::PeelOrder
        } else {
            EmbedStrategy::DegreeOrder
        };
        match embed(&pattern, &map, &host, &EmbedderConfig::default(), strategy).unwrap() {
            EmbedOutcome::Embedded(e) => {
                assert!(count > BigUint::ZERO, "case {case}: embedded but count 0");
                validate_embedding(&pattern, &map, &host, &e.map).unwrap();
                embedded += 1;
            }
            EmbedOutcome::Failed(_) => {
                assert_eq!(count, BigUint::ZERO, "case {case}: failed but count > 0");
                absent += 1;
            }
        }
    }
    outcome(
        "criterion 7 (embedder completeness)",
        embedded > 0 && absent > 0,
        &format!(
            "200 instances: {embedded} embedded, {absent} correctly refused, all re-validated"
        ),
    );
}

/// Criterion 8: the regularity verifiers on their reference instances, with
/// every witness re-validated numerically.
#[test]
fn criterion_08_regularity_verifiers() {
    // complete bipartite passes at (d, delta) = (1, 0.3)
    let complete = BipartiteGraph::complete(6, 6);
    let verdict =
        check_d_delta_regular_bipartite(&complete, 1.0, 0.3, CheckMode::Exhaustive, 0).unwrap();
    assert_eq!(verdict.status, RegStatus::Regular);

    // the half-block graph yields a re-checkable witness at (1/2, 0.3)
    let block = half_block(8);
    let verdict =
        check_d_delta_regular_bipartite(&block, 0.5, 0.3, CheckMode::Exhaustive, 0).unwrap();
    assert_eq!(verdict.status, RegStatus::Irregular);
    let w = verdict
        .witness
        .expect("irregular verdict carries a witness");
    assert!(verify_band_witness(&block, 0.5, 0.3, &w));

    // planted triad irregularity is caught by the induced strategy
    let n = 12;
    let (host, _) = planted_host(
        &HostParams {
            k: 3,
            n,
            d2: 1.0,
            d3: 0.0,
            seed: 5,
        },
        &PlantingSpec {
            class: 0,
            vertices: (0..n / 2).collect(),
            d3_override: 1.0,
        },
    )
    .unwrap();
    let (triad, hyper) = triad_of_complex(&host, 0, 1, 2).unwrap();
    let d3 = triad_density(&hyper, &triad).to_f64().unwrap();
    let verdict =
        check_triad_regular(&hyper, &triad, d3, 0.1, 1, TriadStrategy::Induced, 100, 3).unwrap();
    assert!(!verdict.regular);
    let w = verdict.witness.expect("irregular triad carries a witness");
    assert!(verify_triad_witness(&hyper, &triad, d3, 0.1, &w));

    outcome(
        "criterion 8 (regularity verifiers)",
        true,
        "complete passes, half-block and planted triad yield re-validated witnesses",
    );
}

/// Criterion 9: a hand-built t = 4, ell = 1 partition with one planted-bad
/// triple reduces to exactly the expected good-triple set of size
/// C(4,3) - 1 = 3.
#[test]
fn criterion_09_reduced_hypergraph_pipeline() {
    let t = 4;
    let n = 8;
    let total = t * n;
    let clusters: Vec<Vec<usize>> = (0..t).map(|i| ((i * n)..((i + 1) * n)).collect()).collect();
    let pair_assignments: Vec<(usize, Vec<u16>)> = (0..t * (t - 1) / 2)
        .map(|_| (1usize, vec![1u16; n * n]))
        .collect();
    let partition = RegularityPartition::new(total, vec![], clusters, 1, pair_assignments).unwrap();

    // hyperedges: on cluster triple (0,1,2) only the triangles meeting the
    // first half of cluster 0 (density 1/2, irregular against its own
    // density); on every other triple all cross triangles (density 1)
    let mut g = Hypergraph3::new(total);
    let in_cluster = |v: usize| v / n;
    for a in 0..total {
        for b in (a + 1)..total {
            for c in (b + 1)..total {
                let key = {
                    let mut k = [in_cluster(a), in_cluster(b), in_cluster(c)];
                    k.sort_unstable();
                    k
                };
                if key[0] == key[1] || key[1] == key[2] {
                    continue;
                }
                if key == [0, 1, 2] {
                    let zero_vertex = [a, b, c].into_iter().find(|&x| in_cluster(x) == 0).unwrap();
                    if zero_vertex % n < n / 2 {
                        g.add_edge(a, b, c).unwrap();
                    }
                } else {
                    g.add_edge(a, b, c).unwrap();
                }
            }
        }
    }
    let classification = classify_pairs_triples(
        &g,
        &partition,
        0.1, // eps1
        0.3, // eps2
        0.5, // eps3
        0.2, // delta3
        1,   // r
        CheckMode::Exhaustive,
        TriadStrategy::Induced,
        60,
        0,
    )
    .unwrap();
    let expected: Vec<[usize; 3]> = vec![[0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let reduced = reduced_hypergraph(&classification, t);
    let pass = classification.good_triples == expected && reduced.edge_count() == 3;
    outcome(
        "criterion 9 (reduced-hypergraph pipeline)",
        pass,
        &format!(
            "good triples {:?} (expected {expected:?}), e(R) = {} (expected 3)",
            classification.good_triples,
            reduced.edge_count()
        ),
    );
}

/// Criterion 10: R(single hyperedge) = 3 by exhaustion; for two disjoint
/// hyperedges the search certifies R >= 7 at m = 6 (and the explicit
/// complementary-pair colouring re-validates) and pins the exact value by
/// exhaustion at m <= 8.
#[test]
fn criterion_10_exact_ramsey() {
    let started = std::time::Instant::now();
    let mut single = Hypergraph3::new(3);
    single.add_edge(0, 1, 2).unwrap();
    let out = exact_ramsey(&single, 6, 10_000_000).unwrap();
    assert_eq!(out.value, RamseyValue::Exact(3), "single hyperedge");
    assert!(!out.budget_exhausted);

    let mut pair = Hypergraph3::new(6);
    pair.add_edge(0, 1, 2).unwrap();
    pair.add_edge(3, 4, 5).unwrap();
    let out = exact_ramsey(&pair, 8, 1_000_000_000).unwrap();
    // the search's own certificate at m = 6 proves R >= 7
    let cert6 = out
        .certificates
        .iter()
        .find(|(m, _)| *m == 6)
        .expect("avoiding colouring at m = 6");
    assert!(colouring_avoids(&pair, &cert6.1));
    // independent construction: triples through vertex 0 red, the rest
    // blue; disjoint triples of [6] are complement pairs and always split
    let colours: Vec<u8> = triples_of(6)
        .iter()
        .map(|t| if t.contains(&0) { 0u8 } else { 1u8 })
        .collect();
    let complementary = hyperreg::hypergraph::TripleColouring::new(6, colours).unwrap();
    assert!(colouring_avoids(&pair, &complementary));
    let elapsed = started.elapsed();
    outcome(
        "criterion 10 (exact Ramsey)",
        out.value == RamseyValue::Exact(7) && elapsed.as_secs() < 600,
        &format!(
            "R(single) = 3; two disjoint hyperedges: {:?} with {} nodes, {elapsed:?} (budget 10 min)",
            out.value, out.nodes_explored
        ),
    );
}

/// Criterion 11: complement coupling d_red + d_blue = 1 holds as exact
/// rationals on 100 random tuples with t(Q) > 0.
#[test]
fn criterion_11_complement_coupling() {
    let mut rng = SeqRng::new(0xCB);
    let mut checked = 0u32;
    let mut seed = 0u64;
    while checked < 100 {
        seed += 1;
        let host = random_host(&HostParams {
            k: 3,
            n: 6 + rng.below(4),
            d2: 0.5 + 0.4 * rng.unit(),
            d3: 0.3 + 0.5 * rng.unit(),
            seed: 500 + seed,
        })
        .unwrap();
        let (triad, red) = triad_of_complex(&host, 0, 1, 2).unwrap();
        let blue = complement_on_triad(&red, &triad);
        for _ in 0..4 {
            let sizes = triad.sizes();
            let sets: Vec<BitRow> = sizes
                .iter()
                .map(|&m| {
                    let s = rng.range_inclusive(1, m);
                    BitRow::from_indices(m, rng.subset(m, s))
                })
                .collect();
            let q = Subtriad::induced(&triad, &sets[0], &sets[1], &sets[2]);
            let tuple = vec![q];
            let (t_red, d_red) = tuple_density(&red, &triad, &tuple).unwrap();
            if t_red == 0 {
                continue;
            }
            let (t_blue, d_blue) = tuple_density(&blue, &triad, &tuple).unwrap();
            assert_eq!(t_red, t_blue);
            assert_eq!(d_red + d_blue, Rational64::new(1, 1), "seed {seed}");
            checked += 1;
        }
    }
    outcome(
        "criterion 11 (complement coupling)",
        true,
        "100 tuples with t > 0, d_red + d_blue = 1 exactly",
    );
}

/// Criterion 12: on complete hosts with d2 = d3 = 1 and alpha = 0.1, the
/// one-vertex count ratio |H|_G >= (1 - alpha) n |H_h|_G holds exactly for
/// every generated pattern with |H| <= 6 at n = 20, for every vertex h.
#[test]
fn criterion_12_count_ratio_on_complete_hosts() {
    let n = 20;
    let alpha = 0.1;
    let shapes: [(usize, Vec<usize>); 5] = [
        (3, vec![2, 2, 2]),
        (3, vec![1, 2, 2]),
        (4, vec![2, 2, 1, 1]),
        (5, vec![2, 1, 1, 1, 1]),
        (6, vec![1, 1, 1, 1, 1, 1]),
    ];
    let mut patterns: Vec<Complex> = vec![k3_pattern()];
    for (seed, (k, class_sizes)) in shapes.into_iter().enumerate() {
        let pattern = random_pattern(&PatternParams {
            k,
            class_sizes,
            max_degree: 4,
            target_hyperedges: 2,
            seed: 900 + seed as u64,
        })
        .unwrap()
        .complex;
        assert!(pattern.num_vertices() <= 6);
        patterns.push(pattern);
    }
    let mut checks = 0u32;
    for (idx, pattern) in patterns.iter().enumerate() {
        assert!(pattern.num_vertices() <= 6);
        let host = Complex::complete(vec![n; pattern.k()]).unwrap();
        let map: Vec<usize> = (0..pattern.k()).collect();
        for h in pattern.vertices() {
            let ratio =
                hyperreg::embed::count_ratio_check(pattern, &map, h, &host, alpha, 1.0, 1.0)
                    .unwrap();
            assert!(
                ratio.pass,
                "pattern {idx}, vertex ({},{}): {} < {}",
                h.class, h.index, ratio.full_count, ratio.rhs
            );
            checks += 1;
        }
    }
    outcome(
        "criterion 12 (count-ratio on complete hosts)",
        checks > 0,
        &format!(
            "{checks} (pattern, vertex) checks, all exact-count passes at alpha = 0.1, n = {n}"
        ),
    );
}

/// Determinism backstop used by several criteria: a generated host
/// serializes identically across runs and thread counts.
#[test]
fn generated_hosts_are_reproducible() {
    let params = HostParams {
        k: 3,
        n: 16,
        d2: 0.5,
        d3: 0.5,
        seed: 424242,
    };
    let a = serialize_complex(&random_host(&params).unwrap());
    let b = serialize_complex(&random_host(&params).unwrap());
    assert_eq!(a, b);
}
