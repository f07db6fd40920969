//! Exact labelled partition-respecting copy and extension counting, with
//! the predicted random-complex counterparts.
//!
//! Counts are exact big integers; predictions are floats compared
//! relatively. Subcomplexes are addressed as vertex subsets of their parent
//! pattern, so they are induced by construction.

mod engine;
pub mod moments;
pub mod transform;

use std::collections::HashMap;
use std::ops::ControlFlow;

use num_bigint::BigUint;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::graph::Vertex;

pub use engine::FailureTrace;
pub(crate) use engine::{Engine, Spec};

fn all_vertices(pattern: &Complex) -> Vec<Vertex> {
    pattern.vertices().collect()
}

fn compile<'a>(
    pattern: &'a Complex,
    class_map: &'a [usize],
    active: &'a [Vertex],
    pinned: &'a [(Vertex, Vertex)],
    host: &'a Complex,
    use_hyperedges: bool,
) -> Result<Engine<'a>> {
    Engine::compile(
        &Spec {
            pattern,
            class_map,
            active,
            pinned,
            use_hyperedges,
            order: None,
        },
        host,
    )
}

/// |H|_G: the number of labelled partition-respecting copies of the pattern
/// in the host, where pattern class `c` maps into host class
/// `class_map[c]`. The empty pattern counts as one copy (the empty map).
pub fn count_copies(pattern: &Complex, class_map: &[usize], host: &Complex) -> Result<BigUint> {
    let active = all_vertices(pattern);
    Ok(compile(pattern, class_map, &active, &[], host, true)?.count(true))
}

/// Single-threaded reference path for [`count_copies`].
pub fn count_copies_serial(
    pattern: &Complex,
    class_map: &[usize],
    host: &Complex,
) -> Result<BigUint> {
    let active = all_vertices(pattern);
    Ok(compile(pattern, class_map, &active, &[], host, true)?.count(false))
}

/// |H^(2)|_G: copies of the underlying graph of the pattern in the
/// underlying graph of the host (hyperedges ignored on both sides).
pub fn count_graph_copies(
    pattern: &Complex,
    class_map: &[usize],
    host: &Complex,
) -> Result<BigUint> {
    let active = all_vertices(pattern);
    Ok(compile(pattern, class_map, &active, &[], host, false)?.count(true))
}

/// Copies of the induced subcomplex of `pattern` on `sub`.
pub fn count_sub_copies(
    pattern: &Complex,
    class_map: &[usize],
    sub: &[Vertex],
    host: &Complex,
) -> Result<BigUint> {
    Ok(compile(pattern, class_map, sub, &[], host, true)?.count(true))
}

/// The number of extensions of the copy `phi` of the induced subcomplex on
/// `phi`'s domain to full copies of `pattern`. Errors when `phi` is not a
/// valid copy (a missing host edge or hyperedge, or a collision).
pub fn count_extensions(
    pattern: &Complex,
    class_map: &[usize],
    phi: &[(Vertex, Vertex)],
    host: &Complex,
) -> Result<BigUint> {
    let pinned_set: Vec<Vertex> = phi.iter().map(|&(p, _)| p).collect();
    let active: Vec<Vertex> = pattern
        .vertices()
        .filter(|v| !pinned_set.contains(v))
        .collect();
    Ok(compile(pattern, class_map, &active, phi, host, true)?.count(true))
}

/// Extensions of the copy `phi` to copies of the induced subcomplex on
/// `target` (which must contain `phi`'s domain).
pub fn count_extensions_to(
    pattern: &Complex,
    class_map: &[usize],
    target: &[Vertex],
    phi: &[(Vertex, Vertex)],
    host: &Complex,
) -> Result<BigUint> {
    for (p, _) in phi {
        if !target.contains(p) {
            return Err(Error::domain(
                "extension base must sit inside the target subcomplex",
            ));
        }
    }
    let active: Vec<Vertex> = target
        .iter()
        .copied()
        .filter(|v| !phi.iter().any(|&(p, _)| p == *v))
        .collect();
    Ok(compile(pattern, class_map, &active, phi, host, true)?.count(true))
}

/// Visit every copy of the induced subcomplex on `sub`; the visitor gets the
/// assignment as (pattern vertex, host vertex) pairs and may stop early.
pub fn enumerate_sub_copies<F>(
    pattern: &Complex,
    class_map: &[usize],
    sub: &[Vertex],
    host: &Complex,
    visit: F,
) -> Result<()>
where
    F: FnMut(&[(Vertex, Vertex)]) -> ControlFlow<()>,
{
    compile(pattern, class_map, sub, &[], host, true)?.for_each(visit);
    Ok(())
}

/// First copy of the pattern in lexicographic placement order, if any.
pub fn find_copy(
    pattern: &Complex,
    class_map: &[usize],
    host: &Complex,
) -> Result<Option<Vec<(Vertex, Vertex)>>> {
    let active = all_vertices(pattern);
    Ok(compile(pattern, class_map, &active, &[], host, true)?.find_first(true))
}

/// (|set|, e2, e3) of the induced subcomplex on a vertex set.
pub fn induced_counts(pattern: &Complex, set: &[Vertex]) -> (usize, u64, u64) {
    let contains = |v: &Vertex| set.contains(v);
    let e2 = pattern
        .graph()
        .edges()
        .filter(|(u, v)| contains(u) && contains(v))
        .count() as u64;
    let e3 = pattern
        .hyperedges()
        .filter(|t| t.iter().all(contains))
        .count() as u64;
    (set.len(), e2, e3)
}

fn check_density(name: &str, d: f64) -> Result<()> {
    if !(d > 0.0 && d <= 1.0) {
        return Err(Error::domain(format!("{name} must lie in (0, 1], got {d}")));
    }
    Ok(())
}

/// The random-complex prediction n^t d2^e2 d3^e3 for the number of copies.
pub fn predicted_count(pattern: &Complex, n: usize, d2: f64, d3: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    check_density("d2", d2)?;
    check_density("d3", d3)?;
    Ok((n as f64).powi(pattern.num_vertices() as i32)
        * d2.powi(pattern.e2() as i32)
        * d3.powi(pattern.e3() as i32))
}

/// The predicted number of extensions of a copy of the induced subcomplex
/// on `sub` to a full copy: n^(t'-t) d2^(e2'-e2) d3^(e3'-e3).
pub fn predicted_extension(
    pattern: &Complex,
    sub: &[Vertex],
    n: usize,
    d2: f64,
    d3: f64,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    check_density("d2", d2)?;
    check_density("d3", d3)?;
    let (t_sub, e2_sub, e3_sub) = induced_counts(pattern, sub);
    let dt = pattern.num_vertices() - t_sub;
    let de2 = pattern.e2() - e2_sub;
    let de3 = pattern.e3() - e3_sub;
    Ok((n as f64).powi(dt as i32) * d2.powi(de2 as i32) * d3.powi(de3 as i32))
}

/// Per-hyperedge prediction n^t d2^e2 * prod_e d_e; every hyperedge of the
/// pattern must come with its own density.
pub fn predicted_count_per_edge(
    pattern: &Complex,
    n: usize,
    d2: f64,
    densities: &HashMap<[Vertex; 3], f64>,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    check_density("d2", d2)?;
    let mut product = (n as f64).powi(pattern.num_vertices() as i32) * d2.powi(pattern.e2() as i32);
    for t in pattern.hyperedges() {
        let d_e = densities.get(t).ok_or_else(|| {
            Error::domain(format!(
                "no density supplied for hyperedge ({},{}) ({},{}) ({},{})",
                t[0].class, t[0].index, t[1].class, t[1].index, t[2].class, t[2].index
            ))
        })?;
        check_density("d_e", *d_e)?;
        product *= d_e;
    }
    Ok(product)
}
