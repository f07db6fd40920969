//! Host transformations behind the exact counting identities: partial
//! complements, blow-ups, and the glued double used by the second-moment
//! bookkeeping.

use std::collections::HashSet;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::triad::{for_each_triangle, triad_of_complex};

/// Swap hyperedges and non-hyperedge triangles on each listed class triple:
/// the new hyperedges on (a, b, c) are exactly the triangles of the
/// underlying graph there that were not hyperedges before. The graph is
/// untouched, so closure holds by construction.
pub fn partial_complement(host: &Complex, class_triples: &[[usize; 3]]) -> Result<Complex> {
    let mut chosen: Vec<[usize; 3]> = Vec::new();
    for &t in class_triples {
        let mut s = t;
        s.sort_unstable();
        if s[0] == s[1] || s[1] == s[2] || s[2] >= host.k() {
            return Err(Error::domain(format!(
                "class triple ({},{},{}) is not three distinct host classes",
                t[0], t[1], t[2]
            )));
        }
        if !chosen.contains(&s) {
            chosen.push(s);
        }
    }
    let mut hyperedges: HashSet<[Vertex; 3]> = host.hyperedges().copied().collect();
    for &[a, b, c] in &chosen {
        hyperedges.retain(|t| !(t[0].class == a && t[1].class == b && t[2].class == c));
        let (triad, old) = triad_of_complex(host, a, b, c)?;
        for_each_triangle(&triad, |u, v, w| {
            if !old.contains(u, v, w) {
                hyperedges.insert([Vertex::new(a, u), Vertex::new(b, v), Vertex::new(c, w)]);
            }
        });
    }
    Complex::new(host.graph().clone(), hyperedges)
}

/// The hyperedges of a one-vertex-per-class pattern as host class triples,
/// for driving [`partial_complement`] over subsets of the pattern's
/// hyperedge set. Errors when a hyperedge touches a pattern class with more
/// than one vertex, or when the class map folds two such classes together.
pub fn hyperedge_class_triples(pattern: &Complex, class_map: &[usize]) -> Result<Vec<[usize; 3]>> {
    if class_map.len() != pattern.k() {
        return Err(Error::structure(
            "class map does not cover the pattern classes",
        ));
    }
    let mut out = Vec::new();
    for t in pattern.hyperedges_canonical() {
        let mut triple = [0usize; 3];
        for (slot, v) in t.iter().enumerate() {
            if pattern.class_sizes()[v.class] > 1 {
                return Err(Error::domain(format!(
                    "pattern class {} has multiplicity {}, but the per-class-triple complement needs one vertex per class",
                    v.class,
                    pattern.class_sizes()[v.class]
                )));
            }
            triple[slot] = class_map[v.class];
        }
        triple.sort_unstable();
        if triple[0] == triple[1] || triple[1] == triple[2] {
            return Err(Error::domain(
                "class map folds two classes of one hyperedge into a single host class",
            ));
        }
        out.push(triple);
    }
    Ok(out)
}

/// Class layout of a blow-up: original class `i` becomes `multiplicity[i]`
/// consecutive new classes.
#[derive(Clone, Debug)]
pub struct BlowUpLayout {
    offsets: Vec<usize>,
    multiplicities: Vec<usize>,
}

impl BlowUpLayout {
    pub fn new(multiplicities: &[usize]) -> Result<Self> {
        if multiplicities.contains(&0) {
            return Err(Error::domain("blow-up multiplicities must be at least 1"));
        }
        let mut offsets = Vec::with_capacity(multiplicities.len());
        let mut acc = 0;
        for &m in multiplicities {
            offsets.push(acc);
            acc += m;
        }
        Ok(BlowUpLayout {
            offsets,
            multiplicities: multiplicities.to_vec(),
        })
    }

    /// New class index of copy `copy` of original class `class`.
    pub fn class_of(&self, class: usize, copy: usize) -> usize {
        debug_assert!(copy < self.multiplicities[class]);
        self.offsets[class] + copy
    }

    pub fn total_classes(&self) -> usize {
        self.offsets.last().map_or(0, |&o| {
            o + self.multiplicities[self.multiplicities.len() - 1]
        })
    }
}

/// Blow up each class of the host into `multiplicities[i]` identified
/// copies: edges and hyperedges are replicated across all copy
/// combinations, and copies of one class stay mutually unconnected.
pub fn blow_up(host: &Complex, multiplicities: &[usize]) -> Result<(Complex, BlowUpLayout)> {
    if multiplicities.len() != host.k() {
        return Err(Error::domain(format!(
            "{} multiplicities for {} classes",
            multiplicities.len(),
            host.k()
        )));
    }
    let layout = BlowUpLayout::new(multiplicities)?;
    let mut sizes = vec![0usize; layout.total_classes()];
    for (i, &n) in host.class_sizes().iter().enumerate() {
        for c in 0..multiplicities[i] {
            sizes[layout.class_of(i, c)] = n;
        }
    }
    let mut edges = Vec::new();
    for (u, v) in host.graph().edges() {
        for cu in 0..multiplicities[u.class] {
            for cv in 0..multiplicities[v.class] {
                edges.push((
                    Vertex::new(layout.class_of(u.class, cu), u.index),
                    Vertex::new(layout.class_of(v.class, cv), v.index),
                ));
            }
        }
    }
    let mut triples = Vec::new();
    for t in host.hyperedges() {
        for c0 in 0..multiplicities[t[0].class] {
            for c1 in 0..multiplicities[t[1].class] {
                for c2 in 0..multiplicities[t[2].class] {
                    triples.push([
                        Vertex::new(layout.class_of(t[0].class, c0), t[0].index),
                        Vertex::new(layout.class_of(t[1].class, c1), t[1].index),
                        Vertex::new(layout.class_of(t[2].class, c2), t[2].index),
                    ]);
                }
            }
        }
    }
    let complex = crate::complex::close_complex(sizes, triples, edges)?;
    Ok((complex, layout))
}

/// Re-partition a pattern so every vertex sits in its own singleton class,
/// ordered compatibly with [`blow_up`] of the pattern's class sizes: pattern
/// vertex (i, x) becomes the single vertex of new class `layout(i, x)`.
pub fn flatten_pattern(pattern: &Complex) -> Result<Complex> {
    let layout = BlowUpLayout::new(pattern.class_sizes())?;
    let sizes = vec![1usize; layout.total_classes()];
    let flat = |v: Vertex| Vertex::new(layout.class_of(v.class, v.index), 0);
    let edges: Vec<(Vertex, Vertex)> = pattern
        .graph()
        .edges()
        .map(|(u, v)| (flat(u), flat(v)))
        .collect();
    let triples: Vec<[Vertex; 3]> = pattern
        .hyperedges()
        .map(|t| [flat(t[0]), flat(t[1]), flat(t[2])])
        .collect();
    crate::complex::close_complex(sizes, triples, edges)
}

/// Two disjoint copies of the pattern identified on `shared`: per class, the
/// shared vertices come first, then the first copy of the rest, then the
/// second copy. The two copies carry no edges between their private parts.
pub fn glue_double(pattern: &Complex, shared: &[Vertex]) -> Result<Complex> {
    for &v in shared {
        if v.class >= pattern.k() || v.index >= pattern.class_sizes()[v.class] {
            return Err(Error::structure(format!(
                "shared vertex ({},{}) not in the pattern",
                v.class, v.index
            )));
        }
    }
    let k = pattern.k();
    let mut shared_per_class: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &v in shared {
        if !shared_per_class[v.class].contains(&v.index) {
            shared_per_class[v.class].push(v.index);
        }
    }
    for list in &mut shared_per_class {
        list.sort_unstable();
    }
    let private_per_class: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            (0..pattern.class_sizes()[c])
                .filter(|i| !shared_per_class[c].contains(i))
                .collect()
        })
        .collect();
    let sizes: Vec<usize> = (0..k)
        .map(|c| shared_per_class[c].len() + 2 * private_per_class[c].len())
        .collect();
    let image = |v: Vertex, side: usize| -> Vertex {
        if let Some(r) = shared_per_class[v.class].iter().position(|&i| i == v.index) {
            Vertex::new(v.class, r)
        } else {
            let r = private_per_class[v.class]
                .iter()
                .position(|&i| i == v.index)
                .expect("vertex is shared or private");
            let base = shared_per_class[v.class].len() + side * private_per_class[v.class].len();
            Vertex::new(v.class, base + r)
        }
    };
    let mut edges = Vec::new();
    let mut triples = Vec::new();
    for side in 0..2 {
        for (u, v) in pattern.graph().edges() {
            edges.push((image(u, side), image(v, side)));
        }
        for t in pattern.hyperedges() {
            triples.push([image(t[0], side), image(t[1], side), image(t[2], side)]);
        }
    }
    crate::complex::close_complex(sizes, triples, edges)
}
