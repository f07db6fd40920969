//! Plain 3-uniform hypergraphs on an unpartitioned vertex set, and
//! 2-colourings of complete ones. Used by the partition machinery, the
//! Turán clique search and the Ramsey pipeline.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A 3-uniform hypergraph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph3 {
    n: usize,
    edges: BTreeSet<[usize; 3]>,
}

impl Hypergraph3 {
    pub fn new(n: usize) -> Self {
        Hypergraph3 {
            n,
            edges: BTreeSet::new(),
        }
    }

    /// Complete K_n^{(3)}.
    pub fn complete(n: usize) -> Self {
        let mut h = Hypergraph3::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                for w in (v + 1)..n {
                    h.edges.insert([u, v, w]);
                }
            }
        }
        h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, a: usize, b: usize, c: usize) -> Result<()> {
        let t = Self::sorted(a, b, c)?;
        if t[2] >= self.n {
            return Err(Error::structure(format!(
                "hyperedge ({a},{b},{c}) out of range for {} vertices",
                self.n
            )));
        }
        self.edges.insert(t);
        Ok(())
    }

    fn sorted(a: usize, b: usize, c: usize) -> Result<[usize; 3]> {
        let mut t = [a, b, c];
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] {
            return Err(Error::structure(format!(
                "hyperedge with a repeated vertex: ({a},{b},{c})"
            )));
        }
        Ok(t)
    }

    pub fn has_edge(&self, a: usize, b: usize, c: usize) -> bool {
        match Self::sorted(a, b, c) {
            Ok(t) => self.edges.contains(&t),
            Err(_) => false,
        }
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.len() as u64
    }

    pub fn edges(&self) -> impl Iterator<Item = &[usize; 3]> {
        self.edges.iter()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|t| t.contains(&v)).count()
    }

    /// Maximum degree over all vertices.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }
}

/// A red/blue colouring of all triples of `0..m` (red = 0, blue = 1).
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TripleColouring {
    m: usize,
    colours: Vec<u8>,
}

/// Rank of the sorted triple u < v < w among all triples of `0..m`,
/// via the combinatorial number system.
pub fn triple_rank(u: usize, v: usize, w: usize) -> usize {
    debug_assert!(u < v && v < w);
    w * (w - 1) * (w - 2) / 6 + v * (v - 1) / 2 + u
}

/// All triples of `0..m` in rank order.
pub fn triples_of(m: usize) -> Vec<[usize; 3]> {
    let count = if m >= 3 { m * (m - 1) * (m - 2) / 6 } else { 0 };
    let mut out = Vec::with_capacity(count);
    for w in 2..m {
        for v in 1..w {
            for u in 0..v {
                out.push([u, v, w]);
            }
        }
    }
    debug_assert!(out
        .iter()
        .enumerate()
        .all(|(r, t)| triple_rank(t[0], t[1], t[2]) == r));
    out
}

impl TripleColouring {
    pub fn new(m: usize, colours: Vec<u8>) -> Result<Self> {
        let want = if m >= 3 { m * (m - 1) * (m - 2) / 6 } else { 0 };
        if colours.len() != want {
            return Err(Error::structure(format!(
                "colouring of K_{m} needs {want} colours, got {}",
                colours.len()
            )));
        }
        if let Some(c) = colours.iter().find(|&&c| c > 1) {
            return Err(Error::structure(format!("colour {c} is not 0 or 1")));
        }
        Ok(TripleColouring { m, colours })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn colour(&self, u: usize, v: usize, w: usize) -> u8 {
        let mut t = [u, v, w];
        t.sort_unstable();
        self.colours[triple_rank(t[0], t[1], t[2])]
    }

    /// The subhypergraph carrying the given colour.
    pub fn monochromatic_subhypergraph(&self, colour: u8) -> Hypergraph3 {
        let mut h = Hypergraph3::new(self.m);
        for (t, &c) in triples_of(self.m).iter().zip(&self.colours) {
            if c == colour {
                h.edges.insert(*t);
            }
        }
        h
    }

    pub fn entries(&self) -> impl Iterator<Item = ([usize; 3], u8)> + '_ {
        triples_of(self.m)
            .into_iter()
            .zip(self.colours.iter().copied())
    }
}
