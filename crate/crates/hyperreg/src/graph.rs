//! k-partite graphs with bitset cross-class adjacency.

use crate::bits::BitRow;
use crate::error::{Error, Result};
use serde::Serialize;

/// Hard cap on class sizes; bit rows are fixed-width per class pair.
pub const MAX_CLASS_SIZE: usize = 4096;

/// A vertex addressed as (class, local index). All counting in this crate is
/// over labelled objects, so vertices never need global ids.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Vertex {
    pub class: usize,
    pub index: usize,
}

impl Vertex {
    pub fn new(class: usize, index: usize) -> Self {
        Vertex { class, index }
    }
}

/// A bipartite graph with O(1) edge queries and bit rows on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    rows_left: Vec<BitRow>,
    rows_right: Vec<BitRow>,
}

impl BipartiteGraph {
    pub fn empty(left: usize, right: usize) -> Self {
        BipartiteGraph {
            rows_left: vec![BitRow::empty(right); left],
            rows_right: vec![BitRow::empty(left); right],
        }
    }

    pub fn complete(left: usize, right: usize) -> Self {
        BipartiteGraph {
            rows_left: vec![BitRow::full(right); left],
            rows_right: vec![BitRow::full(left); right],
        }
    }

    pub fn left_size(&self) -> usize {
        self.rows_left.len()
    }

    pub fn right_size(&self) -> usize {
        self.rows_right.len()
    }

    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.rows_left[u].set(v);
        self.rows_right[v].set(u);
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows_left[u].clear(v);
        self.rows_right[v].clear(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows_left[u].test(v)
    }

    /// Neighbours of left vertex `u`, as a bit row over the right class.
    #[inline]
    pub fn row_left(&self, u: usize) -> &BitRow {
        &self.rows_left[u]
    }

    /// Neighbours of right vertex `v`, as a bit row over the left class.
    #[inline]
    pub fn row_right(&self, v: usize) -> &BitRow {
        &self.rows_right[v]
    }

    pub fn edge_count(&self) -> u64 {
        self.rows_left.iter().map(|r| r.count() as u64).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows_left
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |v| (u, v)))
    }

    pub fn degree_left(&self, u: usize) -> usize {
        self.rows_left[u].count()
    }

    /// True when every edge of `self` is an edge of `sup`.
    pub fn is_subgraph_of(&self, sup: &BipartiteGraph) -> bool {
        self.edges().all(|(u, v)| sup.has_edge(u, v))
    }

    /// Restriction to the given vertex subsets (kept vertices keep their
    /// indices; edges touching dropped vertices disappear).
    pub fn masked(&self, left_keep: &BitRow, right_keep: &BitRow) -> BipartiteGraph {
        let mut out = BipartiteGraph::empty(self.left_size(), self.right_size());
        for u in left_keep.iter() {
            let mut row = self.rows_left[u].clone();
            row.and_assign(right_keep);
            for v in row.iter() {
                out.add_edge(u, v);
            }
        }
        out
    }
}

/// A k-partite graph: class sizes plus one bipartite adjacency per
/// unordered class pair. No edges inside a class, by construction.
#[derive(Clone, Debug)]
pub struct KPartiteGraph {
    class_sizes: Vec<usize>,
    // indexed by pair_index(i, j) for i < j
    pairs: Vec<BipartiteGraph>,
}

fn pair_index(k: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < k);
    // position of (i, j) in lexicographic order over i < j
    i * k - i * (i + 1) / 2 + (j - i - 1)
}

impl KPartiteGraph {
    pub fn new(class_sizes: Vec<usize>) -> Result<Self> {
        if class_sizes.is_empty() {
            return Err(Error::structure(
                "a k-partite graph needs at least one class",
            ));
        }
        if let Some((i, &n)) = class_sizes
            .iter()
            .enumerate()
            .find(|(_, &n)| n > MAX_CLASS_SIZE)
        {
            return Err(Error::capacity(format!(
                "class {i} has size {n}, above the cap {MAX_CLASS_SIZE}"
            )));
        }
        let k = class_sizes.len();
        let mut pairs = Vec::with_capacity(k * (k - 1) / 2);
        for i in 0..k {
            for j in (i + 1)..k {
                pairs.push(BipartiteGraph::empty(class_sizes[i], class_sizes[j]));
            }
        }
        Ok(KPartiteGraph { class_sizes, pairs })
    }

    pub fn k(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn class_size(&self, i: usize) -> usize {
        self.class_sizes[i]
    }

    pub fn total_vertices(&self) -> usize {
        self.class_sizes.iter().sum()
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v.class >= self.k() || v.index >= self.class_sizes[v.class] {
            return Err(Error::structure(format!(
                "vertex ({}, {}) out of range",
                v.class, v.index
            )));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u.class == v.class {
            return Err(Error::structure(format!(
                "edge inside class {}: ({}, {})",
                u.class, u.index, v.index
            )));
        }
        let (a, b) = if u.class < v.class { (u, v) } else { (v, u) };
        let idx = pair_index(self.k(), a.class, b.class);
        self.pairs[idx].add_edge(a.index, b.index);
        Ok(())
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        if u.class == v.class {
            return false;
        }
        let (a, b) = if u.class < v.class { (u, v) } else { (v, u) };
        self.pairs[pair_index(self.k(), a.class, b.class)].has_edge(a.index, b.index)
    }

    /// The bipartite graph between classes i < j.
    pub fn pair(&self, i: usize, j: usize) -> &BipartiteGraph {
        assert!(i < j, "pair classes must be given as i < j");
        &self.pairs[pair_index(self.k(), i, j)]
    }

    pub fn pair_mut(&mut self, i: usize, j: usize) -> &mut BipartiteGraph {
        assert!(i < j, "pair classes must be given as i < j");
        let k = self.k();
        &mut self.pairs[pair_index(k, i, j)]
    }

    /// Neighbours of `u` inside class `other`, as a bit row.
    pub fn neighbours_in(&self, u: Vertex, other: usize) -> &BitRow {
        assert_ne!(u.class, other);
        if u.class < other {
            self.pairs[pair_index(self.k(), u.class, other)].row_left(u.index)
        } else {
            self.pairs[pair_index(self.k(), other, u.class)].row_right(u.index)
        }
    }

    pub fn degree(&self, u: Vertex) -> usize {
        (0..self.k())
            .filter(|&c| c != u.class)
            .map(|c| self.neighbours_in(u, c).count())
            .sum()
    }

    pub fn edge_count(&self) -> u64 {
        self.pairs.iter().map(|p| p.edge_count()).sum()
    }

    /// All edges in canonical order: class pairs lexicographic, then
    /// (left index, right index) lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let k = self.k();
        (0..k).flat_map(move |i| {
            ((i + 1)..k).flat_map(move |j| {
                self.pair(i, j)
                    .edges()
                    .map(move |(u, v)| (Vertex::new(i, u), Vertex::new(j, v)))
            })
        })
    }
}
