//! Complexes: k-partite graphs enriched with a downward-closed hyperedge
//! layer. Every pair inside a hyperedge must be an edge.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{KPartiteGraph, Vertex};

/// Sort three vertices by class, requiring the classes to be distinct.
pub fn sorted_triple(a: Vertex, b: Vertex, c: Vertex) -> Result<[Vertex; 3]> {
    let mut t = [a, b, c];
    t.sort();
    if t[0].class == t[1].class || t[1].class == t[2].class {
        return Err(Error::structure(format!(
            "hyperedge with two vertices in one class: ({},{}) ({},{}) ({},{})",
            a.class, a.index, b.class, b.index, c.class, c.index
        )));
    }
    Ok(t)
}

/// A k-partite complex: vertex classes, cross-class edges and cross-class
/// hyperedges, downward closed. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Complex {
    graph: KPartiteGraph,
    hyperedges: HashSet<[Vertex; 3]>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.graph.class_sizes() == other.graph.class_sizes()
            && self.hyperedges == other.hyperedges
            && self.edges_canonical() == other.edges_canonical()
    }
}
impl Eq for Complex {}

impl Complex {
    /// Build from explicit parts, validating the closure invariant.
    /// Rejects unclosed input; `close_complex` adds the missing pairs instead.
    pub fn new(
        graph: KPartiteGraph,
        triples: impl IntoIterator<Item = [Vertex; 3]>,
    ) -> Result<Self> {
        let mut hyperedges = HashSet::new();
        for t in triples {
            let t = sorted_triple(t[0], t[1], t[2])?;
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                if !graph.has_edge(a, b) {
                    return Err(Error::structure(format!(
                        "hyperedge ({},{}) ({},{}) ({},{}) misses edge ({},{})-({},{})",
                        t[0].class,
                        t[0].index,
                        t[1].class,
                        t[1].index,
                        t[2].class,
                        t[2].index,
                        a.class,
                        a.index,
                        b.class,
                        b.index
                    )));
                }
            }
            hyperedges.insert(t);
        }
        Ok(Complex { graph, hyperedges })
    }

    pub fn empty(class_sizes: Vec<usize>) -> Result<Self> {
        Ok(Complex {
            graph: KPartiteGraph::new(class_sizes)?,
            hyperedges: HashSet::new(),
        })
    }

    /// The complete complex: all cross-class pairs and all cross-class triples.
    pub fn complete(class_sizes: Vec<usize>) -> Result<Self> {
        let k = class_sizes.len();
        let mut graph = KPartiteGraph::new(class_sizes.clone())?;
        for i in 0..k {
            for j in (i + 1)..k {
                for u in 0..class_sizes[i] {
                    for v in 0..class_sizes[j] {
                        graph.add_edge(Vertex::new(i, u), Vertex::new(j, v))?;
                    }
                }
            }
        }
        let mut hyperedges = HashSet::new();
        for h in 0..k {
            for i in (h + 1)..k {
                for j in (i + 1)..k {
                    for u in 0..class_sizes[h] {
                        for v in 0..class_sizes[i] {
                            for w in 0..class_sizes[j] {
                                hyperedges.insert([
                                    Vertex::new(h, u),
                                    Vertex::new(i, v),
                                    Vertex::new(j, w),
                                ]);
                            }
                        }
                    }
                }
            }
        }
        Ok(Complex { graph, hyperedges })
    }

    pub fn graph(&self) -> &KPartiteGraph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.graph.k()
    }

    pub fn class_sizes(&self) -> &[usize] {
        self.graph.class_sizes()
    }

    /// |H|: total number of vertices.
    pub fn num_vertices(&self) -> usize {
        self.graph.total_vertices()
    }

    pub fn e2(&self) -> u64 {
        self.graph.edge_count()
    }

    pub fn e3(&self) -> u64 {
        self.hyperedges.len() as u64
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.graph.has_edge(u, v)
    }

    pub fn has_hyperedge(&self, a: Vertex, b: Vertex, c: Vertex) -> bool {
        match sorted_triple(a, b, c) {
            Ok(t) => self.hyperedges.contains(&t),
            Err(_) => false,
        }
    }

    pub fn hyperedges(&self) -> impl Iterator<Item = &[Vertex; 3]> {
        self.hyperedges.iter()
    }

    pub fn hyperedges_canonical(&self) -> Vec<[Vertex; 3]> {
        let mut v: Vec<_> = self.hyperedges.iter().copied().collect();
        v.sort();
        v
    }

    pub fn edges_canonical(&self) -> Vec<(Vertex, Vertex)> {
        let mut v: Vec<_> = self.graph.edges().collect();
        v.sort();
        v
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.class_sizes()
            .iter()
            .enumerate()
            .flat_map(|(c, &n)| (0..n).map(move |i| Vertex::new(c, i)))
    }

    /// Neighbours of `v` in the underlying graph, across all classes.
    pub fn neighbours(&self, v: Vertex) -> Vec<Vertex> {
        (0..self.k())
            .filter(|&c| c != v.class)
            .flat_map(|c| {
                self.graph
                    .neighbours_in(v, c)
                    .iter()
                    .map(move |i| Vertex::new(c, i))
            })
            .collect()
    }

    pub fn graph_degree(&self, v: Vertex) -> usize {
        self.graph.degree(v)
    }

    pub fn hypergraph_degree(&self, v: Vertex) -> usize {
        self.hyperedges.iter().filter(|t| t.contains(&v)).count()
    }

    /// Degree of a vertex in the complex: the larger of its graph degree and
    /// its hypergraph degree.
    pub fn complex_degree(&self, v: Vertex) -> usize {
        self.graph_degree(v).max(self.hypergraph_degree(v))
    }
}

/// Build a complex from hyperedges plus a partial edge set, adding every
/// pair forced by a hyperedge. The builder is permissive where the wire
/// format is strict.
pub fn close_complex(
    class_sizes: Vec<usize>,
    triples: impl IntoIterator<Item = [Vertex; 3]>,
    partial_edges: impl IntoIterator<Item = (Vertex, Vertex)>,
) -> Result<Complex> {
    let mut graph = KPartiteGraph::new(class_sizes)?;
    for (u, v) in partial_edges {
        graph.add_edge(u, v)?;
    }
    let mut hyperedges = HashSet::new();
    for t in triples {
        let t = sorted_triple(t[0], t[1], t[2])?;
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            graph.add_edge(a, b)?;
        }
        hyperedges.insert(t);
    }
    Ok(Complex { graph, hyperedges })
}

/// Per-vertex degrees of a complex, plus the maximum degree.
#[derive(Clone, Debug)]
pub struct DegreeProfile {
    graph: Vec<Vec<usize>>,
    hyper: Vec<Vec<usize>>,
    pub max_degree: usize,
}

impl DegreeProfile {
    pub fn graph_degree(&self, v: Vertex) -> usize {
        self.graph[v.class][v.index]
    }
    pub fn hypergraph_degree(&self, v: Vertex) -> usize {
        self.hyper[v.class][v.index]
    }
    pub fn complex_degree(&self, v: Vertex) -> usize {
        self.graph_degree(v).max(self.hypergraph_degree(v))
    }
}

pub fn degree_profile(h: &Complex) -> DegreeProfile {
    let mut graph: Vec<Vec<usize>> = h.class_sizes().iter().map(|&n| vec![0; n]).collect();
    let mut hyper = graph.clone();
    for v in h.vertices() {
        graph[v.class][v.index] = h.graph_degree(v);
    }
    for t in h.hyperedges() {
        for v in t {
            hyper[v.class][v.index] += 1;
        }
    }
    let max_degree = h
        .vertices()
        .map(|v| graph[v.class][v.index].max(hyper[v.class][v.index]))
        .max()
        .unwrap_or(0);
    DegreeProfile {
        graph,
        hyper,
        max_degree,
    }
}
