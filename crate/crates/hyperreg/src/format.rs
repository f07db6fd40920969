//! Line-based wire formats.
//!
//! Complex files (UTF-8, `#` comments):
//! ```text
//! k <num_classes>
//! class <i> <size>
//! edge <i> <u> <j> <v>
//! tri <h> <u> <i> <v> <j> <w>
//! ```
//! Canonical form lists classes in ascending order, then edges, then triples,
//! each in lexicographic order. The parser is strict: a hyperedge whose pairs
//! are not all declared as edges is a closure violation.
//!
//! Flat hypergraph files: `n <N>` then `tri <u> <v> <w>` lines.
//! Colouring files for complete hypergraphs: `m <N>` then `col <u> <v> <w> <0|1>`.

use std::collections::HashSet;

use crate::complex::{sorted_triple, Complex};
use crate::error::{Error, Result};
use crate::graph::{KPartiteGraph, Vertex};
use crate::hypergraph::{triple_rank, triples_of, Hypergraph3, TripleColouring};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }
}

impl<'a> Iterator for Lines<'a> {
    /// (1-based line number, whitespace-split fields)
    type Item = (usize, Vec<&'a str>);
    fn next(&mut self) -> Option<Self::Item> {
        for (idx, raw) in self.inner.by_ref() {
            let line = match raw.split_once('#') {
                Some((before, _)) => before,
                None => raw,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if !fields.is_empty() {
                return Some((idx + 1, fields));
            }
        }
        None
    }
}

fn field<T: std::str::FromStr>(fields: &[&str], pos: usize, line: usize) -> Result<T> {
    fields
        .get(pos)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::parse(line, format!("missing or malformed field {pos}")))
}

pub fn parse_complex(text: &str) -> Result<Complex> {
    let mut lines = Lines::new(text);
    let (first_no, first) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "empty complex file"))?;
    if first[0] != "k" {
        return Err(Error::parse(first_no, "expected `k <num_classes>` first"));
    }
    let k: usize = field(&first, 1, first_no)?;
    if k == 0 {
        return Err(Error::parse(first_no, "k must be positive"));
    }

    let mut sizes: Vec<Option<usize>> = vec![None; k];
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut triples: Vec<([Vertex; 3], usize)> = Vec::new();

    let check =
        |class: usize, idx: usize, sizes: &[Option<usize>], line: usize| -> Result<Vertex> {
            if class >= k {
                return Err(Error::parse(
                    line,
                    format!("class {class} out of range (k = {k})"),
                ));
            }
            match sizes[class] {
                Some(n) if idx < n => Ok(Vertex::new(class, idx)),
                Some(n) => Err(Error::parse(
                    line,
                    format!("vertex index {idx} out of range for class {class} of size {n}"),
                )),
                None => Err(Error::parse(
                    line,
                    format!("class {class} used before declared"),
                )),
            }
        };

    for (no, fields) in lines {
        match fields[0] {
            "class" => {
                let i: usize = field(&fields, 1, no)?;
                let n: usize = field(&fields, 2, no)?;
                if i >= k {
                    return Err(Error::parse(
                        no,
                        format!("class {i} out of range (k = {k})"),
                    ));
                }
                if sizes[i].is_some() {
                    return Err(Error::parse(no, format!("class {i} declared twice")));
                }
                sizes[i] = Some(n);
            }
            "edge" => {
                let u = check(field(&fields, 1, no)?, field(&fields, 2, no)?, &sizes, no)?;
                let v = check(field(&fields, 3, no)?, field(&fields, 4, no)?, &sizes, no)?;
                if u.class == v.class {
                    return Err(Error::parse(no, "edge inside a class"));
                }
                edges.push((u, v));
            }
            "tri" => {
                let a = check(field(&fields, 1, no)?, field(&fields, 2, no)?, &sizes, no)?;
                let b = check(field(&fields, 3, no)?, field(&fields, 4, no)?, &sizes, no)?;
                let c = check(field(&fields, 5, no)?, field(&fields, 6, no)?, &sizes, no)?;
                let t = sorted_triple(a, b, c).map_err(|e| Error::parse(no, e.to_string()))?;
                triples.push((t, no));
            }
            other => {
                return Err(Error::parse(no, format!("unknown directive `{other}`")));
            }
        }
    }

    let class_sizes: Vec<usize> = sizes
        .iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| Error::parse(0, format!("class {i} never declared"))))
        .collect::<Result<_>>()?;

    let mut graph = KPartiteGraph::new(class_sizes)?;
    let mut edge_set: HashSet<(Vertex, Vertex)> = HashSet::new();
    for (u, v) in edges {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        graph.add_edge(a, b)?;
        edge_set.insert((a, b));
    }
    // Strict closure check with line anchors before handing to Complex::new.
    for (t, no) in &triples {
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            if !edge_set.contains(&(a, b)) {
                return Err(Error::parse(
                    *no,
                    format!(
                        "hyperedge ({},{}) ({},{}) ({},{}) is missing edge ({},{})-({},{})",
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
                    ),
                ));
            }
        }
    }
    Complex::new(graph, triples.into_iter().map(|(t, _)| t))
}

pub fn serialize_complex(h: &Complex) -> String {
    let mut out = String::new();
    out.push_str(&format!("k {}\n", h.k()));
    for (i, n) in h.class_sizes().iter().enumerate() {
        out.push_str(&format!("class {i} {n}\n"));
    }
    let mut edges: Vec<_> = h
        .edges_canonical()
        .into_iter()
        .map(|(u, v)| (u.class, u.index, v.class, v.index))
        .collect();
    edges.sort();
    for (i, u, j, v) in edges {
        out.push_str(&format!("edge {i} {u} {j} {v}\n"));
    }
    let mut tris: Vec<_> = h
        .hyperedges_canonical()
        .into_iter()
        .map(|t| {
            (
                t[0].class, t[0].index, t[1].class, t[1].index, t[2].class, t[2].index,
            )
        })
        .collect();
    tris.sort();
    for (a, u, b, v, c, w) in tris {
        out.push_str(&format!("tri {a} {u} {b} {v} {c} {w}\n"));
    }
    out
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph3> {
    let mut lines = Lines::new(text);
    let (first_no, first) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "empty hypergraph file"))?;
    if first[0] != "n" {
        return Err(Error::parse(first_no, "expected `n <vertices>` first"));
    }
    let n: usize = field(&first, 1, first_no)?;
    let mut h = Hypergraph3::new(n);
    for (no, fields) in lines {
        if fields[0] != "tri" {
            return Err(Error::parse(
                no,
                format!("unknown directive `{}`", fields[0]),
            ));
        }
        let a: usize = field(&fields, 1, no)?;
        let b: usize = field(&fields, 2, no)?;
        let c: usize = field(&fields, 3, no)?;
        h.add_edge(a, b, c)
            .map_err(|e| Error::parse(no, e.to_string()))?;
    }
    Ok(h)
}

pub fn serialize_hypergraph(h: &Hypergraph3) -> String {
    let mut out = format!("n {}\n", h.n());
    for t in h.edges() {
        out.push_str(&format!("tri {} {} {}\n", t[0], t[1], t[2]));
    }
    out
}

pub fn parse_colouring(text: &str) -> Result<TripleColouring> {
    let mut lines = Lines::new(text);
    let (first_no, first) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "empty colouring file"))?;
    if first[0] != "m" {
        return Err(Error::parse(first_no, "expected `m <vertices>` first"));
    }
    let m: usize = field(&first, 1, first_no)?;
    let total = if m >= 3 { m * (m - 1) * (m - 2) / 6 } else { 0 };
    let mut colours: Vec<Option<u8>> = vec![None; total];
    for (no, fields) in lines {
        if fields[0] != "col" {
            return Err(Error::parse(
                no,
                format!("unknown directive `{}`", fields[0]),
            ));
        }
        let mut t = [
            field::<usize>(&fields, 1, no)?,
            field::<usize>(&fields, 2, no)?,
            field::<usize>(&fields, 3, no)?,
        ];
        let c: u8 = field(&fields, 4, no)?;
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] || t[2] >= m {
            return Err(Error::parse(
                no,
                "triple must have three distinct vertices below m",
            ));
        }
        if c > 1 {
            return Err(Error::parse(no, "colour must be 0 or 1"));
        }
        let r = triple_rank(t[0], t[1], t[2]);
        if colours[r].is_some() {
            return Err(Error::parse(no, "triple coloured twice"));
        }
        colours[r] = Some(c);
    }
    let colours: Vec<u8> = colours
        .into_iter()
        .enumerate()
        .map(|(r, c)| {
            c.ok_or_else(|| {
                let t = triples_of(m)[r];
                Error::parse(
                    0,
                    format!("triple ({},{},{}) never coloured", t[0], t[1], t[2]),
                )
            })
        })
        .collect::<Result<_>>()?;
    TripleColouring::new(m, colours)
}

pub fn serialize_colouring(col: &TripleColouring) -> String {
    let mut out = format!("m {}\n", col.m());
    for (t, c) in col.entries() {
        out.push_str(&format!("col {} {} {} {}\n", t[0], t[1], t[2], c));
    }
    out
}
