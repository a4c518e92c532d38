//! Simple graphs: ingestion (edge-list JSON, graph6), complements, component
//! analysis, exhaustive canonical forms and enumeration of isomorphism classes.
//!
//! Vertices are `0..m` in code and `1..=m` in every external format. The
//! vertex order is significant: it is the alphabet order used by the Lyndon
//! basis construction.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order accepted by [`canonical_form`].
pub const MAX_CANONICAL_ORDER: usize = 8;
/// Largest order accepted by [`enumerate_graphs`].
pub const MAX_ENUMERATION_ORDER: usize = 7;
/// Largest order representable with a single-byte graph6 header.
pub const MAX_GRAPH6_ORDER: usize = 62;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    m: usize,
    adj: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeListJson,
    Graph6,
}

/// Connected components, isolated vertices and completeness of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphAnalysis {
    /// Components as sorted vertex lists, ordered by smallest vertex.
    pub components: Vec<Vec<usize>>,
    pub isolated: Vec<usize>,
    pub complete: bool,
}

#[derive(Serialize, Deserialize)]
struct EdgeListJson {
    m: i64,
    edges: Vec<Vec<i64>>,
}

impl SimpleGraph {
    pub fn empty(m: usize) -> Self {
        SimpleGraph { m, adj: vec![false; m * m] }
    }

    pub fn complete(m: usize) -> Self {
        let mut g = SimpleGraph::empty(m);
        for i in 0..m {
            for j in i + 1..m {
                g.set_edge(i, j, true);
            }
        }
        g
    }

    pub fn path(m: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..m).map(|i| (i - 1, i)).collect();
        SimpleGraph::from_edges(m, &edges).expect("path edges are valid")
    }

    pub fn cycle(m: usize) -> Self {
        let mut edges: Vec<(usize, usize)> = (1..m).map(|i| (i - 1, i)).collect();
        edges.push((0, m - 1));
        SimpleGraph::from_edges(m, &edges).expect("cycle edges are valid")
    }

    /// Builds a graph from 0-based edges. Rejects loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph::empty(m);
        for &(i, j) in edges {
            if i >= m || j >= m {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{}, {}}} out of range for m = {m}",
                    i + 1,
                    j + 1
                )));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", i + 1)));
            }
            if g.has_edge(i, j) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{}, {}}}", i + 1, j + 1)));
            }
            g.set_edge(i, j, true);
        }
        Ok(g)
    }

    fn set_edge(&mut self, i: usize, j: usize, present: bool) {
        self.adj[i * self.m + j] = present;
        self.adj[j * self.m + i] = present;
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.m + j]
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.m {
            for j in i + 1..self.m {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.m).filter(move |&u| self.has_edge(v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.m * self.m.saturating_sub(1) / 2
    }

    pub fn complement(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.m);
        for i in 0..self.m {
            for j in i + 1..self.m {
                g.set_edge(i, j, !self.has_edge(i, j));
            }
        }
        g
    }

    /// The graph whose vertex `p` is this graph's vertex `perm[p]`.
    pub fn relabel(&self, perm: &[usize]) -> SimpleGraph {
        assert_eq!(perm.len(), self.m, "permutation length");
        let mut g = SimpleGraph::empty(self.m);
        for p in 0..self.m {
            for q in p + 1..self.m {
                g.set_edge(p, q, self.has_edge(perm[p], perm[q]));
            }
        }
        g
    }

    /// Disjoint union with `other`, whose vertices follow this graph's.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(i, j)| (i + self.m, j + self.m)));
        SimpleGraph::from_edges(self.m + other.m, &edges).expect("union edges are valid")
    }

    pub fn to_edge_list_json(&self) -> String {
        let doc = EdgeListJson {
            m: self.m as i64,
            edges: self.edges().into_iter().map(|(i, j)| vec![i as i64 + 1, j as i64 + 1]).collect(),
        };
        serde_json::to_string(&doc).expect("edge list serializes")
    }

    pub fn from_edge_list_json(text: &str) -> Result<Self> {
        let doc: EdgeListJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("edge-list JSON: {e}")))?;
        if doc.m < 1 {
            return Err(Error::InvalidGraph(format!("m must be positive, got {}", doc.m)));
        }
        let m = doc.m as usize;
        let mut edges = Vec::with_capacity(doc.edges.len());
        for e in &doc.edges {
            let [i, j] = e.as_slice() else {
                return Err(Error::Parse(format!("edge must have two endpoints: {e:?}")));
            };
            if *i < 1 || *j < 1 || *i > doc.m || *j > doc.m {
                return Err(Error::InvalidGraph(format!("edge [{i}, {j}] out of range 1..={m}")));
            }
            edges.push((*i as usize - 1, *j as usize - 1));
        }
        SimpleGraph::from_edges(m, &edges)
    }

    pub fn to_graph6(&self) -> Result<String> {
        if self.m > MAX_GRAPH6_ORDER {
            return Err(Error::Precondition(format!(
                "graph6 supports at most {MAX_GRAPH6_ORDER} vertices, got {}",
                self.m
            )));
        }
        let mut out = String::new();
        out.push((self.m as u8 + 63) as char);
        let bits = self.upper_triangle_bits();
        for chunk in bits.chunks(6) {
            let mut byte = 0u8;
            for (p, &b) in chunk.iter().enumerate() {
                if b {
                    byte |= 1 << (5 - p);
                }
            }
            out.push((byte + 63) as char);
        }
        Ok(out)
    }

    pub fn from_graph6(text: &str) -> Result<Self> {
        let bytes = text.trim().as_bytes();
        let (&head, body) =
            bytes.split_first().ok_or_else(|| Error::Parse("empty graph6 string".into()))?;
        if !(63..=126).contains(&head) {
            return Err(Error::Parse(format!("invalid graph6 order byte {head}")));
        }
        let m = (head - 63) as usize;
        if m == 0 {
            return Err(Error::InvalidGraph("graph6 order must be positive".into()));
        }
        if m > MAX_GRAPH6_ORDER {
            return Err(Error::Parse("multi-byte graph6 orders are not supported".into()));
        }
        let nbits = m * m.saturating_sub(1) / 2;
        if body.len() != nbits.div_ceil(6) {
            return Err(Error::Parse(format!(
                "graph6 body has {} bytes, expected {} for m = {m}",
                body.len(),
                nbits.div_ceil(6)
            )));
        }
        let mut bits = Vec::with_capacity(body.len() * 6);
        for &b in body {
            if !(63..=126).contains(&b) {
                return Err(Error::Parse(format!("invalid graph6 byte {b}")));
            }
            let v = b - 63;
            bits.extend((0..6).rev().map(|p| v >> p & 1 == 1));
        }
        if bits[nbits..].iter().any(|&b| b) {
            return Err(Error::Parse("nonzero graph6 padding bits".into()));
        }
        Ok(SimpleGraph::from_upper_triangle_bits(m, &bits[..nbits]))
    }

    /// Adjacency bits `x(i, j)`, `i < j`, ordered by `j` then `i` (the graph6
    /// order). The first `C(p, 2)` bits only involve vertices `0..p`.
    fn upper_triangle_bits(&self) -> Vec<bool> {
        let mut bits = Vec::with_capacity(self.m * self.m.saturating_sub(1) / 2);
        for j in 1..self.m {
            for i in 0..j {
                bits.push(self.has_edge(i, j));
            }
        }
        bits
    }

    fn from_upper_triangle_bits(m: usize, bits: &[bool]) -> SimpleGraph {
        let mut g = SimpleGraph::empty(m);
        let mut p = 0;
        for j in 1..m {
            for i in 0..j {
                if bits[p] {
                    g.set_edge(i, j, true);
                }
                p += 1;
            }
        }
        g
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> =
            self.edges().iter().map(|(i, j)| format!("{}-{}", i + 1, j + 1)).collect();
        write!(f, "SimpleGraph(m={}, {{{}}})", self.m, edges.join(", "))
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<SimpleGraph> {
    match format {
        GraphFormat::EdgeListJson => SimpleGraph::from_edge_list_json(text),
        GraphFormat::Graph6 => SimpleGraph::from_graph6(text),
    }
}

pub fn complement(g: &SimpleGraph) -> SimpleGraph {
    g.complement()
}

pub fn analyze(g: &SimpleGraph) -> GraphAnalysis {
    let m = g.order();
    let mut seen = vec![false; m];
    let mut components = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    let isolated = (0..m).filter(|&v| g.degree(v) == 0).collect();
    GraphAnalysis { components, isolated, complete: g.is_complete() }
}

/// Canonical adjacency string: the lexicographically least graph6-ordered
/// upper-triangle bit string over all vertex permutations.
pub fn canonical_form(g: &SimpleGraph) -> Result<String> {
    let (bits, _) = canonical_labeling(g)?;
    Ok(bits.iter().map(|&b| if b { '1' } else { '0' }).collect())
}

/// Canonical bits together with a permutation realizing them
/// (`g.relabel(&perm)` has exactly those bits).
pub fn canonical_labeling(g: &SimpleGraph) -> Result<(Vec<bool>, Vec<usize>)> {
    let m = g.order();
    if m > MAX_CANONICAL_ORDER {
        return Err(Error::ResourceBound(format!(
            "exhaustive canonical form limited to {MAX_CANONICAL_ORDER} vertices, got {m}"
        )));
    }
    let mut search = CanonicalSearch {
        g,
        perm: Vec::with_capacity(m),
        used: vec![false; m],
        bits: Vec::new(),
        best: None,
    };
    search.run();
    Ok(search.best.expect("at least one permutation"))
}

struct CanonicalSearch<'a> {
    g: &'a SimpleGraph,
    perm: Vec<usize>,
    used: Vec<bool>,
    bits: Vec<bool>,
    best: Option<(Vec<bool>, Vec<usize>)>,
}

impl CanonicalSearch<'_> {
    fn run(&mut self) {
        let m = self.g.order();
        if self.perm.len() == m {
            let better = match &self.best {
                Some((b, _)) => self.bits < *b,
                None => true,
            };
            if better {
                self.best = Some((self.bits.clone(), self.perm.clone()));
            }
            return;
        }
        for u in 0..m {
            if self.used[u] {
                continue;
            }
            let mark = self.bits.len();
            for &p in &self.perm {
                self.bits.push(self.g.has_edge(p, u));
            }
            let prune = match &self.best {
                Some((b, _)) => self.bits.as_slice() > &b[..self.bits.len()],
                None => false,
            };
            if !prune {
                self.used[u] = true;
                self.perm.push(u);
                self.run();
                self.perm.pop();
                self.used[u] = false;
            }
            self.bits.truncate(mark);
        }
    }
}

/// The canonically labelled representative of `g`'s isomorphism class.
pub fn canonical_representative(g: &SimpleGraph) -> Result<SimpleGraph> {
    let (_, perm) = canonical_labeling(g)?;
    Ok(g.relabel(&perm))
}

pub fn is_isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> Result<bool> {
    Ok(a.order() == b.order() && canonical_form(a)? == canonical_form(b)?)
}

/// One canonically labelled representative per isomorphism class of graphs
/// on `n` vertices, sorted by canonical string.
///
/// Classes are generated by adding one edge at a time to representatives of
/// the previous edge count and deduplicating by canonical form.
pub fn enumerate_graphs(n: usize) -> Result<Vec<SimpleGraph>> {
    if n == 0 {
        return Err(Error::Precondition("graph order must be positive".into()));
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::ResourceBound(format!(
            "enumeration limited to {MAX_ENUMERATION_ORDER} vertices, got {n}"
        )));
    }
    let mut all: Vec<(String, SimpleGraph)> = Vec::new();
    let empty = SimpleGraph::empty(n);
    let mut level: HashMap<String, SimpleGraph> =
        HashMap::from([(canonical_form(&empty)?, canonical_representative(&empty)?)]);
    while !level.is_empty() {
        let mut next: HashMap<String, SimpleGraph> = HashMap::new();
        for g in level.values() {
            for i in 0..n {
                for j in i + 1..n {
                    if g.has_edge(i, j) {
                        continue;
                    }
                    let mut h = g.clone();
                    h.set_edge(i, j, true);
                    let key = canonical_form(&h)?;
                    if !next.contains_key(&key) {
                        next.insert(key, canonical_representative(&h)?);
                    }
                }
            }
        }
        all.extend(level.drain());
        level = next;
    }
    all.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(all.into_iter().map(|(_, g)| g).collect())
}

/// Distinct canonical strings over all labelled graphs on `n` vertices.
/// Exponential; used to validate [`enumerate_graphs`] at small `n`.
pub fn brute_force_classes(n: usize) -> Result<BTreeSet<String>> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, e)| *e).collect();
        out.insert(canonical_form(&SimpleGraph::from_edges(n, &edges)?)?);
    }
    Ok(out)
}
