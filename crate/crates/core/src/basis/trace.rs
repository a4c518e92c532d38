//! Words in the free partially commutative monoid where two distinct vertices
//! commute exactly when they are not adjacent.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::linalg::Rational;

pub type Letter = u8;

/// Lexicographically least representative of a trace class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceWord(Vec<Letter>);

impl TraceWord {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for TraceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| (l + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Linear combination of trace words.
pub type TracePoly = BTreeMap<TraceWord, Rational>;

/// Commutation relation induced by a graph: `a` and `b` commute iff
/// `a != b` and `{a, b}` is not an edge.
#[derive(Clone, Debug)]
pub struct Commutation {
    m: usize,
    table: Vec<bool>,
}

impl Commutation {
    pub fn of_graph(g: &SimpleGraph) -> Self {
        let m = g.order();
        let mut table = vec![false; m * m];
        for a in 0..m {
            for b in 0..m {
                table[a * m + b] = a != b && !g.has_edge(a, b);
            }
        }
        Commutation { m, table }
    }

    pub fn alphabet_size(&self) -> usize {
        self.m
    }

    pub fn commutes(&self, a: Letter, b: Letter) -> bool {
        self.table[a as usize * self.m + b as usize]
    }

    /// Repeatedly extracts the smallest letter that can be moved to the front
    /// (all letters before its first occurrence commute with it).
    pub fn normal_form(&self, word: &[Letter]) -> TraceWord {
        let mut rest = word.to_vec();
        let mut out = Vec::with_capacity(word.len());
        while !rest.is_empty() {
            let mut best: Option<(Letter, usize)> = None;
            for p in 0..rest.len() {
                let a = rest[p];
                if best.is_some_and(|(b, _)| b <= a) {
                    continue;
                }
                if rest[..p].iter().all(|&q| self.commutes(q, a)) {
                    best = Some((a, p));
                }
            }
            let (a, p) = best.expect("the first letter is always movable");
            rest.remove(p);
            out.push(a);
        }
        TraceWord(out)
    }

    pub fn normalize_concat(&self, left: &TraceWord, right: &TraceWord) -> TraceWord {
        let mut w = Vec::with_capacity(left.len() + right.len());
        w.extend_from_slice(&left.0);
        w.extend_from_slice(&right.0);
        self.normal_form(&w)
    }

    /// Product of trace polynomials, dropping words longer than `max_len`.
    pub fn multiply(&self, a: &TracePoly, b: &TracePoly, max_len: usize) -> TracePoly {
        let mut out = TracePoly::new();
        for (wa, ca) in a {
            for (wb, cb) in b {
                if wa.len() + wb.len() > max_len {
                    continue;
                }
                let w = self.normalize_concat(wa, wb);
                *out.entry(w).or_default() += &(ca * cb);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `ab - ba` truncated at `max_len`.
    pub fn commutator(&self, a: &TracePoly, b: &TracePoly, max_len: usize) -> TracePoly {
        let mut out = self.multiply(a, b, max_len);
        for (w, c) in self.multiply(b, a, max_len) {
            *out.entry(w).or_default() -= &c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

pub fn letter_word(word: &[usize], m: usize) -> Result<Vec<Letter>> {
    if m > Letter::MAX as usize + 1 {
        return Err(Error::Precondition(format!("alphabet of {m} letters is too large")));
    }
    word.iter()
        .map(|&l| {
            if l < m {
                Ok(l as Letter)
            } else {
                Err(Error::Precondition(format!("letter {} out of range 1..={m}", l + 1)))
            }
        })
        .collect()
}

/// Lexicographically least word in the trace class of `word` (0-based letters).
pub fn trace_normal_form(word: &[usize], g: &SimpleGraph) -> Result<TraceWord> {
    let letters = letter_word(word, g.order())?;
    Ok(Commutation::of_graph(g).normal_form(&letters))
}
