//! Graded basis and structure constants of `g(k, G)`.
//!
//! The algebra is realized inside the free partially commutative associative
//! algebra on the vertices (non-adjacent vertices commute), truncated above
//! degree `k`. Standard-bracketed Lyndon words are expanded there, and a
//! basis of each multidegree block is chosen greedily in lexicographic order.
//! The per-degree counts are checked against [`dimension_oracle`], which is
//! computed from the clique polynomial of the complement graph and shares no
//! code with the construction.

mod graded;
mod lyndon;
mod oracle;
mod trace;

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

pub use graded::{graded_basis, graph_algebra, structure_constants, BasisElement, GradedBasis};
pub use lyndon::{expand, is_lyndon, lyndon_words, standard_factorization, BracketWord};
pub use oracle::{clique_polynomial, dimension_oracle, mobius, trace_power_sums};
pub use trace::{letter_word, trace_normal_form, Commutation, Letter, TracePoly, TraceWord};

use crate::error::Result;
use crate::graph::SimpleGraph;

/// Multiplicity of each vertex in a word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<usize>);

impl MultiDegree {
    pub fn zero(m: usize) -> Self {
        MultiDegree(vec![0; m])
    }

    pub fn of_word(word: &[Letter], m: usize) -> Self {
        let mut counts = vec![0; m];
        for &l in word {
            counts[l as usize] += 1;
        }
        MultiDegree(counts)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The sorted multiplicities, which identify the multidegree up to a
    /// permutation of the vertices.
    pub fn shape(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.0.iter().copied().filter(|&x| x > 0).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }
}

impl Add for &MultiDegree {
    type Output = MultiDegree;

    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        assert_eq!(self.len(), rhs.len(), "multidegree length mismatch");
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Debug for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Expansion of a bracket expression of `g(k, G)` in the trace algebra.
pub fn expand_bracket_word(b: &BracketWord, g: &SimpleGraph, k: usize) -> Result<TracePoly> {
    expand(b, &Commutation::of_graph(g), k)
}
