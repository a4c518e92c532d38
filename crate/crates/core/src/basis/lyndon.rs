use std::fmt;

use super::trace::{Commutation, Letter, TracePoly};
use super::MultiDegree;
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// All Lyndon words of length `1..=max_len` over letters `0..m`, in
/// lexicographic order (Duval's generation scheme).
pub fn lyndon_words(m: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    if m == 0 || max_len == 0 {
        return out;
    }
    let top = (m - 1) as i32;
    let mut w: Vec<i32> = vec![-1];
    while let Some(last) = w.last_mut() {
        *last += 1;
        out.push(w.iter().map(|&x| x as Letter).collect());
        let period = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - period]);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
    }
    out
}

/// A word is Lyndon iff it is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[Letter]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Standard factorization `w = uv` where `v` is the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[Letter]) -> Option<(&[Letter], &[Letter])> {
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).map(|i| w.split_at(i))
}

/// Binary bracket expression with vertex leaves.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum BracketWord {
    Leaf(Letter),
    Node(Box<BracketWord>, Box<BracketWord>),
}

impl BracketWord {
    pub fn leaf(v: Letter) -> Self {
        BracketWord::Leaf(v)
    }

    pub fn bracket(left: BracketWord, right: BracketWord) -> Self {
        BracketWord::Node(Box::new(left), Box::new(right))
    }

    /// Standard bracketing of a Lyndon word.
    pub fn from_lyndon(w: &[Letter]) -> Result<Self> {
        if !is_lyndon(w) {
            return Err(Error::Precondition(format!("{w:?} is not a Lyndon word")));
        }
        Ok(Self::standard(w))
    }

    fn standard(w: &[Letter]) -> Self {
        match standard_factorization(w) {
            None => BracketWord::Leaf(w[0]),
            Some((u, v)) => BracketWord::bracket(Self::standard(u), Self::standard(v)),
        }
    }

    /// Left-normed `[a, [a, ..., [a, b]]]` with `a` repeated `reps` times.
    pub fn left_normed(a: Letter, b: Letter, reps: usize) -> Self {
        (0..reps).fold(BracketWord::Leaf(b), |acc, _| BracketWord::bracket(BracketWord::Leaf(a), acc))
    }

    pub fn degree(&self) -> usize {
        match self {
            BracketWord::Leaf(_) => 1,
            BracketWord::Node(l, r) => l.degree() + r.degree(),
        }
    }

    pub fn leaves(&self) -> Vec<Letter> {
        match self {
            BracketWord::Leaf(a) => vec![*a],
            BracketWord::Node(l, r) => {
                let mut out = l.leaves();
                out.extend(r.leaves());
                out
            }
        }
    }

    pub fn multidegree(&self, m: usize) -> MultiDegree {
        MultiDegree::of_word(&self.leaves(), m)
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketWord::Leaf(a) => write!(f, "v{}", *a as usize + 1),
            BracketWord::Node(l, r) => write!(f, "[{l},{r}]"),
        }
    }
}

impl fmt::Debug for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Image of a bracket in the truncated trace algebra:
/// `phi([u, w]) = phi(u) phi(w) - phi(w) phi(u)`.
pub fn expand(b: &BracketWord, comm: &Commutation, k: usize) -> Result<TracePoly> {
    if b.degree() > k {
        return Err(Error::Precondition(format!(
            "bracket {b} has degree {} above the nilpotency bound {k}",
            b.degree()
        )));
    }
    if b.leaves().iter().any(|&a| a as usize >= comm.alphabet_size()) {
        return Err(Error::Precondition(format!("bracket {b} uses a letter outside the graph")));
    }
    Ok(expand_unchecked(b, comm, k))
}

fn expand_unchecked(b: &BracketWord, comm: &Commutation, k: usize) -> TracePoly {
    match b {
        BracketWord::Leaf(a) => TracePoly::from([(comm.normal_form(&[*a]), Rational::one())]),
        BracketWord::Node(l, r) => {
            let pl = expand_unchecked(l, comm, k);
            let pr = expand_unchecked(r, comm, k);
            comm.commutator(&pl, &pr, k)
        }
    }
}
