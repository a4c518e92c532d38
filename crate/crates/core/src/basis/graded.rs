use std::collections::{BTreeMap, HashMap};

use super::lyndon::{expand, lyndon_words, BracketWord};
use super::oracle::dimension_oracle;
use super::trace::{Commutation, Letter, TracePoly, TraceWord};
use super::MultiDegree;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::lie::{AlternatingMap, BasisLabel, GradedLieAlgebra, LieAlgebra};
use crate::linalg::{Echelon, SparseVec};

#[derive(Clone, Debug)]
pub struct BasisElement {
    /// Lyndon word whose standard bracketing gives this element.
    pub word: Vec<Letter>,
    pub bracket: BracketWord,
    pub multidegree: MultiDegree,
    pub expansion: TracePoly,
}

impl BasisElement {
    pub fn degree(&self) -> usize {
        self.word.len()
    }
}

/// Basis of `g(k, G)` split by degree; within a degree, elements are in
/// lexicographic order of their Lyndon words. Flattening the degrees in order
/// gives the global basis indexing used by [`GradedLieAlgebra`].
#[derive(Clone, Debug)]
pub struct GradedBasis {
    pub m: usize,
    pub k: usize,
    pub degrees: Vec<Vec<BasisElement>>,
}

impl GradedBasis {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.degrees.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = &BasisElement> + '_ {
        self.degrees.iter().flatten()
    }

    pub fn element(&self, index: usize) -> &BasisElement {
        self.elements().nth(index).expect("basis index in range")
    }

    /// Global index of the element labelled by the Lyndon word `word`.
    pub fn index_of_word(&self, word: &[Letter]) -> Option<usize> {
        self.elements().position(|e| e.word == word)
    }
}

/// Linear-algebra state for one multidegree block: the trace words that occur
/// there, and a tracking echelon basis over the selected elements.
struct Block {
    columns: HashMap<TraceWord, usize>,
    echelon: Echelon,
    members: Vec<usize>,
}

impl Block {
    fn coordinates(&self, poly: &TracePoly) -> Option<SparseVec> {
        let mut pairs = Vec::with_capacity(poly.len());
        for (w, c) in poly {
            pairs.push((*self.columns.get(w)?, c.clone()));
        }
        Some(SparseVec::from_pairs(pairs))
    }
}

struct Construction {
    comm: Commutation,
    basis: GradedBasis,
    blocks: HashMap<MultiDegree, Block>,
}

fn construct(g: &SimpleGraph, k: usize) -> Result<Construction> {
    let m = g.order();
    if k == 0 || m == 0 {
        return Err(Error::Precondition(format!("need k >= 1 and m >= 1, got k = {k}, m = {m}")));
    }
    if m > Letter::MAX as usize + 1 {
        return Err(Error::Precondition(format!("{m} vertices exceed the supported alphabet")));
    }
    let comm = Commutation::of_graph(g);

    let mut groups: BTreeMap<(usize, MultiDegree), Vec<Vec<Letter>>> = BTreeMap::new();
    for w in lyndon_words(m, k) {
        groups.entry((w.len(), MultiDegree::of_word(&w, m))).or_default().push(w);
    }

    let mut degrees: Vec<Vec<(BasisElement, usize)>> = vec![Vec::new(); k];
    let mut blocks: HashMap<MultiDegree, Block> = HashMap::new();
    for ((deg, md), words) in groups {
        let candidates: Vec<(Vec<Letter>, BracketWord, TracePoly)> = words
            .into_iter()
            .map(|w| {
                let b = BracketWord::from_lyndon(&w)?;
                let e = expand(&b, &comm, k)?;
                Ok((w, b, e))
            })
            .collect::<Result<_>>()?;
        let mut columns: HashMap<TraceWord, usize> = HashMap::new();
        for (_, _, e) in &candidates {
            for w in e.keys() {
                let next = columns.len();
                columns.entry(w.clone()).or_insert(next);
            }
        }
        let mut block = Block { echelon: Echelon::tracking(columns.len()), columns, members: Vec::new() };
        let mut selected = 0;
        for (word, bracket, expansion) in candidates {
            let v = block.coordinates(&expansion).expect("columns cover every candidate");
            if block.echelon.insert(&v, selected) {
                let element = BasisElement { word, bracket, multidegree: md.clone(), expansion };
                degrees[deg - 1].push((element, selected));
                selected += 1;
            }
        }
        if selected > 0 {
            block.members = vec![usize::MAX; selected];
            blocks.insert(md, block);
        }
    }

    let mut offset = 0;
    let mut sorted_degrees = Vec::with_capacity(k);
    for mut elems in degrees {
        elems.sort_by(|a, b| a.0.word.cmp(&b.0.word));
        for (pos, (e, slot)) in elems.iter().enumerate() {
            blocks.get_mut(&e.multidegree).expect("block of a selected element").members[*slot] =
                offset + pos;
        }
        offset += elems.len();
        sorted_degrees.push(elems.into_iter().map(|(e, _)| e).collect::<Vec<_>>());
    }
    let basis = GradedBasis { m, k, degrees: sorted_degrees };

    let oracle = dimension_oracle(g, k)?;
    if basis.dims() != oracle {
        return Err(Error::Invariant(format!(
            "constructed graded dimensions {:?} disagree with the clique-polynomial count {:?}",
            basis.dims(),
            oracle
        )));
    }
    Ok(Construction { comm, basis, blocks })
}

/// Lyndon-labelled graded basis of `g(k, G)`, validated against the
/// independent dimension count.
pub fn graded_basis(g: &SimpleGraph, k: usize) -> Result<GradedBasis> {
    Ok(construct(g, k)?.basis)
}

/// Structure constants of `g(k, G)` over its graded basis.
pub fn structure_constants(g: &SimpleGraph, k: usize) -> Result<GradedLieAlgebra> {
    Ok(graph_algebra(g, k)?.1)
}

/// Basis together with the algebra. Each bracket of basis elements is expanded
/// in the trace algebra and solved inside its multidegree block only.
pub fn graph_algebra(g: &SimpleGraph, k: usize) -> Result<(GradedBasis, GradedLieAlgebra)> {
    let Construction { comm, basis, blocks } = construct(g, k)?;
    let elements: Vec<&BasisElement> = basis.elements().collect();
    let n = elements.len();
    let mut map = AlternatingMap::new(n);
    for a in 0..n {
        for b in a + 1..n {
            let (ea, eb) = (elements[a], elements[b]);
            if ea.degree() + eb.degree() > k {
                continue;
            }
            let product = comm.commutator(&ea.expansion, &eb.expansion, k);
            if product.is_empty() {
                continue;
            }
            let md = &ea.multidegree + &eb.multidegree;
            let not_in_span = || {
                Error::Invariant(format!(
                    "[{}, {}] is not in the span of the multidegree {md:?} block",
                    ea.bracket, eb.bracket
                ))
            };
            let block = blocks.get(&md).ok_or_else(not_in_span)?;
            let target = block.coordinates(&product).ok_or_else(not_in_span)?;
            let coeffs = block.echelon.solve(&target).ok_or_else(not_in_span)?;
            map.set(a, b, coeffs.reindex(|p| block.members[p]));
        }
    }
    let labels = elements
        .iter()
        .map(|e| BasisLabel {
            label: e.bracket.to_string(),
            degree: e.degree(),
            multidegree: Some(e.multidegree.clone()),
        })
        .collect();
    let algebra = GradedLieAlgebra::new(LieAlgebra::from_map(map), k, basis.dims(), labels)?;
    Ok((basis, algebra))
}
