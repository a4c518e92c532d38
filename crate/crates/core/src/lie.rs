//! Finite-dimensional Lie algebras given by structure constants.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::basis::MultiDegree;
use crate::error::{ensure_len, Error, Result};
use crate::linalg::{kernel_basis, Echelon, RatMatrix, Rational, SparseVec, Subspace};

/// Bilinear alternating map `V x V -> V` on a basis of size `n`, stored as
/// its values on basis pairs `i < j`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlternatingMap {
    n: usize,
    values: BTreeMap<(usize, usize), SparseVec>,
}

impl AlternatingMap {
    pub fn new(n: usize) -> Self {
        AlternatingMap { n, values: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Sets the value on `(e_i, e_j)`; the value on `(e_j, e_i)` follows by
    /// antisymmetry.
    pub fn set(&mut self, i: usize, j: usize, value: SparseVec) {
        assert!(i < self.n && j < self.n, "basis index out of range");
        assert!(value.support_end() <= self.n, "value outside the ambient space");
        if i == j {
            assert!(value.is_zero(), "alternating map must vanish on the diagonal");
            return;
        }
        let (key, value) = if i < j { ((i, j), value) } else { ((j, i), value.neg()) };
        if value.is_zero() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, value);
        }
    }

    /// Value on `(e_i, e_j)` for `i < j`, if nonzero.
    pub fn stored(&self, i: usize, j: usize) -> Option<&SparseVec> {
        self.values.get(&(i, j))
    }

    /// Value on `(e_i, e_j)` for arbitrary `i, j`.
    pub fn get(&self, i: usize, j: usize) -> SparseVec {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.values.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self.values.get(&(j, i)).map(SparseVec::neg).unwrap_or_default(),
            std::cmp::Ordering::Equal => SparseVec::new(),
        }
    }

    /// Accumulates `c * f(e_i, e_j)` into `acc`.
    fn accumulate(&self, acc: &mut BTreeMap<usize, Rational>, c: &Rational, i: usize, j: usize) {
        let (key, sign) = match i.cmp(&j) {
            std::cmp::Ordering::Less => ((i, j), false),
            std::cmp::Ordering::Greater => ((j, i), true),
            std::cmp::Ordering::Equal => return,
        };
        if let Some(v) = self.values.get(&key) {
            for (l, x) in v.iter() {
                let term = c * x;
                let entry = acc.entry(l).or_default();
                if sign {
                    *entry -= &term;
                } else {
                    *entry += &term;
                }
            }
        }
    }

    /// Bilinear extension to sparse vectors.
    pub fn eval(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (i, xi) in x.iter() {
            for (j, yj) in y.iter() {
                self.accumulate(&mut acc, &(xi * yj), i, j);
            }
        }
        SparseVec::from_pairs(acc)
    }

    /// `f(e_i, y)`.
    pub fn eval_left(&self, i: usize, y: &SparseVec) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (j, yj) in y.iter() {
            self.accumulate(&mut acc, yj, i, j);
        }
        SparseVec::from_pairs(acc)
    }

    /// Nonzero values, keyed by `(i, j)` with `i < j`, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &SparseVec)> + '_ {
        self.values.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// `self + t * other`.
    pub fn add_scaled(&self, other: &AlternatingMap, t: &Rational) -> Result<AlternatingMap> {
        ensure_len(self.n, other.n)?;
        let mut out = self.clone();
        for (&(i, j), v) in &other.values {
            let sum = out.get(i, j).axpy(t, v);
            out.set(i, j, sum);
        }
        Ok(out)
    }
}

/// Lie algebra over the rationals, `[e_i, e_j] = sum_l c_ij^l e_l`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LieAlgebra {
    bracket: AlternatingMap,
}

impl LieAlgebra {
    /// Wraps structure constants without checking the Jacobi identity; see
    /// [`LieAlgebra::jacobi_report`].
    pub fn from_map(bracket: AlternatingMap) -> Self {
        LieAlgebra { bracket }
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra { bracket: AlternatingMap::new(n) }
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn structure(&self) -> &AlternatingMap {
        &self.bracket
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_zero()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        self.bracket.get(i, j)
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.bracket.eval(x, y)
    }

    /// Bracket of dense coordinate vectors.
    pub fn bracket_vectors(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        ensure_len(self.dim(), x.len())?;
        ensure_len(self.dim(), y.len())?;
        Ok(self.bracket(&SparseVec::from_dense(x), &SparseVec::from_dense(y)).to_dense(self.dim()))
    }

    /// Span of `[s, t]` over bases of `s` and `t`.
    pub fn bracket_subspaces(&self, s: &Subspace, t: &Subspace) -> Result<Subspace> {
        ensure_len(self.dim(), s.ambient_dim())?;
        ensure_len(self.dim(), t.ambient_dim())?;
        let mut ech = Echelon::new(self.dim());
        for a in s.basis() {
            for b in t.basis() {
                let v = self.bracket(a, b);
                if !v.is_zero() {
                    ech.insert(&v, 0);
                }
            }
        }
        Subspace::span(self.dim(), ech.rows())
    }

    /// `g^0 = g, g^{i+1} = [g, g^i]`, listed until it reaches zero (included)
    /// or stops decreasing.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let n = self.dim();
        let full = Subspace::full(n);
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().expect("series is never empty");
            if last.is_zero() {
                break;
            }
            let next = self.bracket_subspaces(&full, last).expect("dimensions agree");
            if next.dim() == last.dim() {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Dimensions of the lower central series.
    pub fn lower_central_dims(&self) -> Vec<usize> {
        self.lower_central_series().iter().map(Subspace::dim).collect()
    }

    /// Smallest `s` with `g^s = 0`, or `None` if the algebra is not nilpotent.
    pub fn nilpotency_step(&self) -> Option<usize> {
        let series = self.lower_central_series();
        series.last().is_some_and(Subspace::is_zero).then(|| series.len() - 1)
    }

    /// Whether `[[g, g], g] = 0`.
    pub fn is_at_most_two_step(&self) -> bool {
        self.nilpotency_step().is_some_and(|s| s <= 2)
    }

    /// Kernel of the stacked adjoint maps: row `y * n + l` holds the
    /// coefficient of `e_l` in `[e_x, e_y]` at column `x`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let mut rows: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for ((i, j), v) in self.bracket.iter() {
            for (l, c) in v.iter() {
                rows.entry(j * n + l).or_default().push((i, c.clone()));
                rows.entry(i * n + l).or_default().push((j, -c));
            }
        }
        let m = RatMatrix::from_rows(n, rows.into_values().map(SparseVec::from_pairs).collect());
        kernel_basis(&m)
    }

    /// Basis triples `i < j < l` on which the Jacobi identity fails.
    pub fn jacobi_report(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    let a = self.bracket.stored(j, l);
                    let b = self.bracket.stored(i, l);
                    let c = self.bracket.stored(i, j);
                    if a.is_none() && b.is_none() && c.is_none() {
                        continue;
                    }
                    // [e_i,[e_j,e_l]] - [e_j,[e_i,e_l]] + [e_l,[e_i,e_j]]
                    let mut sum = SparseVec::new();
                    if let Some(a) = a {
                        sum = sum.add(&self.bracket.eval_left(i, a));
                    }
                    if let Some(b) = b {
                        sum = sum.sub(&self.bracket.eval_left(j, b));
                    }
                    if let Some(c) = c {
                        sum = sum.add(&self.bracket.eval_left(l, c));
                    }
                    if !sum.is_zero() {
                        bad.push((i, j, l));
                    }
                }
            }
        }
        bad
    }

    /// Associated graded algebra `gr(g) = sum_i g^i / g^{i+1}` over a basis
    /// adapted to the lower central series.
    pub fn associated_graded(&self) -> Result<GradedLieAlgebra> {
        self.associated_graded_with(|_, v| format!("x{}", v + 1), |_| None)
    }

    fn associated_graded_with(
        &self,
        unit_label: impl Fn(usize, usize) -> String,
        unit_multidegree: impl Fn(usize) -> Option<MultiDegree>,
    ) -> Result<GradedLieAlgebra> {
        let n = self.dim();
        let series = self.lower_central_series();
        if !series.last().is_some_and(Subspace::is_zero) {
            return Err(Error::Precondition("associated graded needs a nilpotent algebra".into()));
        }
        let steps = series.len() - 1;
        // Extend a basis of g^{i+1} to g^i, deepest layer first, preferring
        // original basis vectors in index order.
        let mut ech = Echelon::tracking(n);
        let mut layers: Vec<Vec<SparseVec>> = vec![Vec::new(); steps];
        let mut inserted: Vec<(usize, usize)> = Vec::new();
        for layer in (0..steps).rev() {
            let target = series[layer].dim();
            let candidates = (0..n)
                .map(SparseVec::unit)
                .filter(|u| series[layer].contains_sparse(u).unwrap_or(false))
                .chain(series[layer].basis().cloned());
            for c in candidates {
                if ech.rank() == target {
                    break;
                }
                if ech.insert(&c, inserted.len()) {
                    inserted.push((layer, layers[layer].len()));
                    layers[layer].push(c);
                }
            }
            if ech.rank() != target {
                return Err(Error::Invariant("adapted basis construction failed".into()));
            }
        }
        let offsets: Vec<usize> = layers
            .iter()
            .scan(0, |acc, l| {
                let o = *acc;
                *acc += l.len();
                Some(o)
            })
            .collect();
        let new_index = |source: usize| {
            let (layer, pos) = inserted[source];
            offsets[layer] + pos
        };
        let reps: Vec<(usize, &SparseVec)> =
            layers.iter().enumerate().flat_map(|(d, l)| l.iter().map(move |v| (d, v))).collect();

        let mut map = AlternatingMap::new(n);
        for (p, (dp, vp)) in reps.iter().enumerate() {
            for (q, (dq, vq)) in reps.iter().enumerate().skip(p + 1) {
                let target = dp + dq + 1;
                let coeffs = ech
                    .solve(&self.bracket(vp, vq))
                    .ok_or_else(|| Error::Invariant("bracket outside the algebra".into()))?;
                let mut kept = Vec::new();
                for (s, c) in coeffs.iter() {
                    let (layer, _) = inserted[s];
                    if layer < target {
                        return Err(Error::Invariant(
                            "bracket of adapted basis vectors left the lower central series".into(),
                        ));
                    }
                    if layer == target {
                        kept.push((new_index(s), c.clone()));
                    }
                }
                map.set(p, q, SparseVec::from_pairs(kept));
            }
        }
        let grading: Vec<usize> = layers.iter().map(Vec::len).collect();
        let labels = reps
            .iter()
            .enumerate()
            .map(|(p, (d, v))| {
                let unit = (v.nnz() == 1 && v.first().is_some_and(|(_, c)| c.is_one()))
                    .then(|| v.first().map(|(i, _)| i))
                    .flatten();
                BasisLabel {
                    label: unit.map_or_else(|| format!("w{}", p + 1), |i| unit_label(p, i)),
                    degree: d + 1,
                    multidegree: unit.and_then(&unit_multidegree),
                }
            })
            .collect();
        GradedLieAlgebra::new(LieAlgebra::from_map(map), steps, grading, labels)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = AlgebraDoc { n: self.dim(), k: None, grading: None, basis: None, brackets: brackets_doc(&self.bracket) };
        serde_json::to_value(doc).expect("algebra serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let doc: AlgebraDoc = serde_json::from_value(value.clone())?;
        doc.algebra()
    }
}

/// Per-basis-element label of a graded algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisLabel {
    pub label: String,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multidegree: Option<MultiDegree>,
}

/// Lie algebra with a basis split into degrees `1..=k`; basis vectors of
/// degree `d` occupy one contiguous block of size `grading[d - 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedLieAlgebra {
    algebra: LieAlgebra,
    k: usize,
    grading: Vec<usize>,
    labels: Vec<BasisLabel>,
}

impl GradedLieAlgebra {
    pub fn new(algebra: LieAlgebra, k: usize, grading: Vec<usize>, labels: Vec<BasisLabel>) -> Result<Self> {
        if grading.len() != k {
            return Err(Error::Parse(format!("grading has {} entries, expected k = {k}", grading.len())));
        }
        ensure_len(algebra.dim(), grading.iter().sum())?;
        ensure_len(algebra.dim(), labels.len())?;
        let degrees = grading.iter().enumerate().flat_map(|(d, &c)| std::iter::repeat(d + 1).take(c));
        for (label, d) in labels.iter().zip(degrees) {
            if label.degree != d {
                return Err(Error::Parse(format!(
                    "basis element {} has degree {}, but its position lies in degree {d}",
                    label.label, label.degree
                )));
            }
        }
        Ok(GradedLieAlgebra { algebra, k, grading, labels })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> LieAlgebra {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn grading(&self) -> &[usize] {
        &self.grading
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn degree_of(&self, index: usize) -> usize {
        self.labels[index].degree
    }

    /// Basis indices of degree `d`.
    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        let start: usize = self.grading[..d - 1].iter().sum();
        start..start + self.grading[d - 1]
    }

    pub fn degree_subspace(&self, d: usize) -> Subspace {
        Subspace::coordinate(self.dim(), self.degree_range(d)).expect("range inside the algebra")
    }

    /// Span of all basis vectors of degree at least `d`.
    pub fn degree_at_least(&self, d: usize) -> Subspace {
        let start: usize = self.grading[..(d - 1).min(self.k)].iter().sum();
        Subspace::coordinate(self.dim(), start..self.dim()).expect("range inside the algebra")
    }

    /// Whether every nonzero `c_ij^l` respects degree additivity and, when
    /// multidegrees are known, multidegree additivity.
    pub fn grading_support_check(&self) -> Result<bool> {
        for ((i, j), v) in self.algebra.structure().iter() {
            let mdij = match (&self.labels[i].multidegree, &self.labels[j].multidegree) {
                (Some(a), Some(b)) if a.len() == b.len() => Some(a + b),
                (Some(_), Some(_)) => return Err(Error::Precondition("multidegree lengths differ".into())),
                _ => None,
            };
            for l in v.indices() {
                if self.labels[l].degree != self.labels[i].degree + self.labels[j].degree {
                    return Ok(false);
                }
                if let Some(md) = &mdij {
                    match &self.labels[l].multidegree {
                        Some(ml) if ml == md => {}
                        Some(_) => return Ok(false),
                        None => return Err(Error::Precondition(format!("basis element {l} has no multidegree"))),
                    }
                }
            }
        }
        Ok(true)
    }

    /// Associated graded algebra; labels of basis vectors that survive as
    /// original basis vectors are carried over.
    pub fn associated_graded(&self) -> Result<GradedLieAlgebra> {
        self.algebra
            .associated_graded_with(|_, i| self.labels[i].label.clone(), |i| self.labels[i].multidegree.clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = AlgebraDoc {
            n: self.dim(),
            k: Some(self.k),
            grading: Some(self.grading.clone()),
            basis: Some(self.labels.clone()),
            brackets: brackets_doc(self.algebra.structure()),
        };
        serde_json::to_value(doc).expect("algebra serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let doc: AlgebraDoc = serde_json::from_value(value.clone())?;
        let algebra = doc.algebra()?;
        match (doc.k, doc.grading, doc.basis) {
            (Some(k), Some(grading), Some(basis)) => GradedLieAlgebra::new(algebra, k, grading, basis),
            _ => Err(Error::Parse("graded algebra needs k, grading and basis".into())),
        }
    }
}

/// Reads an algebra file, graded or not.
pub fn read_algebra(path: &Path) -> Result<LieAlgebra> {
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    LieAlgebra::from_json(&value)
}

pub fn read_graded_algebra(path: &Path) -> Result<GradedLieAlgebra> {
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    GradedLieAlgebra::from_json(&value)
}

pub fn bracket_vectors(a: &LieAlgebra, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
    a.bracket_vectors(x, y)
}

pub fn bracket_subspaces(a: &LieAlgebra, s: &Subspace, t: &Subspace) -> Result<Subspace> {
    a.bracket_subspaces(s, t)
}

pub fn lower_central_series(a: &LieAlgebra) -> Vec<Subspace> {
    a.lower_central_series()
}

pub fn center(a: &LieAlgebra) -> Subspace {
    a.center()
}

pub fn associated_graded(a: &LieAlgebra) -> Result<GradedLieAlgebra> {
    a.associated_graded()
}

pub fn jacobi_report(a: &LieAlgebra) -> Vec<(usize, usize, usize)> {
    a.jacobi_report()
}

pub fn grading_support_check(a: &GradedLieAlgebra) -> Result<bool> {
    a.grading_support_check()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grading: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<BasisLabel>>,
    brackets: Vec<BracketDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketDoc {
    i: usize,
    j: usize,
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    l: usize,
    c: Rational,
}

fn brackets_doc(map: &AlternatingMap) -> Vec<BracketDoc> {
    map.iter()
        .map(|((i, j), v)| BracketDoc {
            i,
            j,
            terms: v.iter().map(|(l, c)| TermDoc { l, c: c.clone() }).collect(),
        })
        .collect()
}

impl AlgebraDoc {
    fn algebra(&self) -> Result<LieAlgebra> {
        let mut map = AlternatingMap::new(self.n);
        for b in &self.brackets {
            if b.i >= b.j || b.j >= self.n {
                return Err(Error::Parse(format!("bracket entry ({}, {}) needs i < j < n", b.i, b.j)));
            }
            if map.stored(b.i, b.j).is_some() {
                return Err(Error::Parse(format!("bracket entry ({}, {}) repeated", b.i, b.j)));
            }
            if let Some(t) = b.terms.iter().find(|t| t.l >= self.n) {
                return Err(Error::Parse(format!("term index {} out of range", t.l)));
            }
            let mut seen = std::collections::BTreeSet::new();
            if !b.terms.iter().all(|t| seen.insert(t.l)) {
                return Err(Error::Parse(format!("bracket entry ({}, {}) repeats a term", b.i, b.j)));
            }
            map.set(b.i, b.j, SparseVec::from_pairs(b.terms.iter().map(|t| (t.l, t.c.clone()))));
        }
        Ok(LieAlgebra::from_map(map))
    }
}
