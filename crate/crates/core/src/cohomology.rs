//! The 2-step nil-cohomology `H^2_{2-nil}(mu, mu) = (ker d2 ∩ ker eta2) / im d1`.
//!
//! Cochains are written in fixed coordinates (see [`CochainCoordinates`]).
//! Images of basis cochains are computed one column at a time, touching only
//! the basis tuples where the column can be nonzero. When basis vectors carry
//! additive weights (degrees or multidegrees), all three maps preserve the
//! weight of a cochain, so ranks are computed block by block.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{GradedLieAlgebra, LieAlgebra};
use crate::linalg::{Echelon, RatMatrix, Rational, SparseVec};

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn binom3(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Coordinates on the cochain spaces of an `n`-dimensional algebra.
///
/// - `Hom(V, V)`: `f_{ab}` at `a * n + b`, where `f(e_a) = sum_b f_{ab} e_b`.
/// - `Hom(Λ²V, V)`: `sigma_{(a<b),c}` at `pair(a, b) * n + c`.
/// - alternating trilinear maps: `(x<y<z, c)` at `triple(x, y, z) * n + c`.
/// - maps alternating in the first two arguments: `(x<y, z, c)` at
///   `(pair(x, y) * n + z) * n + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CochainCoordinates {
    pub n: usize,
}

impl CochainCoordinates {
    pub fn new(n: usize) -> Self {
        CochainCoordinates { n }
    }

    pub fn pair(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < b && b < self.n);
        a * (2 * self.n - a - 1) / 2 + (b - a - 1)
    }

    pub fn triple(&self, x: usize, y: usize, z: usize) -> usize {
        debug_assert!(x < y && y < z && z < self.n);
        let before = binom3(self.n) - binom3(self.n - x);
        let rest = CochainCoordinates::new(self.n - x - 1);
        before + rest.pair(y - x - 1, z - x - 1)
    }

    pub fn hom_dim(&self) -> usize {
        self.n * self.n
    }

    pub fn two_cochain_dim(&self) -> usize {
        binom2(self.n) * self.n
    }

    pub fn three_cochain_dim(&self) -> usize {
        binom3(self.n) * self.n
    }

    pub fn eta2_target_dim(&self) -> usize {
        binom2(self.n) * self.n * self.n
    }

    pub fn f_index(&self, a: usize, b: usize) -> usize {
        a * self.n + b
    }

    pub fn sigma_index(&self, a: usize, b: usize, c: usize) -> usize {
        self.pair(a, b) * self.n + c
    }

    /// Inverse of [`CochainCoordinates::sigma_index`].
    pub fn sigma_key(&self, index: usize) -> (usize, usize, usize) {
        let (p, c) = (index / self.n, index % self.n);
        let mut a = 0;
        let mut start = 0;
        while start + (self.n - a - 1) <= p {
            start += self.n - a - 1;
            a += 1;
        }
        (a, a + 1 + (p - start), c)
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| (a + 1..self.n).map(move |b| (a, b)))
    }
}

/// Dimensions entering `H^2_{2-nil}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H2NilReport {
    pub dim_ker_eta2: usize,
    pub dim_ker_delta2: usize,
    pub dim_intersection: usize,
    pub dim_im_delta1: usize,
    pub h2_dim: usize,
    /// Whether `ker eta2 ⊆ ker d2`, i.e. the intersection is all of `ker eta2`.
    pub eta2_subset_delta2: bool,
}

/// Column-wise evaluation of the coboundary maps on one algebra.
struct Complex<'a> {
    mu: &'a LieAlgebra,
    coords: CochainCoordinates,
    /// `support[l]`: basis pairs `(p < q)` with a nonzero `e_l` coefficient in `[e_p, e_q]`.
    support: Vec<Vec<(usize, usize)>>,
}

impl<'a> Complex<'a> {
    fn new(mu: &'a LieAlgebra) -> Self {
        let n = mu.dim();
        let mut support = vec![Vec::new(); n];
        for ((p, q), v) in mu.structure().iter() {
            for l in v.indices() {
                support[l].push((p, q));
            }
        }
        Complex { mu, coords: CochainCoordinates::new(n), support }
    }

    fn bracket(&self, x: usize, v: &SparseVec) -> SparseVec {
        self.mu.structure().eval_left(x, v)
    }

    /// Value of the basis 2-cochain `(a<b) -> e_c` on `(u, v)`.
    fn sigma_basis(a: usize, b: usize, c: usize, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let zero = Rational::zero();
        let coeff = u.get(a).unwrap_or(&zero) * v.get(b).unwrap_or(&zero)
            - u.get(b).unwrap_or(&zero) * v.get(a).unwrap_or(&zero);
        if coeff.is_zero() {
            SparseVec::new()
        } else {
            SparseVec::from_pairs([(c, coeff)])
        }
    }

    fn delta1_column(&self, a: usize, b: usize) -> SparseVec {
        let n = self.coords.n;
        let f = |u: &SparseVec| match u.get(a) {
            Some(c) => SparseVec::from_pairs([(b, c.clone())]),
            None => SparseVec::new(),
        };
        let mut tuples: Vec<(usize, usize)> = (0..n).filter(|&t| t != a).map(|t| (a.min(t), a.max(t))).collect();
        tuples.extend(self.support[a].iter().copied());
        tuples.sort_unstable();
        tuples.dedup();
        let mut out = Vec::new();
        for (x, y) in tuples {
            let (ex, ey) = (SparseVec::unit(x), SparseVec::unit(y));
            // [f x, y] + [x, f y] - f [x, y]
            let value = self
                .mu
                .bracket(&f(&ex), &ey)
                .add(&self.bracket(x, &f(&ey)))
                .sub(&f(&self.mu.bracket_basis(x, y)));
            let row = self.coords.pair(x, y) * n;
            out.extend(value.iter().map(|(c, v)| (row + c, v.clone())));
        }
        SparseVec::from_pairs(out)
    }

    /// Triples `x<y<z` on which the basis 2-cochain `(a<b) -> e_c` can have a
    /// nonzero coboundary.
    fn delta2_tuples(&self, a: usize, b: usize) -> Vec<(usize, usize, usize)> {
        let n = self.coords.n;
        let mut out = Vec::new();
        let mut push = |mut t: [usize; 3]| {
            t.sort_unstable();
            if t[0] < t[1] && t[1] < t[2] {
                out.push((t[0], t[1], t[2]));
            }
        };
        for t in 0..n {
            push([t, a, b]);
        }
        for &(p, q) in &self.support[a] {
            push([p, q, b]);
        }
        for &(p, q) in &self.support[b] {
            push([p, q, a]);
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn delta2_column(&self, a: usize, b: usize, c: usize) -> SparseVec {
        let n = self.coords.n;
        let s = |u: &SparseVec, v: &SparseVec| Self::sigma_basis(a, b, c, u, v);
        let mut out = Vec::new();
        for (x, y, z) in self.delta2_tuples(a, b) {
            let (ex, ey, ez) = (SparseVec::unit(x), SparseVec::unit(y), SparseVec::unit(z));
            // [x,s(y,z)] - [y,s(x,z)] + [z,s(x,y)] - s([x,y],z) + s([x,z],y) - s([y,z],x)
            let value = self
                .bracket(x, &s(&ey, &ez))
                .sub(&self.bracket(y, &s(&ex, &ez)))
                .add(&self.bracket(z, &s(&ex, &ey)))
                .sub(&s(&self.mu.bracket_basis(x, y), &ez))
                .add(&s(&self.mu.bracket_basis(x, z), &ey))
                .sub(&s(&self.mu.bracket_basis(y, z), &ex));
            let row = self.coords.triple(x, y, z) * n;
            out.extend(value.iter().map(|(l, v)| (row + l, v.clone())));
        }
        SparseVec::from_pairs(out)
    }

    fn eta2_column(&self, a: usize, b: usize, c: usize) -> SparseVec {
        let n = self.coords.n;
        let s = |u: &SparseVec, v: &SparseVec| Self::sigma_basis(a, b, c, u, v);
        let mut tuples: Vec<(usize, usize, usize)> = (0..n).map(|z| (a, b, z)).collect();
        tuples.extend(self.support[a].iter().map(|&(p, q)| (p, q, b)));
        tuples.extend(self.support[b].iter().map(|&(p, q)| (p, q, a)));
        tuples.sort_unstable();
        tuples.dedup();
        let mut out = Vec::new();
        for (x, y, z) in tuples {
            let (ex, ey, ez) = (SparseVec::unit(x), SparseVec::unit(y), SparseVec::unit(z));
            // mu(s(x,y),z) + s(mu(x,y),z)
            let value = self.mu.bracket(&s(&ex, &ey), &ez).add(&s(&self.mu.bracket_basis(x, y), &ez));
            let row = (self.coords.pair(x, y) * n + z) * n;
            out.extend(value.iter().map(|(l, v)| (row + l, v.clone())));
        }
        SparseVec::from_pairs(out)
    }

    /// Applies a map given by its basis-column images to a sparse vector.
    fn apply(columns: &BTreeMap<usize, SparseVec>, v: &SparseVec) -> Result<SparseVec> {
        let mut acc = SparseVec::new();
        for (i, c) in v.iter() {
            let col = columns
                .get(&i)
                .ok_or_else(|| Error::Invariant(format!("coboundary left its weight block at column {i}")))?;
            acc = acc.axpy(c, col);
        }
        Ok(acc)
    }
}

fn require_two_step(a: &LieAlgebra) -> Result<()> {
    if a.is_at_most_two_step() {
        Ok(())
    } else {
        Err(Error::Precondition("eta2 is defined for algebras that are at most 2-step nilpotent".into()))
    }
}

/// Matrix of `d1: Hom(V,V) -> Hom(Λ²V,V)`, `d1 f(x,y) = [fx,y] + [x,fy] - f[x,y]`.
pub fn delta1_matrix(a: &LieAlgebra) -> RatMatrix {
    let cx = Complex::new(a);
    let n = a.dim();
    let cols: Vec<SparseVec> =
        (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).map(|(p, q)| cx.delta1_column(p, q)).collect();
    RatMatrix::from_columns(cx.coords.two_cochain_dim(), &cols)
}

/// Matrix of `d2: Hom(Λ²V,V) -> Hom(Λ³V,V)` with
/// `d2 s(x,y,z) = [x,s(y,z)] - [y,s(x,z)] + [z,s(x,y)] - s([x,y],z) + s([x,z],y) - s([y,z],x)`.
pub fn delta2_matrix(a: &LieAlgebra) -> RatMatrix {
    let cx = Complex::new(a);
    let n = a.dim();
    let cols: Vec<SparseVec> = cx
        .coords
        .pairs()
        .flat_map(|(p, q)| (0..n).map(move |c| (p, q, c)))
        .map(|(p, q, c)| cx.delta2_column(p, q, c))
        .collect();
    RatMatrix::from_columns(cx.coords.three_cochain_dim(), &cols)
}

/// Matrix of `eta2(s)(x,y,z) = mu(s(x,y),z) + s(mu(x,y),z)`, rows `(x<y, z)`.
pub fn eta2_matrix(a: &LieAlgebra) -> Result<RatMatrix> {
    require_two_step(a)?;
    let cx = Complex::new(a);
    let n = a.dim();
    let cols: Vec<SparseVec> = cx
        .coords
        .pairs()
        .flat_map(|(p, q)| (0..n).map(move |c| (p, q, c)))
        .map(|(p, q, c)| cx.eta2_column(p, q, c))
        .collect();
    Ok(RatMatrix::from_columns(cx.coords.eta2_target_dim(), &cols))
}

/// `H^2_{2-nil}` with all cochains in a single block.
pub fn h2_nil(a: &LieAlgebra) -> Result<H2NilReport> {
    h2_nil_weighted(a, &vec![Vec::new(); a.dim()])
}

/// `H^2_{2-nil}` of a graded algebra, split into multidegree blocks when
/// multidegrees are known and degree blocks otherwise.
pub fn h2_nil_graded(a: &GradedLieAlgebra) -> Result<H2NilReport> {
    let weights: Vec<Vec<i64>> = a
        .labels()
        .iter()
        .map(|l| match &l.multidegree {
            Some(md) => md.0.iter().map(|&x| x as i64).collect(),
            None => vec![l.degree as i64],
        })
        .collect();
    let uniform = weights.iter().all(|w| w.len() == weights[0].len());
    if uniform {
        h2_nil_weighted(a.algebra(), &weights)
    } else {
        let degrees: Vec<Vec<i64>> = a.labels().iter().map(|l| vec![l.degree as i64]).collect();
        h2_nil_weighted(a.algebra(), &degrees)
    }
}

/// `H^2_{2-nil}` using additive basis weights: `[e_i, e_j]` must only involve
/// `e_l` with `w(l) = w(i) + w(j)`.
pub fn h2_nil_weighted(a: &LieAlgebra, weights: &[Vec<i64>]) -> Result<H2NilReport> {
    require_two_step(a)?;
    let n = a.dim();
    if weights.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: weights.len() });
    }
    let add = |x: &[i64], y: &[i64]| -> Vec<i64> { x.iter().zip(y).map(|(p, q)| p + q).collect() };
    let sub = |x: &[i64], y: &[i64]| -> Vec<i64> { x.iter().zip(y).map(|(p, q)| p - q).collect() };
    if weights.iter().any(|w| w.len() != weights.first().map_or(0, Vec::len)) {
        return Err(Error::Precondition("weights have different lengths".into()));
    }
    for ((i, j), v) in a.structure().iter() {
        if v.indices().any(|l| weights[l] != add(&weights[i], &weights[j])) {
            return Err(Error::Precondition("basis weights are not additive under the bracket".into()));
        }
    }

    let cx = Complex::new(a);
    let coords = cx.coords;
    let mut sigma_blocks: BTreeMap<Vec<i64>, Vec<(usize, usize, usize)>> = BTreeMap::new();
    for (p, q) in coords.pairs() {
        for c in 0..n {
            sigma_blocks.entry(sub(&weights[c], &add(&weights[p], &weights[q]))).or_default().push((p, q, c));
        }
    }
    let mut f_blocks: BTreeMap<Vec<i64>, Vec<(usize, usize)>> = BTreeMap::new();
    for p in 0..n {
        for q in 0..n {
            f_blocks.entry(sub(&weights[q], &weights[p])).or_default().push((p, q));
        }
    }

    let empty = Vec::new();
    let blocks: Vec<(&Vec<i64>, &Vec<(usize, usize, usize)>, &Vec<(usize, usize)>)> = sigma_blocks
        .iter()
        .map(|(w, s)| (w, s, f_blocks.get(w).unwrap_or(&empty)))
        .collect();
    let eta_offset = coords.three_cochain_dim();
    let per_block: Vec<Result<[usize; 5]>> = blocks
        .par_iter()
        .map(|(_, sigmas, fs)| {
            let mut d2_cols = BTreeMap::new();
            let mut e2_cols = BTreeMap::new();
            let mut d2 = Echelon::new(coords.three_cochain_dim());
            let mut e2 = Echelon::new(coords.eta2_target_dim());
            let mut both = Echelon::new(eta_offset + coords.eta2_target_dim());
            for &(p, q, c) in sigmas.iter() {
                let dc = cx.delta2_column(p, q, c);
                let ec = cx.eta2_column(p, q, c);
                let stacked = SparseVec::from_pairs(
                    dc.iter().map(|(i, x)| (i, x.clone())).chain(ec.iter().map(|(i, x)| (eta_offset + i, x.clone()))),
                );
                d2.insert(&dc, 0);
                e2.insert(&ec, 0);
                both.insert(&stacked, 0);
                let idx = coords.sigma_index(p, q, c);
                d2_cols.insert(idx, dc);
                e2_cols.insert(idx, ec);
            }
            let mut d1 = Echelon::new(coords.two_cochain_dim());
            for &(p, q) in fs.iter() {
                let col = cx.delta1_column(p, q);
                if col.is_zero() {
                    continue;
                }
                if !Complex::apply(&d2_cols, &col)?.is_zero() {
                    return Err(Error::Invariant("d2 ∘ d1 is not zero".into()));
                }
                if !Complex::apply(&e2_cols, &col)?.is_zero() {
                    return Err(Error::Invariant("im d1 is not contained in ker eta2".into()));
                }
                d1.insert(&col, 0);
            }
            let total = sigmas.len();
            Ok([total - e2.rank(), total - d2.rank(), total - both.rank(), d1.rank(), total])
        })
        .collect();
    let mut sums = [0usize; 5];
    for r in per_block {
        for (s, x) in sums.iter_mut().zip(r?) {
            *s += x;
        }
    }
    // f-blocks whose weight does not occur among 2-cochains map to zero.
    for (w, fs) in &f_blocks {
        if !sigma_blocks.contains_key(w) && fs.iter().any(|&(p, q)| !cx.delta1_column(p, q).is_zero()) {
            return Err(Error::Invariant("d1 left its weight block".into()));
        }
    }
    let [dim_ker_eta2, dim_ker_delta2, dim_intersection, dim_im_delta1, _] = sums;
    Ok(H2NilReport {
        dim_ker_eta2,
        dim_ker_delta2,
        dim_intersection,
        dim_im_delta1,
        h2_dim: dim_intersection - dim_im_delta1,
        eta2_subset_delta2: dim_intersection == dim_ker_eta2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::AlternatingMap;
    use crate::linalg::rank;

    fn heisenberg() -> LieAlgebra {
        let mut m = AlternatingMap::new(3);
        m.set(0, 1, SparseVec::unit(2));
        LieAlgebra::from_map(m)
    }

    #[test]
    fn coordinate_indices_are_bijective() {
        let c = CochainCoordinates::new(6);
        let pairs: Vec<usize> = c.pairs().map(|(a, b)| c.pair(a, b)).collect();
        assert_eq!(pairs, (0..15).collect::<Vec<_>>());
        let mut t = Vec::new();
        for x in 0..6 {
            for y in x + 1..6 {
                for z in y + 1..6 {
                    t.push(c.triple(x, y, z));
                }
            }
        }
        assert_eq!(t, (0..20).collect::<Vec<_>>());
        for i in 0..c.two_cochain_dim() {
            let (a, b, cc) = c.sigma_key(i);
            assert_eq!(c.sigma_index(a, b, cc), i);
        }
    }

    #[test]
    fn abelian_a2() {
        let a = LieAlgebra::abelian(2);
        assert!(delta1_matrix(&a).is_zero());
        assert!(delta2_matrix(&a).is_zero());
        assert!(eta2_matrix(&a).unwrap().is_zero());
        let r = h2_nil(&a).unwrap();
        assert_eq!(r.h2_dim, 2);
        assert!(r.eta2_subset_delta2);
    }

    #[test]
    fn heisenberg_ranks() {
        let h = heisenberg();
        let d1 = delta1_matrix(&h);
        assert_eq!(rank(&d1), 3);
        assert!(delta2_matrix(&h).mul(&d1).unwrap().is_zero());
        assert!(eta2_matrix(&h).unwrap().mul(&d1).unwrap().is_zero());
    }

    #[test]
    fn delta1_of_identity_is_the_bracket() {
        let h = heisenberg();
        let c = CochainCoordinates::new(3);
        let id = SparseVec::from_pairs((0..3).map(|a| (c.f_index(a, a), Rational::one())));
        let image = delta1_matrix(&h).mul_vec(&id).unwrap();
        assert_eq!(image, SparseVec::unit(c.sigma_index(0, 1, 2)));
    }

    #[test]
    fn bracket_is_a_two_cocycle() {
        let h = heisenberg();
        let c = CochainCoordinates::new(3);
        let mu = SparseVec::unit(c.sigma_index(0, 1, 2));
        assert!(delta2_matrix(&h).mul_vec(&mu).unwrap().is_zero());
        assert!(eta2_matrix(&h).unwrap().mul_vec(&mu).unwrap().is_zero());
    }

    #[test]
    fn eta2_needs_two_step() {
        let mut m = AlternatingMap::new(4);
        m.set(0, 1, SparseVec::unit(2));
        m.set(0, 2, SparseVec::unit(3));
        let a = LieAlgebra::from_map(m);
        assert!(eta2_matrix(&a).is_err());
        assert!(h2_nil(&a).is_err());
        assert!(delta2_matrix(&a).mul(&delta1_matrix(&a)).unwrap().is_zero());
    }

    #[test]
    fn blockwise_agrees_with_dense_ranks() {
        let h = heisenberg();
        let d1 = delta1_matrix(&h);
        let d2 = delta2_matrix(&h);
        let e2 = eta2_matrix(&h).unwrap();
        let cols = d2.ncols();
        let stacked = RatMatrix::from_rows(cols, d2.rows().chain(e2.rows()).cloned().collect());
        let expected = H2NilReport {
            dim_ker_eta2: cols - rank(&e2),
            dim_ker_delta2: cols - rank(&d2),
            dim_intersection: cols - rank(&stacked),
            dim_im_delta1: rank(&d1),
            h2_dim: cols - rank(&stacked) - rank(&d1),
            eta2_subset_delta2: rank(&stacked) == rank(&e2),
        };
        assert_eq!(h2_nil(&h).unwrap(), expected);
        let weights = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        assert_eq!(h2_nil_weighted(&h, &weights).unwrap(), expected);
        assert!(h2_nil_weighted(&h, &[vec![1], vec![1], vec![1]]).is_err());
    }
}
