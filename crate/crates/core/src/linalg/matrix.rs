use std::fmt;

use super::{Echelon, Rational, SparseVec, Subspace};
use crate::error::{ensure_len, Result};

/// Sparse rational matrix stored row by row. Stored entries are nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        assert!(rows.iter().all(|r| r.support_end() <= cols), "row entry out of range");
        RatMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_dense(values: &[Vec<Rational>]) -> Self {
        let cols = values.first().map_or(0, Vec::len);
        assert!(values.iter().all(|r| r.len() == cols), "ragged matrix");
        RatMatrix::from_rows(cols, values.iter().map(|r| SparseVec::from_dense(r)).collect())
    }

    /// Convenience constructor for integer test fixtures.
    pub fn from_i64(values: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> =
            values.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect();
        RatMatrix::from_dense(&dense)
    }

    /// Assembles a matrix from its columns.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = RatMatrix::zeros(rows, columns.len());
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            assert!(col.support_end() <= rows, "column entry out of range");
            for (i, v) in col.iter() {
                buckets[i].push((j, v.clone()));
            }
        }
        m.data = buckets.into_iter().map(SparseVec::from_pairs).collect();
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.data.iter()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.data[i].get(j).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let old = self.data[i].get(j).cloned().unwrap_or_default();
        let delta = value - old;
        self.data[i] = self.data[i].axpy(&delta, &SparseVec::unit(j));
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_columns(self.cols, &self.data)
    }

    pub fn mul_vec(&self, x: &SparseVec) -> Result<SparseVec> {
        ensure_len(self.cols, self.cols.max(x.support_end()))?;
        Ok(SparseVec::from_pairs(
            self.data.iter().enumerate().map(|(i, r)| (i, r.dot(x))),
        ))
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        ensure_len(self.cols, other.rows)?;
        let data = self
            .data
            .iter()
            .map(|row| {
                row.iter().fold(SparseVec::new(), |acc, (k, a)| acc.axpy(a, &other.data[k]))
            })
            .collect();
        Ok(RatMatrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.data.iter().map(|r| r.to_dense(self.cols)).collect()
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of exact Gauss–Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; nonzero rows first, in pivot order.
    pub reduced: RatMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row-echelon form, rows taken in order and pivoting on the first
/// nonzero entry of each residual.
pub fn rref(m: &RatMatrix) -> Rref {
    let mut e = Echelon::new(m.cols);
    for r in &m.data {
        e.insert(r, 0);
    }
    let pivots: Vec<usize> = e.pivot_columns().collect();
    let mut data: Vec<SparseVec> = e.rows().cloned().collect();
    data.resize(m.rows.max(data.len()), SparseVec::new());
    Rref { reduced: RatMatrix { rows: data.len(), cols: m.cols, data }, rank: pivots.len(), pivots }
}

pub fn rank(m: &RatMatrix) -> usize {
    super::echelon::rank_of(m.cols, &m.data)
}

/// Basis of `{x : M x = 0}` as a subspace of `Q^cols`.
pub fn kernel_basis(m: &RatMatrix) -> Subspace {
    let mut e = Echelon::new(m.cols);
    for r in &m.data {
        e.insert(r, 0);
    }
    let pivot_rows: Vec<(usize, SparseVec)> =
        e.pivot_columns().zip(e.rows().cloned()).collect();
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; m.cols];
        for (p, _) in &pivot_rows {
            v[*p] = true;
        }
        v
    };
    let vectors: Vec<SparseVec> = (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut pairs = vec![(f, Rational::one())];
            for (p, row) in &pivot_rows {
                if let Some(x) = row.get(f) {
                    pairs.push((*p, -x));
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    Subspace::span(m.cols, &vectors).expect("kernel vectors lie in the column space")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn rref_identity() {
        let out = rref(&RatMatrix::identity(2));
        assert_eq!(out.reduced, RatMatrix::identity(2));
        assert_eq!(out.pivots, vec![0, 1]);
        assert_eq!(out.rank, 2);
    }

    #[test]
    fn rref_dependent_rows() {
        let out = rref(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(out.reduced, RatMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(out.rank, 1);
        assert_eq!(out.pivots, vec![0]);
    }

    #[test]
    fn rref_fractional_proportional_rows() {
        let m = RatMatrix::from_dense(&[vec![q(1, 2), q(1, 3)], vec![q(1, 4), q(1, 6)]]);
        assert_eq!(rref(&m).rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&RatMatrix::zeros(3, 3)).dim(), 3);
        assert_eq!(kernel_basis(&RatMatrix::identity(3)).dim(), 0);
        let k = kernel_basis(&RatMatrix::from_i64(&[&[1, 1, 0]]));
        assert_eq!(k.dim(), 2);
        let x = SparseVec::from_pairs([(0, q(1, 1)), (1, q(-1, 1))]);
        assert!(k.contains_sparse(&x).unwrap());
    }

    #[test]
    fn product_and_transpose() {
        let a = RatMatrix::from_i64(&[&[1, 2], &[0, 1]]);
        let b = RatMatrix::from_i64(&[&[1, 0], &[3, 1]]);
        assert_eq!(a.mul(&b).unwrap(), RatMatrix::from_i64(&[&[7, 2], &[3, 1]]));
        assert_eq!(a.transpose(), RatMatrix::from_i64(&[&[1, 0], &[2, 1]]));
        let mut c = RatMatrix::zeros(2, 2);
        c.set(1, 0, q(5, 1));
        c.set(1, 0, q(0, 1));
        assert!(c.is_zero());
    }
}
