use super::{kernel_basis, Echelon, RatMatrix, Rational, SparseVec};
use crate::error::{ensure_len, Error, Result};

/// Linear subspace of `Q^n`, held as a reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    echelon: Echelon,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.echelon.rows().eq(other.echelon.rows())
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, echelon: Echelon::new(ambient_dim) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let vectors: Vec<SparseVec> = (0..ambient_dim).map(SparseVec::unit).collect();
        Subspace::span(ambient_dim, &vectors).expect("units fit the ambient space")
    }

    /// Span of coordinate vectors `e_i` for the given indices.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let vectors: Vec<SparseVec> = indices.into_iter().map(SparseVec::unit).collect();
        Subspace::span(ambient_dim, &vectors)
    }

    pub fn span<'a, I: IntoIterator<Item = &'a SparseVec>>(ambient_dim: usize, vectors: I) -> Result<Self> {
        let mut echelon = Echelon::new(ambient_dim);
        for v in vectors {
            if v.support_end() > ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: v.support_end() });
            }
            echelon.insert(v, 0);
        }
        Ok(Subspace { ambient_dim, echelon })
    }

    pub fn from_dense_rows(ambient_dim: usize, rows: &[Vec<Rational>]) -> Result<Self> {
        for r in rows {
            ensure_len(ambient_dim, r.len())?;
        }
        let vectors: Vec<SparseVec> = rows.iter().map(|r| SparseVec::from_dense(r)).collect();
        Subspace::span(ambient_dim, &vectors)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// RREF basis vectors in pivot order.
    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.echelon.rows()
    }

    pub fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(self.ambient_dim, self.basis().cloned().collect())
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.echelon.pivot_columns().collect()
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        ensure_len(self.ambient_dim, x.len())?;
        Ok(self.echelon.contains(&SparseVec::from_dense(x)))
    }

    pub fn contains_sparse(&self, x: &SparseVec) -> Result<bool> {
        if x.support_end() > self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: x.support_end() });
        }
        Ok(self.echelon.contains(x))
    }

    /// Residual of `x` modulo the subspace.
    pub fn reduce(&self, x: &SparseVec) -> SparseVec {
        self.echelon.reduce(x)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        ensure_len(other.ambient_dim, self.ambient_dim)?;
        Ok(self.basis().all(|v| other.echelon.contains(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        ensure_len(self.ambient_dim, other.ambient_dim)?;
        let mut out = self.clone();
        for v in other.basis() {
            out.echelon.insert(v, 0);
        }
        Ok(out)
    }

    /// Intersection via the kernel of `[A^T | -B^T]`: every `(a, b)` with
    /// `sum a_i A_i = sum b_j B_j` yields the common vector `sum a_i A_i`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        ensure_len(self.ambient_dim, other.ambient_dim)?;
        let a: Vec<&SparseVec> = self.basis().collect();
        let b: Vec<&SparseVec> = other.basis().collect();
        if a.is_empty() || b.is_empty() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let mut columns: Vec<SparseVec> = a.iter().map(|v| (*v).clone()).collect();
        columns.extend(b.iter().map(|v| v.neg()));
        let stacked = RatMatrix::from_columns(self.ambient_dim, &columns);
        let kernel = kernel_basis(&stacked);
        let common: Vec<SparseVec> = kernel
            .basis()
            .map(|coeffs| {
                coeffs
                    .iter()
                    .filter(|(i, _)| *i < a.len())
                    .fold(SparseVec::new(), |acc, (i, c)| acc.axpy(c, a[i]))
            })
            .collect();
        Subspace::span(self.ambient_dim, &common)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| Rational::from_integer(x)).collect::<Vec<_>>())
    }

    fn span(n: usize, vs: &[&[i64]]) -> Subspace {
        let vecs: Vec<SparseVec> = vs.iter().map(|x| v(x)).collect();
        Subspace::span(n, &vecs).unwrap()
    }

    #[test]
    fn sums() {
        assert_eq!(span(3, &[&[1, 0, 0]]).sum(&span(3, &[&[0, 1, 0]])).unwrap().dim(), 2);
        let a = span(3, &[&[1, 2, 3]]);
        assert_eq!(a.sum(&a).unwrap(), a);
        let s = span(3, &[&[1, 1, 0]]).sum(&span(3, &[&[1, -1, 0]])).unwrap();
        assert_eq!(s, span(3, &[&[1, 0, 0], &[0, 1, 0]]));
    }

    #[test]
    fn intersections() {
        let a = span(3, &[&[1, 2, 0], &[0, 1, 1]]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert!(span(2, &[&[1, 0]]).intersect(&span(2, &[&[0, 1]])).unwrap().is_zero());
        let i = span(3, &[&[1, 0, 0], &[0, 1, 0]]).intersect(&span(3, &[&[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(i, span(3, &[&[0, 1, 0]]));
    }

    #[test]
    fn membership() {
        let a = span(3, &[&[0, 1, 0]]);
        let zero = vec![Rational::zero(); 3];
        assert!(a.contains(&zero).unwrap());
        assert!(!a.contains(&v(&[1, 0, 0]).to_dense(3)).unwrap());
        let b = span(3, &[&[1, 1, 0], &[0, 0, 1]]);
        assert!(b.contains(&v(&[1, 1, 0]).to_dense(3)).unwrap());
        assert!(b.contains(&[Rational::one()]).is_err());
    }

    #[test]
    fn ambient_mismatch() {
        assert!(span(2, &[&[1, 0]]).sum(&span(3, &[&[1, 0, 0]])).is_err());
        assert!(span(2, &[&[1, 0]]).intersect(&span(3, &[&[1, 0, 0]])).is_err());
    }
}
