use std::collections::BTreeMap;

use super::SparseVec;

#[derive(Clone, Debug)]
struct PivotRow {
    row: SparseVec,
    /// Expression of `row` as a combination of inserted source vectors.
    combo: Option<SparseVec>,
}

/// Incrementally maintained reduced row-echelon basis.
///
/// Every stored row has a leading `1` at its pivot column and zeros in all
/// other pivot columns, so membership and reduction take a single pass. When
/// built with [`Echelon::tracking`], each row also remembers how it was
/// obtained from the inserted vectors, which turns the basis into a solver.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, PivotRow>,
    track: bool,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new(), track: false }
    }

    pub fn tracking(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new(), track: true }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Rows in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.pivots.values().map(|p| &p.row)
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = v.clone();
        for (c, val) in v.iter() {
            if let Some(p) = self.pivots.get(&c) {
                acc = acc.axpy(&-val, &p.row);
            }
        }
        acc
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`, returning whether it extended the span. `source` labels
    /// the vector for tracking; it is ignored on untracked bases.
    pub fn insert(&mut self, v: &SparseVec, source: usize) -> bool {
        let mut residual = v.clone();
        let mut combo = self.track.then(|| SparseVec::unit(source));
        for (c, val) in v.iter() {
            if let Some(p) = self.pivots.get(&c) {
                let neg = -val;
                residual = residual.axpy(&neg, &p.row);
                if let (Some(acc), Some(pc)) = (combo.as_mut(), p.combo.as_ref()) {
                    *acc = acc.axpy(&neg, pc);
                }
            }
        }
        let Some((pivot, lead)) = residual.first().map(|(c, x)| (c, x.clone())) else {
            return false;
        };
        let inv = lead.recip();
        let row = residual.scaled(&inv);
        let combo = combo.map(|c| c.scaled(&inv));
        for p in self.pivots.values_mut() {
            if let Some(x) = p.row.get(pivot).cloned() {
                let neg = -x;
                p.row = p.row.axpy(&neg, &row);
                if let (Some(pc), Some(nc)) = (p.combo.as_mut(), combo.as_ref()) {
                    *pc = pc.axpy(&neg, nc);
                }
            }
        }
        self.pivots.insert(pivot, PivotRow { row, combo });
        true
    }

    /// Coefficients `c` over inserted sources with `sum c_s * source_s = v`,
    /// or `None` when `v` is outside the span. Requires a tracking basis.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "solve requires a tracking echelon basis");
        let mut coeffs = SparseVec::new();
        let mut residual = v.clone();
        for (c, val) in v.iter() {
            if let Some(p) = self.pivots.get(&c) {
                residual = residual.axpy(&-val, &p.row);
                coeffs = coeffs.axpy(val, p.combo.as_ref().expect("tracked row"));
            }
        }
        residual.is_zero().then_some(coeffs)
    }
}

/// Rank of a family of sparse vectors over `ncols` coordinates.
pub fn rank_of<'a, I: IntoIterator<Item = &'a SparseVec>>(ncols: usize, vectors: I) -> usize {
    let mut e = Echelon::new(ncols);
    for v in vectors {
        e.insert(v, 0);
    }
    e.rank()
}
