use std::collections::BTreeMap;

use super::scalar::Scalar;
use super::sparse::{SparseMatrix, SparseVector};
use crate::error::{Error, Result};

/// Incrementally maintained row echelon basis of a subspace.
///
/// Every stored row is scaled to have leading coefficient one, and the
/// leading columns are pairwise distinct. Inserting a vector reduces it
/// against the stored rows in ascending column order, so the result only
/// depends on the inserted vectors and their order.
#[derive(Clone, Debug)]
pub struct EchelonBasis<S> {
    len: usize,
    pivots: BTreeMap<usize, SparseVector<S>>,
}

impl<S: Scalar> EchelonBasis<S> {
    pub fn new(len: usize) -> Self {
        Self { len, pivots: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVector<S>)> {
        self.pivots.iter().map(|(c, r)| (*c, r))
    }

    /// Reduces `v` modulo the current span; the remainder is zero iff `v` lies in it.
    pub fn reduce(&self, v: &SparseVector<S>) -> SparseVector<S> {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut v = v.clone();
        let mut floor = 0usize;
        loop {
            let next = v.iter().find(|(c, _)| *c >= floor && self.pivots.contains_key(c)).map(|(c, x)| (c, x.clone()));
            match next {
                Some((c, x)) => {
                    v.axpy(&(-x), &self.pivots[&c]);
                    floor = c + 1;
                }
                None => return v,
            }
        }
    }

    pub fn contains(&self, v: &SparseVector<S>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns `true` when the dimension grew.
    pub fn insert(&mut self, v: &SparseVector<S>) -> bool {
        let mut r = self.reduce(v);
        let Some((c, lead)) = r.leading().map(|(c, x)| (c, x.clone())) else {
            return false;
        };
        r.scale(&(S::one() / lead));
        self.pivots.insert(c, r);
        true
    }

    /// Back-substitutes so that every pivot column is zero in all other rows.
    pub fn into_reduced(mut self) -> Self {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        for &c in cols.iter().rev() {
            let pivot_row = self.pivots[&c].clone();
            for &other in cols.iter().filter(|&&o| o < c) {
                let row = self.pivots.get_mut(&other).unwrap();
                let x = row.get(c);
                if !x.is_zero() {
                    row.axpy(&(-x), &pivot_row);
                }
            }
        }
        self
    }
}

fn row_echelon<S: Scalar>(m: &SparseMatrix<S>) -> EchelonBasis<S> {
    let mut basis = EchelonBasis::new(m.cols());
    for i in 0..m.rows() {
        basis.insert(m.row(i));
    }
    basis
}

/// Exact rank over the scalar field.
pub fn rank<S: Scalar>(m: &SparseMatrix<S>) -> usize {
    row_echelon(m).dim()
}

/// Basis of the right null space, one vector per free column (ascending).
pub fn kernel_basis<S: Scalar>(m: &SparseMatrix<S>) -> Vec<SparseVector<S>> {
    let rref = row_echelon(m).into_reduced();
    let cols = m.cols();
    let pivot_cols: Vec<usize> = rref.pivot_columns().collect();
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !rref.pivots.contains_key(c)) {
        let mut v = SparseVector::unit(cols, free);
        for &p in &pivot_cols {
            let x = rref.pivots[&p].get(free);
            if !x.is_zero() {
                v.set(p, -x);
            }
        }
        out.push(v);
    }
    out
}

/// One exact solution of `m x = b` with all free variables set to zero, or
/// `None` when the system is inconsistent.
pub fn solve<S: Scalar>(m: &SparseMatrix<S>, b: &SparseVector<S>) -> Result<Option<SparseVector<S>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: b.len() });
    }
    let cols = m.cols();
    let mut basis = EchelonBasis::new(cols + 1);
    for i in 0..m.rows() {
        let mut row = SparseVector::from_entries(cols + 1, m.row(i).iter().map(|(j, x)| (j, x.clone())));
        row.set(cols, b.get(i));
        basis.insert(&row);
    }
    if basis.pivots.contains_key(&cols) {
        return Ok(None);
    }
    let rref = basis.into_reduced();
    let mut x = SparseVector::zeros(cols);
    for (c, row) in rref.rows() {
        x.set(c, row.get(cols));
    }
    Ok(Some(x))
}

/// Determinant of a square matrix by Gaussian elimination with row swaps.
pub fn determinant<S: Scalar>(m: &SparseMatrix<S>) -> Result<S> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: m.cols() });
    }
    let n = m.rows();
    let mut a = m.to_dense();
    let mut det = S::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(S::zero());
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() / pivot.clone();
            for c in col..n {
                let t = a[col][c].clone() * f.clone();
                a[r][c] = a[r][c].clone() - t;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    type Q = BigRational;

    fn q(x: i64) -> Q {
        Q::from_int(x)
    }

    fn mat(rows: &[&[i64]]) -> SparseMatrix<Q> {
        SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::<Q>::identity(2)), 2);
        assert_eq!(rank(&SparseMatrix::<Q>::zeros(3, 3)), 0);
        assert_eq!(rank(&mat(&[&[1, 2], &[1, 3]])), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::<Q>::identity(2)).is_empty());
        let k = kernel_basis(&mat(&[&[1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].to_dense(), vec![-Q::one(), Q::one()]);
        assert!(kernel_basis(&mat(&[&[-1, 2], &[-1, 0]])).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::<Q>::zeros(2, 3)).len(), 3);
    }

    #[test]
    fn solve_examples() {
        let b = SparseVector::from_dense(&[q(3), q(-4)]);
        assert_eq!(solve(&SparseMatrix::identity(2), &b).unwrap(), Some(b));
        let inconsistent = solve(&mat(&[&[1, 1], &[0, 0]]), &SparseVector::from_dense(&[q(1), q(1)])).unwrap();
        assert_eq!(inconsistent, None);
        let x = solve(&mat(&[&[-1, 2], &[-1, 0]]), &SparseVector::from_dense(&[q(-1), q(-1)])).unwrap().unwrap();
        assert_eq!(x.to_dense(), vec![q(1), Q::zero()]);
        assert!(matches!(
            solve(&SparseMatrix::<Q>::identity(2), &SparseVector::zeros(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn determinant_with_swap() {
        assert_eq!(determinant(&mat(&[&[0, 1], &[1, 0]])).unwrap(), q(-1));
        assert_eq!(determinant(&mat(&[&[1, 2], &[1, 3]])).unwrap(), q(1));
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 4]])).unwrap(), q(0));
    }

    #[test]
    fn echelon_membership() {
        let mut e = EchelonBasis::<Q>::new(3);
        assert!(e.insert(&SparseVector::from_dense(&[q(1), q(2), q(0)])));
        assert!(e.insert(&SparseVector::from_dense(&[q(0), q(1), q(1)])));
        assert!(!e.insert(&SparseVector::from_dense(&[q(2), q(5), q(1)])));
        assert!(e.contains(&SparseVector::from_dense(&[q(1), q(3), q(1)])));
        assert!(!e.contains(&SparseVector::unit(3, 2)));
        assert_eq!(e.dim(), 2);
    }
}
