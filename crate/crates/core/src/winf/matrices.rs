use crate::error::{Error, Result};
use crate::exactla::{factorial, solve, Scalar, SparseMatrix, SparseVector};

/// The pair `(λ^w_{k,l}, μ^w_{k,l})` describing `J^{w+k}(k)` on degree-one symbols.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionCoeffs<S> {
    pub lambda: S,
    pub mu: S,
}

pub fn lambda<S: Scalar>(k: u64, l: u64) -> S {
    if l < k {
        return S::zero();
    }
    -(factorial::<S>(l) / factorial::<S>(l - k))
}

pub fn mu<S: Scalar>(w: u64, k: u64, l: u64) -> S {
    let v = factorial::<S>(w + k + l) / factorial::<S>(l + w);
    if (w + k) % 2 == 1 {
        -v
    } else {
        v
    }
}

pub fn lambda_mu<S: Scalar>(w: u64, k: u64, l: u64) -> ActionCoeffs<S> {
    ActionCoeffs { lambda: lambda(k, l), mu: mu(w, k, l) }
}

/// The `(2m+2)×(2m+2)` block matrix `[[A, B], [C, D]]`. Column `j` records
/// the action of `J^{w+j}(j)` on `γ_0..γ_m` (top rows) and `β_0..β_m`.
pub fn build_mw<S: Scalar>(w: u64, m: u64) -> SparseMatrix<S> {
    let size = 2 * (m as usize + 1);
    let mut out = SparseMatrix::zeros(size, size);
    for i in 0..=m {
        for j in 0..=(2 * m + 1) {
            let (r, c) = (i as usize, j as usize);
            out.set(r, c, mu::<S>(w, j, i));
            out.set(r + m as usize + 1, c, lambda::<S>(j, i));
        }
    }
    out
}

/// `T(r,m)_{ij} = Π_{s=1}^{j} (r+i+s)` for `0 ≤ i, j ≤ m`.
pub fn build_t<S: Scalar>(r: u64, m: u64) -> SparseMatrix<S> {
    let n = m as usize + 1;
    let mut out = SparseMatrix::zeros(n, n);
    for i in 0..n {
        let mut entry = S::one();
        for j in 0..n {
            if j > 0 {
                entry = entry * S::from_int((r + i as u64 + j as u64) as i64);
            }
            out.set(i, j, entry.clone());
        }
    }
    out
}

/// Coefficients `t_0..t_{2m+1}` with `Σ t_k J^{w+k}(k)` acting on `W_m` as
/// `γ_i ↦ c_i γ_{i+w}`, `β_i ↦ d_i β_{i+w}`.
pub fn express_diagonal_map<S: Scalar>(w: u64, m: u64, c: &[S], d: &[S]) -> Result<Vec<S>> {
    let n = m as usize + 1;
    if w == 0 {
        return Err(Error::InvalidArgument("weight w must be at least 1".into()));
    }
    for v in [c, d] {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
    }
    let rhs: Vec<S> = c.iter().chain(d).cloned().collect();
    let x = solve(&build_mw::<S>(w, m), &SparseVector::from_dense(&rhs))?.ok_or(Error::Singular)?;
    Ok(x.to_dense())
}
