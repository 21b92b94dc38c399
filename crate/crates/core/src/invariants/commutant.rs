use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, rank, Scalar, SparseMatrix, SparseVector};
use crate::fieldcalc::FieldCalc;
use crate::fock::{basis, AlgebraDescriptor, Bidegree, GeneratorMode, Monomial, Species, State};

/// The current `J_ξ = Σ_i (Aᵀξ)_i :γ^i β^i:` attached to `ξ ∈ Z^m` for a
/// torus with `m×n` charge matrix `A`.
///
/// With this normalization `J_ξ ∘₁ J_η = -Σ_i (Aᵀξ)_i (Aᵀη)_i`, which is
/// `B(ξ,η) = -Tr(ρ(ξ)ρ(η))`, and `J_ξ ∘₀ J_η = 0`.
pub fn heisenberg_current<S: Scalar>(xi: &[i64], a: &[Vec<i64>], n: u32) -> Result<State<S>> {
    if xi.len() != a.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: xi.len() });
    }
    let mut out = State::zero();
    for i in 0..n as usize {
        let mut c = 0i64;
        for (x, row) in xi.iter().zip(a) {
            if row.len() != n as usize {
                return Err(Error::DimensionMismatch { expected: n as usize, found: row.len() });
            }
            c += x * row[i];
        }
        let index = i as u32 + 1;
        let m = State::from_modes(&[
            GeneratorMode::new(Species::Beta, index, -1),
            GeneratorMode::new(Species::Gamma, index, -1),
        ]);
        out.add_scaled(&S::from_int(c), &m);
    }
    Ok(out)
}

/// One current per row of `A` (the currents of the coordinate basis of Z^m).
pub fn torus_currents<S: Scalar>(a: &[Vec<i64>], n: u32) -> Result<Vec<State<S>>> {
    (0..a.len())
        .map(|r| {
            let xi: Vec<i64> = (0..a.len()).map(|s| (s == r) as i64).collect();
            heisenberg_current(&xi, a, n)
        })
        .collect()
}

/// The extra generators attached to the lattice `A^⊥ ∩ Z^n` of a torus.
///
/// They vanish exactly when `A` has full column rank, which is the only
/// case handled; any other `A` returns [`Error::Unsupported`].
pub fn lattice_generators<S: Scalar>(a: &[Vec<i64>], n: u32) -> Result<Vec<State<S>>> {
    let rows: Vec<Vec<S>> = a
        .iter()
        .map(|row| {
            if row.len() != n as usize {
                return Err(Error::DimensionMismatch { expected: n as usize, found: row.len() });
            }
            Ok(row.iter().map(|&x| S::from_int(x)).collect())
        })
        .collect::<Result<_>>()?;
    let r = if rows.is_empty() { 0 } else { rank(&SparseMatrix::from_dense(&rows)) };
    if r == n as usize {
        Ok(Vec::new())
    } else {
        Err(Error::Unsupported(format!("generators for a lattice A^⊥ ∩ Z^n of rank {}", n as usize - r)))
    }
}

/// Basis of the states of weight `weight` and degree at most `max_degree`
/// killed by every mode `J(k)`, `k ≥ 0`, of every current.
///
/// The modes do not preserve degree (contractions drop it by two), so the
/// kernel is taken on the whole filtered piece rather than per degree.
pub fn commutant_basis<S: Scalar>(
    currents: &[State<S>],
    alg: &AlgebraDescriptor,
    weight: i64,
    max_degree: usize,
) -> Result<Vec<State<S>>> {
    let mut currents_weight = Vec::with_capacity(currents.len());
    for j in currents {
        currents_weight.push(j.weight()?);
    }
    let monomials: Vec<Monomial> =
        (0..=max_degree).flat_map(|d| basis(alg, Bidegree::new(weight, d), None)).collect();
    let calc = FieldCalc::new();
    let mut rows: BTreeMap<(usize, i32, Monomial), usize> = BTreeMap::new();
    let mut columns = Vec::with_capacity(monomials.len());
    for m in &monomials {
        let s = State::monomial(m.clone());
        let mut col = Vec::new();
        for (c, (j, &wj)) in currents.iter().zip(&currents_weight).enumerate() {
            // J(k) lowers weight by k + 1 - wt(J)
            for k in 0..=(weight + wj - 1).max(0) as i32 {
                for (t, x) in calc.circle(j, k, &s).iter() {
                    let next = rows.len();
                    col.push((*rows.entry((c, k, t.clone())).or_insert(next), x.clone()));
                }
            }
        }
        columns.push(col);
    }
    let cols: Vec<SparseVector<S>> = columns.into_iter().map(|c| SparseVector::from_entries(rows.len(), c)).collect();
    let kernel = kernel_basis(&SparseMatrix::from_columns(rows.len(), &cols));
    Ok(kernel.iter().map(|v| State::from_vector(v, &monomials)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldcalc::circle;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn bilinear_form() {
        let j = heisenberg_current::<Q>(&[1], &[vec![1]], 1).unwrap();
        assert_eq!(circle(&j, 1, &j), State::vacuum().scaled(&Q::from_int(-1)));
        assert!(circle(&j, 0, &j).is_zero());
        assert!(heisenberg_current::<Q>(&[0], &[vec![1]], 1).unwrap().is_zero());
        let j2 = heisenberg_current::<Q>(&[1], &[vec![1, 1]], 2).unwrap();
        assert_eq!(circle(&j2, 1, &j2), State::vacuum().scaled(&Q::from_int(-2)));
    }

    #[test]
    fn low_weight_commutant() {
        let alg = AlgebraDescriptor::bg(1);
        let j = torus_currents::<Q>(&[vec![1]], 1).unwrap();
        assert_eq!(commutant_basis(&j, &alg, 0, 4).unwrap(), vec![State::vacuum()]);
        assert!(commutant_basis(&j, &alg, 1, 4).unwrap().is_empty());
    }
}
