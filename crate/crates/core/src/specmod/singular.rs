use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use super::verma::{verma_basis, PbwWord, VermaElement, VermaModule};
use crate::error::Result;
use crate::exactla::{kernel_basis, Scalar, SparseMatrix, SparseVector};
use crate::fock::{AlgebraDescriptor, Monomial, State};
use crate::winf::Realization;

fn from_kernel<S: Scalar>(basis: &[PbwWord], vectors: Vec<SparseVector<S>>) -> Vec<VermaElement<S>> {
    vectors
        .into_iter()
        .map(|v| {
            let mut e = VermaElement::zero();
            for (i, c) in v.iter() {
                e.add_term(basis[i].clone(), c.clone());
            }
            e
        })
        .collect()
}

/// Row indexer for matrices whose rows are labelled by arbitrary keys.
struct Rows<K> {
    index: BTreeMap<K, usize>,
}

impl<K: Ord> Rows<K> {
    fn new() -> Self {
        Self { index: BTreeMap::new() }
    }

    fn get(&mut self, k: K) -> usize {
        let n = self.index.len();
        *self.index.entry(k).or_insert(n)
    }

    fn len(&self) -> usize {
        self.index.len()
    }
}

fn assemble<S: Scalar>(rows: usize, columns: Vec<Vec<(usize, S)>>) -> SparseMatrix<S> {
    let cols: Vec<SparseVector<S>> = columns.into_iter().map(|c| SparseVector::from_entries(rows, c)).collect();
    SparseMatrix::from_columns(rows, &cols)
}

/// Weight-`n` vectors of `M_c` killed by every `J^l_j` with `l ≤ l_cap`,
/// `1 ≤ j ≤ j_cap`. For `n ≥ 1` the answer is exact only up to these caps.
pub fn singular_vectors<S: Scalar>(c: S, n: i64, l_cap: u32, j_cap: i64) -> Vec<VermaElement<S>> {
    let module = VermaModule::new(c);
    let basis = verma_basis(n);
    let mut rows = Rows::new();
    let mut columns = Vec::with_capacity(basis.len());
    for w in &basis {
        let mut col = Vec::new();
        for l in 0..=l_cap {
            for j in 1..=j_cap.min(n) {
                for (target, coeff) in module.act_letter((l, j), w).iter() {
                    col.push((rows.get((l, j, target.clone())), coeff.clone()));
                }
            }
        }
        columns.push(col);
    }
    let m = assemble(rows.len(), columns);
    from_kernel(&basis, kernel_basis(&m))
}

/// Default caps `l_cap = n + 2`, `j_cap = n`.
pub fn singular_vectors_default<S: Scalar>(c: S, n: i64) -> Vec<VermaElement<S>> {
    singular_vectors(c, n, (n + 2).max(0) as u32, n)
}

/// The map `M_{-n} → S(C^n)` sending a PBW word to the corresponding
/// product of realized modes applied to the vacuum.
pub struct Projector<S> {
    real: Realization<S>,
    memo: Mutex<HashMap<PbwWord, State<S>>>,
}

impl<S: Scalar> Projector<S> {
    pub fn new(rank: u32) -> Result<Self> {
        Ok(Self { real: Realization::new(AlgebraDescriptor::bg(rank))?, memo: Mutex::default() })
    }

    pub fn realization(&self) -> &Realization<S> {
        &self.real
    }

    pub fn word(&self, w: &PbwWord) -> State<S> {
        let Some((&(l, s), rest)) = w.letters().split_first() else {
            return State::vacuum();
        };
        if let Some(hit) = self.memo.lock().unwrap().get(w) {
            return hit.clone();
        }
        let rest = PbwWord::new(rest.to_vec()).expect("suffix of a PBW word");
        let out = self.real.rep_basis(l, s, &self.word(&rest));
        self.memo.lock().unwrap().insert(w.clone(), out.clone());
        out
    }

    pub fn project(&self, v: &VermaElement<S>) -> State<S> {
        let mut out = State::zero();
        for (w, c) in v.iter() {
            out.add_scaled(c, &self.word(w));
        }
        out
    }
}

pub fn project_to_realization<S: Scalar>(v: &VermaElement<S>, n: u32) -> Result<State<S>> {
    Ok(Projector::new(n)?.project(v))
}

/// Kernel of the projection on the weight-`weight` piece of `M_{-n}`.
pub fn ideal_kernel<S: Scalar>(n: u32, weight: i64) -> Result<Vec<VermaElement<S>>> {
    let proj = Projector::new(n)?;
    Ok(ideal_kernel_with(&proj, weight))
}

pub fn ideal_kernel_with<S: Scalar>(proj: &Projector<S>, weight: i64) -> Vec<VermaElement<S>> {
    let basis = verma_basis(weight);
    let mut rows: Rows<Monomial> = Rows::new();
    let columns: Vec<Vec<(usize, S)>> = basis
        .iter()
        .map(|w| proj.word(w).iter().map(|(m, c)| (rows.get(m.clone()), c.clone())).collect())
        .collect();
    let m = assemble(rows.len(), columns);
    from_kernel(&basis, kernel_basis(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{GeneratorMode, Species};
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn projection_of_generator() {
        let v = VermaElement::<Q>::word(PbwWord::new(vec![(0, -1)]).unwrap());
        let s = project_to_realization(&v, 1).unwrap();
        let gb = State::from_modes(&[GeneratorMode::new(Species::Beta, 1, -1), GeneratorMode::new(Species::Gamma, 1, -1)]);
        assert_eq!(s, gb.neg());
        assert_eq!(project_to_realization(&VermaElement::<Q>::vacuum(), 2).unwrap(), State::vacuum());
    }

    #[test]
    fn low_weight_kernels_vanish() {
        for w in 1..=3 {
            assert!(ideal_kernel::<Q>(1, w).unwrap().is_empty());
            assert!(singular_vectors_default(Q::from_int(-1), w).is_empty());
        }
    }
}
