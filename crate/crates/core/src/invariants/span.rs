use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::action::{invariant_basis, GroupAction};
use crate::error::{Error, Result};
use crate::exactla::{EchelonBasis, Scalar};
use crate::fock::{AlgebraDescriptor, Bidegree, Monomial, State};
use crate::specmod::{free_words, WordEvaluator};

/// Where the span of words first falls short of the invariant space, in the
/// filtration piece of degree at most `degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Deficiency {
    pub weight: i64,
    pub degree: usize,
    pub dim_have: usize,
    pub dim_need: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub weight_cap: i64,
    pub degree_cap: usize,
    /// `(weight, dim_have, dim_need)` in the top filtration piece, for every
    /// weight that was completed.
    pub totals: Vec<(i64, usize, usize)>,
    pub first_deficiency: Option<Deficiency>,
}

impl SpanReport {
    pub fn success(&self) -> bool {
        self.first_deficiency.is_none()
    }

    pub fn to_json(&self) -> Value {
        let first = self
            .first_deficiency
            .map(|d| json!([d.weight, d.degree, d.dim_have, d.dim_need]))
            .unwrap_or(Value::Null);
        json!({
            "status": if self.success() { "success" } else { "deficient" },
            "first_deficiency": first,
            "totals": self.totals.iter().map(|t| json!({"weight": t.0, "dim_have": t.1, "dim_need": t.2})).collect::<Vec<_>>(),
        })
    }
}

/// Dimensions of `span ∩ F_d` for `d = 0..=degree_cap`, where `F_d` is the
/// span of monomials of degree at most `d`.
fn filtered_dims<S: Scalar>(states: &[State<S>], degree_cap: usize) -> Result<Vec<usize>> {
    // columns ordered by degree descending, so each echelon row's pivot
    // carries its top degree
    let mut monomials: Vec<&Monomial> = states.iter().flat_map(|s| s.monomials()).collect();
    monomials.sort_by(|a, b| b.degree().cmp(&a.degree()).then(a.cmp(b)));
    monomials.dedup();
    let index: BTreeMap<Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| ((*m).clone(), i)).collect();
    let mut e = EchelonBasis::new(index.len());
    for s in states {
        e.insert(&s.to_vector(&index)?);
    }
    let mut out = vec![0usize; degree_cap + 1];
    for p in e.into_reduced().pivot_columns() {
        let d = monomials[p].degree();
        for slot in out.iter_mut().skip(d) {
            *slot += 1;
        }
    }
    Ok(out)
}

/// Compares, weight by weight, the span of right-nested normally ordered
/// words in `generators` and their derivatives with the invariant space.
///
/// A word is kept when the degrees of its letters add up to at most
/// `degree_cap`; at each weight the filtered pieces of degree `0..=degree_cap`
/// are compared.
pub fn span_check<S: Scalar>(
    generators: &[State<S>],
    action: &GroupAction<S>,
    alg: &AlgebraDescriptor,
    weight_cap: i64,
    degree_cap: usize,
) -> Result<SpanReport> {
    action.validate(alg.rank)?;
    for (i, g) in generators.iter().enumerate() {
        if !action.is_invariant(g) {
            return Err(Error::NotInvariant(i));
        }
    }
    let weights: Vec<i64> = generators.iter().map(State::weight).collect::<Result<_>>()?;
    let degrees: Vec<usize> = generators.iter().map(State::max_degree).collect();
    let eval = WordEvaluator::new(generators.to_vec());

    let mut totals = Vec::new();
    for w in 0..=weight_cap {
        let mut states: Vec<State<S>> = if w == 0 { vec![State::vacuum()] } else { Vec::new() };
        for word in free_words(&weights, w, degree_cap.max(1) * w as usize) {
            let degree: usize = word.0.iter().map(|x| degrees[x.generator]).sum();
            if degree <= degree_cap {
                states.push(eval.eval(&word));
            }
        }
        let have = filtered_dims(&states, degree_cap)?;
        let mut need = 0;
        for d in 0..=degree_cap {
            need += invariant_basis(action, alg, Bidegree::new(w, d))?.len();
            if have[d] < need {
                return Ok(SpanReport {
                    weight_cap,
                    degree_cap,
                    totals,
                    first_deficiency: Some(Deficiency { weight: w, degree: d, dim_have: have[d], dim_need: need }),
                });
            }
        }
        totals.push((w, have[degree_cap], need));
    }
    Ok(SpanReport { weight_cap, degree_cap, totals, first_deficiency: None })
}
