//! The Lie algebra D̂ of differential operators on the punctured line, its
//! free-field realizations, and the matrices behind the uniqueness lemma for
//! diagonal maps on `W_m`.
//!
//! Realized currents are `J^l = Σ_i :γ^i ∂^l β^i:` (bg) and
//! `Σ_i :c^i ∂^l b^i:` (bc). With `J^l(k)` the k-th mode of that field, the
//! assignment `J^l_k ↦ -J^l(k+l)` is a representation of D̂ in which κ acts
//! as `-n` (bg) or `+n` (bc).

mod dop;
mod matrices;

use std::collections::HashMap;
use std::sync::Mutex;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::Scalar;
use crate::fieldcalc::{derive_n, FieldCalc};
use crate::fock::{basis_up_to, AlgebraDescriptor, AlgebraKind, GeneratorMode, Monomial, Species, State};

pub use dop::{basis_bracket, cocycle, cocycle_dop, d_bracket, DOp, ModeIndex};
pub use matrices::{build_mw, build_t, express_diagonal_map, lambda, lambda_mu, mu, ActionCoeffs};

fn current_species(kind: AlgebraKind) -> Result<(Species, Species)> {
    match kind {
        AlgebraKind::Bg => Ok((Species::Gamma, Species::Beta)),
        AlgebraKind::Bc => Ok((Species::C, Species::B)),
        other => Err(Error::InvalidKind { expected: "bg or bc", found: other.name().to_string() }),
    }
}

/// The state of the realized generator `J^l`, of weight `l+1` and degree 2.
pub fn realize<S: Scalar>(l: u32, alg: &AlgebraDescriptor) -> Result<State<S>> {
    let (left, right) = current_species(alg.kind)?;
    let calc = FieldCalc::new();
    let mut out = State::zero();
    for i in 1..=alg.rank {
        let a = State::from_modes(&[GeneratorMode::new(left, i, -1)]);
        let b = derive_n(&State::from_modes(&[GeneratorMode::new(right, i, -1)]), l);
        out = out.add(&calc.nprod(&[a, b])?);
    }
    Ok(out)
}

/// The value of κ in the realization on `alg`: `-n` for bg, `+n` for bc.
pub fn realized_kappa<S: Scalar>(alg: &AlgebraDescriptor) -> Result<S> {
    let n = S::from_int(alg.rank as i64);
    match alg.kind {
        AlgebraKind::Bg => Ok(-n),
        AlgebraKind::Bc => Ok(n),
        other => Err(Error::InvalidKind { expected: "bg or bc", found: other.name().to_string() }),
    }
}

type ModeKey = (u32, i64, Monomial);

/// Mode operators of the realized currents, cached per monomial.
pub struct Realization<S> {
    alg: AlgebraDescriptor,
    calc: FieldCalc<S>,
    currents: Mutex<HashMap<u32, State<S>>>,
    cache: Mutex<HashMap<ModeKey, State<S>>>,
}

impl<S: Scalar> Realization<S> {
    pub fn new(alg: AlgebraDescriptor) -> Result<Self> {
        current_species(alg.kind)?;
        Ok(Self { alg, calc: FieldCalc::new(), currents: Mutex::default(), cache: Mutex::default() })
    }

    pub fn algebra(&self) -> &AlgebraDescriptor {
        &self.alg
    }

    pub fn calc(&self) -> &FieldCalc<S> {
        &self.calc
    }

    pub fn current(&self, l: u32) -> State<S> {
        if let Some(s) = self.currents.lock().unwrap().get(&l) {
            return s.clone();
        }
        let s = realize(l, &self.alg).expect("kind checked at construction");
        self.currents.lock().unwrap().insert(l, s.clone());
        s
    }

    fn field_mode_monomial(&self, l: u32, k: i64, m: &Monomial) -> State<S> {
        let key = (l, k, m.clone());
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let out = self.calc.circle(&self.current(l), k as i32, &State::monomial(m.clone()));
        self.cache.lock().unwrap().insert(key, out.clone());
        out
    }

    /// The field mode `J^l(k)` applied to `s`.
    pub fn field_mode(&self, l: u32, k: i64, s: &State<S>) -> State<S> {
        let mut out = State::zero();
        for (m, c) in s.iter() {
            out.add_scaled(c, &self.field_mode_monomial(l, k, m));
        }
        out
    }

    /// The representing operator of `J^l_k`.
    pub fn rep_basis(&self, l: u32, k: i64, s: &State<S>) -> State<S> {
        self.field_mode(l, k + l as i64, s).neg()
    }

    /// The representing operator of `x`, with κ acting as `kappa`.
    pub fn rep(&self, x: &DOp<S>, kappa: &S, s: &State<S>) -> State<S> {
        let mut out = s.scaled(&(x.kappa().clone() * kappa.clone()));
        for ((l, k), c) in x.iter() {
            out.add_scaled(c, &self.rep_basis(l, k, s));
        }
        out
    }

    /// Compares `[ρ(J^{l1}_{k1}), ρ(J^{l2}_{k2})]` with `ρ` of the D̂ bracket on
    /// every basis monomial of weight ≤ `max_weight`, degree ≤ `max_degree`.
    pub fn verify(&self, x: (u32, i64), y: (u32, i64), max_weight: i64, max_degree: usize, kappa: &S) -> RepReport<S> {
        let bracket = basis_bracket::<S>(x.0, x.1, y.0, y.1);
        let mut report = RepReport { checked: 0, mismatches: Vec::new() };
        for m in basis_up_to(&self.alg, max_weight, max_degree) {
            let v = State::monomial(m.clone());
            let xy = self.rep_basis(x.0, x.1, &self.rep_basis(y.0, y.1, &v));
            let yx = self.rep_basis(y.0, y.1, &self.rep_basis(x.0, x.1, &v));
            let lhs = xy.sub(&yx);
            let rhs = self.rep(&bracket, kappa, &v);
            report.checked += 1;
            if lhs != rhs {
                report.mismatches.push(RepMismatch { monomial: m, lhs, rhs });
            }
        }
        report
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepMismatch<S> {
    pub monomial: Monomial,
    pub lhs: State<S>,
    pub rhs: State<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepReport<S> {
    pub checked: usize,
    pub mismatches: Vec<RepMismatch<S>>,
}

impl<S: Scalar> RepReport<S> {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn merge(&mut self, other: RepReport<S>) {
        self.checked += other.checked;
        self.mismatches.extend(other.mismatches);
    }

    pub fn to_json(&self) -> Value {
        let mismatches: Vec<Value> = self
            .mismatches
            .iter()
            .map(|m| json!({ "state": m.monomial.to_json(), "commutator": m.lhs.to_json(), "bracket": m.rhs.to_json() }))
            .collect();
        json!({ "checked": self.checked, "mismatches": mismatches })
    }
}

/// One-shot representation check for a single pair of basis elements, with
/// κ specialized to the realized central charge.
pub fn verify_rep<S: Scalar>(
    l1: u32,
    k1: i64,
    l2: u32,
    k2: i64,
    alg: &AlgebraDescriptor,
    max_weight: i64,
    max_degree: usize,
) -> Result<RepReport<S>> {
    let kappa = realized_kappa::<S>(alg)?;
    Ok(Realization::new(*alg)?.verify((l1, k1), (l2, k2), max_weight, max_degree, &kappa))
}

/// `(λ, μ)` read off from the realized mode `J^{w+k}(k)` acting on the
/// degree-one states `∂^l β^i` and `∂^l γ^i` (bg only).
pub fn realized_action_coeffs<S: Scalar>(real: &Realization<S>, w: u64, k: u64, l: u64, index: u32) -> Result<ActionCoeffs<S>> {
    if real.algebra().kind != AlgebraKind::Bg {
        return Err(Error::InvalidKind { expected: "bg", found: real.algebra().kind.name().to_string() });
    }
    let read = |species: Species| {
        let src: State<S> = derive_n(&State::from_modes(&[GeneratorMode::new(species, index, -1)]), l as u32);
        let dst: State<S> = derive_n(&State::from_modes(&[GeneratorMode::new(species, index, -1)]), (l + w) as u32);
        let image = real.field_mode((w + k) as u32, k as i64, &src);
        let (dm, dc) = dst.iter().next().expect("nonzero derivative");
        let coeff = image.coefficient(dm) / dc.clone();
        // anything outside the line through `dst` would break the diagonal form
        if image == dst.scaled(&coeff) {
            Ok(coeff)
        } else {
            Err(Error::InvalidArgument(format!("J^{}({k}) is not diagonal on {}", w + k, species.name())))
        }
    };
    Ok(ActionCoeffs { lambda: read(Species::Beta)?, mu: read(Species::Gamma)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn realize_examples() {
        let bg1 = AlgebraDescriptor::bg(1);
        let j0 = realize::<Q>(0, &bg1).unwrap();
        let expect0 = State::from_modes(&[GeneratorMode::new(Species::Beta, 1, -1), GeneratorMode::new(Species::Gamma, 1, -1)]);
        assert_eq!(j0, expect0);
        let j1 = realize::<Q>(1, &bg1).unwrap();
        let expect1 = State::from_modes(&[GeneratorMode::new(Species::Beta, 1, -2), GeneratorMode::new(Species::Gamma, 1, -1)]);
        assert_eq!(j1, expect1);
        for l in 0..4 {
            assert_eq!(realize::<Q>(l, &AlgebraDescriptor::bc(2)).unwrap().weight().unwrap(), l as i64 + 1);
        }
        assert!(realize::<Q>(0, &AlgebraDescriptor::bcbg(1)).is_err());
    }

    #[test]
    fn heisenberg_pair() {
        let r = verify_rep::<Q>(0, 1, 0, -1, &AlgebraDescriptor::bg(1), 3, 3).unwrap();
        assert!(r.ok() && r.checked > 0);
        let real = Realization::<Q>::new(AlgebraDescriptor::bg(1)).unwrap();
        let v = State::from_modes(&[GeneratorMode::new(Species::Gamma, 1, -2)]);
        let xy = real.rep_basis(0, 1, &real.rep_basis(0, -1, &v));
        let yx = real.rep_basis(0, -1, &real.rep_basis(0, 1, &v));
        assert_eq!(xy.sub(&yx), v.neg());
    }

    #[test]
    fn mixed_pairs_both_kinds() {
        for alg in [AlgebraDescriptor::bg(1), AlgebraDescriptor::bc(1)] {
            let kappa = realized_kappa::<Q>(&alg).unwrap();
            let real = Realization::<Q>::new(alg).unwrap();
            for (x, y) in [((1, 0), (0, 2)), ((2, -1), (1, 1)), ((2, 1), (2, -1))] {
                let r = real.verify(x, y, 3, 3, &kappa);
                assert!(r.ok(), "{:?} {:?} {:?}", alg.kind, x, y);
            }
        }
    }

    #[test]
    fn degree_one_action_matches_closed_form() {
        let real = Realization::<Q>::new(AlgebraDescriptor::bg(2)).unwrap();
        for w in 1..=2 {
            for k in 0..=2 {
                for l in 0..=3 {
                    for i in 1..=2 {
                        assert_eq!(realized_action_coeffs(&real, w, k, l, i).unwrap(), lambda_mu::<Q>(w, k, l));
                    }
                }
            }
        }
    }
}
