use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::{GeneratorMode, Monomial};
use crate::error::{Error, Result};
use crate::exactla::{factorial, parse_scalar, Scalar, SparseVector};

/// Finite linear combination of monomials. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct State<S> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Default for State<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> State<S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn vacuum() -> Self {
        Self::monomial(Monomial::vacuum())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, S::one())
    }

    pub fn term(m: Monomial, coeff: S) -> Self {
        let mut s = Self::zero();
        s.add_term(m, coeff);
        s
    }

    /// The state `g_1 g_2 ... g_k |0⟩` for an arbitrary list of modes.
    pub fn from_modes(modes: &[GeneratorMode]) -> Self {
        modes.iter().rev().fold(Self::vacuum(), |s, g| apply_mode(g, &s))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, m: Monomial, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// `self += factor * other`
    pub fn add_scaled(&mut self, factor: &S, other: &State<S>) {
        if factor.is_zero() {
            return;
        }
        for (m, c) in other.terms.iter() {
            self.add_term(m.clone(), factor.clone() * c.clone());
        }
    }

    pub fn add(&self, other: &State<S>) -> State<S> {
        let mut out = self.clone();
        out.add_scaled(&S::one(), other);
        out
    }

    pub fn sub(&self, other: &State<S>) -> State<S> {
        let mut out = self.clone();
        out.add_scaled(&-S::one(), other);
        out
    }

    pub fn scaled(&self, factor: &S) -> State<S> {
        let mut out = Self::zero();
        out.add_scaled(factor, self);
        out
    }

    pub fn neg(&self) -> State<S> {
        self.scaled(&-S::one())
    }

    fn homogeneous<T: PartialEq + Copy>(&self, what: &'static str, f: impl Fn(&Monomial) -> T) -> Result<Option<T>> {
        let mut value = None;
        for m in self.terms.keys() {
            let v = f(m);
            match value {
                None => value = Some(v),
                Some(prev) if prev != v => return Err(Error::NotHomogeneous(what)),
                _ => {}
            }
        }
        Ok(value)
    }

    /// Conformal weight. The zero state counts as weight 0.
    pub fn weight(&self) -> Result<i64> {
        Ok(self.homogeneous("weight", Monomial::weight)?.unwrap_or(0))
    }

    /// Number of generator modes. The zero state counts as degree 0.
    pub fn degree(&self) -> Result<usize> {
        Ok(self.homogeneous("degree", Monomial::degree)?.unwrap_or(0))
    }

    /// Parity (true = odd). The zero state counts as even.
    pub fn parity(&self) -> Result<bool> {
        Ok(self.homogeneous("parity", Monomial::is_odd)?.unwrap_or(false))
    }

    pub fn charge(&self, charges: &[Vec<i64>]) -> Result<Vec<i64>> {
        let mut value: Option<Vec<i64>> = None;
        for m in self.terms.keys() {
            let c = m.charge(charges);
            match &value {
                None => value = Some(c),
                Some(prev) if *prev != c => return Err(Error::NotHomogeneous("charge")),
                _ => {}
            }
        }
        Ok(value.unwrap_or_else(|| vec![0; charges.len()]))
    }

    pub fn max_weight(&self) -> i64 {
        self.terms.keys().map(Monomial::weight).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Coordinates against an indexed monomial basis; monomials outside the
    /// index are reported as an error.
    pub fn to_vector(&self, index: &BTreeMap<Monomial, usize>) -> Result<SparseVector<S>> {
        let mut v = SparseVector::zeros(index.len());
        for (m, c) in self.terms.iter() {
            let i = index.get(m).ok_or_else(|| Error::InvalidArgument(format!("monomial {m} outside the basis")))?;
            v.set(*i, c.clone());
        }
        Ok(v)
    }

    pub fn from_vector(v: &SparseVector<S>, basis: &[Monomial]) -> State<S> {
        let mut s = Self::zero();
        for (i, c) in v.iter() {
            s.add_term(basis[i].clone(), c.clone());
        }
        s
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|(m, c)| json!([m.to_json(), c.to_string()])).collect();
        json!({ "terms": terms })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = || Error::Format(format!("state json: {value}"));
        let mut s = Self::zero();
        for term in value["terms"].as_array().ok_or_else(bad)? {
            let m = Monomial::from_json(&term[0])?;
            let c: S = term[1].as_str().and_then(parse_scalar).ok_or_else(bad)?;
            s.add_term(m, c);
        }
        Ok(s)
    }

    /// Human-readable form in normally ordered field notation.
    pub fn field_notation(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter() {
            let norm = m
                .factors()
                .iter()
                .fold(S::one(), |acc, g| acc * factorial::<S>((-g.mode - 1) as u64));
            let coeff = c.clone() / norm;
            let body = m.field_notation();
            parts.push(if body == "1" {
                format!("{coeff}")
            } else if coeff == S::one() {
                body
            } else if coeff == -S::one() {
                format!("-{body}")
            } else {
                format!("{coeff}·{body}")
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl<S: Scalar> fmt::Display for State<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c}){m}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Applies one mode to a monomial. The result is always a single monomial
/// (or zero), with an integer coefficient.
pub fn apply_mode_monomial(g: &GeneratorMode, m: &Monomial) -> Option<(i64, Monomial)> {
    let factors = m.factors();
    if g.is_creation() {
        let pos = factors.partition_point(|f| f < g);
        if g.is_odd() && factors.get(pos) == Some(g) {
            return None;
        }
        let odd_before = factors[..pos].iter().filter(|f| f.is_odd()).count();
        let sign = if g.is_odd() && odd_before % 2 == 1 { -1 } else { 1 };
        let mut word = Vec::with_capacity(factors.len() + 1);
        word.extend_from_slice(&factors[..pos]);
        word.push(*g);
        word.extend_from_slice(&factors[pos..]);
        return Some((sign, Monomial::from_sorted_unchecked(word)));
    }
    let partner = g.partner();
    let pos = factors.iter().position(|f| *f == partner)?;
    let base = g.species.contraction_sign();
    let coeff = if g.is_odd() {
        let odd_before = factors[..pos].iter().filter(|f| f.is_odd()).count();
        if odd_before % 2 == 1 {
            -base
        } else {
            base
        }
    } else {
        base * factors.iter().filter(|f| **f == partner).count() as i64
    };
    let mut word = factors.to_vec();
    word.remove(pos);
    Some((coeff, Monomial::from_sorted_unchecked(word)))
}

/// Action of a single generator mode on a state.
///
/// Creation modes insert at the canonical position (with the fermionic sign);
/// annihilation modes act as (odd) derivations with respect to their partner
/// creation mode and kill the vacuum.
pub fn apply_mode<S: Scalar>(g: &GeneratorMode, s: &State<S>) -> State<S> {
    let mut out = State::zero();
    for (m, c) in s.iter() {
        if let Some((k, m2)) = apply_mode_monomial(g, m) {
            out.add_term(m2, c.clone() * S::from_int(k));
        }
    }
    out
}
