use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::{binomial, factorial, falling, parse_scalar, scalar_to_string, Scalar};

/// Element of D̂: a finite combination of `J^l_k = -t^{l+k} ∂^l` plus a
/// multiple of the central element κ.
#[derive(Clone, Debug, PartialEq)]
pub struct DOp<S> {
    terms: BTreeMap<(u32, i64), S>,
    kappa: S,
}

impl<S: Scalar> Default for DOp<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> DOp<S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new(), kappa: S::zero() }
    }

    /// The basis element `J^l_k`.
    pub fn basis(l: u32, k: i64) -> Self {
        let mut x = Self::zero();
        x.add_term(l, k, S::one());
        x
    }

    pub fn central(c: S) -> Self {
        Self { terms: BTreeMap::new(), kappa: c }
    }

    pub fn add_term(&mut self, l: u32, k: i64, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        let sum = self.terms.get(&(l, k)).cloned().unwrap_or_else(S::zero) + coeff;
        if sum.is_zero() {
            self.terms.remove(&(l, k));
        } else {
            self.terms.insert((l, k), sum);
        }
    }

    pub fn add_scaled(&mut self, factor: &S, other: &DOp<S>) {
        for (&(l, k), c) in &other.terms {
            self.add_term(l, k, factor.clone() * c.clone());
        }
        self.kappa = self.kappa.clone() + factor.clone() * other.kappa.clone();
    }

    pub fn add(&self, other: &DOp<S>) -> DOp<S> {
        let mut out = self.clone();
        out.add_scaled(&S::one(), other);
        out
    }

    pub fn scaled(&self, factor: &S) -> DOp<S> {
        let mut out = DOp::zero();
        out.add_scaled(factor, self);
        out
    }

    pub fn coefficient(&self, l: u32, k: i64) -> S {
        self.terms.get(&(l, k)).cloned().unwrap_or_else(S::zero)
    }

    pub fn kappa(&self) -> &S {
        &self.kappa
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, i64), &S)> {
        self.terms.iter().map(|(key, c)| (*key, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.kappa.is_zero()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|(&(l, k), c)| json!([l, k, scalar_to_string(c)])).collect();
        json!({ "terms": terms, "kappa": scalar_to_string(&self.kappa) })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = || Error::Format("expected {\"terms\":[[l,k,\"p/q\"],...],\"kappa\":\"p/q\"}".into());
        let mut out = DOp::zero();
        for t in value.get("terms").and_then(Value::as_array).ok_or_else(bad)? {
            let l = t.get(0).and_then(Value::as_u64).ok_or_else(bad)? as u32;
            let k = t.get(1).and_then(Value::as_i64).ok_or_else(bad)?;
            let c = t.get(2).and_then(Value::as_str).and_then(parse_scalar).ok_or_else(bad)?;
            out.add_term(l, k, c);
        }
        if let Some(k) = value.get("kappa") {
            out.kappa = k.as_str().and_then(parse_scalar).ok_or_else(bad)?;
        }
        Ok(out)
    }
}

impl<S: Scalar> fmt::Display for DOp<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.terms.iter().map(|(&(l, k), c)| format!("({c}) J^{l}_{k}")).collect();
        if !self.kappa.is_zero() {
            parts.push(format!("({}) κ", self.kappa));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

/// `Ψ(J^{l1}_{k1}, J^{l2}_{k2})`, the residue formula evaluated in closed form.
///
/// With `f = -t^a`, `g = -t^b` the integrand `f^{(n+1)} g^{(m)}` is a single
/// power of `t`, so the residue is nonzero only when `a + b = m + n`.
pub fn cocycle<S: Scalar>(l1: u32, k1: i64, l2: u32, k2: i64) -> S {
    let (m, n) = (l1 as u64, l2 as u64);
    let (a, b) = (l1 as i64 + k1, l2 as i64 + k2);
    if a + b != (m + n) as i64 {
        return S::zero();
    }
    factorial::<S>(m) * factorial::<S>(n) / factorial::<S>(m + n + 1) * falling::<S>(a, n + 1) * falling::<S>(b, m)
}

/// Bilinear extension of [`cocycle`] to arbitrary elements.
pub fn cocycle_dop<S: Scalar>(x: &DOp<S>, y: &DOp<S>) -> S {
    let mut out = S::zero();
    for ((l1, k1), c1) in x.iter() {
        for ((l2, k2), c2) in y.iter() {
            out = out + c1.clone() * c2.clone() * cocycle::<S>(l1, k1, l2, k2);
        }
    }
    out
}

/// Product `t^a ∂^m ∘ t^b ∂^n` as a map from `(order, power)` to coefficients.
fn compose<S: Scalar>(a: i64, m: u32, b: i64, n: u32) -> Vec<(u32, i64, S)> {
    (0..=m)
        .map(|j| {
            let c = binomial::<S>(m as i64, j as u64) * falling::<S>(b, j as u64);
            (m + n - j, a + b - j as i64, c)
        })
        .filter(|(_, _, c)| !c.is_zero())
        .collect()
}

/// `[J^{l1}_{k1}, J^{l2}_{k2}]` in D̂, including the central term.
pub fn basis_bracket<S: Scalar>(l1: u32, k1: i64, l2: u32, k2: i64) -> DOp<S> {
    let (a, b) = (l1 as i64 + k1, l2 as i64 + k2);
    let mut out = DOp::zero();
    // J^{l1}_{k1} J^{l2}_{k2} = t^a ∂^{l1} ∘ t^b ∂^{l2}, and t^e ∂^p = -J^p_{e-p}.
    for (p, e, c) in compose::<S>(a, l1, b, l2) {
        out.add_term(p, e - p as i64, -c);
    }
    for (p, e, c) in compose::<S>(b, l2, a, l1) {
        out.add_term(p, e - p as i64, c);
    }
    out.kappa = cocycle(l1, k1, l2, k2);
    out
}

/// Lie bracket of D̂. κ is central, so only the `J` parts interact.
pub fn d_bracket<S: Scalar>(x: &DOp<S>, y: &DOp<S>) -> DOp<S> {
    let mut out = DOp::zero();
    for ((l1, k1), c1) in x.iter() {
        for ((l2, k2), c2) in y.iter() {
            out.add_scaled(&(c1.clone() * c2.clone()), &basis_bracket(l1, k1, l2, k2));
        }
    }
    out
}

/// Field-convention mode label: `J^l(k) = J^l_{k-l}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex {
    pub l: u32,
    pub k: i64,
}

impl ModeIndex {
    pub fn new(l: u32, k: i64) -> Self {
        Self { l, k }
    }

    pub fn from_basis(l: u32, k: i64) -> Self {
        Self { l, k: k + l as i64 }
    }

    /// The `(l, k)` of the corresponding `J^l_k`.
    pub fn to_basis(self) -> (u32, i64) {
        (self.l, self.k - self.l as i64)
    }

    /// Weight shift of the mode acting on a graded module.
    pub fn weight_shift(self) -> i64 {
        self.l as i64 - self.k
    }

    /// Internal grading of D̂, under which `J^l_k` has weight `k`.
    pub fn d_weight(self) -> i64 {
        self.to_basis().1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    type Q = BigRational;

    #[test]
    fn heisenberg_bracket() {
        for k in -4..=4 {
            for m in -4..=4 {
                let br = basis_bracket::<Q>(0, k, 0, m);
                let expected = if k + m == 0 { DOp::central(Q::from_int(k)) } else { DOp::zero() };
                assert_eq!(br, expected);
            }
        }
    }

    #[test]
    fn euler_operator() {
        // [-t∂, -t^k] = k t^k = -k J^0_k
        let br = basis_bracket::<Q>(1, 0, 0, 3);
        assert_eq!(br, DOp::basis(0, 3).scaled(&Q::from_int(-3)));
    }

    #[test]
    fn cocycle_values() {
        assert_eq!(cocycle::<Q>(0, 3, 0, -3), Q::from_int(3));
        assert_eq!(cocycle::<Q>(0, 2, 0, 1), Q::from_int(0));
        assert_eq!(cocycle::<Q>(1, 2, 1, -2) + cocycle::<Q>(1, -2, 1, 2), Q::from_int(0));
    }

    #[test]
    fn mode_index_round_trip() {
        let m = ModeIndex::new(3, 1);
        assert_eq!(m.to_basis(), (3, -2));
        assert_eq!(ModeIndex::from_basis(3, -2), m);
        assert_eq!(m.weight_shift(), 2);
    }

    #[test]
    fn json_round_trip() {
        let mut x = DOp::<Q>::basis(2, -1).scaled(&Q::ratio(3, 4));
        x.add_scaled(&Q::one(), &DOp::central(Q::from_int(-2)));
        assert_eq!(DOp::from_json(&x.to_json()).unwrap(), x);
    }
}
