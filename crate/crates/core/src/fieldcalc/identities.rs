//! Exhaustive checks of the four standard identities relating Wick
//! products and positive circle products (non-associativity,
//! non-commutativity, and the two derivation defects).

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use super::{derive_n, FieldCalc};
use crate::error::Result;
use crate::exactla::{binomial, factorial, Scalar};
use crate::fock::{basis, AlgebraDescriptor, Bidegree, State};

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck<S> {
    pub name: &'static str,
    pub lhs: State<S>,
    pub rhs: State<S>,
}

impl<S: Scalar> IdentityCheck<S> {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport<S> {
    pub checks: Vec<IdentityCheck<S>>,
}

impl<S: Scalar> IdentityReport<S> {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(IdentityCheck::holds)
    }

    pub fn mismatches(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.holds()).map(|c| c.name).collect()
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut v = json!({ "identity": c.name, "holds": c.holds() });
                if !c.holds() {
                    v["lhs"] = c.lhs.to_json();
                    v["rhs"] = c.rhs.to_json();
                }
                v
            })
            .collect();
        json!({ "all_hold": self.all_hold(), "checks": checks })
    }
}

fn inv_factorial<S: Scalar>(k: u64) -> S {
    S::one() / factorial::<S>(k)
}

/// Evaluates both sides of the four identities for `(a, b, c)` and mode
/// `n > 0`. `a` and `b` must have definite parity.
pub fn check_identities<S: Scalar>(
    calc: &FieldCalc<S>,
    a: &State<S>,
    b: &State<S>,
    c: &State<S>,
    n: i32,
) -> Result<IdentityReport<S>> {
    let sign = if a.parity()? && b.parity()? { -S::one() } else { S::one() };
    let (wa, wb, wc) = (a.max_weight(), b.max_weight(), c.max_weight());

    // :(:ab:)c: - :a(:bc:): = Σ_k 1/(k+1)! ( :(∂^{k+1}a)(b∘_k c): + ± :(∂^{k+1}b)(a∘_k c): )
    let lhs1 = calc.wick(&calc.wick(a, b), c).sub(&calc.wick(a, &calc.wick(b, c)));
    let mut rhs1 = State::zero();
    for k in 0..=(wb.max(wa) + wc) {
        let f = inv_factorial::<S>(k as u64 + 1);
        let t1 = calc.wick(&derive_n(a, k as u32 + 1), &calc.circle(b, k as i32, c));
        let t2 = calc.wick(&derive_n(b, k as u32 + 1), &calc.circle(a, k as i32, c));
        rhs1.add_scaled(&f, &t1);
        rhs1.add_scaled(&(f * sign.clone()), &t2);
    }

    // :ab: - ±:ba: = Σ_k (-1)^k/(k+1)! ∂^{k+1}(a∘_k b)
    let lhs2 = calc.wick(a, b).sub(&calc.wick(b, a).scaled(&sign));
    let mut rhs2 = State::zero();
    for k in 0..=(wa + wb) {
        let f = inv_factorial::<S>(k as u64 + 1);
        let f = if k % 2 == 1 { -f } else { f };
        rhs2.add_scaled(&f, &derive_n(&calc.circle(a, k as i32, b), k as u32 + 1));
    }

    // a∘_n(:bc:) - :(a∘_n b)c: - ±:b(a∘_n c): = Σ_{k=1}^n C(n,k) (a∘_{n-k} b)∘_{k-1} c
    let lhs3 = calc
        .circle(a, n, &calc.wick(b, c))
        .sub(&calc.wick(&calc.circle(a, n, b), c))
        .sub(&calc.wick(b, &calc.circle(a, n, c)).scaled(&sign));
    let mut rhs3 = State::zero();
    for k in 1..=n {
        let inner = calc.circle(a, n - k, b);
        rhs3.add_scaled(&binomial::<S>(n as i64, k as u64), &calc.circle(&inner, k - 1, c));
    }

    // (:ab:)∘_n c = Σ_k 1/k! :(∂^k a)(b∘_{n+k} c): + ± Σ_k b∘_{n-k-1}(a∘_k c)
    let lhs4 = calc.circle(&calc.wick(a, b), n, c);
    let mut rhs4 = State::zero();
    for k in 0..=(wb + wc - n as i64).max(0) {
        let t = calc.wick(&derive_n(a, k as u32), &calc.circle(b, n + k as i32, c));
        rhs4.add_scaled(&inv_factorial::<S>(k as u64), &t);
    }
    for k in 0..=(wa + wc) {
        let t = calc.circle(b, n - k as i32 - 1, &calc.circle(a, k as i32, c));
        rhs4.add_scaled(&sign, &t);
    }

    Ok(IdentityReport {
        checks: vec![
            IdentityCheck { name: "quasi-associativity", lhs: lhs1, rhs: rhs1 },
            IdentityCheck { name: "quasi-commutativity", lhs: lhs2, rhs: rhs2 },
            IdentityCheck { name: "left-derivation-defect", lhs: lhs3, rhs: rhs3 },
            IdentityCheck { name: "wick-circle-expansion", lhs: lhs4, rhs: rhs4 },
        ],
    })
}

/// Random state of the given bidegree and parity with small integer
/// coefficients; `None` when that homogeneous piece is empty.
pub fn random_state<S: Scalar, R: Rng + ?Sized>(
    alg: &AlgebraDescriptor,
    bd: Bidegree,
    odd: bool,
    rng: &mut R,
) -> Option<State<S>> {
    let monos: Vec<_> = basis(alg, bd, None).into_iter().filter(|m| m.is_odd() == odd).collect();
    if monos.is_empty() {
        return None;
    }
    let terms = rng.gen_range(1..=monos.len().min(3));
    let mut s = State::zero();
    for _ in 0..terms {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        let c = rng.gen_range(-3i64..=3);
        s.add_term(m, S::from_int(if c == 0 { 1 } else { c }));
    }
    if s.is_zero() {
        s.add_term(monos[0].clone(), S::one());
    }
    Some(s)
}

/// Outcome of [`identity_suite`].
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub trials: usize,
    pub failures: Vec<SuiteFailure>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteFailure {
    pub trial: usize,
    pub identities: Vec<&'static str>,
    pub a: Value,
    pub b: Value,
    pub c: Value,
    pub n: i32,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| json!({ "trial": f.trial, "identities": f.identities, "a": f.a, "b": f.b, "c": f.c, "n": f.n }))
            .collect();
        json!({ "trials": self.trials, "passed": self.passed(), "failures": failures })
    }
}

/// Checks the identities on `trials` random homogeneous triples with weight
/// at most `max_weight`, degree `1..=max_degree` and `n ∈ 1..=3`. Bidegrees
/// that happen to be empty are redrawn. Deterministic in `seed`.
pub fn identity_suite<S: Scalar>(
    alg: &AlgebraDescriptor,
    trials: usize,
    max_weight: i64,
    max_degree: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let mut rng = StdRng::seed_from_u64(seed);
    let calc = FieldCalc::new();
    let draw = |rng: &mut StdRng| loop {
        let bd = Bidegree::new(rng.gen_range(0..=max_weight), rng.gen_range(1..=max_degree.max(1)));
        if let Some(s) = random_state::<S, _>(alg, bd, rng.gen_bool(0.5), rng) {
            return s;
        }
    };
    let mut failures = Vec::new();
    for trial in 0..trials {
        let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let n = rng.gen_range(1..=3);
        let report = check_identities(&calc, &a, &b, &c, n)?;
        if !report.all_hold() {
            failures.push(SuiteFailure {
                trial,
                identities: report.mismatches(),
                a: a.to_json(),
                b: b.to_json(),
                c: c.to_json(),
                n,
            });
        }
    }
    Ok(SuiteReport { trials, failures })
}
