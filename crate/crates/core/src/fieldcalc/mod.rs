//! Circle products `a∘_n b` on states via the state–field correspondence.
//!
//! For a monomial `A = u(-m-1)·A'` with leading factor `u`, the field of `A`
//! is the Wick product of `U = ∂^m u / m!` with the field of `A'`, and
//!
//! ```text
//! A(p) C = Σ_{j≥0} U_(-1-j) A'(p+j) C  +  (-1)^{|u||A'|} Σ_{j≥0} A'(p-1-j) U_(j) C
//! ```
//!
//! where `U_(q) = (-1)^m C(q, m) u(q-m)`. Both sums are finite: the first
//! because states have non-negative weight, the second because only
//! annihilation modes whose partner occurs in `C` act nontrivially. The
//! recursion bottoms out at the vacuum, `1(p) C = δ_{p,-1} C`.

mod identities;
mod ope;

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::exactla::{binomial, Scalar};
use crate::fock::{apply_mode, apply_mode_monomial, GeneratorMode, Monomial, State};

pub use identities::{
    check_identities, identity_suite, random_state, IdentityCheck, IdentityReport, SuiteFailure, SuiteReport,
};
pub use ope::OpeTable;

type MemoKey = (Monomial, i32, Monomial);

/// Circle-product engine with a memo table for monomial-level products.
///
/// The memo only caches exact results, so sharing one engine between
/// unrelated computations is safe.
pub struct FieldCalc<S> {
    memo: Mutex<HashMap<MemoKey, State<S>>>,
}

impl<S: Scalar> Default for FieldCalc<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> FieldCalc<S> {
    pub fn new() -> Self {
        Self { memo: Mutex::new(HashMap::new()) }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.lock().unwrap().len()
    }

    /// `a∘_n b`, i.e. the n-th Fourier mode of the field of `a` applied to `b`.
    pub fn circle(&self, a: &State<S>, n: i32, b: &State<S>) -> State<S> {
        let mut out = State::zero();
        for (am, ac) in a.iter() {
            for (bm, bc) in b.iter() {
                let r = self.mode_monomial(am, n, bm);
                out.add_scaled(&(ac.clone() * bc.clone()), &r);
            }
        }
        out
    }

    pub fn wick(&self, a: &State<S>, b: &State<S>) -> State<S> {
        self.circle(a, -1, b)
    }

    /// Right-nested iterated Wick product `:a_1 (:a_2 (... a_k):):`.
    pub fn nprod(&self, factors: &[State<S>]) -> Result<State<S>> {
        let (last, init) = factors.split_last().ok_or(Error::Empty)?;
        Ok(init.iter().rev().fold(last.clone(), |acc, a| self.wick(a, &acc)))
    }

    /// The mode `p` of the field of monomial `a` applied to monomial `c`.
    pub fn mode_monomial(&self, a: &Monomial, p: i32, c: &Monomial) -> State<S> {
        let Some((u, rest)) = a.split_first() else {
            return if p == -1 { State::monomial(c.clone()) } else { State::zero() };
        };
        if a.weight() + c.weight() - p as i64 - 1 < 0 {
            return State::zero();
        }
        let key = (a.clone(), p, c.clone());
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return hit.clone();
        }

        let m = (-u.mode - 1) as i64;
        let mut out = State::zero();

        let jmax = rest.weight() + c.weight() - p as i64 - 1;
        for j in 0..=jmax.max(-1) {
            let inner = self.mode_monomial(&rest, p + j as i32, c);
            if inner.is_zero() {
                continue;
            }
            let create = GeneratorMode::new(u.species, u.index, (-1 - j - m) as i32);
            out.add_scaled(&binomial::<S>(j + m, m as u64), &apply_mode(&create, &inner));
        }

        let sign: i64 = if u.is_odd() && rest.is_odd() { -1 } else { 1 };
        let sign = if m % 2 == 1 { -sign } else { sign };
        let mut seen = Vec::new();
        for f in c.factors() {
            if f.species != u.species.partner() || f.index != u.index || seen.contains(&f.mode) {
                continue;
            }
            seen.push(f.mode);
            let q = -f.mode - 1;
            let j = q as i64 + m;
            let annihilate = GeneratorMode::new(u.species, u.index, q);
            let Some((k, reduced)) = apply_mode_monomial(&annihilate, c) else { continue };
            let inner = self.mode_monomial(&rest, p - 1 - j as i32, &reduced);
            let coeff = binomial::<S>(j, m as u64) * S::from_int(sign * k);
            out.add_scaled(&coeff, &inner);
        }

        self.memo.lock().unwrap().insert(key, out.clone());
        out
    }

    pub fn ope_table(&self, a: &State<S>, b: &State<S>) -> Result<OpeTable<S>> {
        let bound = a.weight()? + b.weight()? + 1;
        let mut poles = Vec::new();
        for n in 0..bound.max(0) {
            let r = self.circle(a, n as i32, b);
            if !r.is_zero() {
                poles.push((n as u32 + 1, r));
            }
        }
        Ok(OpeTable { locality_bound: bound.max(0) as u32, poles })
    }
}

/// Translation operator: `u(-m) ↦ m·u(-m-1)` on each factor.
pub fn derive<S: Scalar>(a: &State<S>) -> State<S> {
    let mut out = State::zero();
    for (mono, c) in a.iter() {
        let factors = mono.factors();
        for i in 0..factors.len() {
            let g = factors[i];
            let mut word = factors.to_vec();
            word[i] = GeneratorMode::new(g.species, g.index, g.mode - 1);
            if let Some((sign, m2)) = Monomial::from_word(word) {
                out.add_term(m2, c.clone() * S::from_int(sign * (-g.mode) as i64));
            }
        }
    }
    out
}

pub fn derive_n<S: Scalar>(a: &State<S>, k: u32) -> State<S> {
    (0..k).fold(a.clone(), |acc, _| derive(&acc))
}

pub fn circle<S: Scalar>(a: &State<S>, n: i32, b: &State<S>) -> State<S> {
    FieldCalc::new().circle(a, n, b)
}

pub fn wick<S: Scalar>(a: &State<S>, b: &State<S>) -> State<S> {
    FieldCalc::new().wick(a, b)
}

pub fn nprod<S: Scalar>(factors: &[State<S>]) -> Result<State<S>> {
    FieldCalc::new().nprod(factors)
}

pub fn ope_table<S: Scalar>(a: &State<S>, b: &State<S>) -> Result<OpeTable<S>> {
    FieldCalc::new().ope_table(a, b)
}

/// The conformal vector `Σ_i :β^i ∂γ^i:` of S(C^n).
pub fn virasoro<S: Scalar>(rank: u32) -> State<S> {
    use crate::fock::Species;
    let calc = FieldCalc::new();
    let mut out = State::zero();
    for i in 1..=rank {
        let beta = State::from_modes(&[GeneratorMode::new(Species::Beta, i, -1)]);
        let gamma = State::from_modes(&[GeneratorMode::new(Species::Gamma, i, -1)]);
        out = out.add(&calc.wick(&beta, &derive(&gamma)));
    }
    out
}
