//! Reference computations that share no code with the library beyond the
//! `State`/`Monomial` containers.
#![allow(dead_code)]

use std::collections::BTreeMap;

use freefield::fock::{GeneratorMode, Monomial, Species};
use freefield::{Rational, State};
use num_traits::{One, Zero};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn fact(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * q(k))
}

/// `∂^k x^i` as `(species, index, k)`.
type Field = (Species, u32, u32);

/// Circle products of βγ states by Wick's theorem: sum over all partial
/// contractions between the fields of `a` at `z` and of `b` at `w` with
/// propagators `∂_z^p ∂_w^q (±1/(z-w))`, then Taylor-expand the leftover
/// fields at `z` around `w` and read off the coefficient of `(z-w)^{-n-1}`.
/// Bosonic fields only.
pub fn wick_circle(a: &State, n: i32, b: &State) -> State {
    let mut out = State::zero();
    for (ma, ca) in a.iter() {
        for (mb, cb) in b.iter() {
            let (fa, na) = fields(ma);
            let (fb, nb) = fields(mb);
            let mut used = vec![false; fb.len()];
            let mut acc = Vec::new();
            contract(&fa, 0, &fb, &mut used, Rational::one(), 0, &mut Vec::new(), &mut acc);
            for (coeff, poles, rest_a, rest_b) in acc {
                let j = poles as i64 - n as i64 - 1;
                if j < 0 {
                    continue;
                }
                let c = ca.clone() * cb.clone() * na.clone() * nb.clone() * coeff / fact(j as u32);
                for (dc, da) in leibniz(&rest_a, j as u32) {
                    let mut all = da;
                    all.extend_from_slice(&rest_b);
                    let (nc, m) = to_monomial(&all);
                    out.add_term(m, c.clone() * dc * nc);
                }
            }
        }
    }
    out
}

/// Fields of a monomial with the normalization `x(-k-1) = ∂^k x / k!`.
fn fields(m: &Monomial) -> (Vec<Field>, Rational) {
    let mut norm = Rational::one();
    let f = m
        .factors()
        .iter()
        .map(|g| {
            assert!(!g.species.is_odd(), "bosonic oracle");
            let k = (-g.mode - 1) as u32;
            norm /= fact(k);
            (g.species, g.index, k)
        })
        .collect();
    (f, norm)
}

fn to_monomial(fields: &[Field]) -> (Rational, Monomial) {
    let mut c = Rational::one();
    let word: Vec<GeneratorMode> = fields
        .iter()
        .map(|&(s, i, k)| {
            c *= fact(k);
            GeneratorMode::new(s, i, -(k as i32) - 1)
        })
        .collect();
    let (sign, m) = Monomial::from_word(word).expect("bosonic words never vanish");
    (c * q(sign), m)
}

/// `∂_z^p ∂_w^q` of the contraction of `x(z)` with `y(w)`.
fn propagator(x: Field, y: Field) -> Option<(Rational, u32)> {
    if x.1 != y.1 {
        return None;
    }
    let base = match (x.0, y.0) {
        (Species::Beta, Species::Gamma) => 1,
        (Species::Gamma, Species::Beta) => -1,
        _ => return None,
    };
    let (p, qd) = (x.2, y.2);
    let sign = if p % 2 == 0 { 1 } else { -1 };
    Some((q(base * sign) * fact(p + qd), 1 + p + qd))
}

#[allow(clippy::too_many_arguments)]
fn contract(
    fa: &[Field],
    i: usize,
    fb: &[Field],
    used: &mut Vec<bool>,
    coeff: Rational,
    poles: u32,
    rest_a: &mut Vec<Field>,
    out: &mut Vec<(Rational, u32, Vec<Field>, Vec<Field>)>,
) {
    if i == fa.len() {
        let rest_b = fb.iter().zip(used.iter()).filter(|(_, u)| !**u).map(|(f, _)| *f).collect();
        out.push((coeff, poles, rest_a.clone(), rest_b));
        return;
    }
    rest_a.push(fa[i]);
    contract(fa, i + 1, fb, used, coeff.clone(), poles, rest_a, out);
    rest_a.pop();
    for j in 0..fb.len() {
        if used[j] {
            continue;
        }
        if let Some((c, p)) = propagator(fa[i], fb[j]) {
            used[j] = true;
            contract(fa, i + 1, fb, used, coeff.clone() * c, poles + p, rest_a, out);
            used[j] = false;
        }
    }
}

/// `∂^j` of a product of fields, as (coefficient, fields) pairs.
fn leibniz(fields: &[Field], j: u32) -> Vec<(Rational, Vec<Field>)> {
    if fields.is_empty() {
        return if j == 0 { vec![(Rational::one(), Vec::new())] } else { Vec::new() };
    }
    let (head, tail) = fields.split_first().unwrap();
    let mut out = Vec::new();
    for a in 0..=j {
        let binom = fact(j) / (fact(a) * fact(j - a));
        for (c, mut rest) in leibniz(tail, j - a) {
            let mut f = vec![(head.0, head.1, head.2 + a)];
            f.append(&mut rest);
            out.push((binom.clone() * c, f));
        }
    }
    out
}

/// A family of free generators for the counting oracle: conformal weight
/// of the underived field, parity, and charge under one chosen torus
/// direction.
#[derive(Clone, Copy, Debug)]
pub struct Generator {
    pub weight: i64,
    pub odd: bool,
    pub charge: i64,
}

/// Number of monomials in the modes of `gens` by `(weight, degree, charge)`,
/// read off the generating function
/// `Π_gen Π_{k≥0} (1 - t q^{wt+k} u^{ch})^{∓1}`.
pub fn graded_counts(gens: &[Generator], max_weight: i64, max_degree: usize) -> BTreeMap<(i64, usize, i64), u64> {
    let mut table: BTreeMap<(i64, usize, i64), u64> = BTreeMap::from([((0, 0, 0), 1)]);
    for g in gens {
        for k in 0..=max_weight - g.weight {
            let wt = g.weight + k;
            let mut next: BTreeMap<(i64, usize, i64), u64> = BTreeMap::new();
            for (&(w, d, c), &count) in &table {
                let max_e = if g.odd { 1 } else { max_degree };
                for e in 0..=max_e {
                    let (w2, d2) = (w + e as i64 * wt, d + e);
                    if w2 > max_weight || d2 > max_degree {
                        break;
                    }
                    *next.entry((w2, d2, c + e as i64 * g.charge)).or_insert(0) += count;
                }
            }
            table = next;
        }
    }
    table
}

pub fn count(table: &BTreeMap<(i64, usize, i64), u64>, w: i64, d: usize, charge: i64) -> u64 {
    table.get(&(w, d, charge)).copied().unwrap_or(0)
}

/// β^i, γ^i (and b^i, c^i) of `S(C^n)`, `E(C^n)` with per-index charges.
pub fn free_generators(bosonic: bool, fermionic: bool, charges: &[i64]) -> Vec<Generator> {
    let mut out = Vec::new();
    for &c in charges {
        if bosonic {
            out.push(Generator { weight: 1, odd: false, charge: c });
            out.push(Generator { weight: 0, odd: false, charge: -c });
        }
        if fermionic {
            out.push(Generator { weight: 1, odd: true, charge: c });
            out.push(Generator { weight: 0, odd: true, charge: -c });
        }
    }
    out
}

pub fn is_zero(s: &State) -> bool {
    s.iter().all(|(_, c)| c.is_zero())
}
