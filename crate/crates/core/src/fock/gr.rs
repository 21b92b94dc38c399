//! Associated graded side: the supercommutative polynomial ring on symbols
//! `a_k ↔ ∂^k a`, with `∂^k a = k!·a(-k-1)|0⟩` state-side.

use std::collections::BTreeMap;
use std::fmt;

use super::{superscript, AlgebraDescriptor, Bidegree, Species, State};
use crate::error::Result;
use crate::exactla::{factorial, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrSymbol {
    pub species: Species,
    pub index: u32,
    pub order: u32,
}

impl GrSymbol {
    pub fn new(species: Species, index: u32, order: u32) -> Self {
        Self { species, index, order }
    }

    pub fn weight(&self) -> i64 {
        self.species.conformal_weight() + self.order as i64
    }

    pub fn is_odd(&self) -> bool {
        self.species.is_odd()
    }
}

impl fmt::Display for GrSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}_{}", self.species.glyph(), superscript(self.index as i64), self.order)
    }
}

/// Sorted multiset of symbols; odd symbols appear at most once.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrMonomial(Vec<GrSymbol>);

impl GrMonomial {
    pub fn one() -> Self {
        GrMonomial(Vec::new())
    }

    pub fn symbols(&self) -> &[GrSymbol] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().map(GrSymbol::weight).sum()
    }

    /// Sorts a word of symbols, tracking the sign from odd transpositions.
    pub fn from_word(mut word: Vec<GrSymbol>) -> Option<(i64, GrMonomial)> {
        let mut sign = 1;
        for i in 1..word.len() {
            let mut j = i;
            while j > 0 && word[j - 1] > word[j] {
                if word[j - 1].is_odd() && word[j].is_odd() {
                    sign = -sign;
                }
                word.swap(j - 1, j);
                j -= 1;
            }
        }
        if word.windows(2).any(|w| w[0] == w[1] && w[0].is_odd()) {
            return None;
        }
        Some((sign, GrMonomial(word)))
    }

    pub fn charge(&self, charges: &[Vec<i64>]) -> Vec<i64> {
        let mut out = vec![0i64; charges.len()];
        for s in &self.0 {
            let sign = if s.species.is_vector_like() { 1 } else { -1 };
            for (r, row) in charges.iter().enumerate() {
                out[r] += sign * row.get(s.index as usize - 1).copied().unwrap_or(0);
            }
        }
        out
    }
}

impl fmt::Display for GrMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrPolynomial<S> {
    terms: BTreeMap<GrMonomial, S>,
}

impl<S: Scalar> GrPolynomial<S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        let mut p = Self::zero();
        p.add_term(GrMonomial::one(), S::one());
        p
    }

    pub fn add_term(&mut self, m: GrMonomial, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        let sum = self.terms.get(&m).cloned().unwrap_or_else(S::zero) + coeff;
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GrMonomial, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &GrMonomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }
}

impl<S: Scalar> fmt::Display for GrPolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c}) {m}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Image of a degree-homogeneous state in its graded piece.
///
/// The canonical mode order (mode descending) matches the symbol order
/// (order ascending), so no reordering signs arise.
pub fn gr_symbol<S: Scalar>(s: &State<S>) -> Result<GrPolynomial<S>> {
    s.degree()?;
    let mut out = GrPolynomial::zero();
    for (m, c) in s.iter() {
        let mut coeff = c.clone();
        let mut word = Vec::with_capacity(m.degree());
        for g in m.factors() {
            let k = (-g.mode - 1) as u32;
            coeff = coeff / factorial::<S>(k as u64);
            word.push(GrSymbol::new(g.species, g.index, k));
        }
        out.add_term(GrMonomial(word), coeff);
    }
    Ok(out)
}

/// Monomials of the polynomial ring of given weight and degree, enumerated
/// directly on symbols.
pub fn gr_basis(alg: &AlgebraDescriptor, bd: Bidegree) -> Vec<GrMonomial> {
    let mut symbols = Vec::new();
    for &species in alg.kind.species() {
        for index in 1..=alg.rank {
            let mut order = 0u32;
            while species.conformal_weight() + order as i64 <= bd.weight {
                symbols.push(GrSymbol::new(species, index, order));
                order += 1;
            }
        }
    }
    symbols.sort();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, i64, Vec<GrSymbol>)> = vec![(0, bd.weight, Vec::new())];
    while let Some((start, left, word)) = stack.pop() {
        if word.len() == bd.degree {
            if left == 0 {
                out.push(GrMonomial(word));
            }
            continue;
        }
        for i in (start..symbols.len()).rev() {
            let s = symbols[i];
            if s.weight() > left {
                continue;
            }
            let mut w = word.clone();
            w.push(s);
            stack.push((if s.is_odd() { i + 1 } else { i }, left - s.weight(), w));
        }
    }
    out.sort();
    out
}
