use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use serde_json::{json, Value};

use crate::exactla::{scalar_to_string, Scalar};
use crate::winf::{basis_bracket, DOp};

/// A basis element `J^l_s` of D̂, stored as `(l, s)`.
pub type Letter = (u32, i64);

/// Creation letters are the ones outside P̂, i.e. `l + s < 0`.
pub fn is_creation(x: Letter) -> bool {
    x.0 as i64 + x.1 < 0
}

/// Sort key for PBW words: larger `-s` first, then larger `l`.
fn key(x: Letter) -> (i64, u32) {
    (-x.1, x.0)
}

/// A PBW monomial `J^{l_1}_{s_1} ··· J^{l_r}_{s_r}` of creation letters in
/// descending order, standing for that product applied to the vacuum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwWord(Vec<Letter>);

impl PbwWord {
    pub fn vacuum() -> Self {
        PbwWord(Vec::new())
    }

    /// Sorts the letters; `None` if any letter is not a creation letter.
    pub fn new(mut letters: Vec<Letter>) -> Option<Self> {
        if !letters.iter().all(|&x| is_creation(x)) {
            return None;
        }
        letters.sort_by_key(|x| std::cmp::Reverse(key(*x)));
        Some(PbwWord(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().map(|x| -x.1).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|&(l, s)| json!([l, s])).collect())
    }
}

impl fmt::Display for PbwWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("|0⟩");
        }
        for (l, s) in &self.0 {
            write!(f, "J^{l}_{s} ")?;
        }
        f.write_str("|0⟩")
    }
}

/// Element of the vacuum module `M_c`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VermaElement<S> {
    terms: BTreeMap<PbwWord, S>,
}

impl<S: Scalar> VermaElement<S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn vacuum() -> Self {
        Self::word(PbwWord::vacuum())
    }

    pub fn word(w: PbwWord) -> Self {
        let mut out = Self::zero();
        out.add_term(w, S::one());
        out
    }

    pub fn add_term(&mut self, w: PbwWord, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        let sum = self.terms.get(&w).cloned().unwrap_or_else(S::zero) + coeff;
        if sum.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, sum);
        }
    }

    pub fn add_scaled(&mut self, factor: &S, other: &VermaElement<S>) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), factor.clone() * c.clone());
        }
    }

    pub fn scaled(&self, factor: &S) -> Self {
        let mut out = Self::zero();
        out.add_scaled(factor, self);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PbwWord, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &PbwWord) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(w, c)| json!([w.to_json(), scalar_to_string(c)])).collect())
    }
}

impl<S: Scalar> fmt::Display for VermaElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c}) {w}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// All PBW words of weight `n`, in canonical order.
pub fn verma_basis(n: i64) -> Vec<PbwWord> {
    fn go(left: i64, max: (i64, u32), word: &mut Vec<Letter>, out: &mut Vec<PbwWord>) {
        if left == 0 {
            out.push(PbwWord(word.clone()));
            return;
        }
        for k in (1..=left.min(max.0)).rev() {
            let top = if k == max.0 { max.1 } else { u32::MAX };
            for l in (0..k as u32).rev().filter(|&l| l <= top) {
                word.push((l, -k));
                go(left - k, (k, l), word, out);
                word.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n >= 0 {
        go(n, (n, u32::MAX), &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// The vacuum module of central charge `c`, with PBW straightening memoized
/// per (letter, word).
pub struct VermaModule<S> {
    c: S,
    memo: Mutex<HashMap<(Letter, PbwWord), VermaElement<S>>>,
}

impl<S: Scalar> VermaModule<S> {
    pub fn new(c: S) -> Self {
        Self { c, memo: Mutex::default() }
    }

    pub fn central_charge(&self) -> &S {
        &self.c
    }

    /// `J^l_s · (w |0⟩)` rewritten in the PBW basis.
    pub fn act_letter(&self, x: Letter, w: &PbwWord) -> VermaElement<S> {
        if w.weight() - x.1 < 0 {
            return VermaElement::zero();
        }
        let Some(&first) = w.0.first() else {
            return if is_creation(x) { VermaElement::word(PbwWord(vec![x])) } else { VermaElement::zero() };
        };
        if is_creation(x) && key(x) >= key(first) {
            let mut letters = Vec::with_capacity(w.len() + 1);
            letters.push(x);
            letters.extend_from_slice(&w.0);
            return VermaElement::word(PbwWord(letters));
        }
        let memo_key = (x, w.clone());
        if let Some(hit) = self.memo.lock().unwrap().get(&memo_key) {
            return hit.clone();
        }

        // x · first · rest = first · (x · rest) + [x, first] · rest
        let rest = PbwWord(w.0[1..].to_vec());
        let mut out = VermaElement::zero();
        for (w2, c2) in self.act_letter(x, &rest).iter() {
            out.add_scaled(c2, &self.act_letter(first, w2));
        }
        let br = basis_bracket::<S>(x.0, x.1, first.0, first.1);
        out.add_scaled(&(br.kappa().clone() * self.c.clone()), &VermaElement::word(rest.clone()));
        for (y, cy) in br.iter() {
            out.add_scaled(cy, &self.act_letter(y, &rest));
        }

        self.memo.lock().unwrap().insert(memo_key, out.clone());
        out
    }

    /// The induced action of `x ∈ D̂` on `v`, with κ acting as `c`.
    pub fn act(&self, x: &DOp<S>, v: &VermaElement<S>) -> VermaElement<S> {
        let mut out = v.scaled(&(x.kappa().clone() * self.c.clone()));
        for (y, cy) in x.iter() {
            for (w, cw) in v.iter() {
                out.add_scaled(&(cy.clone() * cw.clone()), &self.act_letter(y, w));
            }
        }
        out
    }
}

/// Convenience wrapper around [`VermaModule::act`].
pub fn induced_action<S: Scalar>(x: &DOp<S>, v: &VermaElement<S>, c: S) -> VermaElement<S> {
    VermaModule::new(c).act(x, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn basis_sizes() {
        let sizes: Vec<usize> = (0..=4).map(|n| verma_basis(n).len()).collect();
        assert_eq!(sizes, vec![1, 1, 3, 6, 13]);
        let two = verma_basis(2);
        assert!(two.contains(&PbwWord::new(vec![(0, -1), (0, -1)]).unwrap()));
        assert!(two.contains(&PbwWord::new(vec![(1, -2)]).unwrap()));
    }

    #[test]
    fn heisenberg_action() {
        let c = Q::ratio(-3, 2);
        let m = VermaModule::new(c.clone());
        let v = VermaElement::word(PbwWord::new(vec![(0, -1)]).unwrap());
        assert_eq!(m.act(&DOp::basis(0, 1), &v), VermaElement::vacuum().scaled(&c));
        let vv = VermaElement::word(PbwWord::new(vec![(0, -1), (0, -1)]).unwrap());
        assert!(m.act(&DOp::basis(0, 2), &vv).is_zero());
        for x in [(0, 0), (2, -1), (3, 4)] {
            assert!(m.act(&DOp::basis(x.0, x.1), &VermaElement::vacuum()).is_zero());
        }
    }

    #[test]
    fn straightening_is_a_representation() {
        // [x, y] acts as x y - y x on every word of weight ≤ 3
        let m = VermaModule::new(Q::ratio(5, 3));
        let letters = [(0, 1), (1, -3), (2, 1), (1, 0), (0, -2), (2, -1)];
        for n in 0..=3 {
            for w in verma_basis(n) {
                let v = VermaElement::word(w);
                for &x in &letters {
                    for &y in &letters {
                        let (dx, dy) = (DOp::basis(x.0, x.1), DOp::basis(y.0, y.1));
                        let mut lhs = m.act(&dx, &m.act(&dy, &v));
                        lhs.add_scaled(&Q::from_int(-1), &m.act(&dy, &m.act(&dx, &v)));
                        let rhs = m.act(&crate::winf::d_bracket(&dx, &dy), &v);
                        assert_eq!(lhs, rhs, "{x:?} {y:?}");
                    }
                }
            }
        }
    }
}
