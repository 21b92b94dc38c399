use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::Result;
use crate::exactla::{EchelonBasis, Scalar};
use crate::fock::{Monomial, State};
use crate::winf::Realization;

/// Dimensions of the three spans at one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicRow {
    pub weight: i64,
    pub all_words: usize,
    pub short_words: usize,
    pub ordered_words: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicReport {
    pub degree: usize,
    pub m: u32,
    pub rows: Vec<CyclicRow>,
}

impl CyclicReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.equal)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "weight": r.weight,
                    "all_words": r.all_words,
                    "short_words": r.short_words,
                    "ordered_words": r.ordered_words,
                    "equal": r.equal,
                })
            })
            .collect();
        json!({ "degree": self.degree, "m": self.m, "passed": self.passed(), "rows": rows })
    }
}

/// Largest `k` with `∂^k` of some generator occurring in `f`.
pub fn symbol_order<S: Scalar>(f: &State<S>) -> u32 {
    f.monomials().flat_map(|m| m.factors().iter().map(|g| (-g.mode - 1) as u32)).max().unwrap_or(0)
}

fn index_of<S: Scalar>(states: &[State<S>]) -> BTreeMap<Monomial, usize> {
    let mut index = BTreeMap::new();
    for m in states.iter().flat_map(|s| s.monomials()) {
        let next = index.len();
        index.entry(m.clone()).or_insert(next);
    }
    index
}

fn span_dim<S: Scalar>(states: &[State<S>], index: &BTreeMap<Monomial, usize>) -> Result<usize> {
    let mut e = EchelonBasis::new(index.len());
    for s in states {
        e.insert(&s.to_vector(index)?);
    }
    Ok(e.dim())
}

/// Replaces a generating set by a basis of its span.
fn prune<S: Scalar>(states: Vec<State<S>>) -> Result<Vec<State<S>>> {
    let index = index_of(&states);
    let order: Vec<Monomial> = {
        let mut v: Vec<(usize, Monomial)> = index.iter().map(|(m, i)| (*i, m.clone())).collect();
        v.sort();
        v.into_iter().map(|(_, m)| m).collect()
    };
    let mut e = EchelonBasis::new(index.len());
    for s in &states {
        e.insert(&s.to_vector(&index)?);
    }
    Ok(e.rows().map(|(_, v)| State::from_vector(v, &order)).collect())
}

/// Compares, weight by weight up to `weight_cap`, the spans of
/// (i) all words in the modes `J^l(k)`, `0 ≤ k < l`, applied to `f`,
/// (ii) such words of length at most `deg f`, and
/// (iii) words of length at most `deg f` with every `k ≤ 2m+1`, written in
/// non-increasing order (`J^{l1}(k1) > J^{l2}(k2)` iff `l1 > l2`, or
/// `l1 = l2` and `k1 < k2`).
///
/// For (i) and (ii), `k` is capped at `2(m + weight_cap) + 1`; every state
/// reached has symbols of order at most `m + weight_cap`, where larger `k`
/// adds nothing.
pub fn cyclic_span_check<S: Scalar>(real: &Realization<S>, f: &State<S>, m: u32, weight_cap: i64) -> Result<CyclicReport> {
    let d = f.degree()?;
    let w0 = f.weight()?;
    let k_all = 2 * (m as i64 + weight_cap) + 1;
    let k_ordered = 2 * m as i64 + 1;
    let apply = |shift: i64, k: i64, s: &State<S>| real.field_mode((shift + k) as u32, k, s);

    // (i) and (ii): spans by length, pruned to bases weight by weight
    let mut by_len: Vec<BTreeMap<i64, Vec<State<S>>>> = vec![BTreeMap::from([(w0, vec![f.clone()])])];
    let mut unbounded: BTreeMap<i64, Vec<State<S>>> = BTreeMap::from([(w0, vec![f.clone()])]);
    for w in (w0 + 1)..=weight_cap {
        let mut gen = Vec::new();
        for shift in 1..=(w - w0) {
            for b in unbounded.get(&(w - shift)).into_iter().flatten() {
                for k in 0..=k_all {
                    gen.push(apply(shift, k, b));
                }
            }
        }
        unbounded.insert(w, prune(gen)?);
    }
    for r in 1..=d {
        let prev = &by_len[r - 1];
        let mut next: BTreeMap<i64, Vec<State<S>>> = BTreeMap::new();
        for w in w0..=weight_cap {
            let mut gen: Vec<State<S>> = prev.get(&w).cloned().unwrap_or_default();
            for shift in 1..=(w - w0) {
                for b in prev.get(&(w - shift)).into_iter().flatten() {
                    for k in 0..=k_all {
                        gen.push(apply(shift, k, b));
                    }
                }
            }
            next.insert(w, prune(gen)?);
        }
        by_len.push(next);
    }
    let short = by_len.pop().unwrap_or_default();

    // (iii): explicit ordered words, built from the rightmost letter
    let mut ordered: BTreeMap<i64, Vec<State<S>>> = BTreeMap::from([(w0, vec![f.clone()])]);
    let mut frontier: Vec<(State<S>, i64, (i64, i64))> = vec![(f.clone(), w0, (i64::MIN, i64::MIN))];
    for _ in 0..d {
        let mut next = Vec::new();
        for (s, w, last) in &frontier {
            for shift in 1..=(weight_cap - w) {
                for k in 0..=k_ordered {
                    let key = (shift + k, -k);
                    if key < *last {
                        continue;
                    }
                    let image = apply(shift, k, s);
                    ordered.entry(w + shift).or_default().push(image.clone());
                    next.push((image, w + shift, key));
                }
            }
        }
        frontier = next;
    }

    let mut rows = Vec::new();
    for w in w0..=weight_cap {
        let (a, b, c) = (
            unbounded.get(&w).cloned().unwrap_or_default(),
            short.get(&w).cloned().unwrap_or_default(),
            ordered.get(&w).cloned().unwrap_or_default(),
        );
        let all: Vec<State<S>> = a.iter().chain(&b).chain(&c).cloned().collect();
        let index = index_of(&all);
        let (da, db, dc) = (span_dim(&a, &index)?, span_dim(&b, &index)?, span_dim(&c, &index)?);
        let joint = span_dim(&all, &index)?;
        rows.push(CyclicRow {
            weight: w,
            all_words: da,
            short_words: db,
            ordered_words: dc,
            equal: da == db && db == dc && dc == joint,
        });
    }
    Ok(CyclicReport { degree: d, m, rows })
}
