use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::{scalar_to_string, solve, Scalar, SparseMatrix, SparseVector};
use crate::fieldcalc::{derive_n, FieldCalc};
use crate::fock::{AlgebraDescriptor, Monomial, State};
use crate::winf::realize;

/// One factor `∂^t G_a` of a normally ordered word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordLetter {
    pub generator: usize,
    pub derivatives: u32,
}

/// Right-nested normally ordered product `:x_1 (:x_2 (··· x_r):):`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(pub Vec<WordLetter>);

impl FreeWord {
    /// Weight when generator `a` has weight `weights[a]`.
    pub fn weight(&self, weights: &[i64]) -> i64 {
        self.0.iter().map(|x| weights[x.generator] + x.derivatives as i64).sum()
    }

    /// Renders the word with generator names from `name`.
    pub fn notation(&self, name: impl Fn(usize) -> String) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|x| match x.derivatives {
                0 => name(x.generator),
                1 => format!("∂{}", name(x.generator)),
                t => format!("∂^{t}{}", name(x.generator)),
            })
            .collect();
        if parts.len() == 1 {
            parts[0].clone()
        } else {
            format!(":{}:", parts.join(" "))
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|x| json!([x.generator, x.derivatives])).collect())
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation(|a| format!("G{a}")))
    }
}

/// Every ordered word of exact weight `weight` with at least one letter.
///
/// Orderings that differ only by a permutation are all kept; they span the
/// same space modulo lower-order corrections, and the redundancy is harmless
/// for span and solve computations.
pub fn free_words(weights: &[i64], weight: i64, max_len: usize) -> Vec<FreeWord> {
    fn go(weights: &[i64], left: i64, max_len: usize, word: &mut Vec<WordLetter>, out: &mut Vec<FreeWord>) {
        if left == 0 && !word.is_empty() {
            out.push(FreeWord(word.clone()));
            return;
        }
        if word.len() == max_len {
            return;
        }
        for (a, &wa) in weights.iter().enumerate() {
            // weight-zero generators would allow unbounded words
            if wa <= 0 || wa > left {
                continue;
            }
            for t in 0..=(left - wa) as u32 {
                word.push(WordLetter { generator: a, derivatives: t });
                go(weights, left - wa - t as i64, max_len, word, out);
                word.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(weights, weight, max_len, &mut Vec::new(), &mut out);
    out
}

/// Evaluates free words on concrete generator states, memoizing suffixes.
pub struct WordEvaluator<S> {
    calc: FieldCalc<S>,
    generators: Vec<State<S>>,
    memo: Mutex<HashMap<Vec<WordLetter>, State<S>>>,
}

impl<S: Scalar> WordEvaluator<S> {
    pub fn new(generators: Vec<State<S>>) -> Self {
        Self { calc: FieldCalc::new(), generators, memo: Mutex::default() }
    }

    pub fn generators(&self) -> &[State<S>] {
        &self.generators
    }

    pub fn calc(&self) -> &FieldCalc<S> {
        &self.calc
    }

    fn eval_letters(&self, letters: &[WordLetter]) -> State<S> {
        let Some((first, rest)) = letters.split_first() else {
            return State::vacuum();
        };
        if let Some(hit) = self.memo.lock().unwrap().get(letters) {
            return hit.clone();
        }
        let head = derive_n(&self.generators[first.generator], first.derivatives);
        let out = if rest.is_empty() { head } else { self.calc.wick(&head, &self.eval_letters(rest)) };
        self.memo.lock().unwrap().insert(letters.to_vec(), out.clone());
        out
    }

    pub fn eval(&self, w: &FreeWord) -> State<S> {
        self.eval_letters(&w.0)
    }
}

/// An exact relation `J^target = Σ c_i · word_i` in lower generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Decoupling<S> {
    pub target: u32,
    pub weight: i64,
    pub relation: Vec<(FreeWord, S)>,
}

fn j_name(a: usize) -> String {
    format!("J^{a}")
}

impl<S: Scalar> Decoupling<S> {
    pub fn expression(&self) -> String {
        let rhs: Vec<String> =
            self.relation.iter().map(|(w, c)| format!("({}) {}", scalar_to_string(c), w.notation(j_name))).collect();
        format!("J^{} = {}", self.target, if rhs.is_empty() { "0".to_string() } else { rhs.join(" + ") })
    }

    pub fn to_json(&self) -> Value {
        let relation: Vec<Value> = self.relation.iter().map(|(w, c)| json!([w.to_json(), scalar_to_string(c)])).collect();
        json!({ "target": format!("J^{}", self.target), "weight": self.weight, "relation": relation })
    }

    /// Re-evaluates both sides in `S(C^n)`.
    pub fn verify(&self, n: u32) -> Result<bool> {
        let alg = AlgebraDescriptor::bg(n);
        let gens: Vec<State<S>> = (0..self.target).map(|a| realize(a, &alg)).collect::<Result<_>>()?;
        let eval = WordEvaluator::new(gens);
        let mut rhs = State::zero();
        for (w, c) in &self.relation {
            rhs.add_scaled(c, &eval.eval(w));
        }
        Ok(rhs == realize(self.target, &alg)?)
    }
}

/// Writes the realized `J^l` of `S(C^n)` as a combination of normally
/// ordered words in `J^0, ..., J^g` and their derivatives, if possible.
pub fn decouple<S: Scalar>(l: u32, n: u32, g: u32) -> Result<Option<Decoupling<S>>> {
    if l == 0 || g >= l {
        return Err(Error::InvalidArgument(format!("need 1 ≤ l and g ≤ l-1, got l={l}, g={g}")));
    }
    let alg = AlgebraDescriptor::bg(n);
    let gens: Vec<State<S>> = (0..=g).map(|a| realize(a, &alg)).collect::<Result<_>>()?;
    let weights: Vec<i64> = (0..=g as i64).map(|a| a + 1).collect();
    let target = realize::<S>(l, &alg)?;
    let weight = l as i64 + 1;
    let words = free_words(&weights, weight, weight as usize);
    let eval = WordEvaluator::new(gens);

    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let images: Vec<State<S>> = words.iter().map(|w| eval.eval(w)).collect();
    for m in images.iter().flat_map(|s| s.monomials()).chain(target.monomials()) {
        let next = index.len();
        index.entry(m.clone()).or_insert(next);
    }
    let columns: Vec<SparseVector<S>> = images.iter().map(|s| s.to_vector(&index)).collect::<Result<_>>()?;
    let matrix = SparseMatrix::from_columns(index.len(), &columns);
    let Some(x) = solve(&matrix, &target.to_vector(&index)?)? else {
        return Ok(None);
    };
    let relation = x.iter().map(|(i, c)| (words[i].clone(), c.clone())).collect();
    Ok(Some(Decoupling { target: l, weight, relation }))
}
