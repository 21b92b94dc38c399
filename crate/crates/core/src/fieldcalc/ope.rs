use std::fmt;

use serde_json::{json, Value};

use crate::exactla::Scalar;
use crate::fock::State;

/// Singular part of `a(z)b(w)`: the nonzero `a∘_n b` for `0 <= n < locality_bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct OpeTable<S> {
    pub locality_bound: u32,
    /// `(n + 1, a∘_n b)`, ascending in pole order.
    pub poles: Vec<(u32, State<S>)>,
}

impl<S: Scalar> OpeTable<S> {
    pub fn pole(&self, order: u32) -> Option<&State<S>> {
        self.poles.iter().find(|(k, _)| *k == order).map(|(_, s)| s)
    }

    pub fn to_json(&self) -> Value {
        let poles: Vec<Value> = self.poles.iter().map(|(k, s)| json!([k, s.to_json()])).collect();
        json!({ "locality_bound": self.locality_bound, "poles": poles })
    }

    /// `a(z)b(w) ~ Σ (a∘_n b)(w) (z−w)^{−n−1}` with the given display names.
    pub fn display_with(&self, a: &str, b: &str) -> String {
        let mut s = format!("{a}(z){b}(w) ~ ");
        if self.poles.is_empty() {
            s.push('0');
            return s;
        }
        let terms: Vec<String> = self
            .poles
            .iter()
            .rev()
            .map(|(k, st)| format!("({})(w)(z−w)^{{−{k}}}", st.field_notation()))
            .collect();
        s.push_str(&terms.join(" + "));
        s
    }
}

impl<S: Scalar> fmt::Display for OpeTable<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("a", "b"))
    }
}
