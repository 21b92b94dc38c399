use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::scalar::{parse_scalar, Scalar};
use crate::error::{Error, Result};

/// Sparse vector of fixed length. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVector<S> {
    len: usize,
    entries: BTreeMap<usize, S>,
}

impl<S: Scalar> SparseVector<S> {
    pub fn zeros(len: usize) -> Self {
        Self { len, entries: BTreeMap::new() }
    }

    pub fn from_dense(values: &[S]) -> Self {
        let mut v = Self::zeros(values.len());
        for (i, x) in values.iter().enumerate() {
            v.set(i, x.clone());
        }
        v
    }

    pub fn from_entries(len: usize, entries: impl IntoIterator<Item = (usize, S)>) -> Self {
        let mut v = Self::zeros(len);
        for (i, x) in entries {
            v.add_to(i, x);
        }
        v
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, S::one());
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> S {
        self.entries.get(&index).cloned().unwrap_or_else(S::zero)
    }

    pub fn set(&mut self, index: usize, value: S) {
        assert!(index < self.len, "index {index} out of range {}", self.len);
        if value.is_zero() {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
    }

    pub fn add_to(&mut self, index: usize, value: S) {
        let current = self.get(index);
        self.set(index, current + value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &S)> {
        self.entries.iter().map(|(i, x)| (*i, x))
    }

    pub fn to_dense(&self) -> Vec<S> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn leading(&self) -> Option<(usize, &S)> {
        self.entries.iter().next().map(|(i, x)| (*i, x))
    }

    pub fn scale(&mut self, factor: &S) {
        if factor.is_zero() {
            self.entries.clear();
            return;
        }
        for x in self.entries.values_mut() {
            *x = x.clone() * factor.clone();
        }
    }

    /// `self += factor * other`
    pub fn axpy(&mut self, factor: &S, other: &SparseVector<S>) {
        if factor.is_zero() {
            return;
        }
        for (i, x) in other.entries.iter() {
            let updated = self.get(*i) + factor.clone() * x.clone();
            if updated.is_zero() {
                self.entries.remove(i);
            } else {
                self.entries.insert(*i, updated);
            }
        }
    }

    pub fn dot(&self, other: &SparseVector<S>) -> S {
        let mut acc = S::zero();
        for (i, x) in self.entries.iter() {
            if let Some(y) = other.entries.get(i) {
                acc = acc + x.clone() * y.clone();
            }
        }
        acc
    }
}

/// Sparse matrix stored row-wise.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<SparseVector<S>>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: (0..rows).map(|_| SparseVector::zeros(cols)).collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<S>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVector<S>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        self.data[i].set(j, value);
    }

    pub fn add_to(&mut self, i: usize, j: usize, value: S) {
        self.data[i].add_to(j, value);
    }

    pub fn row(&self, i: usize) -> &SparseVector<S> {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVector::nnz).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        self.data.iter().map(SparseVector::to_dense).collect()
    }

    pub fn mul_vec(&self, x: &SparseVector<S>) -> Result<SparseVector<S>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        let mut out = SparseVector::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            out.set(i, row.dot(x));
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &SparseMatrix<S>) -> Result<SparseMatrix<S>> {
        if other.cols != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn to_json(&self) -> Value {
        let mut entries = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row.iter() {
                entries.push(json!([i, j, x.to_string()]));
            }
        }
        json!({ "rows": self.rows, "cols": self.cols, "entries": entries })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Format(format!("matrix json: {what}"));
        let rows = value["rows"].as_u64().ok_or_else(|| bad("missing rows"))? as usize;
        let cols = value["cols"].as_u64().ok_or_else(|| bad("missing cols"))? as usize;
        let mut m = Self::zeros(rows, cols);
        for entry in value["entries"].as_array().ok_or_else(|| bad("missing entries"))? {
            let i = entry[0].as_u64().ok_or_else(|| bad("row index"))? as usize;
            let j = entry[1].as_u64().ok_or_else(|| bad("col index"))? as usize;
            let x: S = entry[2].as_str().and_then(parse_scalar).ok_or_else(|| bad("scalar"))?;
            if i >= rows || j >= cols {
                return Err(bad("index out of range"));
            }
            m.add_to(i, j, x);
        }
        Ok(m)
    }
}
