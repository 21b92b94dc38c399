use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, rank, Scalar, SparseMatrix, SparseVector};
use crate::fock::{basis, gr_basis, AlgebraDescriptor, Bidegree, ChargeFilter, GrMonomial, GrSymbol, Monomial, State};

/// A character `g ↦ ζ^{weights}` of a cyclic factor of order `order`,
/// acting diagonally on V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub order: u64,
    pub weights: Vec<i64>,
}

/// How a group acts on V (and hence on every free-field algebra over V).
#[derive(Clone, Debug, PartialEq)]
pub enum GroupAction<S> {
    /// Diagonal torus; row `r` of the `m×n` matrix holds the weights of the
    /// r-th circle on the coordinates of V.
    Torus(Vec<Vec<i64>>),
    /// Product of cyclic groups acting diagonally.
    FiniteAbelian(Vec<Character>),
    /// Invariants are the joint kernel of the listed `n×n` matrices.
    LieAlgebra(Vec<Vec<Vec<S>>>),
}

impl<S: Scalar> GroupAction<S> {
    pub fn trivial() -> Self {
        GroupAction::LieAlgebra(Vec::new())
    }

    /// `sl₂` in its standard representation on `C²`, as `{e, f, h}`.
    pub fn sl2() -> Self {
        let m = |a: i64, b: i64, c: i64, d: i64| {
            vec![vec![S::from_int(a), S::from_int(b)], vec![S::from_int(c), S::from_int(d)]]
        };
        GroupAction::LieAlgebra(vec![m(0, 1, 0, 0), m(0, 0, 1, 0), m(1, 0, 0, -1)])
    }

    /// Checks that the action is on `C^rank`.
    pub fn validate(&self, rank: u32) -> Result<()> {
        let n = rank as usize;
        let check = |len: usize| {
            if len == n {
                Ok(())
            } else {
                Err(Error::DimensionMismatch { expected: n, found: len })
            }
        };
        match self {
            GroupAction::Torus(rows) => rows.iter().try_for_each(|r| check(r.len())),
            GroupAction::FiniteAbelian(chars) => chars.iter().try_for_each(|c| {
                if c.order == 0 {
                    return Err(Error::InvalidArgument("character order must be positive".into()));
                }
                check(c.weights.len())
            }),
            GroupAction::LieAlgebra(ms) => ms.iter().try_for_each(|x| {
                check(x.len())?;
                x.iter().try_for_each(|row| check(row.len()))
            }),
        }
    }

    /// For a torus, whether the charge matrix has full row rank. Other
    /// actions are taken as given.
    pub fn is_faithful(&self) -> bool {
        match self {
            GroupAction::Torus(rows) if !rows.is_empty() => {
                let dense: Vec<Vec<S>> = rows.iter().map(|r| r.iter().map(|&a| S::from_int(a)).collect()).collect();
                rank(&SparseMatrix::from_dense(&dense)) == rows.len()
            }
            _ => true,
        }
    }

    fn fixes_charge(&self, charge: impl Fn(&[Vec<i64>]) -> Vec<i64>) -> bool {
        match self {
            GroupAction::Torus(rows) => charge(rows).iter().all(|&q| q == 0),
            GroupAction::FiniteAbelian(chars) => chars
                .iter()
                .all(|c| charge(std::slice::from_ref(&c.weights))[0].rem_euclid(c.order as i64) == 0),
            GroupAction::LieAlgebra(_) => true,
        }
    }

    /// Whether `s` is fixed by the action.
    pub fn is_invariant(&self, s: &State<S>) -> bool {
        match self {
            GroupAction::LieAlgebra(ms) => ms.iter().all(|x| Derivation::new(x.clone()).apply(s).is_zero()),
            _ => s.monomials().all(|m| self.fixes_charge(|c| m.charge(c))),
        }
    }
}

/// The infinitesimal action of `X ∈ gl(V)`: `β^x ↦ β^{Xx}`, `γ^x ↦ -γ^{Xᵀx}`
/// on generators, extended as an even derivation mode by mode.
#[derive(Clone, Debug)]
pub struct Derivation<S> {
    x: Vec<Vec<S>>,
}

impl<S: Scalar> Derivation<S> {
    pub fn new(x: Vec<Vec<S>>) -> Self {
        Self { x }
    }

    /// Image of coordinate `j` (1-based) as `(i, coefficient)` pairs.
    fn image(&self, vector_like: bool, j: u32) -> Vec<(u32, S)> {
        let j = j as usize - 1;
        (0..self.x.len())
            .filter_map(|i| {
                let c = if vector_like { self.x[i][j].clone() } else { -self.x[j][i].clone() };
                (!c.is_zero()).then(|| (i as u32 + 1, c))
            })
            .collect()
    }

    /// The scalar by which a monomial is multiplied, if `X` is diagonal.
    fn diagonal_eigenvalue<'a>(&self, indices: impl Iterator<Item = (bool, u32)> + 'a) -> Option<S> {
        let n = self.x.len();
        let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || self.x[i][j].is_zero()));
        diagonal.then(|| {
            indices.fold(S::zero(), |acc, (vector_like, j)| {
                let d = self.x[j as usize - 1][j as usize - 1].clone();
                if vector_like {
                    acc + d
                } else {
                    acc - d
                }
            })
        })
    }

    pub fn apply_monomial(&self, m: &Monomial) -> State<S> {
        let mut out = State::zero();
        let factors = m.factors();
        for (p, g) in factors.iter().enumerate() {
            for (i, c) in self.image(g.species.is_vector_like(), g.index) {
                let mut word = factors.to_vec();
                word[p].index = i;
                if let Some((sign, mono)) = Monomial::from_word(word) {
                    out.add_term(mono, c * S::from_int(sign));
                }
            }
        }
        out
    }

    pub fn apply(&self, s: &State<S>) -> State<S> {
        let mut out = State::zero();
        for (m, c) in s.iter() {
            out.add_scaled(c, &self.apply_monomial(m));
        }
        out
    }

    /// The same derivation on the symbol ring.
    pub fn apply_gr(&self, m: &GrMonomial) -> BTreeMap<GrMonomial, S> {
        let mut out: BTreeMap<GrMonomial, S> = BTreeMap::new();
        let symbols = m.symbols();
        for (p, s) in symbols.iter().enumerate() {
            for (i, c) in self.image(s.species.is_vector_like(), s.index) {
                let mut word: Vec<GrSymbol> = symbols.to_vec();
                word[p].index = i;
                if let Some((sign, mono)) = GrMonomial::from_word(word) {
                    let e = out.entry(mono).or_insert_with(S::zero);
                    *e = e.clone() + c * S::from_int(sign);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// The operator on states induced by `X`.
pub fn extend_action<S: Scalar>(x: &[Vec<S>], s: &State<S>) -> State<S> {
    Derivation::new(x.to_vec()).apply(s)
}

/// Joint kernel of derivations on a monomial basis. Diagonal operators are
/// handled by discarding monomials with nonzero eigenvalue.
fn joint_kernel<S: Scalar, M: Ord + Clone>(
    ops: &[Derivation<S>],
    mut monomials: Vec<M>,
    indices: impl Fn(&M) -> Vec<(bool, u32)>,
    apply: impl Fn(&Derivation<S>, &M) -> Vec<(M, S)>,
) -> (Vec<M>, Vec<SparseVector<S>>) {
    let mut rest = Vec::new();
    for op in ops {
        if op.diagonal_eigenvalue(std::iter::empty()).is_some() {
            monomials.retain(|m| op.diagonal_eigenvalue(indices(m).into_iter()).is_some_and(|e| e.is_zero()));
        } else {
            rest.push(op);
        }
    }
    let mut rows: BTreeMap<(usize, M), usize> = BTreeMap::new();
    let mut columns = Vec::with_capacity(monomials.len());
    for m in &monomials {
        let mut col = Vec::new();
        for (o, op) in rest.iter().enumerate() {
            for (target, c) in apply(op, m) {
                let next = rows.len();
                col.push((*rows.entry((o, target)).or_insert(next), c));
            }
        }
        columns.push(col);
    }
    let cols: Vec<SparseVector<S>> =
        columns.into_iter().map(|c| SparseVector::from_entries(rows.len(), c)).collect();
    let kernel = kernel_basis(&SparseMatrix::from_columns(rows.len(), &cols));
    (monomials, kernel)
}

fn monomial_indices(m: &Monomial) -> Vec<(bool, u32)> {
    m.factors().iter().map(|g| (g.species.is_vector_like(), g.index)).collect()
}

fn gr_indices(m: &GrMonomial) -> Vec<(bool, u32)> {
    m.symbols().iter().map(|s| (s.species.is_vector_like(), s.index)).collect()
}

/// Basis of the invariant states of one bidegree.
pub fn invariant_basis<S: Scalar>(action: &GroupAction<S>, alg: &AlgebraDescriptor, bd: Bidegree) -> Result<Vec<State<S>>> {
    action.validate(alg.rank)?;
    match action {
        GroupAction::Torus(rows) => {
            let filter = ChargeFilter::invariant(rows.clone());
            Ok(basis(alg, bd, Some(&filter)).into_iter().map(State::monomial).collect())
        }
        GroupAction::FiniteAbelian(_) => Ok(basis(alg, bd, None)
            .into_iter()
            .filter(|m| action.fixes_charge(|c| m.charge(c)))
            .map(State::monomial)
            .collect()),
        GroupAction::LieAlgebra(ms) => {
            let ops: Vec<Derivation<S>> = ms.iter().cloned().map(Derivation::new).collect();
            let (monomials, kernel) = joint_kernel(&ops, basis(alg, bd, None), monomial_indices, |op, m| {
                op.apply_monomial(m).iter().map(|(t, c)| (t.clone(), c.clone())).collect()
            });
            Ok(kernel.iter().map(|v| State::from_vector(v, &monomials)).collect())
        }
    }
}

/// Dimension of the invariant part of one graded piece of the symbol ring.
pub fn gr_invariant_dim<S: Scalar>(action: &GroupAction<S>, alg: &AlgebraDescriptor, bd: Bidegree) -> Result<usize> {
    action.validate(alg.rank)?;
    let monomials = gr_basis(alg, bd);
    match action {
        GroupAction::LieAlgebra(ms) => {
            let ops: Vec<Derivation<S>> = ms.iter().cloned().map(Derivation::new).collect();
            let (_, kernel) = joint_kernel(&ops, monomials, gr_indices, |op, m| op.apply_gr(m).into_iter().collect());
            Ok(kernel.len())
        }
        _ => Ok(monomials.iter().filter(|m| action.fixes_charge(|c| m.charge(c))).count()),
    }
}

/// Bigraded dimensions up to the recorded caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimTable {
    pub max_weight: i64,
    pub max_degree: usize,
    pub dims: BTreeMap<Bidegree, usize>,
}

impl DimTable {
    pub fn get(&self, weight: i64, degree: usize) -> Option<usize> {
        self.dims.get(&Bidegree::new(weight, degree)).copied()
    }

    /// CSV with one row per bidegree comparing against a second table.
    pub fn comparison_csv(&self, other: &DimTable) -> String {
        let mut out = String::from("weight,degree,dim_state_side,dim_gr_side,equal\n");
        for (bd, &a) in &self.dims {
            let b = other.dims.get(bd).copied();
            let shown = b.map(|b| b.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{},{},{}\n", bd.weight, bd.degree, a, shown, b == Some(a)));
        }
        out
    }
}

fn table(max_weight: i64, max_degree: usize, mut dim: impl FnMut(Bidegree) -> Result<usize>) -> Result<DimTable> {
    let mut dims = BTreeMap::new();
    for w in 0..=max_weight {
        for d in 0..=max_degree {
            let bd = Bidegree::new(w, d);
            dims.insert(bd, dim(bd)?);
        }
    }
    Ok(DimTable { max_weight, max_degree, dims })
}

/// Invariant dimensions computed on states.
pub fn dim_table<S: Scalar>(
    action: &GroupAction<S>,
    alg: &AlgebraDescriptor,
    max_weight: i64,
    max_degree: usize,
) -> Result<DimTable> {
    table(max_weight, max_degree, |bd| Ok(invariant_basis(action, alg, bd)?.len()))
}

/// Invariant dimensions computed on the polynomial ring of symbols.
pub fn gr_dim_table<S: Scalar>(
    action: &GroupAction<S>,
    alg: &AlgebraDescriptor,
    max_weight: i64,
    max_degree: usize,
) -> Result<DimTable> {
    table(max_weight, max_degree, |bd| gr_invariant_dim(action, alg, bd))
}
