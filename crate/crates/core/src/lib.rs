//! Exact symbolic computation in free-field vertex algebras: the βγ-system
//! S(V), the bc-system E(V), and E(V)⊗S(V).
//!
//! Every module is generic over the coefficient field (see
//! [`exactla::Scalar`]); the aliases below fix it to arbitrary-precision
//! rationals, which is what all exact checks use.

pub mod error;
pub mod exactla;
pub mod fieldcalc;
pub mod fock;
pub mod invariants;
pub mod specmod;
pub mod winf;

pub use error::{Error, Result};

pub type Rational = num_rational::BigRational;
pub type State = fock::State<Rational>;
pub type SparseMatrix = exactla::SparseMatrix<Rational>;
pub type SparseVector = exactla::SparseVector<Rational>;
pub type FieldCalc = fieldcalc::FieldCalc<Rational>;
pub type OpeTable = fieldcalc::OpeTable<Rational>;
pub type DOp = winf::DOp<Rational>;
pub type VermaElement = specmod::VermaElement<Rational>;
pub type GroupAction = invariants::GroupAction<Rational>;
