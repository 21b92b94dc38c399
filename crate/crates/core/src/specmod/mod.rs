//! The vacuum module `M_c` of D̂, its singular vectors, the kernel of the
//! projection onto the free-field realization at `c = -n`, decoupling
//! relations among the realized generators, and cyclic spanning checks.

mod cyclic;
mod decouple;
mod singular;
mod verma;

pub use cyclic::{cyclic_span_check, symbol_order, CyclicReport, CyclicRow};
pub use decouple::{decouple, free_words, Decoupling, FreeWord, WordEvaluator, WordLetter};
pub use singular::{
    ideal_kernel, ideal_kernel_with, project_to_realization, singular_vectors, singular_vectors_default, Projector,
};
pub use verma::{induced_action, is_creation, verma_basis, Letter, PbwWord, VermaElement, VermaModule};
