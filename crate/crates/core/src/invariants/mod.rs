//! Invariant rings at non-stable points: torus invariants of the quiver of
//! Ext groups between stable summands, SO(3) invariants of vector tuples,
//! and the polarized Cayley–Hamilton trace identity.

mod so3;
mod torus;
mod trace;

pub use so3::{
    matrix_to_vector, so3_eval_from_vectors, so3_verify_relations, trace_of_product, vector_to_matrix,
    Matrix2, SO3Table,
};
pub use torus::{
    certify_hilbert_basis, invariance_condition, invariant_monomial_hilbert_basis, invariant_presentation,
    toric_relations, InvariantPresentation, TorusActionSpec,
};
pub use trace::{
    characteristic_polynomial, polarized_trace_form, verify_polarized_trace_identity,
    verify_polarized_trace_identity_with, CharPolyMode,
};
