//! Exact local invariants of moduli spaces of semistable vector bundles on
//! curves, computed at non-stable points.
//!
//! Every quantity here is produced with exact rational arithmetic: tangent
//! space dimensions, tangent cone presentations, multiplicities, generators
//! and relations of invariant rings. Each closed form is paired with an
//! independent brute-force route (Hilbert function interpolation, explicit
//! contraction matrices, kernel computations) so that the two can be
//! compared.

pub mod algebra;
pub mod determinantal;
pub mod error;
pub mod invariants;
pub mod moduli_local;
pub mod special_models;

pub use error::{Error, Result};
