//! Exact invariant theory of the reflection groups H3 and H4 over Q(√5),
//! the Frobenius prepotentials attached to them, and machinery to verify
//! polynomial identities between these objects.

pub mod algebra;
pub mod coxeter;
pub mod data;
pub mod frobenius;
pub mod invariants;
pub mod report;

pub use report::{Check, Status, VerifyReport};
