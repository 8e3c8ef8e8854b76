//! Exact arithmetic kernel: Q(√5), sparse polynomials, localized elements,
//! small matrices and randomized identity testing.

pub mod compose;
pub mod error;
pub mod formula;
pub mod golden;
pub mod identity;
pub mod linalg;
pub mod locpoly;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod ring;
pub mod text;

pub use compose::Algebra;
pub use error::AlgebraError;
pub use formula::Formula;
pub use golden::{rat, rat_int, Golden, Rat};
pub use identity::{check_identity, check_proportional, Mode};
pub use locpoly::{Basis, DenomBasis, LocPoly};
pub use matrix::{jacobian_det, Matrix};
pub use modular::{ModCtx, Rng};
pub use poly::{DivisibilityFailure, NotHomogeneous, Poly, WeightedDegree};
pub use ring::{Mono, Ring, VarRing};
