//! Exact computations with finite-dimensional nilpotent Lie algebras over ℚ
//! and prime fields: central series, free nilpotent algebras on Hall bases,
//! Schur multipliers, exterior centers and capability.

pub mod catalog;
pub mod classify;
pub mod error;
pub mod field;
pub mod format;
pub mod freelie;
pub mod liealg;
pub mod linalg;
pub mod schur;

pub use catalog::CatalogId;
pub use classify::{Fingerprint, Report, Rule, Verdict};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use format::AlgebraFile;
pub use freelie::FreeNilpotent;
pub use liealg::{Element, Hom, LieAlgebra};
pub use linalg::{Matrix, Subspace, Vector};
pub use schur::{HomologyReport, Presentation};
