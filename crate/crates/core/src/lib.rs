//! Exact computations with unit groups of finite group algebras and finite
//! matrix groups: Jacobson radicals, Wedderburn decompositions, factorization
//! into unipotent elements and commutator witnesses, all producing
//! certificates that can be rechecked independently.

pub mod algebra;
pub mod certificate;
pub mod error;
pub mod gafact;
pub mod gf;
pub mod job;
pub mod group;
pub mod json;
pub mod matrix;
pub mod nilfree;
pub mod slfact;
pub mod unitrad;
pub mod wedderburn;

pub use algebra::{Algebra, Element, RadicalData, UnipotentElement};
pub use error::{Error, Result};
pub use gafact::Structure;
pub use gf::{Fe, FiniteField};
pub use group::{FiniteGroup, TwoCocycle};
pub use matrix::{Matrix, UnipotentCertificate};
