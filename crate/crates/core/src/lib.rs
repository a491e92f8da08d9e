//! Finite Cayley–Dickson algebras over `Z/nZ` and `GF(p^k)`: exact
//! arithmetic, unit and unimodular counting, character sums, and a finite
//! magma classifier.

pub mod algebra;
pub mod config;
pub mod counting;
pub mod error;
pub mod loops;
pub mod magma;
pub mod report;
pub mod ring;

pub use algebra::{CdAlgebra, CdElement, LoopIdentity};
pub use error::{Error, Result};
pub use ring::{Elem, Factorization, Ring, RingSpec};
pub use config::RunConfig;
pub use report::{Check, Report};
