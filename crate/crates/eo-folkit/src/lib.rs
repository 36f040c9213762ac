//! Exact-arithmetic toolkit for the Ekedahl-Oort stratification of unitary
//! Shimura varieties of signature (n,m) at an inert prime: shuffle
//! combinatorics and the stratum poset, the explicit Dieudonne module at
//! the minimal sharp-locus stratum, first-order deformations certifying
//! the foliation rank and the stratum ideal, and finite-field counting
//! for the covering-degree identities.
//!
//! Everything is computed exactly: GF(p^2) arithmetic, echelon forms,
//! square-zero deformation rings, and big-integer counts. No floating
//! point anywhere.

pub mod counting;
pub mod deformation;
pub mod dieudonne;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod report;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
