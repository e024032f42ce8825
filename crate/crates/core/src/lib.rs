//! Exact certification of adjoint Hessenberg varieties against Schubert
//! varieties in the type A and type C flag varieties.

pub mod engine;
pub mod error;
pub mod hessenberg;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod roots;
pub mod weyl;

pub use error::{Error, Result};
