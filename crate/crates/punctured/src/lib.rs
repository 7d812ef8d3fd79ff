//! Exact chain-level homological algebra toolkit.
//!
//! Everything here computes over exact fields (`F_p` or arbitrary-precision
//! rationals): A-infinity categories with sparse structure constants, the
//! bimodule zoo (diagonal, linear duals, hom and finite-rank tensor
//! bimodules), Hochschild cochain complexes, bar tensor products with the
//! collapse quasi-isomorphism, Calkin (chain-complexes-mod-perfect) morphism
//! calculus, morphism complexes of the formal punctured neighborhood of
//! infinity, Drinfeld-quotient hom complexes, Koszul-duality criteria
//! reports, and the windowed Rabinowitz ring of the cotangent fiber in
//! `T*S^1` with its Laurent-series comparison map.
//!
//! Infinite graded objects are only ever materialized inside explicit
//! degree/weight/length windows; every complex carries truncation flags and
//! homology is reported only on uncontaminated degrees.


pub mod bar;
pub mod bimodule;
pub mod calkin;
pub mod fixtures;
pub mod gm;
pub mod hochschild;

pub mod category;
pub mod cinf;

pub mod complex;
pub mod error;
pub mod field;

pub mod graded;

pub mod matrix;



pub use error::KitError;
pub use field::{Field, Scalar};
