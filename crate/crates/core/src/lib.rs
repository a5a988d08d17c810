//! Exact computations in affine and classical Temperley-Lieb algebras:
//! fully commutative bases, the tower maps between them, the Jones Markov
//! trace and the affine Markov trace obtained by pulling it back, and the
//! resulting invariant of affine braid closures.

pub mod algebra;
pub mod coeff;
pub mod coxeter;
mod error;
pub mod morphisms;
pub mod random;
pub mod traces;
pub mod verify;

pub use algebra::{GenStyle, TLElement};
pub use coeff::Scalar;
pub use coxeter::{CoxeterGraph, FcWord, GraphKind, Letter};
pub use error::{Error, Result};
