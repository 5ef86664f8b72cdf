//! Monomial first integrals of diagonal linear systems, invariants of the
//! induced group action on parametric systems, and the resonance structure
//! behind Poincaré–Dulac normal forms, all computed exactly.

pub mod error;
pub mod exact_arith;
pub mod groebner;
pub mod hilbert;
pub mod intlin;
pub mod invariants;
pub mod normalform;
pub mod polyring;

pub use error::{Error, Result};

/// Point of N_0^n.
pub type ExponentVector = Vec<u32>;
