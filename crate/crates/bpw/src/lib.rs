//! Exact computations in the Bershadsky-Polyakov vertex algebra at rational level.
//!
//! The crate is layered bottom-up: [`arith`] supplies rationals and polynomials,
//! [`modes`] the mode algebra and its normal-ordering engine, [`verma`] weight
//! spaces, [`singular`] kernels of annihilation operators, [`zhu`] the Zhu and
//! Smith algebra layer, [`classify`] the highest-weight classification and
//! [`freefield`] the free-field realizations.

pub mod arith;
pub mod classify;
pub mod error;
pub mod freefield;
pub mod golden;
pub mod linalg;
pub mod modes;
pub mod singular;
pub mod verma;
pub mod zhu;

pub use arith::{Coeff, Poly1, Poly2, Rational};
pub use error::{Error, Result};
pub use modes::{Base, BaseTag, Convention, Generator, Mode, Module, Monomial, State};

/// Default cap on the weight of enumerated spaces.
pub const DEFAULT_WEIGHT_BOUND: u32 = 8;
