//! Numerical evaluation and verification of one- and two-dimensional
//! Mordell-type integrals: Gaussian-weighted integrals of trigonometric
//! numerators over hyperbolic denominators, their closed forms, and the
//! transformation and reduction formulas relating them.

pub mod error;
pub mod mordell1d;
pub mod mordell2d;
pub mod quad;
pub mod regularized;
pub mod special;
pub mod suite;
pub mod typeii;

pub use error::{Error, Result};
pub use quad::{DecayHint, QuadConfig, QuadResult};
