//! Exact inhomogeneous Diophantine approximation over the Laurent series
//! field F_q((X^{-1})).
//!
//! - [`algebra`]: F_q, F_q[X], precision-tracked Laurent series, degree norms
//! - [`approx`]: Dirichlet systems and best-approximation degrees B(T)
//! - [`exponents`]: finite-horizon profiles and exponent proxies
//! - [`transference`]: checkers for transference inequalities
//! - [`limsup`]: index tuples, Δ-sets and the limsup-set reformulation
//! - [`cli`]: config-driven experiment runner and report writer

pub mod algebra;
pub mod approx;
pub mod cli;
pub mod error;
pub mod exponents;
pub mod limsup;
pub mod rational;
pub mod report;
pub mod transference;

pub use error::{Error, Result};
pub use rational::Rational;
