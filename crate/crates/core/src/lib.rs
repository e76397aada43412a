//! Short-interval sums of multiplicative functions.
//!
//! The crate is organised around a segmented factorization sieve
//! ([`sieve`]) that produces complete factorizations of every integer in a
//! window `(x, x+H]`. On top of it sit
//!
//! - [`identities`]: exact verifiers for the linear (beta) sieve weights,
//!   Ramaré's identity, the extraction coefficients `a_r` and Heath-Brown's
//!   identity for the Möbius function;
//! - [`decomposition`]: the subset-classification lemma and the mapping of
//!   dyadic factorization cases onto type I / type II / type I-II estimates;
//! - [`dirichlet`]: numerical Dirichlet polynomials on vertical lines, mean
//!   values and large-value measurements;
//! - [`stats`]: short-window experiments (Möbius, divisor functions, sums of
//!   two squares, E₂ numbers, twisted sums) with their main terms and
//!   long-window proxies.

pub mod decomposition;
pub mod dirichlet;
pub mod error;
pub mod identities;
pub mod sieve;
pub mod stats;
pub mod sum;

pub use error::{Error, Result};
