//! Uniform mixing of continuous-time quantum walks on Cayley graphs over
//! `Z_q^d`, Hamming graphs and their quotients, Hamming-scheme graphs and
//! stars.
//!
//! The crate decides flatness of `U(t) = exp(itA)` exactly wherever the
//! arithmetic allows it (cyclotomic integers for rational multiples of `2π`)
//! and falls back to floating point, or a dense spectral oracle, otherwise.

pub mod arith;
pub mod cayley;
pub mod criteria;
pub mod cyclotomic;
pub mod dense;
pub mod error;
pub mod limits;
pub mod poly;
pub mod scheme;
pub mod stars;
pub mod times;
pub mod verdict;
pub mod walk;
pub mod zq;

#[cfg(test)]
mod proptests;

pub use error::{Error, Result};
pub use verdict::{Method, MixingVerdict};
pub use walk::WalkTime;
