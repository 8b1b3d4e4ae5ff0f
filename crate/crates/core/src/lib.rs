//! Exact marginal polytopes of shift-invariant measures on full shifts.
//!
//! The crate builds the polytope of locally invariant measures on the
//! window {-n..n}^d, enumerates its vertices in exact arithmetic, and
//! relates them to periodic orbits, Markov extensions, shifts of finite
//! type, projection towers, word-language compilation of rational polytope
//! chains, and substitution tile frequencies.
//!
//! Data-parallel inner loops run on rayon when the `parallel` feature is
//! enabled and [`Exec::Parallel`] is selected; results are identical to the
//! sequential path.

pub mod compiler;
pub mod config;
pub mod dim1;
pub mod error;
pub mod geometry;
pub mod invariance;
pub mod par;
pub mod patterns;
pub mod rational;
pub mod sft;
pub mod substitution;
pub mod tower;

pub use config::{Config, Exec};
pub use error::{Error, Result};
pub use rational::Rational;
