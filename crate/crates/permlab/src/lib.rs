//! Exact arithmetic, infinite words, and infinite permutations.
//!
//! An infinite permutation is a linear order on the natural numbers,
//! recorded by the relation symbols `γ(i,j) ∈ {<,>}`. This crate builds
//! such permutations exactly (from infinite words, from Sturmian data,
//! from integer families, from a rational morphism), extracts their
//! finite factors as patterns, and measures factor and maximal pattern
//! complexity with explicit scan bounds. Everything is computed over
//! exact number types, so two runs can never disagree.

pub mod analysis;
pub mod automaton;
pub mod error;
pub mod finewilf;
pub mod genperm;
pub mod makarov;
pub mod numerics;
pub mod patterns;
pub mod words;

pub use error::{Error, Result};
pub use numerics::{ExactReal, QuadraticSurd};
pub use patterns::{Pattern, PermutationView, Relation, Window};
pub use words::InfiniteWord;
