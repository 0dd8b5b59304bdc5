//! Controlled circuits and their rig semantics.
//!
//! The crate is organised around a small term language for controlled
//! circuits ([`term::CtrlTerm`]) and for direct-sum circuits
//! ([`term::SumTerm`]), Gray-code machinery ([`gray`]), the bipermutative
//! algebra of permutations ([`perm`]), four evaluation backends
//! ([`semantics`]), translations between the term languages and their models
//! ([`translate`]), and an equational rewrite engine ([`rewrite`]).
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod cli;
pub mod error;
pub mod gray;
pub mod perm;
pub mod rewrite;
pub mod semantics;
pub mod suites;
pub mod term;
pub mod translate;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use term::{CtrlTerm, SumTerm};
