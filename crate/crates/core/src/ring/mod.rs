//! The tautological ring of `S^N`.
//!
//! Elements are exact linear combinations of monomials in the generators
//! `o_r`, `h_{a,r}`, `k_r`, `c_r` (pulled back from factor `r`) and the
//! diagonals `D_{rs}` (pulled back from factors `r < s`). Products are
//! reduced by the rewriting system in [`rewrite`].

mod expr;
mod generator;
pub mod rewrite;

pub use expr::{small_diagonal, TautExpr};
pub use generator::{Generator, Monomial};
pub use rewrite::{normalize, normalize_with, Normalizer, Rule, RuleSet, Strategy};
