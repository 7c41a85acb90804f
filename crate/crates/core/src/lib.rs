//! Exact combinatorics on infinite words.
//!
//! Prefix generators for morphic words (Fibonacci, Thue–Morse), the two-seed
//! concatenation recursion behind the ternary word `𝕐`, and mechanical
//! (Sturmian) words; exact letter and palindrome densities; and an evaluator
//! that checks a fixed set of Fibonacci-number identities and density bounds,
//! reporting which hold and which do not.
//!
//! All counting is done with arbitrary-precision integers and rationals.
//! Irrational constants such as the golden ratio live in [`surd::Quad`] and
//! are compared exactly.

pub mod counting;
pub mod decimal;
pub mod error;
pub mod generate;
pub mod identity;
pub mod morphism;
pub mod palindromes;
pub mod report;
pub mod source;
pub mod stats;
pub mod sturmian;
pub mod surd;
pub mod thm51;
pub mod thue_morse;
pub mod word;

pub use error::{Error, Result};
pub use generate::{fibonacci_prefix, RecursiveSpec, DEFAULT_BUDGET};
pub use morphism::Morphism;
pub use surd::Quad;
pub use word::{Alphabet, Symbol, Word};
