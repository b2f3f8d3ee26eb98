//! Lyndon-Shirshov bases and Gröbner-Shirshov checks for free operated Lie
//! algebras.

pub mod error;
pub mod gsb;
pub mod lyndon;
pub mod opi;
pub mod orders;
pub mod poly;
pub mod rewrite;
pub mod words;

pub use error::{Error, Result};
pub use orders::{OrderKind, WordOrder};
pub use poly::{Coefficient, LieAlgebra, LiePolynomial, OpPolynomial};
pub use words::{Alphabet, BracketedWord, Letter, NaWord, Prime, StarWord};
