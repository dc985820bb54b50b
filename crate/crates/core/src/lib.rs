//! Residual finiteness growth toolkit.
//!
//! The crate is organised by task:
//!
//! - [`words`]: free words, presentations, small cancellation and Dehn's algorithm, balls.
//! - [`groups`]: finite fields, permutations, matrices, catalog targets and homomorphisms.
//! - [`atlas`]: order / maximal element order / representation dimension data for finite
//!   simple families and the boundedness thresholds derived from it.
//! - [`certify`]: conjugator search and verifiable common multiples.
//! - [`quotient`]: target catalogs, detection search and growth tables.
//! - [`induction`]: coset structures, Reidemeister–Schreier rewriting and induced representations.

pub mod atlas;
pub mod certify;
pub mod config;
pub mod error;
pub mod groups;
pub mod induction;
pub mod quotient;
pub mod words;

pub use config::Budgets;
pub use error::{Error, Result};
pub use words::{Alphabet, Letter, Presentation, Word};
