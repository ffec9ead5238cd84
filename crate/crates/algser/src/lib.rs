//! Finitely presented algebras attached to bracket languages and their
//! homomorphic images: truncated noncommutative Groebner bases, chain
//! languages and Tor dimensions of the associated monomial algebras, and
//! exact algebraic Hilbert series, with every closed form cross-checked
//! against brute-force enumeration.

pub mod chains;
pub mod construction;
pub mod error;
pub mod formats;
pub mod freealg;
pub mod groebner;
pub mod langkit;
pub mod series;

pub use error::{Error, Result};
pub use freealg::{Alphabet, NcPoly, Word};
pub use groebner::{ObstructionSet, TruncatedGb};
pub use langkit::{Grammar, Homomorphism, LanguageSlice};
pub use series::RatSeries;
