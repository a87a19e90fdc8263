//! Repeated letters in reduced decompositions of permutations, compared
//! against the number of 321- and 3412-pattern occurrences.
//!
//! For a permutation `w`, `rep(w)` is the length of `w` minus the number of
//! distinct simple reflections in any reduced word for `w`. It never exceeds
//! the number of 321- and 3412-occurrences in `w`, and the two agree exactly
//! when `w` avoids the ten patterns in [`patterns::PHI`]. This crate computes
//! both sides, builds the explicit level-by-level injection behind that
//! statement, and drives exhaustive verification over whole symmetric groups.
//!
//! Positions and values are 1-indexed everywhere in the public API.

pub mod bijection;
pub mod enumerate;
mod error;
pub mod patterns;
pub mod perm;
pub mod words;

pub use error::{Error, Result};
pub use perm::{Permutation, PrefixProfile, SimpleReflection};
