//! Finite posets, interval representations, and small-dimension realizers.
//!
//! The crate models strict partial orders on named elements, interval
//! representations with exact rational endpoints, and linear-extension
//! realizers. On top of those sit constructions that realize interval orders
//! with few linear extensions when the interval lengths are restricted, a
//! backtracking dimension oracle, and an exhaustive survey over spaces of
//! representations.

pub mod choice;
pub mod dimension;
pub mod distinguish;
pub mod error;
pub mod poset;
pub mod rational;
pub mod realizers;
pub mod rep;
pub mod search;

#[doc(hidden)]
pub mod testutil;

pub use error::{Error, Result};
pub use rational::Rational;
