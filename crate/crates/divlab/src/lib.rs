//! Exact arithmetic for subset-sum divisibility problems.
//!
//! The crate is organized around a [`ground::GroundSet`] of distinct positive
//! rationals. For a scale `s`, a subset `B` is an *s-divisor* when its sum
//! divides `s` times the total; [`divisor`] counts and classifies them,
//! [`poset`] analyzes the two rank posets that bound how many there can be,
//! [`numtheory`] covers the divisor-function and fraction-pair machinery,
//! [`families`] constructs the known extremal and exception families, and
//! [`search`] scans all small integer sets exhaustively.
//!
//! All computations are exact: rationals are arbitrary-precision and bound
//! comparisons are carried out on squared integers, never floats.

pub mod caps;
pub mod divisor;
pub mod error;
pub mod families;
pub mod ground;
pub mod numtheory;
pub mod poset;
pub mod rational;
pub mod search;

pub use error::{Error, Result};
pub use ground::{GroundSet, SubsetMask};
pub use rational::Rational;
