//! Datasets of 2-generated permutation groups, neural simplicity classifiers,
//! and finite checks of sign/trace constraints on generators of simple groups.

pub mod dataset;
pub mod error;
pub mod group;
pub mod nn;
pub mod perm;
pub mod rng;
pub mod theorem;

pub use error::{Error, Result};
pub use group::{analyze, GeneratedGroup, GroupFingerprint, Verdict};
pub use perm::{flatten_pair, Permutation};
