//! Closed braids as knot and link representatives: Garside conjugacy,
//! Markov-type moves and their templates, transverse self-linking, and
//! polynomial invariants.

pub mod braid;
pub mod error;
pub mod garside;
pub mod invariants;
pub mod moves;
pub mod search;
pub mod sequence;
pub mod templates;
pub mod transverse;
pub mod verify;

pub use braid::{BraidWord, ComponentPartition, CrossingRecord, Letter, Permutation};
pub use error::{Error, Result};
pub use garside::{are_conjugate, left_normal_form, super_summit_set, ConjugacyKey, NormalForm};
