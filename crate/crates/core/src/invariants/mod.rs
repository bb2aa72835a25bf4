//! Polynomial invariants of braid closures.

pub mod bracket;
pub mod burau;
pub mod laurent;
pub mod soundness;
pub mod temperley_lieb;

pub use bracket::{jones_polynomial, kauffman_bracket};
pub use burau::{alexander_polynomial, burau_reduced, AlexanderPolynomial, PolyMatrix};
pub use laurent::LaurentPolynomial;
pub use soundness::{template_soundness_check, SoundnessReport};
