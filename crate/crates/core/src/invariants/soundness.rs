//! Empirical template soundness: both sides of a template, filled with random
//! block braids, must close to links with the same invariants.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bracket::{self, DEFAULT_CROSSING_CAP};
use super::burau::alexander_polynomial;
use super::laurent::LaurentPolynomial;
use super::temperley_lieb;
use crate::braid::BraidWord;
use crate::error::Result;
use crate::templates::{BraidingAssignment, Template};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundnessFailure {
    pub trial: usize,
    pub assignment: BTreeMap<String, String>,
    pub left: String,
    pub right: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundnessReport {
    pub template: String,
    pub trials: usize,
    pub max_len: usize,
    pub seed: u64,
    pub failures: Vec<SoundnessFailure>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// State sum up to the crossing cap, Temperley–Lieb beyond it.
pub fn jones_any_length(word: &BraidWord) -> Result<LaurentPolynomial> {
    if word.len() <= DEFAULT_CROSSING_CAP {
        bracket::jones_polynomial(word)
    } else {
        temperley_lieb::jones_polynomial(word)
    }
}

/// Why the two closures differ, if they do.
fn compare(left: &BraidWord, right: &BraidWord) -> Result<Option<String>> {
    let (cl, cr) = (
        left.closure_components().count(),
        right.closure_components().count(),
    );
    if cl != cr {
        return Ok(Some(format!("component counts differ: {cl} vs {cr}")));
    }
    let (jl, jr) = (jones_any_length(left)?, jones_any_length(right)?);
    if jl != jr {
        return Ok(Some(format!(
            "Jones polynomials differ: {} vs {}",
            jl.display_with("q"),
            jr.display_with("q")
        )));
    }
    let (al, ar) = (alexander_polynomial(left)?, alexander_polynomial(right)?);
    if !al.same_up_to_units(&ar) {
        return Ok(Some(format!(
            "Alexander polynomials differ: {} vs {}",
            al.polynomial, ar.polynomial
        )));
    }
    Ok(None)
}

/// Checks `trials` seeded random assignments with block words of length at
/// most `max_len`. Assignments are drawn up front, so the report depends
/// only on the seed.
pub fn template_soundness_check(
    template: &Template,
    trials: usize,
    max_len: usize,
    seed: u64,
) -> SoundnessReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let assignments: Vec<Result<BraidingAssignment>> = (0..trials)
        .map(|_| template.random_assignment(max_len, &mut rng))
        .collect();
    let failures: Vec<SoundnessFailure> = assignments
        .into_par_iter()
        .enumerate()
        .filter_map(|(trial, assignment)| {
            let shown = |a: &BraidingAssignment| {
                a.blocks
                    .iter()
                    .map(|(id, w)| (id.clone(), format!("{}:{}", w.n_strands(), w)))
                    .collect()
            };
            let failure = |a: &BraidingAssignment, left: String, right: String, reason: String| {
                SoundnessFailure {
                    trial,
                    assignment: shown(a),
                    left,
                    right,
                    reason,
                }
            };
            let assignment = match assignment {
                Ok(a) => a,
                Err(e) => {
                    return Some(failure(
                        &BraidingAssignment::new(),
                        String::new(),
                        String::new(),
                        e.to_string(),
                    ))
                }
            };
            let (left, right) = match template.instantiate(&assignment) {
                Ok(pair) => pair,
                Err(e) => {
                    return Some(failure(
                        &assignment,
                        String::new(),
                        String::new(),
                        e.to_string(),
                    ))
                }
            };
            let reason = match compare(&left, &right) {
                Ok(None) => return None,
                Ok(Some(reason)) => reason,
                Err(e) => e.to_string(),
            };
            Some(failure(
                &assignment,
                format!("{}:{}", left.n_strands(), left),
                format!("{}:{}", right.n_strands(), right),
                reason,
            ))
        })
        .collect();
    SoundnessReport {
        template: template.name.clone(),
        trials,
        max_len,
        seed,
        failures,
    }
}
