//! Kauffman bracket by a full state sum over the closed-braid diagram, and
//! the Jones polynomial derived from it.
//!
//! Conventions: `<O> = 1`, loop value `d = -A² - A⁻²`, and for a positive
//! letter the A-smoothing keeps both strands running along the braid. The
//! Jones polynomial is `(-A³)^{-w} <D>` at `t = A⁻⁴`, returned in the
//! variable `q = t^{1/2} = A⁻²` so half-integer powers of `t` stay integral.

use rayon::prelude::*;

use super::laurent::LaurentPolynomial;
use crate::braid::BraidWord;
use crate::error::{Error, Result};

pub const DEFAULT_CROSSING_CAP: usize = 24;

/// Result of a state-sum evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEvaluation {
    pub bracket: LaurentPolynomial,
    pub states_visited: u64,
}

#[derive(Clone, Copy, Debug)]
struct CrossingEnds {
    in_left: usize,
    in_right: usize,
    out_left: usize,
    out_right: usize,
    positive: bool,
}

/// Arcs of the closed braid diagram. Every arc leaves a crossing, so arc ids
/// are `2k` (left output of crossing `k`) and `2k+1` (right output).
struct ClosureDiagram {
    crossings: Vec<CrossingEnds>,
    free_loops: usize,
}

impl ClosureDiagram {
    fn new(word: &BraidWord) -> Self {
        let n = word.n_strands();
        let letters = word.letters();
        // arc leaving the most recent crossing at each position, and the
        // first crossing's input slot there (patched once the cycle closes)
        let mut last_out: Vec<Option<usize>> = vec![None; n + 1];
        let mut first_in: Vec<Option<(usize, bool)>> = vec![None; n + 1];
        let mut crossings = Vec::with_capacity(letters.len());
        for (k, letter) in letters.iter().enumerate() {
            let i = letter.index();
            let mut ends = CrossingEnds {
                in_left: usize::MAX,
                in_right: usize::MAX,
                out_left: 2 * k,
                out_right: 2 * k + 1,
                positive: letter.is_positive(),
            };
            for (position, left) in [(i, true), (i + 1, false)] {
                match last_out[position] {
                    Some(arc) => {
                        if left {
                            ends.in_left = arc;
                        } else {
                            ends.in_right = arc;
                        }
                    }
                    None => first_in[position] = Some((k, left)),
                }
            }
            last_out[i] = Some(ends.out_left);
            last_out[i + 1] = Some(ends.out_right);
            crossings.push(ends);
        }
        let mut free_loops = 0;
        for position in 1..=n {
            match (first_in[position], last_out[position]) {
                (Some((k, true)), Some(arc)) => crossings[k].in_left = arc,
                (Some((k, false)), Some(arc)) => crossings[k].in_right = arc,
                (None, None) => free_loops += 1,
                _ => unreachable!("positions touched by a crossing have both ends"),
            }
        }
        ClosureDiagram {
            crossings,
            free_loops,
        }
    }

    /// Loop count of the smoothing whose B-choices are the set bits of `state`.
    fn loops(&self, state: u64, parent: &mut [usize]) -> usize {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut components = parent.len();
        for (k, c) in self.crossings.iter().enumerate() {
            let b_choice = (state >> k) & 1 == 1;
            let vertical = c.positive != b_choice;
            let (x1, y1, x2, y2) = if vertical {
                (c.in_left, c.out_left, c.in_right, c.out_right)
            } else {
                (c.in_left, c.in_right, c.out_left, c.out_right)
            };
            if union(parent, x1, y1) {
                components -= 1;
            }
            if union(parent, x2, y2) {
                components -= 1;
            }
        }
        components + self.free_loops
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) -> bool {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra == rb {
        return false;
    }
    parent[ra] = rb;
    true
}

/// `d = -A² - A⁻²`.
pub fn loop_value() -> LaurentPolynomial {
    LaurentPolynomial::from_terms([(2, -1), (-2, -1)])
}

pub fn kauffman_bracket(word: &BraidWord) -> Result<LaurentPolynomial> {
    Ok(kauffman_bracket_with_stats(word, DEFAULT_CROSSING_CAP)?.bracket)
}

/// Full state sum over all `2^m` smoothings. States are split across threads;
/// the per-state tallies are integers, so the result does not depend on the
/// schedule.
pub fn kauffman_bracket_with_stats(
    word: &BraidWord,
    crossing_cap: usize,
) -> Result<BracketEvaluation> {
    let m = word.len();
    if m > crossing_cap || m >= 63 {
        return Err(Error::CrossingCap {
            crossings: m,
            cap: crossing_cap,
        });
    }
    let diagram = ClosureDiagram::new(word);
    let max_loops = 2 * m + diagram.free_loops + 1;
    let total_states: u64 = 1 << m;
    let chunk = 1u64 << m.saturating_sub(6).min(16);
    let chunks: Vec<u64> = (0..total_states).step_by(chunk as usize).collect();

    // tally[b][loops] = number of states with b B-smoothings and that many loops
    let tally = chunks
        .par_iter()
        .map(|&start| {
            let mut local = vec![0u64; (m + 1) * max_loops];
            let mut parent = vec![0usize; 2 * m];
            let end = (start + chunk).min(total_states);
            for state in start..end {
                let loops = diagram.loops(state, &mut parent);
                let b = state.count_ones() as usize;
                local[b * max_loops + loops] += 1;
            }
            (local, end - start)
        })
        .reduce(
            || (vec![0u64; (m + 1) * max_loops], 0),
            |(mut acc, n_acc), (part, n_part)| {
                for (a, p) in acc.iter_mut().zip(part) {
                    *a += p;
                }
                (acc, n_acc + n_part)
            },
        );
    let (tally, states_visited) = tally;

    let d = loop_value();
    let mut d_powers = vec![LaurentPolynomial::one()];
    for _ in 1..max_loops {
        let next = d_powers.last().unwrap() * &d;
        d_powers.push(next);
    }
    let mut bracket = LaurentPolynomial::zero();
    for b in 0..=m {
        for loops in 1..max_loops {
            let count = tally[b * max_loops + loops];
            if count == 0 {
                continue;
            }
            let a_exponent = m as i32 - 2 * b as i32;
            bracket += &d_powers[loops - 1].shift(a_exponent).scale(count as i64);
        }
    }
    Ok(BracketEvaluation {
        bracket,
        states_visited,
    })
}

/// Applies the writhe correction and changes variable from `A` to `q = A⁻²`.
pub fn jones_from_bracket(bracket: &LaurentPolynomial, writhe: i64) -> Result<LaurentPolynomial> {
    let sign = if writhe.rem_euclid(2) == 1 { -1 } else { 1 };
    let corrected = bracket.shift((-3 * writhe) as i32).scale(sign);
    let mut jones = LaurentPolynomial::zero();
    for (e, c) in corrected.terms() {
        if e % 2 != 0 {
            return Err(Error::Internal(format!(
                "normalized bracket has odd A-exponent {e}"
            )));
        }
        jones.add_term(c, -e / 2);
    }
    Ok(jones)
}

/// Jones polynomial in `q = t^{1/2}`.
pub fn jones_polynomial(word: &BraidWord) -> Result<LaurentPolynomial> {
    jones_polynomial_with_cap(word, DEFAULT_CROSSING_CAP)
}

pub fn jones_polynomial_with_cap(
    word: &BraidWord,
    crossing_cap: usize,
) -> Result<LaurentPolynomial> {
    let bracket = kauffman_bracket_with_stats(word, crossing_cap)?.bracket;
    jones_from_bracket(&bracket, word.exponent_sum())
}

/// Text form over `q`, prefixed with the variable convention.
pub fn format_jones(jones: &LaurentPolynomial) -> String {
    format!("(q^2 = t) {}", jones.display_with("q"))
}
