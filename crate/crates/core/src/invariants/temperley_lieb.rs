//! Kauffman bracket through the Temperley–Lieb algebra. Cost grows with the
//! number of non-crossing matchings (a Catalan number in the strand count)
//! rather than with `2^crossings`, so it handles long words on few strands.

use std::collections::BTreeMap;

use super::bracket::{jones_from_bracket, loop_value};
use super::laurent::LaurentPolynomial;
use crate::braid::BraidWord;
use crate::error::Result;

/// A planar matching of `2n` points: tops are `0..n`, bottoms `n..2n`.
type Diagram = Vec<u8>;

fn identity_diagram(n: usize) -> Diagram {
    (0..2 * n).map(|p| ((p + n) % (2 * n)) as u8).collect()
}

/// Appends the cup-cap `e_i` (1-based) below `d`, returning the product and
/// the number of closed loops formed in the middle.
fn append_generator(d: &Diagram, n: usize, i: usize) -> (Diagram, usize) {
    let mut e = identity_diagram(n);
    let (a, b) = (i - 1, i);
    e[a] = b as u8;
    e[b] = a as u8;
    e[n + a] = (n + b) as u8;
    e[n + b] = (n + a) as u8;
    compose(d, &e, n)
}

/// Stacks `upper` on `lower`.
fn compose(upper: &Diagram, lower: &Diagram, n: usize) -> (Diagram, usize) {
    let mut out = vec![u8::MAX; 2 * n];
    let mut middle_seen = vec![false; n];
    // external points: upper tops are 0..n, lower bottoms n..2n
    for start in 0..2 * n {
        if out[start] != u8::MAX {
            continue;
        }
        // (in_upper, point index in that diagram)
        let (mut in_upper, mut point) = if start < n {
            (true, start)
        } else {
            (false, start)
        };
        let end = loop {
            let partner = if in_upper { upper[point] } else { lower[point] } as usize;
            if in_upper {
                if partner < n {
                    break partner;
                }
                let m = partner - n;
                middle_seen[m] = true;
                in_upper = false;
                point = m;
            } else {
                if partner >= n {
                    break partner;
                }
                middle_seen[partner] = true;
                in_upper = true;
                point = n + partner;
            }
        };
        out[start] = end as u8;
        out[end] = start as u8;
    }
    // anything left in the middle closes up into loops
    let mut loops = 0;
    for m0 in 0..n {
        if middle_seen[m0] {
            continue;
        }
        loops += 1;
        let mut m = m0;
        loop {
            middle_seen[m] = true;
            let down = lower[m] as usize;
            let up = upper[n + down] as usize - n;
            middle_seen[down] = true;
            if up == m0 {
                break;
            }
            m = up;
        }
    }
    (out, loops)
}

/// Loops in the braid closure of a diagram: top `i` joined to bottom `i`.
fn closure_loops(d: &Diagram, n: usize) -> usize {
    let mut seen = vec![false; n];
    let mut loops = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut p = start;
        loop {
            seen[p] = true;
            // walk from top p through the diagram until we land on a bottom
            let mut q = d[p] as usize;
            while q < n {
                seen[q] = true;
                q = d[n + q] as usize;
            }
            let next = q - n;
            if next == start || seen[next] {
                break;
            }
            p = next;
        }
    }
    loops
}

pub fn kauffman_bracket(word: &BraidWord) -> LaurentPolynomial {
    let n = word.n_strands();
    let d = loop_value();
    let mut d_powers = vec![LaurentPolynomial::one()];
    for _ in 0..=n {
        let next = d_powers.last().unwrap() * &d;
        d_powers.push(next);
    }
    let mut element: BTreeMap<Diagram, LaurentPolynomial> = BTreeMap::new();
    element.insert(identity_diagram(n), LaurentPolynomial::one());
    for letter in word.letters() {
        // σ ↦ A·1 + A⁻¹·e, σ⁻¹ ↦ A⁻¹·1 + A·e
        let (keep, cup) = if letter.is_positive() {
            (1, -1)
        } else {
            (-1, 1)
        };
        let mut next: BTreeMap<Diagram, LaurentPolynomial> = BTreeMap::new();
        for (diagram, coefficient) in &element {
            *next.entry(diagram.clone()).or_default() += &coefficient.shift(keep);
            let (product, loops) = append_generator(diagram, n, letter.index());
            let term = (coefficient * &d_powers[loops]).shift(cup);
            *next.entry(product).or_default() += &term;
        }
        next.retain(|_, c| !c.is_zero());
        element = next;
    }
    let mut bracket = LaurentPolynomial::zero();
    for (diagram, coefficient) in &element {
        let loops = closure_loops(diagram, n);
        bracket += &(coefficient * &d_powers[loops - 1]);
    }
    bracket
}

/// Jones polynomial in `q = t^{1/2}`, with no limit on word length.
pub fn jones_polynomial(word: &BraidWord) -> Result<LaurentPolynomial> {
    jones_from_bracket(&kauffman_bracket(word), word.exponent_sum())
}
