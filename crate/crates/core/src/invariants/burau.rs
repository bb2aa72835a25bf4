//! Reduced Burau representation and the Alexander polynomial of closures.

use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::laurent::LaurentPolynomial;
use crate::braid::BraidWord;
use crate::error::{Error, Result};

/// Square matrix over `ℤ[t, t⁻¹]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrix {
    dim: usize,
    entries: Vec<LaurentPolynomial>,
}

impl PolyMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![LaurentPolynomial::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = LaurentPolynomial::one();
        }
        PolyMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentPolynomial {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: LaurentPolynomial) {
        self.entries[row * self.dim + col] = value;
    }

    /// Determinant by cofactor expansion; exact and division free.
    pub fn determinant(&self) -> LaurentPolynomial {
        let columns: Vec<usize> = (0..self.dim).collect();
        self.minor_determinant(0, &columns)
    }

    fn minor_determinant(&self, row: usize, columns: &[usize]) -> LaurentPolynomial {
        if columns.is_empty() {
            return LaurentPolynomial::one();
        }
        let mut total = LaurentPolynomial::zero();
        for (k, &col) in columns.iter().enumerate() {
            let entry = self.get(row, col);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = columns.iter().copied().filter(|&c| c != col).collect();
            let term = entry * &self.minor_determinant(row + 1, &rest);
            if k % 2 == 0 {
                total += &term;
            } else {
                total = &total - &term;
            }
        }
        total
    }
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;

    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut out = PolyMatrix {
            dim: d,
            entries: vec![LaurentPolynomial::zero(); d * d],
        };
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * d + j] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

fn t(exponent: i32) -> LaurentPolynomial {
    LaurentPolynomial::monomial(1, exponent)
}

fn neg_t(exponent: i32) -> LaurentPolynomial {
    LaurentPolynomial::monomial(-1, exponent)
}

/// Reduced Burau image of `σᵢ^{sign}` in `B_n`, a `(n-1)×(n-1)` matrix.
pub fn burau_generator(n: usize, i: usize, sign: i32) -> PolyMatrix {
    let dim = n - 1;
    let mut m = PolyMatrix::identity(dim);
    let row = i - 1;
    // row i of the identity is replaced; neighbours keep their unit diagonal
    if sign > 0 {
        m.set(row, row, neg_t(1));
        if i > 1 {
            m.set(row, row - 1, t(1));
        }
        if i < n - 1 {
            m.set(row, row + 1, LaurentPolynomial::one());
        }
    } else {
        m.set(row, row, neg_t(-1));
        if i > 1 {
            m.set(row, row - 1, LaurentPolynomial::one());
        }
        if i < n - 1 {
            m.set(row, row + 1, t(-1));
        }
    }
    m
}

pub fn burau_reduced(word: &BraidWord) -> PolyMatrix {
    let n = word.n_strands();
    let dim = n.saturating_sub(1);
    word.letters()
        .iter()
        .fold(PolyMatrix::identity(dim), |acc, letter| {
            &acc * &burau_generator(n, letter.index(), letter.sign())
        })
}

/// The Alexander polynomial of a closed braid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderPolynomial {
    pub polynomial: LaurentPolynomial,
    pub components: usize,
    /// True when the symmetric normalization was applied (knots only).
    pub normalized: bool,
}

impl AlexanderPolynomial {
    /// Representative modulo the units `±tᵏ`: lowest exponent zero and
    /// positive leading coefficient.
    pub fn canonical(&self) -> LaurentPolynomial {
        let Some(low) = self.polynomial.min_exponent() else {
            return LaurentPolynomial::zero();
        };
        let shifted = self.polynomial.shift(-low);
        if shifted.leading_coefficient() < 0 {
            shifted.scale(-1)
        } else {
            shifted
        }
    }

    pub fn same_up_to_units(&self, other: &AlexanderPolynomial) -> bool {
        self.canonical() == other.canonical()
    }
}

/// `det(I - ρ(w)) / (1 + t + ⋯ + t^{n-1})`. Knots are normalized to be
/// symmetric under `t ↔ t⁻¹` with positive leading coefficient; links keep
/// the raw quotient.
pub fn alexander_polynomial(word: &BraidWord) -> Result<AlexanderPolynomial> {
    let n = word.n_strands();
    let components = word.closure_components().count();
    let burau = burau_reduced(word);
    let mut difference = PolyMatrix::identity(burau.dim());
    for i in 0..burau.dim() {
        for j in 0..burau.dim() {
            let entry = difference.get(i, j) - burau.get(i, j);
            difference.set(i, j, entry);
        }
    }
    let det = difference.determinant();
    let divisor = LaurentPolynomial::from_terms((0..n as i32).map(|e| (e, 1)));
    let quotient = det.div_exact(&divisor).ok_or_else(|| {
        Error::Internal(format!(
            "det(I - Burau) = {det} is not divisible by {divisor}"
        ))
    })?;
    if components != 1 {
        return Ok(AlexanderPolynomial {
            polynomial: quotient,
            components,
            normalized: false,
        });
    }
    let (low, high) = match (quotient.min_exponent(), quotient.max_exponent()) {
        (Some(l), Some(h)) => (l, h),
        _ => {
            return Err(Error::Internal(
                "knot with zero Alexander polynomial".into(),
            ))
        }
    };
    if (high - low) % 2 != 0 {
        return Err(Error::Internal(format!(
            "knot Alexander polynomial {quotient} has odd span"
        )));
    }
    let mut centered = quotient.shift(-(low + high) / 2);
    if centered.leading_coefficient() < 0 {
        centered = centered.scale(-1);
    }
    Ok(AlexanderPolynomial {
        polynomial: centered,
        components,
        normalized: true,
    })
}
