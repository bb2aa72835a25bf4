//! Exact Laurent polynomials in one variable over the integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        LaurentPolynomial::default()
    }

    pub fn one() -> Self {
        LaurentPolynomial::monomial(1, 0)
    }

    pub fn constant(c: i64) -> Self {
        LaurentPolynomial::monomial(c, 0)
    }

    pub fn monomial(coefficient: i64, exponent: i32) -> Self {
        let mut p = LaurentPolynomial::zero();
        p.add_term(coefficient, exponent);
        p
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = LaurentPolynomial::zero();
        for (e, c) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, coefficient: i64, exponent: i32) {
        if coefficient == 0 {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i32) -> i64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coefficient(&self) -> i64 {
        self.terms.values().next_back().copied().unwrap_or(0)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// Substitution `x ↦ x^k`.
    pub fn substitute_power(&self, k: i32) -> Self {
        LaurentPolynomial::from_terms(self.terms.iter().map(|(&e, &c)| (e * k, c)))
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut result = LaurentPolynomial::one();
        for _ in 0..exponent {
            result = &result * self;
        }
        result
    }

    pub fn scale(&self, c: i64) -> Self {
        LaurentPolynomial::from_terms(self.terms.iter().map(|(&e, &v)| (e, v * c)))
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentPolynomial) -> Option<LaurentPolynomial> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPolynomial::zero());
        }
        let d_min = divisor.min_exponent()?;
        let d_max = divisor.max_exponent()?;
        let lead = divisor.leading_coefficient();
        let mut remainder = self.clone();
        let mut quotient = LaurentPolynomial::zero();
        while let Some(r_max) = remainder.max_exponent() {
            if r_max - d_max < remainder.min_exponent()? - d_min {
                return None;
            }
            let r_lead = remainder.leading_coefficient();
            if r_lead % lead != 0 {
                return None;
            }
            let term = LaurentPolynomial::monomial(r_lead / lead, r_max - d_max);
            remainder = &remainder - &(&term * divisor);
            quotient = &quotient + &term;
        }
        Some(quotient)
    }

    /// Evaluation at an integer point; only meaningful for `x = ±1` when
    /// negative exponents are present.
    pub fn evaluate_at_unit(&self, x: i64) -> i64 {
        assert!(x == 1 || x == -1);
        self.terms
            .iter()
            .map(|(&e, &c)| {
                if x == -1 && e.rem_euclid(2) == 1 {
                    -c
                } else {
                    c
                }
            })
            .sum()
    }

    pub fn display_with(&self, variable: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{c}*{variable}^{e}"))
            .collect();
        parts.join(" + ")
    }

    /// Parses the text form written by [`display_with`](Self::display_with).
    pub fn parse(text: &str, variable: &str) -> Result<Self> {
        let text = text.trim();
        if text == "0" {
            return Ok(LaurentPolynomial::zero());
        }
        let mut p = LaurentPolynomial::zero();
        for term in text.split(" + ") {
            let bad = || Error::PolynomialParse(format!("bad term {term:?}"));
            let (coefficient, power) = term.trim().split_once('*').ok_or_else(bad)?;
            let exponent = power
                .strip_prefix(variable)
                .and_then(|rest| rest.strip_prefix('^'))
                .ok_or_else(bad)?;
            let c: i64 = coefficient.trim().parse().map_err(|_| bad())?;
            let e: i32 = exponent.trim().parse().map_err(|_| bad())?;
            p.add_term(c, e);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        for (&e, &c) in &rhs.terms {
            self.add_term(c, e);
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(-c, e);
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        self.scale(-1)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPolynomial {
            type Output = LaurentPolynomial;

            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
