//! Braid words, their group operations, and the strand bookkeeping of closures.
//!
//! Strand positions are 1-based. A word is read left to right, which is the
//! direction of travel around the braid axis. The letter `σᵢ` crosses the
//! strands currently at positions `i` and `i+1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One Artin generator `σᵢ^{±1}`, stored as the signed index (`-i` for `σᵢ⁻¹`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(i32);

impl Letter {
    pub fn new(index: usize, sign: i32) -> Self {
        debug_assert!(index >= 1 && (sign == 1 || sign == -1));
        Letter(index as i32 * sign.signum())
    }

    pub fn pos(index: usize) -> Self {
        Letter::new(index, 1)
    }

    pub fn neg(index: usize) -> Self {
        Letter::new(index, -1)
    }

    pub fn from_signed(value: i32) -> Option<Self> {
        (value != 0).then_some(Letter(value))
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn sign(self) -> i32 {
        self.0.signum()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Same letter with its index moved by `offset`.
    pub fn shifted(self, offset: usize) -> Self {
        Letter::new(self.index() + offset, self.sign())
    }
}

/// A word in the Artin generators of the `n`-strand braid group.
///
/// Words are kept exactly as written. Only [`multiply`](BraidWord::multiply),
/// [`invert`](BraidWord::invert) and [`conjugate`](BraidWord::conjugate)
/// cancel adjacent inverse pairs; braid relations are never applied.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(usize, Vec<i32>)", into = "(usize, Vec<i32>)")]
pub struct BraidWord {
    n_strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(n_strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if n_strands == 0 {
            return Err(Error::NoStrands);
        }
        if let Some(bad) = letters.iter().find(|l| l.index() >= n_strands) {
            return Err(Error::IndexOutOfRange {
                index: bad.index(),
                n_strands,
            });
        }
        Ok(BraidWord { n_strands, letters })
    }

    pub fn identity(n_strands: usize) -> Self {
        assert!(n_strands >= 1, "a braid needs at least one strand");
        BraidWord {
            n_strands,
            letters: Vec::new(),
        }
    }

    /// Uniformly random letters; the identity when `n_strands < 2`.
    pub fn random(n_strands: usize, length: usize, rng: &mut impl rand::Rng) -> Self {
        let letters = if n_strands < 2 {
            Vec::new()
        } else {
            (0..length)
                .map(|_| {
                    Letter::new(
                        rng.gen_range(1..n_strands),
                        if rng.gen_bool(0.5) { 1 } else { -1 },
                    )
                })
                .collect()
        };
        BraidWord { n_strands, letters }
    }

    /// Builds a word from signed indices, `-i` standing for `σᵢ⁻¹`.
    pub fn from_signed(n_strands: usize, signed: &[i32]) -> Result<Self> {
        let letters = signed
            .iter()
            .map(|&v| {
                Letter::from_signed(v).ok_or_else(|| Error::Syntax {
                    token: v.to_string(),
                    reason: "zero is not a generator".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(n_strands, letters)
    }

    /// Parses `s1^5 s2^4 s1^6 s2^-1` style text.
    pub fn parse(text: &str, n_strands: usize) -> Result<Self> {
        if n_strands == 0 {
            return Err(Error::NoStrands);
        }
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (index, power) = parse_token(token)?;
            if index >= n_strands {
                return Err(Error::IndexOutOfRange { index, n_strands });
            }
            let letter = Letter::new(index, power.signum() as i32);
            letters.extend(std::iter::repeat_n(letter, power.unsigned_abs() as usize));
        }
        BraidWord::new(n_strands, letters)
    }

    /// Parses on the fewest strands the letters need (one for the empty word).
    pub fn parse_minimal(text: &str) -> Result<Self> {
        let wide = BraidWord::parse(text, usize::MAX)?;
        let n = wide
            .letters
            .iter()
            .map(|l| l.index() + 1)
            .max()
            .unwrap_or(1);
        Ok(BraidWord {
            n_strands: n,
            letters: wide.letters,
        })
    }

    pub fn n_strands(&self) -> usize {
        self.n_strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn signed(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.signed()).collect()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign() as i64).sum()
    }

    /// The same letters viewed on more strands.
    pub fn widened(&self, n_strands: usize) -> Result<Self> {
        BraidWord::new(n_strands, self.letters.clone())
    }

    fn check_same_strands(&self, other: &BraidWord) -> Result<()> {
        if self.n_strands != other.n_strands {
            return Err(Error::StrandMismatch {
                left: self.n_strands,
                right: other.n_strands,
            });
        }
        Ok(())
    }

    /// Concatenation followed by free reduction.
    pub fn multiply(&self, other: &BraidWord) -> Result<BraidWord> {
        self.check_same_strands(other)?;
        let letters = free_reduce(self.letters.iter().chain(other.letters.iter()).copied());
        Ok(BraidWord {
            n_strands: self.n_strands,
            letters,
        })
    }

    pub fn invert(&self) -> BraidWord {
        let letters = free_reduce(self.letters.iter().rev().map(|l| l.inverse()));
        BraidWord {
            n_strands: self.n_strands,
            letters,
        }
    }

    /// `g⁻¹ · self · g`, freely reduced.
    pub fn conjugate(&self, g: &BraidWord) -> Result<BraidWord> {
        self.check_same_strands(g)?;
        let letters = free_reduce(
            g.letters
                .iter()
                .rev()
                .map(|l| l.inverse())
                .chain(self.letters.iter().copied())
                .chain(g.letters.iter().copied()),
        );
        Ok(BraidWord {
            n_strands: self.n_strands,
            letters,
        })
    }

    /// Letters of the cyclic rotation starting at `start`.
    pub fn rotated(&self, start: usize) -> BraidWord {
        let len = self.letters.len();
        let mut letters = Vec::with_capacity(len);
        if len > 0 {
            let start = start % len;
            letters.extend_from_slice(&self.letters[start..]);
            letters.extend_from_slice(&self.letters[..start]);
        }
        BraidWord {
            n_strands: self.n_strands,
            letters,
        }
    }

    /// Free and cyclic reduction. Returns the reduced word and a conjugator
    /// `g` with `g⁻¹ · self · g` equal (as a group element) to the result.
    pub fn cyclically_reduced(&self) -> (BraidWord, BraidWord) {
        let mut letters = free_reduce(self.letters.iter().copied());
        let mut peeled = Vec::new();
        while letters.len() >= 2 && letters[0] == letters[letters.len() - 1].inverse() {
            peeled.push(letters[0]);
            letters.remove(0);
            letters.pop();
        }
        (
            BraidWord {
                n_strands: self.n_strands,
                letters,
            },
            BraidWord {
                n_strands: self.n_strands,
                letters: peeled,
            },
        )
    }

    /// Mirror image: every letter inverted, order kept.
    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            n_strands: self.n_strands,
            letters: self.letters.iter().map(|l| l.inverse()).collect(),
        }
    }

    pub fn underlying_permutation(&self) -> Permutation {
        let mut at_position: Vec<usize> = (0..self.n_strands).collect();
        for letter in &self.letters {
            at_position.swap(letter.index() - 1, letter.index());
        }
        // at_position[p] = strand now at p; invert to strand -> end position
        let mut images = vec![0; self.n_strands];
        for (end, &strand) in at_position.iter().enumerate() {
            images[strand] = end;
        }
        Permutation { images }
    }

    pub fn closure_components(&self) -> ComponentPartition {
        ComponentPartition::from_permutation(&self.underlying_permutation())
    }

    pub fn crossing_records(&self) -> CrossingRecord {
        let mut at_position: Vec<usize> = (1..=self.n_strands).collect();
        let crossings = self
            .letters
            .iter()
            .map(|letter| {
                let i = letter.index() - 1;
                let (a, b) = (at_position[i], at_position[i + 1]);
                at_position.swap(i, i + 1);
                Crossing {
                    strands: (a.min(b), a.max(b)),
                    sign: letter.sign(),
                }
            })
            .collect();
        CrossingRecord { crossings }
    }
}

fn parse_token(token: &str) -> Result<(usize, i64)> {
    let syntax = |reason: &str| Error::Syntax {
        token: token.to_string(),
        reason: reason.to_string(),
    };
    let body = token
        .strip_prefix('s')
        .ok_or_else(|| syntax("expected a token of the form s<i> or s<i>^<k>"))?;
    let (index_text, power_text) = match body.split_once('^') {
        Some((i, k)) => (i, Some(k)),
        None => (body, None),
    };
    let index: usize = index_text
        .parse()
        .map_err(|_| syntax("generator index is not a positive integer"))?;
    if index == 0 {
        return Err(syntax("generator indices start at 1"));
    }
    let power = match power_text {
        Some(k) => k
            .parse::<i64>()
            .map_err(|_| syntax("exponent is not an integer"))?,
        None => 1,
    };
    if power == 0 {
        return Err(syntax("exponent must be nonzero"));
    }
    Ok((index, power))
}

/// Cancels adjacent `x x⁻¹` pairs until none remain.
pub fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for letter in letters {
        if out.last() == Some(&letter.inverse()) {
            out.pop();
        } else {
            out.push(letter);
        }
    }
    out
}

impl fmt::Display for BraidWord {
    /// Runs of an identical letter are written as powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let letter = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == letter {
                j += 1;
            }
            let power = (j - i) as i64 * letter.sign() as i64;
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if power == 1 {
                write!(f, "s{}", letter.index())?;
            } else {
                write!(f, "s{}^{}", letter.index(), power)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl TryFrom<(usize, Vec<i32>)> for BraidWord {
    type Error = Error;

    fn try_from((n, signed): (usize, Vec<i32>)) -> Result<Self> {
        BraidWord::from_signed(n, &signed)
    }
}

impl From<BraidWord> for (usize, Vec<i32>) {
    fn from(word: BraidWord) -> Self {
        let signed = word.signed();
        (word.n_strands, signed)
    }
}

/// A permutation of `{1, …, n}` stored 0-based: `images[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &image in &images {
            if image >= n || seen[image] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection"
                )));
            }
            seen[image] = true;
        }
        Ok(Permutation { images })
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        if one_line.contains(&0) {
            return Err(Error::InvalidPermutation(
                "one-line notation is 1-based".into(),
            ));
        }
        Permutation::from_images(one_line.iter().map(|&v| v - 1).collect())
    }

    /// The transposition of positions `i` and `i+1` (1-based `i`).
    pub fn adjacent_transposition(n: usize, i: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of the 1-based point `p`, 1-based.
    pub fn apply(&self, p: usize) -> usize {
        self.images[p - 1] + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: self.images.iter().map(|&v| other.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    pub fn inversions(&self) -> usize {
        let n = self.images.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.images[i] > self.images[j])
            .count()
    }

    /// Cycles as sorted 1-based point lists, ordered by least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p];
            }
            cycle.sort_unstable();
            cycles.push(cycle);
        }
        cycles
    }
}

impl fmt::Display for Permutation {
    /// One-line notation; digits are run together below ten points.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_line = self.one_line();
        if one_line.len() < 10 {
            for v in one_line {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = one_line.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidPermutation(s.to_string()))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::InvalidPermutation(s.to_string()))?
        };
        Permutation::from_one_line(&values)
    }
}

/// The components of a closed braid, given by the cycles of its permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    cycles: Vec<Vec<usize>>,
    component_of: Vec<usize>,
}

impl ComponentPartition {
    pub fn from_permutation(permutation: &Permutation) -> Self {
        let cycles = permutation.cycles();
        let mut component_of = vec![0; permutation.len()];
        for (id, cycle) in cycles.iter().enumerate() {
            for &p in cycle {
                component_of[p - 1] = id + 1;
            }
        }
        ComponentPartition {
            cycles,
            component_of,
        }
    }

    pub fn count(&self) -> usize {
        self.cycles.len()
    }

    /// Strand start positions of each component; component `c` is `cycles()[c-1]`.
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Component id (1-based) of the 1-based start position `p`.
    pub fn component_of(&self, p: usize) -> usize {
        self.component_of[p - 1]
    }

    pub fn is_knot(&self) -> bool {
        self.cycles.len() == 1
    }
}

/// The two strands (by start position) meeting at one letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub strands: (usize, usize),
    pub sign: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingRecord {
    crossings: Vec<Crossing>,
}

impl CrossingRecord {
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn sign_sum(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    #[test]
    fn parses_the_flype_pair_word() {
        let word = w("s1^5 s2^4 s1^6 s2^-1", 3);
        assert_eq!(word.len(), 16);
        let mut expected = vec![1; 5];
        expected.extend([2; 4]);
        expected.extend([1; 6]);
        expected.push(-2);
        assert_eq!(word.signed(), expected);
    }

    #[test]
    fn parses_empty_and_rejects_bad_tokens() {
        assert_eq!(w("", 4), BraidWord::identity(4));
        assert_eq!(
            BraidWord::parse("s3 s1", 3),
            Err(Error::IndexOutOfRange {
                index: 3,
                n_strands: 3
            })
        );
        assert!(matches!(
            BraidWord::parse("s1^0", 3),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            BraidWord::parse("x1", 3),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            BraidWord::parse("s0", 3),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            BraidWord::parse("s1^", 3),
            Err(Error::Syntax { .. })
        ));
        assert_eq!(BraidWord::parse("", 0), Err(Error::NoStrands));
        assert_eq!(
            BraidWord::parse_minimal("s1 s3^-2").unwrap(),
            w("s1 s3^-2", 4)
        );
        assert_eq!(
            BraidWord::parse_minimal("").unwrap(),
            BraidWord::identity(1)
        );
    }

    #[test]
    fn display_round_trips() {
        let word = w("s1^5 s2^4 s1^6 s2^-1", 3);
        assert_eq!(word.to_string(), "s1^5 s2^4 s1^6 s2^-1");
        assert_eq!(w(&word.to_string(), 3), word);
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(w("s1^5 s2^4 s1^6 s2^-1", 3).exponent_sum(), 14);
        assert_eq!(w("s1^5 s2^-1 s1^6 s2^4", 3).exponent_sum(), 14);
        assert_eq!(BraidWord::identity(3).exponent_sum(), 0);
    }

    #[test]
    fn group_operations() {
        let s1 = w("s1", 3);
        assert!(s1.multiply(&s1.invert()).unwrap().is_empty());
        assert_eq!(w("s1 s2", 3).invert(), w("s2^-1 s1^-1", 3));
        assert_eq!(s1.conjugate(&w("s2", 3)).unwrap(), w("s2^-1 s1 s2", 3));
        assert_eq!(
            s1.multiply(&w("s1", 2)),
            Err(Error::StrandMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn serde_pair_encoding() {
        let word = w("s1^5 s2^4 s1^6 s2^-1", 3);
        let json = serde_json::to_string(&word).unwrap();
        assert_eq!(json, "[3,[1,1,1,1,1,2,2,2,2,1,1,1,1,1,1,-2]]");
        let back: BraidWord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, word);
        assert!(serde_json::from_str::<BraidWord>("[2,[2]]").is_err());
    }

    #[test]
    fn permutations_of_small_words() {
        assert_eq!(
            w("s1", 3).underlying_permutation().one_line(),
            vec![2, 1, 3]
        );
        assert!(BraidWord::identity(3)
            .underlying_permutation()
            .is_identity());
    }

    /// Oracle: compose the letters' transpositions as explicit position maps.
    fn permutation_oracle(word: &BraidWord) -> Vec<usize> {
        (1..=word.n_strands())
            .map(|start| {
                let mut p = start;
                for l in word.letters() {
                    if p == l.index() {
                        p += 1;
                    } else if p == l.index() + 1 {
                        p -= 1;
                    }
                }
                p
            })
            .collect()
    }

    #[test]
    fn link_example_permutation_is_a_transposition() {
        let word = w("s1^3 s2^4 s1^-5 s2^-1", 3);
        let oracle = permutation_oracle(&word);
        assert_eq!(oracle, vec![1, 3, 2]);
        assert_eq!(word.underlying_permutation().one_line(), oracle);
    }

    #[test]
    fn closure_components_examples() {
        assert_eq!(BraidWord::identity(3).closure_components().count(), 3);
        let link = w("s1^3 s2^4 s1^-5 s2^-1", 3).closure_components();
        assert_eq!(link.cycles(), &[vec![1], vec![2, 3]]);
        assert_eq!(link.component_of(1), 1);
        assert_eq!(link.component_of(3), 2);
        assert!(w("s1 s2", 3).closure_components().is_knot());
    }

    /// Oracle: for crossing k, find the strands whose simulated position
    /// just before letter k is i or i+1.
    fn crossing_oracle(word: &BraidWord) -> Vec<((usize, usize), i32)> {
        let letters = word.letters();
        (0..letters.len())
            .map(|k| {
                let i = letters[k].index();
                let mut found = Vec::new();
                for strand in 1..=word.n_strands() {
                    let mut p = strand;
                    for l in &letters[..k] {
                        if p == l.index() {
                            p += 1;
                        } else if p == l.index() + 1 {
                            p -= 1;
                        }
                    }
                    if p == i || p == i + 1 {
                        found.push(strand);
                    }
                }
                ((found[0], found[1]), letters[k].sign())
            })
            .collect()
    }

    #[test]
    fn crossing_records_examples() {
        let one = w("s1", 2).crossing_records();
        assert_eq!(
            one.crossings(),
            &[Crossing {
                strands: (1, 2),
                sign: 1
            }]
        );
        let three = w("s1^3", 2).crossing_records();
        assert!(three
            .crossings()
            .iter()
            .all(|c| c.strands == (1, 2) && c.sign == 1));

        let word = w("s1^3 s2^4 s1^-5 s2^-1", 3);
        let mut expected = vec![((1, 2), 1); 3];
        expected.extend(vec![((1, 3), 1); 4]);
        expected.extend(vec![((1, 2), -1); 5]);
        expected.push(((2, 3), -1));
        assert_eq!(crossing_oracle(&word), expected);
        let got: Vec<_> = word
            .crossing_records()
            .crossings()
            .iter()
            .map(|c| (c.strands, c.sign))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn cyclic_reduction_tracks_conjugator() {
        let word = w("s2^-1 s1 s1 s2", 3);
        let (reduced, g) = word.cyclically_reduced();
        assert_eq!(reduced, w("s1 s1", 3));
        assert_eq!(word.conjugate(&g).unwrap(), reduced);
    }

    #[test]
    fn permutation_text_round_trip() {
        let p: Permutation = "312".parse().unwrap();
        assert_eq!(p.to_string(), "312");
        assert_eq!(p.inversions(), 2);
        assert!("112".parse::<Permutation>().is_err());
        let big = Permutation::identity(11);
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
    }

    pub(crate) fn arb_word(max_n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
        (2..=max_n).prop_flat_map(move |n| {
            prop::collection::vec((1..n, prop::bool::ANY), 0..=max_len).prop_map(move |raw| {
                let letters = raw
                    .into_iter()
                    .map(|(i, p)| Letter::new(i, if p { 1 } else { -1 }))
                    .collect();
                BraidWord::new(n, letters).unwrap()
            })
        })
    }

    fn arb_pair(max_n: usize, max_len: usize) -> impl Strategy<Value = (BraidWord, BraidWord)> {
        arb_word(max_n, max_len).prop_flat_map(move |u| {
            let n = u.n_strands();
            (
                Just(u),
                prop::collection::vec((1..n, prop::bool::ANY), 0..=max_len).prop_map(move |raw| {
                    let letters = raw
                        .into_iter()
                        .map(|(i, p)| Letter::new(i, if p { 1 } else { -1 }))
                        .collect();
                    BraidWord::new(n, letters).unwrap()
                }),
            )
        })
    }

    proptest! {
        #[test]
        fn word_times_inverse_is_empty(word in arb_word(5, 14)) {
            prop_assert!(word.multiply(&word.invert()).unwrap().is_empty());
        }

        #[test]
        fn permutation_is_a_homomorphism((u, v) in arb_pair(5, 10)) {
            let uv = u.multiply(&v).unwrap();
            prop_assert_eq!(
                uv.underlying_permutation(),
                u.underlying_permutation().then(&v.underlying_permutation())
            );
        }

        #[test]
        fn conjugation_keeps_exponent_sum((w, g) in arb_pair(5, 10)) {
            prop_assert_eq!(w.conjugate(&g).unwrap().exponent_sum(), w.exponent_sum());
        }

        #[test]
        fn crossing_signs_sum_to_exponent_sum(word in arb_word(5, 16)) {
            prop_assert_eq!(word.crossing_records().sign_sum(), word.exponent_sum());
        }

        #[test]
        fn crossings_split_into_self_and_cross(word in arb_word(5, 16)) {
            let parts = word.closure_components();
            let records = word.crossing_records();
            let mut per_component = vec![0usize; parts.count() + 1];
            let mut cross = 0usize;
            for c in records.crossings() {
                let (a, b) = (parts.component_of(c.strands.0), parts.component_of(c.strands.1));
                if a == b { per_component[a] += 1 } else { cross += 1 }
            }
            prop_assert_eq!(per_component.iter().sum::<usize>() + cross, word.len());
        }
    }
}
