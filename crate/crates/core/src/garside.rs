//! Garside left normal forms and super summit sets.
//!
//! Closed braids are braid isotopic exactly when the braids are conjugate, so
//! this module is what decides "same closed braid". Canonical factors are
//! permutation braids held as permutations (`images[i]` = end position of the
//! strand starting at position `i`, 0-based).

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Letter, Permutation};
use crate::error::{Error, Result};

/// Default bound on the number of super summit elements.
pub const DEFAULT_SUMMIT_CAP: usize = 10_000;

/// A positive braid in which each pair of strands crosses at most once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutationBraid {
    images: Vec<u8>,
}

impl PermutationBraid {
    pub fn identity(n: usize) -> Self {
        PermutationBraid {
            images: (0..n as u8).collect(),
        }
    }

    /// The half twist `Δ`: `i ↦ n+1-i`.
    pub fn delta(n: usize) -> Self {
        PermutationBraid {
            images: (0..n as u8).rev().collect(),
        }
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut images: Vec<u8> = (0..n as u8).collect();
        images.swap(i - 1, i);
        PermutationBraid { images }
    }

    pub fn from_permutation(permutation: &Permutation) -> Self {
        PermutationBraid {
            images: permutation.images().iter().map(|&v| v as u8).collect(),
        }
    }

    pub fn permutation(&self) -> Permutation {
        Permutation::from_images(self.images.iter().map(|&v| v as usize).collect())
            .expect("permutation braids hold valid permutations")
    }

    pub fn n_strands(&self) -> usize {
        self.images.len()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| i == v as usize)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.images.len();
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == n - 1 - i)
    }

    /// Number of crossings, i.e. the length of any positive word for it.
    pub fn length(&self) -> usize {
        let n = self.images.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Bit `i-1` set when the braid can start with `σᵢ`.
    pub fn starting_set(&self) -> u64 {
        let mut set = 0;
        for i in 0..self.images.len().saturating_sub(1) {
            if self.images[i] > self.images[i + 1] {
                set |= 1 << i;
            }
        }
        set
    }

    /// Bit `i-1` set when the braid can end with `σᵢ`.
    pub fn finishing_set(&self) -> u64 {
        let inverse = self.inverse_images();
        let mut set = 0;
        for i in 0..inverse.len().saturating_sub(1) {
            if inverse[i] > inverse[i + 1] {
                set |= 1 << i;
            }
        }
        set
    }

    fn inverse_images(&self) -> Vec<u8> {
        let mut inverse = vec![0u8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inverse[v as usize] = i as u8;
        }
        inverse
    }

    /// Conjugation by `Δ`, i.e. `σᵢ ↦ σₙ₋ᵢ`.
    pub fn tau(&self) -> Self {
        let n = self.images.len();
        let last = (n - 1) as u8;
        PermutationBraid {
            images: (0..n).map(|i| last - self.images[n - 1 - i]).collect(),
        }
    }

    pub fn tau_power(&self, k: i64) -> Self {
        if k.rem_euclid(2) == 1 {
            self.tau()
        } else {
            self.clone()
        }
    }

    /// The simple `X` with `X · self = Δ`.
    pub fn left_complement(&self) -> Self {
        let n = self.images.len();
        let inverse = self.inverse_images();
        PermutationBraid {
            images: (0..n).map(|i| inverse[n - 1 - i]).collect(),
        }
    }

    /// The simple `Y` with `self · Y = Δ`.
    pub fn right_complement(&self) -> Self {
        let last = (self.images.len() - 1) as u8;
        PermutationBraid {
            images: self
                .inverse_images()
                .into_iter()
                .map(|v| last - v)
                .collect(),
        }
    }

    /// `self · σᵢ`; only simple when `i` is not in the finishing set.
    fn append_generator(&mut self, i: usize) {
        let (a, b) = ((i - 1) as u8, i as u8);
        for v in self.images.iter_mut() {
            if *v == a {
                *v = b;
            } else if *v == b {
                *v = a;
            }
        }
    }

    /// `σᵢ⁻¹ · self`; only positive when `i` is in the starting set.
    fn strip_leading_generator(&mut self, i: usize) {
        self.images.swap(i - 1, i);
    }

    /// `self · other` as permutations (strands of `self` first).
    pub fn then(&self, other: &PermutationBraid) -> PermutationBraid {
        PermutationBraid {
            images: self
                .images
                .iter()
                .map(|&v| other.images[v as usize])
                .collect(),
        }
    }

    /// A positive word of minimal length.
    pub fn word(&self) -> Vec<Letter> {
        let mut rest = self.clone();
        let mut letters = Vec::with_capacity(rest.length());
        loop {
            let set = rest.starting_set();
            if set == 0 {
                break;
            }
            let i = set.trailing_zeros() as usize + 1;
            letters.push(Letter::pos(i));
            rest.strip_leading_generator(i);
        }
        letters
    }

    /// Prefix order: `self ≼ other`.
    pub fn is_prefix_of(&self, other: &PermutationBraid) -> bool {
        // self ≼ other iff every pair inverted by self is inverted by other
        let n = self.images.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| self.images[i] < self.images[j] || other.images[i] > other.images[j])
        })
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }
}

impl Serialize for PermutationBraid {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PermutationBraid {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let one_line = Vec::<usize>::deserialize(deserializer)?;
        let permutation =
            Permutation::from_one_line(&one_line).map_err(serde::de::Error::custom)?;
        Ok(PermutationBraid::from_permutation(&permutation))
    }
}

impl fmt::Display for PermutationBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.permutation().fmt(f)
    }
}

/// Every permutation braid on `n` strands, identity first.
pub fn all_permutation_braids(n: usize) -> Vec<PermutationBraid> {
    fn extend(prefix: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<PermutationBraid>) {
        if prefix.len() == used.len() {
            out.push(PermutationBraid {
                images: prefix.clone(),
            });
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v as u8);
                extend(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Rewrites `(a, b)` into a left-weighted pair with the same product.
/// Returns whether anything moved.
pub fn make_left_weighted(a: &mut PermutationBraid, b: &mut PermutationBraid) -> bool {
    let mut changed = false;
    loop {
        let movable = b.starting_set() & !a.finishing_set();
        if movable == 0 {
            return changed;
        }
        let i = movable.trailing_zeros() as usize + 1;
        a.append_generator(i);
        b.strip_leading_generator(i);
        changed = true;
    }
}

/// `Δᵏ · A₁ ⋯ A_l` in left normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalForm {
    n_strands: usize,
    delta_power: i64,
    factors: Vec<PermutationBraid>,
}

impl NormalForm {
    pub fn identity(n_strands: usize) -> Self {
        NormalForm {
            n_strands,
            delta_power: 0,
            factors: Vec::new(),
        }
    }

    pub fn delta_power_of(n_strands: usize, k: i64) -> Self {
        NormalForm {
            n_strands,
            delta_power: k,
            factors: Vec::new(),
        }
    }

    /// Normalizes the product `Δᵏ · A₁ ⋯ A_m` of arbitrary simple factors.
    pub fn from_parts(n_strands: usize, delta_power: i64, factors: Vec<PermutationBraid>) -> Self {
        let mut nf = NormalForm::delta_power_of(n_strands, delta_power);
        for factor in factors {
            nf.push_simple(factor);
        }
        nf
    }

    pub fn from_word(word: &BraidWord) -> Self {
        let n = word.n_strands();
        let mut nf = NormalForm::identity(n);
        for letter in word.letters() {
            let generator = PermutationBraid::generator(n, letter.index());
            if letter.is_positive() {
                nf.push_simple(generator);
            } else {
                // x σᵢ⁻¹ = x Δ⁻¹ (Δσᵢ⁻¹) and x Δ⁻¹ = Δ⁻¹ τ(x)
                nf.delta_power -= 1;
                for factor in nf.factors.iter_mut() {
                    *factor = factor.tau();
                }
                nf.push_simple(generator.left_complement());
            }
        }
        nf
    }

    /// Right multiplication by a simple element, restoring normal form.
    fn push_simple(&mut self, simple: PermutationBraid) {
        if simple.is_identity() {
            return;
        }
        self.factors.push(simple);
        let mut j = self.factors.len() - 1;
        while j > 0 {
            let (head, tail) = self.factors.split_at_mut(j);
            if !make_left_weighted(&mut head[j - 1], &mut tail[0]) {
                break;
            }
            j -= 1;
        }
        let leading_deltas = self.factors.iter().take_while(|f| f.is_delta()).count();
        if leading_deltas > 0 {
            self.factors.drain(..leading_deltas);
            self.delta_power += leading_deltas as i64;
        }
        while self.factors.last().is_some_and(|f| f.is_identity()) {
            self.factors.pop();
        }
    }

    pub fn n_strands(&self) -> usize {
        self.n_strands
    }

    pub fn delta_power(&self) -> i64 {
        self.delta_power
    }

    pub fn factors(&self) -> &[PermutationBraid] {
        &self.factors
    }

    pub fn inf(&self) -> i64 {
        self.delta_power
    }

    pub fn sup(&self) -> i64 {
        self.delta_power + self.factors.len() as i64
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    /// A word for the element: `Δᵏ` written out, then each factor.
    pub fn to_word(&self) -> BraidWord {
        let n = self.n_strands;
        let delta = PermutationBraid::delta(n).word();
        let mut letters = Vec::new();
        let delta_letters: Vec<Letter> = if self.delta_power >= 0 {
            delta
        } else {
            delta.iter().rev().map(|l| l.inverse()).collect()
        };
        for _ in 0..self.delta_power.unsigned_abs() {
            letters.extend_from_slice(&delta_letters);
        }
        for factor in &self.factors {
            letters.extend(factor.word());
        }
        BraidWord::new(n, letters).expect("normal form letters are in range")
    }

    pub fn multiply(&self, other: &NormalForm) -> NormalForm {
        assert_eq!(self.n_strands, other.n_strands);
        // Δᵃ A Δᵇ B = Δᵃ⁺ᵇ τᵇ(A) B
        let mut factors: Vec<PermutationBraid> = self
            .factors
            .iter()
            .map(|f| f.tau_power(other.delta_power))
            .collect();
        factors.extend(other.factors.iter().cloned());
        NormalForm::from_parts(
            self.n_strands,
            self.delta_power + other.delta_power,
            factors,
        )
    }

    pub fn inverse(&self) -> NormalForm {
        // (Δᵏ A₁⋯A_l)⁻¹ = A_l⁻¹ ⋯ A₁⁻¹ Δ⁻ᵏ, with A⁻¹ = Δ⁻¹ L(A)
        let mut nf = NormalForm::identity(self.n_strands);
        for factor in self.factors.iter().rev() {
            nf = nf.multiply(&NormalForm::from_parts(
                self.n_strands,
                -1,
                vec![factor.left_complement()],
            ));
        }
        nf.multiply(&NormalForm::delta_power_of(
            self.n_strands,
            -self.delta_power,
        ))
    }

    /// `s⁻¹ · self · s` for a simple `s`.
    pub fn conjugate_by_simple(&self, s: &PermutationBraid) -> NormalForm {
        // s⁻¹ = Δ⁻¹ L(s) and L(s) Δᵏ = Δᵏ τᵏ(L(s))
        let mut factors = Vec::with_capacity(self.factors.len() + 2);
        factors.push(s.left_complement().tau_power(self.delta_power));
        factors.extend(self.factors.iter().cloned());
        factors.push(s.clone());
        NormalForm::from_parts(self.n_strands, self.delta_power - 1, factors)
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate(&self, g: &NormalForm) -> NormalForm {
        g.inverse().multiply(self).multiply(g)
    }

    /// Cycling, with the conjugator `c` such that the result is `c⁻¹ · self · c`.
    pub fn cycling_with_conjugator(&self) -> (NormalForm, PermutationBraid) {
        let Some(first) = self.factors.first() else {
            return (self.clone(), PermutationBraid::identity(self.n_strands));
        };
        let conjugator = first.tau_power(self.delta_power);
        let mut factors: Vec<PermutationBraid> = self.factors[1..].to_vec();
        factors.push(conjugator.clone());
        (
            NormalForm::from_parts(self.n_strands, self.delta_power, factors),
            conjugator,
        )
    }

    pub fn cycling(&self) -> NormalForm {
        self.cycling_with_conjugator().0
    }

    /// Decycling, with the conjugator `c` such that the result is `c⁻¹ · self · c`.
    pub fn decycling_with_conjugator(&self) -> (NormalForm, NormalForm) {
        let Some(last) = self.factors.last() else {
            return (self.clone(), NormalForm::identity(self.n_strands));
        };
        let l = self.factors.len();
        let mut factors = Vec::with_capacity(l);
        factors.push(last.tau_power(self.delta_power));
        factors.extend(self.factors[..l - 1].iter().cloned());
        let result = NormalForm::from_parts(self.n_strands, self.delta_power, factors);
        let conjugator = NormalForm::from_parts(self.n_strands, 0, vec![last.clone()]).inverse();
        (result, conjugator)
    }

    pub fn decycling(&self) -> NormalForm {
        self.decycling_with_conjugator().0
    }

    /// Parses `D^k | p1 | p2 | ...`.
    pub fn parse(text: &str, n_strands: usize) -> Result<NormalForm> {
        let mut parts = text.split('|').map(str::trim);
        let head = parts.next().unwrap_or_default();
        let power = head
            .strip_prefix("D^")
            .and_then(|k| k.parse::<i64>().ok())
            .ok_or_else(|| Error::Syntax {
                token: head.to_string(),
                reason: "expected D^<k>".into(),
            })?;
        let mut factors = Vec::new();
        for part in parts.filter(|p| !p.is_empty()) {
            let permutation: Permutation = part.parse()?;
            if permutation.len() != n_strands {
                return Err(Error::StrandMismatch {
                    left: n_strands,
                    right: permutation.len(),
                });
            }
            factors.push(PermutationBraid::from_permutation(&permutation));
        }
        let nf = NormalForm::from_parts(n_strands, power, factors.clone());
        if nf.delta_power != power || nf.factors != factors {
            return Err(Error::Syntax {
                token: text.to_string(),
                reason: "factors are not in left normal form".into(),
            });
        }
        Ok(nf)
    }
}

impl Ord for NormalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.delta_power
            .cmp(&other.delta_power)
            .then(self.factors.len().cmp(&other.factors.len()))
            .then_with(|| self.factors.cmp(&other.factors))
            .then(self.n_strands.cmp(&other.n_strands))
    }
}

impl PartialOrd for NormalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{} |", self.delta_power)?;
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" |")?;
            }
            write!(f, " {factor}")?;
        }
        Ok(())
    }
}

pub fn left_normal_form(word: &BraidWord) -> NormalForm {
    NormalForm::from_word(word)
}

/// The whole super summit set of a braid, sorted. Equal exactly for conjugates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConjugacyKey {
    elements: Vec<NormalForm>,
}

impl ConjugacyKey {
    pub fn elements(&self) -> &[NormalForm] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn n_strands(&self) -> usize {
        self.elements[0].n_strands
    }

    pub fn serialized(&self) -> Vec<String> {
        self.elements.iter().map(|e| e.to_string()).collect()
    }
}

/// Conjugates `x` into its super summit set. Returns the summit element `y`
/// and `c` with `c⁻¹ x c = y`.
pub fn reach_super_summit(x: &NormalForm) -> (NormalForm, NormalForm) {
    let n = x.n_strands;
    let window = (n * (n - 1) / 2).max(1);
    let mut current = x.clone();
    let mut conjugator = NormalForm::identity(n);
    loop {
        let mut improved = false;

        // cycling until the infimum stops growing
        'cycle: loop {
            let mut probe = current.clone();
            let mut probe_conj = conjugator.clone();
            for _ in 0..window {
                if probe.factors.is_empty() {
                    break 'cycle;
                }
                let (next, c) = probe.cycling_with_conjugator();
                probe_conj = probe_conj.multiply(&NormalForm::from_parts(n, 0, vec![c]));
                probe = next;
                if probe.inf() > current.inf() {
                    current = probe;
                    conjugator = probe_conj;
                    improved = true;
                    continue 'cycle;
                }
            }
            break;
        }

        // decycling until the supremum stops shrinking
        'decycle: loop {
            let mut probe = current.clone();
            let mut probe_conj = conjugator.clone();
            for _ in 0..window {
                if probe.factors.is_empty() {
                    break 'decycle;
                }
                let (next, c) = probe.decycling_with_conjugator();
                probe_conj = probe_conj.multiply(&c);
                probe = next;
                if probe.sup() < current.sup() && probe.inf() >= current.inf() {
                    current = probe;
                    conjugator = probe_conj;
                    improved = true;
                    continue 'decycle;
                }
            }
            break;
        }

        if !improved {
            return (current, conjugator);
        }
    }
}

/// Closure of a summit element under conjugation by simple elements, each
/// element paired with a conjugator from `start`.
pub fn summit_closure(start: &NormalForm, cap: usize) -> Result<BTreeMap<NormalForm, NormalForm>> {
    let n = start.n_strands;
    let simples: Vec<PermutationBraid> = all_permutation_braids(n)
        .into_iter()
        .filter(|s| !s.is_identity())
        .collect();
    let inf = start.inf();
    let length = start.canonical_length();
    let mut found: BTreeMap<NormalForm, NormalForm> = BTreeMap::new();
    found.insert(start.clone(), NormalForm::identity(n));
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(x) = queue.pop_front() {
        let x_conj = found[&x].clone();
        for s in &simples {
            let y = x.conjugate_by_simple(s);
            if y.inf() != inf || y.canonical_length() != length || found.contains_key(&y) {
                continue;
            }
            if found.len() >= cap {
                return Err(Error::ResourceCap { cap });
            }
            let y_conj = x_conj.multiply(&NormalForm::from_parts(n, 0, vec![s.clone()]));
            found.insert(y.clone(), y_conj);
            queue.push_back(y);
        }
    }
    Ok(found)
}

pub fn super_summit_set(word: &BraidWord) -> Result<ConjugacyKey> {
    super_summit_set_with_cap(word, DEFAULT_SUMMIT_CAP)
}

pub fn super_summit_set_with_cap(word: &BraidWord, cap: usize) -> Result<ConjugacyKey> {
    let (summit, _) = reach_super_summit(&NormalForm::from_word(word));
    let closure = summit_closure(&summit, cap)?;
    Ok(ConjugacyKey {
        elements: closure.into_keys().collect(),
    })
}

fn cycle_type(word: &BraidWord) -> Vec<usize> {
    let mut lengths: Vec<usize> = word
        .underlying_permutation()
        .cycles()
        .iter()
        .map(Vec::len)
        .collect();
    lengths.sort_unstable();
    lengths
}

/// Decides conjugacy; on success returns `g` with `g⁻¹ u g = v`.
pub fn conjugating_element(u: &BraidWord, v: &BraidWord) -> Result<Option<BraidWord>> {
    conjugating_element_with_cap(u, v, DEFAULT_SUMMIT_CAP)
}

pub fn conjugating_element_with_cap(
    u: &BraidWord,
    v: &BraidWord,
    cap: usize,
) -> Result<Option<BraidWord>> {
    if u.n_strands() != v.n_strands() {
        return Err(Error::StrandMismatch {
            left: u.n_strands(),
            right: v.n_strands(),
        });
    }
    if u.exponent_sum() != v.exponent_sum() || cycle_type(u) != cycle_type(v) {
        return Ok(None);
    }
    let (summit_u, conj_u) = reach_super_summit(&NormalForm::from_word(u));
    let (summit_v, conj_v) = reach_super_summit(&NormalForm::from_word(v));
    if summit_u.inf() != summit_v.inf()
        || summit_u.canonical_length() != summit_v.canonical_length()
    {
        return Ok(None);
    }
    let closure = summit_closure(&summit_u, cap)?;
    let Some(bridge) = closure.get(&summit_v) else {
        return Ok(None);
    };
    let g = conj_u.multiply(bridge).multiply(&conj_v.inverse());
    Ok(Some(g.to_word()))
}

pub fn are_conjugate(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    Ok(conjugating_element(u, v)?.is_some())
}
