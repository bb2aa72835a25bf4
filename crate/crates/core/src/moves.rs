//! Markov, exchange and 3-braid flype moves on closed braids.
//!
//! Matchers scan cyclic rotations: a rotation of a braid word is a conjugate,
//! so it has the same closure.

use serde::{Deserialize, Serialize};

use crate::braid::{free_reduce, BraidWord, Letter};
use crate::error::{Error, Result};
use crate::garside::{all_permutation_braids, NormalForm};

/// Default number of simple-element conjugations tried by destabilization.
pub const DEFAULT_DESTAB_DEPTH: usize = 2;

/// `w · σₙ^{sign}` on `n + 1` strands.
pub fn stabilize(word: &BraidWord, sign: i32) -> BraidWord {
    let n = word.n_strands();
    let mut letters = word.letters().to_vec();
    letters.push(Letter::new(n, sign));
    BraidWord::new(n + 1, letters).expect("σₙ is valid on n + 1 strands")
}

/// A destabilization found on some conjugate: `conjugator⁻¹ · w · conjugator`
/// equals `word · σₙ₋₁^{sign}` with `word` on `n - 1` strands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Destabilization {
    pub word: BraidWord,
    pub conjugator: BraidWord,
    pub sign: i32,
}

/// Destabilization of a word whose last letter is its only `σₙ₋₁^{±1}`.
pub fn literal_destabilization(word: &BraidWord) -> Option<(BraidWord, i32)> {
    let n = word.n_strands();
    if n < 2 {
        return None;
    }
    let top = n - 1;
    let (last, rest) = word.letters().split_last()?;
    if last.index() != top || rest.iter().any(|l| l.index() == top) {
        return None;
    }
    let lower = BraidWord::new(n - 1, rest.to_vec()).expect("letters below σₙ₋₁");
    Some((lower, last.sign()))
}

/// Conjugates to scan: the word itself, then conjugates by up to `depth`
/// successive simple elements. Each comes with `g` such that `g⁻¹ w g` is it.
fn destab_candidates(word: &BraidWord, depth: usize) -> Vec<(BraidWord, BraidWord)> {
    let n = word.n_strands();
    let mut out = vec![(word.clone(), BraidWord::identity(n))];
    if depth == 0 || n < 3 {
        return out;
    }
    let simples: Vec<_> = all_permutation_braids(n)
        .into_iter()
        .filter(|s| !s.is_identity())
        .collect();
    let start = NormalForm::from_word(word);
    let mut seen = std::collections::BTreeSet::from([start.clone()]);
    let mut layer = vec![(start, NormalForm::identity(n))];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (x, g) in &layer {
            for s in &simples {
                let y = x.conjugate_by_simple(s);
                if !seen.insert(y.clone()) {
                    continue;
                }
                let g_y = g.multiply(&NormalForm::from_parts(n, 0, vec![s.clone()]));
                out.push((y.to_word(), g_y.to_word()));
                next.push((y, g_y));
            }
        }
        layer = next;
    }
    out
}

/// All destabilizations visible on the candidate conjugates. Not finding one
/// does not show the closure is non-destabilizable.
pub fn find_destabilizations(word: &BraidWord, depth: usize) -> Vec<Destabilization> {
    let n = word.n_strands();
    if n < 2 {
        return Vec::new();
    }
    let top = n - 1;
    let mut found: Vec<Destabilization> = Vec::new();
    for (candidate, g) in destab_candidates(word, depth) {
        let (reduced, h) = candidate.cyclically_reduced();
        let letters = reduced.letters();
        let tops: Vec<usize> = (0..letters.len())
            .filter(|&k| letters[k].index() == top)
            .collect();
        if tops.len() != 1 {
            continue;
        }
        let k = tops[0];
        let start = (k + 1) % letters.len();
        let rotated = reduced.rotated(start);
        let (lower, sign) =
            literal_destabilization(&rotated).expect("single top letter at the end");
        if found.iter().any(|d| d.word == lower && d.sign == sign) {
            continue;
        }
        // rotation by `start` is conjugation by the rotated-away prefix
        let prefix = BraidWord::new(n, letters[..start].to_vec()).expect("same strands");
        let conjugator = g
            .multiply(&h)
            .and_then(|gh| gh.multiply(&prefix))
            .expect("same strands");
        found.push(Destabilization {
            word: lower,
            conjugator,
            sign,
        });
    }
    found
}

pub fn try_destabilize(word: &BraidWord, depth: usize) -> Option<Destabilization> {
    find_destabilizations(word, depth).into_iter().next()
}

/// A cyclic rotation of a word read as `P · σₙ₋₁^{s} · Q · σₙ₋₁^{-s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeDecomposition {
    /// Start index of the rotation in the original word.
    pub rotation: usize,
    pub p: BraidWord,
    pub q: BraidWord,
    /// Sign of the first `σₙ₋₁` letter.
    pub sign: i32,
}

/// Both decompositions when the word has exactly two `σₙ₋₁` letters of
/// opposite sign; empty otherwise.
pub fn find_exchange_decompositions(word: &BraidWord) -> Vec<ExchangeDecomposition> {
    let n = word.n_strands();
    if n < 3 {
        return Vec::new();
    }
    let top = n - 1;
    let letters = word.letters();
    let tops: Vec<usize> = (0..letters.len())
        .filter(|&k| letters[k].index() == top)
        .collect();
    if tops.len() != 2 || letters[tops[0]].sign() == letters[tops[1]].sign() {
        return Vec::new();
    }
    let len = letters.len();
    let mut out = Vec::new();
    for (a, b) in [(tops[1], tops[0]), (tops[0], tops[1])] {
        // rotation starts just after b, so it reads P σ(a) Q σ(b)
        let rotation = (b + 1) % len;
        let rotated = word.rotated(rotation);
        let first = (a + len - rotation) % len;
        let p = rotated.letters()[..first].to_vec();
        let q = rotated.letters()[first + 1..len - 1].to_vec();
        out.push(ExchangeDecomposition {
            rotation,
            p: BraidWord::new(n, p).expect("same strands"),
            q: BraidWord::new(n, q).expect("same strands"),
            sign: letters[a].sign(),
        });
    }
    out.sort_by_key(|d| d.rotation);
    out
}

/// `P · σₙ₋₁^{-s} · Q · σₙ₋₁^{s}`, letter for letter.
pub fn apply_exchange(decomposition: &ExchangeDecomposition) -> BraidWord {
    let d = decomposition;
    let n = d.p.n_strands();
    let mut letters = d.p.letters().to_vec();
    letters.push(Letter::new(n - 1, -d.sign));
    letters.extend_from_slice(d.q.letters());
    letters.push(Letter::new(n - 1, d.sign));
    BraidWord::new(n, letters).expect("same strands")
}

/// Exchange at the decomposition with the given rotation.
pub fn exchange_at(word: &BraidWord, rotation: usize) -> Result<BraidWord> {
    find_exchange_decompositions(word)
        .iter()
        .find(|d| d.rotation == rotation)
        .map(apply_exchange)
        .ok_or_else(|| {
            Error::InvalidDecomposition(format!(
                "no exchange decomposition at rotation {rotation} of {word}"
            ))
        })
}

/// A cyclic rotation of a 3-braid read as `σ₁^p σ₂^r σ₁^q σ₂^ε`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlypeData {
    /// Start index of the `P` syllable in the original word.
    pub rotation: usize,
    pub p: i32,
    pub r: i32,
    pub q: i32,
    pub epsilon: i32,
}

/// Maximal runs of equal generator index, read cyclically from a run
/// boundary. Returns `(start, index, exponent)`, or `None` for a run that
/// mixes signs.
fn cyclic_syllables(letters: &[Letter]) -> Option<Vec<(usize, usize, i32)>> {
    let len = letters.len();
    let boundary =
        (0..len).find(|&k| letters[k].index() != letters[(k + len - 1) % len].index())?;
    let mut out: Vec<(usize, usize, i32)> = Vec::new();
    let mut signs: Vec<i32> = Vec::new();
    for step in 0..len {
        let k = (boundary + step) % len;
        let l = letters[k];
        match out.last_mut() {
            Some((_, index, power)) if *index == l.index() => {
                *power += l.sign();
                if *signs.last().unwrap() != l.sign() {
                    return None;
                }
            }
            _ => {
                out.push((k, l.index(), l.sign()));
                signs.push(l.sign());
            }
        }
    }
    Some(out)
}

/// Every flype pattern among the cyclic rotations, ordered by rotation.
pub fn find_flypes(word: &BraidWord) -> Vec<FlypeData> {
    if word.n_strands() != 3 {
        return Vec::new();
    }
    let Some(syllables) = cyclic_syllables(word.letters()) else {
        return Vec::new();
    };
    if syllables.len() != 4 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for s in 0..4 {
        let [p, r, q, e] = [0, 1, 2, 3].map(|k| syllables[(s + k) % 4]);
        if p.1 == 1 && e.2.abs() == 1 {
            out.push(FlypeData {
                rotation: p.0,
                p: p.2,
                r: r.2,
                q: q.2,
                epsilon: e.2,
            });
        }
    }
    out.sort_by_key(|f| f.rotation);
    out
}

pub fn match_flype_3braid(word: &BraidWord) -> Option<FlypeData> {
    find_flypes(word).into_iter().next()
}

fn power(index: usize, exponent: i32) -> impl Iterator<Item = Letter> {
    let sign = exponent.signum();
    (0..exponent.unsigned_abs()).map(move |_| Letter::new(index, sign))
}

/// `P · σ₂^ε · Q · R`.
pub fn apply_flype(data: &FlypeData) -> BraidWord {
    let letters = power(1, data.p)
        .chain(power(2, data.epsilon))
        .chain(power(1, data.q))
        .chain(power(2, data.r))
        .collect();
    BraidWord::new(3, letters).expect("3-braid letters")
}

pub fn flype_at(word: &BraidWord, rotation: usize) -> Result<FlypeData> {
    find_flypes(word)
        .into_iter()
        .find(|f| f.rotation == rotation)
        .ok_or_else(|| {
            Error::InvalidDecomposition(format!(
                "no flype pattern at rotation {rotation} of {word}"
            ))
        })
}

/// `σₙ₋₂ ⋯ σ₁ σ₁ ⋯ σₙ₋₂`: strand `n - 1` travelling once around the strands
/// to its left. It commutes with everything on the first `n - 2` strands.
fn loop_around(n: usize) -> Vec<Letter> {
    let k = n - 2;
    (1..=k).rev().chain(1..=k).map(Letter::pos).collect()
}

/// Blocks `(P, Q)` on 3 strands whose iterates close to a trefoil and fall
/// into pairwise distinct conjugacy classes.
pub const WINDING_SAMPLE: (&str, &str) = ("s1^2 s2^-1 s1^2", "s1^-1 s2");

/// `w_k = P · σₙ₋₁ · m⁻ᵏ Q mᵏ · σₙ₋₁⁻¹` for `k = 0..=count`, where `m` winds
/// strand `n - 1` around the others.
///
/// Each step is a conjugation followed by one exchange move, so every
/// iterate has the same closure. `P` and `Q` are given on `n - 1` strands.
pub fn winding_iterates(p: &BraidWord, q: &BraidWord, count: usize) -> Result<Vec<BraidWord>> {
    if p.n_strands() != q.n_strands() {
        return Err(Error::StrandMismatch {
            left: p.n_strands(),
            right: q.n_strands(),
        });
    }
    let n = p.n_strands() + 1;
    let m = loop_around(n);
    let m_inv: Vec<Letter> = m.iter().rev().map(|l| l.inverse()).collect();
    let mut wound_q = q.letters().to_vec();
    let mut out = Vec::with_capacity(count + 1);
    for _ in 0..=count {
        let mut letters = p.letters().to_vec();
        letters.push(Letter::pos(n - 1));
        letters.extend_from_slice(&wound_q);
        letters.push(Letter::neg(n - 1));
        out.push(BraidWord::new(n, letters)?);
        wound_q = free_reduce(m_inv.iter().chain(wound_q.iter()).chain(m.iter()).copied());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::garside::are_conjugate;
    use crate::invariants::{bracket, temperley_lieb};
    use proptest::prelude::*;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    #[test]
    fn stabilization_examples() {
        assert_eq!(stabilize(&w("s1", 2), 1), w("s1 s2", 3));
        assert_eq!(stabilize(&BraidWord::identity(1), 1), w("s1", 2));
        let neg = stabilize(&w("s1^5 s2^4 s1^6 s2^-1", 3), -1);
        assert_eq!(neg, w("s1^5 s2^4 s1^6 s2^-1 s3^-1", 4));
        assert_eq!(neg.exponent_sum(), 13);
    }

    #[test]
    fn destabilization_examples() {
        let d = try_destabilize(&w("s1 s2", 3), 2).unwrap();
        assert_eq!((d.word, d.sign), (w("s1", 2), 1));
        let d = try_destabilize(&w("s2 s1", 3), 2).unwrap();
        assert_eq!(d.word, w("s1", 2));
        let d = try_destabilize(&w("s1", 2), 2).unwrap();
        assert_eq!(d.word, BraidWord::identity(1));
        // the trefoil has braid index 2
        assert!(try_destabilize(&w("s1^3", 2), 2).is_none());
    }

    #[test]
    fn destabilization_conjugator_is_exact() {
        // needs a braid relation before a single σ₂ shows up
        let word = w("s1 s2 s1 s2^-1 s1^-1 s1^2", 3);
        for d in find_destabilizations(&word, 2) {
            let target = stabilize(&d.word, d.sign);
            let conjugated = word.conjugate(&d.conjugator).unwrap();
            assert_eq!(
                NormalForm::from_word(&conjugated),
                NormalForm::from_word(&target)
            );
        }
    }

    #[test]
    fn exchange_examples() {
        let word = w("s1 s2 s1^-1 s2^-1", 3);
        let decompositions = find_exchange_decompositions(&word);
        assert_eq!(decompositions.len(), 2);
        let d = &decompositions[0];
        assert_eq!(
            (d.rotation, d.p.clone(), d.q.clone()),
            (0, w("s1", 3), w("s1^-1", 3))
        );
        assert_eq!(apply_exchange(d), w("s1 s2^-1 s1^-1 s2", 3));
        let word = w("s1^4 s2 s1^-7 s2^-1", 3);
        let out = exchange_at(&word, 0).unwrap();
        assert_eq!(out, w("s1^4 s2^-1 s1^-7 s2", 3));
        assert_eq!(out.exponent_sum(), -3);
        assert!(find_exchange_decompositions(&w("s1 s1^-1", 2)).is_empty());
        assert!(exchange_at(&word, 3).is_err());
    }

    #[test]
    fn flype_examples() {
        let tx_plus = w("s1^5 s2^4 s1^6 s2^-1", 3);
        let data = match_flype_3braid(&tx_plus).unwrap();
        assert_eq!((data.p, data.r, data.q, data.epsilon), (5, 4, 6, -1));
        assert_eq!(apply_flype(&data), w("s1^5 s2^-1 s1^6 s2^4", 3));
        let link = w("s1^3 s2^4 s1^-5 s2^-1", 3);
        assert_eq!(
            apply_flype(&match_flype_3braid(&link).unwrap()),
            w("s1^3 s2^-1 s1^-5 s2^4", 3)
        );
        let fixed = w("s1 s2 s1 s2", 3);
        assert_eq!(apply_flype(&match_flype_3braid(&fixed).unwrap()), fixed);
        // rotations of a match still match
        let rotated = tx_plus.rotated(7);
        let data = match_flype_3braid(&rotated).unwrap();
        assert_eq!(apply_flype(&data), w("s1^5 s2^-1 s1^6 s2^4", 3));
        assert!(match_flype_3braid(&w("s1 s2 s1^-1 s2 s1 s2", 3)).is_none());
        assert!(match_flype_3braid(&w("s1 s1^-1 s2 s1 s2", 3)).is_none());
    }

    #[test]
    fn winding_with_trivial_blocks() {
        let one = BraidWord::identity(2);
        for iterate in winding_iterates(&one, &one, 3).unwrap() {
            assert!(iterate
                .multiply(&BraidWord::identity(3))
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn winding_preserves_jones() {
        let p = w("s1^3", 3);
        let q = w("s1^-1 s2", 3);
        let iterates = winding_iterates(&p, &q, 3).unwrap();
        let base = temperley_lieb::jones_polynomial(&iterates[0]).unwrap();
        for iterate in &iterates {
            assert_eq!(iterate.n_strands(), 4);
            assert_eq!(iterate.exponent_sum(), iterates[0].exponent_sum());
            assert_eq!(temperley_lieb::jones_polynomial(iterate).unwrap(), base);
        }
    }

    #[test]
    fn consecutive_iterates_differ_by_one_exchange() {
        let p = w(WINDING_SAMPLE.0, 3);
        let q = w(WINDING_SAMPLE.1, 3);
        let iterates = winding_iterates(&p, &q, 4).unwrap();
        for pair in iterates.windows(2) {
            for d in find_exchange_decompositions(&pair[1]) {
                assert!(are_conjugate(&apply_exchange(&d), &pair[0]).unwrap());
            }
            assert!(!are_conjugate(&pair[0], &pair[1]).unwrap());
        }
    }

    fn arb_lower(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
        prop::collection::vec((1..n.max(2), any::<bool>()), 0..=max_len).prop_map(move |raw| {
            let letters = raw
                .into_iter()
                .filter(|&(i, _)| i < n)
                .map(|(i, p)| Letter::new(i, if p { 1 } else { -1 }))
                .collect();
            BraidWord::new(n, letters).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn stabilize_then_destabilize(word in crate::braid::tests::arb_word(4, 10), positive in any::<bool>()) {
            let sign = if positive { 1 } else { -1 };
            let stabilized = stabilize(&word, sign);
            prop_assert_eq!(stabilized.exponent_sum(), word.exponent_sum() + sign as i64);
            let d = try_destabilize(&stabilized, DEFAULT_DESTAB_DEPTH).unwrap();
            prop_assert_eq!(d.sign, sign);
            prop_assert!(are_conjugate(&d.word, &word).unwrap());
        }

        #[test]
        fn exchange_is_an_involution(p in arb_lower(3, 5), q in arb_lower(3, 5), positive in any::<bool>()) {
            let s = if positive { 1 } else { -1 };
            let mut letters = p.letters().to_vec();
            letters.push(Letter::new(3, s));
            letters.extend_from_slice(q.letters());
            letters.push(Letter::new(3, -s));
            let word = BraidWord::new(4, letters).unwrap();
            let p4 = p.widened(4).unwrap();
            let q4 = q.widened(4).unwrap();
            let d = find_exchange_decompositions(&word).into_iter().find(|d| d.rotation == 0).unwrap();
            prop_assert_eq!((&d.p, &d.q), (&p4, &q4));
            let once = apply_exchange(&d);
            prop_assert_eq!(once.exponent_sum(), word.exponent_sum());
            prop_assert_eq!(once.closure_components().count(), word.closure_components().count());
            prop_assert_eq!(exchange_at(&once, 0).unwrap(), word);
        }

        #[test]
        fn exchange_preserves_jones_on_small_blocks(a in -3i32..=3, b in -3i32..=3) {
            let word = BraidWord::new(3, power(1, a).chain(power(2, 1)).chain(power(1, b)).chain(power(2, -1)).collect()).unwrap();
            let out = exchange_at(&word, 0).unwrap();
            prop_assert_eq!(bracket::jones_polynomial(&out).unwrap(), bracket::jones_polynomial(&word).unwrap());
        }

        #[test]
        fn flype_twice_is_a_rotation(
            p in (1i32..5).prop_flat_map(|k| prop_oneof![Just(k), Just(-k)]),
            r in (1i32..5).prop_flat_map(|k| prop_oneof![Just(k), Just(-k)]),
            q in (1i32..5).prop_flat_map(|k| prop_oneof![Just(k), Just(-k)]),
            positive in any::<bool>(),
        ) {
            let epsilon = if positive { 1 } else { -1 };
            let data = FlypeData { rotation: 0, p, r, q, epsilon };
            let original = BraidWord::new(3, power(1, p).chain(power(2, r)).chain(power(1, q)).chain(power(2, epsilon)).collect()).unwrap();
            prop_assert!(find_flypes(&original).contains(&data));
            let once = apply_flype(&data);
            prop_assert_eq!(once.exponent_sum(), original.exponent_sum());
            prop_assert_eq!(once.closure_components().count(), original.closure_components().count());
            let back: Vec<BraidWord> = find_flypes(&once).iter().map(apply_flype).collect();
            let rotations: Vec<BraidWord> = (0..original.len()).map(|k| original.rotated(k)).collect();
            prop_assert!(back.iter().any(|b| rotations.contains(b)));
        }
    }
}
