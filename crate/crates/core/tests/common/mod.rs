//! Word rewriting that never changes the braid.

#![allow(dead_code)]

use braidkit::BraidWord;
use rand::Rng;

fn far(a: i32, b: i32) -> bool {
    (a.abs() - b.abs()).abs() >= 2
}

fn near(a: i32, b: i32) -> bool {
    (a.abs() - b.abs()).abs() == 1
}

/// Rewrite kinds: commutation, braid relation, mixed braid relation, free
/// insertion, free cancellation.
pub const KINDS: usize = 5;

/// One rewrite of a random kind, if it fits; returns the kind applied.
fn try_rewrite(letters: &mut Vec<i32>, n: usize, rng: &mut impl Rng) -> Option<usize> {
    let len = letters.len();
    let kind = rng.gen_range(0..KINDS);
    let applied = match kind {
        // σᵢσⱼ = σⱼσᵢ, |i - j| ≥ 2
        0 if len >= 2 => {
            let k = rng.gen_range(0..len - 1);
            let ok = far(letters[k], letters[k + 1]);
            if ok {
                letters.swap(k, k + 1);
            }
            ok
        }
        // σᵢσⱼσᵢ = σⱼσᵢσⱼ and its inverse, |i - j| = 1
        1 if len >= 3 => {
            let k = rng.gen_range(0..len - 2);
            let (a, b, c) = (letters[k], letters[k + 1], letters[k + 2]);
            let ok = a == c && near(a, b) && a.signum() == b.signum();
            if ok {
                letters[k] = b;
                letters[k + 1] = a;
                letters[k + 2] = b;
            }
            ok
        }
        // σᵢσⱼσᵢ⁻¹ = σⱼ⁻¹σᵢσⱼ, |i - j| = 1
        2 if len >= 3 => {
            let k = rng.gen_range(0..len - 2);
            let (a, b, c) = (letters[k], letters[k + 1], letters[k + 2]);
            let ok = a == -c && near(a, b) && b.signum() == a.signum();
            if ok {
                letters[k] = -b;
                letters[k + 1] = a;
                letters[k + 2] = b;
            }
            ok
        }
        3 if n >= 2 => {
            let k = rng.gen_range(0..=len);
            let i = rng.gen_range(1..n as i32);
            let x = if rng.gen_bool(0.5) { i } else { -i };
            letters.splice(k..k, [x, -x]);
            true
        }
        4 if len >= 2 => {
            let k = rng.gen_range(0..len - 1);
            let ok = letters[k] == -letters[k + 1];
            if ok {
                letters.drain(k..k + 2);
            }
            ok
        }
        _ => false,
    };
    applied.then_some(kind)
}

/// Applies `count` rewrites; also returns how often each kind was used.
pub fn rewrite(word: &BraidWord, count: usize, rng: &mut impl Rng) -> (BraidWord, [usize; KINDS]) {
    let n = word.n_strands();
    let mut letters = word.signed();
    let mut used = [0; KINDS];
    let mut attempts = 0;
    while used.iter().sum::<usize>() < count && attempts < 10_000 {
        attempts += 1;
        if let Some(kind) = try_rewrite(&mut letters, n, rng) {
            used[kind] += 1;
        }
    }
    let word = BraidWord::from_signed(n, &letters).expect("rewrites keep generator indices");
    (word, used)
}
