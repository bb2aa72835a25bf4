//! Breadth-first search over closed braids up to conjugacy.
//!
//! Nodes are conjugacy classes, identified by their super summit sets. Each
//! class keeps the word it was first reached by, and moves are tried on every
//! cyclic rotation of that word's cyclic reduction, plus, with a positive
//! `view_depth`, of normal form spellings of nearby conjugates. Edges carry
//! the exact steps taken, so a found path replays letter for letter.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::garside::{
    all_permutation_braids, conjugating_element_with_cap, super_summit_set_with_cap, NormalForm,
    PermutationBraid, DEFAULT_SUMMIT_CAP,
};
use crate::moves::{find_destabilizations, find_exchange_decompositions, find_flypes, stabilize};
use crate::sequence::{MoveKind, MoveParams, MoveSequence, MoveStep};
use crate::transverse::is_transverse_move;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveSet {
    Topological,
    Transverse,
}

impl MoveSet {
    pub fn allows(self, kind: MoveKind) -> bool {
        match self {
            MoveSet::Topological => true,
            MoveSet::Transverse => is_transverse_move(kind),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_strands: usize,
    pub max_word_length: usize,
    pub max_nodes: usize,
    pub move_set: MoveSet,
    /// Simple-element conjugations tried when looking for destabilizations.
    pub destab_depth: usize,
    /// Layers of simple-element conjugates whose rotations are also tried
    /// for stabilizations, exchanges and flypes. 0 uses rotations only.
    pub view_depth: usize,
    pub summit_cap: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_strands: 5,
            max_word_length: 24,
            max_nodes: 10_000,
            move_set: MoveSet::Topological,
            destab_depth: 1,
            view_depth: 0,
            summit_cap: DEFAULT_SUMMIT_CAP,
        }
    }
}

impl SearchBounds {
    pub fn new(
        max_strands: usize,
        max_word_length: usize,
        max_nodes: usize,
        move_set: MoveSet,
    ) -> Self {
        SearchBounds {
            max_strands,
            max_word_length,
            max_nodes,
            move_set,
            ..SearchBounds::default()
        }
    }

    fn check(&self, word: &BraidWord) -> Result<()> {
        if self.max_strands == 0 || self.max_word_length == 0 || self.max_nodes == 0 {
            return Err(Error::BoundsExceeded("bounds must be positive".into()));
        }
        if word.n_strands() > self.max_strands || word.len() > self.max_word_length {
            return Err(Error::BoundsExceeded(format!(
                "{word} on {} strands does not fit {} strands and length {}",
                word.n_strands(),
                self.max_strands,
                self.max_word_length
            )));
        }
        Ok(())
    }

    fn fits(&self, word: &BraidWord) -> bool {
        word.n_strands() <= self.max_strands && word.len() <= self.max_word_length
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes_expanded: usize,
    pub frontier_peak: usize,
    /// Neighbours whose class had already been seen.
    pub dedup_hits: usize,
    pub node_limit_hit: bool,
    /// Words whose super summit set hit the cap and were keyed by normal form.
    pub weak_dedup_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "sequence", rename_all = "lowercase")]
pub enum SearchOutcome {
    Found(MoveSequence),
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    #[serde(flatten)]
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
}

impl SearchResult {
    pub fn sequence(&self) -> Option<&MoveSequence> {
        match &self.outcome {
            SearchOutcome::Found(seq) => Some(seq),
            SearchOutcome::Exhausted => None,
        }
    }
}

/// Conjugacy class identifier. `Weak` keys only identify a conjugate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum ClassKey {
    Summit(Vec<NormalForm>),
    Weak(NormalForm),
}

fn class_key(word: &BraidWord, cap: usize) -> ClassKey {
    match super_summit_set_with_cap(word, cap) {
        Ok(key) => ClassKey::Summit(key.elements().to_vec()),
        Err(_) => ClassKey::Weak(NormalForm::from_word(word)),
    }
}

/// Cyclically reduced conjugates of `word`: its own reduction, then normal
/// form spellings of up to `depth` layers of simple-element conjugates. Each
/// comes with `g` such that `g⁻¹ word g` is it.
fn reduced_conjugates(
    word: &BraidWord,
    depth: usize,
    max_len: usize,
) -> Vec<(BraidWord, BraidWord)> {
    let n = word.n_strands();
    let (reduced, peel) = word.cyclically_reduced();
    let mut seen = BTreeSet::from([reduced.signed()]);
    let mut out = vec![(reduced, peel)];
    if depth == 0 || n < 2 {
        return out;
    }
    let simples: Vec<PermutationBraid> = all_permutation_braids(n)
        .into_iter()
        .filter(|s| !s.is_identity())
        .collect();
    let start = NormalForm::from_word(word);
    let mut forms = BTreeSet::from([start.clone()]);
    let mut layer = vec![(start, NormalForm::identity(n))];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (x, g) in &layer {
            for s in &simples {
                let y = x.conjugate_by_simple(s);
                if !forms.insert(y.clone()) {
                    continue;
                }
                let g_y = g.multiply(&NormalForm::from_parts(n, 0, vec![s.clone()]));
                let (r, h) = y.to_word().cyclically_reduced();
                if r.len() <= max_len && seen.insert(r.signed()) {
                    out.push((r, g_y.to_word().multiply(&h).expect("same strands")));
                }
                next.push((y, g_y));
            }
        }
        layer = next;
    }
    out
}

/// Distinct cyclic rotations of the given cyclically reduced conjugates.
fn rotations(conjugates: &[(BraidWord, BraidWord)]) -> Vec<(BraidWord, BraidWord)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (reduced, g) in conjugates {
        let n = reduced.n_strands();
        if reduced.is_empty() && seen.insert(Vec::new()) {
            out.push((reduced.clone(), g.clone()));
        }
        for start in 0..reduced.len() {
            let rotated = reduced.rotated(start);
            if !seen.insert(rotated.signed()) {
                continue;
            }
            let prefix =
                BraidWord::new(n, reduced.letters()[..start].to_vec()).expect("same strands");
            out.push((rotated, g.multiply(&prefix).expect("same strands")));
        }
    }
    out
}

/// A move out of a class: the steps from the representative and the result.
struct Edge {
    steps: Vec<MoveStep>,
    result: BraidWord,
}

fn conjugation_to(word: &BraidWord, g: &BraidWord, spelled: &BraidWord) -> Option<MoveStep> {
    if g.is_empty() && word == spelled {
        return None;
    }
    Some(MoveStep {
        kind: MoveKind::Conjugation,
        params: MoveParams {
            conjugator: Some(g.signed()),
            rotation: None,
        },
        result: spelled.clone(),
    })
}

fn edge(word: &BraidWord, g: &BraidWord, view: &BraidWord, step: MoveStep) -> Edge {
    let mut steps: Vec<MoveStep> = conjugation_to(word, g, view).into_iter().collect();
    let result = step.result.clone();
    steps.push(step);
    Edge { steps, result }
}

fn edges(word: &BraidWord, bounds: &SearchBounds) -> Vec<Edge> {
    let n = word.n_strands();
    let conjugates = reduced_conjugates(word, bounds.view_depth, bounds.max_word_length);
    let views = rotations(&conjugates);
    let mut out = Vec::new();
    let allowed = |kind| bounds.move_set.allows(kind);

    for sign in [1, -1] {
        let kind = MoveKind::stab(sign);
        if !allowed(kind) || n + 1 > bounds.max_strands {
            continue;
        }
        for (view, g) in &views {
            let step = MoveStep::stabilization(view, sign);
            if bounds.fits(&step.result) {
                out.push(edge(word, g, view, step));
            }
        }
    }

    for d in find_destabilizations(word, bounds.destab_depth) {
        let kind = MoveKind::destab(d.sign);
        if !allowed(kind) {
            continue;
        }
        let view = stabilize(&d.word, d.sign);
        let step = MoveStep {
            kind,
            params: MoveParams::default(),
            result: d.word.clone(),
        };
        if bounds.fits(&step.result) {
            out.push(edge(word, &d.conjugator, &view, step));
        }
    }

    // the matchers scan rotations themselves
    for (reduced, g) in &conjugates {
        if allowed(MoveKind::Exchange) {
            for d in find_exchange_decompositions(reduced) {
                let step = MoveStep::with_rotation(MoveKind::Exchange, d.rotation, reduced)
                    .expect("matched decomposition");
                if bounds.fits(&step.result) {
                    out.push(edge(word, g, reduced, step));
                }
            }
        }
        for f in find_flypes(reduced) {
            let kind = MoveKind::flype(f.epsilon);
            if !allowed(kind) {
                continue;
            }
            let step = MoveStep::with_rotation(kind, f.rotation, reduced).expect("matched flype");
            if bounds.fits(&step.result) {
                out.push(edge(word, g, reduced, step));
            }
        }
    }
    out
}

struct Node {
    word: BraidWord,
    parent: Option<(usize, Vec<MoveStep>)>,
}

fn path_to(nodes: &[Node], mut index: usize) -> MoveSequence {
    let mut chunks = Vec::new();
    while let Some((parent, steps)) = &nodes[index].parent {
        chunks.push(steps.clone());
        index = *parent;
    }
    MoveSequence {
        steps: chunks.into_iter().rev().flatten().collect(),
    }
}

/// Appends a conjugation ending exactly on `target` when one can be found.
fn finish_at(
    mut seq: MoveSequence,
    source: &BraidWord,
    target: &BraidWord,
    cap: usize,
) -> MoveSequence {
    let last = seq.final_word(source);
    if &last == target {
        return seq;
    }
    if let Ok(Some(g)) = conjugating_element_with_cap(&last, target, cap) {
        seq.push(MoveStep {
            kind: MoveKind::Conjugation,
            params: MoveParams {
                conjugator: Some(g.signed()),
                rotation: None,
            },
            result: target.clone(),
        });
    }
    seq
}

/// Breadth-first search from `source` for the conjugacy class of `target`.
/// Layers are expanded in key order, so the result does not depend on the
/// thread count. Exhaustion within bounds is not a proof that no path exists.
pub fn connect(
    source: &BraidWord,
    target: &BraidWord,
    bounds: &SearchBounds,
) -> Result<SearchResult> {
    bounds.check(source)?;
    bounds.check(target)?;
    let mut stats = SearchStats::default();
    let source_key = class_key(source, bounds.summit_cap);
    let target_key = class_key(target, bounds.summit_cap);
    for key in [&source_key, &target_key] {
        if matches!(key, ClassKey::Weak(_)) {
            stats.weak_dedup_count += 1;
        }
    }
    if source_key == target_key {
        let seq = finish_at(MoveSequence::new(), source, target, bounds.summit_cap);
        return Ok(SearchResult {
            outcome: SearchOutcome::Found(seq),
            stats,
        });
    }

    let mut nodes = vec![Node {
        word: source.clone(),
        parent: None,
    }];
    let mut seen: BTreeMap<ClassKey, usize> = BTreeMap::from([(source_key.clone(), 0)]);
    let mut layer: Vec<(ClassKey, usize)> = vec![(source_key, 0)];

    while !layer.is_empty() {
        stats.frontier_peak = stats.frontier_peak.max(layer.len());
        let budget = bounds.max_nodes - stats.nodes_expanded;
        if layer.len() > budget {
            layer.truncate(budget);
            stats.node_limit_hit = true;
        }
        stats.nodes_expanded += layer.len();

        let expansions: Vec<Vec<Edge>> = layer
            .par_iter()
            .map(|&(_, index)| edges(&nodes[index].word, bounds))
            .collect();
        let words: BTreeSet<&BraidWord> = expansions.iter().flatten().map(|e| &e.result).collect();
        let keys: BTreeMap<&BraidWord, ClassKey> = words
            .into_par_iter()
            .map(|w| (w, class_key(w, bounds.summit_cap)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        stats.weak_dedup_count += keys
            .values()
            .filter(|k| matches!(k, ClassKey::Weak(_)))
            .count();

        let mut next: Vec<(ClassKey, usize)> = Vec::new();
        for (&(_, parent), node_edges) in layer.iter().zip(expansions.iter()) {
            for e in node_edges {
                let key = &keys[&e.result];
                if seen.contains_key(key) {
                    stats.dedup_hits += 1;
                    continue;
                }
                nodes.push(Node {
                    word: e.result.clone(),
                    parent: Some((parent, e.steps.clone())),
                });
                let index = nodes.len() - 1;
                if *key == target_key {
                    let seq = finish_at(path_to(&nodes, index), source, target, bounds.summit_cap);
                    return Ok(SearchResult {
                        outcome: SearchOutcome::Found(seq),
                        stats,
                    });
                }
                seen.insert(key.clone(), index);
                next.push((key.clone(), index));
            }
        }
        if stats.node_limit_hit {
            break;
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        layer = next;
    }
    Ok(SearchResult {
        outcome: SearchOutcome::Exhausted,
        stats,
    })
}

/// Applies `k` random moves allowed by `bounds`, returning the final word and
/// the steps taken. Deterministic in `seed`. Destabilizations are only taken
/// where a cyclic rotation shows them.
pub fn scramble(
    word: &BraidWord,
    k: usize,
    seed: u64,
    bounds: &SearchBounds,
) -> Result<(BraidWord, MoveSequence)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let local = SearchBounds {
        destab_depth: 0,
        ..bounds.clone()
    };
    let mut current = word.clone();
    let mut seq = MoveSequence::new();
    for _ in 0..k {
        let mut options = edges(&current, &local);
        let n = current.n_strands();
        if n >= 2 {
            let len = rng.gen_range(1..=2);
            let step = MoveStep::conjugation(&current, &BraidWord::random(n, len, &mut rng))?;
            if local.fits(&step.result) {
                options.push(Edge {
                    result: step.result.clone(),
                    steps: vec![step],
                });
            }
        }
        // pick the kind first so the many stabilization sites do not swamp the rest
        let mut kinds: Vec<MoveKind> = options
            .iter()
            .map(|e| e.steps.last().unwrap().kind)
            .collect();
        kinds.sort();
        kinds.dedup();
        let Some(&kind) = kinds.choose(&mut rng) else {
            break;
        };
        let pool: Vec<Edge> = options
            .into_iter()
            .filter(|e| e.steps.last().unwrap().kind == kind)
            .collect();
        let chosen = rng.gen_range(0..pool.len());
        let e = pool.into_iter().nth(chosen).expect("index in range");
        current = e.result;
        for step in e.steps {
            seq.push(step);
        }
    }
    Ok((current, seq))
}
