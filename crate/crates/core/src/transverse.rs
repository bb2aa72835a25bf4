//! Self-linking numbers of transverse closed braids.
//!
//! For a closed braid `β = e - n`, where `e` is the exponent sum and `n` the
//! strand count. For links the same count splits per component, with the
//! cross-component crossings going into pairwise linking numbers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::moves::stabilize;
use crate::sequence::MoveKind;

pub fn self_linking(word: &BraidWord) -> i64 {
    word.exponent_sum() - word.n_strands() as i64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairLinking {
    pub components: (usize, usize),
    pub linking: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransverseInvariants {
    pub beta_total: i64,
    /// Component id (1-based, component 1 holds strand 1) to its β.
    pub per_component: BTreeMap<usize, i64>,
    /// One entry per unordered pair of distinct components.
    pub pairwise_linking: Vec<PairLinking>,
}

impl TransverseInvariants {
    pub fn beta(&self, component: usize) -> Option<i64> {
        self.per_component.get(&component).copied()
    }

    pub fn linking(&self, a: usize, b: usize) -> Option<i64> {
        let key = (a.min(b), a.max(b));
        self.pairwise_linking
            .iter()
            .find(|p| p.components == key)
            .map(|p| p.linking)
    }
}

pub fn component_invariants(word: &BraidWord) -> Result<TransverseInvariants> {
    let partition = word.closure_components();
    let count = partition.count();
    let mut per_component: BTreeMap<usize, i64> = (1..=count)
        .map(|c| (c, -(partition.cycles()[c - 1].len() as i64)))
        .collect();
    let mut cross: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for a in 1..=count {
        for b in a + 1..=count {
            cross.insert((a, b), 0);
        }
    }
    for crossing in word.crossing_records().crossings() {
        let a = partition.component_of(crossing.strands.0);
        let b = partition.component_of(crossing.strands.1);
        let sign = crossing.sign as i64;
        if a == b {
            *per_component
                .get_mut(&a)
                .expect("component ids are 1..=count") += sign;
        } else {
            *cross
                .get_mut(&(a.min(b), a.max(b)))
                .expect("all pairs present") += sign;
        }
    }
    let mut pairwise_linking = Vec::with_capacity(cross.len());
    for (components, total) in cross {
        if total % 2 != 0 {
            return Err(Error::Internal(format!(
                "odd signed crossing count {total} between components {components:?} of {word}"
            )));
        }
        pairwise_linking.push(PairLinking {
            components,
            linking: total / 2,
        });
    }
    Ok(TransverseInvariants {
        beta_total: self_linking(word),
        per_component,
        pairwise_linking,
    })
}

/// Moves realizable by transverse isotopy: conjugation, positive
/// (de)stabilization and exchange.
pub fn is_transverse_move(kind: MoveKind) -> bool {
    matches!(
        kind,
        MoveKind::Conjugation | MoveKind::StabPlus | MoveKind::DestabPlus | MoveKind::Exchange
    )
}

/// `(β(w), β(w σₙ⁻¹))`.
pub fn negative_stabilization_beta_drop(word: &BraidWord) -> (i64, i64) {
    (self_linking(word), self_linking(&stabilize(word, -1)))
}
