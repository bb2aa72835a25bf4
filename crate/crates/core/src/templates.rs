//! Block-strand diagrams and templates.
//!
//! A diagram is a closed braid on a few weighted strands: a strand of weight
//! `w` stands for `w` parallel strands. Blocks are slots for arbitrary braids.
//! A template pairs two diagrams that should close to the same link whatever
//! braids are put in the blocks.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Letter};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagramItem {
    /// Crossing of the bands at diagram positions `position` and `position + 1`.
    Crossing { position: usize, sign: i32 },
    /// Block `id` occupying diagram positions from `start` on.
    Block { id: String, start: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockStrandDiagram {
    pub strand_weights: Vec<usize>,
    pub schema: Vec<DiagramItem>,
    /// Number of diagram strands entering each block.
    pub block_arities: BTreeMap<String, usize>,
}

/// Braid words for the blocks, keyed by block id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidingAssignment {
    pub blocks: BTreeMap<String, BraidWord>,
}

impl BraidingAssignment {
    pub fn new() -> Self {
        BraidingAssignment::default()
    }

    pub fn with(mut self, id: &str, word: BraidWord) -> Self {
        self.blocks.insert(id.to_string(), word);
        self
    }

    pub fn get(&self, id: &str) -> Option<&BraidWord> {
        self.blocks.get(id)
    }
}

impl BlockStrandDiagram {
    pub fn new(
        strand_weights: Vec<usize>,
        schema: Vec<DiagramItem>,
        block_arities: BTreeMap<String, usize>,
    ) -> Result<Self> {
        let diagram = BlockStrandDiagram {
            strand_weights,
            schema,
            block_arities,
        };
        diagram.validate()?;
        Ok(diagram)
    }

    pub fn validate(&self) -> Result<()> {
        let width = self.strand_weights.len();
        let bad = |reason: String| Err(Error::InvalidTemplate(reason));
        if width == 0 || self.strand_weights.contains(&0) {
            return bad(format!(
                "strand weights {:?} must be positive",
                self.strand_weights
            ));
        }
        for item in &self.schema {
            match item {
                DiagramItem::Crossing { position, sign } => {
                    if *position == 0 || *position >= width {
                        return bad(format!(
                            "crossing at {position} needs positions {position} and {} of {width}",
                            position + 1
                        ));
                    }
                    if sign.abs() != 1 {
                        return bad(format!("crossing sign {sign} is not ±1"));
                    }
                }
                DiagramItem::Block { id, start } => {
                    let Some(&arity) = self.block_arities.get(id) else {
                        return bad(format!("block {id} has no arity"));
                    };
                    if arity == 0 || *start == 0 || start + arity - 1 > width {
                        return bad(format!(
                            "block {id} of arity {arity} at {start} does not fit {width} strands"
                        ));
                    }
                }
            }
        }
        self.block_strand_counts().map(|_| ())
    }

    pub fn total_strands(&self) -> usize {
        self.strand_weights.iter().sum()
    }

    /// Walks the schema, calling `on_crossing(offset, u, v, sign)` and
    /// `on_block(id, offset, strands)` with global 0-based offsets.
    fn walk(
        &self,
        mut on_crossing: impl FnMut(usize, usize, usize, i32),
        mut on_block: impl FnMut(&str, usize, usize) -> Result<()>,
    ) -> Result<()> {
        let mut weights = self.strand_weights.clone();
        for item in &self.schema {
            match item {
                DiagramItem::Crossing { position, sign } => {
                    let p = position - 1;
                    let offset: usize = weights[..p].iter().sum();
                    on_crossing(offset, weights[p], weights[p + 1], *sign);
                    weights.swap(p, p + 1);
                }
                DiagramItem::Block { id, start } => {
                    let s = start - 1;
                    let arity = self.block_arities[id];
                    let offset: usize = weights[..s].iter().sum();
                    let strands: usize = weights[s..s + arity].iter().sum();
                    on_block(id, offset, strands)?;
                }
            }
        }
        if weights != self.strand_weights {
            return Err(Error::InvalidTemplate(format!(
                "weights {:?} do not close up: they end as {weights:?}",
                self.strand_weights
            )));
        }
        Ok(())
    }

    /// Strand count each block sees after weight expansion.
    pub fn block_strand_counts(&self) -> Result<BTreeMap<String, usize>> {
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        self.walk(
            |_, _, _, _| {},
            |id, _, strands| match counts.insert(id.to_string(), strands) {
                Some(previous) if previous != strands => Err(Error::InvalidTemplate(format!(
                    "block {id} meets {previous} strands in one place and {strands} in another"
                ))),
                _ => Ok(()),
            },
        )?;
        Ok(counts)
    }

    pub fn expand(&self, assignment: &BraidingAssignment) -> Result<BraidWord> {
        // crossings and blocks interleave, so both callbacks share the output
        let letters = std::cell::RefCell::new(Vec::new());
        self.walk(
            |offset, u, v, sign| {
                letters
                    .borrow_mut()
                    .extend(band_crossing(offset, u, v, sign))
            },
            |id, offset, strands| {
                let word = assignment
                    .get(id)
                    .ok_or_else(|| Error::ArityMismatch(format!("block {id} is not assigned")))?;
                if word.n_strands() != strands {
                    return Err(Error::ArityMismatch(format!(
                        "block {id} needs a braid on {strands} strands, got {}",
                        word.n_strands()
                    )));
                }
                letters
                    .borrow_mut()
                    .extend(word.letters().iter().map(|l| l.shifted(offset)));
                Ok(())
            },
        )?;
        BraidWord::new(self.total_strands(), letters.into_inner())
    }
}

/// The permutation braid taking a band of `u` strands over a band of `v`
/// strands just to its right, all letters of sign `sign`. Each strand of the
/// right band slides left across the whole `u`-band.
fn band_crossing(offset: usize, u: usize, v: usize, sign: i32) -> Vec<Letter> {
    let mut out = Vec::with_capacity(u * v);
    for k in 0..v {
        for index in (offset + k + 1..=offset + u + k).rev() {
            out.push(Letter::new(index, sign));
        }
    }
    out
}

/// Replaces weighted crossings by band crossings and fills the blocks.
pub fn expand_weights(
    diagram: &BlockStrandDiagram,
    assignment: &BraidingAssignment,
) -> Result<BraidWord> {
    diagram.expand(assignment)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Template {
    pub name: String,
    pub left: BlockStrandDiagram,
    pub right: BlockStrandDiagram,
}

impl Template {
    pub fn new(name: &str, left: BlockStrandDiagram, right: BlockStrandDiagram) -> Result<Self> {
        let template = Template {
            name: name.to_string(),
            left,
            right,
        };
        template.validate()?;
        Ok(template)
    }

    pub fn validate(&self) -> Result<()> {
        self.left.validate()?;
        self.right.validate()?;
        if self.left.block_arities != self.right.block_arities {
            return Err(Error::InvalidTemplate(format!(
                "{}: the two sides declare different blocks",
                self.name
            )));
        }
        if self.left.block_strand_counts()? != self.right.block_strand_counts()? {
            return Err(Error::InvalidTemplate(format!(
                "{}: blocks see different strand counts on the two sides",
                self.name
            )));
        }
        Ok(())
    }

    /// Expanded strand count of every block.
    pub fn block_strand_counts(&self) -> Result<BTreeMap<String, usize>> {
        self.left.block_strand_counts()
    }

    pub fn instantiate(&self, assignment: &BraidingAssignment) -> Result<(BraidWord, BraidWord)> {
        Ok((
            self.left.expand(assignment)?,
            self.right.expand(assignment)?,
        ))
    }

    /// Uniformly random block words of length at most `max_len`.
    pub fn random_assignment(
        &self,
        max_len: usize,
        rng: &mut impl Rng,
    ) -> Result<BraidingAssignment> {
        let mut assignment = BraidingAssignment::new();
        for (id, strands) in self.block_strand_counts()? {
            let length = rng.gen_range(0..=max_len);
            assignment
                .blocks
                .insert(id, BraidWord::random(strands, length, rng));
        }
        Ok(assignment)
    }

    /// Destabilization: `P · σ^{sign}` against `P` with one strand fewer.
    /// `P` is a braid on `block_strands ≥ 2` strands.
    pub fn destab(sign: i32, block_strands: usize) -> Result<Self> {
        let w = block_strands
            .checked_sub(1)
            .filter(|&w| w >= 1)
            .ok_or_else(|| {
                Error::InvalidTemplate(format!(
                    "destabilization block needs at least 2 strands, got {block_strands}"
                ))
            })?;
        let blocks = arities(&[("P", 2)]);
        let left = BlockStrandDiagram::new(
            vec![w, 1, 1],
            vec![block("P", 1), crossing(2, sign)],
            blocks.clone(),
        )?;
        let right = BlockStrandDiagram::new(vec![w, 1], vec![block("P", 1)], blocks)?;
        Template::new(if sign > 0 { "destab+" } else { "destab-" }, left, right)
    }

    /// Exchange with `P`, `Q` on `weight + 1` strands.
    pub fn exchange(weight: usize) -> Result<Self> {
        let blocks = arities(&[("P", 2), ("Q", 2)]);
        let side = |s: i32| {
            BlockStrandDiagram::new(
                vec![weight, 1, 1],
                vec![
                    block("P", 1),
                    crossing(2, s),
                    block("Q", 1),
                    crossing(2, -s),
                ],
                blocks.clone(),
            )
        };
        Template::new("exchange", side(1)?, side(-1)?)
    }

    /// 3-braid flype `P R Q σ₂^ε ↔ P σ₂^ε Q R`. Each block is a 2-braid; `R`
    /// sits on strands 2 and 3.
    pub fn flype(sign: i32) -> Result<Self> {
        let blocks = arities(&[("P", 2), ("Q", 2), ("R", 2)]);
        let left = BlockStrandDiagram::new(
            vec![1, 1, 1],
            vec![
                block("P", 1),
                block("R", 2),
                block("Q", 1),
                crossing(2, sign),
            ],
            blocks.clone(),
        )?;
        let right = BlockStrandDiagram::new(
            vec![1, 1, 1],
            vec![
                block("P", 1),
                crossing(2, sign),
                block("Q", 1),
                block("R", 2),
            ],
            blocks,
        )?;
        Template::new(if sign > 0 { "flype+" } else { "flype-" }, left, right)
    }

    pub const BUILTIN_NAMES: [&'static str; 5] =
        ["destab+", "destab-", "exchange", "flype+", "flype-"];

    /// Built-in templates at their default sizes (destabilization blocks on
    /// 3 strands, exchange blocks on 3 strands).
    pub fn builtin(name: &str) -> Option<Self> {
        let name = name.replace('−', "-");
        let template = match name.as_str() {
            "destab+" => Template::destab(1, 3),
            "destab-" => Template::destab(-1, 3),
            "exchange" => Template::exchange(2),
            "flype+" => Template::flype(1),
            "flype-" => Template::flype(-1),
            _ => return None,
        };
        Some(template.expect("built-in templates are valid"))
    }

    pub fn builtins() -> Vec<Self> {
        Template::BUILTIN_NAMES
            .iter()
            .map(|n| Template::builtin(n).unwrap())
            .collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: TemplateJson = serde_json::from_str(text)
            .map_err(|e| Error::InvalidTemplate(format!("template JSON: {e}")))?;
        let blocks = raw.blocks;
        let convert = |items: Vec<ItemJson>| -> Result<Vec<DiagramItem>> {
            items
                .into_iter()
                .map(|item| match item {
                    ItemJson::Crossing {
                        x: (position, sign),
                    } => Ok(DiagramItem::Crossing { position, sign }),
                    ItemJson::Block { b, at } => Ok(DiagramItem::Block { id: b, start: at }),
                })
                .collect()
        };
        let right_weights = raw.right_weights.unwrap_or_else(|| raw.weights.clone());
        let left = BlockStrandDiagram::new(raw.weights, convert(raw.left)?, blocks.clone())?;
        let right = BlockStrandDiagram::new(right_weights, convert(raw.right)?, blocks)?;
        Template::new(&raw.name, left, right)
    }

    pub fn to_json(&self) -> String {
        let convert = |items: &[DiagramItem]| -> Vec<ItemJson> {
            items
                .iter()
                .map(|item| match item {
                    DiagramItem::Crossing { position, sign } => ItemJson::Crossing {
                        x: (*position, *sign),
                    },
                    DiagramItem::Block { id, start } => ItemJson::Block {
                        b: id.clone(),
                        at: *start,
                    },
                })
                .collect()
        };
        let raw = TemplateJson {
            name: self.name.clone(),
            weights: self.left.strand_weights.clone(),
            right_weights: (self.right.strand_weights != self.left.strand_weights)
                .then(|| self.right.strand_weights.clone()),
            left: convert(&self.left.schema),
            right: convert(&self.right.schema),
            blocks: self.left.block_arities.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("template serializes")
    }
}

pub fn instantiate_template(
    template: &Template,
    assignment: &BraidingAssignment,
) -> Result<(BraidWord, BraidWord)> {
    template.instantiate(assignment)
}

#[derive(Serialize, Deserialize)]
struct TemplateJson {
    name: String,
    weights: Vec<usize>,
    /// Only when the right side has other weights (destabilization).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    right_weights: Option<Vec<usize>>,
    left: Vec<ItemJson>,
    right: Vec<ItemJson>,
    blocks: BTreeMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ItemJson {
    Crossing {
        x: (usize, i32),
    },
    Block {
        b: String,
        #[serde(default = "first_position")]
        at: usize,
    },
}

fn first_position() -> usize {
    1
}

fn crossing(position: usize, sign: i32) -> DiagramItem {
    DiagramItem::Crossing { position, sign }
}

fn block(id: &str, start: usize) -> DiagramItem {
    DiagramItem::Block {
        id: id.to_string(),
        start,
    }
}

fn arities(pairs: &[(&str, usize)]) -> BTreeMap<String, usize> {
    pairs.iter().map(|&(id, a)| (id.to_string(), a)).collect()
}
