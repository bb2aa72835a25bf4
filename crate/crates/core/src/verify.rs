//! Reproduction of the flype-pair computations: two 3-braids with the same
//! knot type and self-linking number that no transverse move search joins.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::Result;
use crate::garside::are_conjugate;
use crate::invariants::alexander_polynomial;
use crate::invariants::soundness::jones_any_length;
use crate::moves::{apply_flype, match_flype_3braid, stabilize};
use crate::search::{connect, scramble, MoveSet, SearchBounds, SearchOutcome};
use crate::templates::{BraidingAssignment, Template};
use crate::transverse::{component_invariants, self_linking};

/// Knot before the negative flype.
pub const KNOT_BEFORE: &str = "s1^5 s2^4 s1^6 s2^-1";
/// Knot after the negative flype.
pub const KNOT_AFTER: &str = "s1^5 s2^-1 s1^6 s2^4";
/// Two-component link before the negative flype.
pub const LINK_BEFORE: &str = "s1^3 s2^4 s1^-5 s2^-1";
pub const LINK_AFTER: &str = "s1^3 s2^-1 s1^-5 s2^4";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub id: String,
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub items: Vec<CheckItem>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.items.iter().find(|i| !i.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Random words checked in items (g) and (h).
    pub random_cases: usize,
    pub search_nodes: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            random_cases: 1000,
            search_nodes: 100_000,
        }
    }
}

fn word(text: &str) -> BraidWord {
    BraidWord::parse(text, 3).expect("fixed words parse")
}

fn item(id: &str, claim: &str, check: impl FnOnce() -> Result<(bool, String)>) -> CheckItem {
    let (passed, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckItem {
        id: id.to_string(),
        claim: claim.to_string(),
        passed,
        detail,
    }
}

pub fn verify_paper() -> VerifyReport {
    verify_with(&VerifyOptions::default())
}

pub fn verify_with(options: &VerifyOptions) -> VerifyReport {
    let before = word(KNOT_BEFORE);
    let after = word(KNOT_AFTER);
    let mut items = Vec::new();

    items.push(item(
        "a",
        "exponent sum 14 and braid index 3 for both knots",
        || {
            let values = [
                (before.exponent_sum(), before.n_strands()),
                (after.exponent_sum(), after.n_strands()),
            ];
            Ok((values == [(14, 3), (14, 3)], format!("(e, n) = {values:?}")))
        },
    ));

    items.push(item("b", "self-linking number 11 for both knots", || {
        let values = (self_linking(&before), self_linking(&after));
        Ok((values == (11, 11), format!("β = {values:?}")))
    }));

    items.push(item(
        "c",
        "the negative flype takes the first knot word to the second",
        || {
            let Some(data) = match_flype_3braid(&before) else {
                return Ok((false, "no flype pattern found".into()));
            };
            let flyped = apply_flype(&data);
            let assignment = BraidingAssignment::new()
                .with("P", BraidWord::parse("s1^5", 2)?)
                .with("R", BraidWord::parse("s1^4", 2)?)
                .with("Q", BraidWord::parse("s1^6", 2)?);
            let template = Template::builtin("flype-").expect("built-in");
            let (left, right) = template.instantiate(&assignment)?;
            let ok = data.epsilon == -1 && flyped == after && left == before && right == after;
            Ok((ok, format!("{before} -> {flyped} (ε = {})", data.epsilon)))
        },
    ));

    items.push(item(
        "d",
        "the two knots have equal Jones and Alexander polynomials",
        || {
            let (jb, ja) = (jones_any_length(&before)?, jones_any_length(&after)?);
            let (ab, aa) = (
                alexander_polynomial(&before)?,
                alexander_polynomial(&after)?,
            );
            let ok = jb == ja
                && ab == aa
                && before.closure_components().is_knot()
                && after.closure_components().is_knot();
            Ok((
                ok,
                format!("V = {} ; Δ = {}", jb.display_with("q"), ab.polynomial),
            ))
        },
    ));

    items.push(item(
        "e",
        "the two knot words are not conjugate in B3",
        || {
            let conjugate = are_conjugate(&before, &after)?;
            Ok((!conjugate, format!("conjugate: {conjugate}")))
        },
    ));

    items.push(item(
        "f",
        "link components: β (-1, -3) before the flype, (-3, -1) after, linking 1",
        || {
            let link_before = word(LINK_BEFORE);
            let link_after = word(LINK_AFTER);
            let flyped = match_flype_3braid(&link_before).map(|d| apply_flype(&d));
            let b = component_invariants(&link_before)?;
            let a = component_invariants(&link_after)?;
            let pair = |inv: &crate::transverse::TransverseInvariants| {
                (inv.beta(1), inv.beta(2), inv.linking(1, 2))
            };
            let ok = link_before.closure_components().count() == 2
                && flyped.as_ref() == Some(&link_after)
                && pair(&b) == (Some(-1), Some(-3), Some(1))
                && pair(&a) == (Some(-3), Some(-1), Some(1));
            Ok((ok, format!("before {:?}, after {:?}", pair(&b), pair(&a))))
        },
    ));

    items.push(item(
        "g",
        "self-linking is constant along random transverse move sequences",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
            let bounds = SearchBounds::new(6, 24, 1, MoveSet::Transverse);
            let mut failures = 0;
            for _ in 0..options.random_cases {
                let n = rng.gen_range(2..=4);
                let length = rng.gen_range(0..=12);
                let start = BraidWord::random(n, length, &mut rng);
                let k = rng.gen_range(1..=6);
                let (_, seq) = scramble(&start, k, rng.gen(), &bounds)?;
                let beta = self_linking(&start);
                if !seq.is_transverse()
                    || seq.steps().iter().any(|s| self_linking(&s.result) != beta)
                {
                    failures += 1;
                }
            }
            Ok((
                failures == 0,
                format!("{} sequences, {failures} failures", options.random_cases),
            ))
        },
    ));

    items.push(item(
        "h",
        "negative stabilization lowers self-linking by exactly 2",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed.wrapping_add(1));
            let mut failures = 0;
            for _ in 0..options.random_cases {
                let n = rng.gen_range(1..=4);
                let length = rng.gen_range(0..=12);
                let w = BraidWord::random(n, length, &mut rng);
                if self_linking(&stabilize(&w, -1)) != self_linking(&w) - 2 {
                    failures += 1;
                }
            }
            Ok((
                failures == 0,
                format!("{} words, {failures} failures", options.random_cases),
            ))
        },
    ));

    items.push(item(
        "i",
        "bounded transverse search between the two knots exhausts",
        || {
            let mut bounds = SearchBounds::new(4, 24, options.search_nodes, MoveSet::Transverse);
            bounds.view_depth = 1;
            let result = connect(&before, &after, &bounds)?;
            let s = &result.stats;
            let exhausted = result.outcome == SearchOutcome::Exhausted;
            Ok((
                exhausted,
                format!(
                    "{} (nodes expanded {}, frontier peak {}, dedup hits {}, node limit hit {})",
                    if exhausted { "exhausted" } else { "found" },
                    s.nodes_expanded,
                    s.frontier_peak,
                    s.dedup_hits,
                    s.node_limit_hit
                ),
            ))
        },
    ));

    VerifyReport { items }
}
