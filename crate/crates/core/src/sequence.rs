//! Move sequences: certified chains of closed-braid moves.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::garside::NormalForm;
use crate::moves::{apply_flype, exchange_at, flype_at, literal_destabilization, stabilize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    #[serde(rename = "conjugation")]
    Conjugation,
    #[serde(rename = "stab+")]
    StabPlus,
    #[serde(rename = "stab-")]
    StabMinus,
    #[serde(rename = "destab+")]
    DestabPlus,
    #[serde(rename = "destab-")]
    DestabMinus,
    #[serde(rename = "exchange")]
    Exchange,
    #[serde(rename = "flype+")]
    FlypePlus,
    #[serde(rename = "flype-")]
    FlypeMinus,
}

impl MoveKind {
    pub const ALL: [MoveKind; 8] = [
        MoveKind::Conjugation,
        MoveKind::StabPlus,
        MoveKind::StabMinus,
        MoveKind::DestabPlus,
        MoveKind::DestabMinus,
        MoveKind::Exchange,
        MoveKind::FlypePlus,
        MoveKind::FlypeMinus,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::Conjugation => "conjugation",
            MoveKind::StabPlus => "stab+",
            MoveKind::StabMinus => "stab-",
            MoveKind::DestabPlus => "destab+",
            MoveKind::DestabMinus => "destab-",
            MoveKind::Exchange => "exchange",
            MoveKind::FlypePlus => "flype+",
            MoveKind::FlypeMinus => "flype-",
        }
    }

    /// `±1` for the signed kinds, 0 otherwise.
    pub fn sign(self) -> i32 {
        match self {
            MoveKind::StabPlus | MoveKind::DestabPlus | MoveKind::FlypePlus => 1,
            MoveKind::StabMinus | MoveKind::DestabMinus | MoveKind::FlypeMinus => -1,
            MoveKind::Conjugation | MoveKind::Exchange => 0,
        }
    }

    pub fn stab(sign: i32) -> Self {
        if sign > 0 {
            MoveKind::StabPlus
        } else {
            MoveKind::StabMinus
        }
    }

    pub fn destab(sign: i32) -> Self {
        if sign > 0 {
            MoveKind::DestabPlus
        } else {
            MoveKind::DestabMinus
        }
    }

    pub fn flype(sign: i32) -> Self {
        if sign > 0 {
            MoveKind::FlypePlus
        } else {
            MoveKind::FlypeMinus
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MoveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace('−', "-");
        MoveKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Syntax {
                token: s.to_string(),
                reason: "unknown move kind".into(),
            })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveParams {
    /// Signed letters of `g` for a conjugation `g⁻¹ w g`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugator: Option<Vec<i32>>,
    /// Rotation of the matched decomposition for exchanges and flypes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveStep {
    #[serde(rename = "move")]
    pub kind: MoveKind,
    pub params: MoveParams,
    #[serde(rename = "result_word")]
    pub result: BraidWord,
}

impl MoveStep {
    /// Builds the step by applying the move to `word`.
    pub fn apply(kind: MoveKind, params: MoveParams, word: &BraidWord) -> Result<MoveStep> {
        let result = compute(kind, &params, word)?;
        Ok(MoveStep {
            kind,
            params,
            result,
        })
    }

    pub fn conjugation(word: &BraidWord, g: &BraidWord) -> Result<MoveStep> {
        let params = MoveParams {
            conjugator: Some(g.signed()),
            rotation: None,
        };
        MoveStep::apply(MoveKind::Conjugation, params, word)
    }

    pub fn stabilization(word: &BraidWord, sign: i32) -> MoveStep {
        MoveStep {
            kind: MoveKind::stab(sign),
            params: MoveParams::default(),
            result: stabilize(word, sign),
        }
    }

    pub fn with_rotation(kind: MoveKind, rotation: usize, word: &BraidWord) -> Result<MoveStep> {
        let params = MoveParams {
            conjugator: None,
            rotation: Some(rotation),
        };
        MoveStep::apply(kind, params, word)
    }

    /// Checks that the step follows from `previous`.
    pub fn verify(&self, previous: &BraidWord) -> Result<()> {
        let expected = compute(self.kind, &self.params, previous)?;
        let same = match self.kind {
            // any spelling of g⁻¹ w g will do
            MoveKind::Conjugation => {
                expected.n_strands() == self.result.n_strands()
                    && NormalForm::from_word(&expected) == NormalForm::from_word(&self.result)
            }
            _ => expected == self.result,
        };
        if same {
            Ok(())
        } else {
            Err(Error::Internal(format!(
                "{} of {previous} gives {expected}, not {}",
                self.kind, self.result
            )))
        }
    }
}

fn compute(kind: MoveKind, params: &MoveParams, word: &BraidWord) -> Result<BraidWord> {
    let rotation = || {
        params
            .rotation
            .ok_or_else(|| Error::InvalidDecomposition(format!("{kind} needs a rotation")))
    };
    match kind {
        MoveKind::Conjugation => {
            let signed = params.conjugator.as_ref().ok_or_else(|| {
                Error::InvalidDecomposition("conjugation needs a conjugator".into())
            })?;
            word.conjugate(&BraidWord::from_signed(word.n_strands(), signed)?)
        }
        MoveKind::StabPlus | MoveKind::StabMinus => Ok(stabilize(word, kind.sign())),
        MoveKind::DestabPlus | MoveKind::DestabMinus => match literal_destabilization(word) {
            Some((lower, sign)) if sign == kind.sign() => Ok(lower),
            _ => Err(Error::InvalidDecomposition(format!(
                "{word} does not end in its only σ{}^{}",
                word.n_strands().saturating_sub(1),
                kind.sign()
            ))),
        },
        MoveKind::Exchange => exchange_at(word, rotation()?),
        MoveKind::FlypePlus | MoveKind::FlypeMinus => {
            let data = flype_at(word, rotation()?)?;
            if data.epsilon != kind.sign() {
                return Err(Error::InvalidDecomposition(format!(
                    "flype at rotation {} of {word} has sign {}",
                    data.rotation, data.epsilon
                )));
            }
            Ok(apply_flype(&data))
        }
    }
}

/// Steps in order; serialized as a bare JSON array.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MoveSequence {
    pub steps: Vec<MoveStep>,
}

impl MoveSequence {
    pub fn new() -> Self {
        MoveSequence::default()
    }

    pub fn push(&mut self, step: MoveStep) {
        self.steps.push(step);
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[MoveStep] {
        &self.steps
    }

    /// Last word of the sequence started at `source`.
    pub fn final_word(&self, source: &BraidWord) -> BraidWord {
        self.steps
            .last()
            .map_or_else(|| source.clone(), |s| s.result.clone())
    }

    /// Re-applies every step from `source` and returns the final word.
    pub fn replay(&self, source: &BraidWord) -> Result<BraidWord> {
        let mut current = source.clone();
        for (index, step) in self.steps.iter().enumerate() {
            step.verify(&current).map_err(|e| Error::Replay {
                step: index + 1,
                reason: e.to_string(),
            })?;
            current = step.result.clone();
        }
        Ok(current)
    }

    pub fn is_transverse(&self) -> bool {
        self.steps
            .iter()
            .all(|s| crate::transverse::is_transverse_move(s.kind))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sequences serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax {
            token: "move sequence".into(),
            reason: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    fn sample() -> (BraidWord, MoveSequence) {
        let source = w("s1^5 s2^4 s1^6 s2^-1", 3);
        let mut seq = MoveSequence::new();
        let step = MoveStep::with_rotation(MoveKind::FlypeMinus, 0, &source).unwrap();
        seq.push(step);
        let stab = MoveStep::stabilization(&seq.final_word(&source), 1);
        seq.push(stab);
        let conj = MoveStep::conjugation(&seq.final_word(&source), &w("s3 s1^-1", 4)).unwrap();
        seq.push(conj);
        let undo = MoveStep::conjugation(&seq.final_word(&source), &w("s1 s3^-1", 4)).unwrap();
        seq.push(undo);
        let destab = MoveStep::apply(
            MoveKind::DestabPlus,
            MoveParams::default(),
            &seq.final_word(&source),
        )
        .unwrap();
        seq.push(destab);
        (source, seq)
    }

    #[test]
    fn replay_and_json_round_trip() {
        let (source, seq) = sample();
        assert_eq!(seq.replay(&source).unwrap(), w("s1^5 s2^-1 s1^6 s2^4", 3));
        let json = seq.to_json();
        assert!(json.contains("\"move\": \"flype-\""));
        assert!(json.contains("\"result_word\""));
        let back = MoveSequence::from_json(&json).unwrap();
        assert_eq!(back, seq);
        assert!(!seq.is_transverse());
    }

    #[test]
    fn tampered_steps_fail_replay() {
        let (source, mut seq) = sample();
        seq.steps[1].result = w("s1^5 s2^-1 s1^6 s2^4 s3^-1", 4);
        assert!(matches!(
            seq.replay(&source),
            Err(Error::Replay { step: 2, .. })
        ));
        let (source, mut seq) = sample();
        seq.steps[0].kind = MoveKind::FlypePlus;
        assert!(matches!(
            seq.replay(&source),
            Err(Error::Replay { step: 1, .. })
        ));
    }

    #[test]
    fn destab_needs_a_literal_match() {
        let word = w("s1 s2 s1", 3);
        assert!(MoveStep::apply(MoveKind::DestabPlus, MoveParams::default(), &word).is_err());
        let word = w("s1 s2^-1", 3);
        assert!(MoveStep::apply(MoveKind::DestabPlus, MoveParams::default(), &word).is_err());
        assert_eq!(
            MoveStep::apply(MoveKind::DestabMinus, MoveParams::default(), &word)
                .unwrap()
                .result,
            w("s1", 2)
        );
    }

    #[test]
    fn kind_names() {
        for kind in MoveKind::ALL {
            assert_eq!(kind.as_str().parse::<MoveKind>().unwrap(), kind);
        }
        assert_eq!("stab−".parse::<MoveKind>().unwrap(), MoveKind::StabMinus);
        assert!("twist".parse::<MoveKind>().is_err());
    }
}
