use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{ResolutionOutcome, ResolutionStatus, PRONOUN_FORMS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GoldAntecedent {
    Token {
        sentence_seq: usize,
        token_index: usize,
    },
    Pleonastic,
    /// Referential, but nothing in reach is a valid antecedent.
    NoAntecedent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldEntry {
    pub sentence_seq: usize,
    pub token_index: usize,
    pub gold: GoldAntecedent,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScoreError {
    #[error("pronoun at sentence {sentence_seq}, token {token_index} has no gold annotation")]
    MissingGold { sentence_seq: usize, token_index: usize },
    #[error("gold annotation for sentence {sentence_seq}, token {token_index} matches no pronoun")]
    UnmatchedGold { sentence_seq: usize, token_index: usize },
}

/// Counts for one pronoun form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccuracyRow {
    pub pronoun: String,
    pub total: usize,
    pub correct: usize,
    pub wrong: usize,
    pub unresolved: usize,
}

impl AccuracyRow {
    fn pct(&self, n: usize) -> Option<f64> {
        (self.total > 0).then(|| n as f64 * 100.0 / self.total as f64)
    }

    pub fn correct_pct(&self) -> Option<f64> {
        self.pct(self.correct)
    }

    pub fn wrong_pct(&self) -> Option<f64> {
        self.pct(self.wrong)
    }

    pub fn unresolved_pct(&self) -> Option<f64> {
        self.pct(self.unresolved)
    }
}

/// Per-pronoun correct / false / unresolved breakdown, one row per handled form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccuracyTable {
    pub rows: Vec<AccuracyRow>,
}

impl AccuracyTable {
    pub fn row(&self, pronoun: &str) -> Option<&AccuracyRow> {
        self.rows.iter().find(|r| r.pronoun == pronoun)
    }
}

/// Score outcomes against gold annotations.
///
/// A resolved pronoun is correct when it points at the gold token; a
/// pleonastic verdict is correct when gold says pleonastic. Any other verdict
/// is false, except an unresolved one, which is counted separately.
pub fn score_outcomes(outcomes: &[ResolutionOutcome], gold: &[GoldEntry]) -> Result<AccuracyTable, ScoreError> {
    let gold_by_pos: BTreeMap<(usize, usize), GoldAntecedent> =
        gold.iter().map(|g| ((g.sentence_seq, g.token_index), g.gold)).collect();
    let mut seen = BTreeMap::new();

    let mut rows: Vec<AccuracyRow> =
        PRONOUN_FORMS.iter().map(|p| AccuracyRow { pronoun: (*p).into(), ..Default::default() }).collect();

    for o in outcomes {
        let pos = (o.occurrence.sentence_seq, o.occurrence.token_index);
        let Some(g) = gold_by_pos.get(&pos) else {
            return Err(ScoreError::MissingGold { sentence_seq: pos.0, token_index: pos.1 });
        };
        seen.insert(pos, ());
        let Some(row) = rows.iter_mut().find(|r| r.pronoun == o.occurrence.form) else { continue };
        row.total += 1;
        match (o.status, g) {
            (ResolutionStatus::Unresolved, _) => row.unresolved += 1,
            (ResolutionStatus::Pleonastic, GoldAntecedent::Pleonastic) => row.correct += 1,
            (ResolutionStatus::Resolved, GoldAntecedent::Token { sentence_seq, token_index }) => {
                let hit = o
                    .antecedent
                    .as_ref()
                    .is_some_and(|a| a.sentence_seq == *sentence_seq && a.token_index == *token_index);
                if hit {
                    row.correct += 1;
                } else {
                    row.wrong += 1;
                }
            }
            _ => row.wrong += 1,
        }
    }
    if let Some(g) = gold.iter().find(|g| !seen.contains_key(&(g.sentence_seq, g.token_index))) {
        return Err(ScoreError::UnmatchedGold { sentence_seq: g.sentence_seq, token_index: g.token_index });
    }
    Ok(AccuracyTable { rows })
}
