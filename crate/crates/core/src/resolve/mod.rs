//! Rule-based pronoun resolution over the sliding window.
//!
//! Each pronoun class has its own rule:
//!
//! * `he`/`she` family: the nearest preceding gender-matching noun or name that
//!   is a subject, falling back to the nearest gender-matching one at all.
//! * `they` family: the nearest plural noun or coordinated noun group within
//!   the current and the two preceding sentences.
//! * `it`/`its`: pleonastic uses are recognised by pattern; otherwise the
//!   nearest non-living, non-plural noun outside a prepositional phrase.
//! * first person: the subject of the nearest preceding communication verb
//!   within two sentences.
//! * reflexives: the subject of the pronoun's own clause.
//!
//! Candidates are always noun tokens that strictly precede the pronoun; scans
//! run backward in linear order, so "nearest" is unambiguous.

mod lexicon;
mod pleonastic;
mod score;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

pub use lexicon::{bundled, entries, Lexicon, LexiconError};
pub use pleonastic::{PatternAtom, PatternError, PatternSet, PleonasticPattern};
pub use score::{score_outcomes, AccuracyRow, AccuracyTable, GoldAntecedent, GoldEntry, ScoreError};

use crate::extract::conjuncts;
use crate::ingest::{Relation, Sentence, Token};
use crate::thesaurus::Gender;
use crate::window::WindowState;

/// Distance bound (in sentences before the current one) for the `they` and first-person rules.
pub const PLURAL_LOOKBACK: usize = 2;

/// Subjects of these verbs are taken as the speaker of a first-person pronoun.
pub const COMMUNICATION_VERBS: [&str; 6] = ["say", "tell", "think", "explain", "ask", "reply"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PronounClass {
    He,
    She,
    It,
    They,
    FirstPerson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PronounCase {
    Subject,
    Possessive,
    Object,
    Reflexive,
}

/// The handled pronoun forms, in accuracy-table row order.
pub const PRONOUN_FORMS: [&str; 18] = [
    "he",
    "his",
    "him",
    "himself",
    "she",
    "her",
    "herself",
    "it",
    "its",
    "itself",
    "they",
    "their",
    "them",
    "themselves",
    "i",
    "my",
    "me",
    "myself",
];

/// Class and case of a pronoun form. `her` is possessive when attached as a possessor.
pub fn classify(form: &str, deprel: &str) -> Option<(PronounClass, PronounCase)> {
    use PronounCase::*;
    use PronounClass::*;
    let r = match form.to_lowercase().as_str() {
        "he" => (He, Subject),
        "his" => (He, Possessive),
        "him" => (He, Object),
        "himself" => (He, Reflexive),
        "she" => (She, Subject),
        "her" if deprel.to_ascii_lowercase().contains("poss") => (She, Possessive),
        "her" => (She, Object),
        "herself" => (She, Reflexive),
        "it" => (It, Subject),
        "its" => (It, Possessive),
        "itself" => (It, Reflexive),
        "they" => (They, Subject),
        "their" => (They, Possessive),
        "them" => (They, Object),
        "themselves" => (They, Reflexive),
        "i" => (FirstPerson, Subject),
        "my" => (FirstPerson, Possessive),
        "me" => (FirstPerson, Object),
        "myself" => (FirstPerson, Reflexive),
        _ => return None,
    };
    Some(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PronounOccurrence {
    pub sentence_seq: usize,
    pub token_index: usize,
    /// Lowercased.
    pub form: String,
    pub class: PronounClass,
    pub case: PronounCase,
}

/// Pronoun occurrences of a sentence in token order.
pub fn find_pronouns(s: &Sentence) -> Vec<PronounOccurrence> {
    s.tokens
        .iter()
        .filter(|t| t.is_pronoun() || t.upos == "DET")
        .filter_map(|t| {
            classify(&t.form, &t.deprel).map(|(class, case)| PronounOccurrence {
                sentence_seq: s.seq,
                token_index: t.index,
                form: t.form.to_lowercase(),
                class,
                case,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ResolutionStatus {
    Resolved,
    Pleonastic,
    Unresolved,
}

impl fmt::Display for ResolutionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResolutionStatus::Resolved => "RESOLVED",
            ResolutionStatus::Pleonastic => "PLEONASTIC",
            ResolutionStatus::Unresolved => "UNRESOLVED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Antecedent {
    pub sentence_seq: usize,
    pub token_index: usize,
    pub surface: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionOutcome {
    pub occurrence: PronounOccurrence,
    pub status: ResolutionStatus,
    pub antecedent: Option<Antecedent>,
}

impl ResolutionOutcome {
    fn unresolved(occurrence: PronounOccurrence) -> Self {
        Self { occurrence, status: ResolutionStatus::Unresolved, antecedent: None }
    }

    fn resolved(occurrence: PronounOccurrence, antecedent: Antecedent) -> Self {
        Self { occurrence, status: ResolutionStatus::Resolved, antecedent: Some(antecedent) }
    }
}

/// Pronoun resolver: immutable lexicon plus the pleonastic pattern set.
#[derive(Debug, Clone, Default)]
pub struct Resolver {
    pub lexicon: Lexicon,
    pub patterns: PatternSet,
}

/// Tokens of the name span headed at `head`: the head plus `flat`/`compound` parts.
fn name_span(s: &Sentence, head: usize) -> Vec<&Token> {
    let mut idx = alloc::vec![head];
    let mut i = 0;
    while i < idx.len() {
        let cur = idx[i];
        for d in s.dependents(cur) {
            if matches!(d.base_deprel(), "flat" | "compound") && d.deprel != "compound:prt" && !idx.contains(&d.index) {
                idx.push(d.index);
            }
        }
        i += 1;
    }
    idx.sort_unstable();
    idx.iter().filter_map(|&i| s.token(i)).collect()
}

fn span_surface(span: &[&Token]) -> String {
    span.iter().map(|t| t.form.as_str()).collect::<Vec<_>>().join(" ")
}

fn is_name_part(t: &Token) -> bool {
    matches!(t.base_deprel(), "flat" | "compound") && t.deprel != "compound:prt"
}

/// Candidate mention heads are nouns that are not themselves parts of a larger name.
fn is_mention_head(t: &Token) -> bool {
    t.is_noun() && !is_name_part(t)
}

/// Whether the path from `idx` up to its governing verb crosses a prepositional arc.
pub fn in_prepositional_phrase(s: &Sentence, idx: usize) -> bool {
    let mut cur = idx;
    for _ in 0..s.tokens.len() {
        let Some(t) = s.token(cur) else { return false };
        let has_case = s
            .dependents(cur)
            .any(|d| d.base_deprel() == "case" && (d.upos == "ADP" || d.xpos == "IN" || d.xpos == "TO"));
        let base = t.base_deprel();
        if has_case || base == "pobj" || base == "prep" || base.starts_with("prep_") {
            return true;
        }
        match s.token(t.head) {
            Some(h) if !h.is_verb() => cur = h.index,
            _ => return false,
        }
    }
    false
}

/// Sentences to scan, newest first, limited to `max_back` sentences before `current_seq`.
fn scan_sentences(window: &WindowState, current_seq: usize, max_back: Option<usize>) -> Vec<&Sentence> {
    window
        .iter()
        .rev()
        .filter(|s| s.seq <= current_seq)
        .filter(|s| max_back.is_none_or(|m| current_seq - s.seq <= m))
        .collect()
}

/// Tokens strictly before the pronoun, newest first.
fn backward_tokens<'a>(
    sentences: &'a [&'a Sentence],
    occ: &'a PronounOccurrence,
) -> impl Iterator<Item = (&'a Sentence, &'a Token)> + 'a {
    sentences.iter().flat_map(move |s| {
        s.tokens
            .iter()
            .rev()
            .filter(move |t| s.seq != occ.sentence_seq || t.index < occ.token_index)
            .map(move |t| (*s, t))
    })
}

impl Resolver {
    pub fn new(lexicon: Lexicon, patterns: PatternSet) -> Self {
        Self { lexicon, patterns }
    }

    pub fn bundled() -> Self {
        Self::new(Lexicon::bundled(), PatternSet::bundled())
    }

    /// Is this `it` semantically empty? Only the form `it` can be pleonastic.
    pub fn detect_pleonastic(&self, occ: &PronounOccurrence, s: &Sentence) -> bool {
        detect_pleonastic(occ, s, &self.patterns)
    }

    /// Resolve a single pronoun against the window.
    pub fn resolve_pronoun(&self, occ: &PronounOccurrence, window: &WindowState) -> ResolutionOutcome {
        self.resolve_with_prior(occ, window, &[])
    }

    /// Resolve every pronoun of the buffered sentence `seq`, in token order.
    ///
    /// Earlier outcomes in the same sentence supply the surface when a
    /// clause subject that is itself a pronoun becomes an antecedent.
    pub fn resolve_sentence(&self, seq: usize, window: &WindowState) -> Vec<ResolutionOutcome> {
        let Some(s) = window.get(seq) else {
            return Vec::new();
        };
        let mut outcomes: Vec<ResolutionOutcome> = Vec::new();
        for occ in find_pronouns(s) {
            let o = self.resolve_with_prior(&occ, window, &outcomes);
            outcomes.push(o);
        }
        outcomes
    }

    fn resolve_with_prior(
        &self,
        occ: &PronounOccurrence,
        window: &WindowState,
        prior: &[ResolutionOutcome],
    ) -> ResolutionOutcome {
        let Some(current) = window.get(occ.sentence_seq) else {
            return ResolutionOutcome::unresolved(occ.clone());
        };
        if occ.case == PronounCase::Reflexive {
            if occ.class == PronounClass::It {
                return ResolutionOutcome::unresolved(occ.clone());
            }
            return self.resolve_reflexive(occ, current, prior);
        }
        let found = match occ.class {
            PronounClass::He => self.resolve_gendered(occ, window, Gender::Male),
            PronounClass::She => self.resolve_gendered(occ, window, Gender::Female),
            PronounClass::They => self.resolve_plural(occ, window),
            PronounClass::It => {
                if occ.form == "it" && self.detect_pleonastic(occ, current) {
                    return ResolutionOutcome {
                        occurrence: occ.clone(),
                        status: ResolutionStatus::Pleonastic,
                        antecedent: None,
                    };
                }
                self.resolve_inanimate(occ, window)
            }
            PronounClass::FirstPerson => self.resolve_speaker(occ, window, prior),
        };
        match found {
            Some(a) => ResolutionOutcome::resolved(occ.clone(), a),
            None => ResolutionOutcome::unresolved(occ.clone()),
        }
    }

    fn mention_gender(&self, s: &Sentence, head: &Token) -> (Gender, String) {
        let span = name_span(s, head.index);
        let surface = span_surface(&span);
        let forms: Vec<&str> = span.iter().map(|t| t.form.as_str()).collect();
        let proper = span.iter().any(|t| t.is_proper_noun());
        (self.lexicon.gender(&surface, &head.lemma, &forms, proper), surface)
    }

    fn resolve_gendered(&self, occ: &PronounOccurrence, window: &WindowState, gender: Gender) -> Option<Antecedent> {
        let sentences = scan_sentences(window, occ.sentence_seq, None);
        let mut fallback = None;
        for (s, t) in backward_tokens(&sentences, occ) {
            if !is_mention_head(t) {
                continue;
            }
            let (g, surface) = self.mention_gender(s, t);
            if g != gender {
                continue;
            }
            let a = Antecedent { sentence_seq: s.seq, token_index: t.index, surface };
            if t.relation() == Relation::Subj {
                return Some(a);
            }
            if fallback.is_none() {
                fallback = Some(a);
            }
        }
        fallback
    }

    fn resolve_plural(&self, occ: &PronounOccurrence, window: &WindowState) -> Option<Antecedent> {
        let sentences = scan_sentences(window, occ.sentence_seq, Some(PLURAL_LOOKBACK));
        for (s, t) in backward_tokens(&sentences, occ) {
            if !is_mention_head(t) {
                continue;
            }
            if let Some(group) = coordination_group(s, t.index) {
                let surface = group.iter().map(|&m| span_surface(&name_span(s, m))).collect::<Vec<_>>().join(" and ");
                return Some(Antecedent { sentence_seq: s.seq, token_index: group[0], surface });
            }
            if t.is_plural_noun() {
                return Some(Antecedent {
                    sentence_seq: s.seq,
                    token_index: t.index,
                    surface: span_surface(&name_span(s, t.index)),
                });
            }
        }
        None
    }

    fn resolve_inanimate(&self, occ: &PronounOccurrence, window: &WindowState) -> Option<Antecedent> {
        let sentences = scan_sentences(window, occ.sentence_seq, None);
        for (s, t) in backward_tokens(&sentences, occ) {
            if !is_mention_head(t) || t.is_plural_noun() {
                continue;
            }
            let span = name_span(s, t.index);
            let surface = span_surface(&span);
            let forms: Vec<&str> = span.iter().map(|t| t.form.as_str()).collect();
            if self.lexicon.is_animate(&surface, &t.lemma, &forms) || in_prepositional_phrase(s, t.index) {
                continue;
            }
            return Some(Antecedent { sentence_seq: s.seq, token_index: t.index, surface });
        }
        None
    }

    fn resolve_speaker(
        &self,
        occ: &PronounOccurrence,
        window: &WindowState,
        prior: &[ResolutionOutcome],
    ) -> Option<Antecedent> {
        let sentences = scan_sentences(window, occ.sentence_seq, Some(PLURAL_LOOKBACK));
        for (s, t) in backward_tokens(&sentences, occ) {
            if !t.is_verb() || !COMMUNICATION_VERBS.contains(&t.lemma_lower().as_str()) {
                continue;
            }
            let subject = s
                .dependents_with(t.index, Relation::Subj)
                .find(|d| s.seq != occ.sentence_seq || (d.index < occ.token_index && d.index != occ.token_index));
            if let Some(subj) = subject {
                return Some(self.antecedent_for(s, subj, prior));
            }
        }
        None
    }

    fn resolve_reflexive(
        &self,
        occ: &PronounOccurrence,
        s: &Sentence,
        prior: &[ResolutionOutcome],
    ) -> ResolutionOutcome {
        let Some(pronoun) = s.token(occ.token_index) else {
            return ResolutionOutcome::unresolved(occ.clone());
        };
        let mut clause = pronoun.head;
        for _ in 0..s.tokens.len() {
            let Some(h) = s.token(clause) else { break };
            if let Some(subj) = s.dependents_with(h.index, Relation::Subj).find(|d| d.index != occ.token_index) {
                if subj.index < occ.token_index {
                    return ResolutionOutcome::resolved(occ.clone(), self.antecedent_for(s, subj, prior));
                }
                break;
            }
            if h.relation() == Relation::Conj || h.base_deprel() == "xcomp" {
                clause = h.head;
            } else {
                break;
            }
        }
        ResolutionOutcome::unresolved(occ.clone())
    }

    /// Antecedent pointing at `t`; a pronoun resolved earlier in the sentence lends its surface.
    fn antecedent_for(&self, s: &Sentence, t: &Token, prior: &[ResolutionOutcome]) -> Antecedent {
        let surface = prior
            .iter()
            .find(|o| o.occurrence.sentence_seq == s.seq && o.occurrence.token_index == t.index)
            .and_then(|o| o.antecedent.as_ref())
            .map(|a| a.surface.clone())
            .unwrap_or_else(|| span_surface(&name_span(s, t.index)));
        Antecedent { sentence_seq: s.seq, token_index: t.index, surface }
    }
}

/// Members of the noun coordination `idx` belongs to (first conjunct first), or `None`.
fn coordination_group(s: &Sentence, idx: usize) -> Option<Vec<usize>> {
    let mut head = idx;
    for _ in 0..s.tokens.len() {
        match s.token(head) {
            Some(t) if t.relation() == Relation::Conj && s.token(t.head).is_some_and(|h| h.is_noun()) => head = t.head,
            _ => break,
        }
    }
    let members: Vec<usize> =
        conjuncts(s, head).into_iter().filter(|&m| s.token(m).is_some_and(|t| t.is_noun())).collect();
    (members.len() >= 2 && members.contains(&idx)).then_some(members)
}

/// Pattern test for pleonastic `it`, anchored at the pronoun token.
pub fn detect_pleonastic(occ: &PronounOccurrence, s: &Sentence, patterns: &PatternSet) -> bool {
    occ.form == "it" && patterns.matching_pattern(s, occ.token_index).is_some()
}

/// Copy of `s` with each resolved pronoun's form and lemma replaced by its antecedent surface.
///
/// Tags and arcs are left untouched, so a substituted possessive stays a possessive.
pub fn substitute(s: &Sentence, outcomes: &[ResolutionOutcome]) -> Sentence {
    let mut out = s.clone();
    for o in outcomes {
        if o.status != ResolutionStatus::Resolved || o.occurrence.sentence_seq != s.seq {
            continue;
        }
        let (Some(a), Some(t)) = (&o.antecedent, o.occurrence.token_index.checked_sub(1)) else { continue };
        if let Some(tok) = out.tokens.get_mut(t) {
            tok.form = a.surface.clone();
            tok.lemma = a.surface.to_string();
        }
    }
    out
}
