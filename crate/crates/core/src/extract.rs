//! Subject-verb-object extraction from a dependency tree.
//!
//! Every verb with a subject (its own, or one inherited along a `conj` chain
//! of verbs) yields one triple per (subject conjunct, object conjunct) pair.
//! A verb with no direct object yields a single triple whose object is the
//! reserved empty concept. Copular and linking constructions with a predicate
//! adjective ("the bone was big", "it tasted delicious") produce
//! [`Predication`]s instead: the adjective becomes a sub-concept of the subject.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::ingest::{Relation, Sentence, Token};

/// `head_lemma` of the empty object concept.
pub const EMPTY_MARKER: &str = "\u{2205}";

const NEGATION_LEMMAS: [&str; 3] = ["not", "never", "n't"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConceptKind {
    Subject,
    Object,
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptPhrase {
    pub head_lemma: String,
    /// Head plus folded name parts and prepositional modifiers, determiners dropped.
    pub surface: String,
    /// Lemmas of `amod` dependents of the head.
    pub adjectives: Vec<String>,
    /// 1-based index of the head token, 0 for the empty concept.
    pub token_index: usize,
    pub kind: ConceptKind,
}

impl ConceptPhrase {
    pub fn empty() -> Self {
        Self {
            head_lemma: String::from(EMPTY_MARKER),
            surface: String::new(),
            adjectives: Vec::new(),
            token_index: 0,
            kind: ConceptKind::Empty,
        }
    }

    pub fn is_empty_concept(&self) -> bool {
        self.kind == ConceptKind::Empty
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Polarity {
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VerbLink {
    /// Phrasal lemma: verb, particles and `xcomp` complements ("pick up", "wait to taste").
    pub lemma: String,
    /// Verb group as written, auxiliaries and negation included ("could not wait to taste").
    pub surface: String,
    pub polarity: Polarity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SvoTriple {
    pub subject: ConceptPhrase,
    pub verb: VerbLink,
    pub object: ConceptPhrase,
    pub sentence_seq: usize,
}

/// A predicate adjective attributed to a subject.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predication {
    pub subject: ConceptPhrase,
    pub adjectives: Vec<String>,
    pub sentence_seq: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub triples: Vec<SvoTriple>,
    pub predications: Vec<Predication>,
}

/// Triples of a sentence, in verb order.
pub fn extract_triples(s: &Sentence) -> Vec<SvoTriple> {
    extract(s).triples
}

/// Triples and predicate-adjective attributions of a sentence.
pub fn extract(s: &Sentence) -> Extraction {
    let mut out = Extraction::default();

    for tok in &s.tokens {
        if tok.is_verb() {
            let subjects = effective_subjects(s, tok.index);
            if subjects.is_empty() {
                continue;
            }
            let subjects: Vec<usize> = subjects.iter().flat_map(|&h| conjuncts(s, h)).collect();
            let group = verb_group(s, tok.index);
            let objects: Vec<usize> = group
                .verbs
                .iter()
                .flat_map(|&v| s.dependents_with(v, Relation::Obj).map(|t| t.index).collect::<Vec<_>>())
                .flat_map(|h| conjuncts(s, h))
                .collect();

            if objects.is_empty() {
                let predicates = predicate_adjectives(s, tok.index);
                if !predicates.is_empty() {
                    for &subj in &subjects {
                        out.predications.push(Predication {
                            subject: concept_phrase(s, subj, ConceptKind::Subject),
                            adjectives: predicates.clone(),
                            sentence_seq: s.seq,
                        });
                    }
                    continue;
                }
            }

            let verb = group.link(s);
            for &subj in &subjects {
                let subject = concept_phrase(s, subj, ConceptKind::Subject);
                if objects.is_empty() {
                    out.triples.push(SvoTriple {
                        subject,
                        verb: verb.clone(),
                        object: ConceptPhrase::empty(),
                        sentence_seq: s.seq,
                    });
                } else {
                    for &obj in &objects {
                        out.triples.push(SvoTriple {
                            subject: subject.clone(),
                            verb: verb.clone(),
                            object: concept_phrase(s, obj, ConceptKind::Object),
                            sentence_seq: s.seq,
                        });
                    }
                }
            }
        } else if tok.is_adjective() && has_copula(s, tok.index) {
            let subjects: Vec<usize> =
                s.dependents_with(tok.index, Relation::Subj).map(|t| t.index).flat_map(|h| conjuncts(s, h)).collect();
            if subjects.is_empty() {
                continue;
            }
            let adjectives: Vec<String> = conjuncts(s, tok.index)
                .into_iter()
                .filter_map(|i| s.token(i))
                .filter(|t| t.is_adjective() && (t.index == tok.index || !s.has_dependent(t.index, Relation::Subj)))
                .map(Token::lemma_lower)
                .collect();
            for subj in subjects {
                out.predications.push(Predication {
                    subject: concept_phrase(s, subj, ConceptKind::Subject),
                    adjectives: adjectives.clone(),
                    sentence_seq: s.seq,
                });
            }
        }
    }
    out
}

/// Negative iff a negation marker attaches to the verb or to one of its auxiliaries.
pub fn detect_polarity(verb: &Token, s: &Sentence) -> Polarity {
    let negated = |idx: usize| s.dependents(idx).any(is_negation);
    if negated(verb.index) || s.dependents(verb.index).filter(|d| d.base_deprel() == "aux").any(|a| negated(a.index)) {
        Polarity::Negative
    } else {
        Polarity::Positive
    }
}

fn is_negation(t: &Token) -> bool {
    match t.relation() {
        Relation::Neg => true,
        _ if t.base_deprel() == "advmod" => {
            let lemma = t.lemma_lower();
            let form = t.form.to_lowercase();
            NEGATION_LEMMAS.contains(&lemma.as_str()) || NEGATION_LEMMAS.contains(&form.as_str())
        }
        _ => false,
    }
}

fn has_copula(s: &Sentence, idx: usize) -> bool {
    s.dependents(idx).any(|d| d.base_deprel() == "cop")
}

/// Direct subjects of `idx`, or those of the first ancestor along a `conj` chain that has any.
fn effective_subjects(s: &Sentence, idx: usize) -> Vec<usize> {
    let mut current = idx;
    for _ in 0..s.tokens.len() {
        let direct: Vec<usize> = s.dependents_with(current, Relation::Subj).map(|t| t.index).collect();
        if !direct.is_empty() {
            return direct;
        }
        match s.token(current) {
            Some(t) if t.relation() == Relation::Conj && t.head != 0 => current = t.head,
            _ => break,
        }
    }
    Vec::new()
}

/// `head` plus its non-verbal `conj` descendants, in token order.
pub(crate) fn conjuncts(s: &Sentence, head: usize) -> Vec<usize> {
    let mut out = alloc::vec![head];
    let mut i = 0;
    while i < out.len() {
        let cur = out[i];
        for d in s.dependents_with(cur, Relation::Conj) {
            if !d.is_verb() && !out.contains(&d.index) {
                out.push(d.index);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

fn predicate_adjectives(s: &Sentence, verb: usize) -> Vec<String> {
    let mut out = Vec::new();
    for x in s.dependents(verb).filter(|d| d.base_deprel() == "xcomp" && d.is_adjective()) {
        for i in conjuncts(s, x.index) {
            if let Some(t) = s.token(i).filter(|t| t.is_adjective()) {
                out.push(t.lemma_lower());
            }
        }
    }
    out
}

struct VerbGroup {
    /// Head verb followed by its `xcomp` chain.
    verbs: Vec<usize>,
    /// Tokens contributing to the phrasal lemma.
    lexical: Vec<usize>,
    /// Auxiliaries and negation markers (surface only).
    functional: Vec<usize>,
}

impl VerbGroup {
    fn link(&self, s: &Sentence) -> VerbLink {
        let mut lexical = self.lexical.clone();
        lexical.sort_unstable();
        let mut all: Vec<usize> = lexical.iter().chain(self.functional.iter()).copied().collect();
        all.sort_unstable();
        all.dedup();
        let surface = join(s, &all, |t| t.form.as_str());
        let lemmas: Vec<String> = lexical.iter().filter_map(|&i| s.token(i)).map(Token::lemma_lower).collect();
        let polarity =
            if self.verbs.iter().filter_map(|&v| s.token(v)).any(|v| detect_polarity(v, s) == Polarity::Negative) {
                Polarity::Negative
            } else {
                Polarity::Positive
            };
        VerbLink { lemma: lemmas.join(" "), surface, polarity }
    }
}

fn is_particle(t: &Token) -> bool {
    let rel = t.deprel.to_ascii_lowercase();
    rel == "prt" || rel == "compound:prt"
}

fn verb_group(s: &Sentence, verb: usize) -> VerbGroup {
    let mut group = VerbGroup { verbs: Vec::new(), lexical: Vec::new(), functional: Vec::new() };
    let mut current = Some(verb);
    while let Some(v) = current.take() {
        if group.verbs.contains(&v) {
            break;
        }
        group.verbs.push(v);
        group.lexical.push(v);
        for d in s.dependents(v) {
            if is_particle(d) {
                group.lexical.push(d.index);
            } else if d.base_deprel() == "aux" || is_negation(d) {
                group.functional.push(d.index);
                group.functional.extend(s.dependents(d.index).filter(|x| is_negation(x)).map(|x| x.index));
            } else if v != verb && d.base_deprel() == "mark" {
                group.lexical.push(d.index);
            } else if current.is_none()
                && d.base_deprel() == "xcomp"
                && d.is_verb()
                && !s.has_dependent(d.index, Relation::Subj)
            {
                current = Some(d.index);
            }
        }
    }
    group
}

fn join<'a>(s: &'a Sentence, indices: &[usize], field: impl Fn(&'a Token) -> &'a str) -> String {
    let parts: Vec<&str> = indices.iter().filter_map(|&i| s.token(i)).map(field).collect();
    parts.join(" ")
}

/// Concept phrase headed at `head`.
pub fn concept_phrase(s: &Sentence, head: usize, kind: ConceptKind) -> ConceptPhrase {
    let Some(tok) = s.token(head) else {
        return ConceptPhrase::empty();
    };
    let mut indices = Vec::new();
    collect_surface(s, head, true, &mut indices);
    indices.sort_unstable();
    indices.dedup();
    ConceptPhrase {
        head_lemma: tok.lemma.clone(),
        surface: join(s, &indices, |t| t.form.as_str()),
        adjectives: s.dependents_with(head, Relation::Amod).map(Token::lemma_lower).collect(),
        token_index: head,
        kind,
    }
}

fn collect_surface(s: &Sentence, idx: usize, top: bool, out: &mut Vec<usize>) {
    if out.contains(&idx) {
        return;
    }
    out.push(idx);
    for d in s.dependents(idx) {
        let full = d.deprel.to_ascii_lowercase();
        if full == "compound:prt" || full == "nmod:poss" {
            continue;
        }
        match d.base_deprel() {
            "compound" | "flat" | "fixed" | "goeswith" | "nmod" | "prep" | "pobj" => {
                collect_surface(s, d.index, false, out)
            }
            "case" | "amod" if !top => collect_surface(s, d.index, false, out),
            _ => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::parse_conllu;

    pub(crate) fn sentence(rows: &[(&str, &str, &str, &str, usize, &str)]) -> Sentence {
        let mut doc = String::new();
        for (i, (form, lemma, upos, xpos, head, rel)) in rows.iter().enumerate() {
            doc.push_str(&alloc::format!("{}\t{form}\t{lemma}\t{upos}\t{xpos}\t_\t{head}\t{rel}\t_\t_\n", i + 1));
        }
        parse_conllu(&doc).unwrap().remove(0)
    }

    fn summary(t: &SvoTriple) -> (String, String, Polarity, String) {
        (t.subject.surface.clone(), t.verb.surface.clone(), t.verb.polarity, t.object.surface.clone())
    }

    #[test]
    fn john_sees_the_yellow_lion() {
        let s = sentence(&[
            ("John", "John", "PROPN", "NNP", 2, "nsubj"),
            ("sees", "see", "VERB", "VBZ", 0, "root"),
            ("the", "the", "DET", "DT", 5, "det"),
            ("yellow", "yellow", "ADJ", "JJ", 5, "amod"),
            ("lion", "lion", "NOUN", "NN", 2, "dobj"),
        ]);
        let t = extract_triples(&s);
        assert_eq!(t.len(), 1);
        assert_eq!(summary(&t[0]), ("John".into(), "sees".into(), Polarity::Positive, "lion".into()));
        assert_eq!(t[0].object.adjectives, ["yellow"]);
        assert_eq!(t[0].subject.kind, ConceptKind::Subject);
        assert_eq!(t[0].object.kind, ConceptKind::Object);
        assert_eq!(t[0].verb.lemma, "see");
    }

    #[test]
    fn conjoined_verb_inherits_subject_and_gets_empty_object() {
        // "Malcolm set the bone down and looked around ."
        let s = sentence(&[
            ("Malcolm", "Malcolm", "PROPN", "NNP", 2, "nsubj"),
            ("set", "set", "VERB", "VBD", 0, "root"),
            ("the", "the", "DET", "DT", 4, "det"),
            ("bone", "bone", "NOUN", "NN", 2, "obj"),
            ("down", "down", "ADP", "RP", 2, "compound:prt"),
            ("and", "and", "CCONJ", "CC", 7, "cc"),
            ("looked", "look", "VERB", "VBD", 2, "conj"),
            ("around", "around", "ADP", "RP", 7, "compound:prt"),
            (".", ".", "PUNCT", ".", 2, "punct"),
        ]);
        let t = extract_triples(&s);
        assert_eq!(t.len(), 2);
        assert_eq!(summary(&t[0]), ("Malcolm".into(), "set down".into(), Polarity::Positive, "bone".into()));
        assert_eq!(summary(&t[1]), ("Malcolm".into(), "looked around".into(), Polarity::Positive, "".into()));
        assert!(t[1].object.is_empty_concept());
        assert_eq!(t[1].object.head_lemma, EMPTY_MARKER);
        assert_eq!(t[0].verb.lemma, "set down");
    }

    #[test]
    fn no_verbs_no_triples() {
        let s = sentence(&[("Hello", "hello", "INTJ", "UH", 0, "root"), ("!", "!", "PUNCT", ".", 1, "punct")]);
        assert!(extract_triples(&s).is_empty());
    }

    #[test]
    fn negated_xcomp_group() {
        // "Malcolm could not wait to taste bone"
        let s = sentence(&[
            ("Malcolm", "Malcolm", "PROPN", "NNP", 4, "nsubj"),
            ("could", "could", "AUX", "MD", 4, "aux"),
            ("not", "not", "PART", "RB", 4, "advmod"),
            ("wait", "wait", "VERB", "VB", 0, "root"),
            ("to", "to", "PART", "TO", 6, "mark"),
            ("taste", "taste", "VERB", "VB", 4, "xcomp"),
            ("bone", "bone", "NOUN", "NN", 6, "obj"),
        ]);
        let t = extract_triples(&s);
        assert_eq!(t.len(), 1);
        assert_eq!(
            summary(&t[0]),
            ("Malcolm".into(), "could not wait to taste".into(), Polarity::Negative, "bone".into())
        );
        assert_eq!(t[0].verb.lemma, "wait to taste");
    }

    #[test]
    fn did_not_go_is_negative() {
        let s = sentence(&[
            ("John", "John", "PROPN", "NNP", 4, "nsubj"),
            ("did", "do", "AUX", "VBD", 4, "aux"),
            ("not", "not", "RB", "RB", 4, "neg"),
            ("go", "go", "VERB", "VB", 0, "root"),
        ]);
        assert_eq!(detect_polarity(s.token(4).unwrap(), &s), Polarity::Negative);
        let sees = sentence(&[("John", "John", "PROPN", "NNP", 2, "nsubj"), ("sees", "see", "VERB", "VBZ", 0, "root")]);
        assert_eq!(detect_polarity(sees.token(2).unwrap(), &sees), Polarity::Positive);
    }

    #[test]
    fn negation_on_auxiliary() {
        // Stanford-style: neg attached under the auxiliary
        let s = sentence(&[
            ("John", "John", "PROPN", "NNP", 4, "nsubj"),
            ("does", "do", "AUX", "VBZ", 4, "aux"),
            ("n't", "not", "PART", "RB", 2, "neg"),
            ("sleep", "sleep", "VERB", "VB", 0, "root"),
        ]);
        assert_eq!(detect_polarity(s.token(4).unwrap(), &s), Polarity::Negative);
        assert_eq!(extract_triples(&s)[0].verb.surface, "does n't sleep");
    }

    #[test]
    fn prepositional_modifiers_fold_into_object() {
        // "Malcolm ran over to the other side of the garden"
        let s = sentence(&[
            ("Malcolm", "Malcolm", "PROPN", "NNP", 2, "nsubj"),
            ("ran", "run", "VERB", "VBD", 0, "root"),
            ("over", "over", "ADP", "RP", 2, "compound:prt"),
            ("to", "to", "ADP", "IN", 7, "case"),
            ("the", "the", "DET", "DT", 7, "det"),
            ("other", "other", "ADJ", "JJ", 7, "amod"),
            ("side", "side", "NOUN", "NN", 2, "obj"),
            ("of", "of", "ADP", "IN", 10, "case"),
            ("the", "the", "DET", "DT", 10, "det"),
            ("garden", "garden", "NOUN", "NN", 7, "nmod"),
        ]);
        let t = extract_triples(&s);
        assert_eq!(summary(&t[0]), ("Malcolm".into(), "ran over".into(), Polarity::Positive, "side of garden".into()));
        assert_eq!(t[0].object.adjectives, ["other"]);
    }

    #[test]
    fn coordination_expands() {
        // "John and Paul saw the lion and the tiger"
        let s = sentence(&[
            ("John", "John", "PROPN", "NNP", 4, "nsubj"),
            ("and", "and", "CCONJ", "CC", 3, "cc"),
            ("Paul", "Paul", "PROPN", "NNP", 1, "conj"),
            ("saw", "see", "VERB", "VBD", 0, "root"),
            ("the", "the", "DET", "DT", 6, "det"),
            ("lion", "lion", "NOUN", "NN", 4, "obj"),
            ("and", "and", "CCONJ", "CC", 9, "cc"),
            ("the", "the", "DET", "DT", 9, "det"),
            ("tiger", "tiger", "NOUN", "NN", 6, "conj"),
        ]);
        let pairs: Vec<(String, String)> =
            extract_triples(&s).iter().map(|t| (t.subject.surface.clone(), t.object.surface.clone())).collect();
        assert_eq!(
            pairs,
            [
                ("John".into(), "lion".into()),
                ("John".into(), "tiger".into()),
                ("Paul".into(), "lion".into()),
                ("Paul".into(), "tiger".into()),
            ]
        );
    }

    #[test]
    fn copular_adjective_becomes_predication() {
        // "The bone was big and it tasted delicious"
        let s = sentence(&[
            ("The", "the", "DET", "DT", 2, "det"),
            ("bone", "bone", "NOUN", "NN", 4, "nsubj"),
            ("was", "be", "AUX", "VBD", 4, "cop"),
            ("big", "big", "ADJ", "JJ", 0, "root"),
            ("and", "and", "CCONJ", "CC", 7, "cc"),
            ("bone", "bone", "NOUN", "NN", 7, "nsubj"),
            ("tasted", "taste", "VERB", "VBD", 4, "conj"),
            ("delicious", "delicious", "ADJ", "JJ", 7, "xcomp"),
        ]);
        let e = extract(&s);
        assert!(e.triples.is_empty());
        let preds: Vec<(String, Vec<String>)> =
            e.predications.iter().map(|p| (p.subject.surface.clone(), p.adjectives.clone())).collect();
        assert_eq!(
            preds,
            [("bone".into(), alloc::vec!["big".into()]), ("bone".into(), alloc::vec!["delicious".into()])]
        );
    }

    #[test]
    fn names_fold_and_possessives_drop() {
        // "President Washington crossed his river"
        let s = sentence(&[
            ("President", "President", "PROPN", "NNP", 2, "compound"),
            ("Washington", "Washington", "PROPN", "NNP", 3, "nsubj"),
            ("crossed", "cross", "VERB", "VBD", 0, "root"),
            ("his", "he", "PRON", "PRP$", 5, "nmod:poss"),
            ("river", "river", "NOUN", "NN", 3, "obj"),
        ]);
        let t = extract_triples(&s);
        assert_eq!(t[0].subject.surface, "President Washington");
        assert_eq!(t[0].subject.head_lemma, "Washington");
        assert_eq!(t[0].object.surface, "river");
    }

    #[test]
    fn clausal_complement_subject_stays_separate() {
        // "John said Mary left": two verbs, each with its own subject
        let s = sentence(&[
            ("John", "John", "PROPN", "NNP", 2, "nsubj"),
            ("said", "say", "VERB", "VBD", 0, "root"),
            ("Mary", "Mary", "PROPN", "NNP", 4, "nsubj"),
            ("left", "leave", "VERB", "VBD", 2, "ccomp"),
        ]);
        let t = extract_triples(&s);
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|t| t.object.is_empty_concept()));
    }
}
