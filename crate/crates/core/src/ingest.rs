//! CoNLL-U reader and the token/sentence model.
//!
//! Only the columns the engine needs are kept: ID, FORM, LEMMA, UPOS, XPOS,
//! HEAD and DEPREL. Multiword-token ranges (`1-2`) and empty nodes (`1.1`) are
//! skipped. Both Universal Dependencies and Stanford-style relation labels are
//! accepted; [`normalize_deprel`] folds them onto one canonical set.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

/// One word of a dependency-parsed sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    /// 1-based position in the sentence.
    pub index: usize,
    pub form: String,
    pub lemma: String,
    /// Coarse (universal) POS tag.
    pub upos: String,
    /// Language-specific tag (Penn Treebank for English corpora), `_` when absent.
    pub xpos: String,
    /// Index of the governing token, 0 for the root.
    pub head: usize,
    pub deprel: String,
}

impl Token {
    pub fn relation(&self) -> Relation {
        normalize_deprel(&self.deprel)
    }

    /// The relation label lowercased, without its `:subtype`.
    pub fn base_deprel(&self) -> &str {
        self.deprel.split(':').next().unwrap_or("")
    }

    pub fn lemma_lower(&self) -> String {
        self.lemma.to_lowercase()
    }

    pub fn is_root(&self) -> bool {
        self.head == 0
    }

    pub fn is_verb(&self) -> bool {
        self.upos == "VERB" || (self.upos == "_" && self.xpos.starts_with("VB"))
    }

    pub fn is_noun(&self) -> bool {
        matches!(self.upos.as_str(), "NOUN" | "PROPN") || (self.upos == "_" && self.xpos.starts_with("NN"))
    }

    pub fn is_proper_noun(&self) -> bool {
        self.upos == "PROPN" || self.xpos.starts_with("NNP")
    }

    pub fn is_adjective(&self) -> bool {
        self.upos == "ADJ" || (self.upos == "_" && self.xpos.starts_with("JJ"))
    }

    pub fn is_pronoun(&self) -> bool {
        self.upos == "PRON" || self.xpos.starts_with("PRP")
    }

    /// Plurality comes from the fine-grained tag only.
    pub fn is_plural_noun(&self) -> bool {
        self.is_noun() && matches!(self.xpos.as_str(), "NNS" | "NNPS")
    }
}

/// A parsed sentence with its position in the stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    /// Global 0-based sentence number in stream order.
    pub seq: usize,
    pub tokens: Vec<Token>,
    pub raw: String,
}

impl Sentence {
    /// Token by 1-based index.
    pub fn token(&self, index: usize) -> Option<&Token> {
        index.checked_sub(1).and_then(|i| self.tokens.get(i))
    }

    pub fn head_of(&self, token: &Token) -> Option<&Token> {
        self.token(token.head)
    }

    /// Direct dependents of `index` in token order.
    pub fn dependents(&self, index: usize) -> impl Iterator<Item = &Token> + '_ {
        self.tokens.iter().filter(move |t| t.head == index)
    }

    pub fn dependents_with(&self, index: usize, rel: Relation) -> impl Iterator<Item = &Token> + '_ {
        self.dependents(index).filter(move |t| t.relation() == rel)
    }

    pub fn has_dependent(&self, index: usize, rel: Relation) -> bool {
        self.dependents_with(index, rel).next().is_some()
    }

    /// Reassemble the text from token forms.
    pub fn joined_forms(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&t.form);
        }
        out
    }

    /// Serialize the kept columns back into a CoNLL-U block (with trailing blank line).
    pub fn to_conllu(&self) -> String {
        let mut out = String::new();
        out.push_str("# text = ");
        out.push_str(&self.raw);
        out.push('\n');
        for t in &self.tokens {
            let line = alloc::format!(
                "{}\t{}\t{}\t{}\t{}\t_\t{}\t{}\t_\t_\n",
                t.index,
                t.form,
                t.lemma,
                t.upos,
                t.xpos,
                t.head,
                t.deprel
            );
            out.push_str(&line);
        }
        out.push('\n');
        out
    }
}

/// Canonical relation classes shared by the UD and Stanford label families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    Subj,
    Obj,
    Amod,
    Det,
    Neg,
    /// `conj`: a coordinated conjunct.
    Conj,
    /// `cc`: the coordinating word itself.
    Cc,
    Other,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::Subj => "SUBJ",
            Relation::Obj => "OBJ",
            Relation::Amod => "AMOD",
            Relation::Det => "DET",
            Relation::Neg => "NEG",
            Relation::Conj => "CONJ",
            Relation::Cc => "CC",
            Relation::Other => "OTHER",
        };
        f.write_str(s)
    }
}

/// Map a raw dependency label onto the canonical set. Total: unknown labels are `Other`.
pub fn normalize_deprel(label: &str) -> Relation {
    match label.to_ascii_lowercase().as_str() {
        "nsubj" | "nsubjpass" | "nsubj:pass" => Relation::Subj,
        "dobj" | "obj" => Relation::Obj,
        "amod" => Relation::Amod,
        "det" => Relation::Det,
        "neg" => Relation::Neg,
        "conj" => Relation::Conj,
        "cc" => Relation::Cc,
        _ => Relation::Other,
    }
}

/// Failure while reading CoNLL-U input; `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("expected 10 tab-separated columns, found {0}")]
    ColumnCount(usize),
    #[error("non-numeric ID `{0}`")]
    BadId(String),
    #[error("non-numeric HEAD `{0}`")]
    BadHead(String),
    #[error("token IDs must run 1..n without gaps, found {found} where {expected} was expected")]
    NonContiguous { expected: usize, found: usize },
    #[error("head {head} of token {index} is outside the sentence (1..{len})")]
    HeadOutOfRange { index: usize, head: usize, len: usize },
    #[error("token {0} is its own head")]
    SelfHead(usize),
    #[error("empty FORM or LEMMA")]
    EmptyField,
    #[error("sentence has no root token")]
    NoRoot,
}

struct Block {
    start_line: usize,
    text: Option<String>,
    tokens: Vec<(usize, Token)>,
}

/// Read every sentence block of a CoNLL-U document. `seq` numbers start at 0.
pub fn parse_conllu(input: &str) -> Result<Vec<Sentence>, ParseError> {
    parse_conllu_from(input, 0)
}

/// Like [`parse_conllu`], numbering sentences from `first_seq` (for multi-file streams).
pub fn parse_conllu_from(input: &str, first_seq: usize) -> Result<Vec<Sentence>, ParseError> {
    let mut sentences = Vec::new();
    let mut block: Option<Block> = None;

    for (n, raw_line) in input.split('\n').enumerate() {
        let line_no = n + 1;
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);

        if line.trim().is_empty() {
            if let Some(b) = block.take() {
                finish_block(b, first_seq + sentences.len()).map(|s| sentences.extend(s))?;
            }
            continue;
        }

        let b = block.get_or_insert_with(|| Block { start_line: line_no, text: None, tokens: Vec::new() });

        if let Some(comment) = line.strip_prefix('#') {
            if let Some(text) = comment.trim_start().strip_prefix("text =") {
                b.text = Some(text.trim().to_string());
            }
            continue;
        }

        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(ParseError { line: line_no, kind: ParseErrorKind::ColumnCount(cols.len()) });
        }
        let id = cols[0];
        if id.contains('-') || id.contains('.') {
            // multiword range or empty node
            let valid = id.split(['-', '.']).all(|p| !p.is_empty() && p.bytes().all(|c| c.is_ascii_digit()));
            if !valid {
                return Err(ParseError { line: line_no, kind: ParseErrorKind::BadId(id.to_string()) });
            }
            continue;
        }
        let index: usize =
            id.parse().map_err(|_| ParseError { line: line_no, kind: ParseErrorKind::BadId(id.to_string()) })?;
        let head: usize = cols[6]
            .parse()
            .map_err(|_| ParseError { line: line_no, kind: ParseErrorKind::BadHead(cols[6].to_string()) })?;
        let form = cols[1];
        if form.is_empty() || cols[2].is_empty() {
            return Err(ParseError { line: line_no, kind: ParseErrorKind::EmptyField });
        }
        // corpora without lemmas fall back to the lowercased form
        let lemma = if cols[2] == "_" && form != "_" { form.to_lowercase() } else { cols[2].to_string() };

        b.tokens.push((
            line_no,
            Token {
                index,
                form: form.to_string(),
                lemma,
                upos: cols[3].to_string(),
                xpos: cols[4].to_string(),
                head,
                deprel: cols[7].to_string(),
            },
        ));
    }
    if let Some(b) = block.take() {
        finish_block(b, first_seq + sentences.len()).map(|s| sentences.extend(s))?;
    }
    Ok(sentences)
}

// A comment-only block yields no sentence.
fn finish_block(block: Block, seq: usize) -> Result<Option<Sentence>, ParseError> {
    if block.tokens.is_empty() {
        return Ok(None);
    }
    let len = block.tokens.len();
    let mut roots = 0;
    for (i, (line, t)) in block.tokens.iter().enumerate() {
        let line = *line;
        if t.index != i + 1 {
            return Err(ParseError { line, kind: ParseErrorKind::NonContiguous { expected: i + 1, found: t.index } });
        }
        if t.head > len {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::HeadOutOfRange { index: t.index, head: t.head, len },
            });
        }
        if t.head == t.index {
            return Err(ParseError { line, kind: ParseErrorKind::SelfHead(t.index) });
        }
        if t.head == 0 {
            roots += 1;
        }
    }
    if roots == 0 {
        return Err(ParseError { line: block.start_line, kind: ParseErrorKind::NoRoot });
    }
    let tokens: Vec<Token> = block.tokens.into_iter().map(|(_, t)| t).collect();
    let mut sentence = Sentence { seq, tokens, raw: String::new() };
    sentence.raw = block.text.unwrap_or_else(|| sentence.joined_forms());
    Ok(Some(sentence))
}
