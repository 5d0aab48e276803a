use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::lexicon::{bundled, entries};
use crate::ingest::{Sentence, Token};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("pattern line {line}: {message}")]
pub struct PatternError {
    pub line: usize,
    pub message: String,
}

/// One `lemma/TAG` position of a pattern. `None` is the `*` wildcard.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternAtom {
    pub lemmas: Option<Vec<String>>,
    pub tags: Option<Vec<String>>,
    pub optional: bool,
}

impl PatternAtom {
    fn parse(atom: &str) -> Result<Self, String> {
        let (body, optional) = match atom.strip_suffix('?') {
            Some(b) => (b, true),
            None => (atom, false),
        };
        let (lemmas, tags) =
            body.rsplit_once('/').ok_or_else(|| alloc::format!("atom `{atom}` is not of the form lemma/TAG"))?;
        if lemmas.is_empty() || tags.is_empty() {
            return Err(alloc::format!("atom `{atom}` has an empty side"));
        }
        let alternatives = |side: &str, lower: bool| -> Option<Vec<String>> {
            (side != "*")
                .then(|| side.split('|').map(|x| if lower { x.to_lowercase() } else { x.to_string() }).collect())
        };
        Ok(PatternAtom { lemmas: alternatives(lemmas, true), tags: alternatives(tags, false), optional })
    }

    pub fn matches(&self, t: &Token) -> bool {
        let lemma_ok = self.lemmas.as_ref().is_none_or(|ls| {
            let lemma = t.lemma_lower();
            ls.iter().any(|l| *l == lemma)
        });
        let tag_ok =
            self.tags.as_ref().is_none_or(|ts| ts.iter().any(|tag| t.xpos.starts_with(tag.as_str()) || t.upos == *tag));
        lemma_ok && tag_ok
    }
}

impl fmt::Display for PatternAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |v: &Option<Vec<String>>| v.as_ref().map_or_else(|| "*".to_string(), |v| v.join("|"));
        write!(f, "{}/{}{}", side(&self.lemmas), side(&self.tags), if self.optional { "?" } else { "" })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PleonasticPattern {
    pub atoms: Vec<PatternAtom>,
    /// Line number in the source file.
    pub line: usize,
}

impl PleonasticPattern {
    pub fn parse(text: &str) -> Result<Self, String> {
        let atoms = text.split_whitespace().map(PatternAtom::parse).collect::<Result<Vec<_>, _>>()?;
        if atoms.iter().all(|a| a.optional) {
            return Err("pattern needs at least one required atom".to_string());
        }
        Ok(PleonasticPattern { atoms, line: 0 })
    }

    /// Does the token sequence starting at slice position `start` match?
    pub fn matches_at(&self, tokens: &[Token], start: usize) -> bool {
        fn go(atoms: &[PatternAtom], tokens: &[Token], pos: usize) -> bool {
            let Some((first, rest)) = atoms.split_first() else {
                return true;
            };
            if tokens.get(pos).is_some_and(|t| first.matches(t)) && go(rest, tokens, pos + 1) {
                return true;
            }
            first.optional && go(rest, tokens, pos)
        }
        go(&self.atoms, tokens, start)
    }
}

impl fmt::Display for PleonasticPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// The versioned pattern list used to recognise semantically empty `it`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PatternSet {
    pub version: Option<u32>,
    pub patterns: Vec<PleonasticPattern>,
}

impl PatternSet {
    pub fn bundled() -> Self {
        Self::parse(bundled::PLEONASTIC).expect("bundled pattern file is well-formed")
    }

    /// One pattern per line; a `# version: N` comment sets the version.
    pub fn parse(text: &str) -> Result<Self, PatternError> {
        let mut version = None;
        for line in text.lines() {
            if let Some(v) = line.trim().strip_prefix('#').and_then(|c| c.trim().strip_prefix("version:")) {
                version = v.trim().parse().ok();
                break;
            }
        }
        let mut patterns = Vec::new();
        for (line, entry) in entries(text) {
            let mut p = PleonasticPattern::parse(entry).map_err(|message| PatternError { line, message })?;
            p.line = line;
            patterns.push(p);
        }
        Ok(PatternSet { version, patterns })
    }

    /// Index of the first pattern matching at token `index` (1-based) of `s`.
    pub fn matching_pattern(&self, s: &Sentence, index: usize) -> Option<usize> {
        let start = index.checked_sub(1)?;
        self.patterns.iter().position(|p| p.matches_at(&s.tokens, start))
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}
