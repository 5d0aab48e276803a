//! On-disk formats: CoNLL-U input files, lexicon directories, the actor
//! registry and gold annotations.
//!
//! Registry lines are `canonical<TAB>gender[<TAB>alias|alias...]` with gender
//! one of `M`, `F`, `UNKNOWN`. Gold lines are
//! `seq<TAB>index<TAB>antecedent`, where the antecedent is `seq:index`,
//! `PLEONASTIC` or `NONE`. Both accept `#` comments and blank lines.

use std::fs;
use std::path::{Path, PathBuf};

use mindmap_core::ingest::{parse_conllu_from, Sentence};
use mindmap_core::resolve::{entries, GoldAntecedent, GoldEntry, Lexicon, PatternSet};
use mindmap_core::thesaurus::{Gender, Thesaurus};

use crate::error::AppError;

/// File names expected inside a lexicon directory.
pub const LEXICON_FILES: [&str; 4] = ["male_names.txt", "female_names.txt", "gendered_nouns.tsv", "animate.txt"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn at(path: &Path, e: impl std::fmt::Display) -> AppError {
    AppError::Input(format!("{}: {e}", path.display()))
}

pub fn read_text(path: &Path) -> Result<String, AppError> {
    fs::read_to_string(path).map_err(|e| AppError::io(path, e))
}

/// Parse CoNLL-U files as one stream; sentence numbers run on across files.
pub fn read_conllu_files(paths: &[PathBuf]) -> Result<Vec<Sentence>, AppError> {
    let mut out = Vec::new();
    for p in paths {
        let text = read_text(p)?;
        out.extend(parse_conllu_from(&text, out.len()).map_err(|e| at(p, e))?);
    }
    Ok(out)
}

pub fn parse_registry(text: &str) -> Result<Thesaurus, FormatError> {
    let mut t = Thesaurus::new();
    for (line, entry) in entries(text) {
        let cols: Vec<&str> = entry.split('\t').map(str::trim).collect();
        if cols.len() < 2 || cols.len() > 3 || cols[0].is_empty() {
            return Err(FormatError {
                line,
                message: format!("expected `canonical<TAB>gender[<TAB>aliases]`, got `{entry}`"),
            });
        }
        let gender = match cols[1].to_ascii_uppercase().as_str() {
            "M" => Gender::Male,
            "F" => Gender::Female,
            "UNKNOWN" | "U" => Gender::Unknown,
            other => return Err(FormatError { line, message: format!("unknown gender `{other}`") }),
        };
        let aliases: Vec<&str> =
            cols.get(2).map(|a| a.split('|').map(str::trim).filter(|a| !a.is_empty()).collect()).unwrap_or_default();
        t.register_actor(cols[0], aliases, gender).map_err(|c| FormatError {
            line,
            message: format!("alias `{}` of {} already belongs to {}", c.alias, c.actor, c.owner),
        })?;
    }
    Ok(t)
}

pub fn load_registry(path: &Path) -> Result<Thesaurus, AppError> {
    parse_registry(&read_text(path)?).map_err(|e| at(path, e))
}

/// Load the four word lists from a directory.
pub fn load_lexicon_dir(dir: &Path) -> Result<Lexicon, AppError> {
    let texts = LEXICON_FILES.iter().map(|f| read_text(&dir.join(f))).collect::<Result<Vec<_>, _>>()?;
    Lexicon::from_texts(&texts[0], &texts[1], &texts[2], &texts[3]).map_err(|e| at(&dir.join(LEXICON_FILES[2]), e))
}

pub fn load_patterns(path: &Path) -> Result<PatternSet, AppError> {
    PatternSet::parse(&read_text(path)?).map_err(|e| at(path, e))
}

pub fn parse_gold(text: &str) -> Result<Vec<GoldEntry>, FormatError> {
    let num = |s: &str, line: usize, what: &str| {
        s.trim().parse::<usize>().map_err(|_| FormatError { line, message: format!("bad {what} `{s}`") })
    };
    let mut out = Vec::new();
    for (line, entry) in entries(text) {
        let cols: Vec<&str> = entry.split('\t').collect();
        if cols.len() != 3 {
            return Err(FormatError {
                line,
                message: format!("expected `seq<TAB>index<TAB>antecedent`, got `{entry}`"),
            });
        }
        let gold = match cols[2].trim() {
            "PLEONASTIC" => GoldAntecedent::Pleonastic,
            "NONE" => GoldAntecedent::NoAntecedent,
            pos => {
                let (s, i) = pos.split_once(':').ok_or_else(|| FormatError {
                    line,
                    message: format!("antecedent `{pos}` is not seq:index, PLEONASTIC or NONE"),
                })?;
                GoldAntecedent::Token { sentence_seq: num(s, line, "sentence")?, token_index: num(i, line, "token")? }
            }
        };
        out.push(GoldEntry {
            sentence_seq: num(cols[0], line, "sentence")?,
            token_index: num(cols[1], line, "token")?,
            gold,
        });
    }
    Ok(out)
}

pub fn load_gold(path: &Path) -> Result<Vec<GoldEntry>, AppError> {
    parse_gold(&read_text(path)?).map_err(|e| at(path, e))
}
