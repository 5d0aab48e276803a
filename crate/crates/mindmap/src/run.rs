//! Wiring a [`Config`] into an [`Engine`] and streaming input through it.

use std::path::PathBuf;

use mindmap_core::ingest::Sentence;
use mindmap_core::pipeline::{Engine, SentenceEvent};
use mindmap_core::resolve::{Lexicon, PatternSet, Resolver};
use mindmap_core::thesaurus::Thesaurus;

use crate::config::Config;
use crate::error::AppError;
use crate::formats;
use crate::state::StateDump;

pub fn build_engine(cfg: &Config) -> Result<Engine, AppError> {
    let lexicon = match &cfg.lexicon {
        Some(dir) => formats::load_lexicon_dir(dir)?,
        None => Lexicon::bundled(),
    };
    let patterns = match &cfg.patterns {
        Some(p) => formats::load_patterns(p)?,
        None => PatternSet::bundled(),
    };
    let thesaurus = match &cfg.actors {
        Some(p) => formats::load_registry(p)?,
        None => Thesaurus::new(),
    };
    Engine::new(Resolver::new(lexicon, patterns), thesaurus, cfg.mindmap, cfg.window)
        .map_err(|e| AppError::Config(e.to_string()))
}

/// Push every sentence through the engine, collecting one event per sentence.
pub fn stream(engine: &mut Engine, sentences: Vec<Sentence>) -> Result<Vec<SentenceEvent>, AppError> {
    sentences.into_iter().map(|s| engine.process(s).map_err(|e| AppError::Input(e.to_string()))).collect()
}

/// Build the engine and stream the configured inputs (or `inputs`, when non-empty).
pub fn run(cfg: &Config, inputs: &[PathBuf]) -> Result<(Engine, Vec<SentenceEvent>), AppError> {
    let paths = if inputs.is_empty() { &cfg.inputs[..] } else { inputs };
    let sentences = formats::read_conllu_files(paths)?;
    let mut engine = build_engine(cfg)?;
    let events = stream(&mut engine, sentences)?;
    Ok((engine, events))
}

/// One JSON object per line.
pub fn event_log(events: &[SentenceEvent]) -> String {
    let mut out = String::new();
    for e in events {
        out.push_str(&serde_json::to_string(e).expect("events are always serializable"));
        out.push('\n');
    }
    out
}

pub fn snapshot(engine: &Engine) -> StateDump {
    StateDump::new(engine.map().clone(), engine.thesaurus().clone(), engine.window().capacity())
}
