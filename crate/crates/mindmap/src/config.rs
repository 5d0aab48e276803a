//! Run configuration: an optional TOML file overridden by command-line flags.
//!
//! ```toml
//! window = 5
//! decay = 0.98
//! promotion = 3
//! prune = 0.05
//! actors = "actors.tsv"
//! lexicon = "lexicon/"
//! patterns = "pleonastic.txt"
//! inputs = ["story.conllu"]
//! ```
//!
//! Relative paths in the file are taken relative to the file's directory.

use std::path::{Path, PathBuf};

use mindmap_core::mindmap::MindMapConfig;
use mindmap_core::window::DEFAULT_CAPACITY;
use serde::Deserialize;

use crate::error::AppError;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub window: Option<usize>,
    pub decay: Option<f64>,
    pub promotion: Option<u32>,
    pub prune: Option<f64>,
    pub actors: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub patterns: Option<PathBuf>,
    #[serde(default)]
    pub inputs: Vec<PathBuf>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, AppError> {
        toml::from_str(text).map_err(|e| AppError::Config(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, AppError> {
        let text = std::fs::read_to_string(path).map_err(|e| AppError::Config(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text).map_err(|e| AppError::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        let rebase = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        cfg.actors.as_mut().map(rebase);
        cfg.lexicon.as_mut().map(rebase);
        cfg.patterns.as_mut().map(rebase);
        cfg.inputs.iter_mut().for_each(rebase);
        Ok(cfg)
    }
}

/// Command-line values; `None` leaves the file value (or the default) in place.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub window: Option<usize>,
    pub decay: Option<f64>,
    pub promotion: Option<u32>,
    pub prune: Option<f64>,
    pub actors: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub patterns: Option<PathBuf>,
    pub inputs: Vec<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub window: usize,
    pub mindmap: MindMapConfig,
    pub actors: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub patterns: Option<PathBuf>,
    pub inputs: Vec<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            window: DEFAULT_CAPACITY,
            mindmap: MindMapConfig::default(),
            actors: None,
            lexicon: None,
            patterns: None,
            inputs: Vec::new(),
        }
    }
}

impl Config {
    /// Flags over file over defaults, then range checks.
    pub fn resolve(file: FileConfig, flags: Overrides) -> Result<Self, AppError> {
        let d = Config::default();
        let cfg = Config {
            window: flags.window.or(file.window).unwrap_or(d.window),
            mindmap: MindMapConfig {
                decay: flags.decay.or(file.decay).unwrap_or(d.mindmap.decay),
                promotion_threshold: flags.promotion.or(file.promotion).unwrap_or(d.mindmap.promotion_threshold),
                prune_threshold: flags.prune.or(file.prune).unwrap_or(d.mindmap.prune_threshold),
            },
            actors: flags.actors.or(file.actors),
            lexicon: flags.lexicon.or(file.lexicon),
            patterns: flags.patterns.or(file.patterns),
            inputs: if flags.inputs.is_empty() { file.inputs } else { flags.inputs },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), AppError> {
        if self.window < 1 {
            return Err(AppError::Config("window capacity must be at least 1".into()));
        }
        self.mindmap.validate().map_err(|e| AppError::Config(e.to_string()))
    }
}
