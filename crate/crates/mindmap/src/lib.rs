//! Command-line driver for the mind-map engine.
//!
//! Reads CoNLL-U files, actor registries, lexicon directories and gold
//! annotations from disk, streams sentences through
//! [`mindmap_core::pipeline::Engine`], and exposes the result through a
//! JSON state dump, Graphviz export, pronoun scoring and a MindQL REPL.

pub mod cli;
pub mod config;
pub mod error;
pub mod formats;
pub mod render;
pub mod repl;
pub mod run;
pub mod state;

pub use error::AppError;
