//! Incremental mind-map engine.
//!
//! Dependency-parsed sentences flow through a sliding [`window`], pronouns are
//! resolved against the buffered look-back ([`resolve`]), subject-verb-object
//! structures are pulled out of each sentence ([`extract`]) and folded into an
//! adaptive, actor-centric graph ([`mindmap`]) that can be queried with a small
//! SQL-like language ([`mindql`]).
//!
//! The crate is `no_std` and only needs `alloc`. Filesystem access, the CLI and
//! the on-disk formats live in the `mindmap` companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod extract;
pub mod ingest;
pub mod mindmap;
pub mod mindql;
pub mod pipeline;
pub mod resolve;
pub mod thesaurus;
pub mod window;

pub use extract::{extract, extract_triples, ConceptKind, ConceptPhrase, Polarity, SvoTriple, VerbLink};
pub use ingest::{normalize_deprel, parse_conllu, ParseError, Relation, Sentence, Token};
pub use mindmap::{MindMap, MindMapConfig, NodeId, NodeKind};
pub use mindql::{evaluate, parse_query, Query, ResultSet};
pub use pipeline::{Engine, SentenceEvent};
pub use resolve::{Lexicon, PatternSet, ResolutionOutcome, Resolver};
pub use thesaurus::{Actor, Gender, Thesaurus};
pub use window::WindowState;
