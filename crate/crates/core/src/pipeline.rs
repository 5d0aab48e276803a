//! Per-sentence processing loop.
//!
//! Each sentence is pushed into the window, its pronouns are resolved and
//! substituted in place, triples and predications are extracted from the
//! substituted tree and folded into the map, then the map promotes and decays
//! once.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::extract::{extract, Predication, SvoTriple};
use crate::ingest::Sentence;
use crate::mindmap::{DecayReport, MindMap, MindMapConfig};
use crate::resolve::{substitute, ResolutionOutcome, ResolutionStatus, Resolver};
use crate::thesaurus::Thesaurus;
use crate::window::{WindowError, WindowState};

/// What happened while processing one sentence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceEvent {
    pub seq: usize,
    pub text: String,
    /// Forms after pronoun substitution.
    pub substituted: String,
    /// Sequence number of the sentence that fell out of the window, if any.
    pub evicted: Option<usize>,
    pub resolutions: Vec<ResolutionOutcome>,
    pub triples: Vec<SvoTriple>,
    pub predications: Vec<Predication>,
    pub promoted: usize,
    pub pruned_links: usize,
    pub pruned_nodes: usize,
}

#[derive(Debug, Clone)]
pub struct Engine {
    window: WindowState,
    resolver: Resolver,
    thesaurus: Thesaurus,
    map: MindMap,
}

impl Engine {
    /// Actors in `thesaurus` also feed the resolver's gender lexicon.
    pub fn new(
        mut resolver: Resolver,
        thesaurus: Thesaurus,
        config: MindMapConfig,
        window_capacity: usize,
    ) -> Result<Self, WindowError> {
        resolver.lexicon.add_actors(&thesaurus);
        Ok(Self { window: WindowState::new(window_capacity)?, resolver, thesaurus, map: MindMap::new(config) })
    }

    pub fn map(&self) -> &MindMap {
        &self.map
    }

    pub fn thesaurus(&self) -> &Thesaurus {
        &self.thesaurus
    }

    pub fn window(&self) -> &WindowState {
        &self.window
    }

    pub fn into_parts(self) -> (MindMap, Thesaurus) {
        (self.map, self.thesaurus)
    }

    pub fn process(&mut self, sentence: Sentence) -> Result<SentenceEvent, WindowError> {
        let seq = sentence.seq;
        let text = sentence.raw.clone();
        let evicted = self.window.push(sentence)?.map(|s| s.seq);
        let resolutions = self.resolver.resolve_sentence(seq, &self.window);
        let current = self.window.latest().expect("just pushed");
        let substituted = substitute(current, &resolutions);
        self.window.replace_latest(substituted.clone());

        let pleonastic: Vec<usize> = resolutions
            .iter()
            .filter(|o| o.status == ResolutionStatus::Pleonastic)
            .map(|o| o.occurrence.token_index)
            .collect();
        let mut extraction = extract(&substituted);
        extraction
            .triples
            .retain(|t| !pleonastic.contains(&t.subject.token_index) && !pleonastic.contains(&t.object.token_index));
        extraction.predications.retain(|p| !pleonastic.contains(&p.subject.token_index));

        for t in &extraction.triples {
            self.map.integrate(t, &self.thesaurus);
        }
        for p in &extraction.predications {
            self.map.integrate_predication(p, &self.thesaurus);
        }
        let promoted = self.map.promote();
        let DecayReport { pruned_links, pruned_nodes } = self.map.decay_step();

        Ok(SentenceEvent {
            seq,
            text,
            substituted: substituted.joined_forms(),
            evicted,
            resolutions,
            triples: extraction.triples,
            predications: extraction.predications,
            promoted,
            pruned_links,
            pruned_nodes,
        })
    }
}
