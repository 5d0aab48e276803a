//! The adaptive mind-map graph.
//!
//! Concept nodes are joined by verb-labelled directed links. Re-reading the
//! same subject-verb-object structure reinforces its link additively; every
//! processed sentence decays short-term links multiplicatively, and links that
//! reach the promotion threshold move to long-term memory where they no longer
//! decay. Adjectives hang off their concept as sub-concept nodes.

mod dot;
mod view;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

pub use dot::export_dot;

use crate::extract::{ConceptPhrase, Polarity, Predication, SvoTriple, VerbLink};
use crate::thesaurus::{ActorId, Thesaurus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NodeKind {
    Actor,
    Concept,
    Subconcept,
    Empty,
}

/// How a sub-concept hangs off its parent.
///
/// Attributive adjectives ("the yellow lion") travel with their concept and
/// cost no hop in depth-bounded views; predicate adjectives ("the bone was
/// big") sit one hop away.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Attachment {
    Attributive,
    Predicative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: NodeId,
    pub label: String,
    pub kind: NodeKind,
    /// Actor whose sub-mind-map this node belongs to.
    pub owner_actor: Option<ActorId>,
    /// Set for actor nodes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actor: Option<ActorId>,
    /// Parent concept of a sub-concept, or the subject an empty node belongs to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<NodeId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attachment: Option<Attachment>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Layer {
    ShortTerm,
    LongTerm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub from: NodeId,
    pub to: NodeId,
    pub verb: VerbLink,
    pub weight: f64,
    pub occurrences: u32,
    pub layer: Layer,
    pub first_seen: usize,
    pub last_seen: usize,
}

impl Link {
    pub fn is_inhibitory(&self) -> bool {
        self.verb.polarity == Polarity::Negative
    }

    /// Re-occurred at least once.
    pub fn is_reinforced(&self) -> bool {
        self.occurrences >= 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MindMapConfig {
    /// Multiplicative decay per processed sentence, in (0, 1].
    pub decay: f64,
    /// Occurrence count at which a link moves to long-term memory, at least 1.
    pub promotion_threshold: u32,
    /// Short-term links lighter than this are pruned, at least 0.
    pub prune_threshold: f64,
}

impl Default for MindMapConfig {
    fn default() -> Self {
        Self { decay: 0.98, promotion_threshold: 3, prune_threshold: 0.05 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("decay factor must lie in (0, 1], got {0}")]
    Decay(String),
    #[error("promotion threshold must be at least 1")]
    Promotion,
    #[error("prune threshold must be non-negative, got {0}")]
    Prune(String),
}

impl MindMapConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.decay > 0.0 && self.decay <= 1.0) {
            return Err(ConfigError::Decay(alloc::format!("{}", self.decay)));
        }
        if self.promotion_threshold < 1 {
            return Err(ConfigError::Promotion);
        }
        if !(self.prune_threshold >= 0.0) {
            return Err(ConfigError::Prune(alloc::format!("{}", self.prune_threshold)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LookupError {
    #[error("no node {0:?}")]
    UnknownNode(NodeId),
    #[error("no actor named `{0}`")]
    UnknownActor(String),
}

/// Counters returned by [`MindMap::decay_step`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecayReport {
    pub pruned_links: usize,
    pub pruned_nodes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "MindMapRepr", into = "MindMapRepr")]
pub struct MindMap {
    config: MindMapConfig,
    nodes: BTreeMap<NodeId, Node>,
    /// In creation order.
    links: Vec<Link>,
    next_id: u32,
    actor_index: BTreeMap<ActorId, NodeId>,
    concept_index: BTreeMap<String, NodeId>,
    empty_index: BTreeMap<NodeId, NodeId>,
    sub_index: BTreeMap<(NodeId, String), NodeId>,
    link_index: BTreeMap<(NodeId, NodeId, String, Polarity), usize>,
}

#[derive(Serialize, Deserialize)]
struct MindMapRepr {
    config: MindMapConfig,
    next_id: u32,
    nodes: Vec<Node>,
    links: Vec<Link>,
}

impl From<MindMapRepr> for MindMap {
    fn from(r: MindMapRepr) -> Self {
        let mut m = MindMap::new(r.config);
        m.next_id = r.next_id;
        m.nodes = r.nodes.into_iter().map(|n| (n.id, n)).collect();
        m.links = r.links;
        m.reindex();
        m
    }
}

impl From<MindMap> for MindMapRepr {
    fn from(m: MindMap) -> Self {
        MindMapRepr { config: m.config, next_id: m.next_id, nodes: m.nodes.into_values().collect(), links: m.links }
    }
}

impl Default for MindMap {
    fn default() -> Self {
        Self::new(MindMapConfig::default())
    }
}

impl MindMap {
    pub fn new(config: MindMapConfig) -> Self {
        Self {
            config,
            nodes: BTreeMap::new(),
            links: Vec::new(),
            next_id: 0,
            actor_index: BTreeMap::new(),
            concept_index: BTreeMap::new(),
            empty_index: BTreeMap::new(),
            sub_index: BTreeMap::new(),
            link_index: BTreeMap::new(),
        }
    }

    pub fn config(&self) -> &MindMapConfig {
        &self.config
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Node> {
        self.nodes.values()
    }

    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.nodes.get(&id)
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn actor_node(&self, actor: ActorId) -> Option<NodeId> {
        self.actor_index.get(&actor).copied()
    }

    /// Actor or concept node with this label (case-insensitive).
    pub fn find_concept(&self, label: &str) -> Option<&Node> {
        let lower = label.to_lowercase();
        self.nodes
            .values()
            .find(|n| matches!(n.kind, NodeKind::Actor | NodeKind::Concept) && n.label.to_lowercase() == lower)
    }

    /// Sub-concepts of `parent` in creation order.
    pub fn subconcepts(&self, parent: NodeId) -> impl Iterator<Item = &Node> {
        self.nodes.values().filter(move |n| n.kind == NodeKind::Subconcept && n.parent == Some(parent))
    }

    /// The link for (from, to, verb lemma, polarity).
    pub fn link(&self, from: NodeId, to: NodeId, lemma: &str, polarity: Polarity) -> Option<&Link> {
        self.link_index.get(&(from, to, String::from(lemma), polarity)).map(|&i| &self.links[i])
    }

    fn alloc_node(&mut self, label: String, kind: NodeKind) -> NodeId {
        let id = NodeId(self.next_id);
        self.next_id += 1;
        self.nodes.insert(id, Node { id, label, kind, owner_actor: None, actor: None, parent: None, attachment: None });
        id
    }

    fn node_mut(&mut self, id: NodeId) -> &mut Node {
        self.nodes.get_mut(&id).expect("node ids handed out by this map")
    }

    /// Node for a concept mention: the actor node on a thesaurus hit, a concept node otherwise.
    fn concept_node(&mut self, phrase: &ConceptPhrase, thesaurus: &Thesaurus, owner: Option<ActorId>) -> NodeId {
        let actor = thesaurus.match_mention(&phrase.surface).or_else(|| thesaurus.match_mention(&phrase.head_lemma));
        let id = match actor {
            Some(actor) => match self.actor_index.get(&actor.id) {
                Some(&id) => id,
                None => {
                    let id = self.alloc_node(actor.canonical.clone(), NodeKind::Actor);
                    let n = self.node_mut(id);
                    n.actor = Some(actor.id);
                    n.owner_actor = Some(actor.id);
                    self.actor_index.insert(actor.id, id);
                    id
                }
            },
            None => {
                let label = if phrase.surface.is_empty() { phrase.head_lemma.clone() } else { phrase.surface.clone() };
                match self.concept_index.get(&label) {
                    Some(&id) => id,
                    None => {
                        let id = self.alloc_node(label.clone(), NodeKind::Concept);
                        self.node_mut(id).owner_actor = owner;
                        self.concept_index.insert(label, id);
                        id
                    }
                }
            }
        };
        for adj in &phrase.adjectives {
            self.attach(id, adj, Attachment::Attributive);
        }
        id
    }

    fn attach(&mut self, parent: NodeId, label: &str, attachment: Attachment) -> NodeId {
        let key = (parent, String::from(label));
        if let Some(&id) = self.sub_index.get(&key) {
            if attachment == Attachment::Attributive {
                self.node_mut(id).attachment = Some(Attachment::Attributive);
            }
            return id;
        }
        let owner = self.nodes.get(&parent).and_then(|p| p.owner_actor);
        let id = self.alloc_node(String::from(label), NodeKind::Subconcept);
        let n = self.node_mut(id);
        n.parent = Some(parent);
        n.attachment = Some(attachment);
        n.owner_actor = owner;
        self.sub_index.insert(key, id);
        id
    }

    fn empty_node(&mut self, subject: NodeId) -> NodeId {
        if let Some(&id) = self.empty_index.get(&subject) {
            return id;
        }
        let owner = self.nodes.get(&subject).and_then(|n| n.owner_actor);
        let id = self.alloc_node(String::new(), NodeKind::Empty);
        let n = self.node_mut(id);
        n.parent = Some(subject);
        n.owner_actor = owner;
        self.empty_index.insert(subject, id);
        id
    }

    /// Fold a triple into the map, creating or reinforcing its link. Returns the link's position.
    pub fn integrate(&mut self, triple: &SvoTriple, thesaurus: &Thesaurus) -> usize {
        let subject = self.concept_node(&triple.subject, thesaurus, None);
        let owner = self.nodes[&subject].owner_actor;
        let object = if triple.object.is_empty_concept() {
            self.empty_node(subject)
        } else {
            self.concept_node(&triple.object, thesaurus, owner)
        };
        let key = (subject, object, triple.verb.lemma.clone(), triple.verb.polarity);
        match self.link_index.get(&key) {
            Some(&i) => {
                let link = &mut self.links[i];
                link.weight += 1.0;
                link.occurrences += 1;
                link.last_seen = link.last_seen.max(triple.sentence_seq);
                i
            }
            None => {
                self.links.push(Link {
                    from: subject,
                    to: object,
                    verb: triple.verb.clone(),
                    weight: 1.0,
                    occurrences: 1,
                    layer: Layer::ShortTerm,
                    first_seen: triple.sentence_seq,
                    last_seen: triple.sentence_seq,
                });
                let i = self.links.len() - 1;
                self.link_index.insert(key, i);
                i
            }
        }
    }

    /// Attach predicate adjectives to the subject's node.
    pub fn integrate_predication(&mut self, p: &Predication, thesaurus: &Thesaurus) {
        let subject = self.concept_node(&p.subject, thesaurus, None);
        for adj in &p.adjectives {
            self.attach(subject, adj, Attachment::Predicative);
        }
    }

    /// Move every short-term link seen at least `promotion_threshold` times to long-term memory.
    pub fn promote(&mut self) -> usize {
        let theta = self.config.promotion_threshold;
        let mut n = 0;
        for l in self.links.iter_mut().filter(|l| l.layer == Layer::ShortTerm && l.occurrences >= theta) {
            l.layer = Layer::LongTerm;
            n += 1;
        }
        n
    }

    /// Decay short-term links once, pruning those that fall below the threshold
    /// together with the non-actor nodes they leave unconnected.
    pub fn decay_step(&mut self) -> DecayReport {
        let (lambda, eps) = (self.config.decay, self.config.prune_threshold);
        let mut touched = BTreeSet::new();
        let before = self.links.len();
        self.links.retain_mut(|l| {
            if l.layer == Layer::ShortTerm {
                l.weight *= lambda;
                if l.weight < eps {
                    touched.insert(l.from);
                    touched.insert(l.to);
                    return false;
                }
            }
            true
        });
        let pruned_links = before - self.links.len();
        if pruned_links == 0 {
            return DecayReport::default();
        }
        let connected: BTreeSet<NodeId> = self.links.iter().flat_map(|l| [l.from, l.to]).collect();
        let mut doomed: Vec<NodeId> = touched
            .into_iter()
            .filter(|id| !connected.contains(id))
            .filter(|id| self.nodes.get(id).is_some_and(|n| n.kind != NodeKind::Actor))
            .collect();
        let mut removed = BTreeSet::new();
        while let Some(id) = doomed.pop() {
            if !removed.insert(id) {
                continue;
            }
            doomed.extend(
                self.nodes
                    .values()
                    .filter(|n| n.parent == Some(id) && n.kind != NodeKind::Actor && !connected.contains(&n.id))
                    .map(|n| n.id),
            );
        }
        for id in &removed {
            self.nodes.remove(id);
        }
        self.reindex();
        DecayReport { pruned_links, pruned_nodes: removed.len() }
    }

    fn reindex(&mut self) {
        self.actor_index.clear();
        self.concept_index.clear();
        self.empty_index.clear();
        self.sub_index.clear();
        self.link_index.clear();
        for n in self.nodes.values() {
            match n.kind {
                NodeKind::Actor => {
                    if let Some(a) = n.actor {
                        self.actor_index.insert(a, n.id);
                    }
                }
                NodeKind::Concept => {
                    self.concept_index.insert(n.label.clone(), n.id);
                }
                NodeKind::Empty => {
                    if let Some(p) = n.parent {
                        self.empty_index.insert(p, n.id);
                    }
                }
                NodeKind::Subconcept => {
                    if let Some(p) = n.parent {
                        self.sub_index.insert((p, n.label.clone()), n.id);
                    }
                }
            }
        }
        for (i, l) in self.links.iter().enumerate() {
            self.link_index.insert((l.from, l.to, l.verb.lemma.clone(), l.verb.polarity), i);
        }
    }

    /// Copy restricted to `keep`, with every link among kept nodes.
    pub fn subgraph(&self, keep: &BTreeSet<NodeId>) -> MindMap {
        let mut m = MindMap::new(self.config);
        m.next_id = self.next_id;
        m.nodes = self.nodes.iter().filter(|(id, _)| keep.contains(id)).map(|(id, n)| (*id, n.clone())).collect();
        m.links = self.links.iter().filter(|l| keep.contains(&l.from) && keep.contains(&l.to)).cloned().collect();
        m.reindex();
        m
    }

    /// Build a map directly from nodes and links (test fixtures, loaders).
    pub fn from_parts(config: MindMapConfig, nodes: Vec<Node>, links: Vec<Link>) -> MindMap {
        let next_id = nodes.iter().map(|n| n.id.0 + 1).max().unwrap_or(0);
        MindMap::from(MindMapRepr { config, next_id, nodes, links })
    }
}
