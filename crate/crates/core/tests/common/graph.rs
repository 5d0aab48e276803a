//! Graph dynamics properties, shared by the property tests and the acceptance run.

use std::collections::{BTreeMap, BTreeSet};

use mindmap_core::extract::{ConceptKind, ConceptPhrase, Polarity, SvoTriple, VerbLink};
use mindmap_core::mindmap::{Layer, MindMap, MindMapConfig, NodeId, NodeKind};
use mindmap_core::thesaurus::{Gender, Thesaurus};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::floyd_warshall;

fn phrase(surface: &str, kind: ConceptKind) -> ConceptPhrase {
    ConceptPhrase { head_lemma: surface.into(), surface: surface.into(), adjectives: vec![], token_index: 1, kind }
}

pub fn triple(s: &str, v: &str, o: Option<&str>, polarity: Polarity, seq: usize) -> SvoTriple {
    SvoTriple {
        subject: phrase(s, ConceptKind::Subject),
        verb: VerbLink { lemma: v.into(), surface: v.into(), polarity },
        object: o.map_or_else(ConceptPhrase::empty, |o| phrase(o, ConceptKind::Object)),
        sentence_seq: seq,
    }
}

const WORDS: [&str; 8] = ["Ann", "Bob", "cat", "dog", "tree", "house", "ball", "river"];
const VERBS: [&str; 4] = ["see", "like", "chase", "find"];

fn actors() -> Thesaurus {
    let mut t = Thesaurus::new();
    t.register_actor("Ann", ["annie"], Gender::Female).unwrap();
    t.register_actor("Bob", ["bobby"], Gender::Male).unwrap();
    t
}

/// (subject, verb, object or none, negated)
pub type Item = (usize, usize, Option<usize>, bool);

pub fn stream() -> impl Strategy<Value = Vec<Item>> {
    prop::collection::vec((0..WORDS.len(), 0..VERBS.len(), prop::option::of(0..WORDS.len()), any::<bool>()), 1..40)
}

fn item_triple(seq: usize, &(s, v, o, neg): &Item) -> SvoTriple {
    let pol = if neg { Polarity::Negative } else { Polarity::Positive };
    triple(WORDS[s], VERBS[v], o.map(|o| WORDS[o]), pol, seq)
}

/// Without decay a link's weight is its occurrence count.
pub fn weight_equals_occurrences(items: &[Item], theta: u32) -> Result<(), TestCaseError> {
    let t = actors();
    let mut m = MindMap::new(MindMapConfig { decay: 1.0, promotion_threshold: theta, prune_threshold: 0.0 });
    for (seq, item) in items.iter().enumerate() {
        m.integrate(&item_triple(seq, item), &t);
        m.promote();
        m.decay_step();
    }
    let mut counts = BTreeMap::new();
    for item in items {
        *counts.entry(*item).or_insert(0u32) += 1;
    }
    prop_assert_eq!(m.link_count(), counts.len());
    for l in m.links() {
        prop_assert_eq!(l.weight, l.occurrences as f64);
    }
    let total: u32 = m.links().iter().map(|l| l.occurrences).sum();
    prop_assert_eq!(total as usize, items.len());
    Ok(())
}

/// The first step at which a fresh weight-1 link is pruned is ceil(ln eps / ln lambda).
/// Ratios within 1e-6 of an integer are skipped: there the float product can land on either side.
pub fn decay_crossing(lambda: f64, eps: f64) -> Result<(), TestCaseError> {
    let ratio = eps.ln() / lambda.ln();
    prop_assume!((ratio - ratio.round()).abs() > 1e-6);
    let expected = ratio.ceil() as usize;
    let mut m = MindMap::new(MindMapConfig { decay: lambda, promotion_threshold: u32::MAX, prune_threshold: eps });
    m.integrate(&triple("cat", "see", Some("dog"), Polarity::Positive, 0), &Thesaurus::new());
    let mut step = 0;
    while m.link_count() == 1 {
        m.decay_step();
        step += 1;
        prop_assert!(step <= expected + 1);
    }
    prop_assert_eq!(step, expected);
    Ok(())
}

/// A link moves to long-term memory on exactly the step its count reaches theta.
pub fn promotion_at_threshold(theta: u32, extra: u32) -> Result<(), TestCaseError> {
    let t = Thesaurus::new();
    let mut m = MindMap::new(MindMapConfig { decay: 0.99, promotion_threshold: theta, prune_threshold: 0.0 });
    for n in 1..=theta + extra {
        m.integrate(&triple("cat", "see", Some("dog"), Polarity::Positive, n as usize), &t);
        m.promote();
        let layer = m.links()[0].layer;
        prop_assert_eq!(layer == Layer::LongTerm, n >= theta, "after {} occurrences", n);
    }
    Ok(())
}

/// Decay and pruning never drop actor nodes, and never leave links dangling.
pub fn pruning_keeps_actors(items: &[Item], lambda: f64, eps: f64, theta: u32) -> Result<(), TestCaseError> {
    let t = actors();
    let mut m = MindMap::new(MindMapConfig { decay: lambda, promotion_threshold: theta, prune_threshold: eps });
    let mut seen_actors = BTreeSet::new();
    for (seq, item) in items.iter().enumerate() {
        m.integrate(&item_triple(seq, item), &t);
        seen_actors.extend(m.nodes().filter(|n| n.kind == NodeKind::Actor).map(|n| n.id));
        m.promote();
        m.decay_step();
        for a in &seen_actors {
            prop_assert!(m.node(*a).is_some_and(|n| n.kind == NodeKind::Actor));
        }
        for l in m.links() {
            prop_assert!(m.node(l.from).is_some() && m.node(l.to).is_some());
            if l.layer == Layer::ShortTerm {
                prop_assert!(l.weight >= eps);
            }
        }
    }
    Ok(())
}

/// Neighbourhood nodes and links against all-pairs distances.
pub fn neighborhood_matches_oracle(m: &MindMap, root: prop::sample::Index, depth: usize) -> Result<(), TestCaseError> {
    let ids: Vec<NodeId> = m.nodes().map(|n| n.id).collect();
    let root = *root.get(&ids);
    let d = floyd_warshall(m);
    let expected: BTreeSet<NodeId> =
        ids.iter().copied().filter(|id| d[root.0 as usize][id.0 as usize] <= depth).collect();
    prop_assert_eq!(m.neighborhood_nodes(root, depth).unwrap(), expected.clone());
    let sub = m.neighborhood(root, depth).unwrap();
    prop_assert_eq!(sub.nodes().map(|n| n.id).collect::<BTreeSet<_>>(), expected.clone());
    for l in m.links() {
        let inside = expected.contains(&l.from) && expected.contains(&l.to);
        prop_assert_eq!(sub.link(l.from, l.to, &l.verb.lemma, l.verb.polarity).is_some(), inside);
    }
    if depth > 0 {
        let smaller = m.neighborhood_nodes(root, depth - 1).unwrap();
        prop_assert!(smaller.is_subset(&expected));
    }
    Ok(())
}
