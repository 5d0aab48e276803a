//! Shared generators and oracles for the property tests.

#![allow(dead_code)]

use mindmap_core::extract::{Polarity, VerbLink};
use mindmap_core::mindmap::{Attachment, Layer, Link, MindMap, MindMapConfig, Node, NodeId, NodeKind};
use mindmap_core::thesaurus::{Actor, ActorId, Gender, Thesaurus};
use proptest::prelude::*;

/// Random map with sub-concepts of either attachment kind.
pub fn random_map() -> impl Strategy<Value = MindMap> {
    (2usize..50).prop_flat_map(|n| {
        let kinds = prop::collection::vec(0u8..4, n);
        let parents = prop::collection::vec(any::<prop::sample::Index>(), n);
        let links = prop::collection::vec((0..n, 0..n), 0..(n * 2));
        (kinds, parents, links).prop_map(move |(kinds, parents, links)| {
            let mut nodes: Vec<Node> = Vec::new();
            for (i, k) in kinds.iter().enumerate() {
                // the first node is always a concept so sub-concepts have somewhere to attach
                let parent_pool: Vec<u32> =
                    nodes.iter().filter(|n| n.kind != NodeKind::Subconcept).map(|n| n.id.0).collect();
                let (kind, parent, attachment) = match (*k, parent_pool.is_empty()) {
                    (0, false) => (
                        NodeKind::Subconcept,
                        Some(NodeId(*parents[i].get(&parent_pool))),
                        Some(Attachment::Attributive),
                    ),
                    (1, false) => (
                        NodeKind::Subconcept,
                        Some(NodeId(*parents[i].get(&parent_pool))),
                        Some(Attachment::Predicative),
                    ),
                    (2, _) if i > 0 => (NodeKind::Actor, None, None),
                    _ => (NodeKind::Concept, None, None),
                };
                nodes.push(Node {
                    id: NodeId(i as u32),
                    label: format!("n{i}"),
                    kind,
                    owner_actor: None,
                    actor: (kind == NodeKind::Actor).then_some(ActorId(i as u32)),
                    parent,
                    attachment,
                });
            }
            let concept_like: Vec<u32> =
                nodes.iter().filter(|n| n.kind != NodeKind::Subconcept).map(|n| n.id.0).collect();
            let links = links
                .into_iter()
                .map(|(a, b)| {
                    let from = concept_like[a % concept_like.len()];
                    let to = concept_like[b % concept_like.len()];
                    Link {
                        from: NodeId(from),
                        to: NodeId(to),
                        verb: VerbLink {
                            lemma: format!("v{a}{b}"),
                            surface: format!("v{a}{b}"),
                            polarity: Polarity::Positive,
                        },
                        weight: 1.0,
                        occurrences: 1,
                        layer: Layer::ShortTerm,
                        first_seen: 0,
                        last_seen: 0,
                    }
                })
                .collect();
            MindMap::from_parts(MindMapConfig::default(), nodes, links)
        })
    })
}

/// All-pairs hop distances by Floyd-Warshall over the undirected view.
pub fn floyd_warshall(m: &MindMap) -> Vec<Vec<usize>> {
    const INF: usize = usize::MAX / 4;
    let n = m.nodes().map(|n| n.id.0 as usize + 1).max().unwrap_or(0);
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    let mut relax = |a: usize, b: usize, w: usize| {
        d[a][b] = d[a][b].min(w);
        d[b][a] = d[b][a].min(w);
    };
    for l in m.links() {
        relax(l.from.0 as usize, l.to.0 as usize, 1);
    }
    for node in m.nodes() {
        if let Some(p) = node.parent {
            let w = if node.attachment == Some(Attachment::Attributive) { 0 } else { 1 };
            relax(node.id.0 as usize, p.0 as usize, w);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Thesaurus whose actor ids match the actor nodes of a [`random_map`], each with alias `alias<i>`.
pub fn thesaurus_for(m: &MindMap) -> Thesaurus {
    let actors: Vec<Actor> = m
        .nodes()
        .filter_map(|n| {
            n.actor.map(|id| Actor {
                id,
                canonical: n.label.clone(),
                aliases: vec![format!("alias{}", n.id.0)],
                gender: Gender::Unknown,
            })
        })
        .collect();
    Thesaurus::from(actors)
}

pub mod graph;
pub mod query;
