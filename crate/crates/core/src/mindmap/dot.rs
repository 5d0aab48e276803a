//! Graphviz export.
//!
//! Actors are double circles, concepts boxes, sub-concepts diamonds and empty
//! objects bare points. Inhibitory links get a `tee` arrowhead and a dashed
//! line; links that re-occurred are drawn bold. Output is sorted so identical
//! maps always produce identical bytes.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::{MindMap, NodeId, NodeKind};

fn is_plain_id(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else { return false };
    (first.is_ascii_alphabetic() || first == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(s.to_ascii_lowercase().as_str(), "node" | "edge" | "graph" | "digraph" | "subgraph" | "strict")
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn dot_id(s: &str) -> String {
    if is_plain_id(s) {
        String::from(s)
    } else {
        quote(s)
    }
}

/// Stable textual ids: actor and concept labels are unique already; a
/// sub-concept keeps its bare label unless another node shares it.
fn node_ids(map: &MindMap) -> BTreeMap<NodeId, String> {
    let mut label_count: BTreeMap<&str, usize> = BTreeMap::new();
    for n in map.nodes() {
        if n.kind != NodeKind::Empty {
            *label_count.entry(n.label.as_str()).or_default() += 1;
        }
    }
    let parent_label = |id: Option<NodeId>| id.and_then(|p| map.node(p)).map_or("", |p| p.label.as_str());
    map.nodes()
        .map(|n| {
            let id = match n.kind {
                NodeKind::Actor | NodeKind::Concept => n.label.clone(),
                NodeKind::Empty => alloc::format!("empty:{}", parent_label(n.parent)),
                NodeKind::Subconcept if label_count[n.label.as_str()] == 1 => n.label.clone(),
                NodeKind::Subconcept => alloc::format!("{}/{}", parent_label(n.parent), n.label),
            };
            (n.id, id)
        })
        .collect()
}

/// Render a map (or any sub-map) as a Graphviz digraph.
pub fn export_dot(map: &MindMap) -> String {
    let ids = node_ids(map);
    let mut nodes: Vec<_> = map.nodes().collect();
    nodes.sort_by(|a, b| (&a.label, a.kind, &ids[&a.id]).cmp(&(&b.label, b.kind, &ids[&b.id])));

    let mut out = String::from("digraph mindmap {\n");
    for n in &nodes {
        let id = dot_id(&ids[&n.id]);
        let _ = match n.kind {
            NodeKind::Actor => writeln!(out, "  {id} [shape=doublecircle];"),
            NodeKind::Concept => writeln!(out, "  {id} [shape=box];"),
            NodeKind::Subconcept if ids[&n.id] == n.label => writeln!(out, "  {id} [shape=diamond];"),
            NodeKind::Subconcept => writeln!(out, "  {id} [label={}, shape=diamond];", quote(&n.label)),
            NodeKind::Empty => writeln!(out, "  {id} [label=\"\", shape=point];"),
        };
    }
    for n in nodes.iter().filter(|n| n.kind == NodeKind::Subconcept) {
        if let Some(parent) = n.parent.and_then(|p| ids.get(&p)) {
            let _ = writeln!(out, "  {} -> {} [arrowhead=none, style=dotted];", dot_id(&ids[&n.id]), dot_id(parent));
        }
    }

    let mut edges: Vec<(String, String, &str, bool, bool)> = map
        .links()
        .iter()
        .filter(|l| ids.contains_key(&l.from) && ids.contains_key(&l.to))
        .map(|l| {
            (dot_id(&ids[&l.from]), dot_id(&ids[&l.to]), l.verb.surface.as_str(), l.is_inhibitory(), l.is_reinforced())
        })
        .collect();
    edges.sort();
    for (from, to, label, inhibitory, reinforced) in edges {
        let mut attrs = alloc::format!("label={}", quote(label));
        match (inhibitory, reinforced) {
            (true, true) => attrs.push_str(", arrowhead=tee, style=\"dashed,bold\""),
            (true, false) => attrs.push_str(", arrowhead=tee, style=dashed"),
            (false, true) => attrs.push_str(", style=bold"),
            (false, false) => {}
        }
        let _ = writeln!(out, "  {from} -> {to} [{attrs}];");
    }
    out.push_str("}\n");
    out
}
