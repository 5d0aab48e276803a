use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use super::{Attachment, LookupError, MindMap, NodeId, NodeKind};

impl MindMap {
    /// Undirected adjacency with hop costs: links and predicative attachments
    /// cost one hop, attributive attachments none.
    pub fn hop_edges(&self) -> BTreeMap<NodeId, Vec<(NodeId, usize)>> {
        let mut adj: BTreeMap<NodeId, Vec<(NodeId, usize)>> = self.nodes.keys().map(|&k| (k, Vec::new())).collect();
        let mut add = |a: NodeId, b: NodeId, w: usize| {
            adj.entry(a).or_default().push((b, w));
            adj.entry(b).or_default().push((a, w));
        };
        for l in &self.links {
            add(l.from, l.to, 1);
        }
        for n in self.nodes.values().filter(|n| n.kind == NodeKind::Subconcept) {
            if let Some(p) = n.parent.filter(|p| self.nodes.contains_key(p)) {
                add(n.id, p, if n.attachment == Some(Attachment::Attributive) { 0 } else { 1 });
            }
        }
        adj
    }

    /// Hop distances from `root`, explored up to `max`.
    pub fn distances(&self, root: NodeId, max: usize) -> BTreeMap<NodeId, usize> {
        let adj = self.hop_edges();
        let mut dist = BTreeMap::new();
        let mut queue = VecDeque::new();
        dist.insert(root, 0usize);
        queue.push_back(root);
        // 0-1 BFS: zero-cost edges go to the front
        while let Some(u) = queue.pop_front() {
            let du = dist[&u];
            for &(v, w) in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                let dv = du + w;
                if dv > max {
                    continue;
                }
                if dist.get(&v).is_none_or(|&old| dv < old) {
                    dist.insert(v, dv);
                    if w == 0 {
                        queue.push_front(v);
                    } else {
                        queue.push_back(v);
                    }
                }
            }
        }
        dist
    }

    /// Node ids within `depth` hops of `root`.
    pub fn neighborhood_nodes(&self, root: NodeId, depth: usize) -> Result<BTreeSet<NodeId>, LookupError> {
        if !self.nodes.contains_key(&root) {
            return Err(LookupError::UnknownNode(root));
        }
        Ok(self.distances(root, depth).into_keys().collect())
    }

    /// The sub-mind-map within `depth` hops of `root`, with all links among its nodes.
    pub fn neighborhood(&self, root: NodeId, depth: usize) -> Result<MindMap, LookupError> {
        Ok(self.subgraph(&self.neighborhood_nodes(root, depth)?))
    }

    /// Actor node by canonical name or alias.
    pub fn actor_by_name(&self, name: &str, thesaurus: &crate::thesaurus::Thesaurus) -> Result<NodeId, LookupError> {
        thesaurus
            .match_mention(name)
            .and_then(|a| self.actor_node(a.id))
            .ok_or_else(|| LookupError::UnknownActor(String::from(name)))
    }

    /// One plain sentence per outgoing link of the actor node, oldest first.
    pub fn summarize_actor(&self, actor: NodeId) -> Result<Vec<String>, LookupError> {
        let node =
            self.nodes.get(&actor).filter(|n| n.kind == NodeKind::Actor).ok_or(LookupError::UnknownNode(actor))?;
        let mut links: Vec<(usize, &super::Link)> =
            self.links.iter().enumerate().filter(|(_, l)| l.from == actor).collect();
        links.sort_by_key(|(i, l)| (l.first_seen, *i));
        let mut out = Vec::new();
        for (_, l) in links {
            let Some(obj) = self.nodes.get(&l.to) else { continue };
            let mut line = alloc::format!("{} {}", node.label, l.verb.surface);
            match obj.kind {
                NodeKind::Empty => {}
                NodeKind::Actor => {
                    line.push(' ');
                    line.push_str(&obj.label);
                }
                _ => {
                    line.push_str(" the");
                    for adj in self.subconcepts(obj.id).filter(|s| s.attachment == Some(Attachment::Attributive)) {
                        line.push(' ');
                        line.push_str(&adj.label);
                    }
                    line.push(' ');
                    line.push_str(&obj.label);
                }
            }
            out.push(line);
        }
        Ok(out)
    }
}
