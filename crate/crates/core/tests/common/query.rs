//! MindQL generators, the brute-force scope oracle and the query properties.

use std::collections::BTreeSet;

use mindmap_core::mindmap::{MindMap, NodeId, NodeKind};
use mindmap_core::mindql::{evaluate, parse_query, Association, Condition, Field, Projection, Query, ResultSet};
use mindmap_core::thesaurus::Thesaurus;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::{floyd_warshall, random_map, thesaurus_for};

const RESERVED: [&str; 6] = ["select", "from", "with", "depth", "where", "and"];

pub fn projection() -> impl Strategy<Value = Projection> {
    prop_oneof![
        Just(Projection::Concepts),
        Just(Projection::Subconcepts),
        Just(Projection::Associations),
        Just(Projection::Name)
    ]
}

pub fn source() -> impl Strategy<Value = String> {
    "[a-zA-Z_][a-zA-Z0-9_-]{0,10}".prop_filter("reserved word", |s| !RESERVED.iter().any(|r| s.eq_ignore_ascii_case(r)))
}

pub fn condition_value() -> impl Strategy<Value = String> {
    prop_oneof![any::<String>(), "[ a-z\"\\\\]{0,12}"]
}

pub fn any_query() -> impl Strategy<Value = Query> {
    (
        prop::collection::vec(projection(), 1..5),
        prop::collection::vec(source(), 1..4),
        prop::option::of(1u32..1000),
        prop::collection::vec(
            (prop_oneof![Just(Field::Concept), Just(Field::Name)], condition_value())
                .prop_map(|(field, value)| Condition { field, value }),
            0..4,
        ),
    )
        .prop_map(|(projections, sources, depth, conditions)| Query { projections, sources, depth, conditions })
}

/// Same query with keyword case and spacing scrambled.
pub fn noisy(q: &Query, upper: bool, gap: &str) -> String {
    let kw = |k: &str| if upper { k.to_uppercase() } else { k.to_string() };
    let mut out = format!("{gap}{}{gap}", kw("select"));
    let projs: Vec<String> = q.projections.iter().map(|p| kw(p.keyword())).collect();
    out.push_str(&projs.join(&format!("{gap},{gap}")));
    out.push_str(&format!("{gap}{}{gap}", kw("from")));
    out.push_str(&q.sources.join(&format!(",{gap}")));
    if let Some(d) = q.depth {
        out.push_str(&format!("{gap}{}{gap}{}{gap}={gap}{d}", kw("with"), kw("depth")));
    }
    for (i, c) in q.conditions.iter().enumerate() {
        let joiner = if i == 0 { kw("where") } else { kw("and") };
        let value = c.value.replace('\\', "\\\\").replace('"', "\\\"");
        out.push_str(&format!("{gap}{joiner}{gap}{}{gap}={gap}\"{value}\"", kw(c.field.keyword())));
    }
    out.push_str(gap);
    out
}

/// Scope computed from scratch: anchors by label scan, depth by all-pairs distances.
pub fn brute_force(q: &Query, m: &MindMap, t: &Thesaurus) -> ResultSet {
    let all: Vec<NodeId> = m.nodes().map(|n| n.id).collect();
    let scope: BTreeSet<NodeId> = if q.conditions.is_empty() {
        all.iter().copied().collect()
    } else {
        let anchors: Vec<NodeId> = all
            .iter()
            .copied()
            .filter(|&id| {
                let n = m.node(id).unwrap();
                q.conditions.iter().all(|c| match c.field {
                    Field::Concept => {
                        matches!(n.kind, NodeKind::Actor | NodeKind::Concept)
                            && n.label.to_lowercase() == c.value.to_lowercase()
                    }
                    Field::Name => {
                        n.kind == NodeKind::Actor
                            && t.actors().iter().any(|a| {
                                Some(a.id) == n.actor
                                    && (a.canonical.eq_ignore_ascii_case(c.value.trim())
                                        || a.aliases.iter().any(|al| al.eq_ignore_ascii_case(c.value.trim())))
                            })
                    }
                })
            })
            .collect();
        match q.depth {
            Some(d) => {
                let dist = floyd_warshall(m);
                all.iter()
                    .copied()
                    .filter(|id| anchors.iter().any(|a| dist[a.0 as usize][id.0 as usize] <= d as usize))
                    .collect()
            }
            None => all
                .iter()
                .copied()
                .filter(|id| {
                    let n = m.node(*id).unwrap();
                    anchors.contains(id)
                        || (n.kind == NodeKind::Subconcept && n.parent.is_some_and(|p| anchors.contains(&p)))
                })
                .collect(),
        }
    };
    let label = |id: NodeId| {
        let n = m.node(id).unwrap();
        if n.kind == NodeKind::Empty {
            "\u{2205}".to_string()
        } else {
            n.label.clone()
        }
    };
    let mut rs = ResultSet::default();
    for &id in &scope {
        let n = m.node(id).unwrap();
        match n.kind {
            NodeKind::Actor | NodeKind::Concept if q.projections.contains(&Projection::Concepts) => {
                rs.concepts.push(n.label.clone())
            }
            NodeKind::Subconcept if q.projections.contains(&Projection::Subconcepts) => {
                rs.subconcepts.push((label(n.parent.unwrap()), n.label.clone()))
            }
            _ => {}
        }
        if n.kind == NodeKind::Actor && q.projections.contains(&Projection::Name) {
            rs.names.push(n.label.clone());
        }
    }
    if q.projections.contains(&Projection::Associations) {
        for l in m.links() {
            if scope.contains(&l.from) && scope.contains(&l.to) {
                rs.associations.push(Association {
                    from: label(l.from),
                    verb: l.verb.surface.clone(),
                    to: label(l.to),
                    polarity: l.verb.polarity,
                });
            }
        }
    }
    rs
}

pub fn sorted(mut rs: ResultSet) -> ResultSet {
    rs.concepts.sort();
    rs.subconcepts.sort();
    rs.associations.sort();
    rs.names.sort();
    rs
}

/// Conditions drawn from the labels and aliases actually in the map, plus misses.
pub fn map_and_query() -> impl Strategy<Value = (MindMap, Query)> {
    random_map().prop_flat_map(|m| {
        let mut values: Vec<String> = m.nodes().map(|n| n.label.clone()).collect();
        values.extend(m.nodes().filter(|n| n.kind == NodeKind::Actor).map(|n| format!("ALIAS{}", n.id.0)));
        values.push("nothing here".into());
        let cond = (prop_oneof![Just(Field::Concept), Just(Field::Name)], prop::sample::select(values))
            .prop_map(|(field, value)| Condition { field, value });
        let q =
            (prop::collection::vec(projection(), 1..5), prop::option::of(1u32..5), prop::collection::vec(cond, 0..3))
                .prop_map(|(projections, depth, conditions)| Query {
                    projections,
                    sources: vec!["mind-map".into()],
                    depth,
                    conditions,
                });
        (Just(m), q)
    })
}

pub fn random_map_30() -> impl Strategy<Value = (MindMap, Query)> {
    map_and_query().prop_filter("at most 30 nodes", |(m, _)| m.node_count() <= 30)
}

/// Printing then re-parsing gives back the same query and the same text.
pub fn print_parse_round_trip(q: &Query) -> Result<(), TestCaseError> {
    let text = q.to_string();
    let parsed = parse_query(&text);
    prop_assert_eq!(parsed.as_ref(), Ok(q), "{}", text);
    prop_assert_eq!(parsed.unwrap().to_string(), text);
    Ok(())
}

/// The evaluator agrees with the oracle and leaves the map untouched.
pub fn evaluator_matches_brute_force(m: &MindMap, q: &Query) -> Result<(), TestCaseError> {
    let t = thesaurus_for(m);
    let before = m.clone();
    let got = evaluate(q, m, &t).unwrap();
    prop_assert_eq!(m, &before);
    prop_assert_eq!(sorted(got), sorted(brute_force(q, m, &t)));
    Ok(())
}

/// result(k) is contained in result(k + 1).
pub fn deeper_queries_see_more(m: &MindMap, q: &Query) -> Result<(), TestCaseError> {
    let t = thesaurus_for(m);
    let k = q.depth.unwrap_or(1);
    let mut shallow = q.clone();
    shallow.depth = Some(k);
    let mut deep = q.clone();
    deep.depth = Some(k + 1);
    let a = evaluate(&shallow, m, &t).unwrap();
    let b = evaluate(&deep, m, &t).unwrap();
    prop_assert!(a.is_subset_of(&b), "{:?} not within {:?}", a, b);
    Ok(())
}
