//! MindQL, a small SQL-like retrieval language over mind-maps.
//!
//! ```text
//! query := SELECT proj (',' proj)* FROM source (',' source)*
//!          (WITH DEPTH '=' INT)? (WHERE cond (AND cond)*)?
//! proj  := 'concepts' | 'sub-concepts' | 'associations' | 'name'
//! cond  := ('concept' | 'name') '=' STRING
//! ```
//!
//! Keywords are case-insensitive. Words may contain `-`, so `sub-concepts` and
//! `mind-map` lex as single tokens.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::extract::{Polarity, EMPTY_MARKER};
use crate::mindmap::{MindMap, NodeId, NodeKind};
use crate::thesaurus::Thesaurus;

/// Name of the map the engine builds.
pub const DEFAULT_SOURCE: &str = "mind-map";

const RESERVED: [&str; 6] = ["select", "from", "with", "depth", "where", "and"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Projection {
    Concepts,
    Subconcepts,
    Associations,
    Name,
}

impl Projection {
    pub fn keyword(self) -> &'static str {
        match self {
            Projection::Concepts => "concepts",
            Projection::Subconcepts => "sub-concepts",
            Projection::Associations => "associations",
            Projection::Name => "name",
        }
    }

    fn from_word(w: &str) -> Option<Self> {
        [Projection::Concepts, Projection::Subconcepts, Projection::Associations, Projection::Name]
            .into_iter()
            .find(|p| w.eq_ignore_ascii_case(p.keyword()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Field {
    Concept,
    Name,
}

impl Field {
    pub fn keyword(self) -> &'static str {
        match self {
            Field::Concept => "concept",
            Field::Name => "name",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Condition {
    pub field: Field,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Query {
    pub projections: Vec<Projection>,
    pub sources: Vec<String>,
    pub depth: Option<u32>,
    /// Conjunction; empty means no `where` clause.
    pub conditions: Vec<Condition>,
}

fn write_string(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    f.write_str("\"")?;
    for c in s.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            c => fmt::Write::write_char(f, c)?,
        }
    }
    f.write_str("\"")
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("select ")?;
        for (i, p) in self.projections.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(p.keyword())?;
        }
        f.write_str(" from ")?;
        for (i, s) in self.sources.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(s)?;
        }
        if let Some(d) = self.depth {
            write!(f, " with depth={d}")?;
        }
        for (i, c) in self.conditions.iter().enumerate() {
            f.write_str(if i == 0 { " where " } else { " and " })?;
            write!(f, "{} = ", c.field.keyword())?;
            write_string(f, &c.value)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QueryError {
    #[error("lexical error at byte {offset}: {message}")]
    Lex { offset: usize, message: String },
    #[error("syntax error at byte {offset}: expected {expected}, found {found}")]
    Syntax { offset: usize, expected: String, found: String },
    #[error("semantic error at byte {offset}: {message}")]
    Semantic { offset: usize, message: String },
}

impl QueryError {
    /// Byte offset into the query text.
    pub fn offset(&self) -> usize {
        match self {
            QueryError::Lex { offset, .. }
            | QueryError::Syntax { offset, .. }
            | QueryError::Semantic { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Str(String),
    Int(u32),
    Comma,
    Eq,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) if RESERVED.iter().any(|r| w.eq_ignore_ascii_case(r)) => f.write_str(&w.to_ascii_uppercase()),
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Str(s) => write!(f, "string {s:?}"),
            Tok::Int(n) => write!(f, "number {n}"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Eq => f.write_str("`=`"),
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, QueryError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == ',' {
            chars.next();
            out.push((start, Tok::Comma));
        } else if c == '=' {
            chars.next();
            out.push((start, Tok::Eq));
        } else if c == '"' {
            chars.next();
            let mut s = String::new();
            loop {
                match chars.next() {
                    None => return Err(QueryError::Lex { offset: start, message: "unterminated string".into() }),
                    Some((_, '"')) => break,
                    Some((at, '\\')) => match chars.next() {
                        Some((_, e @ ('"' | '\\'))) => s.push(e),
                        _ => return Err(QueryError::Lex { offset: at, message: "bad escape in string".into() }),
                    },
                    Some((_, c)) => s.push(c),
                }
            }
            out.push((start, Tok::Str(s)));
        } else if c.is_ascii_digit() {
            let mut end = start;
            while let Some(&(i, d)) = chars.peek() {
                if !is_word_char(d) {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
            }
            let digits = &text[start..end];
            let n = digits
                .parse::<u32>()
                .map_err(|_| QueryError::Lex { offset: start, message: alloc::format!("bad number `{digits}`") })?;
            out.push((start, Tok::Int(n)));
        } else if c.is_alphabetic() || c == '_' {
            let mut end = start;
            while let Some(&(i, d)) = chars.peek() {
                if !is_word_char(d) {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
            }
            out.push((start, Tok::Word(text[start..end].to_string())));
        } else {
            return Err(QueryError::Lex { offset: start, message: alloc::format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    /// Offset of the current token; past the end, the last byte of the input.
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.text.len().saturating_sub(1), |(o, _)| *o)
    }

    fn error(&self, expected: &str) -> QueryError {
        QueryError::Syntax {
            offset: self.offset(),
            expected: expected.to_string(),
            found: self.peek().map_or_else(|| String::from("end of input"), |t| t.to_string()),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(w)) if w.eq_ignore_ascii_case(kw))
    }

    fn keyword(&mut self, kw: &str) -> Result<(), QueryError> {
        if self.at_keyword(kw) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&kw.to_ascii_uppercase()))
        }
    }

    fn punct(&mut self, tok: Tok, what: &str) -> Result<(), QueryError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn eat_comma(&mut self) -> bool {
        let hit = self.peek() == Some(&Tok::Comma);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn projection(&mut self) -> Result<Projection, QueryError> {
        if let Some(Tok::Word(w)) = self.peek() {
            if let Some(p) = Projection::from_word(w) {
                self.pos += 1;
                return Ok(p);
            }
        }
        Err(self.error("projection"))
    }

    fn source(&mut self) -> Result<String, QueryError> {
        if let Some(Tok::Word(w)) = self.peek() {
            if !RESERVED.iter().any(|r| w.eq_ignore_ascii_case(r)) {
                let w = w.clone();
                self.pos += 1;
                return Ok(w);
            }
        }
        Err(self.error("mind-map name"))
    }

    fn condition(&mut self) -> Result<Condition, QueryError> {
        let field = match self.peek() {
            Some(Tok::Word(w)) if w.eq_ignore_ascii_case("concept") => Field::Concept,
            Some(Tok::Word(w)) if w.eq_ignore_ascii_case("name") => Field::Name,
            _ => return Err(self.error("`concept` or `name`")),
        };
        self.pos += 1;
        self.punct(Tok::Eq, "`=`")?;
        match self.peek() {
            Some(Tok::Str(s)) => {
                let value = s.clone();
                self.pos += 1;
                Ok(Condition { field, value })
            }
            _ => Err(self.error("quoted string")),
        }
    }

    fn query(&mut self) -> Result<Query, QueryError> {
        self.keyword("select")?;
        let mut projections = alloc::vec![self.projection()?];
        while self.eat_comma() {
            projections.push(self.projection()?);
        }
        self.keyword("from")?;
        let mut sources = alloc::vec![self.source()?];
        while self.eat_comma() {
            sources.push(self.source()?);
        }
        let mut depth = None;
        if self.at_keyword("with") {
            self.pos += 1;
            self.keyword("depth")?;
            self.punct(Tok::Eq, "`=`")?;
            let at = self.offset();
            match self.peek() {
                Some(&Tok::Int(0)) => {
                    return Err(QueryError::Semantic { offset: at, message: "depth must be at least 1".into() })
                }
                Some(&Tok::Int(n)) => {
                    self.pos += 1;
                    depth = Some(n);
                }
                _ => return Err(self.error("depth")),
            }
        }
        let mut conditions = Vec::new();
        if self.at_keyword("where") {
            self.pos += 1;
            conditions.push(self.condition()?);
            while self.at_keyword("and") {
                self.pos += 1;
                conditions.push(self.condition()?);
            }
        }
        if self.peek().is_some() {
            let expected = if depth.is_none() && conditions.is_empty() {
                "`,`, WITH, WHERE or end of input"
            } else if conditions.is_empty() {
                "WHERE or end of input"
            } else {
                "AND or end of input"
            };
            return Err(self.error(expected));
        }
        Ok(Query { projections, sources, depth, conditions })
    }
}

/// Parse one MindQL statement.
pub fn parse_query(text: &str) -> Result<Query, QueryError> {
    let toks = lex(text)?;
    Parser { toks, pos: 0, text }.query()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Association {
    pub from: String,
    pub verb: String,
    pub to: String,
    pub polarity: Polarity,
}

// serialized as a four-element array
impl Serialize for AssociationTuple<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let a = self.0;
        (&a.from, &a.verb, &a.to, a.polarity).serialize(s)
    }
}

struct AssociationTuple<'a>(&'a Association);

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
pub struct ResultSet {
    pub concepts: Vec<String>,
    /// (parent label, sub-concept label)
    pub subconcepts: Vec<(String, String)>,
    #[serde(deserialize_with = "associations_from_tuples")]
    pub associations: Vec<Association>,
    pub names: Vec<String>,
}

fn associations_from_tuples<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<Association>, D::Error> {
    let raw: Vec<(String, String, String, Polarity)> = Vec::deserialize(d)?;
    Ok(raw.into_iter().map(|(from, verb, to, polarity)| Association { from, verb, to, polarity }).collect())
}

impl Serialize for ResultSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let assoc: Vec<AssociationTuple<'_>> = self.associations.iter().map(AssociationTuple).collect();
        let mut st = s.serialize_struct("ResultSet", 4)?;
        st.serialize_field("concepts", &self.concepts)?;
        st.serialize_field("subconcepts", &self.subconcepts)?;
        st.serialize_field("associations", &assoc)?;
        st.serialize_field("names", &self.names)?;
        st.end()
    }
}

impl ResultSet {
    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty() && self.subconcepts.is_empty() && self.associations.is_empty() && self.names.is_empty()
    }

    /// Every element of `self` also appears in `other`.
    pub fn is_subset_of(&self, other: &ResultSet) -> bool {
        fn sub<T: Ord>(a: &[T], b: &[T]) -> bool {
            let b: BTreeSet<&T> = b.iter().collect();
            a.iter().all(|x| b.contains(x))
        }
        sub(&self.concepts, &other.concepts)
            && sub(&self.subconcepts, &other.subconcepts)
            && sub(&self.associations, &other.associations)
            && sub(&self.names, &other.names)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("unknown mind-map `{0}`")]
    UnknownSource(String),
}

/// Nodes the conditions select: the intersection of each condition's matches.
pub fn anchors(map: &MindMap, thesaurus: &Thesaurus, conditions: &[Condition]) -> BTreeSet<NodeId> {
    let mut acc: Option<BTreeSet<NodeId>> = None;
    for c in conditions {
        let hits: BTreeSet<NodeId> = match c.field {
            Field::Concept => {
                let want = c.value.to_lowercase();
                map.nodes()
                    .filter(|n| matches!(n.kind, NodeKind::Actor | NodeKind::Concept) && n.label.to_lowercase() == want)
                    .map(|n| n.id)
                    .collect()
            }
            Field::Name => thesaurus.match_mention(&c.value).and_then(|a| map.actor_node(a.id)).into_iter().collect(),
        };
        acc = Some(match acc {
            None => hits,
            Some(prev) => prev.intersection(&hits).copied().collect(),
        });
    }
    acc.unwrap_or_default()
}

/// Node ids the query looks at.
pub fn scope(q: &Query, map: &MindMap, thesaurus: &Thesaurus) -> BTreeSet<NodeId> {
    if q.conditions.is_empty() {
        return map.nodes().map(|n| n.id).collect();
    }
    let anchors = anchors(map, thesaurus, &q.conditions);
    let mut out = BTreeSet::new();
    for &a in &anchors {
        match q.depth {
            Some(d) => out.extend(map.distances(a, d as usize).into_keys()),
            None => {
                out.insert(a);
                out.extend(map.subconcepts(a).map(|n| n.id));
            }
        }
    }
    out
}

fn project(q: &Query, map: &MindMap, scope: &BTreeSet<NodeId>) -> ResultSet {
    let wants = |p| q.projections.contains(&p);
    let in_scope = || scope.iter().filter_map(|id| map.node(*id));
    let label = |id: NodeId| {
        map.node(id).map_or_else(String::new, |n| {
            if n.kind == NodeKind::Empty {
                String::from(EMPTY_MARKER)
            } else {
                n.label.clone()
            }
        })
    };
    let mut rs = ResultSet::default();
    if wants(Projection::Concepts) {
        rs.concepts = in_scope()
            .filter(|n| matches!(n.kind, NodeKind::Actor | NodeKind::Concept))
            .map(|n| n.label.clone())
            .collect();
    }
    if wants(Projection::Subconcepts) {
        rs.subconcepts = in_scope()
            .filter(|n| n.kind == NodeKind::Subconcept)
            .filter_map(|n| n.parent.map(|p| (label(p), n.label.clone())))
            .collect();
    }
    if wants(Projection::Associations) {
        rs.associations = map
            .links()
            .iter()
            .filter(|l| scope.contains(&l.from) && scope.contains(&l.to))
            .map(|l| Association {
                from: label(l.from),
                verb: l.verb.surface.clone(),
                to: label(l.to),
                polarity: l.verb.polarity,
            })
            .collect();
    }
    if wants(Projection::Name) {
        rs.names = in_scope().filter(|n| n.kind == NodeKind::Actor).map(|n| n.label.clone()).collect();
    }
    rs
}

/// Evaluate against named maps, one result per source in query order.
pub fn evaluate_sources(
    q: &Query,
    catalog: &[(&str, &MindMap)],
    thesaurus: &Thesaurus,
) -> Result<Vec<(String, ResultSet)>, EvalError> {
    q.sources
        .iter()
        .map(|src| {
            let (_, map) = catalog
                .iter()
                .find(|(name, _)| name.eq_ignore_ascii_case(src))
                .ok_or_else(|| EvalError::UnknownSource(src.clone()))?;
            Ok((src.clone(), project(q, map, &scope(q, map, thesaurus))))
        })
        .collect()
}

/// Evaluate against the single default map. Repeated sources concatenate.
pub fn evaluate(q: &Query, map: &MindMap, thesaurus: &Thesaurus) -> Result<ResultSet, EvalError> {
    let parts = evaluate_sources(q, &[(DEFAULT_SOURCE, map)], thesaurus)?;
    let mut out = ResultSet::default();
    for (_, rs) in parts {
        out.concepts.extend(rs.concepts);
        out.subconcepts.extend(rs.subconcepts);
        out.associations.extend(rs.associations);
        out.names.extend(rs.names);
    }
    Ok(out)
}
