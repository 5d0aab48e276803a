//! Actor thesaurus: user-declared actors and the alias strings that name them.
//!
//! Matching is exact on lowercased strings. Only actors are ever merged;
//! ordinary concepts keep their own surface as identity.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ActorId(pub u32);

impl fmt::Display for ActorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Gender {
    #[serde(rename = "M")]
    Male,
    #[serde(rename = "F")]
    Female,
    #[default]
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

impl Gender {
    /// Accepts `m`/`male`, `f`/`female`, anything else is unknown.
    pub fn parse(s: &str) -> Gender {
        match s.trim().to_ascii_lowercase().as_str() {
            "m" | "male" => Gender::Male,
            "f" | "female" => Gender::Female,
            _ => Gender::Unknown,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Gender::Male => "M",
            Gender::Female => "F",
            Gender::Unknown => "U",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Actor {
    pub id: ActorId,
    pub canonical: String,
    /// Lowercased; always contains the lowercased canonical name.
    pub aliases: Vec<String>,
    pub gender: Gender,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("alias `{alias}` of `{actor}` is already registered to `{owner}`")]
pub struct AliasCollision {
    pub alias: String,
    pub actor: String,
    pub owner: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<Actor>", into = "Vec<Actor>")]
pub struct Thesaurus {
    actors: Vec<Actor>,
    index: BTreeMap<String, usize>,
}

impl From<Vec<Actor>> for Thesaurus {
    fn from(actors: Vec<Actor>) -> Self {
        let mut t = Thesaurus { actors, index: BTreeMap::new() };
        t.reindex();
        t
    }
}

impl From<Thesaurus> for Vec<Actor> {
    fn from(t: Thesaurus) -> Self {
        t.actors
    }
}

fn normalize(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

impl Thesaurus {
    pub fn new() -> Self {
        Self::default()
    }

    /// Register an actor under its canonical name and aliases.
    pub fn register_actor<I, S>(
        &mut self,
        canonical: &str,
        aliases: I,
        gender: Gender,
    ) -> Result<&Actor, AliasCollision>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut names: Vec<String> = core::iter::once(normalize(canonical))
            .chain(aliases.into_iter().map(|a| normalize(a.as_ref())))
            .filter(|a| !a.is_empty())
            .collect();
        names.sort();
        names.dedup();
        for alias in &names {
            if let Some(&owner) = self.index.get(alias) {
                return Err(AliasCollision {
                    alias: alias.clone(),
                    actor: canonical.to_string(),
                    owner: self.actors[owner].canonical.clone(),
                });
            }
        }
        let pos = self.actors.len();
        for alias in &names {
            self.index.insert(alias.clone(), pos);
        }
        self.actors.push(Actor {
            id: ActorId(pos as u32),
            canonical: canonical.trim().to_string(),
            aliases: names,
            gender,
        });
        Ok(&self.actors[pos])
    }

    /// Owner of a mention, case-insensitively.
    pub fn match_mention(&self, surface: &str) -> Option<&Actor> {
        self.index.get(&normalize(surface)).map(|&i| &self.actors[i])
    }

    pub fn get(&self, id: ActorId) -> Option<&Actor> {
        self.actors.iter().find(|a| a.id == id)
    }

    pub fn by_canonical(&self, canonical: &str) -> Option<&Actor> {
        self.actors.iter().find(|a| a.canonical == canonical)
    }

    pub fn actors(&self) -> &[Actor] {
        &self.actors
    }

    pub fn len(&self) -> usize {
        self.actors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actors.is_empty()
    }

    fn reindex(&mut self) {
        self.index.clear();
        for (i, a) in self.actors.iter().enumerate() {
            for alias in core::iter::once(&a.canonical).chain(&a.aliases) {
                self.index.insert(normalize(alias), i);
            }
        }
    }
}
