use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::thesaurus::{Gender, Thesaurus};

/// Bundled word lists.
pub mod bundled {
    pub const MALE_NAMES: &str = include_str!("../../data/male_names.txt");
    pub const FEMALE_NAMES: &str = include_str!("../../data/female_names.txt");
    pub const GENDERED_NOUNS: &str = include_str!("../../data/gendered_nouns.tsv");
    pub const ANIMATE: &str = include_str!("../../data/animate.txt");
    pub const PLEONASTIC: &str = include_str!("../../data/pleonastic.txt");
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct LexiconError {
    pub line: usize,
    pub message: String,
}

/// Gender and animacy knowledge used by the pronoun rules.
///
/// Names are stored lowercased. A name present in both gender lists is dropped
/// from both. Actor genders registered through [`Lexicon::add_actors`] take
/// precedence over everything else.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    male_names: BTreeSet<String>,
    female_names: BTreeSet<String>,
    male_nouns: BTreeSet<String>,
    female_nouns: BTreeSet<String>,
    animate_nouns: BTreeSet<String>,
    actors: BTreeMap<String, Gender>,
}

/// Non-comment, non-blank lines with their 1-based line numbers.
pub fn entries(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bundled() -> Self {
        Self::from_texts(bundled::MALE_NAMES, bundled::FEMALE_NAMES, bundled::GENDERED_NOUNS, bundled::ANIMATE)
            .expect("bundled lexicon is well-formed")
    }

    /// Build from the four list formats: two name lists, `lemma TAB m|f`, and an animate list.
    pub fn from_texts(male: &str, female: &str, gendered: &str, animate: &str) -> Result<Self, LexiconError> {
        let mut nouns = Vec::new();
        for (line, entry) in entries(gendered) {
            let mut cols = entry.split('\t');
            let lemma = cols.next().unwrap_or("").trim();
            let gender = match cols.next().map(Gender::parse) {
                Some(g @ (Gender::Male | Gender::Female)) => g,
                _ => {
                    return Err(LexiconError {
                        line,
                        message: alloc::format!("expected `lemma<TAB>m|f`, got `{entry}`"),
                    })
                }
            };
            nouns.push((lemma, gender));
        }
        Ok(Self::from_lists(
            entries(male).map(|(_, e)| e),
            entries(female).map(|(_, e)| e),
            nouns,
            entries(animate).map(|(_, e)| e),
        ))
    }

    pub fn from_lists<'a>(
        male_names: impl IntoIterator<Item = &'a str>,
        female_names: impl IntoIterator<Item = &'a str>,
        gendered_nouns: impl IntoIterator<Item = (&'a str, Gender)>,
        animate: impl IntoIterator<Item = &'a str>,
    ) -> Self {
        let lower = |s: &str| s.trim().to_lowercase();
        let mut male: BTreeSet<String> = male_names.into_iter().map(lower).collect();
        let mut female: BTreeSet<String> = female_names.into_iter().map(lower).collect();
        let ambiguous: Vec<String> = male.intersection(&female).cloned().collect();
        for name in &ambiguous {
            male.remove(name);
            female.remove(name);
        }
        let mut lex = Lexicon { male_names: male, female_names: female, ..Default::default() };
        for (lemma, g) in gendered_nouns {
            match g {
                Gender::Male => lex.male_nouns.insert(lower(lemma)),
                Gender::Female => lex.female_nouns.insert(lower(lemma)),
                Gender::Unknown => false,
            };
        }
        lex.animate_nouns = animate.into_iter().map(lower).collect();
        lex
    }

    /// Merge actor aliases as the highest-priority gender evidence; actors count as living.
    pub fn add_actors(&mut self, thesaurus: &Thesaurus) {
        for actor in thesaurus.actors() {
            for alias in core::iter::once(&actor.canonical).chain(&actor.aliases) {
                self.actors.insert(alias.to_lowercase(), actor.gender);
            }
        }
    }

    pub fn is_male_name(&self, name: &str) -> bool {
        self.male_names.contains(&name.to_lowercase())
    }

    pub fn is_female_name(&self, name: &str) -> bool {
        self.female_names.contains(&name.to_lowercase())
    }

    pub fn name_count(&self) -> (usize, usize) {
        (self.male_names.len(), self.female_names.len())
    }

    /// Gender of a mention given its span surface, head lemma and the forms of its tokens.
    pub fn gender(&self, surface: &str, head_lemma: &str, forms: &[&str], proper: bool) -> Gender {
        let surface = surface.to_lowercase();
        if let Some(&g) = self.actors.get(&surface) {
            if g != Gender::Unknown {
                return g;
            }
        }
        for form in forms {
            if let Some(&g) = self.actors.get(&form.to_lowercase()) {
                if g != Gender::Unknown {
                    return g;
                }
            }
        }
        if proper {
            for form in forms {
                let f = form.to_lowercase();
                if self.male_names.contains(&f) {
                    return Gender::Male;
                }
                if self.female_names.contains(&f) {
                    return Gender::Female;
                }
            }
        }
        let lemma = head_lemma.to_lowercase();
        if self.male_nouns.contains(&lemma) {
            Gender::Male
        } else if self.female_nouns.contains(&lemma) {
            Gender::Female
        } else {
            Gender::Unknown
        }
    }

    /// Living entity: listed as animate, a known name, or an actor alias.
    pub fn is_animate(&self, surface: &str, head_lemma: &str, forms: &[&str]) -> bool {
        let lemma = head_lemma.to_lowercase();
        if self.animate_nouns.contains(&lemma) || self.male_nouns.contains(&lemma) || self.female_nouns.contains(&lemma)
        {
            return true;
        }
        if self.actors.contains_key(&surface.to_lowercase()) {
            return true;
        }
        forms.iter().any(|f| {
            let f = f.to_lowercase();
            self.male_names.contains(&f) || self.female_names.contains(&f) || self.actors.contains_key(&f)
        })
    }
}
