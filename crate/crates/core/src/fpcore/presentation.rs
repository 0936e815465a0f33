use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::word::{Letter, Word};
use super::FpError;

/// A finite presentation `<generators | relators>`.
///
/// Relators are stored freely and cyclically reduced; empty relators are
/// dropped. Generator names are kept for display only.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, FpError> {
        let mut seen = HashMap::new();
        for (i, name) in generators.iter().enumerate() {
            if let Some(j) = seen.insert(name.as_str(), i) {
                return Err(FpError::DuplicateGenerator {
                    name: name.clone(),
                    first: j,
                });
            }
        }
        let n = generators.len();
        let mut out = Vec::with_capacity(relators.len());
        for (i, r) in relators.into_iter().enumerate() {
            if let Some(g) = r.max_generator() {
                if g >= n {
                    return Err(FpError::UndeclaredGenerator {
                        relator: i,
                        index: g,
                    });
                }
            }
            let r = r.cyclically_reduced();
            if !r.is_empty() {
                out.push(r);
            }
        }
        Ok(Presentation {
            generators,
            relators: out,
        })
    }

    /// Free group on the given generator names.
    pub fn free(generators: Vec<String>) -> Self {
        Presentation::new(generators, Vec::new()).expect("free presentation is valid")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// The word for a named generator. Panics on an unknown name; intended
    /// for constructors with fixed generator sets.
    pub fn gen(&self, name: &str) -> Word {
        Word::generator(
            self.generator_index(name)
                .unwrap_or_else(|| panic!("no generator {name}")),
        )
    }

    /// Returns a copy with extra relators appended.
    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Result<Self, FpError> {
        let mut rels = self.relators.clone();
        rels.extend(extra);
        Presentation::new(self.generators.clone(), rels)
    }

    pub fn total_relator_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Formats a word with this presentation's generator names.
    pub fn format_word(&self, w: &Word) -> String {
        format_word(&self.generators, w)
    }

    /// Canonical JSON value: `{generators: [...], relators: [[["a", 1], ...], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("presentation serializes")
    }
}

/// Formats a word as DSL text; the empty word prints as `1`.
pub fn format_word(names: &[String], w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.syllables()
        .into_iter()
        .map(|(g, e)| {
            let name = names.get(g).map(String::as_str).unwrap_or("?");
            if e == 1 {
                name.to_string()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<Vec<(String, i32)>>,
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let relators = self
            .relators
            .iter()
            .map(|r| {
                r.letters()
                    .iter()
                    .map(|l| (self.generators[l.generator()].clone(), l.sign()))
                    .collect()
            })
            .collect();
        PresentationJson {
            generators: self.generators.clone(),
            relators,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = PresentationJson::deserialize(d)?;
        let index: HashMap<&str, usize> = raw
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.as_str(), i))
            .collect();
        let mut relators = Vec::new();
        for r in &raw.relators {
            let mut letters = Vec::new();
            for (name, sign) in r {
                let g = *index
                    .get(name.as_str())
                    .ok_or_else(|| D::Error::custom(format!("undeclared generator {name}")))?;
                if *sign != 1 && *sign != -1 {
                    return Err(D::Error::custom(format!(
                        "exponent sign must be 1 or -1, got {sign}"
                    )));
                }
                letters.push(Letter::new(g, *sign < 0));
            }
            relators.push(Word::new(letters));
        }
        Presentation::new(raw.generators, relators).map_err(D::Error::custom)
    }
}
