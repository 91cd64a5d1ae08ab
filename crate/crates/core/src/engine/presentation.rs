use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::{cokernel, FgAbelianGroup, IntegerMatrix};
use crate::error::{Error, Result};
use crate::io::grammar::parse_word_with;
use crate::nilpotent::FreeGroupWord;

/// Finite presentation `⟨x_1..x_n | r_1, …⟩` with optional generator names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<FreeGroupWord>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<FreeGroupWord>) -> Result<Self> {
        Self::with_names((1..=generator_count).map(|i| format!("x{i}")).collect(), relators)
    }

    pub fn with_names(names: Vec<String>, relators: Vec<FreeGroupWord>) -> Result<Self> {
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::invalid(format!("generator name '{n}' is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::invalid(format!("generator name '{n}' is repeated")));
            }
        }
        if let Some(r) = relators.iter().find(|r| r.max_generator() as usize > names.len()) {
            return Err(Error::invalid(format!(
                "relator uses x{} but there are {} generators",
                r.max_generator(),
                names.len()
            )));
        }
        Ok(Self { names, relators })
    }

    /// Parses relators written over the given names.
    pub fn parse(names: &[&str], relators: &[&str]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let rels = relators
            .iter()
            .map(|r| parse_word_with(r, &names).map_err(Error::from))
            .collect::<Result<Vec<_>>>()?;
        Self::with_names(names, rels)
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[FreeGroupWord] {
        &self.relators
    }

    /// Relator matrix of exponent sums, one row per relator.
    pub fn exponent_matrix(&self) -> Result<IntegerMatrix> {
        let n = self.generator_count();
        let rows = self
            .relators
            .iter()
            .map(|r| r.exponent_sums(n))
            .collect::<Result<Vec<_>>>()?;
        IntegerMatrix::from_rows(n, &rows)
    }

    pub fn abelianization(&self) -> Result<FgAbelianGroup> {
        Ok(cokernel(&self.exponent_matrix()?))
    }

    pub fn is_perfect(&self) -> Result<bool> {
        Ok(self.abelianization()?.is_trivial())
    }

    /// Renders a word over this presentation's names.
    pub fn render(&self, w: &FreeGroupWord) -> String {
        if w.is_identity() {
            return "1".into();
        }
        let mut s = String::new();
        for (k, &(g, e)) in w.syllables().iter().enumerate() {
            if k > 0 {
                s.push(' ');
            }
            s.push_str(&self.names[g as usize - 1]);
            if e != 1 {
                let _ = write!(s, "^{e}");
            }
        }
        s
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    generators: Generators,
    relators: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Generators {
    Count(usize),
    Names(Vec<String>),
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawPresentation {
            generators: Generators::Names(self.names.clone()),
            relators: self.relators.iter().map(|r| self.render(r)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPresentation::deserialize(d)?;
        let names = match raw.generators {
            Generators::Count(n) => (1..=n).map(|i| format!("x{i}")).collect(),
            Generators::Names(v) => v,
        };
        let rels = raw
            .relators
            .iter()
            .map(|r| parse_word_with(r, &names))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Presentation::with_names(names, rels).map_err(serde::de::Error::custom)
    }
}
