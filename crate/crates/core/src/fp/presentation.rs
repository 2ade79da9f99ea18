use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::Word;
use super::FpError;

/// A finite presentation `⟨ generators | relators ⟩`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Presentation {
    pub generator_names: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self, FpError> {
        let n = generator_names.len();
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= n {
                    return Err(FpError::InvalidGenerator { index: g, count: n });
                }
            }
        }
        Ok(Presentation {
            generator_names,
            relators,
        })
    }

    /// Free group on the given names.
    pub fn free(names: &[&str]) -> Self {
        Presentation {
            generator_names: names.iter().map(|s| s.to_string()).collect(),
            relators: Vec::new(),
        }
    }

    pub fn num_generators(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|n| n == name)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.format(&self.generator_names)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "< {} | {} >", self.generator_names.join(", "), rels.join(", "))
    }
}
