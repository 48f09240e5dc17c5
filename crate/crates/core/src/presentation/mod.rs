//! Free-group words, finitely presented groups, homomorphisms between them,
//! and a text format for all three.

mod hom;
mod parser;
mod word;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

pub use hom::{verify_hom, verify_hom_with_budget, GroupHom, HomError, Verification, WordProblem};
pub use parser::{parse_document, parse_presentation, parse_word, Document, GroupDecl, ParseError};
pub use word::{free_reduce, Letter, Word, WordDisplay};

use crate::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("`{0}` is not an identifier")]
    BadName(String),
    #[error("relator {relator} uses generator index {index} but there are only {count} generators")]
    IndexOutOfRange {
        relator: usize,
        index: usize,
        count: usize,
    },
}

/// View of one generator: its name and position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator<'a> {
    pub name: &'a str,
    pub index: usize,
}

/// A finitely presented group `⟨generators | relators⟩`.
///
/// Relators are stored freely and cyclically reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    name: String,
    generators: Vec<String>,
    relators: Vec<Word>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Self, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            if !is_identifier(g) {
                return Err(PresentationError::BadName(g.clone()));
            }
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        let count = generators.len();
        for (r, w) in relators.iter().enumerate() {
            if let Some(index) = w.max_generator().filter(|&i| i >= count) {
                return Err(PresentationError::IndexOutOfRange {
                    relator: r,
                    index,
                    count,
                });
            }
        }
        Ok(Presentation {
            name: name.into(),
            generators,
            relators: relators.iter().map(Word::cyclically_reduced).collect(),
        })
    }

    /// Convenience constructor from string slices.
    pub fn from_names(name: &str, generators: &[&str], relators: Vec<Word>) -> Result<Self, PresentationError> {
        Self::new(name, generators.iter().map(|s| s.to_string()).collect(), relators)
    }

    /// The free group on the given generators.
    pub fn free(name: &str, generators: &[&str]) -> Self {
        Self::from_names(name, generators, Vec::new()).expect("valid generator names")
    }

    /// Free abelian group: one commutator relator per pair of generators.
    pub fn free_abelian(name: &str, generators: &[&str]) -> Self {
        let n = generators.len();
        let mut rels = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                rels.push(Word::commutator(&Word::generator(i), &Word::generator(j)));
            }
        }
        Self::from_names(name, generators, rels).expect("valid generator names")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generators
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator<'_>> {
        self.generators
            .iter()
            .enumerate()
            .map(|(index, name)| Generator { name, index })
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Relators × generators matrix of exponent sums.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let n = self.ngens();
        let rows: Vec<Vec<BigInt>> = self
            .relators
            .iter()
            .map(|r| r.exponent_sums(n).into_iter().map(BigInt::from).collect())
            .collect();
        IntMatrix::from_rows(n, &rows)
    }

    pub fn display_word<'a>(&'a self, w: &'a Word) -> WordDisplay<'a> {
        w.display(&self.generators)
    }

    /// Serializes in the `group NAME { gens: …; rels: …; }` format.
    pub fn to_text(&self) -> String {
        self.to_text_with_central(&[])
    }

    pub(crate) fn to_text_with_central(&self, central: &[String]) -> String {
        let mut s = format!("group {} {{\n  gens: {};\n  rels: ", self.name, self.generators.join(", "));
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| self.display_word(r).to_string())
            .collect();
        s.push_str(&rels.join(",\n        "));
        s.push_str(";\n");
        if !central.is_empty() {
            s.push_str(&format!("  central: {};\n", central.join(", ")));
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
