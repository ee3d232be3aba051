//! Word literals: generator names joined by `.`, a trailing `'` marks an
//! inverse, and the empty string is the identity (`"1.3'.2"` = 1·3⁻¹·2).

use super::{Element, Letter, Raag};
use crate::{Error, Result};

impl Raag {
    /// Parses a literal into raw letters (no normalisation).
    pub fn parse_letters(&self, text: &str) -> Result<Vec<Letter>> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        text.split('.')
            .map(|token| {
                let (name, inverse) = match token.strip_suffix('\'') {
                    Some(name) => (name, true),
                    None => (token, false),
                };
                let generator = self
                    .graph()
                    .index_of(name)
                    .ok_or_else(|| Error::input(format!("unknown generator {name:?} in word {text:?}")))?;
                Ok(Letter { generator, inverse })
            })
            .collect()
    }

    /// Parses and normalises a literal.
    pub fn word(&self, text: &str) -> Result<Element> {
        let letters = self.parse_letters(text)?;
        self.normal_form(&letters)
    }

    pub fn format(&self, g: &Element) -> String {
        self.format_letters(g.letters())
    }

    pub fn format_letters(&self, letters: &[Letter]) -> String {
        letters
            .iter()
            .map(|l| {
                let name = self.graph().name(l.generator);
                if l.inverse {
                    format!("{name}'")
                } else {
                    name.to_owned()
                }
            })
            .collect::<Vec<_>>()
            .join(".")
    }
}
