use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest alphabet a [`SymbolicSequence`] can carry.
pub const MAX_ALPHABET: usize = 256;

/// Index of a character in a finite alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Symbol(pub u8);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Letter form: `a` for index 0, `b` for 1, and so on. Only meaningful below 26.
    pub fn letter(self) -> char {
        (b'a' + self.0) as char
    }
}

/// A finite string over an alphabet of `alphabet_size` symbols.
///
/// Every symbol index is strictly below `alphabet_size`. The empty sequence is
/// legal. Distances compare symbols by index only, so two sequences with
/// different declared alphabets can still be compared.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymbolicSequence {
    symbols: Vec<Symbol>,
    alphabet_size: usize,
}

impl SymbolicSequence {
    pub fn new(symbols: Vec<Symbol>, alphabet_size: usize) -> Result<Self> {
        if alphabet_size == 0 || alphabet_size > MAX_ALPHABET {
            return Err(Error::invalid(format!(
                "alphabet size {alphabet_size} outside 1..={MAX_ALPHABET}"
            )));
        }
        if let Some((pos, s)) = symbols.iter().enumerate().find(|(_, s)| s.index() >= alphabet_size) {
            return Err(Error::invalid(format!(
                "symbol {} at position {pos} is outside an alphabet of size {alphabet_size}",
                s.0
            )));
        }
        Ok(Self { symbols, alphabet_size })
    }

    pub fn from_indices(indices: &[u8], alphabet_size: usize) -> Result<Self> {
        Self::new(indices.iter().copied().map(Symbol).collect(), alphabet_size)
    }

    /// Parses lowercase letters, `a` being symbol 0. Every letter must fall
    /// inside the first `alphabet_size` letters.
    pub fn from_letters(text: &str, alphabet_size: usize) -> Result<Self> {
        if alphabet_size == 0 || alphabet_size > 26 {
            return Err(Error::invalid(format!(
                "letter alphabets hold 1..=26 symbols, got {alphabet_size}"
            )));
        }
        let last = (b'a' + alphabet_size as u8 - 1) as char;
        let symbols = text
            .chars()
            .enumerate()
            .map(|(position, c)| {
                if c.is_ascii_lowercase() && c <= last {
                    Ok(Symbol(c as u8 - b'a'))
                } else {
                    Err(Error::InvalidSymbol {
                        position,
                        found: c,
                        reason: format!("expected a letter in a..={last}"),
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { symbols, alphabet_size })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn to_letters(&self) -> Option<String> {
        (self.alphabet_size <= 26).then(|| self.symbols.iter().map(|s| s.letter()).collect())
    }
}

impl fmt::Display for SymbolicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_letters() {
            Some(text) => f.write_str(&text),
            None => {
                for (i, s) in self.symbols.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{}", s.0)?;
                }
                Ok(())
            }
        }
    }
}
