//! The two lookup tables consulted before any suffix is stripped.
//!
//! [`MokassarLexicon`] maps broken plurals to their singular, and
//! [`InterveningLexicon`] lists words whose ending merely looks like a plural
//! suffix. Both are loaded from plain UTF-8 files:
//!
//! ```text
//! # mokassar: PLURAL<TAB>SINGULAR
//! قوانین<TAB>قانون
//!
//! # intervening: one word per line
//! ستون
//! ```
//!
//! Lines starting with `#` and blank lines are ignored. Every field goes
//! through [`normalize_word`] on load.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::normalizer::{normalize_word, NormalizeError, NormalizedWord};

pub const MOKASSAR_SEED: &str = include_str!("../data/mokassar_seed.tsv");
pub const INTERVENING_SEED: &str = include_str!("../data/intervening_seed.txt");

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("line {line}: expected {expected} tab-separated column(s), found {found}")]
    MalformedLine {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: word {word:?} contains whitespace")]
    InteriorWhitespace { line: usize, word: String },
    #[error("line {line}: empty field")]
    EmptyField { line: usize },
    #[error("line {line}: {plural} already maps to {existing}, cannot also map to {conflicting}")]
    DuplicateKey {
        line: usize,
        plural: NormalizedWord,
        existing: NormalizedWord,
        conflicting: NormalizedWord,
    },
    #[error("line {line}: {word} maps to itself")]
    SelfMapping { line: usize, word: NormalizedWord },
    #[error("read failed: {0}")]
    Io(#[from] io::Error),
}

fn field(line: usize, raw: &str) -> Result<NormalizedWord, LexiconError> {
    normalize_word(raw).map_err(|e| match e {
        NormalizeError::EmptyToken => LexiconError::EmptyField { line },
        NormalizeError::ContainsWhitespace(word) => LexiconError::InteriorWhitespace { line, word },
    })
}

/// Yields `(1-based line number, line)` for every data line.
fn data_lines<R: BufRead>(source: R) -> impl Iterator<Item = Result<(usize, String), io::Error>> {
    source
        .lines()
        .enumerate()
        .filter_map(|(i, line)| match line {
            Err(e) => Some(Err(e)),
            Ok(mut l) => {
                if l.ends_with('\r') {
                    l.pop();
                }
                let t = l.trim();
                if t.is_empty() || t.starts_with('#') {
                    None
                } else {
                    Some(Ok((i + 1, l)))
                }
            }
        })
}

/// Broken-plural table: plural form to singular stem.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MokassarLexicon {
    entries: BTreeMap<NormalizedWord, NormalizedWord>,
}

impl MokassarLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn seed() -> Self {
        Self::load(MOKASSAR_SEED.as_bytes()).expect("bundled mokassar seed is valid")
    }

    pub fn load<R: BufRead>(source: R) -> Result<Self, LexiconError> {
        let mut lex = Self::new();
        for item in data_lines(source) {
            let (line, text) = item?;
            let cols: Vec<&str> = text.split('\t').collect();
            if cols.len() != 2 {
                return Err(LexiconError::MalformedLine {
                    line,
                    expected: 2,
                    found: cols.len(),
                });
            }
            let plural = field(line, cols[0])?;
            let singular = field(line, cols[1])?;
            lex.insert_at(line, plural, singular)?;
        }
        Ok(lex)
    }

    fn insert_at(
        &mut self,
        line: usize,
        plural: NormalizedWord,
        singular: NormalizedWord,
    ) -> Result<(), LexiconError> {
        if plural == singular {
            return Err(LexiconError::SelfMapping { line, word: plural });
        }
        match self.entries.get(&plural) {
            Some(existing) if *existing == singular => Ok(()),
            Some(existing) => Err(LexiconError::DuplicateKey {
                line,
                plural: plural.clone(),
                existing: existing.clone(),
                conflicting: singular,
            }),
            None => {
                self.entries.insert(plural, singular);
                Ok(())
            }
        }
    }

    /// Adds one pair. Errors the same way a conflicting file line would,
    /// reporting line 0.
    pub fn insert(
        &mut self,
        plural: NormalizedWord,
        singular: NormalizedWord,
    ) -> Result<(), LexiconError> {
        self.insert_at(0, plural, singular)
    }

    pub fn get(&self, plural: &str) -> Option<&NormalizedWord> {
        self.entries.get(plural)
    }

    pub fn contains(&self, plural: &str) -> bool {
        self.entries.contains_key(plural)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NormalizedWord, &NormalizedWord)> {
        self.entries.iter()
    }

    /// Writes the lexicon in its file format, sorted by plural.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (plural, singular) in &self.entries {
            writeln!(out, "{plural}\t{singular}")?;
        }
        Ok(())
    }
}

/// Words exempt from suffix stripping.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InterveningLexicon {
    entries: BTreeSet<NormalizedWord>,
}

impl InterveningLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn seed() -> Self {
        Self::load(INTERVENING_SEED.as_bytes()).expect("bundled intervening seed is valid")
    }

    pub fn load<R: BufRead>(source: R) -> Result<Self, LexiconError> {
        let mut lex = Self::new();
        for item in data_lines(source) {
            let (line, text) = item?;
            if text.contains('\t') {
                return Err(LexiconError::MalformedLine {
                    line,
                    expected: 1,
                    found: text.split('\t').count(),
                });
            }
            lex.entries.insert(field(line, &text)?);
        }
        Ok(lex)
    }

    pub fn insert(&mut self, word: NormalizedWord) -> bool {
        self.entries.insert(word)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains(word)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &NormalizedWord> {
        self.entries.iter()
    }

    pub fn write_lines<W: Write>(&self, mut out: W) -> io::Result<()> {
        for word in &self.entries {
            writeln!(out, "{word}")?;
        }
        Ok(())
    }
}

/// Outcome of a lexicon query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lookup<'a> {
    Intervening,
    MokassarStem(&'a NormalizedWord),
    NotFound,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LexiconPair {
    pub mokassar: MokassarLexicon,
    pub intervening: InterveningLexicon,
}

impl LexiconPair {
    pub fn new(mokassar: MokassarLexicon, intervening: InterveningLexicon) -> Self {
        Self {
            mokassar,
            intervening,
        }
    }

    /// Both bundled seed lexicons.
    pub fn seed() -> Self {
        Self::new(MokassarLexicon::seed(), InterveningLexicon::seed())
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Exact-match lookup; an Intervening entry wins over a Mokassar one.
    pub fn lookup(&self, word: &NormalizedWord) -> Lookup<'_> {
        if self.intervening.contains(word) {
            Lookup::Intervening
        } else if let Some(stem) = self.mokassar.get(word) {
            Lookup::MokassarStem(stem)
        } else {
            Lookup::NotFound
        }
    }

    /// Words listed in both lexicons, in sorted order.
    pub fn conflicts(&self) -> Vec<&NormalizedWord> {
        self.intervening
            .iter()
            .filter(|w| self.mokassar.contains(w))
            .collect()
    }
}
