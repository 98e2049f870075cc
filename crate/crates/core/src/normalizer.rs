//! Orthographic canonicalization of Persian text.
//!
//! Persian text mixes Arabic-block letter variants, tatweel and optional
//! diacritics. Everything downstream (lexicon lookup, suffix matching,
//! frequency counting) works on a single canonical form:
//!
//! - canonical composition (NFC) is applied first
//! - Arabic yeh (U+064A) and alef maksura (U+0649) become Farsi yeh (U+06CC)
//! - Arabic kaf (U+0643) becomes keheh (U+06A9)
//! - tatweel (U+0640) and the marks U+064C..=U+0652 are deleted
//! - fathatan (U+064B) is kept only as the last character of a word
//! - ZWNJ (U+200C) and teh marbuta (U+0629) pass through untouched

use std::borrow::Borrow;
use std::fmt;
use std::ops::Deref;

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use crate::chars;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("empty token")]
    EmptyToken,
    #[error("token {0:?} contains whitespace")]
    ContainsWhitespace(String),
}

/// A single Persian token in canonical orthography.
///
/// The only way to obtain one is through [`normalize_word`] (or
/// [`NormalizedWord::new`], which calls it), so every value satisfies the
/// canonical-form invariants.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalizedWord(String);

impl NormalizedWord {
    pub fn new(raw: &str) -> Result<Self, NormalizeError> {
        normalize_word(raw)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Length in Unicode scalar values.
    pub fn char_len(&self) -> usize {
        self.0.chars().count()
    }

    /// Builds a word from a string already known to be canonical, such as a
    /// prefix cut from another `NormalizedWord` at a character boundary.
    pub(crate) fn from_canonical(s: String) -> Self {
        debug_assert!(is_canonical(&s), "not canonical: {s:?}");
        NormalizedWord(s)
    }
}

impl Deref for NormalizedWord {
    type Target = str;

    fn deref(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for NormalizedWord {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for NormalizedWord {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NormalizedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for NormalizedWord {
    type Err = NormalizeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        normalize_word(s)
    }
}

enum Mapped {
    Keep(char),
    Drop,
    Fathatan,
}

fn map_char(c: char) -> Mapped {
    match c {
        chars::ARABIC_YEH | chars::ALEF_MAKSURA => Mapped::Keep(chars::FARSI_YEH),
        chars::ARABIC_KAF => Mapped::Keep(chars::KEHEH),
        chars::TATWEEL => Mapped::Drop,
        '\u{064C}'..='\u{0652}' => Mapped::Drop,
        chars::FATHATAN => Mapped::Fathatan,
        other => Mapped::Keep(other),
    }
}

/// One pass of the character map over `input`, deciding for each fathatan
/// whether it ends a word. `is_boundary` is asked about the next surviving
/// character.
fn fold_once<F>(input: &str, is_boundary: &F) -> String
where
    F: Fn(char) -> bool,
{
    let composed: Vec<char> = input.nfc().collect();
    let mut out = String::with_capacity(input.len());
    for (i, &c) in composed.iter().enumerate() {
        match map_char(c) {
            Mapped::Keep(m) => out.push(m),
            Mapped::Drop => {}
            Mapped::Fathatan => {
                let next = composed[i + 1..]
                    .iter()
                    .copied()
                    .find(|&n| !matches!(map_char(n), Mapped::Drop));
                if next.is_none_or(is_boundary) {
                    out.push(c);
                }
            }
        }
    }
    out.nfc().collect()
}

/// Repeats [`fold_once`] until nothing changes. Deleting tatweel can bring
/// combining marks together, and recomposition may then reorder them; every
/// pass that changes anything deletes at least one character, so this ends.
fn fold<F>(input: &str, is_boundary: F) -> String
where
    F: Fn(char) -> bool,
{
    let mut cur = fold_once(input, &is_boundary);
    loop {
        let next = fold_once(&cur, &is_boundary);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Canonicalizes a single token.
///
/// Leading and trailing whitespace is ignored; interior whitespace is an
/// error because a `NormalizedWord` never contains any.
pub fn normalize_word(raw: &str) -> Result<NormalizedWord, NormalizeError> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Err(NormalizeError::EmptyToken);
    }
    if trimmed.chars().any(char::is_whitespace) {
        return Err(NormalizeError::ContainsWhitespace(trimmed.to_string()));
    }
    // Inside a single token only the end of the token is a word boundary.
    let folded = fold(trimmed, |_| false);
    if folded.is_empty() {
        // e.g. a lone tatweel or a run of diacritics
        return Err(NormalizeError::EmptyToken);
    }
    Ok(NormalizedWord(folded))
}

/// Applies the same character map as [`normalize_word`] to free text,
/// leaving all whitespace where it was.
///
/// A fathatan counts as word-final when the next surviving character is
/// whitespace, punctuation, a symbol, or the end of the text.
pub fn normalize_text(raw: &str) -> String {
    fold(raw, |c| c.is_whitespace() || chars::is_punct_or_symbol(c))
}

/// True when `s` is already in the canonical form produced by this module.
pub fn is_canonical(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(char::is_whitespace) && fold(s, |_| false) == s
}
