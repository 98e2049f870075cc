//! Tokenization and word-frequency counting.
//!
//! Tokens are maximal runs of characters that are neither whitespace nor in
//! a Unicode punctuation/symbol category. ZWNJ is a format character and so
//! stays inside the token. Digit runs are ordinary tokens.

use std::collections::HashMap;
use std::io::{self, BufRead, Write};

use crate::chars::is_punct_or_symbol;
use crate::normalizer::{normalize_word, NormalizedWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: NormalizedWord,
    /// 0-based line number.
    pub line: usize,
    /// 0-based offset of the token's first character within its line,
    /// counted in Unicode scalar values of the raw input.
    pub column: usize,
}

fn is_separator(c: char) -> bool {
    c.is_whitespace() || is_punct_or_symbol(c)
}

/// Calls `emit(column, raw_token)` for every raw token of one line.
fn split_line<'a>(line: &'a str, mut emit: impl FnMut(usize, &'a str)) {
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, c)) in line.char_indices().enumerate() {
        if is_separator(c) {
            if let Some((s_byte, s_col)) = start.take() {
                emit(s_col, &line[s_byte..byte]);
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((s_byte, s_col)) = start {
        emit(s_col, &line[s_byte..]);
    }
}

/// Tokens of a single line. Raw runs that normalize to nothing (a lone
/// tatweel, stray diacritics) are dropped.
pub fn tokenize_line(line: &str, line_no: usize) -> Vec<Token> {
    let mut out = Vec::new();
    split_line(line, |column, raw| {
        if let Ok(text) = normalize_word(raw) {
            out.push(Token {
                text,
                line: line_no,
                column,
            });
        }
    });
    out
}

/// Tokenizes text with LF or CRLF line endings.
pub fn tokenize(text: &str) -> Vec<Token> {
    text.lines()
        .enumerate()
        .flat_map(|(n, line)| tokenize_line(line, n))
        .collect()
}

/// Word counts plus the total number of tokens seen.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: HashMap<NormalizedWord, u64>,
    total: u64,
}

impl FrequencyTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, word: NormalizedWord) {
        self.add_n(word, 1);
    }

    fn add_n(&mut self, word: NormalizedWord, n: u64) {
        if n == 0 {
            return;
        }
        *self.counts.entry(word).or_insert(0) += n;
        self.total += n;
    }

    pub fn add_line(&mut self, line: &str) {
        split_line(line, |_, raw| {
            if let Ok(word) = normalize_word(raw) {
                self.add(word);
            }
        });
    }

    /// Counts a corpus line by line without holding it in memory.
    pub fn from_reader<R: BufRead>(mut reader: R) -> io::Result<Self> {
        let mut table = Self::new();
        let mut buf = String::new();
        loop {
            buf.clear();
            if reader.read_line(&mut buf)? == 0 {
                break;
            }
            table.add_line(buf.trim_end_matches(['\n', '\r']));
        }
        Ok(table)
    }

    /// Folds another table into this one.
    pub fn merge(&mut self, other: FrequencyTable) {
        for (word, n) in other.counts {
            self.add_n(word, n);
        }
    }

    pub fn count(&self, word: &str) -> u64 {
        self.counts.get(word).copied().unwrap_or(0)
    }

    pub fn total_tokens(&self) -> u64 {
        self.total
    }

    /// Number of distinct words.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// All entries, by descending count and then by word.
    pub fn sorted(&self) -> Vec<(&NormalizedWord, u64)> {
        let mut rows: Vec<_> = self.counts.iter().map(|(w, &n)| (w, n)).collect();
        rows.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        rows
    }

    /// `#total<TAB>N` followed by `word<TAB>count` rows.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "#total\t{}", self.total)?;
        for (word, n) in self.sorted() {
            writeln!(out, "{word}\t{n}")?;
        }
        Ok(())
    }
}

pub fn count_frequencies<'a, I>(tokens: I) -> FrequencyTable
where
    I: IntoIterator<Item = &'a Token>,
{
    let mut table = FrequencyTable::new();
    for t in tokens {
        table.add(t.text.clone());
    }
    table
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryRow {
    pub query: String,
    /// `None` when the query normalizes to nothing.
    pub word: Option<NormalizedWord>,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryReport {
    pub rows: Vec<QueryRow>,
    pub sum: u64,
    pub total_tokens: u64,
    /// `sum / total_tokens`, or 0 for an empty table.
    pub ratio: f64,
}

/// Looks up each query word. Queries that normalize to the same word are
/// reported once, at their first position, so the ratio stays within [0, 1].
pub fn query_counts<S: AsRef<str>>(table: &FrequencyTable, words: &[S]) -> QueryReport {
    let mut seen = std::collections::HashSet::new();
    let mut rows = Vec::new();
    for q in words {
        let q = q.as_ref();
        let word = normalize_word(q).ok();
        if let Some(w) = &word {
            if !seen.insert(w.clone()) {
                continue;
            }
        }
        let count = word.as_ref().map_or(0, |w| table.count(w));
        rows.push(QueryRow {
            query: q.to_string(),
            word,
            count,
        });
    }
    let sum = rows.iter().map(|r| r.count).sum();
    let total_tokens = table.total_tokens();
    let ratio = if total_tokens == 0 {
        0.0
    } else {
        sum as f64 / total_tokens as f64
    };
    QueryReport {
        rows,
        sum,
        total_tokens,
        ratio,
    }
}
