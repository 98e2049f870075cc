//! Hybrid stemmer for Persian.
//!
//! Words are first looked up in two small lexicons, a table of broken
//! (Mokassar) plurals and a list of Intervening words whose ending only
//! resembles a plural suffix. Anything not found there has its longest
//! matching suffix removed.
//!
//! ```
//! use parsistem::{Stemmer, StemMethod};
//!
//! let stemmer = Stemmer::with_seed();
//! let r = stemmer.stem("قوانین").unwrap();
//! assert_eq!(r.stem.as_str(), "قانون");
//! assert_eq!(r.method, StemMethod::LookupMokassar);
//!
//! let r = stemmer.stem("گل‌ها").unwrap();
//! assert_eq!(r.stem.as_str(), "گل");
//! ```
//!
//! The crate also has a tokenizer and frequency counter ([`corpus`]) and a
//! confusion-matrix evaluator ([`eval`]).

pub mod chars;
pub mod cli;
pub mod corpus;
pub mod eval;
pub mod lexicon;
pub mod normalizer;
pub mod stemmer;

pub use corpus::{count_frequencies, query_counts, tokenize, FrequencyTable, QueryReport, Token};
pub use eval::{
    classify, evaluate, load_gold, EvalCounts, EvalReport, GoldAction, GoldEntry, Verdict,
};
pub use lexicon::{InterveningLexicon, LexiconError, LexiconPair, Lookup, MokassarLexicon};
pub use normalizer::{normalize_text, normalize_word, NormalizeError, NormalizedWord};
pub use stemmer::{
    plural_ending, stem, strip_suffix, PluralEnding, StemConfig, StemMethod, StemResult, Stemmer,
    Suffix, SuffixTable,
};
