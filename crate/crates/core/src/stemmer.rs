//! Lexicon lookup followed by longest-match suffix removal.
//!
//! The pipeline for one token:
//!
//! 1. normalize the token
//! 2. if it is an Intervening word, return it unchanged
//! 3. if it is a Mokassar plural, return the listed singular
//! 4. otherwise strip the longest matching suffix from [`SuffixTable`],
//!    provided the remaining stem keeps at least `min_stem_len` characters
//!
//! Lexicon lookup runs for every token, not only for tokens that end in one
//! of the five plural endings. [`plural_ending`] is still available for
//! reporting.

use std::fmt;
use std::num::NonZeroUsize;

use crate::chars::ZWNJ;
use crate::lexicon::{LexiconPair, Lookup};
use crate::normalizer::{normalize_word, NormalizeError, NormalizedWord};

/// The strippable suffixes in their listed order.
const SUFFIX_LIST: [&str; 13] = [
    "ها", "ی", "یی", "ش", "ت", "م", "تر", "ترین", "ان", "ات", "\u{064B}", "ون", "ین",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Suffix(&'static str);

impl Suffix {
    pub fn as_str(&self) -> &'static str {
        self.0
    }

    pub fn char_len(&self) -> usize {
        self.0.chars().count()
    }
}

impl fmt::Display for Suffix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// Splits `word` as `stem ⧺ [ZWNJ] ⧺ ending`, returning the stem.
/// A single ZWNJ directly before the ending is consumed with it.
fn split_ending<'w>(word: &'w str, ending: &str) -> Option<&'w str> {
    let rest = word.strip_suffix(ending)?;
    Some(rest.strip_suffix(ZWNJ).unwrap_or(rest))
}

/// The thirteen suffixes, longest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixTable {
    suffixes: Vec<Suffix>,
}

impl SuffixTable {
    pub fn standard() -> Self {
        let mut suffixes: Vec<Suffix> = SUFFIX_LIST.iter().map(|s| Suffix(s)).collect();
        // stable sort keeps list order among equal lengths
        suffixes.sort_by_key(|s| std::cmp::Reverse(s.char_len()));
        Self { suffixes }
    }

    pub fn iter(&self) -> impl Iterator<Item = Suffix> + '_ {
        self.suffixes.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.suffixes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.suffixes.is_empty()
    }

    /// The longest suffix `word` ends with, and the stem left after removing
    /// it (and a joining ZWNJ, if present).
    pub fn longest_match<'w>(&self, word: &'w str) -> Option<(Suffix, &'w str)> {
        self.suffixes
            .iter()
            .find_map(|&s| split_ending(word, s.0).map(|stem| (s, stem)))
    }
}

impl Default for SuffixTable {
    fn default() -> Self {
        Self::standard()
    }
}

/// The five endings that mark a regular plural.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PluralEnding {
    Un,
    In,
    At,
    An,
    Ha,
}

impl PluralEnding {
    pub const ALL: [PluralEnding; 5] = [
        PluralEnding::Un,
        PluralEnding::In,
        PluralEnding::At,
        PluralEnding::An,
        PluralEnding::Ha,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PluralEnding::Un => "ون",
            PluralEnding::In => "ین",
            PluralEnding::At => "ات",
            PluralEnding::An => "ان",
            PluralEnding::Ha => "ها",
        }
    }
}

impl fmt::Display for PluralEnding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The plural ending `word` carries, if any. The ending must be a proper
/// suffix: something other than a joining ZWNJ has to precede it.
pub fn plural_ending(word: &NormalizedWord) -> Option<PluralEnding> {
    PluralEnding::ALL
        .iter()
        .copied()
        .filter(|e| split_ending(word, e.as_str()).is_some_and(|rest| !rest.is_empty()))
        .max_by_key(|e| e.as_str().chars().count())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StemConfig {
    /// Shortest stem, in characters, that stripping may leave behind.
    pub min_stem_len: NonZeroUsize,
    /// Keep stripping after the first suffix is removed.
    pub iterate: bool,
    /// Upper bound on removals per word in iterate mode.
    pub max_iterations: NonZeroUsize,
}

impl StemConfig {
    pub fn with_min_stem_len(mut self, n: NonZeroUsize) -> Self {
        self.min_stem_len = n;
        self
    }

    pub fn iterative(mut self, max_iterations: NonZeroUsize) -> Self {
        self.iterate = true;
        self.max_iterations = max_iterations;
        self
    }

    fn removals_allowed(&self) -> usize {
        if self.iterate {
            self.max_iterations.get()
        } else {
            1
        }
    }
}

impl Default for StemConfig {
    fn default() -> Self {
        Self {
            min_stem_len: NonZeroUsize::new(2).unwrap(),
            iterate: false,
            max_iterations: NonZeroUsize::new(3).unwrap(),
        }
    }
}

/// Which branch of the pipeline produced a stem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StemMethod {
    LookupIntervening,
    LookupMokassar,
    /// The outermost suffix removed.
    AffixStripped(Suffix),
    Unchanged,
}

impl StemMethod {
    pub fn is_lookup(&self) -> bool {
        matches!(
            self,
            StemMethod::LookupIntervening | StemMethod::LookupMokassar
        )
    }

    pub fn is_stripped(&self) -> bool {
        matches!(self, StemMethod::AffixStripped(_))
    }
}

impl fmt::Display for StemMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StemMethod::LookupIntervening => f.write_str("intervening"),
            StemMethod::LookupMokassar => f.write_str("mokassar"),
            StemMethod::AffixStripped(s) => write!(f, "stripped:{s}"),
            StemMethod::Unchanged => f.write_str("unchanged"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StemResult {
    pub input: NormalizedWord,
    pub stem: NormalizedWord,
    pub method: StemMethod,
    /// Every suffix removed, outermost first. Empty unless stripped; holds
    /// more than one entry only in iterate mode.
    pub removed: Vec<Suffix>,
}

impl StemResult {
    fn unchanged(input: &NormalizedWord, method: StemMethod) -> Self {
        Self {
            input: input.clone(),
            stem: input.clone(),
            method,
            removed: Vec::new(),
        }
    }
}

/// Removes the longest matching suffix (repeatedly, in iterate mode).
///
/// Nothing is removed when no suffix matches or when the longest match
/// would leave fewer than `min_stem_len` characters.
pub fn strip_suffix(word: &NormalizedWord, table: &SuffixTable, config: &StemConfig) -> StemResult {
    let floor = config.min_stem_len.get();
    let mut current: &str = word;
    let mut removed = Vec::new();
    while removed.len() < config.removals_allowed() {
        match table.longest_match(current) {
            Some((suffix, stem)) if stem.chars().count() >= floor => {
                removed.push(suffix);
                current = stem;
            }
            _ => break,
        }
    }
    match removed.first() {
        None => StemResult::unchanged(word, StemMethod::Unchanged),
        Some(&outer) => StemResult {
            input: word.clone(),
            stem: NormalizedWord::from_canonical(current.to_string()),
            method: StemMethod::AffixStripped(outer),
            removed,
        },
    }
}

/// Full pipeline over an already-normalized word.
pub fn stem_normalized(
    word: &NormalizedWord,
    lexicons: &LexiconPair,
    table: &SuffixTable,
    config: &StemConfig,
) -> StemResult {
    match lexicons.lookup(word) {
        Lookup::Intervening => StemResult::unchanged(word, StemMethod::LookupIntervening),
        Lookup::MokassarStem(singular) => StemResult {
            input: word.clone(),
            stem: singular.clone(),
            method: StemMethod::LookupMokassar,
            removed: Vec::new(),
        },
        Lookup::NotFound => strip_suffix(word, table, config),
    }
}

/// Normalizes `raw` and runs the full pipeline.
pub fn stem(
    raw: &str,
    lexicons: &LexiconPair,
    table: &SuffixTable,
    config: &StemConfig,
) -> Result<StemResult, NormalizeError> {
    let word = normalize_word(raw)?;
    Ok(stem_normalized(&word, lexicons, table, config))
}

/// Lexicons, suffix table and configuration bundled together.
#[derive(Debug, Clone, Default)]
pub struct Stemmer {
    pub lexicons: LexiconPair,
    pub table: SuffixTable,
    pub config: StemConfig,
}

impl Stemmer {
    pub fn new(lexicons: LexiconPair, config: StemConfig) -> Self {
        Self {
            lexicons,
            table: SuffixTable::standard(),
            config,
        }
    }

    /// Seed lexicons with the default configuration.
    pub fn with_seed() -> Self {
        Self::new(LexiconPair::seed(), StemConfig::default())
    }

    pub fn stem(&self, raw: &str) -> Result<StemResult, NormalizeError> {
        stem(raw, &self.lexicons, &self.table, &self.config)
    }

    pub fn stem_word(&self, word: &NormalizedWord) -> StemResult {
        stem_normalized(word, &self.lexicons, &self.table, &self.config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> NormalizedWord {
        normalize_word(s).unwrap()
    }

    fn strip(s: &str) -> StemResult {
        strip_suffix(&w(s), &SuffixTable::standard(), &StemConfig::default())
    }

    fn stripped(s: &str) -> (String, StemMethod) {
        let r = strip(s);
        (r.stem.into_string(), r.method)
    }

    fn suffix(s: &str) -> Suffix {
        SuffixTable::standard()
            .iter()
            .find(|x| x.as_str() == s)
            .unwrap()
    }

    #[test]
    fn table_has_thirteen_sorted_by_length() {
        let t = SuffixTable::standard();
        assert_eq!(t.len(), 13);
        let order: Vec<&str> = t.iter().map(|s| s.as_str()).collect();
        assert_eq!(
            order,
            [
                "ترین", "ها", "یی", "تر", "ان", "ات", "ون", "ین", "ی", "ش", "ت", "م", "\u{064B}"
            ]
        );
    }

    #[test]
    fn plural_endings() {
        assert_eq!(plural_ending(&w("مسلمین")), Some(PluralEnding::In));
        assert_eq!(plural_ending(&w("کتاب")), None);
        assert_eq!(plural_ending(&w("گل\u{200C}ها")), Some(PluralEnding::Ha));
        assert_eq!(plural_ending(&w("روحانیون")), Some(PluralEnding::Un));
        assert_eq!(plural_ending(&w("ملاحظات")), Some(PluralEnding::At));
        assert_eq!(plural_ending(&w("گیاهان")), Some(PluralEnding::An));
    }

    #[test]
    fn plural_ending_must_be_proper() {
        assert_eq!(plural_ending(&w("ها")), None);
        assert_eq!(plural_ending(&w("\u{200C}ها")), None);
        assert_eq!(plural_ending(&w("اها")), Some(PluralEnding::Ha));
    }

    #[test]
    fn strips_with_joiner() {
        assert_eq!(
            stripped("گل‌ها"),
            ("گل".into(), StemMethod::AffixStripped(suffix("ها")))
        );
    }

    #[test]
    fn strips_plural_suffixes() {
        assert_eq!(
            stripped("روحانیون"),
            ("روحانی".into(), StemMethod::AffixStripped(suffix("ون")))
        );
        assert_eq!(
            stripped("ملاحظات"),
            ("ملاحظ".into(), StemMethod::AffixStripped(suffix("ات")))
        );
        assert_eq!(
            stripped("گیاهان"),
            ("گیاه".into(), StemMethod::AffixStripped(suffix("ان")))
        );
    }

    #[test]
    fn longest_suffix_wins() {
        assert_eq!(
            stripped("بزرگترین"),
            ("بزرگ".into(), StemMethod::AffixStripped(suffix("ترین")))
        );
        assert_eq!(
            stripped("دانشجویی"),
            ("دانشجو".into(), StemMethod::AffixStripped(suffix("یی")))
        );
    }

    #[test]
    fn floor_blocks_short_stems() {
        assert_eq!(stripped("می"), ("می".into(), StemMethod::Unchanged));
        assert_eq!(stripped("نان"), ("نان".into(), StemMethod::Unchanged));
        assert_eq!(stripped("ها"), ("ها".into(), StemMethod::Unchanged));
        // two characters left is allowed
        assert_eq!(stripped("گلها").0, "گل");
        let cfg = StemConfig::default().with_min_stem_len(NonZeroUsize::new(1).unwrap());
        let r = strip_suffix(&w("می"), &SuffixTable::standard(), &cfg);
        assert_eq!(r.stem.as_str(), "م");
    }

    #[test]
    fn floor_counts_stem_without_joiner() {
        // "ک‌ها": the stem after dropping ZWNJ is one character
        assert_eq!(strip("ک\u{200C}ها").method, StemMethod::Unchanged);
    }

    #[test]
    fn fathatan_suffix() {
        assert_eq!(
            stripped("حتماً"),
            ("حتما".into(), StemMethod::AffixStripped(suffix("\u{064B}")))
        );
    }

    #[test]
    fn no_suffix_unchanged() {
        let r = strip("کتاب");
        assert_eq!(r.method, StemMethod::Unchanged);
        assert_eq!(r.stem, r.input);
        assert!(r.removed.is_empty());
    }

    #[test]
    fn single_pass_by_default() {
        let r = strip("کتابهایم");
        assert_eq!(r.stem.as_str(), "کتابهای");
        assert_eq!(r.removed, vec![suffix("م")]);
    }

    #[test]
    fn iterate_mode() {
        let cfg = StemConfig::default().iterative(NonZeroUsize::new(3).unwrap());
        let r = strip_suffix(&w("کتابهایم"), &SuffixTable::standard(), &cfg);
        // م, then ی, then ها
        assert_eq!(r.stem.as_str(), "کتاب");
        assert_eq!(r.removed, vec![suffix("م"), suffix("ی"), suffix("ها")]);
        assert_eq!(r.method, StemMethod::AffixStripped(suffix("م")));

        let cfg = StemConfig::default().iterative(NonZeroUsize::new(1).unwrap());
        let r = strip_suffix(&w("کتابهایم"), &SuffixTable::standard(), &cfg);
        assert_eq!(r.stem.as_str(), "کتابهای");
    }

    #[test]
    fn iterate_stops_at_floor() {
        let cfg = StemConfig::default().iterative(NonZeroUsize::new(3).unwrap());
        let r = strip_suffix(&w("گیاهان"), &SuffixTable::standard(), &cfg);
        // nothing in the table matches گیاه
        assert_eq!(r.stem.as_str(), "گیاه");
        assert_eq!(r.removed.len(), 1);
    }

    #[test]
    fn pipeline_lookups() {
        let s = Stemmer::with_seed();
        let r = s.stem("قوانین").unwrap();
        assert_eq!(
            (r.stem.as_str(), r.method),
            ("قانون", StemMethod::LookupMokassar)
        );
        let r = s.stem("ستون").unwrap();
        assert_eq!(
            (r.stem.as_str(), r.method),
            ("ستون", StemMethod::LookupIntervening)
        );
        let r = s.stem("جزایر").unwrap();
        assert_eq!(
            (r.stem.as_str(), r.method),
            ("جزیره", StemMethod::LookupMokassar)
        );
        let r = s.stem("گیاهان").unwrap();
        assert_eq!(
            (r.stem.as_str(), r.method),
            ("گیاه", StemMethod::AffixStripped(suffix("ان")))
        );
    }

    #[test]
    fn pipeline_normalizes_first() {
        let s = Stemmer::with_seed();
        // Arabic yeh in the plural still hits the lexicon
        let r = s.stem("قوانين").unwrap();
        assert_eq!(r.method, StemMethod::LookupMokassar);
        assert_eq!(s.stem("  "), Err(NormalizeError::EmptyToken));
    }

    #[test]
    fn digits_are_not_stemmed() {
        let s = Stemmer::with_seed();
        for d in ["۱۳۹۰", "2015", "٣٤"] {
            assert_eq!(s.stem(d).unwrap().method, StemMethod::Unchanged);
        }
    }

    #[test]
    fn method_tags() {
        assert_eq!(StemMethod::LookupMokassar.to_string(), "mokassar");
        assert_eq!(StemMethod::LookupIntervening.to_string(), "intervening");
        assert_eq!(StemMethod::Unchanged.to_string(), "unchanged");
        assert_eq!(
            StemMethod::AffixStripped(suffix("ها")).to_string(),
            "stripped:ها"
        );
    }
}
