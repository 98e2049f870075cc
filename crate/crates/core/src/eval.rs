//! Confusion-matrix evaluation of the stemmer against a labeled word list.
//!
//! Gold files are UTF-8 TSV, `WORD<TAB>ACTION<TAB>[STEM]`, where ACTION is
//! `strip` (STEM required) or `keep`. Classification:
//!
//! | result                      | strip                 | keep |
//! |-----------------------------|-----------------------|------|
//! | stripped, stem = gold stem  | TP                    | FP   |
//! | stripped, other stem        | FN                    | FP   |
//! | mokassar, stem = gold stem  | TN                    | TN   |
//! | mokassar, other stem        | FN                    | TN   |
//! | intervening                 | FN                    | TN   |
//! | unchanged                   | FN                    | TN   |

use std::fmt;
use std::io::{self, BufRead, Write};

use serde::Serialize;
use thiserror::Error;

use crate::normalizer::{normalize_word, NormalizeError, NormalizedWord};
use crate::stemmer::{StemMethod, StemResult, Stemmer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GoldAction {
    #[serde(rename = "strip")]
    ShouldStrip,
    #[serde(rename = "keep")]
    ShouldNotStrip,
}

impl GoldAction {
    pub fn as_str(&self) -> &'static str {
        match self {
            GoldAction::ShouldStrip => "strip",
            GoldAction::ShouldNotStrip => "keep",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldEntry {
    word: NormalizedWord,
    action: GoldAction,
    stem: Option<NormalizedWord>,
}

impl GoldEntry {
    pub fn strip(word: NormalizedWord, stem: NormalizedWord) -> Result<Self, EvalError> {
        if word == stem {
            return Err(EvalError::StemEqualsWord(word));
        }
        Ok(Self {
            word,
            action: GoldAction::ShouldStrip,
            stem: Some(stem),
        })
    }

    pub fn keep(word: NormalizedWord) -> Self {
        Self {
            word,
            action: GoldAction::ShouldNotStrip,
            stem: None,
        }
    }

    pub fn word(&self) -> &NormalizedWord {
        &self.word
    }

    pub fn action(&self) -> GoldAction {
        self.action
    }

    pub fn gold_stem(&self) -> Option<&NormalizedWord> {
        self.stem.as_ref()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    TP,
    TN,
    FP,
    FN,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::TP => "TP",
            Verdict::TN => "TN",
            Verdict::FP => "FP",
            Verdict::FN => "FN",
        })
    }
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("result for {got} does not belong to gold word {expected}")]
    WordMismatch {
        expected: NormalizedWord,
        got: NormalizedWord,
    },
    #[error("gold stem for {0} equals the word itself")]
    StemEqualsWord(NormalizedWord),
    #[error("gold set is empty")]
    EmptyGold,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("read failed: {0}")]
    Io(#[from] io::Error),
}

pub fn classify(entry: &GoldEntry, result: &StemResult) -> Result<Verdict, EvalError> {
    if result.input != entry.word {
        return Err(EvalError::WordMismatch {
            expected: entry.word.clone(),
            got: result.input.clone(),
        });
    }
    let right_stem = entry.stem.as_ref() == Some(&result.stem);
    let verdict = match (entry.action, result.method) {
        (GoldAction::ShouldNotStrip, StemMethod::AffixStripped(_)) => Verdict::FP,
        (GoldAction::ShouldNotStrip, _) => Verdict::TN,
        (GoldAction::ShouldStrip, StemMethod::AffixStripped(_)) if right_stem => Verdict::TP,
        (GoldAction::ShouldStrip, StemMethod::LookupMokassar) if right_stem => Verdict::TN,
        (GoldAction::ShouldStrip, _) => Verdict::FN,
    };
    Ok(verdict)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EvalCounts {
    pub tp: u64,
    pub tn: u64,
    pub fp: u64,
    pub fn_: u64,
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den != 0).then(|| num as f64 / den as f64)
}

impl EvalCounts {
    pub fn new(tp: u64, tn: u64, fp: u64, fn_: u64) -> Self {
        Self { tp, tn, fp, fn_ }
    }

    pub fn record(&mut self, v: Verdict) {
        match v {
            Verdict::TP => self.tp += 1,
            Verdict::TN => self.tn += 1,
            Verdict::FP => self.fp += 1,
            Verdict::FN => self.fn_ += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.tp + self.tn + self.fp + self.fn_
    }

    /// TP / (TP + FN); `None` when no word needed stripping.
    pub fn sensitivity(&self) -> Option<f64> {
        ratio(self.tp, self.tp + self.fn_)
    }

    /// TN / (TN + FP); `None` when no word should have been left alone.
    pub fn specificity(&self) -> Option<f64> {
        ratio(self.tn, self.tn + self.fp)
    }

    pub fn accuracy(&self) -> Option<f64> {
        ratio(self.tp + self.tn, self.total())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WordVerdict {
    pub entry: GoldEntry,
    pub result: StemResult,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub counts: EvalCounts,
    pub sensitivity: Option<f64>,
    pub specificity: Option<f64>,
    pub accuracy: Option<f64>,
    pub verdicts: Vec<WordVerdict>,
}

impl EvalReport {
    fn from_verdicts(verdicts: Vec<WordVerdict>) -> Self {
        let mut counts = EvalCounts::default();
        for v in &verdicts {
            counts.record(v.verdict);
        }
        Self {
            counts,
            sensitivity: counts.sensitivity(),
            specificity: counts.specificity(),
            accuracy: counts.accuracy(),
            verdicts,
        }
    }

    /// Summary lines prefixed with `#`, then one TSV row per gold word.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let c = &self.counts;
        writeln!(out, "#tp\t{}", c.tp)?;
        writeln!(out, "#tn\t{}", c.tn)?;
        writeln!(out, "#fp\t{}", c.fp)?;
        writeln!(out, "#fn\t{}", c.fn_)?;
        writeln!(out, "#sensitivity\t{}", fmt_ratio(self.sensitivity))?;
        writeln!(out, "#specificity\t{}", fmt_ratio(self.specificity))?;
        writeln!(out, "#accuracy\t{}", fmt_ratio(self.accuracy))?;
        writeln!(out, "word\tgold\tgold_stem\tstem\tmethod\tverdict")?;
        for v in &self.verdicts {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                v.entry.word,
                v.entry.action.as_str(),
                v.entry.stem.as_ref().map_or("", |s| s.as_str()),
                v.result.stem,
                v.result.method,
                v.verdict
            )?;
        }
        Ok(())
    }
}

/// Four decimal places, or `-` when undefined.
pub fn fmt_ratio(r: Option<f64>) -> String {
    r.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"))
}

pub fn evaluate(gold: &[GoldEntry], stemmer: &Stemmer) -> Result<EvalReport, EvalError> {
    if gold.is_empty() {
        return Err(EvalError::EmptyGold);
    }
    let verdicts = gold
        .iter()
        .map(|entry| {
            let result = stemmer.stem_word(&entry.word);
            let verdict = classify(entry, &result)?;
            Ok(WordVerdict {
                entry: entry.clone(),
                result,
                verdict,
            })
        })
        .collect::<Result<Vec<_>, EvalError>>()?;
    Ok(EvalReport::from_verdicts(verdicts))
}

fn parse_word(line: usize, what: &str, raw: &str) -> Result<NormalizedWord, EvalError> {
    normalize_word(raw).map_err(|e| EvalError::Parse {
        line,
        message: match e {
            NormalizeError::EmptyToken => format!("empty {what}"),
            NormalizeError::ContainsWhitespace(w) => format!("{what} {w:?} contains whitespace"),
        },
    })
}

/// Reads a gold file. Errors carry the 1-based line number.
pub fn load_gold<R: BufRead>(source: R) -> Result<Vec<GoldEntry>, EvalError> {
    let mut gold = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if !(2..=3).contains(&cols.len()) {
            return Err(EvalError::Parse {
                line: line_no,
                message: format!(
                    "expected 2 or 3 tab-separated columns, found {}",
                    cols.len()
                ),
            });
        }
        let word = parse_word(line_no, "word", cols[0])?;
        let stem_col = cols.get(2).map(|s| s.trim()).filter(|s| !s.is_empty());
        let entry = match cols[1].trim() {
            "strip" => {
                let raw = stem_col.ok_or_else(|| EvalError::Parse {
                    line: line_no,
                    message: "strip entry needs a stem".to_string(),
                })?;
                let stem = parse_word(line_no, "stem", raw)?;
                GoldEntry::strip(word, stem).map_err(|e| EvalError::Parse {
                    line: line_no,
                    message: e.to_string(),
                })?
            }
            "keep" => {
                let stem = stem_col
                    .map(|s| parse_word(line_no, "stem", s))
                    .transpose()?;
                GoldEntry {
                    word,
                    action: GoldAction::ShouldNotStrip,
                    stem,
                }
            }
            other => {
                return Err(EvalError::Parse {
                    line: line_no,
                    message: format!("unknown action {other:?} (expected strip or keep)"),
                })
            }
        };
        gold.push(entry);
    }
    Ok(gold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::LexiconPair;
    use crate::stemmer::StemConfig;

    fn w(s: &str) -> NormalizedWord {
        normalize_word(s).unwrap()
    }

    fn seeded() -> Stemmer {
        Stemmer::with_seed()
    }

    fn bare() -> Stemmer {
        Stemmer::new(LexiconPair::empty(), StemConfig::default())
    }

    #[test]
    fn stripped_with_right_stem_is_tp() {
        let e = GoldEntry::strip(w("گیاهان"), w("گیاه")).unwrap();
        let r = seeded().stem_word(e.word());
        assert_eq!(classify(&e, &r).unwrap(), Verdict::TP);
    }

    #[test]
    fn intervening_keep_is_tn() {
        let e = GoldEntry::keep(w("ستون"));
        let r = seeded().stem_word(e.word());
        assert_eq!(r.method, StemMethod::LookupIntervening);
        assert_eq!(classify(&e, &r).unwrap(), Verdict::TN);
    }

    #[test]
    fn stripped_keep_word_is_fp() {
        let e = GoldEntry::keep(w("آبادان"));
        let r = bare().stem_word(e.word());
        assert!(r.method.is_stripped());
        assert_eq!(classify(&e, &r).unwrap(), Verdict::FP);
    }

    #[test]
    fn mokassar_with_matching_stem_is_tn() {
        let e = GoldEntry::strip(w("قوانین"), w("قانون")).unwrap();
        let r = seeded().stem_word(e.word());
        assert_eq!(classify(&e, &r).unwrap(), Verdict::TN);
        let e = GoldEntry::strip(w("قوانین"), w("قانونی")).unwrap();
        assert_eq!(classify(&e, &r).unwrap(), Verdict::FN);
    }

    #[test]
    fn misses_are_fn() {
        // unchanged
        let e = GoldEntry::strip(w("کتب"), w("کتاب")).unwrap();
        assert_eq!(
            classify(&e, &seeded().stem_word(e.word())).unwrap(),
            Verdict::FN
        );
        // stripped to the wrong stem
        let e = GoldEntry::strip(w("ملاحظات"), w("ملاحظه")).unwrap();
        assert_eq!(
            classify(&e, &seeded().stem_word(e.word())).unwrap(),
            Verdict::FN
        );
        // exempted by the Intervening list
        let e = GoldEntry::strip(w("آبان"), w("آب")).unwrap();
        assert_eq!(
            classify(&e, &seeded().stem_word(e.word())).unwrap(),
            Verdict::FN
        );
    }

    #[test]
    fn unchanged_keep_is_tn() {
        let e = GoldEntry::keep(w("کتاب"));
        assert_eq!(
            classify(&e, &seeded().stem_word(e.word())).unwrap(),
            Verdict::TN
        );
    }

    #[test]
    fn mismatch_detected() {
        let e = GoldEntry::keep(w("کتاب"));
        let r = seeded().stem_word(&w("ستون"));
        assert!(matches!(
            classify(&e, &r),
            Err(EvalError::WordMismatch { .. })
        ));
    }

    #[test]
    fn strip_entry_needs_distinct_stem() {
        assert!(matches!(
            GoldEntry::strip(w("کتاب"), w("كتاب")),
            Err(EvalError::StemEqualsWord(_))
        ));
    }

    #[test]
    fn metric_formulas() {
        let c = EvalCounts::new(13, 83, 3, 0);
        assert_eq!(c.total(), 99);
        assert_eq!(c.sensitivity(), Some(1.0));
        assert!((c.specificity().unwrap() - 83.0 / 86.0).abs() < 1e-12);
        assert!((c.accuracy().unwrap() - 96.0 / 99.0).abs() < 1e-12);
    }

    #[test]
    fn undefined_ratios_absent() {
        let c = EvalCounts::new(0, 5, 0, 0);
        assert_eq!(c.sensitivity(), None);
        assert_eq!(c.specificity(), Some(1.0));
        assert_eq!(c.accuracy(), Some(1.0));
        assert_eq!(EvalCounts::default().accuracy(), None);
        assert_eq!(fmt_ratio(None), "-");
    }

    #[test]
    fn evaluate_all_tn() {
        let gold: Vec<_> = ["ستون", "دین", "کتاب"]
            .iter()
            .map(|s| GoldEntry::keep(w(s)))
            .collect();
        let r = evaluate(&gold, &seeded()).unwrap();
        assert_eq!(r.counts, EvalCounts::new(0, 3, 0, 0));
        assert_eq!(r.accuracy, Some(1.0));
        assert_eq!(r.sensitivity, None);
        assert_eq!(r.verdicts.len(), 3);
    }

    #[test]
    fn evaluate_rejects_empty() {
        assert!(matches!(
            evaluate(&[], &seeded()),
            Err(EvalError::EmptyGold)
        ));
    }

    #[test]
    fn gold_parsing() {
        let src =
            "# header\nگیاهان\tstrip\tگیاه\nستون\tkeep\n\nحوادث\tkeep\tحادثه\r\nآبان\tkeep\t\n";
        let gold = load_gold(src.as_bytes()).unwrap();
        assert_eq!(gold.len(), 4);
        assert_eq!(gold[0].action(), GoldAction::ShouldStrip);
        assert_eq!(gold[0].gold_stem(), Some(&w("گیاه")));
        assert_eq!(gold[1].gold_stem(), None);
        assert_eq!(gold[2].gold_stem(), Some(&w("حادثه")));
        assert_eq!(gold[3].gold_stem(), None);
    }

    #[test]
    fn gold_parse_errors_carry_line() {
        let cases = [
            ("a\tstrip\tb\nکتاب\tstrip\n", 2),
            ("کتاب\tmaybe\n", 1),
            ("\n\nکتاب\n", 3),
            ("x\tkeep\na\tb\tc\td\n", 2),
            ("کتاب\tstrip\tكتاب\n", 1),
            ("\tkeep\n", 1),
        ];
        for (src, line) in cases {
            match load_gold(src.as_bytes()) {
                Err(EvalError::Parse { line: l, .. }) => assert_eq!(l, line, "{src:?}"),
                other => panic!("{src:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn report_tsv() {
        let gold = vec![
            GoldEntry::strip(w("گیاهان"), w("گیاه")).unwrap(),
            GoldEntry::keep(w("ستون")),
        ];
        let r = evaluate(&gold, &seeded()).unwrap();
        let mut out = Vec::new();
        r.write_tsv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("#tp\t1\n#tn\t1\n#fp\t0\n#fn\t0\n#sensitivity\t1.0000\n"));
        assert!(text.contains("گیاهان\tstrip\tگیاه\tگیاه\tstripped:ان\tTP\n"));
        assert!(text.ends_with("ستون\tkeep\t\tستون\tintervening\tTN\n"));
    }
}
