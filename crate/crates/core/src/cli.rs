//! `parsistem` command line: `stem`, `freq` and `eval` subcommands.
//!
//! Data goes to stdout, diagnostics to stderr. Exit status is 0 when every
//! input was processed, 1 when some stem inputs were rejected, and 2 when a
//! lexicon, corpus or gold file cannot be read or parsed.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::corpus::{query_counts, FrequencyTable};
use crate::eval::{evaluate, load_gold, EvalReport};
use crate::lexicon::{InterveningLexicon, LexiconError, LexiconPair, MokassarLexicon};
use crate::normalizer::NormalizeError;
use crate::stemmer::{plural_ending, StemConfig, StemResult, Stemmer};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARTIAL: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Tsv,
    Jsonl,
}

#[derive(Debug, Parser)]
#[command(name = "parsistem", version, about = "Hybrid Persian stemmer")]
pub struct Args {
    /// Mokassar (broken plural) lexicon, PLURAL<TAB>SINGULAR per line
    #[arg(long, global = true, value_name = "PATH")]
    pub mokassar: Option<PathBuf>,
    /// Intervening lexicon, one word per line
    #[arg(long, global = true, value_name = "PATH")]
    pub intervening: Option<PathBuf>,
    /// Shortest stem suffix stripping may leave
    #[arg(long, global = true, value_name = "N", default_value = "2")]
    pub min_stem_len: NonZeroUsize,
    /// Keep stripping suffixes until none match
    #[arg(long, global = true)]
    pub iterate: bool,
    /// Removal cap per word with --iterate
    #[arg(long, global = true, value_name = "N", default_value = "3")]
    pub max_iterations: NonZeroUsize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Tsv)]
    pub format: OutputFormat,
    /// Include the plural ending and removed suffixes in stem records
    #[arg(long, global = true)]
    pub trace: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stem words given as arguments, or one per line on stdin
    Stem { words: Vec<String> },
    /// Word frequencies of a corpus, or counts for the given query words
    Freq { corpus: PathBuf, query: Vec<String> },
    /// Score the stemmer against a gold file (WORD<TAB>strip|keep<TAB>[STEM])
    Eval { gold: PathBuf },
}

/// Everything a subcommand needs once flags are resolved and lexicons loaded.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub stemmer: Stemmer,
    pub format: OutputFormat,
    pub trace: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Lexicon { path: PathBuf, source: LexiconError },
    #[error("{path}: {source}")]
    Open { path: PathBuf, source: io::Error },
    #[error("{path}: {message}")]
    Gold { path: PathBuf, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| CliError::Open {
            path: path.to_path_buf(),
            source,
        })
}

fn load_lexicon<T>(
    path: Option<&Path>,
    seed: fn() -> T,
    load: fn(BufReader<File>) -> Result<T, LexiconError>,
) -> Result<T, CliError> {
    match path {
        None => Ok(seed()),
        Some(p) => load(open(p)?).map_err(|source| CliError::Lexicon {
            path: p.to_path_buf(),
            source,
        }),
    }
}

impl CliConfig {
    pub fn from_args(args: &Args) -> Result<Self, CliError> {
        let mokassar = load_lexicon(
            args.mokassar.as_deref(),
            MokassarLexicon::seed,
            MokassarLexicon::load,
        )?;
        let intervening = load_lexicon(
            args.intervening.as_deref(),
            InterveningLexicon::seed,
            InterveningLexicon::load,
        )?;
        let mut config = StemConfig::default().with_min_stem_len(args.min_stem_len);
        if args.iterate {
            config = config.iterative(args.max_iterations);
        }
        Ok(Self {
            stemmer: Stemmer::new(LexiconPair::new(mokassar, intervening), config),
            format: args.format,
            trace: args.trace,
        })
    }
}

pub fn run<I, T>(argv: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&args, stdin, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn execute(
    args: &Args,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let config = CliConfig::from_args(args)?;
    for word in config.stemmer.lexicons.conflicts() {
        writeln!(
            err,
            "warning: {word} is in both lexicons; treating it as intervening"
        )?;
    }
    let code = match &args.command {
        Command::Stem { words } => cmd_stem(words, stdin, &config, out, err)?,
        Command::Freq { corpus, query } => cmd_freq(corpus, query, &config, out)?,
        Command::Eval { gold } => cmd_eval(gold, &config, out)?,
    };
    out.flush()?;
    Ok(code)
}

#[derive(Serialize)]
struct StemRecord<'a> {
    input: &'a str,
    stem: &'a str,
    method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    plural_ending: Option<Option<&'static str>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    removed: Option<Vec<&'static str>>,
}

fn write_stem_record(
    result: &StemResult,
    config: &CliConfig,
    out: &mut dyn Write,
) -> io::Result<()> {
    let ending = plural_ending(&result.input).map(|e| e.as_str());
    let removed: Vec<&'static str> = result.removed.iter().map(|s| s.as_str()).collect();
    match config.format {
        OutputFormat::Tsv => {
            write!(out, "{}\t{}\t{}", result.input, result.stem, result.method)?;
            if config.trace {
                let removed = if removed.is_empty() {
                    "-".to_string()
                } else {
                    removed.join("+")
                };
                write!(out, "\t{}\t{}", ending.unwrap_or("-"), removed)?;
            }
            writeln!(out)
        }
        OutputFormat::Jsonl => {
            let record = StemRecord {
                input: &result.input,
                stem: &result.stem,
                method: result.method.to_string(),
                plural_ending: config.trace.then_some(ending),
                removed: config.trace.then_some(removed),
            };
            serde_json::to_writer(&mut *out, &record)?;
            writeln!(out)
        }
    }
}

/// Stems each word, in input order. Empty lines are skipped with a warning;
/// a line holding more than one token is reported and makes the exit
/// status 1.
pub fn cmd_stem(
    words: &[String],
    stdin: &mut dyn BufRead,
    config: &CliConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let mut inputs: Vec<String> = words.to_vec();
    if inputs.is_empty() {
        for line in stdin.lines() {
            inputs.push(line?);
        }
    }
    let mut code = EXIT_OK;
    for (i, raw) in inputs.iter().enumerate() {
        match config.stemmer.stem(raw) {
            Ok(result) => write_stem_record(&result, config, out)?,
            Err(NormalizeError::EmptyToken) => {
                writeln!(err, "warning: input {}: empty token, skipped", i + 1)?;
            }
            Err(e @ NormalizeError::ContainsWhitespace(_)) => {
                writeln!(err, "error: input {}: {e}", i + 1)?;
                code = EXIT_PARTIAL;
            }
        }
    }
    Ok(code)
}

pub fn cmd_freq(
    corpus: &Path,
    query: &[String],
    config: &CliConfig,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let reader = open(corpus)?;
    let fail = |source| CliError::Open {
        path: corpus.to_path_buf(),
        source,
    };
    let table = FrequencyTable::from_reader(reader).map_err(fail)?;
    let written = if query.is_empty() {
        write_table(&table, config.format, out)
    } else {
        write_query(&table, query, config.format, out)
    };
    written.map_err(fail)?;
    Ok(EXIT_OK)
}

fn write_table(
    table: &FrequencyTable,
    format: OutputFormat,
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        OutputFormat::Tsv => table.write_tsv(out),
        OutputFormat::Jsonl => {
            writeln!(
                out,
                "{}",
                serde_json::json!({ "total": table.total_tokens() })
            )?;
            for (word, count) in table.sorted() {
                writeln!(
                    out,
                    "{}",
                    serde_json::json!({ "word": word.as_str(), "count": count })
                )?;
            }
            Ok(())
        }
    }
}

fn write_query(
    table: &FrequencyTable,
    query: &[String],
    format: OutputFormat,
    out: &mut dyn Write,
) -> io::Result<()> {
    let report = query_counts(table, query);
    match format {
        OutputFormat::Tsv => {
            for row in &report.rows {
                let word = row.word.as_ref().map_or(row.query.as_str(), |w| w.as_str());
                writeln!(out, "{word}\t{}", row.count)?;
            }
            writeln!(out, "#sum\t{}", report.sum)?;
            writeln!(out, "#total\t{}", report.total_tokens)?;
            writeln!(out, "#ratio\t{}", report.ratio)?;
        }
        OutputFormat::Jsonl => {
            for row in &report.rows {
                let word = row.word.as_ref().map_or(row.query.as_str(), |w| w.as_str());
                writeln!(
                    out,
                    "{}",
                    serde_json::json!({ "word": word, "count": row.count })
                )?;
            }
            writeln!(
                out,
                "{}",
                serde_json::json!({
                    "sum": report.sum,
                    "total": report.total_tokens,
                    "ratio": report.ratio,
                })
            )?;
        }
    }
    Ok(())
}

pub fn cmd_eval(
    gold_path: &Path,
    config: &CliConfig,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let gold = load_gold(open(gold_path)?).map_err(|e| CliError::Gold {
        path: gold_path.to_path_buf(),
        message: e.to_string(),
    })?;
    let report = evaluate(&gold, &config.stemmer).map_err(|e| CliError::Gold {
        path: gold_path.to_path_buf(),
        message: e.to_string(),
    })?;
    match config.format {
        OutputFormat::Tsv => report.write_tsv(&mut *out)?,
        OutputFormat::Jsonl => write_eval_jsonl(&report, out)?,
    }
    Ok(EXIT_OK)
}

fn write_eval_jsonl(report: &EvalReport, out: &mut dyn Write) -> io::Result<()> {
    let c = report.counts;
    writeln!(
        out,
        "{}",
        serde_json::json!({
            "tp": c.tp, "tn": c.tn, "fp": c.fp, "fn": c.fn_,
            "sensitivity": report.sensitivity,
            "specificity": report.specificity,
            "accuracy": report.accuracy,
        })
    )?;
    for v in &report.verdicts {
        writeln!(
            out,
            "{}",
            serde_json::json!({
                "word": v.entry.word().as_str(),
                "gold": v.entry.action(),
                "gold_stem": v.entry.gold_stem().map(|s| s.as_str()),
                "stem": v.result.stem.as_str(),
                "method": v.result.method.to_string(),
                "verdict": v.verdict,
            })
        )?;
    }
    Ok(())
}
