//! Command-line front end: `convert`, `evaluate` and `stats`.
//!
//! Settings come from flags and an optional TOML file whose keys mirror the
//! long flag names with underscores; flags win.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use log::{error, info, warn};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::eval::{genre_from_doc_id, EvalOptions, EvalReport};
use crate::pipeline::{convert_corpus, read_text, relation_stats_by_id, ConvertSettings, CorpusPaths, ResourcePaths};
use crate::predictor::DEFAULT_SENSE_THRESHOLD;
use crate::relation::PdtbRelation;
use crate::relfile::{parse_relations, write_relations};
use crate::senses::Hierarchy;
use crate::spans::ArgOptions;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "rst2pdtb", version, about = "Convert eRST treebanks into shallow discourse relations")]
pub struct Cli {
    /// TOML file with default settings.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert a corpus into a relation file.
    Convert(Box<RunConfig>),
    /// Score a predicted relation file against gold.
    Evaluate(EvaluateArgs),
    /// Count relations by type and genre.
    Stats(StatsArgs),
}

/// Settings for a conversion run.
#[derive(Debug, Clone, Default, PartialEq, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Corpus root with dep/, rst/ and optional coref/ or coref.tsv.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Directory of dependency files, overriding <corpus>/dep.
    #[arg(long)]
    pub dep_dir: Option<PathBuf>,
    /// Directory of discourse files, overriding <corpus>/rst.
    #[arg(long)]
    pub rst_dir: Option<PathBuf>,
    /// Mention directory or table.
    #[arg(long)]
    pub coref: Option<PathBuf>,
    /// Sense hierarchy table replacing the shipped one.
    #[arg(long)]
    pub hierarchy: Option<PathBuf>,
    /// Connective lexicon replacing the shipped one.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// RST label to sense table replacing the shipped one.
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// AltLex phrase patterns replacing the shipped ones.
    #[arg(long)]
    pub altlex: Option<PathBuf>,
    /// AltLexC construction table replacing the shipped one.
    #[arg(long)]
    pub altlexc: Option<PathBuf>,
    /// Implicit connective baseline replacing the shipped one.
    #[arg(long)]
    pub baseline: Option<PathBuf>,
    /// Connective and sense predictions from an external classifier.
    #[arg(long)]
    pub hints: Option<PathBuf>,
    /// Output file; standard output if absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Keep connective tokens inside the argument hosting them.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub include_connective: Option<bool>,
    /// Depth of emitted senses, 1 to 3.
    #[arg(long)]
    pub sense_level: Option<u8>,
    /// Probability a second sense must exceed.
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Only convert documents of this genre.
    #[arg(long)]
    pub genre: Option<String>,
    /// Worker threads; 0 picks one per core.
    #[arg(long)]
    pub workers: Option<usize>,
}

impl RunConfig {
    pub fn from_toml(path: &Path) -> Result<RunConfig> {
        let text = read_text(path)?;
        toml::from_str(&text).map_err(|e| {
            let (line, column) = e
                .span()
                .map(|s| {
                    let before = &text[..s.start];
                    (before.matches('\n').count() + 1, s.start - before.rfind('\n').map_or(0, |i| i + 1) + 1)
                })
                .unwrap_or((0, 0));
            Error::parse(&path.display().to_string(), line, column, e.message().to_owned())
        })
    }

    /// Fill every unset field from `base`.
    pub fn or(self, base: RunConfig) -> RunConfig {
        RunConfig {
            corpus: self.corpus.or(base.corpus),
            dep_dir: self.dep_dir.or(base.dep_dir),
            rst_dir: self.rst_dir.or(base.rst_dir),
            coref: self.coref.or(base.coref),
            hierarchy: self.hierarchy.or(base.hierarchy),
            lexicon: self.lexicon.or(base.lexicon),
            map: self.map.or(base.map),
            altlex: self.altlex.or(base.altlex),
            altlexc: self.altlexc.or(base.altlexc),
            baseline: self.baseline.or(base.baseline),
            hints: self.hints.or(base.hints),
            output: self.output.or(base.output),
            include_connective: self.include_connective.or(base.include_connective),
            sense_level: self.sense_level.or(base.sense_level),
            threshold: self.threshold.or(base.threshold),
            genre: self.genre.or(base.genre),
            workers: self.workers.or(base.workers),
        }
    }

    pub fn resource_paths(&self) -> ResourcePaths {
        ResourcePaths {
            hierarchy: self.hierarchy.clone(),
            lexicon: self.lexicon.clone(),
            map: self.map.clone(),
            altlex: self.altlex.clone(),
            altlexc: self.altlexc.clone(),
            baseline: self.baseline.clone(),
            hints: self.hints.clone(),
        }
    }

    /// Corpus layout, checked to exist.
    pub fn corpus_paths(&self) -> Result<CorpusPaths> {
        let mut paths = match &self.corpus {
            Some(root) => CorpusPaths::under(root),
            None => CorpusPaths {
                dep_dir: self.dep_dir.clone().ok_or_else(|| missing("--dep-dir or --corpus"))?,
                rst_dir: self.rst_dir.clone().ok_or_else(|| missing("--rst-dir or --corpus"))?,
                coref: None,
            },
        };
        if let Some(d) = &self.dep_dir {
            paths.dep_dir = d.clone();
        }
        if let Some(d) = &self.rst_dir {
            paths.rst_dir = d.clone();
        }
        if let Some(c) = &self.coref {
            paths.coref = Some(c.clone());
        }
        for dir in [&paths.dep_dir, &paths.rst_dir] {
            if !dir.is_dir() {
                return Err(Error::Validation(format!("{} is not a directory", dir.display())));
            }
        }
        Ok(paths)
    }

    /// Check ranges and that every named file exists.
    pub fn validate(&self) -> Result<()> {
        if let Some(t) = self.threshold {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::Validation(format!("threshold {t} is outside [0, 1]")));
            }
        }
        if let Some(l) = self.sense_level {
            if !(1..=3).contains(&l) {
                return Err(Error::Validation(format!("sense level {l} is not 1, 2 or 3")));
            }
        }
        let files = [
            &self.hierarchy,
            &self.lexicon,
            &self.map,
            &self.altlex,
            &self.altlexc,
            &self.baseline,
            &self.hints,
            &self.coref,
        ];
        for p in files.into_iter().flatten() {
            if !p.exists() {
                return Err(Error::Validation(format!("{} does not exist", p.display())));
            }
        }
        Ok(())
    }

    pub fn settings(&self) -> ConvertSettings {
        ConvertSettings {
            sense_level: self.sense_level.unwrap_or(3),
            genre: self.genre.clone(),
            workers: self.workers.unwrap_or(0),
        }
    }
}

fn missing(what: &str) -> Error {
    Error::Validation(format!("missing {what}"))
}

#[derive(Debug, Clone, Args)]
pub struct EvaluateArgs {
    /// Predicted relation file.
    #[arg(long)]
    pub pred: PathBuf,
    /// Gold relation file.
    #[arg(long)]
    pub gold: PathBuf,
    /// Sense depth compared under exact match.
    #[arg(long)]
    pub level: Option<u8>,
    /// Require all senses to match rather than any.
    #[arg(long)]
    pub strict: bool,
    /// Directory for the report files.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Sense hierarchy table replacing the shipped one.
    #[arg(long)]
    pub hierarchy: Option<PathBuf>,
    /// Lexicon for fuzzy connective matching.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    /// Relation file.
    pub file: PathBuf,
    /// Output file; standard output if absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Sense hierarchy table replacing the shipped one.
    #[arg(long)]
    pub hierarchy: Option<PathBuf>,
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::io(p, e)),
        None => io::stdout().lock().write_all(text.as_bytes()).map_err(Error::from),
    }
}

fn load_hierarchy(path: Option<&Path>) -> Result<Hierarchy> {
    match path {
        Some(p) => Hierarchy::parse(&read_text(p)?, &p.display().to_string()),
        None => Ok(crate::senses::shipped_hierarchy().clone()),
    }
}

pub fn read_relation_file(path: &Path, hierarchy: &Hierarchy) -> Result<Vec<PdtbRelation>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_relations(io::BufReader::new(file), hierarchy, &path.display().to_string())
}

/// Convert a corpus; returns the exit code.
pub fn cmd_convert(config: &RunConfig) -> Result<i32> {
    config.validate()?;
    let paths = config.corpus_paths()?;
    let conv = config.resource_paths().converter(
        config.threshold.unwrap_or(DEFAULT_SENSE_THRESHOLD),
        ArgOptions {
            include_connective: config.include_connective.unwrap_or(false),
        },
    )?;
    let outcome = convert_corpus(&paths, &conv, &config.settings())?;
    write_out(config.output.as_deref(), &write_relations(&outcome.relations))?;
    info!(
        "converted {} documents into {} relations; {} skipped by genre, {} failed",
        outcome.converted,
        outcome.relations.len(),
        outcome.skipped,
        outcome.failures.len()
    );
    if !outcome.failures.is_empty() {
        warn!("failed documents: {}", outcome.failures.iter().map(|f| f.0.as_str()).collect::<Vec<_>>().join(", "));
    }
    Ok(outcome.exit_code())
}

/// Score two relation files; returns the report.
pub fn cmd_evaluate(args: &EvaluateArgs, config: &RunConfig) -> Result<EvalReport> {
    let hierarchy_path = args.hierarchy.as_ref().or(config.hierarchy.as_ref());
    let hierarchy = load_hierarchy(hierarchy_path.map(PathBuf::as_path))?;
    let pred = read_relation_file(&args.pred, &hierarchy)?;
    let gold = read_relation_file(&args.gold, &hierarchy)?;
    let level = args.level.or(config.sense_level).unwrap_or(2);
    if !(1..=3).contains(&level) {
        return Err(Error::Validation(format!("sense level {level} is not 1, 2 or 3")));
    }
    let resources = match args.lexicon.as_ref().or(config.lexicon.as_ref()) {
        Some(lex) => Some(
            ResourcePaths {
                hierarchy: hierarchy_path.cloned(),
                lexicon: Some(lex.clone()),
                ..Default::default()
            }
            .load_resources()?,
        ),
        None => Some(crate::senses::MappingResources::shipped()),
    };
    let report = EvalReport::build(
        &pred,
        &gold,
        EvalOptions {
            level,
            strict: args.strict,
        },
        resources.as_ref().map(|r| &r.lexicon),
        &genre_from_doc_id,
    )?;
    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let mut files = vec![
            ("scores.tsv", report.scores_tsv()),
            ("confusion.tsv", report.confusion.to_tsv()),
            ("genres.tsv", report.genres.to_tsv()),
            ("summary.txt", report.to_text()),
        ];
        if let Some(c) = report.connectives_tsv() {
            files.push(("connectives.tsv", c));
        }
        for (name, text) in files {
            let p = dir.join(name);
            fs::write(&p, text).map_err(|e| Error::io(&p, e))?;
        }
    }
    Ok(report)
}

/// Count relations by genre and type; returns the TSV table.
pub fn cmd_stats(args: &StatsArgs, config: &RunConfig) -> Result<String> {
    let hierarchy_path = args.hierarchy.as_ref().or(config.hierarchy.as_ref());
    let hierarchy = load_hierarchy(hierarchy_path.map(PathBuf::as_path))?;
    let rels = read_relation_file(&args.file, &hierarchy)?;
    Ok(relation_stats_by_id(&rels).to_tsv())
}

fn dispatch(cli: Cli) -> Result<i32> {
    let file_config = match &cli.config {
        Some(p) => RunConfig::from_toml(p)?,
        None => RunConfig::default(),
    };
    match cli.command {
        Command::Convert(flags) => cmd_convert(&flags.or(file_config)),
        Command::Evaluate(args) => {
            let report = cmd_evaluate(&args, &file_config)?;
            write_out(None, &report.to_text())?;
            Ok(EXIT_OK)
        }
        Command::Stats(args) => {
            let table = cmd_stats(&args, &file_config)?;
            write_out(args.output.as_deref(), &table)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parse arguments, run, and map errors to exit codes.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            error!("{e}");
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}
