//! Corpus-level conversion: discover documents on disk, convert them in
//! parallel, and summarize relation files.
//!
//! A corpus directory holds one file per document in each layer:
//! `dep/<doc>.conllu`, `rst/<doc>.rs4` (or `.rs3`/`.xml`) and optionally
//! `coref/<doc>.tsv` or a single `coref.tsv` mention table.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use log::{error, info};
use rayon::prelude::*;

use crate::cascade::{Converter, Patterns};
use crate::corpus::{align_layers, parse_conllu, parse_coref, parse_rst, Document, MentionTable};
use crate::error::{Error, Result};
use crate::eval::genre_from_doc_id;
use crate::predictor::{BaselineTable, Hints, Predictor};
use crate::relation::{PdtbRelation, RelationType};
use crate::senses::{load_resources, MappingResources};
use crate::spans::ArgOptions;

const RST_EXTENSIONS: [&str; 3] = ["rs4", "rs3", "xml"];

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Where each layer lives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusPaths {
    pub dep_dir: PathBuf,
    pub rst_dir: PathBuf,
    /// Directory of per-document mention files, or one mention table.
    pub coref: Option<PathBuf>,
}

impl CorpusPaths {
    /// Conventional layout under one root.
    pub fn under(root: &Path) -> CorpusPaths {
        let coref = [root.join("coref"), root.join("coref.tsv")]
            .into_iter()
            .find(|p| p.exists());
        CorpusPaths {
            dep_dir: root.join("dep"),
            rst_dir: root.join("rst"),
            coref,
        }
    }
}

/// The files making up one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocSource {
    pub doc_id: String,
    pub conllu: PathBuf,
    pub rst: PathBuf,
    /// Per-document mention file, if the corpus uses a directory.
    pub coref: Option<PathBuf>,
}

/// One source per discourse file, sorted by document id. Documents missing
/// a syntax file are reported as failures rather than dropped silently.
pub fn discover(paths: &CorpusPaths) -> Result<(Vec<DocSource>, Vec<DocFailure>)> {
    let entries = fs::read_dir(&paths.rst_dir).map_err(|e| Error::io(&paths.rst_dir, e))?;
    let mut rst_files: Vec<PathBuf> = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(&paths.rst_dir, e))?.path();
        if path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| RST_EXTENSIONS.contains(&e))
        {
            rst_files.push(path);
        }
    }
    rst_files.sort();
    let coref_dir = paths.coref.as_ref().filter(|p| p.is_dir());
    let mut sources = Vec::new();
    let mut missing = Vec::new();
    for rst in rst_files {
        let Some(doc_id) = rst.file_stem().and_then(|s| s.to_str()).map(str::to_owned) else {
            continue;
        };
        let conllu = paths.dep_dir.join(format!("{doc_id}.conllu"));
        if !conllu.is_file() {
            missing.push((
                doc_id,
                Error::Validation(format!("no syntax file {}", conllu.display())),
            ));
            continue;
        }
        let coref = coref_dir
            .map(|d| d.join(format!("{doc_id}.tsv")))
            .filter(|p| p.is_file());
        sources.push(DocSource {
            doc_id,
            conllu,
            rst,
            coref,
        });
    }
    Ok((sources, missing))
}

/// Mention table shared by every document, when the corpus has one.
pub fn load_mention_table(paths: &CorpusPaths) -> Result<MentionTable> {
    match &paths.coref {
        Some(p) if p.is_file() => parse_coref(read_text(p)?.as_bytes(), &p.display().to_string()),
        _ => Ok(MentionTable::new()),
    }
}

/// Parse and align one document.
pub fn load_document(src: &DocSource, shared: &MentionTable) -> Result<Document> {
    let origin = |p: &Path| p.display().to_string();
    let syntax = parse_conllu(read_text(&src.conllu)?.as_bytes(), &origin(&src.conllu))?;
    let rst = parse_rst(read_text(&src.rst)?.as_bytes(), &origin(&src.rst))?;
    let mentions = match &src.coref {
        Some(p) => parse_coref(read_text(p)?.as_bytes(), &origin(p))?
            .remove(&src.doc_id)
            .unwrap_or_default(),
        None => shared.get(&src.doc_id).cloned().unwrap_or_default(),
    };
    align_layers(&src.doc_id, None, syntax, rst, mentions)
}

/// Resource files; any left unset fall back to the shipped copies.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResourcePaths {
    pub hierarchy: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub map: Option<PathBuf>,
    pub altlex: Option<PathBuf>,
    pub altlexc: Option<PathBuf>,
    pub baseline: Option<PathBuf>,
    pub hints: Option<PathBuf>,
}

fn text_or(path: &Option<PathBuf>, shipped: &'static str, name: &str) -> Result<(String, String)> {
    match path {
        Some(p) => Ok((read_text(p)?, p.display().to_string())),
        None => Ok((shipped.to_owned(), name.to_owned())),
    }
}

impl ResourcePaths {
    pub fn load_resources(&self) -> Result<MappingResources> {
        if let (Some(h), Some(l), Some(m)) = (&self.hierarchy, &self.lexicon, &self.map) {
            return load_resources(h, l, m);
        }
        let h = text_or(&self.hierarchy, crate::senses::SHIPPED_HIERARCHY, "hierarchy.tsv")?;
        let l = text_or(&self.lexicon, crate::senses::SHIPPED_LEXICON, "lexicon.tsv")?;
        let m = text_or(&self.map, crate::senses::SHIPPED_MAP, "rst_map.tsv")?;
        MappingResources::from_texts((&h.0, &h.1), (&l.0, &l.1), (&m.0, &m.1))
    }

    /// Build a converter from these files.
    pub fn converter(&self, threshold: f64, options: ArgOptions) -> Result<Converter> {
        let resources = self.load_resources()?;
        let a = text_or(&self.altlex, crate::cascade::SHIPPED_ALTLEX, "altlex.tsv")?;
        let c = text_or(&self.altlexc, crate::cascade::SHIPPED_ALTLEXC, "altlexc.tsv")?;
        let patterns = Patterns::from_texts((&a.0, &a.1), (&c.0, &c.1), &resources.hierarchy)?;
        let b = text_or(&self.baseline, crate::predictor::SHIPPED_BASELINE, "baseline.tsv")?;
        let baseline = BaselineTable::parse(&b.0, &b.1)?;
        let hints = match &self.hints {
            Some(p) => Hints::parse(&read_text(p)?, &p.display().to_string(), &resources.hierarchy)?,
            None => Hints::default(),
        };
        Ok(Converter {
            patterns,
            predictor: Predictor::new(baseline, hints, threshold),
            options,
            resources,
        })
    }
}

/// Settings for a corpus run besides the resources.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvertSettings {
    /// Truncate emitted senses to this depth (1 to 3).
    pub sense_level: u8,
    /// Only convert documents of this genre.
    pub genre: Option<String>,
    /// Worker threads; 0 lets the pool decide.
    pub workers: usize,
}

impl Default for ConvertSettings {
    fn default() -> Self {
        ConvertSettings {
            sense_level: 3,
            genre: None,
            workers: 0,
        }
    }
}

/// A document id with the error that stopped it.
pub type DocFailure = (String, Error);

/// Relations from every converted document plus per-document failures.
#[derive(Debug, Default)]
pub struct ConvertOutcome {
    pub relations: Vec<PdtbRelation>,
    pub converted: usize,
    pub skipped: usize,
    pub failures: Vec<DocFailure>,
}

impl ConvertOutcome {
    /// 0 on success, 2 if any document failed.
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            0
        } else {
            2
        }
    }
}

fn truncate_senses(relations: &mut [PdtbRelation], level: u8) {
    if level >= 3 {
        return;
    }
    for r in relations {
        let mut out = Vec::new();
        for s in r.senses.drain(..) {
            let t = s.truncated(level);
            if !out.contains(&t) {
                out.push(t);
            }
        }
        r.senses = out;
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Validation(format!("cannot start worker pool: {e}")))
}

/// Convert in-memory documents in parallel; output order follows input order.
pub fn convert_documents(docs: &[Document], conv: &Converter, settings: &ConvertSettings) -> Result<Vec<PdtbRelation>> {
    let per_doc: Vec<Vec<PdtbRelation>> = pool(settings.workers)?.install(|| {
        docs.par_iter()
            .map(|d| {
                let mut rels = conv.convert(d);
                truncate_senses(&mut rels, settings.sense_level);
                rels
            })
            .collect()
    });
    Ok(per_doc.into_iter().flatten().collect())
}

/// Load and convert every document, logging and skipping the ones that fail.
pub fn convert_corpus(paths: &CorpusPaths, conv: &Converter, settings: &ConvertSettings) -> Result<ConvertOutcome> {
    let (sources, mut failures) = discover(paths)?;
    let shared = load_mention_table(paths)?;
    let results: Vec<(String, Result<Option<Vec<PdtbRelation>>>)> = pool(settings.workers)?.install(|| {
        sources
            .par_iter()
            .map(|src| {
                let r = load_document(src, &shared).map(|doc| {
                    if settings.genre.as_ref().is_some_and(|g| !g.eq_ignore_ascii_case(&doc.genre)) {
                        return None;
                    }
                    let mut rels = conv.convert(&doc);
                    truncate_senses(&mut rels, settings.sense_level);
                    Some(rels)
                });
                (src.doc_id.clone(), r)
            })
            .collect()
    });
    let mut outcome = ConvertOutcome::default();
    for (doc_id, r) in results {
        match r {
            Ok(Some(rels)) => {
                info!("{doc_id}: {} relations", rels.len());
                outcome.converted += 1;
                outcome.relations.extend(rels);
            }
            Ok(None) => outcome.skipped += 1,
            Err(e) => failures.push((doc_id, e)),
        }
    }
    for (doc_id, e) in &failures {
        error!("{doc_id}: {e}");
    }
    failures.sort_by(|a, b| a.0.cmp(&b.0));
    outcome.failures = failures;
    Ok(outcome)
}

/// Relation counts per genre and type.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationStats {
    pub counts: BTreeMap<String, BTreeMap<RelationType, usize>>,
}

impl RelationStats {
    pub fn count(&self, genre: &str, rel_type: RelationType) -> usize {
        self.counts.get(genre).and_then(|m| m.get(&rel_type)).copied().unwrap_or(0)
    }

    pub fn total(&self, rel_type: RelationType) -> usize {
        self.counts.values().filter_map(|m| m.get(&rel_type)).sum()
    }

    pub fn grand_total(&self) -> usize {
        self.counts.values().flat_map(|m| m.values()).sum()
    }

    /// Types as columns, one row per genre, then a total row.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("genre");
        for t in RelationType::ALL {
            let _ = write!(out, "\t{t}");
        }
        out.push_str("\ttotal\n");
        let row = |out: &mut String, name: &str, n: &dyn Fn(RelationType) -> usize| {
            out.push_str(name);
            for t in RelationType::ALL {
                let _ = write!(out, "\t{}", n(t));
            }
            let _ = writeln!(out, "\t{}", RelationType::ALL.iter().map(|&t| n(t)).sum::<usize>());
        };
        for genre in self.counts.keys() {
            row(&mut out, genre, &|t| self.count(genre, t));
        }
        row(&mut out, "total", &|t| self.total(t));
        out
    }
}

pub fn relation_stats(relations: &[PdtbRelation], genre_of: &dyn Fn(&str) -> String) -> RelationStats {
    let mut stats = RelationStats::default();
    for r in relations {
        *stats
            .counts
            .entry(genre_of(&r.doc_id))
            .or_default()
            .entry(r.rel_type)
            .or_insert(0) += 1;
    }
    stats
}

/// Stats keyed by the genre in GUM-style document ids.
pub fn relation_stats_by_id(relations: &[PdtbRelation]) -> RelationStats {
    relation_stats(relations, &genre_from_doc_id)
}
