//! Implicit connective prediction and sense disambiguation.
//!
//! The in-process predictor is a majority baseline: the most frequent
//! implicit connective per RST label. External models plug in through a
//! hints file keyed by document and argument spans.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::corpus::RstLabel;
use crate::error::{Error, Result};
use crate::relation::{PdtbRelation, RelationType};
use crate::senses::{normalize_connective, Hierarchy, SenseLabel};
use crate::span::TokenSpan;

pub const SHIPPED_BASELINE: &str = include_str!("../data/baseline.tsv");

/// Connective used for labels the table has never seen.
pub const GLOBAL_DEFAULT_CONNECTIVE: &str = "and";

pub const DEFAULT_SENSE_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaselineEntry {
    pub connective: String,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BaselineTable {
    entries: BTreeMap<RstLabel, BaselineEntry>,
    /// Where the counts came from.
    pub provenance: String,
}

impl BaselineTable {
    pub fn parse(text: &str, origin: &str) -> Result<BaselineTable> {
        let mut table = BaselineTable {
            provenance: origin.to_owned(),
            ..Default::default()
        };
        for (n, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if let Some(p) = trimmed.strip_prefix("# provenance:") {
                table.provenance = p.trim().to_owned();
                continue;
            }
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split('\t').map(str::trim).collect();
            if f.len() != 3 {
                return Err(Error::parse(origin, n + 1, 1, format!("expected 3 columns, found {}", f.len())));
            }
            let label: RstLabel = f[0].parse().map_err(|e: Error| Error::parse(origin, n + 1, 1, e.to_string()))?;
            let count = f[2]
                .parse()
                .map_err(|_| Error::parse(origin, n + 1, 3, format!("invalid count `{}`", f[2])))?;
            table.entries.insert(
                label,
                BaselineEntry {
                    connective: normalize_connective(f[1]),
                    count,
                },
            );
        }
        Ok(table)
    }

    pub fn shipped() -> BaselineTable {
        BaselineTable::parse(SHIPPED_BASELINE, "baseline.tsv").expect("shipped baseline is valid")
    }

    pub fn get(&self, label: RstLabel) -> Option<&BaselineEntry> {
        self.entries.get(&label)
    }

    pub fn entries(&self) -> impl Iterator<Item = (RstLabel, &BaselineEntry)> {
        self.entries.iter().map(|(l, e)| (*l, e))
    }

    /// Connective for a label and whether the global default was used.
    pub fn lookup(&self, label: RstLabel) -> (&str, bool) {
        match self.entries.get(&label) {
            Some(e) => (&e.connective, false),
            None => (GLOBAL_DEFAULT_CONNECTIVE, true),
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!("# provenance: {}\n# rst_label\tconnective\tcount\n", self.provenance);
        for (label, e) in &self.entries {
            let _ = writeln!(out, "{}\t{}\t{}", label.as_str(), e.connective, e.count);
        }
        out
    }
}

/// Count implicit connectives per RST label and keep the most frequent,
/// breaking ties alphabetically.
pub fn build_baseline(relations: &[PdtbRelation], provenance: &str) -> BaselineTable {
    let mut counts: BTreeMap<RstLabel, BTreeMap<String, u64>> = BTreeMap::new();
    for r in relations {
        if r.rel_type != RelationType::Implicit {
            continue;
        }
        let (Some(label), conn) = (r.rst_label, normalize_connective(&r.conn_text)) else {
            continue;
        };
        if conn.is_empty() {
            continue;
        }
        *counts.entry(label).or_default().entry(conn).or_default() += 1;
    }
    let entries = counts
        .into_iter()
        .filter_map(|(label, by_conn)| {
            // BTreeMap iterates alphabetically, so the first maximum wins ties
            let (conn, count) = by_conn
                .into_iter()
                .fold(None::<(String, u64)>, |best, (c, n)| match best {
                    Some((_, bn)) if bn >= n => best,
                    _ => Some((c, n)),
                })?;
            Some((label, BaselineEntry { connective: conn, count }))
        })
        .collect();
    BaselineTable {
        entries,
        provenance: provenance.to_owned(),
    }
}

/// External prediction for one relation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Hint {
    pub connective: Option<String>,
    /// Sense distribution, highest probability first.
    pub senses: Vec<(SenseLabel, f64)>,
}

/// Hints keyed by document id and `arg1|arg2` span key.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Hints {
    records: HashMap<(String, String), Hint>,
}

/// Key under which a relation's hint is stored.
pub fn hint_key(arg1: &TokenSpan, arg2: &TokenSpan) -> String {
    format!("{arg1}|{arg2}")
}

impl Hints {
    /// Rows are `doc_id  arg1|arg2  connective  sense:prob;sense:prob`.
    /// Connective and senses may be empty or `_`.
    pub fn parse(text: &str, origin: &str, hierarchy: &Hierarchy) -> Result<Hints> {
        let mut records = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split('\t').map(str::trim).collect();
            if f.len() != 4 {
                return Err(Error::parse(origin, line_no, 1, format!("expected 4 columns, found {}", f.len())));
            }
            if f[0] == "doc_id" {
                continue;
            }
            let (a1, a2) = f[1]
                .split_once('|')
                .ok_or_else(|| Error::parse(origin, line_no, 2, "span key must be `arg1|arg2`"))?;
            let a1: TokenSpan = a1.parse().map_err(|e| Error::parse(origin, line_no, 2, format!("{e}")))?;
            let a2: TokenSpan = a2.parse().map_err(|e| Error::parse(origin, line_no, 2, format!("{e}")))?;
            let connective = match f[2] {
                "" | "_" => None,
                c => Some(normalize_connective(c)),
            };
            let mut senses = Vec::new();
            for pair in f[3].split(';').map(str::trim).filter(|p| !p.is_empty() && *p != "_") {
                let (s, p) = pair
                    .rsplit_once(':')
                    .ok_or_else(|| Error::parse(origin, line_no, 4, format!("expected sense:prob, found `{pair}`")))?;
                let prob: f64 = p
                    .parse()
                    .ok()
                    .filter(|p: &f64| (0.0..=1.0).contains(p))
                    .ok_or_else(|| Error::parse(origin, line_no, 4, format!("probability `{p}` outside [0,1]")))?;
                let sense = hierarchy
                    .normalize(s)
                    .map_err(|e| Error::parse(origin, line_no, 4, e.to_string()))?;
                senses.push((sense, prob));
            }
            senses.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            records.insert((f[0].to_owned(), hint_key(&a1, &a2)), Hint { connective, senses });
        }
        Ok(Hints { records })
    }

    pub fn insert(&mut self, doc_id: &str, arg1: &TokenSpan, arg2: &TokenSpan, hint: Hint) {
        self.records.insert((doc_id.to_owned(), hint_key(arg1, arg2)), hint);
    }

    pub fn get(&self, doc_id: &str, arg1: &TokenSpan, arg2: &TokenSpan) -> Option<&Hint> {
        self.records.get(&(doc_id.to_owned(), hint_key(arg1, arg2)))
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectiveOrigin {
    Hint,
    Baseline,
    BaselineFallback,
}

impl ConnectiveOrigin {
    pub fn as_str(self) -> &'static str {
        match self {
            ConnectiveOrigin::Hint => "hint",
            ConnectiveOrigin::Baseline => "baseline",
            ConnectiveOrigin::BaselineFallback => "baseline-fallback",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseResolution {
    /// One or two senses, primary first.
    pub senses: Vec<SenseLabel>,
    /// Hints existed but named none of the candidates.
    pub map_conflict: bool,
}

/// Does a hinted sense pick out a candidate? An underspecified hint
/// matches any candidate below it.
fn hint_matches(hint: &SenseLabel, candidate: &SenseLabel) -> bool {
    hint.level1 == candidate.level1
        && (hint.level2.is_empty()
            || (hint.level2 == candidate.level2 && (hint.level3.is_none() || hint.level3 == candidate.level3)))
}

/// Baseline table plus optional hints and the second-sense threshold.
#[derive(Debug, Clone)]
pub struct Predictor {
    pub baseline: BaselineTable,
    pub hints: Hints,
    pub threshold: f64,
}

impl Default for Predictor {
    fn default() -> Self {
        Predictor {
            baseline: BaselineTable::shipped(),
            hints: Hints::default(),
            threshold: DEFAULT_SENSE_THRESHOLD,
        }
    }
}

impl Predictor {
    pub fn new(baseline: BaselineTable, hints: Hints, threshold: f64) -> Self {
        Predictor {
            baseline,
            hints,
            threshold,
        }
    }

    /// Connective for an implicit relation: a hinted one if present,
    /// otherwise the baseline's choice for the label.
    pub fn predict_connective(&self, hint: Option<&Hint>, label: RstLabel) -> (String, ConnectiveOrigin) {
        if let Some(c) = hint.and_then(|h| h.connective.as_ref()) {
            return (c.clone(), ConnectiveOrigin::Hint);
        }
        match self.baseline.lookup(label) {
            (c, false) => (c.to_owned(), ConnectiveOrigin::Baseline),
            (c, true) => (c.to_owned(), ConnectiveOrigin::BaselineFallback),
        }
    }

    /// Choose one or two senses from `candidates` (frequency-rank order).
    pub fn resolve_sense(&self, candidates: &[SenseLabel], hint: Option<&Hint>) -> SenseResolution {
        let Some(first) = candidates.first() else {
            return SenseResolution {
                senses: Vec::new(),
                map_conflict: false,
            };
        };
        let fallback = |map_conflict| SenseResolution {
            senses: vec![first.clone()],
            map_conflict,
        };
        let dist = match hint {
            Some(h) if !h.senses.is_empty() => &h.senses,
            _ => return fallback(false),
        };
        // best probability per candidate, keeping frequency rank as tie-break
        let mut scored: Vec<(usize, f64)> = candidates
            .iter()
            .enumerate()
            .filter_map(|(i, c)| {
                dist.iter()
                    .filter(|(s, _)| hint_matches(s, c))
                    .map(|(_, p)| *p)
                    .max_by(f64::total_cmp)
                    .map(|p| (i, p))
            })
            .collect();
        if scored.is_empty() {
            return fallback(true);
        }
        scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        let mut senses = vec![candidates[scored[0].0].clone()];
        if let Some(&(i, p)) = scored.get(1) {
            if p > self.threshold {
                senses.push(candidates[i].clone());
            }
        }
        SenseResolution {
            senses,
            map_conflict: false,
        }
    }
}
