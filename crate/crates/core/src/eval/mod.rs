//! Scoring predicted relations against gold.
//!
//! Relations are aligned on document, type and both argument spans. The
//! span-only regime counts every aligned pair as a hit; the exact regime
//! also requires the senses to agree at the configured level.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::relation::{PdtbRelation, RelationType};
use crate::span::TokenSpan;

mod agreement;
mod report;

pub use agreement::{cohen_kappa, cohen_kappa_matrix, emit_confusion, Confusion};
pub use report::{
    connective_accuracy, genre_breakdown, genre_from_doc_id, ConnectiveAccuracy, EvalOptions, EvalReport, GenreTable,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatchMode {
    /// Type, both spans and the sense must agree.
    Exact,
    /// Type and both spans must agree.
    SpanOnly,
}

impl MatchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            MatchMode::Exact => "exact",
            MatchMode::SpanOnly => "span-only",
        }
    }
}

impl fmt::Display for MatchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(MatchMode::Exact),
            "span-only" | "span" => Ok(MatchMode::SpanOnly),
            other => Err(Error::Validation(format!("unknown match mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchRegime {
    pub mode: MatchMode,
    /// Sense depth compared: 1, 2 or 3.
    pub level: u8,
    /// Require identical sense sets instead of any shared sense.
    pub strict: bool,
}

impl MatchRegime {
    pub fn exact() -> Self {
        MatchRegime {
            mode: MatchMode::Exact,
            level: 2,
            strict: false,
        }
    }

    pub fn span_only() -> Self {
        MatchRegime {
            mode: MatchMode::SpanOnly,
            ..Self::exact()
        }
    }

    /// Whether an aligned pair counts as a hit.
    pub fn is_hit(&self, gold: &PdtbRelation, pred: &PdtbRelation) -> bool {
        if self.mode == MatchMode::SpanOnly || !gold.rel_type.has_senses() {
            return true;
        }
        let at = |r: &PdtbRelation| -> BTreeSet<String> { r.senses.iter().map(|s| s.at_level(self.level)).collect() };
        let (g, p) = (at(gold), at(pred));
        if self.strict || g.is_empty() || p.is_empty() {
            g == p
        } else {
            !g.is_disjoint(&p)
        }
    }
}

/// Gold and predicted relations paired on their alignment key.
#[derive(Debug, Clone, Default)]
pub struct Alignment<'a> {
    /// (gold, pred) pairs in gold order.
    pub pairs: Vec<(&'a PdtbRelation, &'a PdtbRelation)>,
    /// Gold relations with no prediction.
    pub missed: Vec<&'a PdtbRelation>,
    /// Predictions with no gold counterpart.
    pub spurious: Vec<&'a PdtbRelation>,
}

type Key<'a> = (&'a str, RelationType, &'a TokenSpan, &'a TokenSpan);

fn index<'a>(relations: &'a [PdtbRelation], which: &str) -> Result<BTreeMap<Key<'a>, &'a PdtbRelation>> {
    let mut out = BTreeMap::new();
    for r in relations {
        let key = (r.doc_id.as_str(), r.rel_type, &r.arg1, &r.arg2);
        if out.insert(key, r).is_some() {
            return Err(Error::DuplicateRelation {
                doc_id: r.doc_id.clone(),
                key: format!("{which} {} {}|{}", r.rel_type, r.arg1, r.arg2),
            });
        }
    }
    Ok(out)
}

/// Pair relations with identical document, type and argument spans.
pub fn align_relations<'a>(pred: &'a [PdtbRelation], gold: &'a [PdtbRelation]) -> Result<Alignment<'a>> {
    let pred_index = index(pred, "predicted")?;
    let gold_index = index(gold, "gold")?;
    let mut al = Alignment::default();
    for r in gold {
        match pred_index.get(&(r.doc_id.as_str(), r.rel_type, &r.arg1, &r.arg2)) {
            Some(p) => al.pairs.push((r, p)),
            None => al.missed.push(r),
        }
    }
    al.spurious = pred
        .iter()
        .filter(|r| !gold_index.contains_key(&(r.doc_id.as_str(), r.rel_type, &r.arg1, &r.arg2)))
        .collect();
    Ok(al)
}

/// Hit and total counts; adds associatively so partial counts can be
/// reduced in any order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub hits: usize,
    pub predicted: usize,
    pub gold: usize,
}

impl Add for Counts {
    type Output = Counts;

    fn add(self, o: Counts) -> Counts {
        Counts {
            hits: self.hits + o.hits,
            predicted: self.predicted + o.predicted,
            gold: self.gold + o.gold,
        }
    }
}

impl AddAssign for Counts {
    fn add_assign(&mut self, o: Counts) {
        *self = *self + o;
    }
}

/// Precision, recall and F1; `None` where the denominator is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prf {
    pub counts: Counts,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f1: Option<f64>,
}

fn ratio(n: usize, d: usize) -> Option<f64> {
    (d > 0).then(|| n as f64 / d as f64)
}

impl From<Counts> for Prf {
    fn from(c: Counts) -> Prf {
        let precision = ratio(c.hits, c.predicted);
        let recall = ratio(c.hits, c.gold);
        let f1 = match (precision, recall) {
            (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
            (Some(_), Some(_)) => Some(0.0),
            _ => None,
        };
        Prf {
            counts: c,
            precision,
            recall,
            f1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scores {
    pub regime: MatchRegime,
    /// Every type seen in either file.
    pub per_type: BTreeMap<RelationType, Prf>,
    pub micro: Prf,
}

/// Per-type counts under a regime.
pub fn count(al: &Alignment<'_>, regime: MatchRegime) -> BTreeMap<RelationType, Counts> {
    let mut out: BTreeMap<RelationType, Counts> = BTreeMap::new();
    for (g, p) in &al.pairs {
        let c = out.entry(g.rel_type).or_default();
        c.gold += 1;
        c.predicted += 1;
        c.hits += usize::from(regime.is_hit(g, p));
    }
    for g in &al.missed {
        out.entry(g.rel_type).or_default().gold += 1;
    }
    for p in &al.spurious {
        out.entry(p.rel_type).or_default().predicted += 1;
    }
    out
}

pub fn score(al: &Alignment<'_>, regime: MatchRegime) -> Scores {
    scores_from_counts(count(al, regime), regime)
}

pub fn scores_from_counts(counts: BTreeMap<RelationType, Counts>, regime: MatchRegime) -> Scores {
    let micro = counts.values().fold(Counts::default(), |a, &c| a + c);
    Scores {
        regime,
        per_type: counts.into_iter().map(|(t, c)| (t, c.into())).collect(),
        micro: micro.into(),
    }
}
