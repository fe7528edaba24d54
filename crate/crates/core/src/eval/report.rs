use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::corpus::infer_genre;
use crate::error::Result;
use crate::relation::{PdtbRelation, RelationType};
use crate::senses::{normalize_connective, Lexicon};

use super::{align_relations, cohen_kappa_matrix, emit_confusion, score, Alignment, Confusion, MatchRegime, Prf, Scores};

/// Marker for cells with no gold relations.
pub const UNAVAILABLE: &str = "--";

/// Genre encoded in GUM-style ids (`GUM_<genre>_<name>`), else `unknown`.
pub fn genre_from_doc_id(doc_id: &str) -> String {
    infer_genre(doc_id).unwrap_or_else(|| "unknown".to_owned())
}

/// Hits over gold counts per genre and relation type.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GenreTable {
    pub cells: BTreeMap<String, BTreeMap<RelationType, (usize, usize)>>,
}

impl GenreTable {
    pub fn accuracy(&self, genre: &str, rel_type: RelationType) -> Option<f64> {
        let &(hits, gold) = self.cells.get(genre)?.get(&rel_type)?;
        (gold > 0).then(|| hits as f64 / gold as f64)
    }

    /// Accuracy over every type in a genre.
    pub fn genre_accuracy(&self, genre: &str) -> Option<f64> {
        let (hits, gold) = self
            .cells
            .get(genre)?
            .values()
            .fold((0, 0), |(h, g), &(a, b)| (h + a, g + b));
        (gold > 0).then(|| hits as f64 / gold as f64)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("genre");
        for t in RelationType::ALL {
            let _ = write!(out, "\t{t}");
        }
        out.push_str("\tall\n");
        for genre in self.cells.keys() {
            out.push_str(genre);
            for t in RelationType::ALL {
                let _ = write!(out, "\t{}", fmt_opt(self.accuracy(genre, t)));
            }
            let _ = writeln!(out, "\t{}", fmt_opt(self.genre_accuracy(genre)));
        }
        out
    }
}

pub fn genre_breakdown(al: &Alignment<'_>, regime: MatchRegime, genre_of: &dyn Fn(&str) -> String) -> GenreTable {
    let mut table = GenreTable::default();
    let mut cell = |r: &PdtbRelation, hit: bool| {
        let e = table
            .cells
            .entry(genre_of(&r.doc_id))
            .or_default()
            .entry(r.rel_type)
            .or_insert((0, 0));
        e.0 += usize::from(hit);
        e.1 += 1;
    };
    for (g, p) in &al.pairs {
        cell(g, regime.is_hit(g, p));
    }
    for g in &al.missed {
        cell(g, false);
    }
    table
}

/// Agreement between predicted and gold implicit connectives.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConnectiveAccuracy {
    pub total: usize,
    pub exact: usize,
    /// Exact matches plus predictions licensed for a gold sense.
    pub fuzzy: usize,
}

impl ConnectiveAccuracy {
    pub fn exact_rate(&self) -> Option<f64> {
        (self.total > 0).then(|| self.exact as f64 / self.total as f64)
    }

    pub fn fuzzy_rate(&self) -> Option<f64> {
        (self.total > 0).then(|| self.fuzzy as f64 / self.total as f64)
    }
}

/// Connective accuracy over aligned Implicit pairs, overall and by genre.
/// A prediction matches fuzzily if the lexicon lets it signal any gold
/// sense at `level`.
pub fn connective_accuracy(
    al: &Alignment<'_>,
    lexicon: &Lexicon,
    level: u8,
    genre_of: &dyn Fn(&str) -> String,
) -> (ConnectiveAccuracy, BTreeMap<String, ConnectiveAccuracy>) {
    let mut overall = ConnectiveAccuracy::default();
    let mut by_genre: BTreeMap<String, ConnectiveAccuracy> = BTreeMap::new();
    for (g, p) in &al.pairs {
        if g.rel_type != RelationType::Implicit || g.conn_text.trim().is_empty() {
            continue;
        }
        let (gc, pc) = (normalize_connective(&g.conn_text), normalize_connective(&p.conn_text));
        let exact = gc == pc;
        let fuzzy = exact || g.senses.iter().any(|s| lexicon.licenses(&pc, s, level));
        for acc in [&mut overall, by_genre.entry(genre_of(&g.doc_id)).or_default()] {
            acc.total += 1;
            acc.exact += usize::from(exact);
            acc.fuzzy += usize::from(fuzzy);
        }
    }
    (overall, by_genre)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    pub level: u8,
    pub strict: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { level: 2, strict: false }
    }
}

#[derive(Debug, Clone)]
pub struct EvalReport {
    pub options: EvalOptions,
    pub exact: Scores,
    pub span_only: Scores,
    pub kappa: Option<f64>,
    /// Aligned pairs with exactly one sense on each side.
    pub kappa_pairs: usize,
    pub confusion: Confusion,
    pub genres: GenreTable,
    pub connectives: Option<(ConnectiveAccuracy, BTreeMap<String, ConnectiveAccuracy>)>,
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| UNAVAILABLE.to_owned(), |x| format!("{x:.4}"))
}

impl EvalReport {
    /// Align, score under both regimes and compute the breakdowns. The
    /// lexicon enables connective accuracy.
    pub fn build(
        pred: &[PdtbRelation],
        gold: &[PdtbRelation],
        options: EvalOptions,
        lexicon: Option<&Lexicon>,
        genre_of: &dyn Fn(&str) -> String,
    ) -> Result<EvalReport> {
        let al = align_relations(pred, gold)?;
        let exact = MatchRegime {
            level: options.level,
            strict: options.strict,
            ..MatchRegime::exact()
        };
        let span_only = MatchRegime {
            mode: super::MatchMode::SpanOnly,
            ..exact
        };
        let confusion = emit_confusion(&al, options.level);
        Ok(EvalReport {
            options,
            exact: score(&al, exact),
            span_only: score(&al, span_only),
            kappa: cohen_kappa_matrix(&confusion.matrix()),
            kappa_pairs: confusion.total(),
            genres: genre_breakdown(&al, exact, genre_of),
            connectives: lexicon.map(|lex| connective_accuracy(&al, lex, options.level, genre_of)),
            confusion,
        })
    }

    /// One row per regime and type plus the micro average.
    pub fn scores_tsv(&self) -> String {
        let mut out = String::from("regime\ttype\thits\tpredicted\tgold\tprecision\trecall\tf1\n");
        for s in [&self.exact, &self.span_only] {
            let rows = s.per_type.iter().map(|(t, p)| (t.as_str(), p)).chain([("micro", &s.micro)]);
            for (name, p) in rows {
                let _ = writeln!(
                    out,
                    "{}\t{name}\t{}\t{}\t{}\t{}\t{}\t{}",
                    s.regime.mode,
                    p.counts.hits,
                    p.counts.predicted,
                    p.counts.gold,
                    fmt_opt(p.precision),
                    fmt_opt(p.recall),
                    fmt_opt(p.f1)
                );
            }
        }
        out
    }

    pub fn connectives_tsv(&self) -> Option<String> {
        let (overall, by_genre) = self.connectives.as_ref()?;
        let mut out = String::from("genre\ttotal\texact\tfuzzy\n");
        for (g, a) in by_genre.iter().map(|(g, a)| (g.as_str(), a)).chain([("all", overall)]) {
            let _ = writeln!(out, "{g}\t{}\t{}\t{}", a.total, fmt_opt(a.exact_rate()), fmt_opt(a.fuzzy_rate()));
        }
        Some(out)
    }

    pub fn to_text(&self) -> String {
        let line = |name: &str, p: &Prf| {
            format!(
                "  {name:<10} P={} R={} F1={} ({} hits, {} predicted, {} gold)\n",
                fmt_opt(p.precision),
                fmt_opt(p.recall),
                fmt_opt(p.f1),
                p.counts.hits,
                p.counts.predicted,
                p.counts.gold
            )
        };
        let mut out = String::new();
        for s in [&self.exact, &self.span_only] {
            let _ = writeln!(
                out,
                "{} match (level {}{}):",
                s.regime.mode,
                s.regime.level,
                if s.regime.strict { ", all senses" } else { "" }
            );
            for (t, p) in &s.per_type {
                out.push_str(&line(t.as_str(), p));
            }
            out.push_str(&line("micro", &s.micro));
        }
        let _ = writeln!(out, "kappa: {} over {} single-sense pairs", fmt_opt(self.kappa), self.kappa_pairs);
        if let Some((g, p, n)) = self.confusion.most_frequent_error() {
            let _ = writeln!(out, "most frequent confusion: gold {g} predicted as {p} ({n})");
        }
        if let Some((overall, _)) = &self.connectives {
            let _ = writeln!(
                out,
                "implicit connectives: exact {} fuzzy {} over {}",
                fmt_opt(overall.exact_rate()),
                fmt_opt(overall.fuzzy_rate()),
                overall.total
            );
        }
        out
    }
}
