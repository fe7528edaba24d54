use std::collections::BTreeSet;

use regex::Regex;

use crate::corpus::{Document, RstLabel};
use crate::error::{Error, Result};
use crate::relation::RelationType;
use crate::senses::{Hierarchy, SenseLabel};
use crate::span::TokenSpan;

use super::constructions::Construction;
use super::{host_side, skeleton, CandidateRelation, Junction, JunctionKind, Provenance};

pub const SHIPPED_ALTLEX: &str = include_str!("../../data/altlex.tsv");
pub const SHIPPED_ALTLEXC: &str = include_str!("../../data/altlexc.tsv");

/// Tokens of the second argument inspected for an AltLex expression.
const ALTLEX_WINDOW: usize = 8;

#[derive(Debug, Clone)]
pub struct AltLexPattern {
    pub id: String,
    pub regex: Regex,
    /// Compatible RST labels; `None` accepts any.
    pub labels: Option<BTreeSet<RstLabel>>,
    pub sense: SenseLabel,
}

#[derive(Debug, Clone)]
pub struct ConstructionRule {
    pub construction: Construction,
    /// Constrains the lowercased trigger word.
    pub trigger: Regex,
    pub labels: Option<BTreeSet<RstLabel>>,
    pub sense: SenseLabel,
}

/// AltLex expressions and AltLexC construction rules.
#[derive(Debug, Clone, Default)]
pub struct Patterns {
    pub altlex: Vec<AltLexPattern>,
    pub altlexc: Vec<ConstructionRule>,
}

struct Row<'a> {
    line: usize,
    fields: Vec<&'a str>,
}

fn rows<'a>(text: &'a str, origin: &str) -> Result<Vec<Row<'a>>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::parse(origin, n + 1, 1, format!("expected 4 columns, found {}", fields.len())));
        }
        out.push(Row { line: n + 1, fields });
    }
    Ok(out)
}

fn labels(field: &str, origin: &str, line: usize) -> Result<Option<BTreeSet<RstLabel>>> {
    if field == "*" {
        return Ok(None);
    }
    field
        .split(',')
        .map(|l| l.trim().parse().map_err(|e: Error| Error::parse(origin, line, 3, e.to_string())))
        .collect::<Result<BTreeSet<_>>>()
        .map(Some)
}

fn regex(field: &str, origin: &str, line: usize) -> Result<Regex> {
    Regex::new(field).map_err(|e| Error::parse(origin, line, 2, format!("bad pattern: {e}")))
}

fn sense(field: &str, hierarchy: &Hierarchy, origin: &str, line: usize) -> Result<SenseLabel> {
    hierarchy
        .normalize(field)
        .map_err(|e| Error::parse(origin, line, 4, e.to_string()))
}

impl Patterns {
    /// Rows: `pattern_id  token_regex  rst_labels  sense`, where the labels
    /// column is comma-separated or `*`.
    pub fn parse_altlex(text: &str, origin: &str, hierarchy: &Hierarchy) -> Result<Vec<AltLexPattern>> {
        rows(text, origin)?
            .into_iter()
            .map(|r| {
                Ok(AltLexPattern {
                    id: r.fields[0].to_owned(),
                    regex: regex(r.fields[1], origin, r.line)?,
                    labels: labels(r.fields[2], origin, r.line)?,
                    sense: sense(r.fields[3], hierarchy, origin, r.line)?,
                })
            })
            .collect()
    }

    /// Rows: `construction  trigger_regex  rst_labels  sense`; the first
    /// column must name one of the built-in detectors.
    pub fn parse_altlexc(text: &str, origin: &str, hierarchy: &Hierarchy) -> Result<Vec<ConstructionRule>> {
        rows(text, origin)?
            .into_iter()
            .map(|r| {
                Ok(ConstructionRule {
                    construction: r.fields[0]
                        .parse()
                        .map_err(|e: Error| Error::parse(origin, r.line, 1, e.to_string()))?,
                    trigger: regex(r.fields[1], origin, r.line)?,
                    labels: labels(r.fields[2], origin, r.line)?,
                    sense: sense(r.fields[3], hierarchy, origin, r.line)?,
                })
            })
            .collect()
    }

    pub fn from_texts(altlex: (&str, &str), altlexc: (&str, &str), hierarchy: &Hierarchy) -> Result<Patterns> {
        Ok(Patterns {
            altlex: Self::parse_altlex(altlex.0, altlex.1, hierarchy)?,
            altlexc: Self::parse_altlexc(altlexc.0, altlexc.1, hierarchy)?,
        })
    }

    pub fn shipped(hierarchy: &Hierarchy) -> Patterns {
        Self::from_texts((SHIPPED_ALTLEX, "altlex.tsv"), (SHIPPED_ALTLEXC, "altlexc.tsv"), hierarchy)
            .expect("shipped patterns are valid")
    }
}

fn compatible(labels: &Option<BTreeSet<RstLabel>>, label: RstLabel) -> bool {
    labels.as_ref().is_none_or(|set| set.contains(&label))
}

/// Match AltLex expressions at the start of the second argument of each
/// junction not covered by an Explicit relation.
pub fn match_altlex(
    doc: &Document,
    patterns: &Patterns,
    junctions: &[Junction],
    covered: &BTreeSet<(usize, usize)>,
) -> Vec<CandidateRelation> {
    let mut taken = covered.clone();
    let mut out = Vec::new();
    if patterns.altlex.is_empty() {
        return out;
    }
    for j in junctions {
        let Some(rel) = j.rst_relation_id.as_deref().and_then(|id| doc.relation(id)) else {
            continue;
        };
        if taken.contains(&j.head_pair()) {
            continue;
        }
        let start = match j.kind {
            JunctionKind::InterSentential => j.right.start(),
            _ => doc.edus_span([j.right_edu]).start(),
        };
        let Some(start) = start else { continue };
        let sent_end = doc.sentences[doc.tokens[start].sent_index].tokens.end;
        let window: Vec<usize> = (start..sent_end.min(start + ALTLEX_WINDOW)).collect();
        let mut text = String::new();
        let mut offsets = Vec::new();
        for &t in &window {
            if !text.is_empty() {
                text.push(' ');
            }
            let begin = text.len();
            text.push_str(&doc.tokens[t].form.to_lowercase());
            offsets.push((begin, text.len(), t));
        }
        for p in &patterns.altlex {
            if !compatible(&p.labels, rel.label) {
                continue;
            }
            let Some(m) = p.regex.find(&text).filter(|m| m.start() == 0 && !m.is_empty()) else {
                continue;
            };
            let conn = TokenSpan::from_tokens(
                offsets
                    .iter()
                    .filter(|(b, e, _)| *b < m.end() && *e > m.start())
                    .map(|(_, _, t)| *t),
            );
            let Some(mut cand) = skeleton(doc, rel, RelationType::AltLex, Provenance::new("altlex", p.id.clone()))
            else {
                break;
            };
            cand.host = host_side(&cand, &conn);
            cand.conn_text = doc.text(&conn);
            cand.conn_tokens = conn;
            cand.candidate_senses = vec![p.sense.clone()];
            cand.junction = Some(j.kind);
            taken.insert(j.head_pair());
            out.push(cand);
            break;
        }
    }
    out
}

/// Run the construction detectors over the sentences of each RST relation
/// whose label is compatible with a rule.
pub fn match_altlexc(
    doc: &Document,
    patterns: &Patterns,
    covered: &BTreeSet<(usize, usize)>,
) -> Vec<CandidateRelation> {
    let mut taken = covered.clone();
    let mut out = Vec::new();
    for rel in doc.relations.iter().filter(|r| r.is_discourse()) {
        let rules: Vec<&ConstructionRule> = patterns
            .altlexc
            .iter()
            .filter(|r| compatible(&r.labels, rel.label))
            .collect();
        if rules.is_empty() {
            continue;
        }
        let Some(mut cand) = skeleton(doc, rel, RelationType::AltLexC, Provenance::new("altlexc", "")) else {
            continue;
        };
        if taken.contains(&cand.head_pair()) {
            continue;
        }
        let extent = cand.source.span.union(&cand.target.span);
        let sentences: BTreeSet<usize> = [cand.source.head_edu, cand.target.head_edu]
            .into_iter()
            .map(|e| doc.sentence_of_edu(e))
            .collect();
        let found = rules.iter().find_map(|rule| {
            sentences.iter().find_map(|&s| {
                rule.construction
                    .detect(doc, s, &rule.trigger)
                    .filter(|tokens| tokens.is_subset_of(&extent))
                    .map(|tokens| (*rule, tokens))
            })
        });
        let Some((rule, conn)) = found else { continue };
        cand.host = host_side(&cand, &conn);
        cand.conn_text = doc.text(&conn);
        cand.conn_tokens = conn;
        cand.candidate_senses = vec![rule.sense.clone()];
        cand.provenance.rule = rule.construction.as_str().to_owned();
        taken.insert(cand.head_pair());
        out.push(cand);
    }
    out
}
