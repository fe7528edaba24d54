use std::collections::BTreeSet;

use crate::corpus::{Document, EdgeKind, RstClass, RstRelation, Token};
use crate::span::TokenSpan;

use super::relation_endpoints;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JunctionKind {
    InterSentential,
    PurposeInfinitive,
    ParticipialAdverbial,
    ZeroCoordination,
}

impl JunctionKind {
    pub fn is_intra_sentential(self) -> bool {
        self != JunctionKind::InterSentential
    }

    pub fn as_str(self) -> &'static str {
        match self {
            JunctionKind::InterSentential => "inter-sentential",
            JunctionKind::PurposeInfinitive => "purpose-infinitive",
            JunctionKind::ParticipialAdverbial => "participial",
            JunctionKind::ZeroCoordination => "zero-coordination",
        }
    }
}

/// A place where an implicit connective could be inserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Junction {
    pub kind: JunctionKind,
    pub left: TokenSpan,
    pub right: TokenSpan,
    /// Head EDUs on either side, in text order.
    pub left_edu: usize,
    pub right_edu: usize,
    pub rst_relation_id: Option<String>,
}

impl Junction {
    pub fn head_pair(&self) -> (usize, usize) {
        (self.left_edu, self.right_edu)
    }
}

/// Discourse relations with their endpoint head EDUs.
fn linked_heads(doc: &Document) -> Vec<(&RstRelation, usize, usize)> {
    doc.relations
        .iter()
        .filter(|r| r.is_discourse())
        .filter_map(|r| {
            let (s, t) = relation_endpoints(doc, r)?;
            Some((r, s.head_edu, t.head_edu))
        })
        .collect()
}

/// Preference among relations linking the same pair: tree edges, then
/// labels that can spawn content relations, then document order.
fn preference(rel: &RstRelation, order: usize) -> (bool, bool, usize) {
    let structural = matches!(
        rel.label.class(),
        RstClass::Attribution | RstClass::Organization | RstClass::Topic
    );
    (rel.edge_kind != EdgeKind::Tree, structural, order)
}

fn is_finite_verb(t: &Token) -> bool {
    matches!(t.upos.as_str(), "VERB" | "AUX")
        && (t.feature("VerbForm") == Some("Fin") || matches!(t.xpos.as_str(), "VBD" | "VBZ" | "VBP" | "MD"))
}

fn is_participle(t: &Token) -> bool {
    matches!(t.feature("VerbForm"), Some("Part") | Some("Ger")) || matches!(t.xpos.as_str(), "VBG" | "VBN")
}

fn starts_with_infinitival_marker(doc: &Document, clause: usize) -> bool {
    let words: Vec<String> = doc
        .subtree(clause)
        .tokens()
        .take(3)
        .map(|t| doc.tokens[t].form.to_lowercase())
        .collect();
    let words: Vec<&str> = words.iter().map(String::as_str).collect();
    matches!(words.as_slice(), ["to", ..] | ["in", "order", "to"] | ["so", "as", "to"])
}

fn intra_kind(doc: &Document, t: &Token, head: &Token) -> Option<JunctionKind> {
    match t.base_deprel() {
        "advcl" if starts_with_infinitival_marker(doc, t.index) => Some(JunctionKind::PurposeInfinitive),
        "advcl" if is_participle(t) && !doc.dependents(t.index).any(|d| d.base_deprel() == "mark") => {
            Some(JunctionKind::ParticipialAdverbial)
        }
        "conj" if is_finite_verb(t) && is_finite_verb(head) => {
            let (lo, hi) = (head.index.min(t.index), head.index.max(t.index));
            let has_cc = doc.dependents(t.index).any(|d| d.base_deprel() == "cc")
                || doc.tokens[lo + 1..hi].iter().any(|x| x.upos == "CCONJ");
            (!has_cc).then_some(JunctionKind::ZeroCoordination)
        }
        _ => None,
    }
}

/// Find every junction: adjacent same-paragraph sentences linked by an RST
/// relation whose head EDUs fall one in each, plus purpose infinitives,
/// participial adverbial clauses and zero-coordinated clauses.
pub fn find_implicit_junctions(doc: &Document) -> Vec<Junction> {
    let links = linked_heads(doc);
    let mut out = Vec::new();

    for par in &doc.paragraphs {
        for s in par.sentences.start..par.sentences.end.saturating_sub(1) {
            let best = links
                .iter()
                .enumerate()
                .filter(|(_, (_, a, b))| {
                    let (sa, sb) = (doc.sentence_of_edu(*a), doc.sentence_of_edu(*b));
                    (sa.min(sb), sa.max(sb)) == (s, s + 1)
                })
                .min_by_key(|(i, (r, _, _))| preference(r, *i));
            if let Some((_, (rel, a, b))) = best {
                out.push(Junction {
                    kind: JunctionKind::InterSentential,
                    left: doc.sentence_span(s),
                    right: doc.sentence_span(s + 1),
                    left_edu: *a.min(b),
                    right_edu: *a.max(b),
                    rst_relation_id: Some(rel.id.clone()),
                });
            }
        }
    }

    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    for t in &doc.tokens {
        let Some(h) = t.head else { continue };
        let head = &doc.tokens[h];
        let Some(kind) = intra_kind(doc, t, head) else { continue };
        let (ec, eh) = (doc.edu_of_token(t.index), doc.edu_of_token(h));
        if ec == eh || !seen.insert((ec.min(eh), ec.max(eh))) {
            continue;
        }
        let (left_edu, right_edu) = (ec.min(eh), ec.max(eh));
        let rel = links
            .iter()
            .enumerate()
            .filter(|(_, (_, a, b))| (*a.min(b), *a.max(b)) == (left_edu, right_edu))
            .min_by_key(|(i, (r, _, _))| preference(r, *i))
            .map(|(_, (r, _, _))| r.id.clone());
        out.push(Junction {
            kind,
            left: doc.edus_span([left_edu]),
            right: doc.edus_span([right_edu]),
            left_edu,
            right_edu,
            rst_relation_id: rel,
        });
    }
    out
}
