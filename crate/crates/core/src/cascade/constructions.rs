//! Dependency detectors for the closed set of AltLexC constructions.

use std::str::FromStr;

use regex::Regex;

use crate::corpus::{Document, Token};
use crate::error::{Error, Result};
use crate::span::TokenSpan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Construction {
    /// "Had it happened earlier, ..."
    AuxInversion,
    /// "so tired that ..."
    SoAdjThat,
    /// "such a mess that ..."
    SuchThat,
    /// "too tired to ..."
    TooTo,
    /// "old enough to ..."
    EnoughTo,
    /// "the more ..., the more ..."
    ComparativeCorrelative,
    /// "no sooner ... than ..."
    NoSoonerThan,
}

impl Construction {
    pub const ALL: [Construction; 7] = [
        Construction::AuxInversion,
        Construction::SoAdjThat,
        Construction::SuchThat,
        Construction::TooTo,
        Construction::EnoughTo,
        Construction::ComparativeCorrelative,
        Construction::NoSoonerThan,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Construction::AuxInversion => "aux-inversion",
            Construction::SoAdjThat => "so-adj-that",
            Construction::SuchThat => "such-that",
            Construction::TooTo => "too-to",
            Construction::EnoughTo => "enough-to",
            Construction::ComparativeCorrelative => "comparative-correlative",
            Construction::NoSoonerThan => "no-sooner-than",
        }
    }

    /// Tokens realizing the construction in sentence `sent`, if present.
    pub fn detect(self, doc: &Document, sent: usize, trigger: &Regex) -> Option<TokenSpan> {
        let range = doc.sentences[sent].tokens.clone();
        let tokens = &doc.tokens[range.clone()];
        let mut triggers = tokens.iter().filter(|t| trigger.is_match(&t.form.to_lowercase()));
        let found: Option<Vec<usize>> = match self {
            Construction::AuxInversion => {
                if tokens.last().is_some_and(|t| t.form == "?") {
                    return None;
                }
                triggers
                    .filter(|t| is_clause_initial(doc, t))
                    .find(|t| {
                        matches!(t.base_deprel(), "aux" | "cop") && t.head.is_some_and(|h| {
                            h > t.index && doc.dependents(h).any(|d| d.base_deprel() == "nsubj" && d.index > t.index)
                        })
                    })
                    .map(|t| vec![t.index])
            }
            Construction::SoAdjThat => triggers.find_map(|t| {
                let h = degree_head(doc, t)?;
                let clause = clause_after(doc, h, &["advcl", "ccomp"])?;
                Some(with_mark(doc, vec![t.index], clause, "that"))
            }),
            Construction::SuchThat => triggers.find_map(|t| {
                let n = t.head?;
                let clause = clause_after(doc, n, &["advcl", "ccomp", "acl"])
                    .or_else(|| doc.tokens[n].head.and_then(|g| clause_after(doc, g, &["advcl", "ccomp"])))
                    .filter(|&c| c > n)?;
                let mark = mark_of(doc, clause, "that")?;
                Some(vec![t.index, mark])
            }),
            Construction::TooTo => triggers.find_map(|t| {
                let h = degree_head(doc, t)?;
                let clause = clause_after(doc, h, &["xcomp", "advcl", "ccomp"])?;
                Some(vec![t.index, mark_of(doc, clause, "to")?])
            }),
            Construction::EnoughTo => triggers.find_map(|t| {
                let h = t.head?;
                let clause = clause_after(doc, h, &["xcomp", "advcl", "ccomp"]).filter(|&c| c > t.index)?;
                Some(vec![t.index, mark_of(doc, clause, "to")?])
            }),
            Construction::ComparativeCorrelative => {
                let pairs: Vec<usize> = triggers
                    .filter(|t| t.index + 1 < range.end && is_comparative(&doc.tokens[t.index + 1]))
                    .map(|t| t.index)
                    .collect();
                (pairs.len() >= 2).then(|| vec![pairs[0], pairs[0] + 1, pairs[1], pairs[1] + 1])
            }
            Construction::NoSoonerThan => triggers.find_map(|t| {
                let mut out = Vec::new();
                if t.form.eq_ignore_ascii_case("sooner") {
                    let prev = t.index.checked_sub(1).filter(|&p| p >= range.start)?;
                    if !doc.tokens[prev].form.eq_ignore_ascii_case("no") {
                        return None;
                    }
                    out.push(prev);
                }
                out.push(t.index);
                let close = tokens
                    .iter()
                    .find(|x| x.index > t.index && matches!(x.form.to_lowercase().as_str(), "than" | "when"))?;
                out.push(close.index);
                Some(out)
            }),
        };
        found.map(TokenSpan::from_tokens)
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Construction::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim())
            .ok_or_else(|| {
                let known: Vec<&str> = Construction::ALL.iter().map(|c| c.as_str()).collect();
                Error::Validation(format!("unknown construction `{s}`; known: {}", known.join(", ")))
            })
    }
}

/// First non-punctuation token of its EDU.
fn is_clause_initial(doc: &Document, t: &Token) -> bool {
    let edu = &doc.edus[doc.edu_of_token(t.index)];
    doc.tokens[edu.tokens.clone()]
        .iter()
        .find(|x| x.upos != "PUNCT")
        .is_some_and(|x| x.index == t.index)
}

/// Adjective or adverb modified by a degree word.
fn degree_head(doc: &Document, t: &Token) -> Option<usize> {
    let h = t.head?;
    (t.base_deprel() == "advmod" && matches!(doc.tokens[h].upos.as_str(), "ADJ" | "ADV")).then_some(h)
}

/// First clausal dependent of `head`, to its right, with one of `rels`.
fn clause_after(doc: &Document, head: usize, rels: &[&str]) -> Option<usize> {
    doc.dependents(head)
        .find(|d| d.index > head && rels.contains(&d.base_deprel()))
        .map(|d| d.index)
}

fn mark_of(doc: &Document, clause: usize, form: &str) -> Option<usize> {
    doc.dependents(clause)
        .find(|d| d.base_deprel() == "mark" && d.form.eq_ignore_ascii_case(form))
        .map(|d| d.index)
}

fn with_mark(doc: &Document, mut tokens: Vec<usize>, clause: usize, form: &str) -> Vec<usize> {
    tokens.extend(mark_of(doc, clause, form));
    tokens
}

fn is_comparative(t: &Token) -> bool {
    t.feature("Degree") == Some("Cmp")
        || matches!(t.xpos.as_str(), "JJR" | "RBR")
        || matches!(t.form.to_lowercase().as_str(), "more" | "less" | "fewer")
}
