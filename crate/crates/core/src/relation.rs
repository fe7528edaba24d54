//! Final shallow discourse relations and their vocabulary.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::corpus::RstLabel;
use crate::error::{Error, Result};
use crate::senses::SenseLabel;
use crate::span::TokenSpan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationType {
    Explicit,
    Implicit,
    AltLex,
    AltLexC,
    EntRel,
    Hypophora,
    NoRel,
}

impl RelationType {
    pub const ALL: [RelationType; 7] = [
        RelationType::Explicit,
        RelationType::Implicit,
        RelationType::AltLex,
        RelationType::AltLexC,
        RelationType::EntRel,
        RelationType::Hypophora,
        RelationType::NoRel,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationType::Explicit => "Explicit",
            RelationType::Implicit => "Implicit",
            RelationType::AltLex => "AltLex",
            RelationType::AltLexC => "AltLexC",
            RelationType::EntRel => "EntRel",
            RelationType::Hypophora => "Hypophora",
            RelationType::NoRel => "NoRel",
        }
    }

    /// Types that carry a sense label.
    pub fn has_senses(self) -> bool {
        !matches!(self, RelationType::EntRel | RelationType::Hypophora | RelationType::NoRel)
    }

    /// Types anchored by tokens in the text.
    pub fn has_conn_tokens(self) -> bool {
        matches!(self, RelationType::Explicit | RelationType::AltLex | RelationType::AltLexC)
    }
}

impl fmt::Display for RelationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RelationType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelationType::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Validation(format!("unknown relation type `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    /// Explicit connective missing from the lexicon.
    UnknownConnective,
    /// Connective and RST label share no sense, or hints fell outside the
    /// candidate senses.
    MapConflict,
    LowConfidence,
    /// Implicit connective taken from the global default because the
    /// baseline table has no entry for the label.
    BaselineFallback,
    /// Argument spans collided and were separated.
    Overlap,
}

impl Flag {
    pub const ALL: [Flag; 5] = [
        Flag::UnknownConnective,
        Flag::MapConflict,
        Flag::LowConfidence,
        Flag::BaselineFallback,
        Flag::Overlap,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Flag::UnknownConnective => "unknown-connective",
            Flag::MapConflict => "map-conflict",
            Flag::LowConfidence => "low-confidence",
            Flag::BaselineFallback => "baseline-fallback",
            Flag::Overlap => "overlap",
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Flag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Flag::ALL
            .into_iter()
            .find(|f| f.as_str() == s.trim())
            .ok_or_else(|| Error::Validation(format!("unknown flag `{s}`")))
    }
}

/// A finished relation as written to and read from relation files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdtbRelation {
    pub doc_id: String,
    pub rel_type: RelationType,
    /// Inserted connective for Implicit, surface text otherwise.
    pub conn_text: String,
    pub conn_tokens: TokenSpan,
    pub arg1: TokenSpan,
    pub arg2: TokenSpan,
    pub arg1_text: String,
    pub arg2_text: String,
    /// Zero to two senses, primary first.
    pub senses: Vec<SenseLabel>,
    pub rst_label: Option<RstLabel>,
    pub flags: BTreeSet<Flag>,
    /// Producing module and rule, e.g. `implicit.baseline`.
    pub origin: Option<String>,
}

impl PdtbRelation {
    /// Alignment key: type plus both argument spans.
    pub fn key(&self) -> (RelationType, &TokenSpan, &TokenSpan) {
        (self.rel_type, &self.arg1, &self.arg2)
    }

    /// Ordering used in output files.
    pub fn sort_key(&self) -> (usize, usize, RelationType, TokenSpan, TokenSpan) {
        (
            self.arg1.start().unwrap_or(0),
            self.arg2.start().unwrap_or(0),
            self.rel_type,
            self.arg1.clone(),
            self.arg2.clone(),
        )
    }
}

/// Sort relations by document, then by argument positions.
pub fn sort_relations(relations: &mut [PdtbRelation]) {
    relations.sort_by(|a, b| {
        a.doc_id
            .cmp(&b.doc_id)
            .then_with(|| a.sort_key().cmp(&b.sort_key()))
            .then_with(|| a.conn_text.cmp(&b.conn_text))
    });
}
