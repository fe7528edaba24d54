use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{Hierarchy, SenseLabel};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SyntacticClass {
    Subordinator,
    Coordinator,
    Adverbial,
}

impl FromStr for SyntacticClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "subordinator" => Ok(SyntacticClass::Subordinator),
            "coordinator" => Ok(SyntacticClass::Coordinator),
            "adverbial" => Ok(SyntacticClass::Adverbial),
            other => Err(Error::Validation(format!("unknown connective class `{other}`"))),
        }
    }
}

impl fmt::Display for SyntacticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SyntacticClass::Subordinator => "subordinator",
            SyntacticClass::Coordinator => "coordinator",
            SyntacticClass::Adverbial => "adverbial",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectiveEntry {
    pub connective: String,
    pub class: SyntacticClass,
    /// Senses in frequency-rank order, most frequent first.
    pub senses: Vec<SenseLabel>,
}

/// Lowercase and collapse internal whitespace; surrounding punctuation is
/// dropped so `However,` finds `however`.
pub fn normalize_connective(text: &str) -> String {
    let words: Vec<String> = text
        .split_whitespace()
        .map(|w| w.to_lowercase())
        .collect();
    let joined = words.join(" ");
    joined
        .trim_matches(|c: char| c.is_ascii_punctuation() && c != '\'')
        .trim()
        .to_owned()
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lexicon {
    entries: BTreeMap<String, ConnectiveEntry>,
}

impl Lexicon {
    /// Rows are `connective  class  sense;sense;...`. Directional senses
    /// must name their subtype, since the connective fixes the direction.
    pub fn parse(text: &str, origin: &str, hierarchy: &Hierarchy) -> Result<Lexicon> {
        let mut entries = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let line_no = n + 1;
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 3 {
                return Err(Error::parse(origin, line_no, 1, format!("expected 3 columns, found {}", f.len())));
            }
            let connective = normalize_connective(f[0]);
            if connective.is_empty() {
                return Err(Error::parse(origin, line_no, 1, "empty connective"));
            }
            let class = f[1]
                .parse()
                .map_err(|e: Error| Error::parse(origin, line_no, 2, e.to_string()))?;
            let mut senses: Vec<SenseLabel> = Vec::new();
            for raw in f[2].split(';').map(str::trim).filter(|s| !s.is_empty()) {
                let sense = hierarchy
                    .normalize(raw)
                    .map_err(|e| Error::parse(origin, line_no, 3, e.to_string()))?;
                if sense.level2.is_empty() || (sense.level3.is_none() && hierarchy.is_directional(&sense)) {
                    return Err(Error::parse(
                        origin,
                        line_no,
                        3,
                        format!("sense `{raw}` of `{connective}` must be fully specified"),
                    ));
                }
                if !senses.contains(&sense) {
                    senses.push(sense);
                }
            }
            if senses.is_empty() {
                return Err(Error::parse(origin, line_no, 3, format!("`{connective}` lists no senses")));
            }
            if entries.contains_key(&connective) {
                return Err(Error::parse(origin, line_no, 1, format!("duplicate connective `{connective}`")));
            }
            entries.insert(
                connective.clone(),
                ConnectiveEntry {
                    connective,
                    class,
                    senses,
                },
            );
        }
        if entries.is_empty() {
            return Err(Error::Validation(format!("{origin}: connective lexicon is empty")));
        }
        Ok(Lexicon { entries })
    }

    pub fn get(&self, connective: &str) -> Option<&ConnectiveEntry> {
        self.entries.get(&normalize_connective(connective))
    }

    pub fn entries(&self) -> impl Iterator<Item = &ConnectiveEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Whether `connective` may signal `sense`, compared at `level`.
    pub fn licenses(&self, connective: &str, sense: &SenseLabel, level: u8) -> bool {
        let want = sense.truncated(level);
        self.get(connective)
            .is_some_and(|e| e.senses.iter().any(|s| s.truncated(level) == want))
    }
}
