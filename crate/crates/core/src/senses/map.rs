use std::collections::BTreeMap;
use std::str::FromStr;

use super::{Hierarchy, SenseLabel};
use crate::corpus::RstLabel;
use crate::error::{Error, Result};

/// RST role that plays the marked role of a directional sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MappedRole {
    Satellite,
    Nucleus,
    /// Earlier nucleus of a multinuclear relation.
    First,
    /// Later nucleus of a multinuclear relation.
    Second,
}

impl FromStr for MappedRole {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "satellite" => Ok(MappedRole::Satellite),
            "nucleus" => Ok(MappedRole::Nucleus),
            "first" => Ok(MappedRole::First),
            "second" => Ok(MappedRole::Second),
            other => Err(Error::Validation(format!("unknown RST role `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Directionality {
    /// Direction follows nuclearity.
    FixedArg(MappedRole),
    /// Direction follows the text order of the nuclei.
    OrderDependent(MappedRole),
    Symmetric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapEntry {
    pub sense: SenseLabel,
    pub role: Option<MappedRole>,
    /// Relative frequency used to order senses when no connective decides.
    pub weight: u32,
}

impl MapEntry {
    pub fn directionality(&self) -> Directionality {
        match self.role {
            Some(r @ (MappedRole::Satellite | MappedRole::Nucleus)) => Directionality::FixedArg(r),
            Some(r) => Directionality::OrderDependent(r),
            None => Directionality::Symmetric,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RstSenseMap {
    entries: BTreeMap<RstLabel, Vec<MapEntry>>,
}

impl RstSenseMap {
    /// Rows are `rst_label  sense  role  weight`; a sense of `-` declares a
    /// label that spawns no relation. Every discourse label must appear.
    pub fn parse(text: &str, origin: &str, hierarchy: &Hierarchy) -> Result<RstSenseMap> {
        let mut entries: BTreeMap<RstLabel, Vec<MapEntry>> = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let line_no = n + 1;
            let f: Vec<&str> = line.split('\t').map(str::trim).collect();
            if f.len() != 4 {
                return Err(Error::parse(origin, line_no, 1, format!("expected 4 columns, found {}", f.len())));
            }
            let label: RstLabel = f[0]
                .parse()
                .map_err(|e: Error| Error::parse(origin, line_no, 1, e.to_string()))?;
            let list = entries.entry(label).or_default();
            if f[1] == "-" {
                continue;
            }
            let sense = hierarchy
                .normalize(f[1])
                .map_err(|e| Error::parse(origin, line_no, 2, e.to_string()))?;
            let role = match f[2] {
                "-" | "" => None,
                r => Some(r.parse().map_err(|e: Error| Error::parse(origin, line_no, 3, e.to_string()))?),
            };
            if role.is_none() && sense.level3.is_none() && hierarchy.is_directional(&sense) {
                return Err(Error::parse(
                    origin,
                    line_no,
                    3,
                    format!("directional sense {sense} needs an RST role"),
                ));
            }
            let weight = f[3]
                .parse()
                .map_err(|_| Error::parse(origin, line_no, 4, format!("invalid weight `{}`", f[3])))?;
            list.push(MapEntry { sense, role, weight });
        }
        let missing: Vec<&str> = RstLabel::ALL
            .iter()
            .filter(|l| l.is_discourse() && !entries.contains_key(l))
            .map(|l| l.as_str())
            .collect();
        if !missing.is_empty() {
            return Err(Error::Validation(format!(
                "{origin}: no mapping for GUM RST labels {}",
                missing.join(", ")
            )));
        }
        for list in entries.values_mut() {
            list.sort_by(|a, b| b.weight.cmp(&a.weight).then_with(|| a.sense.cmp(&b.sense)));
        }
        Ok(RstSenseMap { entries })
    }

    /// Mapped senses, heaviest first; empty for labels that spawn nothing.
    pub fn entries(&self, label: RstLabel) -> &[MapEntry] {
        self.entries.get(&label).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn spawns_relations(&self, label: RstLabel) -> bool {
        !self.entries(label).is_empty()
    }

    /// The entry governing `sense` under `label`, matched at Level-2.
    pub fn entry_for(&self, label: RstLabel, sense: &SenseLabel) -> Option<&MapEntry> {
        self.entries(label).iter().find(|e| e.sense.same_level2(sense))
    }
}
