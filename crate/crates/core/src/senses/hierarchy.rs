use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the two PDTB argument slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArgRole {
    Arg1,
    Arg2,
}

impl ArgRole {
    pub fn other(self) -> ArgRole {
        match self {
            ArgRole::Arg1 => ArgRole::Arg2,
            ArgRole::Arg2 => ArgRole::Arg1,
        }
    }
}

/// A dotted PDTB sense, `Level1.Level2[.Level3]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SenseLabel {
    pub level1: String,
    pub level2: String,
    pub level3: Option<String>,
}

impl SenseLabel {
    pub fn new(level1: &str, level2: &str, level3: Option<&str>) -> Self {
        SenseLabel {
            level1: level1.to_owned(),
            level2: level2.to_owned(),
            level3: level3.map(str::to_owned),
        }
    }

    /// The sense cut down to `level` components (1, 2 or 3).
    pub fn truncated(&self, level: u8) -> SenseLabel {
        SenseLabel {
            level1: self.level1.clone(),
            level2: if level >= 2 { self.level2.clone() } else { String::new() },
            level3: if level >= 3 { self.level3.clone() } else { None },
        }
    }

    pub fn same_level2(&self, other: &SenseLabel) -> bool {
        self.level1 == other.level1 && self.level2 == other.level2
    }

    /// Rendering at a given depth, e.g. `Contingency.Cause` at level 2.
    pub fn at_level(&self, level: u8) -> String {
        self.truncated(level).to_string()
    }
}

impl fmt::Display for SenseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.level1)?;
        if !self.level2.is_empty() {
            write!(f, ".{}", self.level2)?;
        }
        if let Some(l3) = &self.level3 {
            write!(f, ".{l3}")?;
        }
        Ok(())
    }
}

/// Strip belief and speech-act markers from one dotted component.
fn basic_component(part: &str) -> &str {
    let lower = part.to_ascii_lowercase();
    for marker in ["+belief", "+speechact"] {
        if let Some(pos) = lower.find(marker) {
            return part[..pos].trim();
        }
    }
    part.trim()
}

/// Syntactic parse only: components are not checked against a hierarchy.
impl FromStr for SenseLabel {
    type Err = Error;

    fn from_str(raw: &str) -> Result<Self> {
        let parts: Vec<&str> = raw.trim().split('.').map(basic_component).collect();
        if parts.iter().any(|p| p.is_empty()) || !(1..=3).contains(&parts.len()) {
            return Err(Error::Validation(format!("malformed sense `{raw}`")));
        }
        Ok(SenseLabel {
            level1: parts[0].to_owned(),
            level2: parts.get(1).map(|s| (*s).to_owned()).unwrap_or_default(),
            level3: parts.get(2).map(|s| (*s).to_owned()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchyEntry {
    pub level1: String,
    pub level2: String,
    pub level3: Option<String>,
    /// For directional senses, the argument that plays the marked role.
    pub pole: Option<ArgRole>,
}

/// The closed sense inventory.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Hierarchy {
    entries: Vec<HierarchyEntry>,
}

fn optional(field: &str) -> Option<&str> {
    match field.trim() {
        "" | "-" | "_" => None,
        s => Some(s),
    }
}

impl Hierarchy {
    /// Parse `level1 level2 level3 pole` rows; `-` marks an absent value.
    pub fn parse(text: &str, origin: &str) -> Result<Hierarchy> {
        let mut entries: Vec<HierarchyEntry> = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 4 {
                return Err(Error::parse(origin, n + 1, 1, format!("expected 4 columns, found {}", f.len())));
            }
            let pole = match optional(f[3]).map(str::to_ascii_lowercase).as_deref() {
                None => None,
                Some("arg1") => Some(ArgRole::Arg1),
                Some("arg2") => Some(ArgRole::Arg2),
                Some(other) => {
                    return Err(Error::parse(origin, n + 1, 4, format!("invalid pole `{other}`")))
                }
            };
            let entry = HierarchyEntry {
                level1: f[0].trim().to_owned(),
                level2: f[1].trim().to_owned(),
                level3: optional(f[2]).map(str::to_owned),
                pole,
            };
            if entry.level1.is_empty() || entry.level2.is_empty() {
                return Err(Error::parse(origin, n + 1, 1, "empty sense level"));
            }
            if entries
                .iter()
                .any(|e| e.level1 == entry.level1 && e.level2 == entry.level2 && e.level3 == entry.level3)
            {
                return Err(Error::parse(origin, n + 1, 1, format!("duplicate sense row `{}`", line.trim())));
            }
            entries.push(entry);
        }
        if entries.is_empty() {
            return Err(Error::Validation(format!("{origin}: sense hierarchy is empty")));
        }
        Ok(Hierarchy { entries })
    }

    pub fn entries(&self) -> &[HierarchyEntry] {
        &self.entries
    }

    fn canonical<'a>(&'a self, wanted: &str, candidates: impl Iterator<Item = &'a str>) -> Option<&'a str> {
        let mut found = None;
        for c in candidates {
            if c.eq_ignore_ascii_case(wanted) {
                found = Some(c);
            }
        }
        found
    }

    /// Collapse belief/speech-act variants, canonicalize casing and check
    /// membership. Level-1 and Level-2 senses without their subtypes are
    /// accepted as underspecified labels.
    pub fn normalize(&self, raw: &str) -> Result<SenseLabel> {
        let parsed: SenseLabel = raw.parse()?;
        let unknown = || Error::Validation(format!("sense `{raw}` is not in the PDTB v3 sense hierarchy"));
        let l1 = self
            .canonical(&parsed.level1, self.entries.iter().map(|e| e.level1.as_str()))
            .ok_or_else(unknown)?;
        if parsed.level2.is_empty() {
            return Ok(SenseLabel::new(l1, "", None));
        }
        let l2 = self
            .canonical(
                &parsed.level2,
                self.entries.iter().filter(|e| e.level1 == l1).map(|e| e.level2.as_str()),
            )
            .ok_or_else(unknown)?;
        let l3 = match &parsed.level3 {
            None => None,
            Some(l3) => Some(
                self.canonical(
                    l3,
                    self.entries
                        .iter()
                        .filter(|e| e.level1 == l1 && e.level2 == l2)
                        .filter_map(|e| e.level3.as_deref()),
                )
                .ok_or_else(unknown)?,
            ),
        };
        Ok(SenseLabel::new(l1, l2, l3))
    }

    /// Normalize each `|`-joined sense of a multi-sense field.
    pub fn normalize_all(&self, raw: &str) -> Result<Vec<SenseLabel>> {
        raw.split('|')
            .filter(|s| !s.trim().is_empty())
            .map(|s| self.normalize(s))
            .collect()
    }

    pub fn contains(&self, sense: &SenseLabel) -> bool {
        self.entries.iter().any(|e| {
            e.level1 == sense.level1
                && (sense.level2.is_empty()
                    || (e.level2 == sense.level2
                        && (sense.level3.is_none() || e.level3 == sense.level3)))
        })
    }

    fn children<'a>(&'a self, sense: &'a SenseLabel) -> impl Iterator<Item = &'a HierarchyEntry> + 'a {
        self.entries
            .iter()
            .filter(move |e| e.level1 == sense.level1 && e.level2 == sense.level2 && e.level3.is_some())
    }

    /// A Level-2 sense is directional when its subtypes assign the marked
    /// role to Arg1 for one and Arg2 for another.
    pub fn is_directional(&self, sense: &SenseLabel) -> bool {
        let poles: Vec<_> = self.children(sense).filter_map(|e| e.pole).collect();
        poles.contains(&ArgRole::Arg1) && poles.contains(&ArgRole::Arg2)
    }

    /// Level-2 senses whose subtypes encode direction.
    pub fn directional_senses(&self) -> Vec<SenseLabel> {
        let mut out: Vec<SenseLabel> = Vec::new();
        for e in &self.entries {
            let s = SenseLabel::new(&e.level1, &e.level2, None);
            if self.is_directional(&s) && !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }

    /// Argument playing the marked role under a fully specified sense.
    pub fn pole(&self, sense: &SenseLabel) -> Option<ArgRole> {
        sense.level3.as_ref()?;
        self.children(sense).find(|e| e.level3 == sense.level3)?.pole
    }

    /// The subtype of `sense` whose marked role falls on `marked`. Senses
    /// without directional subtypes come back unchanged.
    pub fn with_marked_arg(&self, sense: &SenseLabel, marked: ArgRole) -> SenseLabel {
        if !self.is_directional(sense) {
            return sense.clone();
        }
        match self.children(sense).find(|e| e.pole == Some(marked)) {
            Some(e) => SenseLabel::new(&e.level1, &e.level2, e.level3.as_deref()),
            None => sense.clone(),
        }
    }

    /// Every fully specified sense: Level-3 rows plus Level-2 rows without
    /// subtypes.
    pub fn leaf_senses(&self) -> impl Iterator<Item = SenseLabel> + '_ {
        self.entries
            .iter()
            .map(|e| SenseLabel::new(&e.level1, &e.level2, e.level3.as_deref()))
    }
}
