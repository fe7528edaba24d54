//! PDTB v3 sense inventory, connective lexicon and the RST-to-PDTB mapping.
//!
//! All three are tab-separated data files. The crate ships default copies
//! (see `data/`), loaded by [`MappingResources::shipped`].

use std::path::Path;
use std::sync::OnceLock;

use crate::corpus::RstLabel;
use crate::error::{Error, Result};

mod hierarchy;
mod lexicon;
mod map;

pub use hierarchy::{ArgRole, Hierarchy, HierarchyEntry, SenseLabel};
pub use lexicon::{normalize_connective, ConnectiveEntry, Lexicon, SyntacticClass};
pub use map::{Directionality, MapEntry, MappedRole, RstSenseMap};

pub const SHIPPED_HIERARCHY: &str = include_str!("../../data/hierarchy.tsv");
pub const SHIPPED_LEXICON: &str = include_str!("../../data/lexicon.tsv");
pub const SHIPPED_MAP: &str = include_str!("../../data/rst_map.tsv");

/// Validated, immutable sense resources.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingResources {
    pub hierarchy: Hierarchy,
    pub lexicon: Lexicon,
    pub map: RstSenseMap,
}

/// Answer to an allowed-senses query.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AllowedSenses {
    pub senses: Vec<SenseLabel>,
    /// The connective and the RST label share no sense; `senses` holds the
    /// connective's senses alone.
    pub map_conflict: bool,
    /// The connective is not in the lexicon; `senses` holds the map's senses.
    pub unknown_connective: bool,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn load_resources(hierarchy_file: &Path, lexicon_file: &Path, map_file: &Path) -> Result<MappingResources> {
    MappingResources::from_texts(
        (&read(hierarchy_file)?, &hierarchy_file.display().to_string()),
        (&read(lexicon_file)?, &lexicon_file.display().to_string()),
        (&read(map_file)?, &map_file.display().to_string()),
    )
}

/// The shipped hierarchy, parsed once.
pub fn shipped_hierarchy() -> &'static Hierarchy {
    static CELL: OnceLock<Hierarchy> = OnceLock::new();
    CELL.get_or_init(|| Hierarchy::parse(SHIPPED_HIERARCHY, "hierarchy.tsv").expect("shipped hierarchy is valid"))
}

/// Normalize a raw sense string against the shipped hierarchy.
pub fn normalize_sense(raw: &str) -> Result<SenseLabel> {
    shipped_hierarchy().normalize(raw)
}

impl MappingResources {
    /// Build from `(contents, origin)` pairs.
    pub fn from_texts(hierarchy: (&str, &str), lexicon: (&str, &str), map: (&str, &str)) -> Result<Self> {
        let hierarchy = Hierarchy::parse(hierarchy.0, hierarchy.1)?;
        let lexicon = Lexicon::parse(lexicon.0, lexicon.1, &hierarchy)?;
        let map = RstSenseMap::parse(map.0, map.1, &hierarchy)?;
        Ok(MappingResources { hierarchy, lexicon, map })
    }

    pub fn shipped() -> Self {
        Self::from_texts(
            (SHIPPED_HIERARCHY, "hierarchy.tsv"),
            (SHIPPED_LEXICON, "lexicon.tsv"),
            (SHIPPED_MAP, "rst_map.tsv"),
        )
        .expect("shipped resources are valid")
    }

    /// Senses a relation may carry given its connective (if any) and RST
    /// label. With a connective, its lexicon senses are kept in rank order
    /// when the map lists the same Level-2 sense for the label.
    pub fn allowed_senses(&self, connective: Option<&str>, label: RstLabel) -> AllowedSenses {
        let mapped = self.map.entries(label);
        let from_map = || mapped.iter().map(|e| e.sense.clone()).collect::<Vec<_>>();
        let Some(conn) = connective else {
            return AllowedSenses {
                senses: from_map(),
                ..Default::default()
            };
        };
        let Some(entry) = self.lexicon.get(conn) else {
            return AllowedSenses {
                senses: from_map(),
                unknown_connective: true,
                ..Default::default()
            };
        };
        let kept: Vec<SenseLabel> = entry
            .senses
            .iter()
            .filter(|s| {
                mapped
                    .iter()
                    .any(|m| m.sense.same_level2(s) && (m.sense.level3.is_none() || m.sense.level3 == s.level3))
            })
            .cloned()
            .collect();
        if kept.is_empty() {
            AllowedSenses {
                senses: entry.senses.clone(),
                map_conflict: true,
                ..Default::default()
            }
        } else {
            AllowedSenses {
                senses: kept,
                ..Default::default()
            }
        }
    }
}
