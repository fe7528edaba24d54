use std::collections::BTreeMap;

use log::debug;

use crate::corpus::Document;
use crate::relation::{Flag, RelationType};
use crate::senses::MappingResources;
use crate::span::TokenSpan;

use super::{host_side, skeleton, CandidateRelation, Provenance};

/// One Explicit candidate per RST relation carrying a connective signal.
/// Labels that map to no sense (attribution, organization, questions) are
/// skipped.
pub fn generate_explicit(doc: &Document, res: &MappingResources) -> Vec<CandidateRelation> {
    let mut by_relation: BTreeMap<&str, Vec<&TokenSpan>> = BTreeMap::new();
    let spans: Vec<(String, TokenSpan)> = doc
        .signals
        .iter()
        .filter(|s| s.is_connective())
        .map(|s| (s.relation_id.clone(), TokenSpan::from_tokens(s.token_indices.iter().copied())))
        .collect();
    for (id, span) in &spans {
        by_relation.entry(id.as_str()).or_default().push(span);
    }

    let mut out = Vec::new();
    for rel in &doc.relations {
        let Some(signal_spans) = by_relation.get(rel.id.as_str()) else { continue };
        if !rel.is_discourse() || !res.map.spawns_relations(rel.label) {
            debug!("{}: connective on {} ({}) spawns nothing", doc.doc_id, rel.id, rel.label);
            continue;
        }
        let Some(mut cand) = skeleton(doc, rel, RelationType::Explicit, Provenance::new("explicit", "signal")) else {
            continue;
        };
        let conn = signal_spans.iter().fold(TokenSpan::empty(), |acc, s| acc.union(s));
        let text = doc.text(&conn);
        // multi-part signals are looked up whole, then part by part
        let key = std::iter::once(text.clone())
            .chain(signal_spans.iter().map(|s| doc.text(s)))
            .find(|k| res.lexicon.get(k).is_some())
            .unwrap_or_else(|| text.clone());
        let allowed = res.allowed_senses(Some(&key), rel.label);
        if allowed.unknown_connective {
            cand.flags.insert(Flag::UnknownConnective);
        }
        if allowed.map_conflict {
            cand.flags.insert(Flag::MapConflict);
        }
        cand.host = host_side(&cand, &conn);
        cand.conn_tokens = conn;
        cand.conn_text = text;
        cand.candidate_senses = allowed.senses;
        out.push(cand);
    }
    out
}
