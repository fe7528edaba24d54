use std::collections::BTreeSet;

use log::warn;

use crate::corpus::Document;
use crate::predictor::ConnectiveOrigin;
use crate::relation::{Flag, RelationType};
use crate::spans::place_args;

use super::{skeleton, CandidateRelation, Converter, Junction, Provenance};

/// One Implicit candidate per junction that has an RST relation, maps to
/// at least one sense, and is not already covered (same head EDU pair) by
/// a higher-precedence relation.
pub fn generate_implicit(
    doc: &Document,
    junctions: &[Junction],
    conv: &Converter,
    covered: &BTreeSet<(usize, usize)>,
) -> Vec<CandidateRelation> {
    let res = &conv.resources;
    let mut taken = covered.clone();
    let mut out = Vec::new();
    for j in junctions {
        let Some(rel) = j.rst_relation_id.as_deref().and_then(|id| doc.relation(id)) else {
            continue;
        };
        if !res.map.spawns_relations(rel.label) || taken.contains(&j.head_pair()) {
            continue;
        }
        let Some(mut cand) = skeleton(doc, rel, RelationType::Implicit, Provenance::new("implicit", "")) else {
            warn!("{}: junction on relation {} has no usable endpoints", doc.doc_id, rel.id);
            continue;
        };
        cand.junction = Some(j.kind);
        let placed = place_args(doc, &cand, conv.options);
        let hint = conv.predictor.hints.get(&doc.doc_id, &placed.arg1, &placed.arg2);
        let (conn, origin) = conv.predictor.predict_connective(hint, rel.label);
        if origin == ConnectiveOrigin::BaselineFallback {
            cand.flags.insert(Flag::BaselineFallback);
        }
        let allowed = res.allowed_senses(Some(&conn), rel.label);
        if allowed.unknown_connective {
            cand.flags.insert(Flag::UnknownConnective);
        }
        if allowed.map_conflict {
            cand.flags.insert(Flag::MapConflict);
        }
        cand.conn_text = conn;
        cand.candidate_senses = allowed.senses;
        cand.provenance.rule = format!("{}.{}", origin.as_str(), j.kind.as_str());
        conv.resolve(doc, &mut cand);
        taken.insert(j.head_pair());
        out.push(cand);
    }
    out
}
