//! Argument spans: Arg1/Arg2 assignment, minimality clipping, attribution
//! stripping and restoration of directional sense subtypes.

use std::collections::BTreeSet;

use crate::cascade::{CandidateRelation, EndpointRole, Side};
use crate::corpus::{Document, EdgeKind, Nuclearity};
use crate::relation::{Flag, PdtbRelation, RelationType};
use crate::senses::{ArgRole, Hierarchy, MappedRole, MappingResources, SenseLabel};
use crate::span::TokenSpan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ArgOptions {
    /// Keep connective tokens inside the argument that hosts them.
    pub include_connective: bool,
}

/// Final argument spans of a candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedArgs {
    pub arg1: TokenSpan,
    pub arg2: TokenSpan,
    /// Which candidate endpoint became Arg1.
    pub arg1_side: Side,
    pub flags: BTreeSet<Flag>,
}

fn is_question(doc: &Document, span: &TokenSpan) -> bool {
    span.tokens().any(|t| doc.tokens[t].form.contains('?'))
}

/// Decide which endpoint is Arg1. A connective or construction marks its
/// host as Arg2; an intra-sentential implicit relation takes the satellite
/// as Arg2; a question is Arg1 of a hypophora; otherwise text order rules.
pub fn assign_arg_roles(cand: &CandidateRelation, doc: &Document) -> Side {
    let linear = || {
        if cand.source.span.start() <= cand.target.span.start() {
            Side::Source
        } else {
            Side::Target
        }
    };
    match cand.rel_type {
        RelationType::Hypophora => {
            match (is_question(doc, &cand.source.span), is_question(doc, &cand.target.span)) {
                (true, false) => Side::Source,
                (false, true) => Side::Target,
                _ => linear(),
            }
        }
        _ if cand.host.is_some() => cand.host.map(Side::other).unwrap_or(Side::Source),
        RelationType::Implicit if cand.junction.is_some_and(|k| k.is_intra_sentential()) => {
            match (cand.source.role, cand.target.role) {
                (EndpointRole::Satellite, _) => Side::Target,
                (_, EndpointRole::Satellite) => Side::Source,
                _ => linear(),
            }
        }
        _ => linear(),
    }
}

/// Reduce a multi-sentence span to the sentence holding its head EDU.
pub fn clip_minimal(doc: &Document, span: &TokenSpan, head_edu: usize) -> TokenSpan {
    let sentences: BTreeSet<usize> = span.tokens().map(|t| doc.tokens[t].sent_index).collect();
    if sentences.len() <= 1 {
        return span.clone();
    }
    let clipped = span.intersection(&doc.sentence_span(doc.sentence_of_edu(head_edu)));
    if clipped.is_empty() {
        span.clone()
    } else {
        clipped
    }
}

/// Remove the outermost attribution satellite whose nucleus contains the
/// head EDU and whose tokens lie inside the span. Returns the span and
/// whether removal would have emptied it (in which case it is unchanged).
pub fn strip_attribution(doc: &Document, span: &TokenSpan, head_edu: usize) -> (TokenSpan, bool) {
    let mut best: Option<(usize, TokenSpan)> = None;
    for rel in &doc.relations {
        if !rel.label.is_attribution()
            || rel.edge_kind != EdgeKind::Tree
            || rel.nuclearity != Nuclearity::SatelliteToNucleus
        {
            continue;
        }
        let scope = doc.rst.nuclear_edus(rel.target);
        if !scope.contains(&head_edu) {
            continue;
        }
        let satellite = doc.edus_span(doc.rst.dominated_edus(rel.source));
        if !satellite.is_subset_of(span) {
            continue;
        }
        if best.as_ref().is_none_or(|(size, _)| scope.len() > *size) {
            best = Some((scope.len(), satellite));
        }
    }
    match best {
        None => (span.clone(), false),
        Some((_, satellite)) => {
            let stripped = span.difference(&satellite);
            if stripped.is_empty() {
                (span.clone(), true)
            } else {
                (stripped, false)
            }
        }
    }
}

/// Assign, clip, strip and separate the two arguments of a candidate.
pub fn place_args(doc: &Document, cand: &CandidateRelation, options: ArgOptions) -> PlacedArgs {
    let mut flags = BTreeSet::new();
    let arg1_side = assign_arg_roles(cand, doc);
    let shape = |side: Side, flags: &mut BTreeSet<Flag>| {
        let ep = cand.endpoint(side);
        let clipped = clip_minimal(doc, &ep.span, ep.head_edu);
        let stripped = if ep.node.is_some() {
            let (s, emptied) = strip_attribution(doc, &clipped, ep.head_edu);
            if emptied {
                flags.insert(Flag::LowConfidence);
            }
            s
        } else {
            clipped
        };
        if options.include_connective && cand.host == Some(side) {
            stripped
        } else {
            let without = stripped.difference(&cand.conn_tokens);
            if without.is_empty() {
                flags.insert(Flag::LowConfidence);
                stripped
            } else {
                without
            }
        }
    };
    let mut arg1 = shape(arg1_side, &mut flags);
    let mut arg2 = shape(arg1_side.other(), &mut flags);
    if arg1.overlaps(&arg2) {
        flags.insert(Flag::Overlap);
        if arg1.len() >= arg2.len() {
            let rest = arg1.difference(&arg2);
            if !rest.is_empty() {
                arg1 = rest;
            }
        } else {
            let rest = arg2.difference(&arg1);
            if !rest.is_empty() {
                arg2 = rest;
            }
        }
    }
    PlacedArgs {
        arg1,
        arg2,
        arg1_side,
        flags,
    }
}

/// The subtype of a directional sense that puts its marked role on
/// `marked`. Symmetric senses come back unchanged.
pub fn restore_direction(hierarchy: &Hierarchy, sense: &SenseLabel, marked: ArgRole) -> SenseLabel {
    hierarchy.with_marked_arg(sense, marked)
}

/// Argument that holds the RST role named by a map entry.
fn marked_arg(cand: &CandidateRelation, role: MappedRole, arg1_side: Side) -> ArgRole {
    let side = match role {
        MappedRole::Satellite => Side::Source,
        MappedRole::Nucleus => Side::Target,
        MappedRole::First | MappedRole::Second => {
            let source_first = cand.source.span.start() <= cand.target.span.start();
            let first = if source_first { Side::Source } else { Side::Target };
            if role == MappedRole::First {
                first
            } else {
                first.other()
            }
        }
    };
    if side == arg1_side {
        ArgRole::Arg1
    } else {
        ArgRole::Arg2
    }
}

/// Fix the Level-3 subtype of one sense for a placed candidate.
fn direct_sense(
    res: &MappingResources,
    cand: &CandidateRelation,
    sense: &SenseLabel,
    arg1_side: Side,
    flags: &mut BTreeSet<Flag>,
) -> SenseLabel {
    let h = &res.hierarchy;
    let base = sense.truncated(2);
    if !h.is_directional(&base) {
        return sense.clone();
    }
    // a subtype with no pole (e.g. negative result) is not a direction
    if sense.level3.is_some() && h.pole(sense).is_none() {
        return sense.clone();
    }
    let role = cand
        .rst_label
        .and_then(|l| res.map.entry_for(l, sense))
        .and_then(|e| e.role);
    match role {
        Some(role) => restore_direction(h, &base, marked_arg(cand, role, arg1_side)),
        None if sense.level3.is_some() => sense.clone(),
        None => {
            flags.insert(Flag::LowConfidence);
            restore_direction(h, &base, ArgRole::Arg2)
        }
    }
}

/// Turn a resolved candidate into a final relation.
pub fn finalize(
    doc: &Document,
    cand: &CandidateRelation,
    res: &MappingResources,
    options: ArgOptions,
) -> PdtbRelation {
    let placed = place_args(doc, cand, options);
    let mut flags = cand.flags.clone();
    flags.extend(placed.flags.iter().copied());
    let mut senses: Vec<SenseLabel> = Vec::new();
    if cand.rel_type.has_senses() {
        for s in &cand.senses {
            let directed = direct_sense(res, cand, s, placed.arg1_side, &mut flags);
            if !senses.contains(&directed) {
                senses.push(directed);
            }
        }
    }
    PdtbRelation {
        doc_id: doc.doc_id.clone(),
        rel_type: cand.rel_type,
        conn_text: cand.conn_text.clone(),
        conn_tokens: if cand.rel_type.has_conn_tokens() {
            cand.conn_tokens.clone()
        } else {
            TokenSpan::empty()
        },
        arg1_text: doc.text(&placed.arg1),
        arg2_text: doc.text(&placed.arg2),
        arg1: placed.arg1,
        arg2: placed.arg2,
        senses,
        rst_label: cand.rst_label,
        flags,
        origin: Some(cand.provenance.to_string()),
    }
}
