//! Conversion of an aligned document into shallow discourse relations.
//!
//! Modules run in precedence order: Explicit, AltLex, AltLexC, Implicit,
//! with Hypophora independent of the others and EntRel/NoRel filling the
//! remaining adjacent sentence pairs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use log::warn;

use crate::corpus::{Document, NodeId, Nuclearity, RstLabel, RstRelation};
use crate::predictor::Predictor;
use crate::relation::{Flag, PdtbRelation, RelationType};
use crate::senses::{MappingResources, SenseLabel};
use crate::spans::{finalize, place_args, ArgOptions};
use crate::span::TokenSpan;

mod constructions;
mod entrel;
mod explicit;
mod implicit;
mod junctions;
mod patterns;

pub use constructions::Construction;
pub use entrel::generate_entrel_norel;
pub use explicit::generate_explicit;
pub use implicit::generate_implicit;
pub use junctions::{find_implicit_junctions, Junction, JunctionKind};
pub use patterns::{
    match_altlex, match_altlexc, AltLexPattern, ConstructionRule, Patterns, SHIPPED_ALTLEX, SHIPPED_ALTLEXC,
};

/// One of the two endpoints of a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Source,
    Target,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Source => Side::Target,
            Side::Target => Side::Source,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EndpointRole {
    Satellite,
    Nucleus,
    FirstNucleus,
    SecondNucleus,
    /// A bare sentence, for relations not derived from the RST tree.
    Sentence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endpoint {
    pub node: Option<NodeId>,
    /// Token extent derived from the EDUs the endpoint covers.
    pub span: TokenSpan,
    pub head_edu: usize,
    pub role: EndpointRole,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub module: &'static str,
    pub rule: String,
}

impl Provenance {
    pub fn new(module: &'static str, rule: impl Into<String>) -> Self {
        Provenance {
            module,
            rule: rule.into(),
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.module, self.rule)
    }
}

/// A relation proposed by one module, before argument placement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateRelation {
    pub rel_type: RelationType,
    pub conn_tokens: TokenSpan,
    pub conn_text: String,
    /// Satellite, later nucleus, or later sentence.
    pub source: Endpoint,
    /// Nucleus, earlier nucleus, or earlier sentence.
    pub target: Endpoint,
    /// Endpoint hosting the connective or construction.
    pub host: Option<Side>,
    pub rst_relation_id: Option<String>,
    pub rst_label: Option<RstLabel>,
    pub junction: Option<JunctionKind>,
    /// Allowed senses in frequency-rank order.
    pub candidate_senses: Vec<SenseLabel>,
    /// Resolved senses, at most two.
    pub senses: Vec<SenseLabel>,
    pub flags: BTreeSet<Flag>,
    pub provenance: Provenance,
}

impl CandidateRelation {
    pub fn endpoint(&self, side: Side) -> &Endpoint {
        match side {
            Side::Source => &self.source,
            Side::Target => &self.target,
        }
    }

    /// Head EDUs of both endpoints, smaller first.
    pub fn head_pair(&self) -> (usize, usize) {
        let (a, b) = (self.source.head_edu, self.target.head_edu);
        (a.min(b), a.max(b))
    }

    /// Sentences of the two head EDUs, smaller first.
    pub fn head_sentences(&self, doc: &Document) -> (usize, usize) {
        let (a, b) = self.head_pair();
        let (a, b) = (doc.sentence_of_edu(a), doc.sentence_of_edu(b));
        (a.min(b), a.max(b))
    }
}

/// Endpoints of an RST relation as (source, target). Satellites and
/// multinuclear members cover their whole subtree; a nucleus excludes the
/// satellites attached to it.
pub fn relation_endpoints(doc: &Document, rel: &RstRelation) -> Option<(Endpoint, Endpoint)> {
    let tree = &doc.rst;
    let (mut src_edus, mut tgt_edus, roles) = match rel.nuclearity {
        Nuclearity::SatelliteToNucleus => (
            tree.dominated_edus(rel.source),
            tree.nuclear_edus(rel.target),
            (EndpointRole::Satellite, EndpointRole::Nucleus),
        ),
        Nuclearity::Multinuclear => (
            tree.dominated_edus(rel.source),
            tree.dominated_edus(rel.target),
            (EndpointRole::SecondNucleus, EndpointRole::FirstNucleus),
        ),
    };
    // secondary edges may link a node to one of its ancestors or descendants
    if tgt_edus.iter().all(|e| src_edus.contains(e)) {
        src_edus.retain(|e| !tgt_edus.contains(e));
    } else {
        tgt_edus.retain(|e| !src_edus.contains(e));
    }
    if src_edus.is_empty() || tgt_edus.is_empty() {
        return None;
    }
    let src_head = tree
        .head_edu(rel.source)
        .filter(|h| src_edus.contains(h))
        .unwrap_or(*src_edus.iter().next()?);
    let tgt_head = tree
        .head_edu(rel.target)
        .filter(|h| tgt_edus.contains(h))
        .unwrap_or(*tgt_edus.iter().next()?);
    Some((
        Endpoint {
            node: Some(rel.source),
            span: doc.edus_span(src_edus),
            head_edu: src_head,
            role: roles.0,
        },
        Endpoint {
            node: Some(rel.target),
            span: doc.edus_span(tgt_edus),
            head_edu: tgt_head,
            role: roles.1,
        },
    ))
}

/// Candidate skeleton for an RST relation; senses and connective are
/// filled in by the calling module.
pub(crate) fn skeleton(
    doc: &Document,
    rel: &RstRelation,
    rel_type: RelationType,
    provenance: Provenance,
) -> Option<CandidateRelation> {
    let (source, target) = relation_endpoints(doc, rel)?;
    let mut flags = BTreeSet::new();
    if matches!(rel.label, RstLabel::ContextBackground | RstLabel::JointOther) && rel_type.has_senses() {
        // labels whose automatic conversion is known to be unreliable
        flags.insert(Flag::LowConfidence);
    }
    Some(CandidateRelation {
        rel_type,
        conn_tokens: TokenSpan::empty(),
        conn_text: String::new(),
        source,
        target,
        host: None,
        rst_relation_id: Some(rel.id.clone()),
        rst_label: Some(rel.label),
        junction: None,
        candidate_senses: Vec::new(),
        senses: Vec::new(),
        flags,
        provenance,
    })
}

/// Side whose extent holds the first connective token, else the side that
/// follows it.
pub(crate) fn host_side(cand: &CandidateRelation, conn: &TokenSpan) -> Option<Side> {
    let first = conn.start()?;
    for side in [Side::Source, Side::Target] {
        if cand.endpoint(side).span.contains(first) {
            return Some(side);
        }
    }
    [Side::Source, Side::Target]
        .into_iter()
        .filter(|&s| cand.endpoint(s).span.start().is_some_and(|st| st > first))
        .min_by_key(|&s| cand.endpoint(s).span.start())
}

/// Everything a conversion run needs besides the document.
#[derive(Debug, Clone)]
pub struct Converter {
    pub resources: MappingResources,
    pub patterns: Patterns,
    pub predictor: Predictor,
    pub options: ArgOptions,
}

impl Converter {
    /// Shipped resources, shipped baseline, no hints.
    pub fn shipped() -> Self {
        let resources = MappingResources::shipped();
        let patterns = Patterns::shipped(&resources.hierarchy);
        Converter {
            resources,
            patterns,
            predictor: Predictor::default(),
            options: ArgOptions::default(),
        }
    }

    /// Resolve the senses of a candidate, consulting hints keyed by its
    /// final argument spans.
    pub(crate) fn resolve(&self, doc: &Document, cand: &mut CandidateRelation) {
        if !cand.rel_type.has_senses() {
            return;
        }
        let placed = place_args(doc, cand, self.options);
        let hint = self.predictor.hints.get(&doc.doc_id, &placed.arg1, &placed.arg2);
        let r = self.predictor.resolve_sense(&cand.candidate_senses, hint);
        if r.map_conflict {
            cand.flags.insert(Flag::MapConflict);
        }
        cand.senses = r.senses;
    }

    /// Run every module and return the candidates with resolved senses.
    pub fn candidates(&self, doc: &Document) -> Vec<CandidateRelation> {
        convert_document(doc, self)
    }

    /// Full conversion: candidates, argument spans and direction.
    pub fn convert(&self, doc: &Document) -> Vec<PdtbRelation> {
        let cands = self.candidates(doc);
        assemble(doc, &cands, self)
    }
}

fn is_conjunction(s: &SenseLabel) -> bool {
    s.level1 == "Expansion" && s.level2 == "Conjunction"
}

/// The cascade. Returns candidates in module order with senses resolved.
pub fn convert_document(doc: &Document, conv: &Converter) -> Vec<CandidateRelation> {
    let res = &conv.resources;
    let mut explicit = generate_explicit(doc, res);
    let mut covered: BTreeSet<(usize, usize)> = explicit.iter().map(CandidateRelation::head_pair).collect();

    let junctions = find_implicit_junctions(doc);
    let mut altlex = match_altlex(doc, &conv.patterns, &junctions, &covered);
    covered.extend(altlex.iter().map(CandidateRelation::head_pair));
    let mut altlexc = match_altlexc(doc, &conv.patterns, &covered);
    covered.extend(altlexc.iter().map(CandidateRelation::head_pair));

    for c in explicit.iter_mut().chain(&mut altlex).chain(&mut altlexc) {
        conv.resolve(doc, c);
    }

    // a sequence signaled by a conjunction also gets an implicit "then"
    let mut and_then = Vec::new();
    for c in &mut explicit {
        if c.rst_label == Some(RstLabel::JointSequence) && c.senses.first().is_some_and(is_conjunction) {
            c.senses.truncate(1);
            // shares the explicit's tokens and host so both get the same arguments
            let precedence = SenseLabel::new("Temporal", "Asynchronous", Some("Precedence"));
            and_then.push(CandidateRelation {
                rel_type: RelationType::Implicit,
                conn_text: "then".to_owned(),
                candidate_senses: vec![precedence.clone()],
                senses: vec![precedence],
                flags: BTreeSet::new(),
                provenance: Provenance::new("implicit", "and-then"),
                ..c.clone()
            });
        }
    }

    let implicit = generate_implicit(doc, &junctions, conv, &covered);
    let hypophora = generate_hypophora(doc);

    let mut all: Vec<CandidateRelation> = explicit;
    all.extend(and_then);
    all.extend(altlex);
    all.extend(altlexc);
    all.extend(implicit);
    all.extend(hypophora);
    let gaps = generate_entrel_norel(doc, &all);
    all.extend(gaps);
    all
}

/// One Hypophora per topic-question relation.
pub fn generate_hypophora(doc: &Document) -> Vec<CandidateRelation> {
    doc.relations
        .iter()
        .filter(|r| r.label == RstLabel::TopicQuestion)
        .filter_map(|r| {
            let c = skeleton(doc, r, RelationType::Hypophora, Provenance::new("hypophora", "topic-question"));
            if c.is_none() {
                warn!("{}: topic-question {} has no usable endpoints", doc.doc_id, r.id);
            }
            c
        })
        .collect()
}

fn precedence(t: RelationType) -> usize {
    match t {
        RelationType::Explicit => 0,
        RelationType::AltLex => 1,
        RelationType::AltLexC => 2,
        RelationType::Implicit => 3,
        _ => 4,
    }
}

/// Finalize candidates into relations. Identical (type, arg1, arg2)
/// duplicates are dropped, and where connective-bearing or implicit
/// relations collide on the same argument pair only the highest-precedence
/// one survives (the and-then implicit excepted).
pub fn assemble(doc: &Document, cands: &[CandidateRelation], conv: &Converter) -> Vec<PdtbRelation> {
    let mut finals: Vec<(usize, PdtbRelation)> = cands
        .iter()
        .map(|c| (precedence(c.rel_type), finalize(doc, c, &conv.resources, conv.options)))
        .collect();
    let mut best: BTreeMap<(TokenSpan, TokenSpan), usize> = BTreeMap::new();
    for (p, r) in &finals {
        if *p < 4 && r.origin.as_deref() != Some("implicit.and-then") {
            let e = best.entry((r.arg1.clone(), r.arg2.clone())).or_insert(*p);
            *e = (*e).min(*p);
        }
    }
    let mut seen = BTreeSet::new();
    finals.retain(|(p, r)| {
        if *p < 4 && r.origin.as_deref() != Some("implicit.and-then") {
            let top = best[&(r.arg1.clone(), r.arg2.clone())];
            if *p > top {
                warn!(
                    "{}: {} {}|{} shadowed by a higher-precedence relation",
                    doc.doc_id, r.rel_type, r.arg1, r.arg2
                );
                return false;
            }
        }
        let fresh = seen.insert((r.rel_type, r.arg1.clone(), r.arg2.clone()));
        if !fresh {
            warn!("{}: duplicate {} {}|{} dropped", doc.doc_id, r.rel_type, r.arg1, r.arg2);
        }
        fresh
    });
    let mut out: Vec<PdtbRelation> = finals.into_iter().map(|(_, r)| r).collect();
    crate::relation::sort_relations(&mut out);
    out
}

#[cfg(test)]
pub(crate) mod fixtures;
