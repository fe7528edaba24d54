use std::collections::BTreeSet;

use crate::corpus::{Document, RstClass, RstRelation};
use crate::relation::RelationType;
use crate::span::TokenSpan;

use super::{relation_endpoints, CandidateRelation, Endpoint, EndpointRole, Provenance};

fn sentence_endpoint(doc: &Document, s: usize) -> Endpoint {
    let span = doc.sentence_span(s);
    let head_edu = span.start().map_or(0, |t| doc.edu_of_token(t));
    Endpoint {
        node: None,
        span,
        head_edu,
        role: EndpointRole::Sentence,
    }
}

/// A joint or elaboration relation with one endpoint reaching into each
/// sentence.
fn linking_relation<'d>(doc: &'d Document, left: &TokenSpan, right: &TokenSpan) -> Option<&'d RstRelation> {
    doc.relations
        .iter()
        .filter(|r| matches!(r.label.class(), RstClass::Joint | RstClass::Elaboration))
        .find(|r| {
            relation_endpoints(doc, r).is_some_and(|(a, b)| {
                (a.span.overlaps(left) && b.span.overlaps(right)) || (a.span.overlaps(right) && b.span.overlaps(left))
            })
        })
}

/// A definite or pronominal mention in sentence `s + 1` whose entity is
/// already mentioned in sentence `s`.
fn has_coreference(doc: &Document, s: usize) -> bool {
    let earlier: BTreeSet<&str> = doc
        .mentions
        .iter()
        .filter(|m| m.sent_index == s)
        .map(|m| m.entity_id.as_str())
        .collect();
    doc.mentions
        .iter()
        .filter(|m| m.sent_index == s + 1 && (m.is_pronoun || m.is_definite))
        .any(|m| earlier.contains(m.entity_id.as_str()))
}

/// EntRel or NoRel for every adjacent same-paragraph sentence pair that no
/// candidate already relates. EntRel needs both an entity-continuing
/// relation across the pair and coreference into the second sentence.
pub fn generate_entrel_norel(doc: &Document, existing: &[CandidateRelation]) -> Vec<CandidateRelation> {
    let covered: BTreeSet<(usize, usize)> = existing.iter().map(|c| c.head_sentences(doc)).collect();
    let mut out = Vec::new();
    for par in &doc.paragraphs {
        for s in par.sentences.start..par.sentences.end.saturating_sub(1) {
            if covered.contains(&(s, s + 1)) {
                continue;
            }
            let (target, source) = (sentence_endpoint(doc, s), sentence_endpoint(doc, s + 1));
            let link = linking_relation(doc, &target.span, &source.span);
            let coref = has_coreference(doc, s);
            let (rel_type, provenance, link) = match (link, coref) {
                (Some(r), true) => (RelationType::EntRel, Provenance::new("entrel", "link+coref"), Some(r)),
                (Some(_), false) => (RelationType::NoRel, Provenance::new("norel", "no-coref"), None),
                (None, true) => (RelationType::NoRel, Provenance::new("norel", "no-link"), None),
                (None, false) => (RelationType::NoRel, Provenance::new("norel", "no-link-no-coref"), None),
            };
            out.push(CandidateRelation {
                rel_type,
                conn_tokens: TokenSpan::empty(),
                conn_text: String::new(),
                source,
                target,
                host: None,
                rst_relation_id: link.map(|r| r.id.clone()),
                rst_label: link.map(|r| r.label),
                junction: None,
                candidate_senses: Vec::new(),
                senses: Vec::new(),
                flags: BTreeSet::new(),
                provenance,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade::fixtures::*;
    use crate::cascade::Converter;
    use crate::corpus::RstLabel;

    #[test]
    fn pronoun_with_elaboration_is_entrel() {
        let doc = entrel_doc();
        let rels = generate_entrel_norel(&doc, &[]);
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].rel_type, RelationType::EntRel);
        assert_eq!(rels[0].rst_label, Some(RstLabel::ElaborationAdditional));
        assert_eq!(doc.text(&rels[0].target.span), "John arrived .");
        assert_eq!(doc.text(&rels[0].source.span), "He was tired .");
    }

    #[test]
    fn no_link_no_coreference_is_norel() {
        let doc = norel_doc();
        let rels = generate_entrel_norel(&doc, &[]);
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].rel_type, RelationType::NoRel);
        assert_eq!(rels[0].rst_label, None);
        assert_eq!(rels[0].provenance.to_string(), "norel.no-link-no-coref");
    }

    #[test]
    fn covered_pairs_are_skipped() {
        let doc = cause_doc();
        let conv = Converter::shipped();
        let rels = conv.convert(&doc);
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].rel_type, RelationType::Implicit);
    }

    #[test]
    fn paragraph_boundary_is_not_a_pair() {
        assert!(generate_entrel_norel(&two_paragraph_doc(), &[]).is_empty());
    }
}
