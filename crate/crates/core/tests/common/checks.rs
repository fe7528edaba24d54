//! Property bodies shared by the property suite and the acceptance runner.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rst2pdtb::cascade::{relation_endpoints, Converter, EndpointRole};
use rst2pdtb::corpus::{write_conllu, write_coref, write_rst};
use rst2pdtb::eval::{align_relations, emit_confusion, score, MatchRegime};
use rst2pdtb::predictor::{Hint, Predictor};
use rst2pdtb::relation::{PdtbRelation, RelationType};
use rst2pdtb::senses::{shipped_hierarchy, ArgRole, SenseLabel};
use rst2pdtb::spans::{clip_minimal, restore_direction, strip_attribution};
use rst2pdtb::TokenSpan;

use super::{build, parse_layers, DocSpec, Layers};

pub type Check = Result<(), TestCaseError>;

const LINKED: [RelationType; 4] = [
    RelationType::Explicit,
    RelationType::AltLex,
    RelationType::AltLexC,
    RelationType::Implicit,
];

pub fn is_and_then(r: &PdtbRelation) -> bool {
    r.origin.as_deref() == Some("implicit.and-then")
}

/// EDUs partition the tokens, paragraphs never go backwards, signals
/// resolve, and re-serializing the layers gives back the same document.
pub fn partition_and_round_trip(spec: &DocSpec) -> Check {
    let doc = build(spec);
    let mut cursor = 0;
    for edu in &doc.edus {
        prop_assert_eq!(edu.tokens.start, cursor);
        prop_assert!(edu.tokens.end > edu.tokens.start);
        cursor = edu.tokens.end;
    }
    prop_assert_eq!(cursor, doc.tokens.len());
    prop_assert!(doc.tokens.windows(2).all(|w| w[0].par_index <= w[1].par_index));
    for s in &doc.signals {
        prop_assert!(doc.relation(&s.relation_id).is_some());
    }
    let again = Layers {
        conllu: write_conllu(&doc),
        rs4: write_rst(&doc),
        coref: write_coref(&doc),
    };
    let back = parse_layers(&again).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(back, doc);
    Ok(())
}

/// At most one connective-bearing or implicit relation per argument pair,
/// apart from the implicit "then" paired with an explicit conjunction.
pub fn precedence_is_exclusive(spec: &DocSpec) -> Check {
    let doc = build(spec);
    let rels = Converter::shipped().convert(&doc);
    let mut by_args: BTreeMap<(TokenSpan, TokenSpan), Vec<&PdtbRelation>> = BTreeMap::new();
    for r in rels.iter().filter(|r| LINKED.contains(&r.rel_type) && !is_and_then(r)) {
        by_args.entry((r.arg1.clone(), r.arg2.clone())).or_default().push(r);
    }
    for (args, group) in &by_args {
        prop_assert_eq!(group.len(), 1, "{:?} carries {:?}", args, group);
    }
    for r in rels.iter().filter(|r| is_and_then(r)) {
        prop_assert_eq!(r.senses[0].to_string(), "Temporal.Asynchronous.Precedence");
        let explicit = &by_args[&(r.arg1.clone(), r.arg2.clone())][0];
        prop_assert_eq!(explicit.rel_type, RelationType::Explicit);
        prop_assert_eq!(explicit.senses.len(), 1);
        prop_assert_eq!(&explicit.senses[0].truncated(2).to_string(), "Expansion.Conjunction");
    }
    Ok(())
}

/// Every adjacent same-paragraph sentence pair is related; EntRel and NoRel
/// appear only where nothing else relates the pair.
pub fn adjacent_sentences_are_covered(spec: &DocSpec) -> Check {
    let doc = build(spec);
    let cands = Converter::shipped().candidates(&doc);
    let mut related: BTreeMap<(usize, usize), Vec<RelationType>> = BTreeMap::new();
    for c in &cands {
        related.entry(c.head_sentences(&doc)).or_default().push(c.rel_type);
    }
    for par in &doc.paragraphs {
        for s in par.sentences.start..par.sentences.end.saturating_sub(1) {
            let types = related.get(&(s, s + 1)).cloned().unwrap_or_default();
            prop_assert!(!types.is_empty(), "pair {} unrelated", s);
            let gaps = types
                .iter()
                .filter(|t| matches!(t, RelationType::EntRel | RelationType::NoRel))
                .count();
            prop_assert!(gaps == 0 || types.len() == 1, "pair {}: {:?}", s, types);
        }
    }
    for c in cands
        .iter()
        .filter(|c| matches!(c.rel_type, RelationType::EntRel | RelationType::NoRel))
    {
        let (a, b) = c.head_sentences(&doc);
        prop_assert_eq!(b, a + 1);
        prop_assert_eq!(doc.sentences[a].par_index, doc.sentences[b].par_index);
        prop_assert_eq!(c.source.role, EndpointRole::Sentence);
    }
    Ok(())
}

/// Clipping is idempotent and shrinks; attribution stripping shrinks.
pub fn clipping_is_idempotent(spec: &DocSpec, pick: prop::sample::Index) -> Check {
    let doc = build(spec);
    if doc.relations.is_empty() {
        return Ok(());
    }
    let Some((src, tgt)) = relation_endpoints(&doc, pick.get(&doc.relations)) else {
        return Ok(());
    };
    for ep in [src, tgt] {
        let once = clip_minimal(&doc, &ep.span, ep.head_edu);
        prop_assert!(once.is_subset_of(&ep.span));
        prop_assert_eq!(clip_minimal(&doc, &once, ep.head_edu), once.clone());
        let (stripped, _) = strip_attribution(&doc, &ep.span, ep.head_edu);
        prop_assert!(stripped.is_subset_of(&ep.span));
    }
    Ok(())
}

/// Drop, relabel or retype some relations, keeping keys unique.
pub fn perturb(rels: &[PdtbRelation], choices: &[u8]) -> Vec<PdtbRelation> {
    let leaves: Vec<SenseLabel> = shipped_hierarchy().leaf_senses().collect();
    let mut out = Vec::new();
    for (i, r) in rels.iter().enumerate() {
        let c = choices.get(i).copied().unwrap_or(0);
        let mut r = r.clone();
        match c % 4 {
            0 => {}
            1 if r.rel_type.has_senses() => r.senses = vec![leaves[c as usize % leaves.len()].clone()],
            2 => continue,
            _ => {
                r.rel_type = if r.rel_type == RelationType::NoRel {
                    RelationType::EntRel
                } else {
                    RelationType::NoRel
                }
            }
        }
        out.push(r);
    }
    let mut seen = BTreeSet::new();
    out.retain(|r| seen.insert((r.rel_type, r.arg1.clone(), r.arg2.clone())));
    out
}

/// A file scored against itself is perfect; label matching never beats
/// span-only matching; confusion cells count single-sense pairs.
pub fn scoring_identity_and_order(spec: &DocSpec, choices: &[u8]) -> Check {
    let doc = build(spec);
    let gold = Converter::shipped().convert(&doc);
    let al = align_relations(&gold, &gold).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let s = score(&al, MatchRegime::exact());
    for prf in s.per_type.values().chain([&s.micro]) {
        prop_assert!(prf.precision.is_none_or(|p| p == 1.0));
        prop_assert!(prf.recall.is_none_or(|r| r == 1.0));
        prop_assert!(prf.f1.is_none_or(|f| f == 1.0));
    }
    let pred = perturb(&gold, choices);
    let al = align_relations(&pred, &gold).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let exact = score(&al, MatchRegime::exact()).micro.f1.unwrap_or(0.0);
    let loose = score(&al, MatchRegime::span_only()).micro.f1.unwrap_or(0.0);
    prop_assert!(exact <= loose + 1e-12, "exact {} > span-only {}", exact, loose);
    let single = al
        .pairs
        .iter()
        .filter(|(g, p)| g.senses.len() == 1 && p.senses.len() == 1)
        .count();
    prop_assert_eq!(emit_confusion(&al, 2).total(), single);
    Ok(())
}

/// Swapping the arguments of every directional sense flips its subtype,
/// and flipping back restores it.
pub fn direction_involution() -> Check {
    let h = shipped_hierarchy();
    let senses = h.directional_senses();
    prop_assert!(!senses.is_empty());
    for sense in senses {
        for marked in [ArgRole::Arg1, ArgRole::Arg2] {
            let directed = restore_direction(h, &sense, marked);
            prop_assert_eq!(h.pole(&directed), Some(marked), "{}", sense);
            let swapped = restore_direction(h, &directed, marked.other());
            prop_assert_eq!(h.pole(&swapped), Some(marked.other()), "{}", directed);
            prop_assert_eq!(restore_direction(h, &swapped, marked), directed.clone(), "{}", sense);
        }
    }
    Ok(())
}

/// Resolved senses come from the candidates (the first one when nothing
/// else applies); the conflict flag is raised exactly when a non-empty
/// hint names none of the candidates.
pub fn resolution_stays_within_candidates(
    cand_picks: &[prop::sample::Index],
    hint_picks: &[(prop::sample::Index, f64)],
    threshold: f64,
) -> Check {
    let leaves: Vec<SenseLabel> = shipped_hierarchy().leaf_senses().collect();
    let mut candidates: Vec<SenseLabel> = Vec::new();
    for p in cand_picks {
        let s = p.get(&leaves).clone();
        if !candidates.contains(&s) {
            candidates.push(s);
        }
    }
    let hint = Hint {
        connective: None,
        senses: hint_picks.iter().map(|(p, prob)| (p.get(&leaves).clone(), *prob)).collect(),
    };
    let predictor = Predictor {
        threshold,
        ..Predictor::default()
    };
    let r = predictor.resolve_sense(&candidates, Some(&hint));
    prop_assert!(r.senses.len() <= 2);
    prop_assert_eq!(r.senses.is_empty(), candidates.is_empty());
    for s in &r.senses {
        prop_assert!(candidates.contains(s), "{} not a candidate", s);
    }
    let matches = |h: &SenseLabel, c: &SenseLabel| {
        h.level1 == c.level1
            && (h.level2.is_empty() || (h.level2 == c.level2 && (h.level3.is_none() || h.level3 == c.level3)))
    };
    let disjoint = !hint.senses.is_empty()
        && !candidates.is_empty()
        && !candidates.iter().any(|c| hint.senses.iter().any(|(h, _)| matches(h, c)));
    prop_assert_eq!(r.map_conflict, disjoint);
    if disjoint || hint.senses.is_empty() {
        prop_assert_eq!(r.senses.first(), candidates.first());
    }
    Ok(())
}
