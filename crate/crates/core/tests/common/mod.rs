//! Random multi-layer documents for property tests.
//!
//! A [`DocSpec`] is a bag of small integers drawn by proptest; [`build`]
//! turns it into consistent dependency, discourse and mention layers, so
//! shrinking works on the document description rather than on serialized text.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

pub mod checks;

use proptest::prelude::*;
use rst2pdtb::corpus::{align_layers, parse_conllu, parse_coref, parse_rst, Document};

pub const DOC_ID: &str = "GUM_news_random";

const WORDS: &[&str] = &[
    "he", "she", "it", "the", "storm", "town", "was", "ran", "tired", "more", "to", "that", "because", "but",
    "although", "so", "and", "then", "if", "when", "Had", "this", "causes", "Ohio",
];
const CONNECTIVES: &[&str] = &["because", "but", "although", "so", "and", "then", "if", "when"];
const PRONOUNS: &[&str] = &["he", "she", "it", "this"];
const DEPRELS: &[&str] = &["dep", "nsubj", "obj", "advcl", "conj", "mark", "punct", "aux", "obl", "cop"];
const FEATS: &[&str] = &["_", "VerbForm=Fin", "VerbForm=Ger", "VerbForm=Part", "Degree=Cmp"];
/// Sentence-initial phrases as (form, upos, deprel), each attached to the
/// sentence root that follows them.
const OPENERS: &[&[(&str, &str, &str)]] = &[
    &[("this", "PRON", "nsubj"), ("causes", "VERB", "dep")],
    &[("Had", "AUX", "aux"), ("he", "PRON", "nsubj")],
    &[("after", "ADP", "case"), ("this", "PRON", "obl")],
];
const SAT_LABELS: &[&str] = &[
    "elaboration-additional",
    "causal-cause",
    "causal-result",
    "adversative-concession",
    "contingency-condition",
    "purpose-goal",
    "context-circumstance",
    "context-background",
    "explanation-evidence",
    "attribution-positive",
    "topic-question",
    "evaluation-comment",
    "organization-preparation",
];
const MULTI_LABELS: &[&str] = &["joint-list", "joint-sequence", "joint-other", "adversative-contrast", "same-unit"];

#[derive(Debug, Clone)]
pub struct SentSpec {
    /// Word indices; the first word is the root.
    pub words: Vec<u8>,
    /// Per non-root word: (deprel, feats, attach to previous word).
    pub deps: Vec<(u8, u8, bool)>,
    /// Optional EDU break inside the sentence.
    pub split: Option<u8>,
    pub question: bool,
    pub opener: Option<u8>,
}

#[derive(Debug, Clone)]
pub struct DocSpec {
    pub paragraphs: Vec<Vec<SentSpec>>,
    /// Tree-building steps: (position, kind, label).
    pub merges: Vec<(u8, u8, u8)>,
    /// Mentions: (token, entity, pronoun, definite).
    pub mentions: Vec<(u16, u8, bool, bool)>,
    /// Secondary edges between segments: (source, target, label).
    pub secondary: Vec<(u8, u8, u8)>,
}

fn sentence() -> impl Strategy<Value = SentSpec> {
    (
        prop::collection::vec(any::<u8>(), 2..7),
        prop::collection::vec((any::<u8>(), any::<u8>(), any::<bool>()), 6),
        prop::option::of(any::<u8>()),
        prop::bool::weighted(0.15),
        prop::option::weighted(0.3, any::<u8>()),
    )
        .prop_map(|(words, deps, split, question, opener)| SentSpec {
            words,
            deps,
            split,
            question,
            opener,
        })
}

pub fn doc_spec() -> impl Strategy<Value = DocSpec> {
    (
        prop::collection::vec(prop::collection::vec(sentence(), 1..5), 1..4),
        prop::collection::vec((any::<u8>(), any::<u8>(), any::<u8>()), 0..24),
        prop::collection::vec((any::<u16>(), 0u8..3, any::<bool>(), any::<bool>()), 0..10),
        prop::collection::vec((any::<u8>(), any::<u8>(), any::<u8>()), 0..3),
    )
        .prop_map(|(paragraphs, merges, mentions, secondary)| DocSpec {
            paragraphs,
            merges,
            mentions,
            secondary,
        })
}

/// The three serialized layers of a generated document.
#[derive(Debug, Clone)]
pub struct Layers {
    pub conllu: String,
    pub rs4: String,
    pub coref: String,
}

struct Unit {
    node: u32,
    first_edu: usize,
}

pub fn layers(spec: &DocSpec) -> Layers {
    let mut conllu = format!("# newdoc id = {DOC_ID}\n# meta::genre = news\n");
    let mut forms: Vec<String> = Vec::new();
    let mut edus: Vec<(usize, usize)> = Vec::new();
    for par in &spec.paragraphs {
        conllu.push_str("# newpar\n");
        for s in par {
            let start = forms.len();
            let opener = s.opener.map_or(&[][..], |o| OPENERS[o as usize % OPENERS.len()]);
            let k = opener.len();
            for (i, (form, upos, deprel)) in opener.iter().enumerate() {
                let _ = writeln!(conllu, "{}\t{form}\t{form}\t{upos}\t_\t_\t{}\t{deprel}\t_\t_", i + 1, k + 1);
                forms.push((*form).to_owned());
            }
            let n = k + s.words.len() + 1;
            for (i, &w) in s.words.iter().enumerate() {
                let form = WORDS[w as usize % WORDS.len()];
                let (head, deprel, feats) = if i == 0 {
                    (0, "root", "VerbForm=Fin")
                } else {
                    let (d, f, prev) = s.deps[(i - 1) % s.deps.len()];
                    let head = if prev && i > 1 { k + i } else { k + 1 };
                    (head, DEPRELS[d as usize % DEPRELS.len()], FEATS[f as usize % FEATS.len()])
                };
                let upos = match deprel {
                    "root" | "advcl" | "conj" => "VERB",
                    "aux" | "cop" => "AUX",
                    "mark" => "SCONJ",
                    "punct" => "PUNCT",
                    _ if PRONOUNS.contains(&form) => "PRON",
                    _ => "NOUN",
                };
                let _ = writeln!(conllu, "{}\t{form}\t{form}\t{upos}\t_\t{feats}\t{head}\t{deprel}\t_\t_", k + i + 1);
                forms.push(form.to_owned());
            }
            let end_form = if s.question { "?" } else { "." };
            let _ = writeln!(conllu, "{n}\t{end_form}\t{end_form}\tPUNCT\t_\t_\t{}\tpunct\t_\t_", k + 1);
            forms.push(end_form.to_owned());
            conllu.push('\n');
            let end = forms.len();
            match s.split.map(|k| 1 + k as usize % (n - 1)) {
                Some(k) if k < n => {
                    edus.push((start, start + k));
                    edus.push((start + k, end));
                }
                _ => edus.push((start, end)),
            }
        }
    }

    // tree by repeatedly joining adjacent units
    let mut rs4 = String::from("<rst>\n<header>\n<relations>\n");
    for l in SAT_LABELS {
        let _ = writeln!(rs4, "<rel name=\"{l}\" type=\"rst\"/>");
    }
    for l in MULTI_LABELS {
        let _ = writeln!(rs4, "<rel name=\"{l}\" type=\"multinuc\"/>");
    }
    rs4.push_str("</relations>\n</header>\n<body>\n");
    let mut parent: Vec<Option<(u32, String)>> = vec![None; edus.len() + 1];
    let mut groups: Vec<(u32, &str)> = Vec::new();
    let mut signals: Vec<(u32, usize)> = Vec::new();
    let mut units: Vec<Unit> = (0..edus.len())
        .map(|e| Unit {
            node: e as u32 + 1,
            first_edu: e,
        })
        .collect();
    let mut next_id = edus.len() as u32 + 1;
    let mut step = 0;
    let set_parent = |parent: &mut Vec<Option<(u32, String)>>, node: u32, p: u32, rel: &str| {
        let idx = node as usize;
        if parent.len() <= idx {
            parent.resize(idx + 1, None);
        }
        parent[idx] = Some((p, rel.to_owned()));
    };
    while units.len() > 1 {
        let (pos, kind, label) = spec
            .merges
            .get(step)
            .copied()
            .unwrap_or((step as u8, 1, 0));
        step += 1;
        let i = pos as usize % (units.len() - 1);
        let right = units.remove(i + 1);
        let left = units.remove(i);
        let group = next_id;
        next_id += 1;
        let first_token = |u: &Unit| edus[u.first_edu].0;
        match kind % 3 {
            2 => {
                let l = MULTI_LABELS[label as usize % MULTI_LABELS.len()];
                groups.push((group, "multinuc"));
                set_parent(&mut parent, left.node, group, l);
                set_parent(&mut parent, right.node, group, l);
                if CONNECTIVES.contains(&forms[first_token(&right)].as_str()) {
                    signals.push((right.node, first_token(&right)));
                }
            }
            k => {
                let l = SAT_LABELS[label as usize % SAT_LABELS.len()];
                let (nuc, sat) = if k == 0 { (&right, &left) } else { (&left, &right) };
                groups.push((group, "span"));
                set_parent(&mut parent, nuc.node, group, "span");
                set_parent(&mut parent, sat.node, nuc.node, l);
                if CONNECTIVES.contains(&forms[first_token(sat)].as_str()) {
                    signals.push((sat.node, first_token(sat)));
                }
            }
        }
        units.insert(
            i,
            Unit {
                node: group,
                first_edu: left.first_edu,
            },
        );
    }
    let attrs = |node: u32| match parent.get(node as usize).cloned().flatten() {
        Some((p, rel)) => format!(" parent=\"{p}\" relname=\"{rel}\""),
        None => String::new(),
    };
    for (e, &(a, b)) in edus.iter().enumerate() {
        let id = e as u32 + 1;
        let _ = writeln!(rs4, "<segment id=\"{id}\"{}>{}</segment>", attrs(id), forms[a..b].join(" "));
    }
    for &(id, kind) in &groups {
        let _ = writeln!(rs4, "<group id=\"{id}\" type=\"{kind}\"{}/>", attrs(id));
    }
    rs4.push_str("<secedges>\n");
    let mut seen = BTreeSet::new();
    for &(a, b, l) in &spec.secondary {
        let n = edus.len() as u32;
        let (a, b) = (a as u32 % n + 1, b as u32 % n + 1);
        if a == b || !seen.insert((a, b)) {
            continue;
        }
        let label = SAT_LABELS[l as usize % SAT_LABELS.len()];
        let _ = writeln!(rs4, "<secedge id=\"{a}-{b}\" source=\"{a}\" target=\"{b}\" relname=\"{label}_r\"/>");
    }
    rs4.push_str("</secedges>\n<signals>\n");
    for (node, tok) in signals {
        let _ = writeln!(rs4, "<signal source=\"{node}\" type=\"dm\" subtype=\"dm\" tokens=\"{}\"/>", tok + 1);
    }
    rs4.push_str("</signals>\n</body>\n</rst>\n");

    let mut coref = String::from("doc_id\tentity_id\tstart\tend\tis_pronoun\tis_definite\n");
    let mut used = BTreeSet::new();
    for &(t, e, pron, def) in &spec.mentions {
        let t = t as usize % forms.len();
        if used.insert(t) {
            let _ = writeln!(coref, "{DOC_ID}\te{e}\t{}\t{}\t{}\t{}", t + 1, t + 1, u8::from(pron), u8::from(def));
        }
    }
    Layers { conllu, rs4, coref }
}

pub fn parse_layers(l: &Layers) -> rst2pdtb::Result<Document> {
    let syntax = parse_conllu(l.conllu.as_bytes(), "random.conllu")?;
    let rst = parse_rst(l.rs4.as_bytes(), "random.rs4")?;
    let mut mentions = parse_coref(l.coref.as_bytes(), "random.tsv")?;
    align_layers(DOC_ID, None, syntax, rst, mentions.remove(DOC_ID).unwrap_or_default())
}

pub fn build(spec: &DocSpec) -> Document {
    let l = layers(spec);
    parse_layers(&l).unwrap_or_else(|e| panic!("generated document invalid: {e}\n{}\n{}", l.conllu, l.rs4))
}

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}
