//! Multi-layer document model: dependency syntax, eRST discourse structure
//! and coreference, aligned on one document-wide 0-based token index.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use crate::span::TokenSpan;

mod align;
pub mod conllu;
pub mod coref;
mod label;
pub mod rst;

pub use align::{align_layers, infer_genre};
pub use conllu::{parse_conllu, parse_conllu_documents, write_conllu, SyntaxLayer};
pub use coref::{parse_coref, write_coref, MentionTable};
pub use label::{RstClass, RstLabel};
pub use rst::{parse_rst, write_rst, RstLayer};

pub type NodeId = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub index: usize,
    pub form: String,
    pub lemma: String,
    pub upos: String,
    pub xpos: String,
    pub feats: String,
    /// Document-wide index of the syntactic head; `None` for the root.
    pub head: Option<usize>,
    pub deprel: String,
    pub sent_index: usize,
    pub par_index: usize,
}

impl Token {
    /// Universal dependency relation without its subtype (`advcl:relcl` -> `advcl`).
    pub fn base_deprel(&self) -> &str {
        self.deprel.split(':').next().unwrap_or("")
    }

    pub fn feature(&self, name: &str) -> Option<&str> {
        self.feats
            .split('|')
            .filter_map(|kv| kv.split_once('='))
            .find(|(k, _)| *k == name)
            .map(|(_, v)| v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub index: usize,
    pub tokens: Range<usize>,
    pub par_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paragraph {
    pub index: usize,
    pub sentences: Range<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edu {
    /// Segment id as written in the discourse layer.
    pub id: u32,
    pub tokens: Range<usize>,
    pub sent_indices: BTreeSet<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// A leaf carrying the position of its EDU in `Document::edus`.
    Segment(usize),
    Span,
    Multinuc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relname {
    /// Structural link from a nucleus to its enclosing span.
    Span,
    Label(RstLabel),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RstNode {
    pub id: NodeId,
    pub kind: NodeKind,
    pub parent: Option<NodeId>,
    pub relname: Option<Relname>,
    /// Set when the node is one of the nuclei of a multinuclear parent.
    pub multinuc_child: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondaryEdge {
    pub id: String,
    pub source: NodeId,
    pub target: NodeId,
    pub label: RstLabel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Nuclearity {
    SatelliteToNucleus,
    Multinuclear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    Tree,
    TreeBreaking,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RstRelation {
    pub id: String,
    pub label: RstLabel,
    /// Satellite for directed relations, the later nucleus for multinuclear ones.
    pub source: NodeId,
    /// Nucleus for directed relations, the earlier nucleus for multinuclear ones.
    pub target: NodeId,
    pub nuclearity: Nuclearity,
    pub edge_kind: EdgeKind,
}

impl RstRelation {
    pub fn is_discourse(&self) -> bool {
        self.label.is_discourse()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signal {
    /// Node or secondary edge id the signal was attached to in the source file.
    pub source: String,
    pub relation_id: String,
    pub class: String,
    pub subtype: String,
    pub token_indices: Vec<usize>,
}

/// Signal classes that count as connectives.
pub const CONNECTIVE_SIGNAL_CLASSES: &[&str] = &["dm", "orphan"];

impl Signal {
    pub fn is_connective(&self) -> bool {
        CONNECTIVE_SIGNAL_CLASSES.contains(&self.class.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mention {
    pub entity_id: String,
    pub tokens: Range<usize>,
    pub is_pronoun: bool,
    pub is_definite: bool,
    /// Sentence of the first token; filled in by [`align_layers`].
    pub sent_index: usize,
}

/// The constituency of an RST tree plus its secondary edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RstTree {
    nodes: BTreeMap<NodeId, RstNode>,
    secondary: Vec<SecondaryEdge>,
    children: BTreeMap<NodeId, Vec<NodeId>>,
}

impl RstTree {
    pub fn new(nodes: BTreeMap<NodeId, RstNode>, secondary: Vec<SecondaryEdge>) -> Self {
        let mut children: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        for node in nodes.values() {
            if let Some(p) = node.parent {
                children.entry(p).or_default().push(node.id);
            }
        }
        let mut tree = RstTree {
            nodes,
            secondary,
            children,
        };
        let first: BTreeMap<NodeId, usize> = tree
            .nodes
            .keys()
            .map(|&id| (id, tree.first_edu(id).unwrap_or(usize::MAX)))
            .collect();
        for kids in tree.children.values_mut() {
            kids.sort_by_key(|k| (first[k], *k));
        }
        tree
    }

    pub fn nodes(&self) -> &BTreeMap<NodeId, RstNode> {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Option<&RstNode> {
        self.nodes.get(&id)
    }

    pub fn secondary_edges(&self) -> &[SecondaryEdge] {
        &self.secondary
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        self.children.get(&id).map(Vec::as_slice).unwrap_or(&[])
    }

    fn first_edu(&self, id: NodeId) -> Option<usize> {
        self.dominated_edus(id).into_iter().next()
    }

    /// All EDU positions dominated by the node, satellites included.
    pub fn dominated_edus(&self, id: NodeId) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack = vec![id];
        let mut seen = BTreeSet::new();
        while let Some(n) = stack.pop() {
            if !seen.insert(n) {
                continue;
            }
            if let Some(NodeKind::Segment(e)) = self.nodes.get(&n).map(|n| n.kind) {
                out.insert(e);
            }
            stack.extend(self.children.get(&n).into_iter().flatten().copied());
        }
        out
    }

    /// EDUs of the node excluding satellites attached directly to it: the
    /// extent a node has when it is the nucleus of one of those satellites.
    pub fn nuclear_edus(&self, id: NodeId) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        if let Some(NodeKind::Segment(e)) = self.nodes.get(&id).map(|n| n.kind) {
            out.insert(e);
        }
        for &child in self.children(id) {
            let c = &self.nodes[&child];
            if c.relname == Some(Relname::Span) || c.multinuc_child {
                out.extend(self.dominated_edus(child));
            }
        }
        out
    }

    /// Head EDU reached by following nucleus links down from the node;
    /// multinuclear nodes resolve to their leftmost nucleus.
    pub fn head_edu(&self, id: NodeId) -> Option<usize> {
        let mut current = id;
        for _ in 0..=self.nodes.len() {
            let node = self.nodes.get(&current)?;
            match node.kind {
                NodeKind::Segment(e) => return Some(e),
                NodeKind::Span => {
                    current = *self
                        .children(current)
                        .iter()
                        .find(|&&c| self.nodes[&c].relname == Some(Relname::Span))?;
                }
                NodeKind::Multinuc => {
                    current = *self
                        .children(current)
                        .iter()
                        .find(|&&c| self.nodes[&c].multinuc_child)?;
                }
            }
        }
        None
    }
}

/// An aligned, validated multi-layer document. Immutable once built by
/// [`align_layers`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub doc_id: String,
    pub genre: String,
    pub tokens: Vec<Token>,
    pub sentences: Vec<Sentence>,
    pub paragraphs: Vec<Paragraph>,
    pub edus: Vec<Edu>,
    pub rst: RstTree,
    pub relations: Vec<RstRelation>,
    pub signals: Vec<Signal>,
    pub mentions: Vec<Mention>,
    edu_of_token: Vec<usize>,
}

impl Document {
    pub fn edu_of_token(&self, token: usize) -> usize {
        self.edu_of_token[token]
    }

    pub fn relation(&self, id: &str) -> Option<&RstRelation> {
        self.relations.iter().find(|r| r.id == id)
    }

    pub fn edus_span(&self, edus: impl IntoIterator<Item = usize>) -> TokenSpan {
        TokenSpan::new(edus.into_iter().map(|e| self.edus[e].tokens.clone()))
    }

    pub fn sentence_span(&self, sentence: usize) -> TokenSpan {
        TokenSpan::from_range(self.sentences[sentence].tokens.clone())
    }

    /// Sentence holding the first token of the EDU.
    pub fn sentence_of_edu(&self, edu: usize) -> usize {
        self.tokens[self.edus[edu].tokens.start].sent_index
    }

    pub fn text(&self, span: &TokenSpan) -> String {
        span.tokens()
            .map(|t| self.tokens[t].form.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Dependents of a token, in text order.
    pub fn dependents(&self, head: usize) -> impl Iterator<Item = &Token> + '_ {
        let sent = &self.sentences[self.tokens[head].sent_index];
        self.tokens[sent.tokens.clone()]
            .iter()
            .filter(move |t| t.head == Some(head))
    }

    /// Token indices of the dependency subtree rooted at `root`.
    pub fn subtree(&self, root: usize) -> TokenSpan {
        let sent = &self.sentences[self.tokens[root].sent_index];
        let mut included = vec![root];
        for t in sent.tokens.clone() {
            let mut cursor = Some(t);
            let mut steps = 0;
            while let Some(c) = cursor {
                if c == root {
                    included.push(t);
                    break;
                }
                cursor = self.tokens[c].head;
                steps += 1;
                if steps > sent.tokens.len() {
                    break;
                }
            }
        }
        TokenSpan::from_tokens(included)
    }

    /// Span a relation endpoint covers. Satellites and multinuclear members
    /// contribute everything they dominate; a nucleus of a directed relation
    /// excludes the satellites hanging off it.
    pub fn endpoint_span(&self, node: NodeId, as_nucleus_target: bool) -> TokenSpan {
        let edus = if as_nucleus_target {
            self.rst.nuclear_edus(node)
        } else {
            self.rst.dominated_edus(node)
        };
        self.edus_span(edus)
    }
}

#[cfg(test)]
pub(crate) mod test_util;
