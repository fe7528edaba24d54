//! Reader and writer for eRST XML (`.rs4`/`.rs3`): segments, groups,
//! secondary edges and signals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::Read;

use log::warn;
use roxmltree::Node;

use super::{
    Document, EdgeKind, Edu, NodeId, NodeKind, Nuclearity, Relname, RstNode, RstRelation,
    RstTree, SecondaryEdge, Signal,
};
use crate::error::{Error, Result};

/// Everything read from one eRST file, before alignment with syntax.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RstLayer {
    /// Surface tokens in segment order.
    pub token_forms: Vec<String>,
    pub edus: Vec<Edu>,
    pub tree: RstTree,
    pub relations: Vec<RstRelation>,
    pub signals: Vec<Signal>,
}

#[derive(Debug, Default)]
struct DeclaredTypes {
    rst: BTreeSet<String>,
    multinuc: BTreeSet<String>,
}

/// Parse one eRST document.
pub fn parse_rst<R: Read>(mut input: R, origin: &str) -> Result<RstLayer> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    let xml = roxmltree::Document::parse(&text).map_err(|e| {
        let pos = e.pos();
        Error::parse(origin, pos.row as usize, pos.col as usize, e.to_string())
    })?;
    let pos_of = |node: Node| {
        let p = xml.text_pos_at(node.range().start);
        (p.row as usize, p.col as usize)
    };

    let root = xml.root_element();
    let mut declared = DeclaredTypes::default();
    for rel in root.descendants().filter(|n| n.has_tag_name("rel")) {
        let name = rel.attribute("name").unwrap_or_default().to_ascii_lowercase();
        match rel.attribute("type") {
            Some("multinuc") => declared.multinuc.insert(name),
            _ => declared.rst.insert(name),
        };
    }

    let body = root
        .children()
        .find(|n| n.has_tag_name("body"))
        .ok_or_else(|| Error::parse(origin, 1, 1, "missing <body> element"))?;

    struct RawNode {
        kind: NodeKind,
        parent: Option<NodeId>,
        relname: Option<String>,
        line: (usize, usize),
    }

    let mut raw: BTreeMap<NodeId, RawNode> = BTreeMap::new();
    let mut token_forms = Vec::new();
    let mut edus = Vec::new();
    let mut raw_secedges = Vec::new();
    let mut raw_signals = Vec::new();

    let id_attr = |node: Node, name: &str| -> Result<NodeId> {
        let (line, col) = pos_of(node);
        let value = node
            .attribute(name)
            .ok_or_else(|| Error::parse(origin, line, col, format!("missing `{name}` attribute")))?;
        value
            .trim()
            .parse()
            .map_err(|_| Error::parse(origin, line, col, format!("invalid node id `{value}`")))
    };
    let opt_id = |node: Node, name: &str| -> Result<Option<NodeId>> {
        match node.attribute(name) {
            None | Some("") => Ok(None),
            Some(_) => id_attr(node, name).map(Some),
        }
    };

    for el in body.descendants().filter(|n| n.is_element()) {
        match el.tag_name().name() {
            "segment" => {
                let id = id_attr(el, "id")?;
                let start = token_forms.len();
                let text: String = el.children().filter_map(|c| c.text()).collect();
                token_forms.extend(text.split_whitespace().map(str::to_owned));
                let edu_index = edus.len();
                edus.push(Edu {
                    id,
                    tokens: start..token_forms.len(),
                    sent_indices: BTreeSet::new(),
                });
                let node = RawNode {
                    kind: NodeKind::Segment(edu_index),
                    parent: opt_id(el, "parent")?,
                    relname: el.attribute("relname").map(str::to_owned),
                    line: pos_of(el),
                };
                if raw.insert(id, node).is_some() {
                    let (l, c) = pos_of(el);
                    return Err(Error::parse(origin, l, c, format!("duplicate node id {id}")));
                }
            }
            "group" => {
                let id = id_attr(el, "id")?;
                let kind = match el.attribute("type") {
                    Some("multinuc") => NodeKind::Multinuc,
                    _ => NodeKind::Span,
                };
                let node = RawNode {
                    kind,
                    parent: opt_id(el, "parent")?,
                    relname: el.attribute("relname").map(str::to_owned),
                    line: pos_of(el),
                };
                if raw.insert(id, node).is_some() {
                    let (l, c) = pos_of(el);
                    return Err(Error::parse(origin, l, c, format!("duplicate node id {id}")));
                }
            }
            "secedge" => {
                let id = el.attribute("id").unwrap_or_default().to_owned();
                raw_secedges.push((
                    id,
                    id_attr(el, "source")?,
                    id_attr(el, "target")?,
                    el.attribute("relname").unwrap_or_default().to_owned(),
                ));
            }
            "signal" => {
                raw_signals.push((
                    el.attribute("source").unwrap_or_default().to_owned(),
                    el.attribute("type").unwrap_or_default().to_owned(),
                    el.attribute("subtype").unwrap_or_default().to_owned(),
                    el.attribute("tokens").unwrap_or_default().to_owned(),
                    pos_of(el),
                ));
            }
            _ => {}
        }
    }

    let mut nodes = BTreeMap::new();
    for (&id, node) in &raw {
        if let Some(p) = node.parent {
            if !raw.contains_key(&p) {
                return Err(Error::Integrity(format!(
                    "{origin}: node {id} refers to missing parent {p}"
                )));
            }
        }
        let (relname, forced) = match (&node.relname, node.parent) {
            (Some(name), Some(_)) => {
                let (r, f) = parse_relname(name).map_err(|e| with_line(e, origin, node.line))?;
                (Some(r), f)
            }
            _ => (None, None),
        };
        let multinuc_child = match (relname, node.parent) {
            (Some(Relname::Label(label)), Some(p)) if raw[&p].kind == NodeKind::Multinuc => {
                match forced {
                    Some(m) => m,
                    None => {
                        let name = label.as_str();
                        declared.multinuc.contains(name) || !declared.rst.contains(name)
                    }
                }
            }
            _ => false,
        };
        nodes.insert(
            id,
            RstNode {
                id,
                kind: node.kind,
                parent: node.parent,
                relname,
                multinuc_child,
            },
        );
    }

    let mut secondary = Vec::new();
    let mut secedge_forced = BTreeMap::new();
    for (id, source, target, relname) in raw_secedges {
        for n in [source, target] {
            if !nodes.contains_key(&n) {
                return Err(Error::Integrity(format!(
                    "{origin}: secondary edge {id} refers to missing node {n}"
                )));
            }
        }
        let (label, forced) = match parse_relname(&relname)? {
            (Relname::Label(l), f) => (l, f),
            (Relname::Span, _) => {
                return Err(Error::Validation(format!(
                    "{origin}: secondary edge {id} cannot be labeled `span`"
                )))
            }
        };
        secedge_forced.insert(id.clone(), forced);
        secondary.push(SecondaryEdge {
            id,
            source,
            target,
            label,
        });
    }

    let tree = RstTree::new(nodes, secondary);
    let (relations, aliases) = derive_relations(&tree, &secedge_forced);

    let mut signals = Vec::new();
    for (source, class, subtype, tokens, (line, col)) in raw_signals {
        let is_node = source.parse::<NodeId>().ok().is_some_and(|n| tree.node(n).is_some());
        let is_edge = tree.secondary_edges().iter().any(|e| e.id == source);
        if !is_node && !is_edge {
            return Err(Error::Integrity(format!(
                "{origin}:{line}:{col}: signal refers to missing node or edge `{source}`"
            )));
        }
        let Some(relation_id) = aliases.get(&source).cloned() else {
            warn!("{origin}:{line}: signal on `{source}` has no relation to justify; skipped");
            continue;
        };
        let mut token_indices = Vec::new();
        for t in tokens.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let one_based: usize = t
                .parse()
                .map_err(|_| Error::parse(origin, line, col, format!("invalid token id `{t}`")))?;
            if one_based == 0 || one_based > token_forms.len() {
                return Err(Error::Integrity(format!(
                    "{origin}:{line}:{col}: signal token {one_based} outside document of {} tokens",
                    token_forms.len()
                )));
            }
            token_indices.push(one_based - 1);
        }
        if token_indices.is_empty() {
            continue;
        }
        token_indices.sort_unstable();
        token_indices.dedup();
        signals.push(Signal {
            source,
            relation_id,
            class,
            subtype,
            token_indices,
        });
    }

    Ok(RstLayer {
        token_forms,
        edus,
        tree,
        relations,
        signals,
    })
}

fn with_line(err: Error, origin: &str, (line, col): (usize, usize)) -> Error {
    match err {
        Error::Validation(msg) => Error::Validation(format!("{origin}:{line}:{col}: {msg}")),
        other => other,
    }
}

/// Strip the `_r`/`_m` suffix some exports add and map to a label. The
/// second value is the nuclearity forced by the suffix, if any.
fn parse_relname(name: &str) -> Result<(Relname, Option<bool>)> {
    let lower = name.trim().to_ascii_lowercase();
    let (base, forced) = if let Some(b) = lower.strip_suffix("_m") {
        (b, Some(true))
    } else if let Some(b) = lower.strip_suffix("_r") {
        (b, Some(false))
    } else {
        (lower.as_str(), None)
    };
    if base == "span" {
        return Ok((Relname::Span, None));
    }
    Ok((Relname::Label(base.parse()?), forced))
}

/// Turn parent links and secondary edges into relations. The second value
/// maps every signal-bearing id (node or edge) to the relation it names.
fn derive_relations(
    tree: &RstTree,
    secedge_forced: &BTreeMap<String, Option<bool>>,
) -> (Vec<RstRelation>, BTreeMap<String, String>) {
    let mut relations = Vec::new();
    let mut aliases = BTreeMap::new();

    for node in tree.nodes().values() {
        let (Some(parent), Some(Relname::Label(label))) = (node.parent, node.relname) else {
            continue;
        };
        if node.multinuc_child {
            continue;
        }
        let id = node.id.to_string();
        aliases.insert(id.clone(), id.clone());
        relations.push(RstRelation {
            id,
            label,
            source: node.id,
            target: parent,
            nuclearity: Nuclearity::SatelliteToNucleus,
            edge_kind: EdgeKind::Tree,
        });
    }

    for node in tree.nodes().values() {
        if node.kind != NodeKind::Multinuc {
            continue;
        }
        let members: Vec<&RstNode> = tree
            .children(node.id)
            .iter()
            .map(|c| tree.node(*c).expect("child exists"))
            .filter(|c| c.multinuc_child)
            .collect();
        for pair in members.windows(2) {
            let (earlier, later) = (pair[0], pair[1]);
            let Some(Relname::Label(label)) = later.relname else { continue };
            let id = later.id.to_string();
            aliases.insert(id.clone(), id.clone());
            aliases.entry(earlier.id.to_string()).or_insert_with(|| id.clone());
            relations.push(RstRelation {
                id,
                label,
                source: later.id,
                target: earlier.id,
                nuclearity: Nuclearity::Multinuclear,
                edge_kind: EdgeKind::Tree,
            });
        }
    }

    for edge in tree.secondary_edges() {
        let multinuclear = secedge_forced
            .get(&edge.id)
            .copied()
            .flatten()
            .unwrap_or_else(|| edge.label.default_multinuclear());
        aliases.insert(edge.id.clone(), edge.id.clone());
        relations.push(RstRelation {
            id: edge.id.clone(),
            label: edge.label,
            source: edge.source,
            target: edge.target,
            nuclearity: if multinuclear {
                Nuclearity::Multinuclear
            } else {
                Nuclearity::SatelliteToNucleus
            },
            edge_kind: EdgeKind::TreeBreaking,
        });
    }

    (relations, aliases)
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

fn relname_attr(node: &RstNode) -> Option<String> {
    match node.relname? {
        Relname::Span => Some("span".to_owned()),
        Relname::Label(l) => Some(format!(
            "{}_{}",
            l.as_str(),
            if node.multinuc_child { 'm' } else { 'r' }
        )),
    }
}

/// Serialize the discourse layer of a document as eRST XML.
pub fn write_rst(doc: &Document) -> String {
    let mut declared: BTreeSet<(String, &'static str)> = BTreeSet::new();
    for node in doc.rst.nodes().values() {
        if let Some(Relname::Label(l)) = node.relname {
            declared.insert((l.as_str().to_owned(), if node.multinuc_child { "multinuc" } else { "rst" }));
        }
    }
    for rel in doc.relations.iter().filter(|r| r.edge_kind == EdgeKind::TreeBreaking) {
        let kind = match rel.nuclearity {
            Nuclearity::Multinuclear => "multinuc",
            Nuclearity::SatelliteToNucleus => "rst",
        };
        declared.insert((rel.label.as_str().to_owned(), kind));
    }

    let mut out = String::from("<rst>\n\t<header>\n\t\t<relations>\n");
    for (name, kind) in &declared {
        let _ = writeln!(out, "\t\t\t<rel name=\"{name}\" type=\"{kind}\"/>");
    }
    out.push_str("\t\t</relations>\n\t</header>\n\t<body>\n");

    let attrs = |node: &RstNode| {
        let mut s = String::new();
        if let Some(p) = node.parent {
            let _ = write!(s, " parent=\"{p}\"");
        }
        if let Some(r) = relname_attr(node) {
            let _ = write!(s, " relname=\"{r}\"");
        }
        s
    };

    let mut segments: Vec<(usize, &RstNode)> = doc
        .rst
        .nodes()
        .values()
        .filter_map(|n| match n.kind {
            NodeKind::Segment(e) => Some((e, n)),
            _ => None,
        })
        .collect();
    segments.sort_by_key(|(e, _)| *e);
    for (e, node) in segments {
        let text = doc.tokens[doc.edus[e].tokens.clone()]
            .iter()
            .map(|t| escape(&t.form))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, "\t\t<segment id=\"{}\"{}>{}</segment>", node.id, attrs(node), text);
    }
    for node in doc.rst.nodes().values() {
        let kind = match node.kind {
            NodeKind::Segment(_) => continue,
            NodeKind::Span => "span",
            NodeKind::Multinuc => "multinuc",
        };
        let _ = writeln!(out, "\t\t<group id=\"{}\" type=\"{kind}\"{}/>", node.id, attrs(node));
    }

    out.push_str("\t\t<secedges>\n");
    for rel in doc.relations.iter().filter(|r| r.edge_kind == EdgeKind::TreeBreaking) {
        let suffix = match rel.nuclearity {
            Nuclearity::Multinuclear => 'm',
            Nuclearity::SatelliteToNucleus => 'r',
        };
        let _ = writeln!(
            out,
            "\t\t\t<secedge id=\"{}\" source=\"{}\" target=\"{}\" relname=\"{}_{suffix}\"/>",
            escape(&rel.id),
            rel.source,
            rel.target,
            rel.label
        );
    }
    out.push_str("\t\t</secedges>\n\t\t<signals>\n");
    for s in &doc.signals {
        let tokens = s
            .token_indices
            .iter()
            .map(|t| (t + 1).to_string())
            .collect::<Vec<_>>()
            .join(",");
        let _ = writeln!(
            out,
            "\t\t\t<signal source=\"{}\" type=\"{}\" subtype=\"{}\" tokens=\"{tokens}\"/>",
            escape(&s.source),
            escape(&s.class),
            escape(&s.subtype)
        );
    }
    out.push_str("\t\t</signals>\n\t</body>\n</rst>\n");
    out
}
