//! 10-column dependency format with `newdoc`/`newpar` metadata.
//!
//! Multiword-token range lines (`3-4`) and empty nodes (`5.1`) are not
//! indexed; only syntactic words receive document-wide token indices.

use std::fmt::Write as _;
use std::io::BufRead;

use super::{Document, Paragraph, Sentence, Token};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SyntaxLayer {
    pub doc_id: Option<String>,
    pub genre: Option<String>,
    pub tokens: Vec<Token>,
    pub sentences: Vec<Sentence>,
    pub paragraphs: Vec<Paragraph>,
}

struct Builder {
    layer: SyntaxLayer,
    pending_par: bool,
    /// (line, sentence-local head) for each token of the open sentence.
    open: Vec<(usize, Option<usize>)>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            layer: SyntaxLayer::default(),
            pending_par: false,
            open: Vec::new(),
        }
    }

    fn close_sentence(&mut self, origin: &str) -> Result<()> {
        if self.open.is_empty() {
            return Ok(());
        }
        let start = self.layer.tokens.len() - self.open.len();
        let len = self.open.len();
        for (i, &(line, head)) in self.open.iter().enumerate() {
            if let Some(h) = head {
                if h > len {
                    return Err(Error::Integrity(format!(
                        "{origin}:{line}: head {h} outside sentence of {len} words"
                    )));
                }
                self.layer.tokens[start + i].head = Some(start + h - 1);
            }
        }
        let index = self.layer.sentences.len();
        let par_index = match self.layer.paragraphs.last_mut() {
            Some(p) if !self.pending_par => {
                p.sentences.end = index + 1;
                p.index
            }
            _ => {
                let p = self.layer.paragraphs.len();
                self.layer.paragraphs.push(Paragraph {
                    index: p,
                    sentences: index..index + 1,
                });
                p
            }
        };
        for t in &mut self.layer.tokens[start..] {
            t.sent_index = index;
            t.par_index = par_index;
        }
        self.layer.sentences.push(Sentence {
            index,
            tokens: start..start + len,
            par_index,
        });
        self.pending_par = false;
        self.open.clear();
        Ok(())
    }
}

fn meta_value<'a>(comment: &'a str, key: &str) -> Option<&'a str> {
    let rest = comment.trim().strip_prefix(key)?;
    let rest = rest.trim_start();
    Some(rest.strip_prefix('=').map(str::trim).unwrap_or(rest.trim()))
}

/// Parse every document in a file, splitting on `# newdoc` lines.
pub fn parse_conllu_documents<R: BufRead>(input: R, origin: &str) -> Result<Vec<SyntaxLayer>> {
    let mut docs = Vec::new();
    let mut b = Builder::new();

    for (n, line) in input.lines().enumerate() {
        let line = line?;
        let line_no = n + 1;
        let trimmed = line.trim_end_matches(['\r', '\n']);
        if trimmed.trim().is_empty() {
            b.close_sentence(origin)?;
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(id) = meta_value(comment, "newdoc id").or_else(|| {
                (comment == "newdoc").then_some("")
            }) {
                b.close_sentence(origin)?;
                if !b.layer.tokens.is_empty() || b.layer.doc_id.is_some() {
                    docs.push(std::mem::replace(&mut b, Builder::new()).layer);
                }
                if !id.is_empty() {
                    b.layer.doc_id = Some(id.to_owned());
                }
            } else if comment.starts_with("newpar") {
                if b.layer.sentences.is_empty() && b.open.is_empty() {
                    continue;
                }
                b.pending_par = true;
            } else if let Some(g) = meta_value(comment, "meta::genre").or_else(|| meta_value(comment, "genre")) {
                b.layer.genre = Some(g.to_owned());
            }
            continue;
        }

        let fields: Vec<&str> = trimmed.split('\t').collect();
        if fields.len() != 10 {
            return Err(Error::parse(
                origin,
                line_no,
                1,
                format!("expected 10 tab-separated columns, found {}", fields.len()),
            ));
        }
        let id = fields[0];
        if id.contains('-') || id.contains('.') {
            continue;
        }
        let local: usize = id
            .parse()
            .map_err(|_| Error::parse(origin, line_no, 1, format!("invalid word id `{id}`")))?;
        if local != b.open.len() + 1 {
            return Err(Error::parse(
                origin,
                line_no,
                1,
                format!("word id {local} out of sequence, expected {}", b.open.len() + 1),
            ));
        }
        let head = match fields[6] {
            "_" | "0" => None,
            h => Some(h.parse::<usize>().map_err(|_| {
                Error::parse(origin, line_no, 7, format!("invalid head `{h}`"))
            })?),
        };
        let index = b.layer.tokens.len();
        b.layer.tokens.push(Token {
            index,
            form: fields[1].to_owned(),
            lemma: fields[2].to_owned(),
            upos: fields[3].to_owned(),
            xpos: fields[4].to_owned(),
            feats: fields[5].to_owned(),
            head: None,
            deprel: fields[7].to_owned(),
            sent_index: 0,
            par_index: 0,
        });
        b.open.push((line_no, head));
    }
    b.close_sentence(origin)?;
    if !b.layer.tokens.is_empty() || b.layer.doc_id.is_some() {
        docs.push(b.layer);
    }
    Ok(docs)
}

/// Parse a file holding a single document.
pub fn parse_conllu<R: BufRead>(input: R, origin: &str) -> Result<SyntaxLayer> {
    let mut docs = parse_conllu_documents(input, origin)?;
    match docs.len() {
        0 => Ok(SyntaxLayer::default()),
        1 => Ok(docs.remove(0)),
        n => Err(Error::Validation(format!(
            "{origin}: expected one document, found {n}"
        ))),
    }
}

fn field(s: &str) -> &str {
    if s.is_empty() {
        "_"
    } else {
        s
    }
}

pub fn write_conllu(doc: &Document) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# newdoc id = {}", doc.doc_id);
    let _ = writeln!(out, "# meta::genre = {}", doc.genre);
    for sent in &doc.sentences {
        let first_of_par = doc.paragraphs[sent.par_index].sentences.start == sent.index;
        if first_of_par {
            out.push_str("# newpar\n");
        }
        for t in &doc.tokens[sent.tokens.clone()] {
            let head = t.head.map_or(0, |h| h - sent.tokens.start + 1);
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t_\t_",
                t.index - sent.tokens.start + 1,
                t.form,
                field(&t.lemma),
                field(&t.upos),
                field(&t.xpos),
                field(&t.feats),
                head,
                field(&t.deprel),
            );
        }
        out.push('\n');
    }
    out
}
