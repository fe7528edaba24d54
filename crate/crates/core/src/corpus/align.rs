use super::{Document, Mention, RstLayer, SyntaxLayer};
use crate::error::{Error, Result};

/// Best-effort genre from ids shaped like `GUM_<genre>_<name>`.
pub fn infer_genre(doc_id: &str) -> Option<String> {
    let mut parts = doc_id.split('_');
    let _corpus = parts.next()?;
    let genre = parts.next()?;
    parts.next()?;
    (!genre.is_empty()).then(|| genre.to_ascii_lowercase())
}

fn forms_agree(a: &str, b: &str) -> bool {
    a == b || a == "_" || b == "_"
}

/// Merge the three layers of one document and validate every cross-layer
/// invariant. `genre` overrides the genre recorded in the syntax layer.
pub fn align_layers(
    doc_id: &str,
    genre: Option<&str>,
    syntax: SyntaxLayer,
    rst: RstLayer,
    mut mentions: Vec<Mention>,
) -> Result<Document> {
    let n = syntax.tokens.len();
    let m = rst.token_forms.len();
    for i in 0..n.max(m) {
        match (syntax.tokens.get(i), rst.token_forms.get(i)) {
            (Some(t), Some(f)) if forms_agree(&t.form, f) => {}
            (Some(t), Some(f)) => {
                return Err(Error::Alignment {
                    index: i,
                    message: format!("syntax has `{}`, discourse layer has `{f}`", t.form),
                })
            }
            _ => {
                return Err(Error::Alignment {
                    index: i,
                    message: format!("syntax layer has {n} tokens, discourse layer has {m}"),
                })
            }
        }
    }

    let mut edus = rst.edus;
    let mut cursor = 0;
    for edu in &mut edus {
        if edu.tokens.start != cursor || edu.tokens.is_empty() {
            return Err(Error::Integrity(format!(
                "{doc_id}: EDU {} does not continue the token partition at {cursor}",
                edu.id
            )));
        }
        cursor = edu.tokens.end;
        edu.sent_indices = syntax.tokens[edu.tokens.clone()].iter().map(|t| t.sent_index).collect();
    }
    if cursor != n {
        return Err(Error::Integrity(format!(
            "{doc_id}: EDUs cover {cursor} of {n} tokens"
        )));
    }
    let mut edu_of_token = vec![0; n];
    for (i, edu) in edus.iter().enumerate() {
        for t in edu.tokens.clone() {
            edu_of_token[t] = i;
        }
    }

    for s in &rst.signals {
        if !rst.relations.iter().any(|r| r.id == s.relation_id) {
            return Err(Error::Integrity(format!(
                "{doc_id}: signal refers to unknown relation {}",
                s.relation_id
            )));
        }
        if s.token_indices.is_empty() || s.token_indices.iter().any(|&t| t >= n) {
            return Err(Error::Integrity(format!(
                "{doc_id}: signal on relation {} has tokens outside the document",
                s.relation_id
            )));
        }
    }

    for mention in &mut mentions {
        if mention.tokens.end > n || mention.tokens.is_empty() {
            return Err(Error::Integrity(format!(
                "{doc_id}: mention of {} at {}..{} outside document of {n} tokens",
                mention.entity_id, mention.tokens.start, mention.tokens.end
            )));
        }
        mention.sent_index = syntax.tokens[mention.tokens.start].sent_index;
    }

    let genre = genre
        .map(str::to_owned)
        .or(syntax.genre)
        .or_else(|| infer_genre(doc_id))
        .unwrap_or_else(|| "unknown".to_owned());

    Ok(Document {
        doc_id: doc_id.to_owned(),
        genre,
        tokens: syntax.tokens,
        sentences: syntax.sentences,
        paragraphs: syntax.paragraphs,
        edus,
        rst: rst.tree,
        relations: rst.relations,
        signals: rst.signals,
        mentions,
        edu_of_token,
    })
}
