//! Mention table: one tab-separated row per mention,
//! `doc_id  entity_id  start  end  is_pronoun  is_definite`.
//!
//! `start`/`end` are 1-based, inclusive, document-wide token positions.
//! Flags accept `1`/`0`, `true`/`false` or `yes`/`no`. Lines starting with
//! `#` and a `doc_id` header row are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::BufRead;

use super::{Document, Mention};
use crate::error::{Error, Result};

/// Mentions grouped by document id, each list sorted by span start.
pub type MentionTable = BTreeMap<String, Vec<Mention>>;

fn parse_flag(value: &str, origin: &str, line: usize, column: usize) -> Result<bool> {
    match value.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "y" => Ok(true),
        "0" | "false" | "no" | "n" | "_" => Ok(false),
        other => Err(Error::parse(origin, line, column, format!("invalid flag `{other}`"))),
    }
}

pub fn parse_coref<R: BufRead>(input: R, origin: &str) -> Result<MentionTable> {
    let mut table = MentionTable::new();
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        let line_no = n + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if fields.len() != 6 {
            return Err(Error::parse(
                origin,
                line_no,
                1,
                format!("expected 6 tab-separated columns, found {}", fields.len()),
            ));
        }
        if fields[0] == "doc_id" {
            continue;
        }
        let pos = |i: usize| -> Result<usize> {
            fields[i]
                .parse::<usize>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| Error::parse(origin, line_no, i + 1, format!("invalid token position `{}`", fields[i])))
        };
        let (start, end) = (pos(2)?, pos(3)?);
        if end < start {
            return Err(Error::parse(origin, line_no, 4, format!("mention end {end} before start {start}")));
        }
        table.entry(fields[0].to_owned()).or_default().push(Mention {
            entity_id: fields[1].to_owned(),
            tokens: start - 1..end,
            is_pronoun: parse_flag(fields[4], origin, line_no, 5)?,
            is_definite: parse_flag(fields[5], origin, line_no, 6)?,
            sent_index: 0,
        });
    }
    for mentions in table.values_mut() {
        mentions.sort_by(|a, b| {
            (a.tokens.start, a.tokens.end, &a.entity_id).cmp(&(b.tokens.start, b.tokens.end, &b.entity_id))
        });
    }
    Ok(table)
}

pub fn write_coref(doc: &Document) -> String {
    let mut out = String::from("doc_id\tentity_id\tstart\tend\tis_pronoun\tis_definite\n");
    for m in &doc.mentions {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            doc.doc_id,
            m.entity_id,
            m.tokens.start + 1,
            m.tokens.end,
            u8::from(m.is_pronoun),
            u8::from(m.is_definite)
        );
    }
    out
}
