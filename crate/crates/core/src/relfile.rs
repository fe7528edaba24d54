//! Tab-separated relation files, one relation per line after a header.
//!
//! Columns: `doc_id rel_type conn_text conn_ranges arg1_ranges arg2_ranges
//! arg1_text arg2_text sense1 sense2 rst_label flags`. Ranges use the
//! inclusive `a-b,c-d` notation of [`TokenSpan`]; empty fields stand for
//! absent values. Text fields escape tab, newline and backslash.

use std::collections::BTreeSet;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::relation::{Flag, PdtbRelation};
use crate::senses::Hierarchy;
use crate::span::TokenSpan;

pub const HEADER: &str =
    "doc_id\trel_type\tconn_text\tconn_ranges\targ1_ranges\targ2_ranges\targ1_text\targ2_text\tsense1\tsense2\trst_label\tflags";

const ORIGIN_PREFIX: &str = "origin=";

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some(other) => out.push(other),
            None => out.push('\\'),
        }
    }
    out
}

pub fn format_relation(r: &PdtbRelation) -> String {
    let sense = |i: usize| r.senses.get(i).map(ToString::to_string).unwrap_or_default();
    let mut flags: Vec<String> = r.flags.iter().map(ToString::to_string).collect();
    if let Some(origin) = &r.origin {
        flags.push(format!("{ORIGIN_PREFIX}{}", escape(origin).replace(',', "\\,")));
    }
    [
        escape(&r.doc_id),
        r.rel_type.to_string(),
        escape(&r.conn_text),
        r.conn_tokens.to_string(),
        r.arg1.to_string(),
        r.arg2.to_string(),
        escape(&r.arg1_text),
        escape(&r.arg2_text),
        sense(0),
        sense(1),
        r.rst_label.map(|l| l.as_str().to_owned()).unwrap_or_default(),
        flags.join(","),
    ]
    .join("\t")
}

/// Serialize with header. Relations are written in the given order.
pub fn write_relations(relations: &[PdtbRelation]) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for r in relations {
        out.push_str(&format_relation(r));
        out.push('\n');
    }
    out
}

fn split_flags(field: &str) -> Vec<String> {
    // commas inside the origin value are escaped
    let mut parts = Vec::new();
    let mut current = String::new();
    let mut chars = field.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => {
                current.push(c);
                if let Some(n) = chars.next() {
                    current.push(n);
                }
            }
            ',' => parts.push(std::mem::take(&mut current)),
            c => current.push(c),
        }
    }
    if !current.is_empty() || !parts.is_empty() {
        parts.push(current);
    }
    parts
}

/// Parse one data line. Senses are normalized against `hierarchy`, so
/// belief and speech-act variants in external files are accepted.
pub fn parse_relation_line(line: &str, hierarchy: &Hierarchy, origin: &str, line_no: usize) -> Result<PdtbRelation> {
    let f: Vec<&str> = line.split('\t').collect();
    if f.len() != 12 {
        return Err(Error::parse(origin, line_no, 1, format!("expected 12 columns, found {}", f.len())));
    }
    let err = |col: usize, e: &dyn std::fmt::Display| Error::parse(origin, line_no, col, e.to_string());
    let span = |col: usize| -> Result<TokenSpan> { f[col].parse().map_err(|e| err(col + 1, &e)) };
    let mut senses = Vec::new();
    for col in [8, 9] {
        if !f[col].trim().is_empty() {
            senses.push(hierarchy.normalize(f[col]).map_err(|e| err(col + 1, &e))?);
        }
    }
    let mut flags = BTreeSet::new();
    let mut rel_origin = None;
    for part in split_flags(f[11]) {
        if let Some(o) = part.strip_prefix(ORIGIN_PREFIX) {
            rel_origin = Some(unescape(o));
        } else if !part.trim().is_empty() {
            flags.insert(part.parse::<Flag>().map_err(|e| err(12, &e))?);
        }
    }
    let rst_label = match f[10].trim() {
        "" | "_" => None,
        l => Some(l.parse().map_err(|e: Error| err(11, &e))?),
    };
    Ok(PdtbRelation {
        doc_id: unescape(f[0]),
        rel_type: f[1].parse().map_err(|e: Error| err(2, &e))?,
        conn_text: unescape(f[2]),
        conn_tokens: span(3)?,
        arg1: span(4)?,
        arg2: span(5)?,
        arg1_text: unescape(f[6]),
        arg2_text: unescape(f[7]),
        senses,
        rst_label,
        flags,
        origin: rel_origin,
    })
}

/// Parse a relation file. The header line is optional; blank lines and
/// `#` comments are skipped.
pub fn parse_relations<R: BufRead>(input: R, hierarchy: &Hierarchy, origin: &str) -> Result<Vec<PdtbRelation>> {
    let mut out = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') || line.starts_with("doc_id\t") {
            continue;
        }
        out.push(parse_relation_line(line, hierarchy, origin, n + 1)?);
    }
    Ok(out)
}
