//! Fixture helpers shared by unit tests.

use super::*;

pub fn row(id: &str, form: &str, upos: &str, head: &str, deprel: &str) -> String {
    format!("{id}\t{form}\t{form}\t{upos}\t_\t_\t{head}\t{deprel}\t_\t_\n")
}

/// Dependency text for sentences grouped into paragraphs. Each sentence is a
/// whitespace-separated string; its first word is the root and every other
/// word depends on it.
pub fn flat_conllu(paragraphs: &[&[&str]]) -> String {
    let mut out = String::new();
    for par in paragraphs {
        out.push_str("# newpar\n");
        for sent in *par {
            for (i, w) in sent.split_whitespace().enumerate() {
                if i == 0 {
                    out.push_str(&row("1", w, "VERB", "0", "root"));
                } else {
                    out.push_str(&row(&(i + 1).to_string(), w, "X", "1", "dep"));
                }
            }
            out.push('\n');
        }
    }
    out
}

/// One paragraph of flat sentences and a discourse layer of unattached
/// segments with the given token lengths.
pub fn flat_layers(sentences: &[&[&str]], edu_lengths: &[usize]) -> (SyntaxLayer, RstLayer) {
    let joined: Vec<String> = sentences.iter().map(|s| s.join(" ")).collect();
    let refs: Vec<&str> = joined.iter().map(String::as_str).collect();
    let syntax = parse_conllu(flat_conllu(&[&refs]).as_bytes(), "fixture").unwrap();
    let forms: Vec<&str> = syntax.tokens.iter().map(|t| t.form.as_str()).collect();
    let mut xml = String::from("<rst><body>\n");
    let mut cursor = 0;
    for (i, len) in edu_lengths.iter().enumerate() {
        xml.push_str(&format!(
            "<segment id=\"{}\">{}</segment>\n",
            i + 1,
            forms[cursor..cursor + len].join(" ")
        ));
        cursor += len;
    }
    xml.push_str("</body></rst>");
    let rst = parse_rst(xml.as_bytes(), "fixture").unwrap();
    (syntax, rst)
}

/// Parse and align a fixture from its three serialized layers.
pub fn doc_from(doc_id: &str, conllu: &str, rs4: &str, coref: &str) -> Document {
    let syntax = parse_conllu(conllu.as_bytes(), "fixture.conllu").unwrap();
    let rst = parse_rst(rs4.as_bytes(), "fixture.rs4").unwrap();
    let mut mentions = parse_coref(coref.as_bytes(), "fixture.tsv").unwrap();
    align_layers(doc_id, None, syntax, rst, mentions.remove(doc_id).unwrap_or_default()).unwrap()
}
