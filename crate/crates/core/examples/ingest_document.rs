//! Load one document from its dependency, discourse and mention layers and
//! print what the aligned model holds.
//!
//! cargo run --example ingest_document [-- <corpus-dir> <doc-id>]

use std::path::PathBuf;

use rst2pdtb::pipeline::{discover, load_document, load_mention_table, CorpusPaths};

fn main() -> rst2pdtb::Result<()> {
    let mut args = std::env::args().skip(1);
    let root = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus"));
    let wanted = args.next().unwrap_or_else(|| "GUM_bio_smith".to_owned());

    let paths = CorpusPaths::under(&root);
    let (sources, _missing) = discover(&paths)?;
    let source = sources
        .iter()
        .find(|s| s.doc_id == wanted)
        .ok_or_else(|| rst2pdtb::Error::Validation(format!("no document `{wanted}` under {}", root.display())))?;
    let doc = load_document(source, &load_mention_table(&paths)?)?;

    println!(
        "{} ({}): {} tokens, {} sentences, {} paragraphs",
        doc.doc_id,
        doc.genre,
        doc.tokens.len(),
        doc.sentences.len(),
        doc.paragraphs.len()
    );
    println!("\nEDUs");
    for (i, edu) in doc.edus.iter().enumerate() {
        let span = rst2pdtb::TokenSpan::from_range(edu.tokens.clone());
        println!("  {i:>2} [{span}] {}", doc.text(&span));
    }
    println!("\nRST relations");
    for rel in &doc.relations {
        println!(
            "  {:<8} {:<24} {} -> {} ({:?}, {:?})",
            rel.id, rel.label, rel.source, rel.target, rel.nuclearity, rel.edge_kind
        );
    }
    println!("\nConnective signals");
    for s in doc.signals.iter().filter(|s| s.is_connective()) {
        let words: Vec<&str> = s.token_indices.iter().map(|&t| doc.tokens[t].form.as_str()).collect();
        println!("  {:<8} {}", s.relation_id, words.join(" "));
    }
    println!("\nMentions");
    for m in &doc.mentions {
        let span = rst2pdtb::TokenSpan::from_range(m.tokens.clone());
        let kind = if m.is_pronoun { "pronoun" } else if m.is_definite { "definite" } else { "other" };
        println!("  {:<8} s{} {:<9} {}", m.entity_id, m.sent_index, kind, doc.text(&span));
    }
    Ok(())
}
