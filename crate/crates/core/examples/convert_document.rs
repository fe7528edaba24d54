//! Run the conversion cascade on one document and show each relation with
//! the module and rule that produced it.
//!
//! cargo run --example convert_document [-- <corpus-dir> <doc-id>]

use std::path::PathBuf;

use rst2pdtb::cascade::Converter;
use rst2pdtb::pipeline::{discover, load_document, load_mention_table, CorpusPaths};

fn main() -> rst2pdtb::Result<()> {
    let mut args = std::env::args().skip(1);
    let root = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus"));
    let wanted = args.next().unwrap_or_else(|| "GUM_news_storm".to_owned());

    let paths = CorpusPaths::under(&root);
    let (sources, _) = discover(&paths)?;
    let source = sources
        .iter()
        .find(|s| s.doc_id == wanted)
        .ok_or_else(|| rst2pdtb::Error::Validation(format!("no document `{wanted}`")))?;
    let doc = load_document(source, &load_mention_table(&paths)?)?;

    let conv = Converter::shipped();
    for r in conv.convert(&doc) {
        let senses: Vec<String> = r.senses.iter().map(ToString::to_string).collect();
        println!("{} [{}]", r.rel_type, r.origin.as_deref().unwrap_or("-"));
        if !r.conn_text.is_empty() {
            println!("  connective: {}", r.conn_text);
        }
        println!("  arg1 {:<8} {}", r.arg1.to_string(), r.arg1_text);
        println!("  arg2 {:<8} {}", r.arg2.to_string(), r.arg2_text);
        if !senses.is_empty() {
            println!("  senses: {}", senses.join(" + "));
        }
        if !r.flags.is_empty() {
            let flags: Vec<String> = r.flags.iter().map(ToString::to_string).collect();
            println!("  flags: {}", flags.join(", "));
        }
    }
    Ok(())
}
