//! Convert a whole corpus directory in parallel, write the relation file
//! and print per-genre counts.
//!
//! cargo run --example convert_corpus [-- <corpus-dir> <output.tsv>]

use std::path::PathBuf;

use rst2pdtb::cascade::Converter;
use rst2pdtb::eval::genre_from_doc_id;
use rst2pdtb::pipeline::{convert_corpus, relation_stats, ConvertSettings, CorpusPaths};
use rst2pdtb::relfile::write_relations;

fn main() -> rst2pdtb::Result<()> {
    let mut args = std::env::args().skip(1);
    let root = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus"));
    let output = args.next().map(PathBuf::from);

    let outcome = convert_corpus(&CorpusPaths::under(&root), &Converter::shipped(), &ConvertSettings::default())?;
    for (doc_id, err) in &outcome.failures {
        eprintln!("skipped {doc_id}: {err}");
    }
    if let Some(path) = output {
        std::fs::write(&path, write_relations(&outcome.relations)).map_err(|e| rst2pdtb::Error::io(&path, e))?;
        println!("wrote {} relations to {}", outcome.relations.len(), path.display());
    }
    println!("{} documents converted\n", outcome.converted);
    print!("{}", relation_stats(&outcome.relations, &genre_from_doc_id).to_tsv());
    Ok(())
}
