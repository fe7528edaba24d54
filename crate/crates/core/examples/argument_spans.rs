//! Follow argument placement for each candidate: the raw RST endpoint
//! extents, the minimal spans after clipping and attribution stripping,
//! and which endpoint ends up as Arg1.
//!
//! cargo run --example argument_spans

use std::path::PathBuf;

use rst2pdtb::cascade::Converter;
use rst2pdtb::pipeline::{discover, load_document, load_mention_table, CorpusPaths};
use rst2pdtb::spans::{place_args, ArgOptions};

fn main() -> rst2pdtb::Result<()> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus");
    let paths = CorpusPaths::under(&root);
    let (sources, _) = discover(&paths)?;
    let mentions = load_mention_table(&paths)?;
    let conv = Converter::shipped();
    for source in &sources {
        let doc = load_document(source, &mentions)?;
        println!("== {}", doc.doc_id);
        for cand in conv.candidates(&doc) {
            let placed = place_args(&doc, &cand, ArgOptions::default());
            println!("{} ({})", cand.rel_type, cand.provenance);
            println!("  source extent {:<10} {}", cand.source.span.to_string(), doc.text(&cand.source.span));
            println!("  target extent {:<10} {}", cand.target.span.to_string(), doc.text(&cand.target.span));
            println!("  arg1 <- {:?}: {}", placed.arg1_side, doc.text(&placed.arg1));
            println!("  arg2 <- {:?}: {}", placed.arg1_side.other(), doc.text(&placed.arg2));
        }
    }
    Ok(())
}
