//! Feed external classifier output into the converter. Hints are keyed by
//! document and final argument spans; they choose among the senses the map
//! allows and supply implicit connectives, without changing which
//! relations exist.
//!
//! cargo run --example hinted_conversion

use std::path::PathBuf;

use rst2pdtb::cascade::Converter;
use rst2pdtb::pipeline::{discover, load_document, load_mention_table, CorpusPaths};
use rst2pdtb::predictor::{hint_key, Hints, Predictor};
use rst2pdtb::senses::shipped_hierarchy;

fn main() -> rst2pdtb::Result<()> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus");
    let paths = CorpusPaths::under(&root);
    let (sources, _) = discover(&paths)?;
    let doc = load_document(&sources[0], &load_mention_table(&paths)?)?;

    let plain = Converter::shipped();
    let before = plain.convert(&doc);

    // a hints file as a classifier might write it
    let mut text = String::from("doc_id\tspan_key\tconnective\tsenses\n");
    for r in before.iter().filter(|r| r.rel_type.has_senses()) {
        text.push_str(&format!(
            "{}\t{}\tmeanwhile\tComparison.Contrast:0.8;Expansion.Conjunction:0.6\n",
            r.doc_id,
            hint_key(&r.arg1, &r.arg2)
        ));
    }
    let hints = Hints::parse(&text, "inline hints", shipped_hierarchy())?;
    println!("{} hints loaded\n", hints.len());

    let hinted = Converter {
        predictor: Predictor { hints, ..Predictor::default() },
        ..plain
    };
    let after = hinted.convert(&doc);
    for (a, b) in before.iter().zip(&after) {
        let senses = |r: &rst2pdtb::relation::PdtbRelation| {
            r.senses.iter().map(ToString::to_string).collect::<Vec<_>>().join(" + ")
        };
        println!("{} {}|{}", a.rel_type, a.arg1, a.arg2);
        println!("  without hints: {:<12} {}", a.conn_text, senses(a));
        println!("  with hints:    {:<12} {}", b.conn_text, senses(b));
    }
    Ok(())
}
