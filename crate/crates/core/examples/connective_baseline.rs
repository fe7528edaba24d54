//! Build a majority-connective baseline from relations, then score its
//! predictions with exact and lexicon-licensed (fuzzy) matching.
//!
//! Without an argument the relations come from converting the bundled
//! fixture corpus.
//!
//! cargo run --example connective_baseline [-- <relations.tsv>]

use std::path::PathBuf;

use rst2pdtb::cascade::Converter;
use rst2pdtb::cli::read_relation_file;
use rst2pdtb::eval::{align_relations, connective_accuracy, genre_from_doc_id};
use rst2pdtb::pipeline::{convert_corpus, ConvertSettings, CorpusPaths};
use rst2pdtb::predictor::build_baseline;
use rst2pdtb::relation::{PdtbRelation, RelationType};
use rst2pdtb::senses::{shipped_hierarchy, MappingResources};

fn main() -> rst2pdtb::Result<()> {
    let (relations, provenance) = match std::env::args().nth(1) {
        Some(path) => (read_relation_file(path.as_ref(), shipped_hierarchy())?, path),
        None => {
            let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus");
            let outcome =
                convert_corpus(&CorpusPaths::under(&root), &Converter::shipped(), &ConvertSettings::default())?;
            (outcome.relations, "fixture corpus".to_owned())
        }
    };
    let gold: Vec<PdtbRelation> = relations
        .into_iter()
        .filter(|r| r.rel_type == RelationType::Implicit && r.rst_label.is_some())
        .collect();

    let table = build_baseline(&gold, &provenance);
    println!("baseline table\n{}", table.to_tsv());

    let pred: Vec<PdtbRelation> = gold
        .iter()
        .map(|g| PdtbRelation {
            conn_text: table.lookup(g.rst_label.expect("filtered above")).0.to_owned(),
            ..g.clone()
        })
        .collect();
    let al = align_relations(&pred, &gold)?;
    let lexicon = MappingResources::shipped().lexicon;
    let (overall, by_genre) = connective_accuracy(&al, &lexicon, 2, &genre_from_doc_id);
    let pct = |x: Option<f64>| x.map_or("--".to_owned(), |v| format!("{:.1}%", 100.0 * v));
    println!(
        "overall: {} relations, exact {}, fuzzy {}",
        overall.total,
        pct(overall.exact_rate()),
        pct(overall.fuzzy_rate())
    );
    for (genre, acc) in by_genre {
        println!("  {genre:<8} exact {:>7} fuzzy {:>7}", pct(acc.exact_rate()), pct(acc.fuzzy_rate()));
    }
    Ok(())
}
