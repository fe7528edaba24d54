//! Score predicted relations against gold: per-type P/R/F1 under exact and
//! span-only matching, Cohen's kappa, the sense confusion matrix and a
//! genre breakdown.
//!
//! cargo run --example evaluate [-- <pred.tsv> <gold.tsv>]

use std::path::PathBuf;

use rst2pdtb::cli::read_relation_file;
use rst2pdtb::eval::{genre_from_doc_id, EvalOptions, EvalReport};
use rst2pdtb::senses::{shipped_hierarchy, MappingResources};

fn main() -> rst2pdtb::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/eval");
    let mut args = std::env::args().skip(1);
    let pred_path = args.next().map(PathBuf::from).unwrap_or_else(|| dir.join("pred.tsv"));
    let gold_path = args.next().map(PathBuf::from).unwrap_or_else(|| dir.join("gold.tsv"));

    let h = shipped_hierarchy();
    let pred = read_relation_file(&pred_path, h)?;
    let gold = read_relation_file(&gold_path, h)?;
    let lexicon = MappingResources::shipped().lexicon;
    let report = EvalReport::build(&pred, &gold, EvalOptions::default(), Some(&lexicon), &genre_from_doc_id)?;

    println!("{}", report.to_text());
    println!("scores\n{}", report.scores_tsv());
    println!("confusion (level {})\n{}", report.confusion.level, report.confusion.to_tsv());
    println!("genres\n{}", report.genres.to_tsv());
    if let Some((gold_sense, pred_sense, n)) = report.confusion.most_frequent_error() {
        println!("most frequent confusion: {gold_sense} read as {pred_sense} ({n}x)");
    }
    Ok(())
}
