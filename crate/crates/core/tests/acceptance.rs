//! Acceptance runner: one status line per criterion.
//!
//! Corpus-dependent criteria read their inputs from environment variables:
//! `GUM_DIR` (a corpus root with `dep/`, `rst/` and `coref.tsv`) and
//! `GDTB_DIR` (relation files `test.tsv`, optionally `train.tsv`,
//! `auto.tsv` and `corrected.tsv`). Without them those criteria report
//! BLOCKED; everything else runs on bundled fixtures.

mod common;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestError, TestRunner};
use rst2pdtb::cascade::Converter;
use rst2pdtb::cli::read_relation_file;
use rst2pdtb::eval::{
    align_relations, cohen_kappa, cohen_kappa_matrix, connective_accuracy, count, genre_from_doc_id, score,
    Counts, EvalOptions, EvalReport, MatchRegime,
};
use rst2pdtb::pipeline::{convert_corpus, ConvertSettings, CorpusPaths};
use rst2pdtb::predictor::{build_baseline, BaselineTable};
use rst2pdtb::relation::{PdtbRelation, RelationType};
use rst2pdtb::senses::{shipped_hierarchy, MappingResources};

use common::{checks, doc_spec, fixtures};

const HYPOPHORA_TARGET: usize = 465;
const ALTLEXC_TARGET: usize = 13;
const EXPLICIT_TARGET: f64 = 7202.0;
const EXPLICIT_TOLERANCE: f64 = 0.03;
const TOTAL_TARGET: f64 = 13622.0;
const TOTAL_TOLERANCE: f64 = 0.05;
const CORPUS_RUNTIME: Duration = Duration::from_secs(300);

const BASELINE_FUZZY_MIN: f64 = 0.83;
const BASELINE_EXACT_MIN: f64 = 0.45;
const BASELINE_RUNTIME: Duration = Duration::from_secs(10);
const CONNECTIVE_LEVEL: u8 = 2;

const ORACLE_TOLERANCE: f64 = 1e-12;
const TEXTBOOK_KAPPA: f64 = 0.8;

const GDTB_F1_TARGET: f64 = 0.9218;
const GDTB_F1_TOLERANCE: f64 = 0.002;
const GDTB_KAPPA_TARGET: f64 = 0.913;
const GDTB_KAPPA_TOLERANCE: f64 = 0.005;

const PROPERTY_CASES: u32 = 100;
const PROPERTY_BUDGET: Duration = Duration::from_secs(60);

enum Status {
    Pass,
    Fail,
    Blocked,
    Substituted,
    NotReproducible,
}

struct Outcome {
    status: Status,
    detail: String,
}

impl Outcome {
    fn check(ok: bool, detail: String) -> Outcome {
        Outcome {
            status: if ok { Status::Pass } else { Status::Fail },
            detail,
        }
    }

    fn blocked(detail: &str) -> Outcome {
        Outcome {
            status: Status::Blocked,
            detail: detail.to_owned(),
        }
    }
}

fn env_dir(var: &str) -> Option<PathBuf> {
    std::env::var_os(var).map(PathBuf::from).filter(|p| p.is_dir())
}

struct CorpusRun {
    counts: BTreeMap<RelationType, usize>,
    total: usize,
    elapsed: Duration,
    failures: usize,
}

fn run_gum(root: &Path) -> Result<CorpusRun, String> {
    let start = Instant::now();
    let outcome = convert_corpus(&CorpusPaths::under(root), &Converter::shipped(), &ConvertSettings::default())
        .map_err(|e| e.to_string())?;
    let mut counts = BTreeMap::new();
    for r in &outcome.relations {
        *counts.entry(r.rel_type).or_insert(0) += 1;
    }
    Ok(CorpusRun {
        counts,
        total: outcome.relations.len(),
        elapsed: start.elapsed(),
        failures: outcome.failures.len(),
    })
}

fn deterministic_counts(run: &Option<Result<CorpusRun, String>>) -> Outcome {
    let Some(run) = run else {
        return Outcome::blocked("GUM_DIR not set; GUM v10 inputs unavailable");
    };
    let run = match run {
        Ok(r) => r,
        Err(e) => return Outcome::check(false, format!("corpus run failed: {e}")),
    };
    let hyp = run.counts.get(&RelationType::Hypophora).copied().unwrap_or(0);
    let alc = run.counts.get(&RelationType::AltLexC).copied().unwrap_or(0);
    Outcome::check(
        hyp == HYPOPHORA_TARGET && alc == ALTLEXC_TARGET && run.elapsed < CORPUS_RUNTIME,
        format!(
            "Hypophora {hyp} (target {HYPOPHORA_TARGET}), AltLexC {alc} (target {ALTLEXC_TARGET}), \
             runtime {:.1}s (limit {}s), {} failed documents",
            run.elapsed.as_secs_f64(),
            CORPUS_RUNTIME.as_secs(),
            run.failures
        ),
    )
}

fn near_counts(run: &Option<Result<CorpusRun, String>>) -> Outcome {
    let Some(run) = run else {
        return Outcome::blocked("GUM_DIR not set; GUM v10 inputs unavailable");
    };
    let run = match run {
        Ok(r) => r,
        Err(e) => return Outcome::check(false, format!("corpus run failed: {e}")),
    };
    let explicit = run.counts.get(&RelationType::Explicit).copied().unwrap_or(0) as f64;
    let total = run.total as f64;
    let dev_e = (explicit - EXPLICIT_TARGET).abs() / EXPLICIT_TARGET;
    let dev_t = (total - TOTAL_TARGET).abs() / TOTAL_TARGET;
    Outcome::check(
        dev_e <= EXPLICIT_TOLERANCE && dev_t <= TOTAL_TOLERANCE,
        format!(
            "Explicit {explicit} ({:+.2}%, tolerance {}%), total {total} ({:+.2}%, tolerance {}%)",
            100.0 * (explicit - EXPLICIT_TARGET) / EXPLICIT_TARGET,
            EXPLICIT_TOLERANCE * 100.0,
            100.0 * (total - TOTAL_TARGET) / TOTAL_TARGET,
            TOTAL_TOLERANCE * 100.0
        ),
    )
}

fn baseline_connectives() -> Outcome {
    let Some(dir) = env_dir("GDTB_DIR") else {
        return Outcome::blocked("GDTB_DIR not set; released GDTB test connectives unavailable");
    };
    let start = Instant::now();
    let h = shipped_hierarchy();
    let gold = match read_relation_file(&dir.join("test.tsv"), h) {
        Ok(g) => g,
        Err(e) => return Outcome::check(false, format!("cannot read test.tsv: {e}")),
    };
    let train = dir.join("train.tsv");
    let baseline = if train.exists() {
        match read_relation_file(&train, h) {
            Ok(t) => build_baseline(&t, "train.tsv"),
            Err(e) => return Outcome::check(false, format!("cannot read train.tsv: {e}")),
        }
    } else {
        BaselineTable::shipped()
    };
    let gold: Vec<PdtbRelation> = gold
        .into_iter()
        .filter(|r| r.rel_type == RelationType::Implicit && r.rst_label.is_some() && !r.conn_text.is_empty())
        .collect();
    let pred: Vec<PdtbRelation> = gold
        .iter()
        .map(|g| PdtbRelation {
            conn_text: baseline.lookup(g.rst_label.expect("filtered")).0.to_owned(),
            ..g.clone()
        })
        .collect();
    let al = match align_relations(&pred, &gold) {
        Ok(a) => a,
        Err(e) => return Outcome::check(false, e.to_string()),
    };
    let lexicon = MappingResources::shipped().lexicon;
    let (acc, _) = connective_accuracy(&al, &lexicon, CONNECTIVE_LEVEL, &genre_from_doc_id);
    let elapsed = start.elapsed();
    let (fuzzy, exact) = (acc.fuzzy_rate().unwrap_or(0.0), acc.exact_rate().unwrap_or(0.0));
    Outcome::check(
        fuzzy >= BASELINE_FUZZY_MIN && exact >= BASELINE_EXACT_MIN && elapsed < BASELINE_RUNTIME,
        format!(
            "fuzzy {fuzzy:.4} (min {BASELINE_FUZZY_MIN}), exact {exact:.4} (min {BASELINE_EXACT_MIN}) over {} \
             implicit relations in {:.2}s",
            acc.total,
            elapsed.as_secs_f64()
        ),
    )
}

/// Hand-scored counts for the bundled 20-relation fixture pair.
const HAND_EXACT: &[(RelationType, usize, usize, usize)] = &[
    (RelationType::Explicit, 5, 7, 6),
    (RelationType::Implicit, 5, 7, 8),
    (RelationType::EntRel, 2, 2, 3),
    (RelationType::Hypophora, 1, 1, 1),
    (RelationType::NoRel, 2, 3, 2),
];
const HAND_SPAN_ONLY: &[(RelationType, usize, usize, usize)] = &[
    (RelationType::Explicit, 6, 7, 6),
    (RelationType::Implicit, 7, 7, 8),
    (RelationType::EntRel, 2, 2, 3),
    (RelationType::Hypophora, 1, 1, 1),
    (RelationType::NoRel, 2, 3, 2),
];
/// Hand-derived micro F1 for each regime, and kappa over the 13
/// single-sense pairs (diagonal 4 + 6, margins 6/7 gold and 5/8 predicted).
const HAND_MICRO_EXACT: f64 = 15.0 / 20.0;
const HAND_MICRO_SPAN_ONLY: f64 = 18.0 / 20.0;
const HAND_KAPPA: f64 = 44.0 / 83.0;

fn close(a: Option<f64>, b: f64) -> bool {
    a.is_some_and(|a| (a - b).abs() <= ORACLE_TOLERANCE)
}

fn oracle_equivalence() -> (bool, String) {
    let h = shipped_hierarchy();
    let dir = fixtures().join("eval");
    let (pred, gold) = match (
        read_relation_file(&dir.join("pred.tsv"), h),
        read_relation_file(&dir.join("gold.tsv"), h),
    ) {
        (Ok(p), Ok(g)) => (p, g),
        (Err(e), _) | (_, Err(e)) => return (false, format!("fixture unreadable: {e}")),
    };
    let al = match align_relations(&pred, &gold) {
        Ok(a) => a,
        Err(e) => return (false, e.to_string()),
    };
    let mut problems = Vec::new();
    for (regime, hand, micro) in [
        (MatchRegime::exact(), HAND_EXACT, HAND_MICRO_EXACT),
        (MatchRegime::span_only(), HAND_SPAN_ONLY, HAND_MICRO_SPAN_ONLY),
    ] {
        let got = count(&al, regime);
        let s = score(&al, regime);
        for &(ty, hits, predicted, gold_n) in hand {
            let want = Counts {
                hits,
                predicted,
                gold: gold_n,
            };
            if got.get(&ty) != Some(&want) {
                problems.push(format!("{} {ty}: {:?} != {want:?}", regime.mode, got.get(&ty)));
            }
            let prf = &s.per_type[&ty];
            let (p, r) = (hits as f64 / predicted as f64, hits as f64 / gold_n as f64);
            let f = 2.0 * hits as f64 / (predicted + gold_n) as f64;
            if !(close(prf.precision, p) && close(prf.recall, r) && close(prf.f1, f)) {
                problems.push(format!("{} {ty}: P/R/F1 {:?}", regime.mode, (prf.precision, prf.recall, prf.f1)));
            }
        }
        if !(close(s.micro.precision, micro) && close(s.micro.recall, micro) && close(s.micro.f1, micro)) {
            problems.push(format!("{} micro: {:?}", regime.mode, s.micro.f1));
        }
    }
    let kappa = cohen_kappa(&al, 2);
    if !close(kappa, HAND_KAPPA) {
        problems.push(format!("fixture kappa {kappa:?} != 44/83"));
    }
    let textbook = cohen_kappa_matrix(&[vec![45, 5], vec![5, 45]]);
    if !close(textbook, TEXTBOOK_KAPPA) {
        problems.push(format!("[[45,5],[5,45]] kappa {textbook:?}"));
    }
    let report = EvalReport::build(
        &pred,
        &gold,
        EvalOptions::default(),
        Some(&MappingResources::shipped().lexicon),
        &genre_from_doc_id,
    );
    match report.ok().and_then(|r| r.connectives) {
        Some((acc, _)) if (acc.total, acc.exact, acc.fuzzy) == (7, 5, 6) => {}
        other => problems.push(format!("connective accuracy {:?}", other.map(|o| (o.0.total, o.0.exact, o.0.fuzzy)))),
    }
    if problems.is_empty() {
        (
            true,
            format!(
                "20-relation fixture: exact micro F1 {HAND_MICRO_EXACT}, span-only {HAND_MICRO_SPAN_ONLY}, \
                 per-type counts and P/R/F1 equal hand values; fixture kappa 44/83; \
                 [[45,5],[5,45]] kappa {:.12}",
                textbook.unwrap_or(f64::NAN)
            ),
        )
    } else {
        (false, problems.join("; "))
    }
}

fn gdtb_agreement(oracle_ok: bool) -> Outcome {
    let files = env_dir("GDTB_DIR").map(|d| (d.join("auto.tsv"), d.join("corrected.tsv")));
    let Some((auto, corrected)) = files.filter(|(a, c)| a.exists() && c.exists()) else {
        return Outcome {
            status: if oracle_ok { Status::Substituted } else { Status::Fail },
            detail: format!(
                "GDTB auto/corrected test files unavailable; replaced by the fixture oracle ({})",
                if oracle_ok { "passing" } else { "failing" }
            ),
        };
    };
    let h = shipped_hierarchy();
    let (pred, gold) = match (read_relation_file(&auto, h), read_relation_file(&corrected, h)) {
        (Ok(p), Ok(g)) => (p, g),
        (Err(e), _) | (_, Err(e)) => return Outcome::check(false, e.to_string()),
    };
    let al = match align_relations(&pred, &gold) {
        Ok(a) => a,
        Err(e) => return Outcome::check(false, e.to_string()),
    };
    let f1 = score(&al, MatchRegime::exact()).micro.f1.unwrap_or(0.0);
    let kappa = cohen_kappa(&al, 2).unwrap_or(f64::NAN);
    Outcome::check(
        (f1 - GDTB_F1_TARGET).abs() <= GDTB_F1_TOLERANCE && (kappa - GDTB_KAPPA_TARGET).abs() <= GDTB_KAPPA_TOLERANCE,
        format!(
            "exact micro F1 {f1:.4} (target {GDTB_F1_TARGET} ± {GDTB_F1_TOLERANCE}), kappa {kappa:.4} \
             (target {GDTB_KAPPA_TARGET} ± {GDTB_KAPPA_TOLERANCE})"
        ),
    )
}

/// Cases without failure persistence: this runner has no source file to
/// anchor regression seeds to.
fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn failure<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| format!("{e:?}"))
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let runner = || runner(PROPERTY_CASES);
    let mut failures = Vec::new();
    let mut record = |name: &str, r: Result<(), String>| {
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    };
    record("partition/round-trip", failure(runner().run(&doc_spec(), |s| checks::partition_and_round_trip(&s))));
    record("precedence", failure(runner().run(&doc_spec(), |s| checks::precedence_is_exclusive(&s))));
    record("completeness", failure(runner().run(&doc_spec(), |s| checks::adjacent_sentences_are_covered(&s))));
    record(
        "clip_minimal",
        failure(runner().run(&(doc_spec(), any::<prop::sample::Index>()), |(s, i)| {
            checks::clipping_is_idempotent(&s, i)
        })),
    );
    record(
        "scoring",
        failure(runner().run(&(doc_spec(), prop::collection::vec(any::<u8>(), 0..40)), |(s, c)| {
            checks::scoring_identity_and_order(&s, &c)
        })),
    );
    record("direction", checks::direction_involution().map_err(|e| e.to_string()));
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < PROPERTY_BUDGET;
    Outcome::check(
        ok,
        if failures.is_empty() {
            format!(
                "6 suites ({PROPERTY_CASES} random documents each) in {:.1}s (budget {}s)",
                elapsed.as_secs_f64(),
                PROPERTY_BUDGET.as_secs()
            )
        } else {
            failures.join("; ")
        },
    )
}

fn classifier_results() -> Outcome {
    let r = runner(256).run(
        &(
            prop::collection::vec(any::<prop::sample::Index>(), 0..4),
            prop::collection::vec((any::<prop::sample::Index>(), 0.0f64..=1.0), 0..4),
            0.0f64..=1.0,
        ),
        |(c, h, t)| checks::resolution_stays_within_candidates(&c, &h, t),
    );
    match r {
        Ok(()) => Outcome {
            status: Status::NotReproducible,
            detail: "cross-corpus classifier scores need external neural training; \
                     the hints pathway passes the sense-resolution properties instead"
                .into(),
        },
        Err(e) => Outcome::check(false, format!("sense-resolution property failed: {e:?}")),
    }
}

fn main() -> ExitCode {
    let gum = env_dir("GUM_DIR").map(|d| run_gum(&d));
    let (oracle_ok, oracle_detail) = oracle_equivalence();
    let results = [
        ("deterministic-counts", deterministic_counts(&gum)),
        ("near-counts", near_counts(&gum)),
        ("baseline-connectives", baseline_connectives()),
        ("eval-oracle", Outcome::check(oracle_ok, oracle_detail)),
        ("gdtb-agreement", gdtb_agreement(oracle_ok)),
        ("property-suites", property_suites()),
        ("classifier-results", classifier_results()),
    ];
    let mut failed = 0;
    println!();
    for (name, o) in &results {
        let tag = match o.status {
            Status::Pass => "PASS",
            Status::Fail => {
                failed += 1;
                "FAIL"
            }
            Status::Blocked => "BLOCKED",
            Status::Substituted => "PASS (substituted)",
            Status::NotReproducible => "NOT REPRODUCIBLE",
        };
        println!("acceptance {name:<22} {tag}: {}", o.detail);
    }
    println!();
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
