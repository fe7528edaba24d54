//! Small aligned documents with real dependency structure.
//!
//! A sentence is written as space-separated `form/UPOS/head/deprel[/feats]`
//! tokens with 1-based heads local to the sentence.

use crate::corpus::test_util::doc_from;
use crate::corpus::Document;

fn sentence(spec: &str) -> String {
    let mut out = String::new();
    for (i, tok) in spec.split_whitespace().enumerate() {
        let f: Vec<&str> = tok.split('/').collect();
        let feats = f.get(4).copied().unwrap_or("_");
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t_\t{feats}\t{}\t{}\t_\t_\n",
            i + 1,
            f[0],
            f[0].to_lowercase(),
            f[1],
            f[2],
            f[3]
        ));
    }
    out.push('\n');
    out
}

/// Dependency text for paragraphs of sentence specs.
pub fn conllu(paragraphs: &[&[&str]]) -> String {
    let mut out = String::new();
    for par in paragraphs {
        out.push_str("# newpar\n");
        for s in *par {
            out.push_str(&sentence(s));
        }
    }
    out
}

fn body(segments: &str) -> String {
    format!("<rst><body>\n{segments}\n</body></rst>")
}

/// One sentence forming a single EDU, from (form, upos, head, deprel) rows.
pub fn sentence_doc(rows: &[(&str, &str, usize, &str)]) -> Document {
    let spec: Vec<String> = rows.iter().map(|(f, u, h, d)| format!("{f}/{u}/{h}/{d}")).collect();
    let forms: Vec<&str> = rows.iter().map(|r| r.0).collect();
    let rs4 = body(&format!("<segment id=\"1\">{}</segment>", forms.join(" ")));
    doc_from("s", &conllu(&[&[&spec.join(" ")]]), &rs4, "")
}

/// "I cut my losses and ran": a sequence signaled by "and".
pub fn and_then_doc() -> Document {
    let s = "I/PRON/2/nsubj cut/VERB/0/root my/PRON/4/nmod:poss losses/NOUN/2/obj and/CCONJ/6/cc ran/VERB/2/conj";
    let rs4 = body(
        r#"<segment id="1" parent="3" relname="joint-sequence">I cut my losses</segment>
        <segment id="2" parent="3" relname="joint-sequence">and ran</segment>
        <group id="3" type="multinuc"/>
        <signals><signal source="2" type="dm" subtype="dm" tokens="5"/></signals>"#,
    );
    doc_from("and_then", &conllu(&[&[s]]), &rs4, "")
}

/// A question answered in its own paragraph, then an explicit cause and an
/// unmarked result in a second paragraph.
pub fn mixed_doc() -> Document {
    let q = "What/PRON/4/obj time/NOUN/1/dep is/AUX/4/cop it/PRON/0/root ?/PUNCT/4/punct";
    let a = "Noon/NOUN/0/root ./PUNCT/1/punct";
    let c = "She/PRON/3/nsubj was/AUX/3/cop tired/ADJ/0/root because/SCONJ/6/mark she/PRON/6/nsubj \
             worked/VERB/3/advcl ./PUNCT/3/punct";
    let r = "She/PRON/2/nsubj slept/VERB/0/root ./PUNCT/2/punct";
    let rs4 = body(
        r#"<segment id="1" parent="2" relname="topic-question">What time is it ?</segment>
        <segment id="2">Noon .</segment>
        <segment id="3">She was tired</segment>
        <segment id="4" parent="3" relname="causal-cause">because she worked .</segment>
        <segment id="5" parent="3" relname="causal-result">She slept .</segment>
        <signals><signal source="4" type="dm" subtype="dm" tokens="11"/></signals>"#,
    );
    doc_from("mixed", &conllu(&[&[q, a], &[c, r]]), &rs4, "")
}

/// "He left early to catch the train": a purpose infinitive.
pub fn purpose_doc() -> Document {
    let s = "He/PRON/2/nsubj left/VERB/0/root early/ADV/2/advmod to/PART/5/mark catch/VERB/2/advcl \
             the/DET/7/det train/NOUN/5/obj";
    let rs4 = body(
        r#"<segment id="1">He left early</segment>
        <segment id="2" parent="1" relname="purpose-goal">to catch the train</segment>"#,
    );
    doc_from("purpose", &conllu(&[&[s]]), &rs4, "")
}

/// Two related sentences in separate paragraphs.
pub fn two_paragraph_doc() -> Document {
    let a = "It/PRON/2/nsubj rained/VERB/0/root ./PUNCT/2/punct";
    let b = "We/PRON/2/nsubj stayed/VERB/0/root home/ADV/2/advmod ./PUNCT/2/punct";
    let rs4 = body(
        r#"<segment id="1">It rained .</segment>
        <segment id="2" parent="1" relname="causal-result">We stayed home .</segment>"#,
    );
    doc_from("two_par", &conllu(&[&[a], &[b]]), &rs4, "")
}

const JOHN: &str = "John/PROPN/2/nsubj arrived/VERB/0/root ./PUNCT/2/punct";
const TIRED: &str = "He/PRON/3/nsubj was/AUX/3/cop tired/ADJ/0/root ./PUNCT/3/punct";

/// "John arrived. He was tired." with an elaboration and a pronoun.
pub fn entrel_doc() -> Document {
    let rs4 = body(
        r#"<segment id="1">John arrived .</segment>
        <segment id="2" parent="1" relname="elaboration-additional">He was tired .</segment>"#,
    );
    let coref = "entrel\tjohn\t1\t1\t0\t1\nentrel\tjohn\t4\t4\t1\t1\n";
    doc_from("entrel", &conllu(&[&[JOHN, TIRED]]), &rs4, coref)
}

/// The same sentences with neither a linking relation nor coreference.
pub fn norel_doc() -> Document {
    let rs4 = body(
        r#"<segment id="1">John arrived .</segment>
        <segment id="2">He was tired .</segment>"#,
    );
    doc_from("norel", &conllu(&[&[JOHN, TIRED]]), &rs4, "")
}

/// "She left , smiling broadly ; he stayed": a participial adverbial and a
/// zero-coordinated clause.
pub fn participle_doc() -> Document {
    let s = "She/PRON/2/nsubj left/VERB/0/root/VerbForm=Fin ,/PUNCT/4/punct smiling/VERB/2/advcl/VerbForm=Ger \
             broadly/ADV/4/advmod ;/PUNCT/8/punct he/PRON/8/nsubj stayed/VERB/2/conj/VerbForm=Fin";
    let rs4 = body(
        r#"<segment id="1" parent="5" relname="joint-list">She left ,</segment>
        <segment id="2" parent="1" relname="context-circumstance">smiling broadly ;</segment>
        <segment id="3" parent="5" relname="joint-list">he stayed</segment>
        <group id="5" type="multinuc"/>"#,
    );
    doc_from("participle", &conllu(&[&[s]]), &rs4, "")
}

/// "Although it rained , we went out ."
pub fn concession_doc() -> Document {
    let s = "Although/SCONJ/3/mark it/PRON/3/nsubj rained/VERB/6/advcl ,/PUNCT/3/punct we/PRON/6/nsubj \
             went/VERB/0/root out/ADV/6/advmod ./PUNCT/6/punct";
    let rs4 = body(
        r#"<segment id="1" parent="2" relname="adversative-concession">Although it rained ,</segment>
        <segment id="2">we went out .</segment>
        <signals><signal source="1" type="dm" subtype="dm" tokens="1"/></signals>"#,
    );
    doc_from("concession", &conllu(&[&[s]]), &rs4, "")
}

/// A causal relation signaled by a connective missing from the lexicon.
pub fn unknown_connective_doc() -> Document {
    let s = "We/PRON/2/nsubj stayed/VERB/0/root in/ADV/2/advmod cos/SCONJ/6/mark it/PRON/6/nsubj \
             rained/VERB/2/advcl ./PUNCT/2/punct";
    let rs4 = body(
        r#"<segment id="1">We stayed in</segment>
        <segment id="2" parent="1" relname="causal-cause">cos it rained .</segment>
        <signals><signal source="2" type="dm" subtype="dm" tokens="4"/></signals>"#,
    );
    doc_from("unknown", &conllu(&[&[s]]), &rs4, "")
}

/// "We stayed in . It was raining ." with the cause second.
pub fn cause_doc() -> Document {
    let a = "We/PRON/2/nsubj stayed/VERB/0/root in/ADV/2/advmod ./PUNCT/2/punct";
    let b = "It/PRON/3/nsubj was/AUX/3/aux raining/VERB/0/root ./PUNCT/3/punct";
    let rs4 = body(
        r#"<segment id="1">We stayed in .</segment>
        <segment id="2" parent="1" relname="causal-cause">It was raining .</segment>"#,
    );
    doc_from("cause", &conllu(&[&[a, b]]), &rs4, "")
}

/// "It rained all week . This causes flooding ."
pub fn altlex_doc() -> Document {
    let a = "It/PRON/2/nsubj rained/VERB/0/root all/DET/4/det week/NOUN/2/obl:tmod ./PUNCT/2/punct";
    let b = "This/PRON/2/nsubj causes/VERB/0/root flooding/NOUN/2/obj ./PUNCT/2/punct";
    let rs4 = body(
        r#"<segment id="1">It rained all week .</segment>
        <segment id="2" parent="1" relname="causal-result">This causes flooding .</segment>"#,
    );
    doc_from("altlex", &conllu(&[&[a, b]]), &rs4, "")
}

/// "Had it happened five hours earlier , we would have died ."
pub fn inversion_doc() -> Document {
    let s = "Had/AUX/3/aux it/PRON/3/nsubj happened/VERB/11/advcl five/NUM/5/nummod hours/NOUN/6/obl:npmod \
             earlier/ADV/3/advmod ,/PUNCT/3/punct we/PRON/11/nsubj would/AUX/11/aux have/AUX/11/aux \
             died/VERB/0/root ./PUNCT/11/punct";
    let rs4 = body(
        r#"<segment id="1" parent="2" relname="contingency-condition">Had it happened five hours earlier ,</segment>
        <segment id="2">we would have died .</segment>"#,
    );
    doc_from("inversion", &conllu(&[&[s]]), &rs4, "")
}

/// "Should we leave if it rains ?": an inverted question, not a condition.
pub fn question_inversion_doc() -> Document {
    let s = "Should/AUX/3/aux we/PRON/3/nsubj leave/VERB/0/root if/SCONJ/6/mark it/PRON/6/nsubj \
             rains/VERB/3/advcl ?/PUNCT/3/punct";
    let rs4 = body(
        r#"<segment id="1">Should we leave</segment>
        <segment id="2" parent="1" relname="contingency-condition">if it rains ?</segment>"#,
    );
    doc_from("question", &conllu(&[&[s]]), &rs4, "")
}
