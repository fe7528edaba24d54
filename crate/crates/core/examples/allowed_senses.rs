//! Query the sense map: which PDTB senses may a connective carry under a
//! given RST label?
//!
//! cargo run --example allowed_senses [-- <connective> <rst-label>]

use rst2pdtb::corpus::RstLabel;
use rst2pdtb::senses::MappingResources;

fn main() -> rst2pdtb::Result<()> {
    let res = MappingResources::shipped();
    let mut args = std::env::args().skip(1);
    let queries: Vec<(Option<String>, RstLabel)> = match (args.next(), args.next()) {
        (Some(conn), Some(label)) => vec![(Some(conn), label.parse()?)],
        _ => vec![
            (Some("since".into()), RstLabel::CausalCause),
            (Some("since".into()), RstLabel::ContextCircumstance),
            (Some("but".into()), RstLabel::AdversativeConcession),
            (Some("while".into()), RstLabel::JointList),
            (Some("cos".into()), RstLabel::CausalCause),
            (None, RstLabel::ContingencyCondition),
        ],
    };
    for (conn, label) in queries {
        let a = res.allowed_senses(conn.as_deref(), label);
        let senses: Vec<String> = a.senses.iter().map(ToString::to_string).collect();
        let mut notes = Vec::new();
        if a.map_conflict {
            notes.push("map conflict");
        }
        if a.unknown_connective {
            notes.push("unknown connective");
        }
        println!(
            "{:<8} + {:<24} -> {}{}",
            conn.as_deref().unwrap_or("(none)"),
            label,
            senses.join(", "),
            if notes.is_empty() { String::new() } else { format!("  [{}]", notes.join(", ")) }
        );
    }
    Ok(())
}
