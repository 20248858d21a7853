//! Builds the shipped corpus and runs one suite, printing the report table.
//!
//! `cargo run --example corpus_report -- structure`

use linbase::catalog::{build_corpus, run_suite, Suite};

fn main() -> linbase::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "thm1".to_string());
    let suite = Suite::from_name(&name).unwrap_or(Suite::StrongBound);
    let corpus = build_corpus(0)?;
    let report = run_suite(suite, &corpus, 0);
    print!("{}", report.to_text());
    Ok(())
}
