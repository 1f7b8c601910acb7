//! Parse a coframe document and classify it: generic (p3 != 0) or
//! non-generic, with the branch invariants.
//!
//!     cargo run --example classify_coframe [FILE]
//!
//! Without a file argument, a built-in non-generic example is used.

use engel::parse::parse_coframe;
use engel::report::{classify_document, Format};

const DEFAULT_DOC: &str = "\
params: a
dw1 = w1^w3 + w2^w4
dw2 = a*w1^w2 + w3^w4
dw3 = a*w1^w3 + a*w2^w4
dw4 = -a*w1^w2 - w3^w4
";

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).expect("readable input file"),
        None => DEFAULT_DOC.to_string(),
    };
    match parse_coframe(&text) {
        Ok(parsed) => {
            let report = classify_document(&parsed.algebra, parsed.warnings);
            print!("{}", report.render(Format::Table));
        }
        Err(e) => {
            eprintln!("parse error at {e}");
            std::process::exit(2);
        }
    }
}
