//! Verify the whole catalog of homogeneous structure-equation families:
//! Jacobi residuals, Engel flags, symplectic checks, classification, and
//! compact-quotient verdicts, printed as the six-row summary table.
//!
//!     cargo run --example verify_families

use engel::report::{emit_report, full_report, Format};

fn main() {
    let report = full_report();
    print!("{}", emit_report(&report, Format::Table));
}
