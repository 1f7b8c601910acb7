//! Volume-form obstructions: d of every basis 3-form, and the resulting
//! compact-quotient verdict per family.
//!
//!     cargo run --example stokes_obstructions

use engel::compactness::{compact_quotient_verdict, stokes_obstructions, ObstructionReport};
use engel::families::{build_family_symbolic, obstructed_branch, FamilyId};
use engel::scalar::{sym, ParamPoly};

fn main() {
    for id in FamilyId::ALL {
        let alg = build_family_symbolic(id).unwrap();
        let obs = stokes_obstructions(&alg);
        println!("{id}:");
        for (j, lambda) in obs.lambdas.iter().enumerate() {
            println!(
                "  d({}) = ({}) * w1^w2^w3^w4",
                ObstructionReport::omitted_basis_label(j + 1),
                lambda
            );
        }
        let verdict = compact_quotient_verdict(
            id,
            &ParamPoly::var(sym("a")),
            &ParamPoly::var(sym("b")),
        );
        println!("  verdict: {:?}", verdict.outcome);
    }

    let branch = obstructed_branch();
    let obs = stokes_obstructions(&branch);
    println!("boundary case outside the catalog:");
    for (j, lambda) in obs.lambdas.iter().enumerate() {
        if !lambda.is_zero() {
            println!(
                "  d({}) = ({}) * w1^w2^w3^w4",
                ObstructionReport::omitted_basis_label(j + 1),
                lambda
            );
        }
    }
}
