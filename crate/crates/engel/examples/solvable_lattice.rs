//! The solvable model (a = 0, b < 0 rebased): Maurer-Cartan check, the dual
//! bracket table next to the quoted one, and explicit lattices from
//! hyperbolic SL2(Z) matrices with their exact certificates in Q(sqrt(D)).
//!
//!     cargo run --example solvable_lattice

use engel::lattices::{
    maurer_cartan_check, sl2z_lattice, solvable_bracket_comparison, solvable_coframe,
    solvable_mc_matrix,
};

fn main() {
    let coframe = solvable_coframe();
    println!(
        "block matrix of forms satisfies d(w) = -w^w: {}",
        maurer_cartan_check(&solvable_mc_matrix(), &coframe).unwrap()
    );

    let cmp = solvable_bracket_comparison().unwrap();
    println!("computed brackets:");
    for l in &cmp.computed {
        println!("  {l}");
    }
    println!("quoted table:");
    for l in &cmp.quoted {
        println!("  {l}");
    }
    println!("{}", cmp.reconciliation);

    for s in [[[2i64, 1], [1, 1]], [[1, 1], [1, 2]], [[3, 2], [1, 1]]] {
        println!("\nlattice from S = {s:?}:");
        match sl2z_lattice(s) {
            Ok(desc) => {
                for line in desc.describe() {
                    println!("  {line}");
                }
            }
            Err(e) => println!("  rejected: {e}"),
        }
    }

    println!("\ndegenerate and negative-trace inputs are rejected:");
    for s in [[[1i64, 0], [0, 1]], [[-2, -1], [-1, -1]]] {
        match sl2z_lattice(s) {
            Ok(_) => println!("  {s:?}: unexpectedly accepted"),
            Err(e) => println!("  {s:?}: {e}"),
        }
    }
}
