//! The nilpotent model at (a, b) = (0, 0): dual brackets, lattice criterion,
//! integer group arithmetic, and the matrix-of-forms identity d(w) = -w^w.
//!
//!     cargo run --example nilpotent_lattice

use engel::families::{build_family_at, FamilyId};
use engel::lattices::{
    coframe_to_brackets, malcev_check, maurer_cartan_check, nil_group_mul, nilpotent_mc_matrix,
    NilGroupElement,
};
use engel::scalar::rat_int;

fn main() {
    let flat = build_family_at(FamilyId::F1, rat_int(0), rat_int(0)).unwrap();
    let table = coframe_to_brackets(&flat).unwrap();
    println!("dual brackets of the flat member:");
    for line in table.display_lines() {
        println!("  {line}");
    }

    let malcev = malcev_check(&table);
    println!(
        "nilpotent: {}, rational: {}, lattice exists: {} (lower central dims {:?})",
        malcev.nilpotent, malcev.rational, malcev.lattice_exists, malcev.lower_central_dims
    );

    println!(
        "matrix of forms satisfies d(w) = -w^w: {}",
        maurer_cartan_check(&nilpotent_mc_matrix(), &flat).unwrap()
    );

    let g = NilGroupElement::from_ints(0, 0, 1, 0);
    let h = NilGroupElement::from_ints(0, 0, 0, 1);
    let gh = nil_group_mul(&g, &h);
    let hg = nil_group_mul(&h, &g);
    println!("integer subgroup arithmetic (noncommutativity witness):");
    println!("  g = (c,d,e,f) = (0,0,1,0), h = (0,0,0,1)");
    println!("  g*h = ({}, {}, {}, {})", gh.c, gh.d, gh.e, gh.f);
    println!("  h*g = ({}, {}, {}, {})", hg.c, hg.d, hg.e, hg.f);
    let ginv = g.inverse();
    println!(
        "  g^-1 = ({}, {}, {}, {}); g*g^-1 = identity: {}",
        ginv.c,
        ginv.d,
        ginv.e,
        ginv.f,
        nil_group_mul(&g, &ginv) == NilGroupElement::identity()
    );
}
