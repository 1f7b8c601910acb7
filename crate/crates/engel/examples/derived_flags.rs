//! Derived systems, derived flags, and retracting (Cartan) systems, both on
//! left-invariant coframes and on the jet-space chart.
//!
//!     cargo run --example derived_flags

use engel::families::{build_family_symbolic, FamilyId};
use engel::flags::Subsystem;
use engel::models::{jet_chart, jet_contact_system};
use engel::scalar::rat_string;

fn main() {
    println!("jet chart (x, y0, y1, y2), contact system <dy0 - y1 dx, dy1 - y2 dx>:");
    let ch = jet_chart();
    let labels: [String; 4] = std::array::from_fn(|i| format!("d{}", ch.coords()[i]));
    let sys = Subsystem::new(&ch, jet_contact_system(&ch)).unwrap();
    let step = sys.derived_system().unwrap();
    for g in step.subsystem.generators() {
        println!("  first derived system generator: {}", g.display_with(&labels));
    }
    let flag = sys.derived_flag().unwrap();
    println!("  flag ranks: {:?} (Engel: {})", flag.ranks, flag.ranks == vec![2, 1, 0]);
    let witness: Vec<String> = flag
        .witness
        .iter()
        .map(|(s, v)| format!("{s} = {}", rat_string(v)))
        .collect();
    println!("  witness point: {}", witness.join(", "));

    for id in FamilyId::ALL {
        let alg = build_family_symbolic(id).unwrap();
        let sys = Subsystem::from_basis_indices(&alg, &[1, 2]);
        let flag = sys.derived_flag().unwrap();
        let cartan = Subsystem::from_basis_indices(&alg, &[1]).cartan_system().unwrap();
        println!("\n{id}: flag of <w1, w2> has ranks {:?}", flag.ranks);
        println!("  I^(1) basis: {:?}", flag.bases[1].generators());
        println!("  C(<w1>) rank {}: {:?}", cartan.rank(), cartan.generators());
    }
}
