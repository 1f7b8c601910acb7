//! The coordinate models: the jet-space Engel flag and the three explicit
//! realizations of the surviving line (polynomial, exponential with
//! e^{+-beta y}, trigonometric with cos/sin), each checked against its
//! structure equations in the exact differential ring.
//!
//!     cargo run --example normal_form_models

use engel::flags::Subsystem;
use engel::models::{
    exponential_model, flat_model, jet_chart, jet_contact_system, model_volume,
    trigonometric_model,
};

fn main() {
    let ch = jet_chart();
    let sys = Subsystem::new(&ch, jet_contact_system(&ch)).unwrap();
    println!(
        "jet contact system derived flag: {:?}",
        sys.derived_flag().unwrap().ranks
    );

    let models = [
        flat_model().unwrap(),
        exponential_model(1).unwrap(),
        exponential_model(2).unwrap(),
        trigonometric_model(1).unwrap(),
        trigonometric_model(3).unwrap(),
    ];
    for m in &models {
        println!("\n{}:", m.name);
        for (i, w) in m.coframe.iter().enumerate() {
            println!("  w{} = {}", i + 1, w.display_with(&chart_basis(&m.chart)));
        }
        println!("  satisfies its structure equations: {}", m.satisfied());
        println!("  coframe volume coefficient: {}", model_volume(m));
    }
}

fn chart_basis(ch: &engel::exterior::CoordChart) -> [String; 4] {
    let c = ch.coords();
    std::array::from_fn(|i| format!("d{}", c[i]))
}
