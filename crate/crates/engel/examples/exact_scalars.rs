//! The exact scalar substrates: parameter polynomials, real quadratic field
//! arithmetic, and coordinate differential rings with declared generators.
//!
//!     cargo run --example exact_scalars

use std::collections::BTreeMap;

use engel::scalar::{rat, rat_int, sym, ChartScalars, DiffScalar, GenRule, ParamPoly, QuadExt};

fn main() {
    // Parameter polynomials with exact rational coefficients.
    let a = ParamPoly::var(sym("a"));
    let b = ParamPoly::var(sym("b"));
    let p = &(&(&a * &a) * &b) - &b.scale(&rat(1, 4));
    let assignment: BTreeMap<_, _> =
        [(sym("a"), rat_int(1)), (sym("b"), rat_int(4))].into_iter().collect();
    println!("p = {p}; p(a=1, b=4) = {}", p.eval(&assignment).unwrap());

    // Quadratic field elements: the unit (3 + sqrt 5)/2 and its inverse.
    let c = QuadExt::new(5, rat(3, 2), rat(1, 2));
    println!("c = {c}, norm {}, c^-1 = {}", c.norm(), c.inverse().unwrap());
    println!("sqrt(20) normalizes to {}", QuadExt::sqrt(20));

    // A differential ring with E = e^{2y} and a cos/sin pair.
    let e = sym("E");
    let (cs, sn) = (sym("C"), sym("S"));
    let chart = ChartScalars::new(
        vec![sym("x"), sym("y")],
        vec![
            GenRule {
                symbol: e.clone(),
                partials: [(sym("y"), ParamPoly::var(e.clone()).scale(&rat_int(2)))]
                    .into_iter()
                    .collect(),
            },
            GenRule {
                symbol: cs.clone(),
                partials: [(sym("y"), -&ParamPoly::var(sn.clone()))].into_iter().collect(),
            },
            GenRule {
                symbol: sn.clone(),
                partials: [(sym("y"), ParamPoly::var(cs.clone()))].into_iter().collect(),
            },
        ],
        vec![(cs.clone(), sn.clone())],
    )
    .unwrap();
    let ev = DiffScalar::var(&chart, e);
    println!("d/dy e^(2y) = {}", ev.derive(&sym("y")).unwrap());
    let c2s2 = {
        let c = DiffScalar::var(&chart, cs);
        let s = DiffScalar::var(&chart, sn);
        &(&c * &c) + &(&s * &s)
    };
    println!("C^2 + S^2 normalizes to {c2s2}");
}
