//! Generate the quadratic torsion constraints (the coefficients of d(d(w_i))
//! over the reduced ansatz) and verify the catalogued families against them.
//!
//!     cargo run --example jacobi_constraints

use engel::families::{
    ansatz_constraints, ansatz_template, family_template_assignment, substitute_template,
    AnsatzCase, FamilyId,
};

fn main() {
    for case in [AnsatzCase::A3Nonzero, AnsatzCase::A3Zero] {
        let template = ansatz_template(case);
        println!("ansatz {case:?} with unknowns {:?}:", template.unknowns);
        let constraints = ansatz_constraints(&template);
        println!("  {} quadratic constraints, e.g.:", constraints.len());
        for c in constraints.iter().take(4) {
            println!(
                "    d(d(w{})) on {:?}: {} = 0",
                c.equation,
                c.monomial.indices(),
                c.poly
            );
        }
        println!();
    }

    for id in FamilyId::ALL {
        match family_template_assignment(id) {
            Some((case, assignment)) => {
                let template = ansatz_template(case);
                let alg = substitute_template(&template, &assignment);
                let ok = alg.jacobi_holds();
                println!(
                    "{id}: embeds in {case:?}; all constraints vanish after substitution: {ok}"
                );
            }
            None => println!(
                "{id}: no consistent template assignment (the catalogued table \
                 puts different values in a shared torsion slot)"
            ),
        }
    }
}
