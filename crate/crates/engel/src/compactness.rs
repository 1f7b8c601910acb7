//! Volume-form obstructions to compact quotients and the per-family
//! compactness verdicts.
//!
//! For a left-invariant coframe, d(3-form omitting w_j) = lambda_j * vol;
//! a nonzero lambda_j makes the volume form exact, which rules out compact
//! quotients by Stokes. The vector (lambda_1..lambda_4) is the unimodularity
//! character: all four 3-forms are checked, not only a single displayed one.

use serde::Serialize;

use crate::exterior::{CoframedAlgebra, Form, DIM};
use crate::families::{build_family, FamilyId};
use crate::scalar::{rat_string, ParamPoly};

/// The four obstruction coefficients: d(w1^..^ŵ_j^..^w4) = lambda_j vol.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionReport {
    pub lambdas: [ParamPoly; DIM],
}

impl ObstructionReport {
    /// True when every coefficient vanishes identically: the necessary
    /// unimodularity condition for a compact quotient holds.
    pub fn admits_candidate(&self) -> bool {
        self.lambdas.iter().all(ParamPoly::is_zero)
    }

    /// The 3-form omitting w_j, for labeling reports.
    pub fn omitted_basis_label(j: usize) -> String {
        let idx: Vec<String> = (1..=DIM)
            .filter(|&i| i != j)
            .map(|i| format!("w{i}"))
            .collect();
        idx.join("^")
    }

    /// The exact vanishing conditions (nonzero lambda polynomials).
    pub fn conditions(&self) -> Vec<(usize, ParamPoly)> {
        self.lambdas
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_zero())
            .map(|(j, l)| (j + 1, l.clone()))
            .collect()
    }
}

/// Compute d of all four basis 3-forms and extract the top coefficients.
pub fn stokes_obstructions(alg: &CoframedAlgebra) -> ObstructionReport {
    let lambdas = std::array::from_fn(|j| {
        let indices: Vec<usize> = (1..=DIM).filter(|&i| i != j + 1).collect();
        let three = Form::monomial(&indices, ParamPoly::one());
        alg.d(&three).top_coefficient().expect("degree 4")
    });
    ObstructionReport { lambdas }
}

/// How a family relates to the surviving one-parameter line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum CompactnessOutcome {
    /// Unimodular for every parameter value; quotients exist by construction.
    Admits,
    /// Unimodular exactly on the stated locus; on it the family reduces to
    /// the surviving line.
    AdmitsIff { conditions: Vec<String>, reduction: Option<String> },
    /// A constant nonzero obstruction: never admits a compact quotient.
    NeverAdmits { obstruction: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompactnessVerdict {
    pub family: usize,
    pub outcome: CompactnessOutcome,
    /// Which obstruction coefficient forces each condition.
    pub justification: Vec<String>,
}

impl CompactnessVerdict {
    pub fn admits(&self) -> bool {
        matches!(self.outcome, CompactnessOutcome::Admits)
    }
}

/// Decide compact-quotient existence for a family at the given parameters
/// (symbolic or rational). The decision is exact: the full obstruction
/// vector must vanish, and on its vanishing locus each family reduces to
/// the first family with a = 0, whose quotients are constructed explicitly
/// in the lattices module.
pub fn compact_quotient_verdict(
    id: FamilyId,
    a: &ParamPoly,
    b: &ParamPoly,
) -> CompactnessVerdict {
    let alg = build_family(id, a, b).expect("catalogued family");
    let obstructions = stokes_obstructions(&alg);
    let mut justification = Vec::new();
    let mut conditions = Vec::new();
    let mut constant_block: Option<String> = None;
    for (j, lambda) in obstructions.conditions() {
        let label = ObstructionReport::omitted_basis_label(j);
        justification.push(format!("d({label}) = ({lambda}) * w1^w2^w3^w4"));
        match lambda.as_constant() {
            Some(c) => {
                constant_block = Some(format!(
                    "d({label}) = {} * vol makes the volume form exact",
                    rat_string(&c)
                ));
            }
            None => conditions.push(condition_string(&lambda)),
        }
    }
    conditions.sort();
    conditions.dedup();

    let reduction = match id {
        FamilyId::F1 => Some("family 1 with a = 0 (any b)".to_string()),
        FamilyId::F2 => Some("at b = 0 this is family 1 (a, 0); a = 0 remains".to_string()),
        FamilyId::F3 => Some("at a = 0 this is family 1 (0, 2b)".to_string()),
        FamilyId::F4 => Some("at a = b = 0 this is family 1 (0, 0)".to_string()),
        FamilyId::F5 | FamilyId::F6 => None,
    };

    let outcome = if let Some(obstruction) = constant_block {
        CompactnessOutcome::NeverAdmits { obstruction }
    } else if conditions.is_empty() {
        CompactnessOutcome::Admits
    } else {
        CompactnessOutcome::AdmitsIff { conditions, reduction }
    };
    CompactnessVerdict { family: id.index(), outcome, justification }
}

/// Render a polynomial vanishing condition, solving monomial conditions
/// like -a or -a^2/2 down to the parameter itself.
fn condition_string(p: &ParamPoly) -> String {
    let mut terms = p.terms();
    if let (Some((mono, _)), None) = (terms.next(), terms.next()) {
        if mono.len() == 1 {
            return format!("{} = 0", mono[0].0);
        }
    }
    format!("{p} = 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family_symbolic, obstructed_branch};
    use crate::scalar::{rat_int, sym};

    fn a() -> ParamPoly {
        ParamPoly::var(sym("a"))
    }
    fn b() -> ParamPoly {
        ParamPoly::var(sym("b"))
    }

    #[test]
    fn family_one_obstruction_vector() {
        let alg = build_family_symbolic(FamilyId::F1).unwrap();
        let obs = stokes_obstructions(&alg);
        // lambda for w1^w2^w4 (omitting w3) is -a; the others vanish.
        assert_eq!(obs.lambdas[2], -&a());
        assert!(obs.lambdas[0].is_zero());
        assert!(obs.lambdas[1].is_zero());
        assert!(obs.lambdas[3].is_zero());
    }

    #[test]
    fn family_two_obstruction() {
        let alg = build_family_symbolic(FamilyId::F2).unwrap();
        let obs = stokes_obstructions(&alg);
        // lambda for w1^w2^w3 (omitting w4) is 2b.
        assert_eq!(obs.lambdas[3], b().scale(&rat_int(2)));
    }

    #[test]
    fn family_five_obstruction() {
        let alg = build_family_symbolic(FamilyId::F5).unwrap();
        let obs = stokes_obstructions(&alg);
        assert_eq!(obs.lambdas[2], ParamPoly::constant(rat_int(-2)));
    }

    #[test]
    fn obstructed_branch_constant() {
        let obs = stokes_obstructions(&obstructed_branch());
        assert_eq!(obs.lambdas[2], ParamPoly::constant(rat_int(-2)));
    }

    #[test]
    fn verdict_examples() {
        // Family 1 at (0, -1) admits (the solvable construction).
        let v = compact_quotient_verdict(
            FamilyId::F1,
            &ParamPoly::zero(),
            &ParamPoly::constant(rat_int(-1)),
        );
        assert!(v.admits());

        // Family 4 at (1, 0) is blocked by the constant obstruction 2a = 2.
        let v = compact_quotient_verdict(
            FamilyId::F4,
            &ParamPoly::constant(rat_int(1)),
            &ParamPoly::zero(),
        );
        assert!(matches!(v.outcome, CompactnessOutcome::NeverAdmits { .. }));

        // Family 6 never admits, any a.
        let v = compact_quotient_verdict(FamilyId::F6, &ParamPoly::constant(rat_int(3)), &b());
        assert!(matches!(v.outcome, CompactnessOutcome::NeverAdmits { .. }));
    }

    #[test]
    fn symbolic_verdicts_reproduce_conditions() {
        let v = compact_quotient_verdict(FamilyId::F1, &a(), &b());
        match v.outcome {
            CompactnessOutcome::AdmitsIff { conditions, .. } => {
                assert_eq!(conditions, vec!["a = 0".to_string()]);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
        let v = compact_quotient_verdict(FamilyId::F3, &a(), &b());
        match v.outcome {
            CompactnessOutcome::AdmitsIff { conditions, .. } => {
                assert_eq!(conditions, vec!["a = 0".to_string()]);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn basis_change_covariance() {
        // The all-lambdas-zero verdict is invariant under constant invertible
        // coframe changes (the adjoint trace is basis-independent).
        use rand::Rng;
        use rand::SeedableRng;
        let unimodular = build_family(FamilyId::F1, &ParamPoly::zero(), &b()).unwrap();
        let obstructed = build_family_symbolic(FamilyId::F5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        let mut tried = 0;
        while tried < 25 {
            let m: Vec<Vec<crate::scalar::Rat>> = (0..4)
                .map(|_| (0..4).map(|_| rat_int(rng.random_range(-2..=2))).collect())
                .collect();
            if crate::linalg::invert_rat(&m).is_none() {
                continue;
            }
            tried += 1;
            let u = unimodular.change_coframe(&m).unwrap();
            assert!(stokes_obstructions(&u).admits_candidate());
            let o = obstructed.change_coframe(&m).unwrap();
            assert!(!stokes_obstructions(&o).admits_candidate());
        }
    }

    #[test]
    fn exactness_consistency() {
        // Whenever lambda_j != 0 the corresponding 3-form differentiates to a
        // nonzero multiple of the volume form.
        let alg = build_family_symbolic(FamilyId::F2).unwrap();
        let obs = stokes_obstructions(&alg);
        for (j, lambda) in obs.conditions() {
            let indices: Vec<usize> = (1..=4).filter(|&i| i != j).collect();
            let d = alg.d(&Form::monomial(&indices, ParamPoly::one()));
            assert_eq!(d.top_coefficient().unwrap(), lambda);
            assert!(!d.is_zero());
        }
    }
}
