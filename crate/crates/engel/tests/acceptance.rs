//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see the lines for passing tests; failing tests
//! print them automatically).
//!
//! Every comparison is exact; there are no tolerances anywhere.
//!
//! Known red: `criterion_1_family4_residuals_vanish_along_b_zero` asserts
//! that the fourth catalogued table keeps zero residuals along b = 0. The
//! computed residuals there are (1/4 a) w1^w2^w3 and (1/4 a) w2^w3^w4, which
//! are not identically zero, so the check fails and prints them; the other
//! criterion-1 checks (families 1, 2, 3, 5, 6 identically, family 4 at the
//! origin) are green.

use std::collections::BTreeMap;

use engel::compactness::{
    compact_quotient_verdict, stokes_obstructions, CompactnessOutcome,
};
use engel::exterior::{CoframedAlgebra, Form, IndexSet};
use engel::families::{build_family_at, build_family_symbolic, obstructed_branch, FamilyId};
use engel::flags::{
    adapted_invariants, canonical_symplectic, check_symplectic, ClassificationKind, Subsystem,
};
use engel::lattices::{
    change_of_basis, coframe_to_brackets, malcev_check, maurer_cartan_check, nil_group_mul,
    nilpotent_mc_matrix, sl2z_lattice, solvable_coframe, solvable_mc_matrix, BracketTable,
    NilGroupElement,
};
use engel::linalg::{invert_rat, mat_mul_rat};
use engel::models::{
    exponential_model, flat_model, jet_chart, jet_contact_system, trigonometric_model,
};
use engel::scalar::{rat, rat_int, sym, ParamPoly, QuadExt, Rat, Symbol};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn a() -> ParamPoly {
    ParamPoly::var(sym("a"))
}

fn b() -> ParamPoly {
    ParamPoly::var(sym("b"))
}

fn assign(pairs: &[(&str, i64)]) -> BTreeMap<Symbol, Rat> {
    pairs.iter().map(|(s, v)| (sym(s), rat_int(*v))).collect()
}

#[test]
fn criterion_1_jacobi_six_families() {
    for id in [FamilyId::F1, FamilyId::F2, FamilyId::F3, FamilyId::F5, FamilyId::F6] {
        let alg = build_family_symbolic(id).unwrap();
        let residuals = alg.jacobi_residuals();
        for (i, r) in residuals.iter().enumerate() {
            assert!(
                r.is_zero(),
                "{id}: d(d(w{})) = {} is not identically zero",
                i + 1,
                r
            );
        }
    }
    // Family 4 as catalogued: report the exact residuals (they are nonzero),
    // and confirm they vanish at (a, b) = (0, 0).
    let f4 = build_family_symbolic(FamilyId::F4).unwrap();
    let residuals = f4.jacobi_residuals();
    assert!(
        !residuals.iter().all(Form::is_zero),
        "family 4 residuals unexpectedly vanished; the catalogued table changed"
    );
    println!("criterion 1: family 4 residuals as catalogued (reported exactly):");
    for (i, r) in residuals.iter().enumerate() {
        println!("  d(d(w{})) = {}", i + 1, r);
    }
    println!("  offending entries: the constant -1/4 in the w2^w3 slot of d(w4)");
    println!("  and the matching -1/4 inside the w1^w2 slot coefficient of d(w4)");
    let at_origin = f4.specialize(&assign(&[("a", 0), ("b", 0)]));
    assert!(
        at_origin.jacobi_holds(),
        "family 4 residuals must vanish at (a, b) = (0, 0)"
    );
    println!("criterion 1: PASS - families 1,2,3,5,6 identically; family 4 reported + zero at origin");
}

#[test]
fn criterion_1_family4_residuals_vanish_along_b_zero() {
    let f4 = build_family_symbolic(FamilyId::F4).unwrap();
    let along_b0 = f4.specialize(&assign(&[("b", 0)]));
    let residuals = along_b0.jacobi_residuals();
    let all_zero = residuals.iter().all(Form::is_zero);
    if !all_zero {
        println!("criterion 1 (family 4 along b = 0): FAIL - residuals do not vanish:");
        for (i, r) in residuals.iter().enumerate() {
            println!("  d(d(w{}))|b=0 = {}", i + 1, r);
        }
    } else {
        println!("criterion 1 (family 4 along b = 0): PASS");
    }
    assert!(
        all_zero,
        "family 4 residuals along b = 0 are nonzero: d(d(w1)) = {}, d(d(w4)) = {}",
        residuals[0], residuals[3]
    );
}

#[test]
fn criterion_2_engel_lagrangian_suite() {
    for id in FamilyId::ALL {
        let alg = build_family_symbolic(id).unwrap();
        let flag = Subsystem::from_basis_indices(&alg, &[1, 2])
            .derived_flag()
            .unwrap();
        assert_eq!(flag.ranks, vec![2, 1, 0], "{id}: derived flag");
        assert!(flag.ambiguities.is_empty(), "{id}: rank ambiguity");

        let omega = canonical_symplectic();
        assert_eq!(
            omega.wedge(&omega).top_coefficient().unwrap(),
            ParamPoly::constant(rat_int(-2)),
            "{id}: Omega^Omega top coefficient"
        );
        assert!(
            omega.reduce_mod_indices(&[1, 2]).is_zero(),
            "{id}: Omega outside the ideal of <w1, w2>"
        );
        // Closedness holds identically for families 1, 2, 3, 5, 6; the
        // fourth printed table fails it (see the dedicated red check below).
        if id != FamilyId::F4 {
            assert!(alg.d(&omega).is_zero(), "{id}: d(Omega) != 0");
            let rep = check_symplectic(&alg);
            assert!(rep.closed && rep.nondegenerate && rep.lagrangian, "{id}: {rep:?}");
        } else {
            let rep = check_symplectic(&alg);
            assert!(rep.nondegenerate && rep.lagrangian, "{id}: {rep:?}");
        }
    }
    println!("criterion 2: PASS - flag [2,1,0], top(Omega^2)=-2, Omega in the <w1,w2> ideal for all six; d(Omega)=0 for families 1,2,3,5,6");
}

#[test]
fn criterion_2_family4_symplectic_closed() {
    // As catalogued, the fourth family's structure equations do not keep the
    // canonical symplectic form closed at symbolic parameters.
    let alg = build_family_symbolic(FamilyId::F4).unwrap();
    let d_omega = alg.d(&canonical_symplectic());
    if d_omega.is_zero() {
        println!("criterion 2 (family 4 closedness): PASS");
    } else {
        println!(
            "criterion 2 (family 4 closedness): FAIL - d(Omega) = {} (zero only at b = 0 or a = 1)",
            d_omega
        );
    }
    assert!(d_omega.is_zero(), "family 4: d(Omega) = {d_omega}");
}

#[test]
fn criterion_3_classification_consistency() {
    for id in FamilyId::ALL {
        let alg = build_family_symbolic(id).unwrap();
        let verdict = adapted_invariants(&alg).unwrap();
        let expected_kind = if id.index() <= 4 {
            ClassificationKind::Generic
        } else {
            ClassificationKind::NonGeneric
        };
        assert_eq!(verdict.kind, expected_kind, "{id}");
        if expected_kind == ClassificationKind::NonGeneric {
            assert_eq!(verdict.a3, Some(ParamPoly::constant(rat_int(-1))), "{id}: A3");
            assert_eq!(verdict.a4, Some(ParamPoly::zero()), "{id}: A4");
        } else {
            assert!(!verdict.p3.is_zero(), "{id}: p3 must be nonzero");
        }

        // Cartan-system route: non-generic iff C(<w1>) = <w1, w2, w4> exactly.
        let cartan = Subsystem::from_basis_indices(&alg, &[1])
            .cartan_system()
            .unwrap();
        let perp = Subsystem::from_basis_indices(&alg, &[1, 2, 4]);
        let is_perp = cartan.rank() == 3 && cartan.same_span(&perp);
        assert_eq!(
            is_perp,
            verdict.kind == ClassificationKind::NonGeneric,
            "{id}: Cartan-system test disagrees with the p3 test"
        );
    }
    println!("criterion 3: PASS - families 1-4 generic, 5-6 non-generic (A3=-1, A4=0), Cartan test agrees");
}

#[test]
fn criterion_4_obstruction_table() {
    // Index convention: lambdas[j-1] is the coefficient for the 3-form
    // omitting w_j; w1^w2^w4 omits w3 (index 3), w1^w2^w3 omits w4 (index 4).
    let cases: Vec<(CoframedAlgebra, usize, ParamPoly, &str)> = vec![
        (build_family_symbolic(FamilyId::F1).unwrap(), 3, -&a(), "family 1: -a on w1^w2^w4"),
        (
            build_family_symbolic(FamilyId::F2).unwrap(),
            4,
            b().scale(&rat_int(2)),
            "family 2: 2b on w1^w2^w3",
        ),
        (
            build_family_symbolic(FamilyId::F3).unwrap(),
            4,
            (&a() * &a()).scale(&rat(-1, 2)),
            "family 3: -a^2/2 on w1^w2^w3",
        ),
        (
            build_family_symbolic(FamilyId::F4).unwrap(),
            4,
            a().scale(&rat_int(2)),
            "family 4: 2a on w1^w2^w3",
        ),
        (build_family_symbolic(FamilyId::F4).unwrap(), 3, -&b(), "family 4: -b on w1^w2^w4"),
        (
            build_family_symbolic(FamilyId::F5).unwrap(),
            3,
            ParamPoly::constant(rat_int(-2)),
            "family 5: -2 on w1^w2^w4",
        ),
        (
            build_family_symbolic(FamilyId::F6).unwrap(),
            3,
            ParamPoly::constant(rat_int(-2)),
            "family 6: -2 on w1^w2^w4",
        ),
        (
            obstructed_branch(),
            3,
            ParamPoly::constant(rat_int(-2)),
            "boundary case: -2 on w1^w2^w4",
        ),
    ];
    for (alg, j, expect, label) in cases {
        let obs = stokes_obstructions(&alg);
        assert_eq!(obs.lambdas[j - 1], expect, "{label}");
    }
    println!("criterion 4: PASS - obstruction table reproduced exactly (incl. boundary case -2)");
}

#[test]
fn criterion_5_final_theorem() {
    // Only family 1 with a = 0 survives, for every b.
    let survivor = compact_quotient_verdict(FamilyId::F1, &ParamPoly::zero(), &b());
    assert!(matches!(survivor.outcome, CompactnessOutcome::Admits), "{survivor:?}");
    let survivor_neg = compact_quotient_verdict(
        FamilyId::F1,
        &ParamPoly::zero(),
        &ParamPoly::constant(rat_int(-1)),
    );
    assert!(survivor_neg.admits());

    // Family 1 symbolic: blocked exactly by a = 0.
    let f1 = compact_quotient_verdict(FamilyId::F1, &a(), &b());
    match &f1.outcome {
        CompactnessOutcome::AdmitsIff { conditions, .. } => {
            assert_eq!(conditions, &vec!["a = 0".to_string()]);
        }
        other => panic!("family 1: {other:?}"),
    }

    // Families 2, 3, 4: reductions to family 1 on their loci.
    let f2 = compact_quotient_verdict(FamilyId::F2, &a(), &b());
    match &f2.outcome {
        CompactnessOutcome::AdmitsIff { conditions, reduction } => {
            assert!(conditions.contains(&"b = 0".to_string()), "{conditions:?}");
            assert!(conditions.contains(&"a = 0".to_string()), "{conditions:?}");
            assert!(reduction.as_deref().unwrap().contains("family 1"));
        }
        other => panic!("family 2: {other:?}"),
    }
    let f3 = compact_quotient_verdict(FamilyId::F3, &a(), &b());
    match &f3.outcome {
        CompactnessOutcome::AdmitsIff { conditions, reduction } => {
            assert_eq!(conditions, &vec!["a = 0".to_string()]);
            assert!(reduction.as_deref().unwrap().contains("family 1 (0, 2b)"));
        }
        other => panic!("family 3: {other:?}"),
    }
    // Family 3 at a = 0 admits for any b (it IS family 1 (0, 2b)).
    let f3_locus = compact_quotient_verdict(FamilyId::F3, &ParamPoly::zero(), &b());
    assert!(matches!(f3_locus.outcome, CompactnessOutcome::Admits));

    let f4 = compact_quotient_verdict(FamilyId::F4, &a(), &b());
    match &f4.outcome {
        CompactnessOutcome::AdmitsIff { conditions, reduction } => {
            assert!(conditions.contains(&"a = 0".to_string()), "{conditions:?}");
            assert!(conditions.contains(&"b = 0".to_string()), "{conditions:?}");
            assert!(reduction.as_deref().unwrap().contains("family 1 (0, 0)"));
        }
        other => panic!("family 4: {other:?}"),
    }

    // Families 5, 6 never admit.
    for id in [FamilyId::F5, FamilyId::F6] {
        let v = compact_quotient_verdict(id, &a(), &b());
        assert!(
            matches!(v.outcome, CompactnessOutcome::NeverAdmits { .. }),
            "{id}: {v:?}"
        );
    }
    println!("criterion 5: PASS - only family 1 with a = 0 (any b) survives; 2,3,4 flagged as reductions");
}

#[test]
fn criterion_6_nilpotent_lattice() {
    let flat = build_family_at(FamilyId::F1, rat_int(0), rat_int(0)).unwrap();
    let table = coframe_to_brackets(&flat).unwrap();
    let malcev = malcev_check(&table);
    assert!(malcev.lattice_exists, "{malcev:?}");

    let mut rng = ChaCha8Rng::seed_from_u64(0x6_1a77);
    let rnd = |rng: &mut ChaCha8Rng| {
        NilGroupElement::from_ints(
            rng.random_range(-10..=10),
            rng.random_range(-10..=10),
            rng.random_range(-10..=10),
            rng.random_range(-10..=10),
        )
    };
    for _ in 0..100 {
        let g = rnd(&mut rng);
        let h = rnd(&mut rng);
        let prod = nil_group_mul(&g, &h);
        assert!(prod.is_integral(), "closure must stay integral");
        let oracle = mat_mul_rat(&g.to_matrix(), &h.to_matrix());
        assert_eq!(prod.to_matrix(), oracle, "closed form vs 4x4 oracle");
        let inv = g.inverse();
        assert!(inv.is_integral());
        assert_eq!(nil_group_mul(&g, &inv), NilGroupElement::identity());
    }
    println!("criterion 6: PASS - Malcev criterion + 100 integral closure/inverse checks vs matrix oracle");
}

#[test]
fn criterion_7_solvable_lattice() {
    let desc = sl2z_lattice([[2, 1], [1, 1]]).unwrap();
    // c = (3 + sqrt 5)/2 exactly, and c * conj(c) = det = 1.
    assert_eq!(desc.c, QuadExt::new(5, rat(3, 2), rat(1, 2)));
    assert_eq!(desc.c.norm(), rat_int(1));

    // Eigen-data proportional to (1/sqrt5) [[(-1+sqrt5)/2, -1],
    //                                       [( 1+sqrt5)/2,  1]].
    let reference = [
        [QuadExt::new(5, rat(1, 2), rat(-1, 10)), QuadExt::new(5, rat_int(0), rat(-1, 5))],
        [QuadExt::new(5, rat(1, 2), rat(1, 10)), QuadExt::new(5, rat_int(0), rat(1, 5))],
    ];
    let ours = [
        [desc.v1[0].clone(), desc.v2[0].clone()],
        [desc.v1[1].clone(), desc.v2[1].clone()],
    ];
    let ratio = ours[0][0].div(&reference[0][0]).unwrap();
    assert!(!ratio.is_zero());
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(ours[i][j], &reference[i][j] * &ratio, "entry ({i},{j})");
        }
    }

    // The certificate identity diag(c^{-1}, c) = P X P^{-1} holds exactly:
    // re-verify here independently of the constructor's own check.
    let x = desc.certificate;
    assert_eq!(x, [[2, 1], [1, 1]]);
    let p = [
        [desc.v1[0].clone(), desc.v2[0].clone()],
        [desc.v1[1].clone(), desc.v2[1].clone()],
    ];
    let det = &(&p[0][0] * &p[1][1]) - &(&p[0][1] * &p[1][0]);
    let det_inv = det.inverse().unwrap();
    let p_inv = [
        [&p[1][1] * &det_inv, -&(&p[0][1] * &det_inv)],
        [-&(&p[1][0] * &det_inv), &p[0][0] * &det_inv],
    ];
    let xq = [
        [QuadExt::rational(rat_int(x[0][0])), QuadExt::rational(rat_int(x[0][1]))],
        [QuadExt::rational(rat_int(x[1][0])), QuadExt::rational(rat_int(x[1][1]))],
    ];
    let mul2 = |a: &[[QuadExt; 2]; 2], b: &[[QuadExt; 2]; 2]| -> [[QuadExt; 2]; 2] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]))
        })
    };
    let lhs = mul2(&p, &mul2(&xq, &p_inv));
    let cinv = desc.c.inverse().unwrap();
    assert_eq!(lhs[0][0], cinv);
    assert_eq!(lhs[1][1], desc.c);
    assert!(lhs[0][1].is_zero() && lhs[1][0].is_zero());
    println!("criterion 7: PASS - c = (3+sqrt5)/2, eigen-data proportional, certificate identity exact, c*conj(c)=1");
}

#[test]
fn criterion_8_maurer_cartan() {
    let flat = build_family_at(FamilyId::F1, rat_int(0), rat_int(0)).unwrap();
    assert!(maurer_cartan_check(&nilpotent_mc_matrix(), &flat).unwrap());

    // The rebased coframe w0 = w1 + w4, w2' = w2 + w4, w4' = w2 - w4 applied
    // to the scaled b < 0 member (b = -1) produces the solvable coframe; the
    // block matrix satisfies the Maurer-Cartan equation over it.
    let scaled = build_family_at(FamilyId::F1, rat_int(0), rat_int(-1)).unwrap();
    let rebase = vec![
        vec![rat_int(1), rat_int(0), rat_int(0), rat_int(1)],
        vec![rat_int(0), rat_int(1), rat_int(0), rat_int(1)],
        vec![rat_int(0), rat_int(0), rat_int(1), rat_int(0)],
        vec![rat_int(0), rat_int(1), rat_int(0), rat_int(-1)],
    ];
    let rebased = scaled.change_coframe(&rebase).unwrap();
    assert_eq!(
        rebased.structure_forms(),
        solvable_coframe().structure_forms(),
        "rebasing the b = -1 member must give the solvable coframe"
    );
    assert!(maurer_cartan_check(&solvable_mc_matrix(), &solvable_coframe()).unwrap());
    println!("criterion 8: PASS - both matrix representations satisfy d(w) = -w^w exactly");
}

#[test]
fn criterion_9_engel_normal_form_and_models() {
    let ch = jet_chart();
    let sys = Subsystem::new(&ch, jet_contact_system(&ch)).unwrap();
    assert_eq!(sys.derived_flag().unwrap().ranks, vec![2, 1, 0]);

    let flat = flat_model().unwrap();
    assert!(flat.satisfied(), "{:?}", flat.residuals());
    let exp = exponential_model(1).unwrap();
    assert!(exp.satisfied(), "{:?}", exp.residuals());
    let trig = trigonometric_model(1).unwrap();
    assert!(trig.satisfied(), "{:?}", trig.residuals());
    println!("criterion 9: PASS - jet flag [2,1,0]; polynomial, exponential, trigonometric models exact");
}

// ---------------------------------------------------------------------------
// Criterion 10: property suites (seeded, >= 100 cases each, zero failures)
// ---------------------------------------------------------------------------

fn random_poly(rng: &mut ChaCha8Rng) -> ParamPoly {
    let mut p = ParamPoly::zero();
    for _ in 0..rng.random_range(0..3) {
        let c = rat_int(rng.random_range(-3..=3));
        let ea = rng.random_range(0..2u32);
        let eb = rng.random_range(0..2u32);
        p = &p
            + &ParamPoly::from_terms(
                vec![sym("a"), sym("b")],
                vec![(vec![ea, eb], c)],
            );
    }
    p
}

fn random_form(rng: &mut ChaCha8Rng, degree: usize) -> Form<ParamPoly> {
    let mut f = Form::zero();
    for set in IndexSet::all_of_degree(degree) {
        if rng.random_bool(0.6) {
            f.insert(set, random_poly(rng));
        }
    }
    f
}

#[test]
fn criterion_10_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10_ca5e5);
    let families: Vec<CoframedAlgebra> = FamilyId::ALL
        .iter()
        .map(|&id| build_family_symbolic(id).unwrap())
        .collect();

    // (a) graded Leibniz rule in the coframe context.
    for n in 0..100 {
        let alg = &families[n % families.len()];
        let p = 1 + (n % 2);
        let q = 1 + (n / 2 % 2);
        let alpha = random_form(&mut rng, p);
        let beta = random_form(&mut rng, q);
        let lhs = alg.d(&alpha.wedge(&beta));
        let da_b = alg.d(&alpha).wedge(&beta);
        let a_db = alpha.wedge(&alg.d(&beta));
        let rhs = if p % 2 == 0 { da_b.add(&a_db) } else { da_b.sub(&a_db) };
        assert_eq!(lhs, rhs, "Leibniz failed (coframe), case {n}");
    }

    // (b) graded anticommutativity.
    for n in 0..100 {
        let p = 1 + (n % 3);
        let q = 1 + (n / 3 % 2);
        let alpha = random_form(&mut rng, p);
        let beta = random_form(&mut rng, q);
        let sign = if (p * q) % 2 == 0 { 1 } else { -1 };
        let rhs = if sign == 1 {
            beta.wedge(&alpha)
        } else {
            beta.wedge(&alpha).neg()
        };
        assert_eq!(alpha.wedge(&beta), rhs, "anticommutativity failed, case {n}");
    }

    // (c) d^2 = 0 in charts, including extension generators.
    let trig = trigonometric_model(2).unwrap();
    let ch = &trig.chart;
    let gens: Vec<engel::scalar::DiffScalar> = vec![
        ch.coord_scalar(1),
        ch.coord_scalar(2),
        ch.scalar(sym("C")),
        ch.scalar(sym("S")),
    ];
    for n in 0..100 {
        let mut alpha: Form<engel::scalar::DiffScalar> = Form::zero();
        for i in 1..=4usize {
            if rng.random_bool(0.5) {
                let g = &gens[rng.random_range(0..gens.len())];
                let h = &gens[rng.random_range(0..gens.len())];
                alpha = alpha.add(&ch.differential(i).scale(&(g * h)));
            }
        }
        assert!(ch.d(&ch.d(&alpha)).is_zero(), "d^2 != 0 in chart, case {n}");
    }

    // (d) flag monotonicity: ranks never increase and bases stay nested.
    let mut checked = 0;
    while checked < 100 {
        let alg = &families[checked % families.len()];
        let k = 1 + (checked % 3);
        let mut gens = Vec::new();
        for _ in 0..k {
            let mut g: Form<ParamPoly> = Form::zero();
            for i in 1..=4usize {
                if rng.random_bool(0.5) {
                    g.insert(
                        IndexSet::single(i),
                        ParamPoly::constant(rat_int(rng.random_range(-2..=2))),
                    );
                }
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        let Ok(sys) = Subsystem::new(alg, gens) else {
            continue;
        };
        checked += 1;
        let flag = sys.derived_flag().unwrap();
        for w in flag.ranks.windows(2) {
            assert!(w[1] < w[0], "ranks must strictly decrease until stabilization");
        }
        for w in flag.bases.windows(2) {
            // nested: rank of the union equals the rank of the larger system
            let mut all = w[0].generators().to_vec();
            all.extend(w[1].generators().to_vec());
            if all.is_empty() {
                continue;
            }
            if let Ok(joined) = Subsystem::new(alg, w[0].generators().to_vec()) {
                let _ = joined;
            }
            let rank_union = {
                let rows: Vec<Vec<ParamPoly>> = all
                    .iter()
                    .map(|g| (1..=4).map(|i| g.component(IndexSet::single(i))).collect())
                    .collect();
                engel::linalg::rank(&rows)
            };
            assert_eq!(rank_union, w[0].rank(), "derived system not nested");
        }
    }

    // (e) obstruction vs adjoint trace: lambda_j = (-1)^j tr(ad e_j) on
    // Jacobi-satisfying algebras from the catalog under random basis changes.
    let mut checked = 0;
    while checked < 100 {
        let id = FamilyId::ALL[checked % 6];
        let av = rat_int(rng.random_range(-2..=2));
        let bv = rat_int(rng.random_range(-2..=2));
        let base = if id == FamilyId::F4 {
            build_family_at(id, rat_int(0), rat_int(0)).unwrap()
        } else {
            build_family_at(id, av, bv).unwrap()
        };
        let m: Vec<Vec<Rat>> = (0..4)
            .map(|_| (0..4).map(|_| rat_int(rng.random_range(-2..=2))).collect())
            .collect();
        if invert_rat(&m).is_none() {
            continue;
        }
        checked += 1;
        let alg = base.change_coframe(&m).unwrap();
        assert!(alg.jacobi_holds());
        let obs = stokes_obstructions(&alg);
        let table = coframe_to_brackets(&alg).unwrap();
        for j in 1..=4usize {
            let tr = table.adjoint_trace(j);
            let expect = if j % 2 == 0 { tr.clone() } else { -&tr };
            assert_eq!(obs.lambdas[j - 1], expect, "lambda_{j} vs (-1)^{j} tr(ad e_{j})");
        }
    }

    // (f) nil-group associativity (integral random triples).
    for _ in 0..100 {
        let rnd = |rng: &mut ChaCha8Rng| {
            NilGroupElement::from_ints(
                rng.random_range(-8..=8),
                rng.random_range(-8..=8),
                rng.random_range(-8..=8),
                rng.random_range(-8..=8),
            )
        };
        let (g, h, k) = (rnd(&mut rng), rnd(&mut rng), rnd(&mut rng));
        assert_eq!(
            nil_group_mul(&nil_group_mul(&g, &h), &k),
            nil_group_mul(&g, &nil_group_mul(&h, &k))
        );
    }

    // (g) bracket/Jacobi equivalence, both directions.
    let mut checked = 0;
    while checked < 100 {
        // Start from a family member; in half the cases corrupt one slot.
        let id = FamilyId::ALL[checked % 6];
        let base = if id == FamilyId::F4 {
            build_family_at(id, rat_int(0), rat_int(0)).unwrap()
        } else {
            build_family_at(
                id,
                rat_int(rng.random_range(-2..=2)),
                rat_int(rng.random_range(-2..=2)),
            )
            .unwrap()
        };
        let corrupt = rng.random_bool(0.5);
        let alg = if corrupt {
            let mut st = base.structure_forms().clone();
            let i = rng.random_range(0..4);
            let j = rng.random_range(1..4usize);
            let k = rng.random_range((j + 1)..=4usize);
            st[i] = st[i].add(&Form::monomial(&[j, k], ParamPoly::constant(rat_int(1))));
            CoframedAlgebra::new(base.params().to_vec(), st).unwrap()
        } else {
            base
        };
        checked += 1;
        let residuals_zero = alg.jacobi_holds();
        // Build the table regardless of the residual check, directly from
        // the structure coefficients, and test the classical identity.
        let mut table = BracketTable::zero();
        for j in 1..=4usize {
            for k in (j + 1)..=4usize {
                let set = IndexSet::from_indices(&[j, k]).unwrap().0;
                let coeffs: [ParamPoly; 4] =
                    std::array::from_fn(|i| -&alg.structure(i + 1).component(set));
                table.set_bracket(j, k, coeffs);
            }
        }
        assert_eq!(
            table.jacobi_holds(),
            residuals_zero,
            "bracket Jacobi must match d^2 = 0"
        );
        // And the checked constructor mirrors the same dichotomy.
        assert_eq!(coframe_to_brackets(&alg).is_ok(), residuals_zero);
    }

    // (h) basis-change functoriality of bracket tables.
    let flat_table =
        coframe_to_brackets(&build_family_at(FamilyId::F1, rat_int(0), rat_int(-1)).unwrap())
            .unwrap();
    let mut checked = 0;
    while checked < 100 {
        let m: Vec<Vec<Rat>> = (0..4)
            .map(|_| (0..4).map(|_| rat_int(rng.random_range(-2..=2))).collect())
            .collect();
        let n: Vec<Vec<Rat>> = (0..4)
            .map(|_| (0..4).map(|_| rat_int(rng.random_range(-2..=2))).collect())
            .collect();
        if invert_rat(&m).is_none() || invert_rat(&n).is_none() {
            continue;
        }
        checked += 1;
        let two = change_of_basis(&change_of_basis(&flat_table, &m).unwrap(), &n).unwrap();
        let one = change_of_basis(&flat_table, &mat_mul_rat(&n, &m)).unwrap();
        assert_eq!(two, one);
    }

    println!("criterion 10: PASS - Leibniz, anticommutativity, chart d^2=0, flag monotonicity, obstruction-trace, nil-group associativity, bracket/Jacobi equivalence (>=100 seeded cases each, zero failures)");
}

// ---------------------------------------------------------------------------
// Witness plumbing used by the criteria above
// ---------------------------------------------------------------------------

#[test]
fn derived_flags_record_witnesses() {
    // Flags carry the witness assignment they were checked at.
    let alg = build_family_symbolic(FamilyId::F1).unwrap();
    let flag = Subsystem::from_basis_indices(&alg, &[1, 2])
        .derived_flag()
        .unwrap();
    assert_eq!(flag.witness, alg.witness());
    assert!(!flag.witness.is_empty());
}
