//! Pfaffian subsystems, derived flags, retracting (Cartan) systems, Engel
//! and Lagrangian verification, and the invariant-based classification of
//! adapted coframings.
//!
//! Symbolic ranks are computed over the fraction field of the coefficient
//! ring, so they are generic ranks; every step also evaluates at a recorded
//! rational witness and flags any disagreement instead of guessing.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::FlagError;
use crate::exterior::{CoframedAlgebra, ExteriorContext, Form, IndexSet, DIM};
use crate::linalg::{kernel_basis, rank, rref, solve_square, Frac};
use crate::scalar::{rat_gcd, rat_string, ParamPoly, Rat, Ring, Symbol};

/// A span of 1-forms inside the coframe bundle.
pub struct Subsystem<'c, C: ExteriorContext> {
    ctx: &'c C,
    generators: Vec<Form<C::S>>,
}

impl<C: ExteriorContext> Clone for Subsystem<'_, C> {
    fn clone(&self) -> Self {
        Subsystem { ctx: self.ctx, generators: self.generators.clone() }
    }
}

impl<C: ExteriorContext> fmt::Debug for Subsystem<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{:?}", self.generators)
    }
}

/// Outcome of one derived-system step.
pub struct DerivedStep<'c, C: ExteriorContext> {
    pub subsystem: Subsystem<'c, C>,
    pub witness: BTreeMap<Symbol, Rat>,
    /// Present when the witness rank disagrees with the symbolic generic rank
    /// (the witness sits on a degenerate parameter locus).
    pub rank_ambiguity: Option<RankAmbiguity>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankAmbiguity {
    pub symbolic_rank: usize,
    pub witness_rank: usize,
}

/// Ranks and bases of the derived flag I = I^(0) ⊇ I^(1) ⊇ ...
pub struct DerivedFlag<'c, C: ExteriorContext> {
    pub ranks: Vec<usize>,
    pub bases: Vec<Subsystem<'c, C>>,
    pub witness: BTreeMap<Symbol, Rat>,
    pub ambiguities: Vec<RankAmbiguity>,
}

impl<'c, C: ExteriorContext> Subsystem<'c, C> {
    /// Generators must be degree-1 and generically independent.
    pub fn new(ctx: &'c C, generators: Vec<Form<C::S>>) -> Result<Self, FlagError> {
        for g in &generators {
            if !g.is_homogeneous_of(1) || g.is_zero() {
                return Err(FlagError::NotAdapted(
                    "subsystem generators must be nonzero 1-forms".into(),
                ));
            }
        }
        let sys = Subsystem { ctx, generators };
        if rank(&sys.coefficient_matrix()) != sys.generators.len() {
            return Err(FlagError::DependentGenerators);
        }
        Ok(sys)
    }

    /// Span of distinct basis coframe 1-forms by index.
    pub fn from_basis_indices(ctx: &'c C, indices: &[usize]) -> Self {
        for (n, i) in indices.iter().enumerate() {
            assert!(
                !indices[..n].contains(i),
                "repeated basis index {i} in subsystem"
            );
        }
        let generators = indices.iter().map(|&i| Form::basis(i)).collect();
        Subsystem { ctx, generators }
    }

    pub fn generators(&self) -> &[Form<C::S>] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn context(&self) -> &'c C {
        self.ctx
    }

    fn coefficient_matrix(&self) -> Vec<Vec<C::S>> {
        self.generators
            .iter()
            .map(|g| (1..=DIM).map(|i| g.component(IndexSet::single(i))).collect())
            .collect()
    }

    /// Pivot columns of the generator matrix; the remaining basis indices
    /// form the fixed complement used for reduction modulo the subsystem.
    fn complement_indices(&self) -> Vec<usize> {
        let mut m: Vec<Vec<Frac<C::S>>> = self
            .coefficient_matrix()
            .into_iter()
            .map(|row| row.into_iter().map(Frac::from_ring).collect())
            .collect();
        let pivots = rref(&mut m);
        (0..DIM).filter(|c| !pivots.contains(c)).map(|c| c + 1).collect()
    }

    /// The adapted coframe (generators first, then the complement basis
    /// 1-forms). Always a coframe when the generators are independent.
    fn adapted_basis(&self) -> Vec<Form<C::S>> {
        let mut basis = self.generators.clone();
        for i in self.complement_indices() {
            basis.push(Form::basis(i));
        }
        basis
    }

    /// Coordinates of a 2-form in the wedge basis of an adapted coframe.
    /// Pair order: (k, l) with k < l over the adapted basis positions.
    fn two_form_in_basis(
        &self,
        alpha: &Form<C::S>,
        basis: &[Form<C::S>],
    ) -> Vec<Frac<C::S>> {
        let pairs: Vec<(usize, usize)> = (0..DIM)
            .flat_map(|k| ((k + 1)..DIM).map(move |l| (k, l)))
            .collect();
        let monos = IndexSet::all_of_degree(2);
        // Column for pair (k,l): coordinates of basis[k] ^ basis[l].
        let mut a: Vec<Vec<C::S>> = vec![vec![C::S::zero(); pairs.len()]; monos.len()];
        for (col, &(k, l)) in pairs.iter().enumerate() {
            let w = basis[k].wedge(&basis[l]);
            for (row, m) in monos.iter().enumerate() {
                a[row][col] = w.component(*m);
            }
        }
        let b: Vec<C::S> = monos.iter().map(|m| alpha.component(*m)).collect();
        solve_square(&a, &b).expect("adapted basis spans")
    }

    /// One derived-system step: the kernel of theta -> d(theta) mod the
    /// algebraic ideal of the subsystem.
    pub fn derived_system(&self) -> Result<DerivedStep<'c, C>, FlagError> {
        let r = self.generators.len();
        let basis = self.adapted_basis();
        let pairs: Vec<(usize, usize)> = (0..DIM)
            .flat_map(|k| ((k + 1)..DIM).map(move |l| (k, l)))
            .collect();
        // Rows of Q: quotient-pair coordinates (both slots outside the span);
        // columns: generators.
        let quotient_rows: Vec<usize> = pairs
            .iter()
            .enumerate()
            .filter(|(_, &(k, l))| k >= r && l >= r)
            .map(|(idx, _)| idx)
            .collect();
        let mut q: Vec<Vec<Frac<C::S>>> =
            vec![vec![Frac::zero(); r]; quotient_rows.len()];
        for (col, theta) in self.generators.iter().enumerate() {
            let coords = self.two_form_in_basis(&self.ctx.d(theta), &basis);
            for (row, &idx) in quotient_rows.iter().enumerate() {
                q[row][col] = coords[idx].clone();
            }
        }

        // Symbolic kernel.
        let mut qq = q.clone();
        let pivots = rref(&mut qq);
        let symbolic_kernel_dim = r - pivots.len();
        let kernel = frac_kernel(&q, r);
        debug_assert_eq!(kernel.len(), symbolic_kernel_dim);

        // Witness check: same kernel dimension at the recorded rational point.
        let witness = self.ctx.witness();
        let rank_ambiguity = match eval_frac_matrix(&q, &witness) {
            Some(num) => {
                let witness_rank = rank(&num);
                let witness_kernel = r - witness_rank;
                (witness_kernel != symbolic_kernel_dim).then(|| RankAmbiguity {
                    symbolic_rank: symbolic_kernel_dim,
                    witness_rank: witness_kernel,
                })
            }
            None => None,
        };

        // Combine generators by each kernel vector, clearing denominators:
        // the coefficient of theta_a becomes num_a * prod_{b != a} den_b.
        let generators = kernel
            .iter()
            .map(|combo| {
                let mut cleared: Form<C::S> = Form::zero();
                for (a, c) in combo.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut factor = c.num.clone();
                    for (b, c2) in combo.iter().enumerate() {
                        if b != a {
                            factor = factor.mul(&c2.den);
                        }
                    }
                    cleared = cleared.add(&self.generators[a].map_scalars(|s| s.mul(&factor)));
                }
                normalize_form(&cleared)
            })
            .collect();

        Ok(DerivedStep {
            subsystem: Subsystem { ctx: self.ctx, generators },
            witness,
            rank_ambiguity,
        })
    }

    /// Iterate derived systems until the rank stabilizes.
    pub fn derived_flag(&self) -> Result<DerivedFlag<'c, C>, FlagError> {
        let mut ranks = vec![self.rank()];
        let mut bases = vec![self.clone()];
        let mut ambiguities = Vec::new();
        let mut witness = self.ctx.witness();
        loop {
            let current = bases.last().unwrap();
            if current.rank() == 0 {
                break;
            }
            let step = current.derived_system()?;
            witness = step.witness.clone();
            if let Some(a) = step.rank_ambiguity {
                ambiguities.push(a);
            }
            if step.subsystem.rank() == current.rank() {
                break; // stabilized
            }
            ranks.push(step.subsystem.rank());
            bases.push(step.subsystem);
        }
        Ok(DerivedFlag { ranks, bases, witness, ambiguities })
    }

    /// Engel: derived flag ranks exactly [2, 1, 0].
    pub fn is_engel(&self) -> Result<bool, FlagError> {
        Ok(self.derived_flag()?.ranks == vec![2, 1, 0])
    }

    /// Retracting space (Cartan system) of a rank-1 system <theta>:
    /// theta together with all contractions of d(theta) reduced mod theta.
    pub fn cartan_system(&self) -> Result<Subsystem<'c, C>, FlagError> {
        if self.rank() != 1 {
            return Err(FlagError::NotAdapted(
                "cartan_system expects a rank-1 system".into(),
            ));
        }
        let theta = &self.generators[0];
        let basis = self.adapted_basis();
        let coords = self.two_form_in_basis(&self.ctx.d(theta), &basis);
        // Rebuild d(theta) without the terms containing theta (pairs with k = 0);
        // what is left lives in the complement, i.e. in original basis forms.
        // Coefficients are fractions, so accumulate over a running common
        // denominator; the overall nonzero scale does not change the span.
        let pairs: Vec<(usize, usize)> = (0..DIM)
            .flat_map(|k| ((k + 1)..DIM).map(move |l| (k, l)))
            .collect();
        let mut reduced: Form<C::S> = Form::zero();
        let mut common_den = C::S::one();
        for (idx, &(k, l)) in pairs.iter().enumerate() {
            if k == 0 || coords[idx].is_zero() {
                continue;
            }
            let c = &coords[idx];
            let term = basis[k]
                .wedge(&basis[l])
                .map_scalars(|s| s.mul(&c.num).mul(&common_den));
            reduced = reduced.map_scalars(|s| s.mul(&c.den)).add(&term);
            common_den = common_den.mul(&c.den);
        }
        let mut gens = vec![theta.clone()];
        for j in 1..=DIM {
            let contraction = reduced.contract(j).expect("degree >= 1");
            if !contraction.is_zero() {
                gens.push(contraction);
            }
        }
        // Reduce to an independent canonical basis.
        let gens = span_basis(self.ctx, &gens);
        Ok(Subsystem { ctx: self.ctx, generators: gens })
    }

    /// Span equality (as subsheaves at generic parameters).
    pub fn same_span(&self, other: &Subsystem<'_, C>) -> bool {
        let mut all = self.coefficient_matrix();
        all.extend(other.coefficient_matrix());
        let ra = rank(&self.coefficient_matrix());
        let rb = rank(&other.coefficient_matrix());
        ra == rb && rank(&all) == ra
    }
}

fn frac_kernel<S: Ring>(m: &[Vec<Frac<S>>], cols: usize) -> Vec<Vec<Frac<S>>> {
    // Clear each row to a common denominator; row scaling leaves the kernel
    // unchanged, so the ring-level kernel_basis applies.
    let ring_rows: Vec<Vec<S>> = m
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, f)| {
                    let mut v = f.num.clone();
                    for (k, g) in row.iter().enumerate() {
                        if k != j {
                            v = v.mul(&g.den);
                        }
                    }
                    v
                })
                .collect()
        })
        .collect();
    kernel_basis(&ring_rows, cols)
}

fn eval_frac_matrix<S: Ring>(
    m: &[Vec<Frac<S>>],
    witness: &BTreeMap<Symbol, Rat>,
) -> Option<Vec<Vec<Rat>>> {
    let mut out = Vec::new();
    for row in m {
        let mut r = Vec::new();
        for f in row {
            let num = f.num.eval_at(witness).ok()?;
            let den = f.den.eval_at(witness).ok()?;
            if den == <Rat as Ring>::zero() {
                return None; // witness degenerates a denominator; skip check
            }
            r.push(num / den);
        }
        out.push(r);
    }
    Some(out)
}

/// Divide out the rational content and fix the leading sign.
pub(crate) fn normalize_form<S: Ring>(f: &Form<S>) -> Form<S> {
    if f.is_zero() {
        return f.clone();
    }
    let mut content: Rat = Ring::zero();
    for (_, s) in f.components() {
        content = rat_gcd(&content, &s.rat_content());
    }
    let mut out = f.clone();
    if !Ring::is_zero(&content) && content != Ring::one() {
        let inv = <Rat as Ring>::one() / content;
        out = out.scale_rat(&inv);
    }
    let lead_sign = out
        .components()
        .next()
        .map(|(_, s)| s.leading_sign())
        .unwrap_or(1);
    if lead_sign < 0 {
        out = out.neg();
    }
    out
}

/// Canonical independent basis of the span of the given 1-forms.
fn span_basis<'c, C: ExteriorContext>(
    _ctx: &'c C,
    gens: &[Form<C::S>],
) -> Vec<Form<C::S>> {
    let mut m: Vec<Vec<Frac<C::S>>> = gens
        .iter()
        .map(|g| {
            (1..=DIM)
                .map(|i| Frac::from_ring(g.component(IndexSet::single(i))))
                .collect()
        })
        .collect();
    let pivots = rref(&mut m);
    let mut out = Vec::new();
    for (r, _) in pivots.iter().enumerate() {
        let mut g: Form<C::S> = Form::zero();
        for (c, f) in m[r].iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let mut v = f.num.clone();
            for (c2, f2) in m[r].iter().enumerate() {
                if c2 != c && !f2.is_zero() {
                    v = v.mul(&f2.den);
                }
            }
            g.insert(IndexSet::single(c + 1), v);
        }
        out.push(normalize_form(&g));
    }
    out
}

// ---------------------------------------------------------------------------
// Symplectic / classification layer (coframe context only)
// ---------------------------------------------------------------------------

/// The canonical symplectic candidate Omega = w1^w3 + w2^w4.
pub fn canonical_symplectic() -> Form<ParamPoly> {
    Form::basis(1)
        .wedge(&Form::basis(3))
        .add(&Form::basis(2).wedge(&Form::basis(4)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymplecticReport {
    pub closed: bool,
    pub nondegenerate: bool,
    pub lagrangian: bool,
}

impl SymplecticReport {
    pub fn all_ok(&self) -> bool {
        self.closed && self.nondegenerate && self.lagrangian
    }
}

/// Check Omega = w1^w3 + w2^w4 against the structure equations: closedness,
/// nondegeneracy, and membership in the ideal of <w1, w2>.
pub fn check_symplectic(alg: &CoframedAlgebra) -> SymplecticReport {
    let omega = canonical_symplectic();
    let closed = alg.d(&omega).is_zero();
    let nondegenerate = !omega
        .wedge(&omega)
        .top_coefficient()
        .expect("degree 4")
        .is_zero();
    // Omega mod the ideal of (w1, w2): drop monomials containing 1 or 2.
    let lagrangian = omega.reduce_mod_indices(&[1, 2]).is_zero();
    SymplecticReport { closed, nondegenerate, lagrangian }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassificationKind {
    Generic,
    NonGeneric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NonGenericSubcase {
    /// A3 = 0
    A3Zero,
    /// A3 = +-1 and A4 = 0
    A3UnitA4Zero,
    /// A3 = +-1 and A4 != 0
    A3UnitA4Nonzero,
    /// A3 outside {0, +-1}
    A3Other,
}

/// First-order invariants of a 1-adapted coframing and the resulting branch
/// of the classification. Fields a branch does not define stay absent.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationVerdict {
    pub kind: ClassificationKind,
    pub p3: ParamPoly,
    pub p4: ParamPoly,
    /// Sign of the leading w4^w2 term in the non-generic normal form (+-1).
    pub sign: Option<i32>,
    pub a2: Option<ParamPoly>,
    pub a3: Option<ParamPoly>,
    pub a4: Option<ParamPoly>,
    pub q3: Option<ParamPoly>,
    pub subcase: Option<NonGenericSubcase>,
}

fn constant_of(p: &ParamPoly, name: &str) -> Result<Rat, FlagError> {
    p.as_constant().ok_or_else(|| FlagError::AmbiguousParameter {
        invariant: name.to_string(),
        value: p.to_string(),
    })
}

/// Extract the classification invariants of a 1-adapted coframing:
/// I = <w1, w2> with derived flag [2,1,0], I^(1) = <w1>, and
/// d(w2) = w3^w4 modulo the ideal of (w1, w2).
pub fn adapted_invariants(alg: &CoframedAlgebra) -> Result<ClassificationVerdict, FlagError> {
    // Precondition: 1-adapted.
    let i12 = Subsystem::from_basis_indices(alg, &[1, 2]);
    let flag = i12.derived_flag()?;
    if flag.ranks != vec![2, 1, 0] {
        return Err(FlagError::NotAdapted(format!(
            "<w1, w2> has derived flag {:?}, expected [2, 1, 0]",
            flag.ranks
        )));
    }
    let first = &flag.bases[1];
    let w1_span = Subsystem::from_basis_indices(alg, &[1]);
    if !first.same_span(&w1_span) {
        return Err(FlagError::NotAdapted(format!(
            "first derived system is {:?}, expected <w1>",
            first.generators()
        )));
    }
    let dw2_mod = alg.structure(2).reduce_mod_indices(&[1, 2]);
    if dw2_mod != Form::monomial(&[3, 4], ParamPoly::one()) {
        return Err(FlagError::NotAdapted(format!(
            "d(w2) = {} mod (w1, w2), expected w3^w4",
            dw2_mod
        )));
    }

    // d(w1) mod w1 = -p3 w2^w3 - p4 w2^w4 (and no w3^w4 term for Engel systems).
    let dw1_mod = alg.structure(1).reduce_mod_indices(&[1]);
    let p3 = dw1_mod
        .component(IndexSet::from_indices(&[2, 3]).unwrap().0)
        .neg();
    let p4 = dw1_mod
        .component(IndexSet::from_indices(&[2, 4]).unwrap().0)
        .neg();

    // Cross-check p3 on the volume route:
    // w1 ^ d(w1) ^ w4 = (p3/2) Omega^Omega and Omega^Omega = -2 vol.
    let omega = canonical_symplectic();
    let vol_coeff = omega
        .wedge(&omega)
        .top_coefficient()
        .expect("degree 4")
        .as_constant()
        .expect("constant");
    let lhs = Form::basis(1)
        .wedge(alg.structure(1))
        .wedge(&Form::basis(4))
        .top_coefficient()
        .expect("degree 4");
    let p3_volume = lhs.scale(&(Rat::from_integer(2.into()) / &vol_coeff));
    debug_assert_eq!(p3, p3_volume, "two routes to p3 must agree");

    let p3_const = constant_of(&p3, "p3")?;
    if !Ring::is_zero(&p3_const) {
        return Ok(ClassificationVerdict {
            kind: ClassificationKind::Generic,
            p3,
            p4,
            sign: None,
            a2: None,
            a3: None,
            a4: None,
            q3: None,
            subcase: None,
        });
    }

    // Non-generic branch: p3 = 0 identically, so p4 never vanishes; the
    // adapted normal form has p4 scaled to +-1.
    let p4_const = constant_of(&p4, "p4")?;
    let sign = if p4_const == Ring::one() {
        1
    } else if -&p4_const == Ring::one() {
        -1
    } else {
        return Err(FlagError::NotAdapted(format!(
            "non-generic normal form needs p4 = +-1, found p4 = {}",
            rat_string(&p4_const)
        )));
    };

    // d(w1) = sign * w4^w2 + (A2 w2 + A3 w3 + A4 w4) ^ w1.
    // sign * w4^w2 = -sign * w2^w4; remove it and read the rest off w1-terms.
    let mut rest = alg.structure(1).clone();
    rest = rest.add(&Form::monomial(&[2, 4], ParamPoly::constant(Rat::from_integer(sign.into()))));
    for (set, _) in rest.components() {
        if !set.contains(1) {
            return Err(FlagError::NotAdapted(format!(
                "d(w1) has residual term outside the adapted pattern: {}",
                rest
            )));
        }
    }
    let a2 = rest
        .component(IndexSet::from_indices(&[1, 2]).unwrap().0)
        .neg();
    let a3 = rest
        .component(IndexSet::from_indices(&[1, 3]).unwrap().0)
        .neg();
    let a4 = rest
        .component(IndexSet::from_indices(&[1, 4]).unwrap().0)
        .neg();

    // Cross-check A3 on the volume route:
    // d(w1) ^ w2 ^ w4 = -(A3/2) Omega^Omega = A3 vol.
    let a3_volume = alg
        .structure(1)
        .wedge(&Form::basis(2))
        .wedge(&Form::basis(4))
        .top_coefficient()
        .expect("degree 4")
        .scale(&(Rat::from_integer((-2).into()) / vol_coeff));
    debug_assert_eq!(a3, a3_volume, "two routes to A3 must agree");

    let a3_const = constant_of(&a3, "A3")?;
    let one: Rat = Ring::one();
    let subcase = if Ring::is_zero(&a3_const) {
        NonGenericSubcase::A3Zero
    } else if a3_const == one || a3_const == -&one {
        let a4_const = constant_of(&a4, "A4")?;
        if Ring::is_zero(&a4_const) {
            NonGenericSubcase::A3UnitA4Zero
        } else {
            NonGenericSubcase::A3UnitA4Nonzero
        }
    } else {
        NonGenericSubcase::A3Other
    };

    // q3 exists only in the A3 = +-1, A4 != 0 branch:
    // d(w2) = q3 w3^w2 + w3^w4 mod w1.
    let q3 = if subcase == NonGenericSubcase::A3UnitA4Nonzero {
        let dw2_mod1 = alg.structure(2).reduce_mod_indices(&[1]);
        for (set, _) in dw2_mod1.components() {
            let idx = set.indices();
            if idx != vec![2, 3] && idx != vec![3, 4] {
                return Err(FlagError::NotAdapted(format!(
                    "d(w2) mod w1 = {} is outside the q3 normal form",
                    dw2_mod1
                )));
            }
        }
        Some(
            dw2_mod1
                .component(IndexSet::from_indices(&[2, 3]).unwrap().0)
                .neg(),
        )
    } else {
        None
    };

    Ok(ClassificationVerdict {
        kind: ClassificationKind::NonGeneric,
        p3,
        p4,
        sign: Some(sign),
        a2: Some(a2),
        a3: Some(a3),
        a4: Some(a4),
        q3,
        subcase: Some(subcase),
    })
}

/// Membership in the symplectic-and-flag-preserving structure group, and in
/// its 1-adapted reduction (b11 * b22^2 = 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroupMembership {
    pub in_g: bool,
    pub in_g1: bool,
}

pub fn structure_group_member(b: &[Vec<Rat>]) -> GroupMembership {
    assert_eq!(b.len(), 4);
    assert!(b.iter().all(|r| r.len() == 4));
    let zero: Rat = Ring::zero();
    let one: Rat = Ring::one();
    // Upper-right 2x2 block must vanish.
    let b12_zero = b[0][2] == zero && b[0][3] == zero && b[1][2] == zero && b[1][3] == zero;
    // B11 lower-triangular and invertible.
    let b11_lower = b[0][1] == zero;
    let b11_invertible = !b[0][0].is_zero() && !b[1][1].is_zero();
    if !(b12_zero && b11_lower && b11_invertible) {
        return GroupMembership { in_g: false, in_g1: false };
    }
    // B11^T B22 = I.
    let b11 = [[b[0][0].clone(), b[0][1].clone()], [b[1][0].clone(), b[1][1].clone()]];
    let b21 = [[b[2][0].clone(), b[2][1].clone()], [b[3][0].clone(), b[3][1].clone()]];
    let b22 = [[b[2][2].clone(), b[2][3].clone()], [b[3][2].clone(), b[3][3].clone()]];
    let mut bt_b22 = [[zero.clone(), zero.clone()], [zero.clone(), zero.clone()]];
    let mut s = [[zero.clone(), zero.clone()], [zero.clone(), zero.clone()]];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                bt_b22[i][j] += &b11[k][i] * &b22[k][j];
                s[i][j] += &b11[k][i] * &b21[k][j];
            }
        }
    }
    let symplectic = bt_b22[0][0] == one
        && bt_b22[1][1] == one
        && bt_b22[0][1] == zero
        && bt_b22[1][0] == zero
        && s[0][1] == s[1][0];
    let in_g = symplectic;
    let in_g1 = in_g && &b[0][0] * &b[1][1] * &b[1][1] == one;
    GroupMembership { in_g, in_g1 }
}
