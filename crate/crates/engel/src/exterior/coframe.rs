//! Left-invariant context: a coframe with prescribed structure 2-forms
//! d(w_i), inducing the exterior derivative on everything else by the
//! graded Leibniz rule (scalars are constants here, so df = 0).

use std::collections::BTreeMap;
use std::fmt;

use super::form::{Form, IndexSet, DIM};
use crate::error::FormError;
use crate::linalg::invert_rat;
use crate::scalar::{rat_int, ParamPoly, Rat, Ring, Symbol};

#[derive(Clone, PartialEq)]
pub struct CoframedAlgebra {
    params: Vec<Symbol>,
    structure: [Form<ParamPoly>; DIM],
}

impl CoframedAlgebra {
    /// Build from the four structure 2-forms. Each must be homogeneous of
    /// degree 2 with coefficients over the declared parameters.
    pub fn new(
        params: Vec<Symbol>,
        structure: [Form<ParamPoly>; DIM],
    ) -> Result<Self, FormError> {
        for (i, d) in structure.iter().enumerate() {
            if !d.is_homogeneous_of(2) {
                return Err(FormError::Inhomogeneous {
                    expected: 2,
                    found: d.homogeneous_degree().unwrap_or(0),
                });
            }
            for (_, c) in d.components() {
                for v in c.vars() {
                    assert!(
                        params.contains(v),
                        "structure form d(w{}) uses undeclared parameter {v}",
                        i + 1
                    );
                }
            }
        }
        Ok(CoframedAlgebra { params, structure })
    }

    pub fn abelian() -> Self {
        CoframedAlgebra {
            params: Vec::new(),
            structure: [Form::zero(), Form::zero(), Form::zero(), Form::zero()],
        }
    }

    pub fn params(&self) -> &[Symbol] {
        &self.params
    }

    pub fn structure(&self, i: usize) -> &Form<ParamPoly> {
        &self.structure[i - 1]
    }

    pub fn structure_forms(&self) -> &[Form<ParamPoly>; DIM] {
        &self.structure
    }

    /// Structure constant: coefficient of w_j^w_k (j < k) in d(w_i).
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> ParamPoly {
        assert!(j < k);
        self.structure[i - 1].component(IndexSet::from_indices(&[j, k]).unwrap().0)
    }

    /// Exterior derivative induced by the structure equations.
    pub fn d(&self, alpha: &Form<ParamPoly>) -> Form<ParamPoly> {
        let mut out = Form::zero();
        for (set, f) in alpha.components() {
            // d(f * w_T) = f * sum_k (-1)^(k-1) w_{t1}^..^d(w_tk)^..^w_tp
            let idx = set.indices();
            for k in 0..idx.len() {
                let mut term = Form::scalar(f.clone());
                for (pos, &j) in idx.iter().enumerate() {
                    if pos == k {
                        term = term.wedge(&self.structure[j - 1]);
                    } else {
                        term = term.wedge(&Form::basis(j));
                    }
                }
                if k % 2 == 1 {
                    term = term.neg();
                }
                out = out.add(&term);
            }
        }
        out
    }

    /// d(d(w_i)) for i = 1..4; identically zero exactly when the dual
    /// bracket satisfies the Jacobi identity.
    pub fn jacobi_residuals(&self) -> [Form<ParamPoly>; DIM] {
        [
            self.d(&self.structure[0]),
            self.d(&self.structure[1]),
            self.d(&self.structure[2]),
            self.d(&self.structure[3]),
        ]
    }

    pub fn jacobi_holds(&self) -> bool {
        self.jacobi_residuals().iter().all(Form::is_zero)
    }

    /// Substitute rational values for a subset of the parameters.
    pub fn specialize(&self, assignment: &BTreeMap<Symbol, Rat>) -> CoframedAlgebra {
        let params: Vec<Symbol> = self
            .params
            .iter()
            .filter(|p| !assignment.contains_key(p))
            .cloned()
            .collect();
        let structure = self
            .structure
            .clone()
            .map(|f| f.map_scalars(|c| c.specialize(assignment)));
        CoframedAlgebra { params, structure }
    }

    /// Change of coframe w'_i = sum_j M[i][j] w_j for invertible rational M.
    /// Returns the same geometry expressed in the new coframe.
    pub fn change_coframe(&self, m: &[Vec<Rat>]) -> Option<CoframedAlgebra> {
        let minv = invert_rat(m)?;
        // Old basis forms in terms of the new ones: w_j = sum_k Minv[j][k] w'_k.
        let old_in_new: [Form<ParamPoly>; DIM] = std::array::from_fn(|j| {
            let mut f = Form::zero();
            for k in 0..DIM {
                f.insert(
                    IndexSet::single(k + 1),
                    ParamPoly::constant(minv[j][k].clone()),
                );
            }
            f
        });
        let structure = std::array::from_fn(|i| {
            // d(w'_i) = sum_j M[i][j] d(w_j), rewritten in the new coframe.
            let mut acc = Form::zero();
            for j in 0..DIM {
                if m[i][j].is_zero() {
                    continue;
                }
                acc = acc.add(
                    &self.structure[j]
                        .substitute_basis(&old_in_new)
                        .scale_rat(&m[i][j]),
                );
            }
            acc
        });
        Some(CoframedAlgebra { params: self.params.clone(), structure })
    }

    /// Deterministic rational witness for the parameters (distinct primes).
    pub fn witness(&self) -> BTreeMap<Symbol, Rat> {
        const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        self.params
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), rat_int(PRIMES[i % PRIMES.len()])))
            .collect()
    }

    /// Alternate witness used to cross-check rank computations.
    pub fn witness_alt(&self) -> BTreeMap<Symbol, Rat> {
        const PRIMES: [i64; 12] = [41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89];
        self.params
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), rat_int(PRIMES[i % PRIMES.len()])))
            .collect()
    }
}

impl fmt::Debug for CoframedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CoframedAlgebra over {:?}", self.params)?;
        for i in 1..=DIM {
            writeln!(f, "  d(w{i}) = {}", self.structure[i - 1])?;
        }
        Ok(())
    }
}
