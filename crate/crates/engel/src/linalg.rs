//! Exact linear algebra over the fraction field of a scalar ring.
//!
//! Every coefficient ring in this crate is an integral domain with a
//! decidable zero test, so classical Gaussian elimination over unreduced
//! fractions is exact. Pivots are generically-nonzero ring elements; the
//! flag machinery separately evaluates at a rational witness to surface
//! degenerate parameter loci.

use crate::scalar::{Rat, Ring};

/// An unreduced fraction num/den over a ring. `den` is never zero; a zero
/// numerator normalizes the denominator to one.
#[derive(Clone, PartialEq, Debug)]
pub struct Frac<S: Ring> {
    pub num: S,
    pub den: S,
}

impl<S: Ring> Frac<S> {
    pub fn from_ring(v: S) -> Self {
        Frac { num: v, den: S::one() }
    }

    pub fn zero() -> Self {
        Frac { num: S::zero(), den: S::one() }
    }

    pub fn one() -> Self {
        Frac { num: S::one(), den: S::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(mut self) -> Self {
        if self.num.is_zero() {
            self.den = S::one();
        }
        self
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Frac {
            num: self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            den: self.den.mul(&rhs.den),
        }
        .normalize()
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Frac { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Frac { num: self.num.mul(&rhs.num), den: self.den.mul(&rhs.den) }.normalize()
    }

    /// Reciprocal; panics on zero (callers pivot on nonzero entries only).
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverting zero fraction");
        Frac { num: self.den.clone(), den: self.num.clone() }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    pub fn eq_frac(&self, rhs: &Self) -> bool {
        self.num.mul(&rhs.den) == rhs.num.mul(&self.den)
    }
}

/// Row-reduce in place over the fraction field. Returns the pivot columns.
/// Pivoting takes the first symbolically-nonzero entry in each column, so
/// the result is deterministic.
pub fn rref<S: Ring>(m: &mut Vec<Vec<Frac<S>>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv();
        for j in c..cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = m[r][j].mul(&f);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank<S: Ring>(m: &[Vec<S>]) -> usize {
    let mut f: Vec<Vec<Frac<S>>> = m
        .iter()
        .map(|row| row.iter().map(|v| Frac::from_ring(v.clone())).collect())
        .collect();
    rref(&mut f).len()
}

/// Basis of the right kernel {x : M x = 0}, one vector per free column,
/// in fraction form.
pub fn kernel_basis<S: Ring>(m: &[Vec<S>], cols: usize) -> Vec<Vec<Frac<S>>> {
    let mut f: Vec<Vec<Frac<S>>> = m
        .iter()
        .map(|row| row.iter().map(|v| Frac::from_ring(v.clone())).collect())
        .collect();
    let pivots = rref(&mut f);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![Frac::zero(); cols];
        v[fc] = Frac::one();
        for (pi, &pc) in pivots.iter().enumerate() {
            v[pc] = f[pi][fc].neg();
        }
        basis.push(v);
    }
    basis
}

/// Solve the square system A x = b. Returns None when A is singular.
pub fn solve_square<S: Ring>(a: &[Vec<S>], b: &[S]) -> Option<Vec<Frac<S>>> {
    let n = a.len();
    let mut m: Vec<Vec<Frac<S>>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r: Vec<Frac<S>> = row.iter().map(|v| Frac::from_ring(v.clone())).collect();
            r.push(Frac::from_ring(rhs.clone()));
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    let mut x = vec![Frac::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][n].clone();
    }
    Some(x)
}

/// Exact inverse of a square rational matrix.
pub fn invert_rat(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut m: Vec<Vec<Frac<Rat>>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Frac<Rat>> = row.iter().map(|v| Frac::from_ring(v.clone())).collect();
            for j in 0..n {
                r.push(Frac::from_ring(if i == j { Ring::one() } else { Ring::zero() }));
            }
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| frac_to_rat(&m[i][n + j])).collect())
            .collect(),
    )
}

fn frac_to_rat(f: &Frac<Rat>) -> Rat {
    &f.num / &f.den
}

/// Rational matrix product.
pub fn mat_mul_rat(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc: Rat = Ring::zero();
                    for t in 0..k {
                        acc += &a[i][t] * &b[t][j];
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_int, sym, ParamPoly};

    #[test]
    fn rank_of_rational_matrix() {
        let m = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
            vec![rat_int(0), rat_int(1)],
        ];
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn kernel_of_symbolic_matrix() {
        // [y, 1] has kernel spanned by (-1/y, 1) over the fraction field.
        let y = ParamPoly::var(sym("y"));
        let m = vec![vec![y.clone(), ParamPoly::one()]];
        let basis = kernel_basis(&m, 2);
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        // y * v0 + v1 = 0
        let lhs = Frac::from_ring(y).mul(&v[0]).add(&v[1]);
        assert!(lhs.is_zero());
    }

    #[test]
    fn invert_and_multiply() {
        let a = vec![
            vec![rat_int(2), rat_int(1)],
            vec![rat_int(1), rat_int(1)],
        ];
        let inv = invert_rat(&a).unwrap();
        let prod = mat_mul_rat(&a, &inv);
        assert_eq!(prod[0][0], rat_int(1));
        assert_eq!(prod[0][1], rat_int(0));
        assert_eq!(prod[1][0], rat_int(0));
        assert_eq!(prod[1][1], rat_int(1));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let a = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ];
        assert!(invert_rat(&a).is_none());
    }
}
