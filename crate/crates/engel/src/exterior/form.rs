//! Graded exterior forms on a fixed 4-dimensional coframe.
//!
//! A wedge monomial is keyed by the strictly increasing set of basis indices
//! it uses, stored as a 4-bit mask; signs from reordering are absorbed into
//! the coefficient at construction, so equal forms compare equal.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::FormError;
use crate::scalar::{Rat, Ring};

/// A strictly increasing tuple of basis indices out of {1,2,3,4},
/// packed as a bitmask (bit i-1 set iff index i occurs).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct IndexSet(u8);

pub const DIM: usize = 4;

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);
    pub const FULL: IndexSet = IndexSet(0b1111);

    pub fn single(i: usize) -> Self {
        assert!((1..=DIM).contains(&i), "basis index out of range");
        IndexSet(1 << (i - 1))
    }

    /// Build from an arbitrary index list; returns the sorted set and the
    /// permutation sign, or None when an index repeats.
    pub fn from_indices(indices: &[usize]) -> Option<(Self, i8)> {
        let mut mask = 0u8;
        let mut sign = 1i8;
        for &i in indices {
            assert!((1..=DIM).contains(&i), "basis index out of range");
            let bit = 1u8 << (i - 1);
            if mask & bit != 0 {
                return None;
            }
            // Count already-placed indices greater than i: each is an inversion.
            let greater = (mask >> (i - 1)).count_ones();
            if greater % 2 != 0 {
                sign = -sign;
            }
            mask |= bit;
        }
        Some((IndexSet(mask), sign))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        (1..=DIM).filter(|&i| self.contains(i)).collect()
    }

    pub fn complement(self) -> Self {
        IndexSet(!self.0 & 0b1111)
    }

    /// Wedge of two disjoint sets with the shuffle sign; None if they meet.
    pub fn wedge(self, other: Self) -> Option<(Self, i8)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut sign = 1i8;
        for i in 1..=DIM {
            if other.contains(i) {
                // indices of self greater than i must move past i
                let greater = (self.0 >> i).count_ones();
                if greater % 2 == 1 {
                    sign = -sign;
                }
            }
        }
        Some((IndexSet(self.0 | other.0), sign))
    }

    /// Remove index i (which must be at 1-based position k within the tuple);
    /// returns the reduced set and the interior-product sign (-1)^(k-1).
    pub fn remove(self, i: usize) -> Option<(Self, i8)> {
        if !self.contains(i) {
            return None;
        }
        let below = (self.0 & ((1 << (i - 1)) - 1)).count_ones();
        let sign = if below % 2 == 0 { 1 } else { -1 };
        Some((IndexSet(self.0 & !(1 << (i - 1))), sign))
    }

    /// All strictly increasing tuples of the given degree.
    pub fn all_of_degree(p: usize) -> Vec<IndexSet> {
        (0u8..16)
            .map(IndexSet)
            .filter(|s| s.degree() == p)
            .collect()
    }

    pub fn label(self, basis: &[String; DIM]) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        self.indices()
            .iter()
            .map(|&i| basis[i - 1].clone())
            .collect::<Vec<_>>()
            .join("^")
    }
}

/// A (possibly inhomogeneous) exterior form with coefficients in `S`.
#[derive(Clone, PartialEq)]
pub struct Form<S: Ring> {
    components: BTreeMap<IndexSet, S>,
}

impl<S: Ring> Form<S> {
    pub fn zero() -> Self {
        Form { components: BTreeMap::new() }
    }

    pub fn scalar(s: S) -> Self {
        let mut f = Form::zero();
        f.insert(IndexSet::EMPTY, s);
        f
    }

    /// The basis 1-form with the given index.
    pub fn basis(i: usize) -> Self {
        let mut f = Form::zero();
        f.insert(IndexSet::single(i), S::one());
        f
    }

    /// s * w_{i1} ^ ... ^ w_{ip} for arbitrary index order (sign absorbed);
    /// a repeated index yields the zero form.
    pub fn monomial(indices: &[usize], s: S) -> Self {
        match IndexSet::from_indices(indices) {
            None => Form::zero(),
            Some((set, sign)) => {
                let coeff = if sign < 0 { s.neg() } else { s };
                let mut f = Form::zero();
                f.insert(set, coeff);
                f
            }
        }
    }

    pub fn insert(&mut self, set: IndexSet, s: S) {
        if s.is_zero() {
            return;
        }
        match self.components.get_mut(&set) {
            Some(existing) => {
                let sum = existing.add(&s);
                if sum.is_zero() {
                    self.components.remove(&set);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.components.insert(set, s);
            }
        }
    }

    pub fn component(&self, set: IndexSet) -> S {
        self.components.get(&set).cloned().unwrap_or_else(S::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (&IndexSet, &S)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Some(p) when every stored monomial has degree p (the zero form
    /// is homogeneous of every degree and reports None).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.components.keys();
        let first = it.next()?.degree();
        it.all(|k| k.degree() == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, p: usize) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(p)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (set, s) in &rhs.components {
            out.insert(*set, s.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Form {
            components: self
                .components
                .iter()
                .map(|(k, v)| (*k, v.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Form::zero();
        }
        let mut out = Form::zero();
        for (set, v) in &self.components {
            out.insert(*set, v.mul(s));
        }
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(&S::from_rat(r))
    }

    /// Graded exterior product. Products of degree > 4 vanish identically
    /// (a repeated basis index always occurs), so no truncation is needed.
    pub fn wedge(&self, rhs: &Self) -> Self {
        let mut out = Form::zero();
        for (a, sa) in &self.components {
            for (b, sb) in &rhs.components {
                if let Some((set, sign)) = a.wedge(*b) {
                    let coeff = sa.mul(sb);
                    out.insert(set, if sign < 0 { coeff.neg() } else { coeff });
                }
            }
        }
        out
    }

    /// Interior product with the dual frame vector e_j.
    pub fn contract(&self, j: usize) -> Result<Self, FormError> {
        if !(1..=DIM).contains(&j) {
            return Err(FormError::BadIndex(j));
        }
        if self.components.keys().any(|k| k.degree() == 0) {
            return Err(FormError::ContractDegreeZero);
        }
        let mut out = Form::zero();
        for (set, s) in &self.components {
            if let Some((reduced, sign)) = set.remove(j) {
                out.insert(reduced, if sign < 0 { s.neg() } else { s.clone() });
            }
        }
        Ok(out)
    }

    /// The scalar lambda with self = lambda * w1^w2^w3^w4.
    pub fn top_coefficient(&self) -> Result<S, FormError> {
        if !self.is_homogeneous_of(DIM) {
            return Err(FormError::Inhomogeneous {
                expected: DIM,
                found: self.homogeneous_degree().unwrap_or(0),
            });
        }
        Ok(self.component(IndexSet::FULL))
    }

    /// Drop every monomial containing any of the given basis indices
    /// (reduction modulo the algebraic ideal of those basis 1-forms).
    pub fn reduce_mod_indices(&self, killed: &[usize]) -> Self {
        let mut out = Form::zero();
        'outer: for (set, s) in &self.components {
            for &i in killed {
                if set.contains(i) {
                    continue 'outer;
                }
            }
            out.insert(*set, s.clone());
        }
        out
    }

    /// Replace each basis 1-form w_i by `images[i-1]` (extended as an algebra
    /// map on wedge monomials; scalars pass through unchanged).
    pub fn substitute_basis(&self, images: &[Form<S>; DIM]) -> Self {
        let mut out = Form::zero();
        for (set, s) in &self.components {
            let mut term = Form::scalar(s.clone());
            for i in set.indices() {
                term = term.wedge(&images[i - 1]);
            }
            out = out.add(&term);
        }
        out
    }

    pub fn map_scalars<T: Ring>(&self, f: impl Fn(&S) -> T) -> Form<T> {
        let mut out = Form::zero();
        for (set, s) in &self.components {
            out.insert(*set, f(s));
        }
        out
    }

    pub fn display_with(&self, basis: &[String; DIM]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&IndexSet> = self.components.keys().collect();
        keys.sort_by_key(|k| (k.degree(), k.indices()));
        let mut out = String::new();
        for (n, set) in keys.iter().enumerate() {
            let s = &self.components[set];
            let st = s.to_string();
            let (sign, body) = match st.strip_prefix('-') {
                Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => {
                    ("-", rest.to_string())
                }
                _ => ("", st),
            };
            if n == 0 {
                out.push_str(sign);
            } else if sign == "-" {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let needs_parens = body.contains(" + ") || body.contains(" - ");
            let mono = set.label(basis);
            if set.degree() == 0 {
                out.push_str(&body);
            } else if body == "1" {
                out.push_str(&mono);
            } else if needs_parens {
                out.push_str(&format!("({body})*{mono}"));
            } else {
                out.push_str(&format!("{body}*{mono}"));
            }
        }
        out
    }
}

pub fn omega_basis() -> [String; DIM] {
    ["w1".into(), "w2".into(), "w3".into(), "w4".into()]
}

impl<S: Ring> fmt::Display for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&omega_basis()))
    }
}

impl<S: Ring> fmt::Debug for Form<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_int, sym, ParamPoly};

    type PForm = Form<ParamPoly>;

    fn w(i: usize) -> PForm {
        Form::basis(i)
    }

    #[test]
    fn wedge_is_bilinear() {
        let lhs = w(1).add(&w(2)).wedge(&w(3));
        let rhs = w(1).wedge(&w(3)).add(&w(2).wedge(&w(3)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_alternates() {
        assert!(w(1).wedge(&w(1)).is_zero());
    }

    #[test]
    fn wedge_transposition_sign() {
        // (w1^w3)^(w2^w4) = -w1^w2^w3^w4
        let lhs = w(1).wedge(&w(3)).wedge(&w(2).wedge(&w(4)));
        let rhs = Form::monomial(&[1, 2, 3, 4], ParamPoly::one()).neg();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn monomial_sign_normalization() {
        // w3^w2 = -w2^w3
        let m = PForm::monomial(&[3, 2], ParamPoly::one());
        assert_eq!(m, PForm::monomial(&[2, 3], ParamPoly::one()).neg());
        // repeated index vanishes
        assert!(PForm::monomial(&[2, 2], ParamPoly::one()).is_zero());
    }

    #[test]
    fn contract_examples() {
        let m = PForm::monomial(&[2, 3], ParamPoly::one());
        assert_eq!(m.contract(2).unwrap(), w(3));
        assert_eq!(m.contract(3).unwrap(), w(2).neg());
        assert!(m.contract(4).unwrap().is_zero());
        // degree-0 input is an error
        assert!(PForm::scalar(ParamPoly::one()).contract(1).is_err());
    }

    #[test]
    fn top_coefficient_examples() {
        let a = ParamPoly::var(sym("a"));
        let vol = PForm::monomial(&[1, 2, 3, 4], (-&a).clone());
        assert_eq!(vol.top_coefficient().unwrap(), -&a);
        // Omega ^ Omega = -2 vol for Omega = w1^w3 + w2^w4
        let omega = w(1).wedge(&w(3)).add(&w(2).wedge(&w(4)));
        let sq = omega.wedge(&omega);
        assert_eq!(
            sq.top_coefficient().unwrap(),
            ParamPoly::constant(rat_int(-2))
        );
        assert_eq!(
            PForm::zero().top_coefficient().unwrap(),
            ParamPoly::zero()
        );
        // inhomogeneous input is an error
        let bad = w(1).add(&w(1).wedge(&w(2)));
        assert!(bad.wedge(&w(3)).wedge(&w(4)).top_coefficient().is_err());
    }

    #[test]
    fn graded_anticommutativity_degrees() {
        // 1-forms anticommute; 2-forms commute.
        let alpha = w(1).add(&w(2).scale_rat(&rat_int(3)));
        let beta = w(3).sub(&w(4));
        assert_eq!(alpha.wedge(&beta), beta.wedge(&alpha).neg());
        let a2 = w(1).wedge(&w(2));
        let b2 = w(3).wedge(&w(4));
        assert_eq!(a2.wedge(&b2), b2.wedge(&a2));
    }

    #[test]
    fn contract_is_antiderivation() {
        let alpha = w(1).add(&w(2));
        let beta = w(2).wedge(&w(3)).add(&w(3).wedge(&w(4)));
        for j in 1..=4 {
            let lhs = alpha.wedge(&beta).contract(j).unwrap();
            let rhs = alpha
                .contract(j)
                .unwrap()
                .wedge(&beta)
                .add(&alpha.neg().wedge(&beta.contract(j).unwrap()));
            assert_eq!(lhs, rhs, "j = {j}");
        }
    }
}
