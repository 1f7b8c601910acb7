//! Multivariate parameter polynomials with exact rational coefficients.
//!
//! `ParamPoly` is a sparse polynomial over named symbols. The representation
//! is canonical: variables are sorted by the global symbol order, variables
//! that no longer occur are pruned, no stored coefficient is zero, and terms
//! are keyed by graded-lexicographic exponent order. Structural equality is
//! therefore semantic equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{rat_string, Rat};
use super::symbol::Symbol;
use crate::error::ScalarError;

/// Exponent vector keyed graded-lexicographically (total degree first,
/// then lexicographic on the exponents).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Expo(pub Vec<u32>);

impl Expo {
    fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Expo {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct ParamPoly {
    vars: Vec<Symbol>,
    terms: BTreeMap<Expo, Rat>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Expo(Vec::new()), c);
        }
        ParamPoly { vars: Vec::new(), terms }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn var(s: Symbol) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Expo(vec![1]), Rat::one());
        ParamPoly { vars: vec![s], terms }
    }

    /// Build from raw (exponent, coefficient) pairs over the given variables.
    /// Normalizes: sorts variables, merges duplicates, drops zeros.
    pub fn from_terms(vars: Vec<Symbol>, raw: Vec<(Vec<u32>, Rat)>) -> Self {
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by(|&i, &j| vars[i].cmp(&vars[j]));
        let sorted_vars: Vec<Symbol> = order.iter().map(|&i| vars[i].clone()).collect();
        for w in sorted_vars.windows(2) {
            assert!(w[0] != w[1], "duplicate variable {}", w[0]);
        }
        let mut terms: BTreeMap<Expo, Rat> = BTreeMap::new();
        for (expo, c) in raw {
            assert_eq!(expo.len(), vars.len(), "exponent arity mismatch");
            let remapped: Vec<u32> = order.iter().map(|&i| expo[i]).collect();
            let entry = terms.entry(Expo(remapped)).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        let mut p = ParamPoly { vars: sorted_vars, terms };
        p.prune();
        p
    }

    /// Drop variables whose exponent is zero in every term.
    fn prune(&mut self) {
        let n = self.vars.len();
        if n == 0 {
            return;
        }
        let mut used = vec![false; n];
        for e in self.terms.keys() {
            for (i, &x) in e.0.iter().enumerate() {
                if x > 0 {
                    used[i] = true;
                }
            }
        }
        if used.iter().all(|&u| u) {
            return;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        self.vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let old = std::mem::take(&mut self.terms);
        for (e, c) in old {
            let ne: Vec<u32> = keep.iter().map(|&i| e.0[i]).collect();
            self.terms.insert(Expo(ne), c);
        }
    }

    /// Re-express over a superset of variables (callers guarantee
    /// `sup` is sorted and contains `self.vars`).
    fn embed(&self, sup: &[Symbol]) -> BTreeMap<Expo, Rat> {
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| sup.iter().position(|s| s == v).expect("embed superset"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0u32; sup.len()];
                for (i, &p) in pos.iter().enumerate() {
                    ne[p] = e.0[i];
                }
                (Expo(ne), c.clone())
            })
            .collect()
    }

    fn unify_vars(&self, other: &Self) -> Vec<Symbol> {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars.sort();
        vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no variable term.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Expo(vec![0; self.vars.len()])) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn vars(&self) -> &[Symbol] {
        &self.vars
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Expo::degree).max().unwrap_or(0)
    }

    /// Iterate terms as (symbol-exponent pairs, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (Vec<(Symbol, u32)>, &Rat)> + '_ {
        self.terms.iter().map(move |(e, c)| {
            let m: Vec<(Symbol, u32)> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| (self.vars[i].clone(), x))
                .collect();
            (m, c)
        })
    }

    /// Evaluate at a full assignment. Every variable must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<Symbol, Rat>) -> Result<Rat, ScalarError> {
        for v in &self.vars {
            if !assignment.contains_key(v) {
                return Err(ScalarError::MissingSymbol(v.to_string()));
            }
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &x) in e.0.iter().enumerate() {
                if x > 0 {
                    let v = &assignment[&self.vars[i]];
                    for _ in 0..x {
                        t *= v;
                    }
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute rational values for a subset of the variables.
    pub fn specialize(&self, assignment: &BTreeMap<Symbol, Rat>) -> ParamPoly {
        let mut acc = ParamPoly::zero();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut vars = Vec::new();
            let mut expo = Vec::new();
            for (i, &x) in e.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match assignment.get(&self.vars[i]) {
                    Some(v) => {
                        for _ in 0..x {
                            coeff *= v;
                        }
                    }
                    None => {
                        vars.push(self.vars[i].clone());
                        expo.push(x);
                    }
                }
            }
            acc = &acc + &ParamPoly::from_terms(vars, vec![(expo, coeff)]);
        }
        acc
    }

    /// Substitute a polynomial for one variable.
    pub fn substitute(&self, var: &Symbol, value: &ParamPoly) -> ParamPoly {
        let mut acc = ParamPoly::zero();
        for (e, c) in &self.terms {
            let mut term = ParamPoly::constant(c.clone());
            for (i, &x) in e.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if &self.vars[i] == var {
                    for _ in 0..x {
                        term = &term * value;
                    }
                } else {
                    let v = ParamPoly::var(self.vars[i].clone());
                    for _ in 0..x {
                        term = &term * &v;
                    }
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Formal partial derivative, all symbols treated as independent.
    pub fn partial(&self, var: &Symbol) -> ParamPoly {
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            return ParamPoly::zero();
        };
        let mut raw = Vec::new();
        for (e, c) in &self.terms {
            let x = e.0[idx];
            if x == 0 {
                continue;
            }
            let mut ne = e.0.clone();
            ne[idx] -= 1;
            raw.push((ne, c * Rat::from_integer(x.into())));
        }
        ParamPoly::from_terms(self.vars.clone(), raw)
    }

    pub fn pow(&self, n: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Rewrite every power `var^e` with `e >= 2` as `var^(e mod 2) * rep^(e div 2)`.
    /// This is the reduction step for declared quadratic identities such as
    /// sin^2 = 1 - cos^2.
    pub(crate) fn reduce_square(&self, var: &Symbol, rep: &ParamPoly) -> ParamPoly {
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            return self.clone();
        };
        if self.terms.keys().all(|e| e.0[idx] < 2) {
            return self.clone();
        }
        let mut acc = ParamPoly::zero();
        for (e, c) in &self.terms {
            let x = e.0[idx];
            let mut ne = e.0.clone();
            ne[idx] = x % 2;
            let base = ParamPoly::from_terms(self.vars.clone(), vec![(ne, c.clone())]);
            let mut term = base;
            for _ in 0..(x / 2) {
                term = &term * rep;
            }
            acc = &acc + &term;
        }
        acc
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let vars = self.unify_vars(rhs);
        let mut terms = self.embed(&vars);
        for (e, c) in rhs.embed(&vars) {
            let entry = terms.entry(e).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        let mut p = ParamPoly { vars, terms };
        p.prune();
        p
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        self + &(-rhs)
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        if self.is_zero() || rhs.is_zero() {
            return ParamPoly::zero();
        }
        let vars = self.unify_vars(rhs);
        let a = self.embed(&vars);
        let b = rhs.embed(&vars);
        let mut terms: BTreeMap<Expo, Rat> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<u32> = ea.0.iter().zip(&eb.0).map(|(x, y)| x + y).collect();
                let entry = terms.entry(Expo(e)).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        let mut p = ParamPoly { vars, terms };
        p.prune();
        p
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest graded-lex term first.
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(j, &x)| {
                    if x == 1 {
                        self.vars[j].to_string()
                    } else {
                        format!("{}^{}", self.vars[j], x)
                    }
                })
                .collect();
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if mono.is_empty() {
                write!(f, "{}", rat_string(&abs))?;
            } else if abs.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{}*{}", rat_string(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Rat> for ParamPoly {
    fn from(c: Rat) -> Self {
        ParamPoly::constant(c)
    }
}
