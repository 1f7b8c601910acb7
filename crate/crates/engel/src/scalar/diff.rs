//! Coordinate differential rings: polynomials in chart coordinates extended
//! by generators with declared derivative tables (exponentials e^{ky},
//! cosine/sine pairs, ...). Trig pairs carry the quadratic relation
//! S^2 + C^2 = 1, applied as the rewrite S^2 -> 1 - C^2 during normalization
//! so that zero-testing stays decidable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use super::poly::ParamPoly;
use super::rational::{rat, rat_int, Rat};
use super::symbol::Symbol;
use crate::error::ScalarError;

/// An extension generator: a symbol plus its partial derivatives with
/// respect to the chart coordinates (absent entries are zero). Each
/// derivative is a polynomial over the same symbol set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenRule {
    pub symbol: Symbol,
    pub partials: BTreeMap<Symbol, ParamPoly>,
}

/// The scalar ring of a coordinate chart.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChartScalars {
    coords: Vec<Symbol>,
    gens: Vec<GenRule>,
    /// Pairs (cos-like, sin-like) subject to C^2 + S^2 = 1.
    trig_pairs: Vec<(Symbol, Symbol)>,
}

impl ChartScalars {
    pub fn new(
        coords: Vec<Symbol>,
        gens: Vec<GenRule>,
        trig_pairs: Vec<(Symbol, Symbol)>,
    ) -> Result<Arc<Self>, ScalarError> {
        let chart = ChartScalars { coords, gens, trig_pairs };
        chart.validate()?;
        Ok(Arc::new(chart))
    }

    fn validate(&self) -> Result<(), ScalarError> {
        let mut all: Vec<Symbol> = self.coords.clone();
        for g in &self.gens {
            all.push(g.symbol.clone());
        }
        let mut sorted = all.clone();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(ScalarError::DuplicateSymbol(w[0].to_string()));
            }
        }
        for g in &self.gens {
            for (coord, tbl) in &g.partials {
                if !self.coords.contains(coord) {
                    return Err(ScalarError::UnknownSymbol(coord.to_string()));
                }
                for v in tbl.vars() {
                    if !all.contains(v) {
                        return Err(ScalarError::UnknownSymbol(v.to_string()));
                    }
                }
            }
        }
        for (c, s) in &self.trig_pairs {
            if !self.gens.iter().any(|g| &g.symbol == c)
                || !self.gens.iter().any(|g| &g.symbol == s)
            {
                return Err(ScalarError::UnknownSymbol(format!("trig pair ({c}, {s})")));
            }
        }
        Ok(())
    }

    pub fn coords(&self) -> &[Symbol] {
        &self.coords
    }

    pub fn is_coordinate(&self, s: &Symbol) -> bool {
        self.coords.contains(s)
    }

    fn gen_rule(&self, s: &Symbol) -> Option<&GenRule> {
        self.gens.iter().find(|g| &g.symbol == s)
    }

    fn normalize(&self, p: ParamPoly) -> ParamPoly {
        let mut p = p;
        for (c, s) in &self.trig_pairs {
            let c2 = ParamPoly::var(c.clone()).pow(2);
            let rep = &ParamPoly::one() - &c2; // S^2 -> 1 - C^2
            p = p.reduce_square(s, &rep);
        }
        p
    }

    /// After the partial derivatives commute on every generator, d^2 = 0
    /// holds on the whole chart; reject tables where they do not.
    pub fn check_mixed_partials(self: &Arc<Self>) -> Result<(), ScalarError> {
        for g in &self.gens {
            let gs = DiffScalar::var(self, g.symbol.clone());
            for i in &self.coords {
                for j in &self.coords {
                    if i >= j {
                        continue;
                    }
                    let dij = gs.derive(i)?.derive(j)?;
                    let dji = gs.derive(j)?.derive(i)?;
                    if dij != dji {
                        return Err(ScalarError::NonCommutingDerivatives(
                            g.symbol.to_string(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Deterministic rational point for rank witnessing. Coordinates get
    /// distinct primes; trig pairs get rational circle points; other
    /// generators get nonzero rationals.
    pub fn witness(&self) -> BTreeMap<Symbol, Rat> {
        const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        let mut w = BTreeMap::new();
        let mut next = 0usize;
        for c in &self.coords {
            w.insert(c.clone(), rat_int(PRIMES[next % PRIMES.len()]));
            next += 1;
        }
        let mut t_idx = 2i64;
        for (c, s) in &self.trig_pairs {
            // (C, S) = ((1-t^2)/(1+t^2), 2t/(1+t^2)) lies on the unit circle.
            let t = rat(1, t_idx);
            let one = rat_int(1);
            let den = &one + &t * &t;
            w.insert(c.clone(), (&one - &t * &t) / &den);
            w.insert(s.clone(), rat_int(2) * &t / den);
            t_idx += 1;
        }
        for g in &self.gens {
            if !w.contains_key(&g.symbol) {
                w.insert(g.symbol.clone(), rat(PRIMES[next % PRIMES.len()], 1));
                next += 1;
            }
        }
        w
    }
}

/// An element of a chart's scalar ring, kept in normal form.
///
/// Pure rational constants carry no chart and combine with elements of any
/// chart; all other values must share one chart.
#[derive(Clone)]
pub struct DiffScalar {
    chart: Option<Arc<ChartScalars>>,
    poly: ParamPoly,
}

impl DiffScalar {
    pub fn constant(c: Rat) -> Self {
        DiffScalar { chart: None, poly: ParamPoly::constant(c) }
    }

    pub fn zero() -> Self {
        Self::constant(Rat::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rat::from_integer(1.into()))
    }

    pub fn var(chart: &Arc<ChartScalars>, s: Symbol) -> Self {
        DiffScalar { chart: Some(chart.clone()), poly: ParamPoly::var(s) }
    }

    pub fn from_poly(chart: &Arc<ChartScalars>, p: ParamPoly) -> Self {
        DiffScalar { chart: Some(chart.clone()), poly: chart.normalize(p) }
    }

    pub fn poly(&self) -> &ParamPoly {
        &self.poly
    }

    pub fn chart(&self) -> Option<&Arc<ChartScalars>> {
        self.chart.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        DiffScalar { chart: self.chart.clone(), poly: self.poly.scale(c) }
    }

    fn unified_chart(&self, other: &Self) -> Option<Arc<ChartScalars>> {
        match (&self.chart, &other.chart) {
            (None, None) => None,
            (Some(c), None) | (None, Some(c)) => Some(c.clone()),
            (Some(a), Some(b)) => {
                assert!(
                    Arc::ptr_eq(a, b) || a == b,
                    "scalars from different charts cannot be combined"
                );
                Some(a.clone())
            }
        }
    }

    /// Formal partial derivative with respect to a chart coordinate,
    /// applying the Leibniz rule and the generator derivative tables.
    pub fn derive(&self, coord: &Symbol) -> Result<Self, ScalarError> {
        let Some(chart) = &self.chart else {
            // Constants differentiate to zero, but the coordinate must be known
            // only when a chart is present; bare constants accept any name.
            return Ok(DiffScalar::zero());
        };
        if !chart.is_coordinate(coord) {
            return Err(ScalarError::UnknownSymbol(coord.to_string()));
        }
        let mut acc = ParamPoly::zero();
        for s in self.poly.vars().to_vec() {
            let outer = self.poly.partial(&s);
            if outer.is_zero() {
                continue;
            }
            let inner = if &s == coord {
                ParamPoly::one()
            } else if chart.is_coordinate(&s) {
                ParamPoly::zero()
            } else if let Some(rule) = chart.gen_rule(&s) {
                rule.partials.get(coord).cloned().unwrap_or_else(ParamPoly::zero)
            } else {
                return Err(ScalarError::UnknownSymbol(s.to_string()));
            };
            if inner.is_zero() {
                continue;
            }
            acc = &acc + &(&outer * &inner);
        }
        Ok(DiffScalar {
            chart: Some(chart.clone()),
            poly: chart.normalize(acc),
        })
    }

    /// Evaluate at an assignment covering every symbol in use.
    pub fn eval(&self, assignment: &BTreeMap<Symbol, Rat>) -> Result<Rat, ScalarError> {
        self.poly.eval(assignment)
    }
}

impl PartialEq for DiffScalar {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}
impl Eq for DiffScalar {}

impl Add for &DiffScalar {
    type Output = DiffScalar;
    fn add(self, rhs: &DiffScalar) -> DiffScalar {
        let chart = self.unified_chart(rhs);
        DiffScalar { chart, poly: &self.poly + &rhs.poly }
    }
}

impl Sub for &DiffScalar {
    type Output = DiffScalar;
    fn sub(self, rhs: &DiffScalar) -> DiffScalar {
        let chart = self.unified_chart(rhs);
        DiffScalar { chart, poly: &self.poly - &rhs.poly }
    }
}

impl Neg for &DiffScalar {
    type Output = DiffScalar;
    fn neg(self) -> DiffScalar {
        DiffScalar { chart: self.chart.clone(), poly: -&self.poly }
    }
}

impl Mul for &DiffScalar {
    type Output = DiffScalar;
    fn mul(self, rhs: &DiffScalar) -> DiffScalar {
        let chart = self.unified_chart(rhs);
        let raw = &self.poly * &rhs.poly;
        let poly = match &chart {
            Some(c) => c.normalize(raw),
            None => raw,
        };
        DiffScalar { chart, poly }
    }
}

impl fmt::Display for DiffScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl fmt::Debug for DiffScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}
