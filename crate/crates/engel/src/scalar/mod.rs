//! Exact arithmetic substrates: rationals, parameter polynomials, real
//! quadratic field elements, and coordinate differential rings.

pub mod diff;
pub mod poly;
pub mod quad;
pub mod rational;
pub mod symbol;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

pub use diff::{ChartScalars, DiffScalar, GenRule};
pub use poly::ParamPoly;
pub use quad::QuadExt;
pub use rational::{parse_rat, rat, rat_int, rat_string, Rat};
pub use symbol::{sym, Symbol};

use crate::error::ScalarError;

/// Commutative ring interface used by the generic exterior algebra and
/// linear algebra. All implementors here are integral domains with a
/// decidable zero test, which is what fraction-field elimination needs.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn from_rat(r: &Rat) -> Self;
    /// Evaluate at a rational point (used for rank witnessing).
    fn eval_at(&self, assignment: &BTreeMap<Symbol, Rat>) -> Result<Rat, ScalarError>;
    /// Positive rational content (gcd of the rational coefficients);
    /// zero for the zero element. Used to normalize generator presentations.
    fn rat_content(&self) -> Rat;
    /// Sign of the leading coefficient under the canonical term order.
    fn leading_sign(&self) -> i32;
}

/// gcd of two non-negative rationals: gcd of numerators over lcm of denominators.
pub(crate) fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    use num_integer::Integer;
    if <Rat as Zero>::is_zero(a) {
        return b.clone();
    }
    if <Rat as Zero>::is_zero(b) {
        return a.clone();
    }
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    Rat::new(num, den)
}

impl Ring for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        Rat::from_integer(1.into())
    }
    fn is_zero(&self) -> bool {
        <Rat as Zero>::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn eval_at(&self, _: &BTreeMap<Symbol, Rat>) -> Result<Rat, ScalarError> {
        Ok(self.clone())
    }
    fn rat_content(&self) -> Rat {
        num_traits::Signed::abs(self)
    }
    fn leading_sign(&self) -> i32 {
        rational::rat_signum(self)
    }
}

impl Ring for ParamPoly {
    fn zero() -> Self {
        ParamPoly::zero()
    }
    fn one() -> Self {
        ParamPoly::one()
    }
    fn is_zero(&self) -> bool {
        ParamPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_rat(r: &Rat) -> Self {
        ParamPoly::constant(r.clone())
    }
    fn eval_at(&self, assignment: &BTreeMap<Symbol, Rat>) -> Result<Rat, ScalarError> {
        self.eval(assignment)
    }
    fn rat_content(&self) -> Rat {
        self.terms()
            .fold(<Rat as Zero>::zero(), |acc, (_, c)| rat_gcd(&acc, &num_traits::Signed::abs(c)))
    }
    fn leading_sign(&self) -> i32 {
        self.terms()
            .last()
            .map(|(_, c)| rational::rat_signum(c))
            .unwrap_or(0)
    }
}

impl Ring for DiffScalar {
    fn zero() -> Self {
        DiffScalar::zero()
    }
    fn one() -> Self {
        DiffScalar::one()
    }
    fn is_zero(&self) -> bool {
        DiffScalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_rat(r: &Rat) -> Self {
        DiffScalar::constant(r.clone())
    }
    fn eval_at(&self, assignment: &BTreeMap<Symbol, Rat>) -> Result<Rat, ScalarError> {
        self.eval(assignment)
    }
    fn rat_content(&self) -> Rat {
        self.poly().rat_content()
    }
    fn leading_sign(&self) -> i32 {
        self.poly().leading_sign()
    }
}

impl Ring for QuadExt {
    fn zero() -> Self {
        QuadExt::zero()
    }
    fn one() -> Self {
        QuadExt::one()
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_rat(r: &Rat) -> Self {
        QuadExt::rational(r.clone())
    }
    fn eval_at(&self, _: &BTreeMap<Symbol, Rat>) -> Result<Rat, ScalarError> {
        // Only used for rank witnessing, which quadratic-field matrices
        // never go through; the x-part is a harmless stand-in.
        Ok(self.x().clone())
    }
    fn rat_content(&self) -> Rat {
        rat_gcd(
            &num_traits::Signed::abs(self.x()),
            &num_traits::Signed::abs(self.y()),
        )
    }
    fn leading_sign(&self) -> i32 {
        self.signum()
    }
}
