//! Exact arithmetic in real quadratic fields Q(sqrt(D)).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{rat_string, Rat};
use crate::error::ScalarError;

/// An element x + y*sqrt(D) of a real quadratic field.
///
/// `d` is squarefree and > 1 whenever `y != 0`; purely rational values
/// normalize to `d = 0` so that the representation is unique outright.
/// Construction factors square parts out of the radicand.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    d: u64,
    x: Rat,
    y: Rat,
}

/// Split `n > 0` as m^2 * d with d squarefree; returns (m, d).
fn squarefree_split(n: u64) -> (u64, u64) {
    let mut d = n;
    let mut m = 1u64;
    let mut p = 2u64;
    while p * p <= d {
        while d % (p * p) == 0 {
            d /= p * p;
            m *= p;
        }
        p += 1;
    }
    (m, d)
}

impl QuadExt {
    /// x + y*sqrt(n) for any n >= 1; the square part of n is absorbed into y.
    pub fn new(n: u64, x: Rat, y: Rat) -> Self {
        assert!(n >= 1, "radicand must be positive");
        let (m, d) = squarefree_split(n);
        let y = y * Rat::from_integer(BigInt::from(m));
        if y.is_zero() || d == 1 {
            // sqrt of a perfect square is rational
            let x = if d == 1 { x + y } else { x };
            QuadExt { d: 0, x, y: Rat::zero() }
        } else {
            QuadExt { d, x, y }
        }
    }

    pub fn rational(x: Rat) -> Self {
        QuadExt { d: 0, x, y: Rat::zero() }
    }

    pub fn zero() -> Self {
        Self::rational(Rat::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rat::one())
    }

    /// sqrt(n), exactly.
    pub fn sqrt(n: u64) -> Self {
        Self::new(n, Rat::zero(), Rat::one())
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn x(&self) -> &Rat {
        &self.x
    }

    pub fn y(&self) -> &Rat {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// Galois conjugate x - y*sqrt(D).
    pub fn conj(&self) -> Self {
        QuadExt { d: self.d, x: self.x.clone(), y: -self.y.clone() }
    }

    /// Field norm x^2 - D y^2 (rational).
    pub fn norm(&self) -> Rat {
        &self.x * &self.x - Rat::from_integer(BigInt::from(self.d)) * &self.y * &self.y
    }

    fn unified_d(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (a, b) => {
                assert!(a == b, "mixed quadratic fields sqrt({a}) and sqrt({b})");
                a
            }
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm();
        // Real quadratic with D squarefree: norm of a nonzero element is nonzero.
        debug_assert!(!n.is_zero());
        Ok(QuadExt {
            d: if self.y.is_zero() { 0 } else { self.d },
            x: &self.x / &n,
            y: -&self.y / &n,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inverse()?)
    }

    /// Numeric sign, using sqrt(D) > 0.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.y.is_zero() {
            return if self.x.is_positive() { 1 } else { -1 };
        }
        if self.x.is_zero() {
            return if self.y.is_positive() { 1 } else { -1 };
        }
        let sx = self.x.is_positive();
        let sy = self.y.is_positive();
        if sx == sy {
            return if sx { 1 } else { -1 };
        }
        // Opposite signs: the part with the larger square dominates.
        // norm > 0 means x^2 > D y^2, so the rational part wins.
        if self.norm().is_positive() {
            if sx {
                1
            } else {
                -1
            }
        } else if sy {
            1
        } else {
            -1
        }
    }
}

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        let d = self.unified_d(rhs);
        let y = &self.y + &rhs.y;
        QuadExt {
            d: if y.is_zero() { 0 } else { d },
            x: &self.x + &rhs.x,
            y,
        }
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        self + &(-rhs)
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { d: self.d, x: -self.x.clone(), y: -self.y.clone() }
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        let d = self.unified_d(rhs);
        let dd = Rat::from_integer(BigInt::from(d));
        let x = &self.x * &rhs.x + &dd * &self.y * &rhs.y;
        let y = &self.x * &rhs.y + &self.y * &rhs.x;
        QuadExt { d: if y.is_zero() { 0 } else { d }, x, y }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return f.write_str(&rat_string(&self.x));
        }
        let abs_y = self.y.abs();
        let ys = if abs_y.is_one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", rat_string(&abs_y), self.d)
        };
        if self.x.is_zero() {
            if self.y.is_positive() {
                f.write_str(&ys)
            } else {
                write!(f, "-{ys}")
            }
        } else if self.y.is_positive() {
            write!(f, "{} + {}", rat_string(&self.x), ys)
        } else {
            write!(f, "{} - {}", rat_string(&self.x), ys)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
