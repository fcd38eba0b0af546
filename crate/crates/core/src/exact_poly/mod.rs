//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored in ascending degree order; the zero polynomial is
//! the empty vector and every other value has a nonzero leading coefficient.

mod factor;
mod resultant;
mod sturm;
mod trace;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use factor::{factor_over_z, modular_degree_pattern, FactorizationZ};
pub use resultant::{gcd, resultant, squarefree_part};
pub(crate) use sturm::refine_root;
pub use sturm::{isolate_real_roots, sign_at, sturm_count};
pub use trace::{inverse_trace_poly, trace_poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("reciprocal polynomial is not integral")]
    NonIntegralReciprocal,
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("interval endpoint is a root")]
    EndpointIsRoot,
    #[error("zero polynomial")]
    ZeroPolynomial,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Ascending coefficients.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Descending coefficients, leading coefficient first.
    pub fn from_desc_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `X - a`.
    pub fn linear_root(a: i64) -> Self {
        Self::from_i64s(&[-a, 1])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; callers rule zero out.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// `f(1)`
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `f(-1)`
    pub fn at_minus_one(&self) -> BigInt {
        self.eval_i64(-1)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero());
                    a / c
                })
                .collect(),
        )
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient reversal `X^deg f(1/X)`.
    pub fn reversed(&self) -> IntPoly {
        let mut v = self.coeffs.clone();
        v.reverse();
        IntPoly::new(v)
    }

    /// `f(-X)`
    pub fn negate_x(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `f(X^k)`
    pub fn compose_power(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.deg() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        IntPoly::new(v)
    }

    /// Division with remainder in Z[X]; requires `lc(d)` to divide every
    /// intermediate leading coefficient, otherwise returns `None`.
    pub fn div_rem_exact(&self, d: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
        }
        Some((IntPoly::new(q), IntPoly::new(r)))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in Z[X].
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        match self.div_rem_exact(d) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Pseudo-remainder `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return self.clone();
        }
        let dd = d.deg();
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        let steps = r.len() - dd;
        for k in (0..steps).rev() {
            let top = r[k + dd].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            if !top.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &top * dc;
                }
            }
            r.truncate(k + dd);
        }
        IntPoly::new(r)
    }

    /// Total order: degree first, then coefficients from the constant term up.
    pub fn canonical_cmp(&self, other: &IntPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

/// Exact value of `f` at a rational point.
pub fn eval_at(f: &IntPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in f.coeffs.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

/// `f*(X) = f(0)^{-1} X^{deg f} f(1/X)`.
pub fn reciprocal_star(f: &IntPoly) -> Result<IntPoly, PolyError> {
    let c0 = f.constant_term();
    if c0.is_zero() {
        return Err(PolyError::ZeroConstantTerm);
    }
    let rev = f.reversed();
    if rev.coeffs.iter().any(|c| !(c % &c0).is_zero()) {
        return Err(PolyError::NonIntegralReciprocal);
    }
    Ok(rev.div_scalar_exact(&c0))
}

/// `f* = f`. A non-integral reciprocal counts as not symmetric.
pub fn is_symmetric(f: &IntPoly) -> Result<bool, PolyError> {
    match reciprocal_star(f) {
        Ok(g) => Ok(g == *f),
        Err(PolyError::NonIntegralReciprocal) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Palindromic coefficient sequence, i.e. `X^deg f(1/X) = f`.
pub fn is_palindromic(f: &IntPoly) -> bool {
    let n = f.coeffs.len();
    (0..n / 2).all(|k| f.coeffs[k] == f.coeffs[n - 1 - k])
}

/// Closed bounded interval with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval");
        RatInterval { lo, hi }
    }

    pub fn from_ints(lo: i64, hi: i64) -> Self {
        Self::new(
            BigRational::from_integer(lo.into()),
            BigRational::from_integer(hi.into()),
        )
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (
            self.lo.to_f64().unwrap_or(f64::NAN),
            self.hi.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Product for IntPoly {
    fn product<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::one(), |a, b| &a * &b)
    }
}

/// Prints in the input grammar: `x^6 - 3x^5 - x^4 + 5x^3 - x^2 - 3x + 1`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Serialized in the textual grammar form.
impl serde::Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lehmer() -> IntPoly {
        IntPoly::from_desc_i64s(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    #[test]
    fn evaluation() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(eval_at(&IntPoly::zero(), &half), BigRational::zero());
        assert_eq!(lehmer().at_minus_one(), BigInt::from(1));
        let s3 = IntPoly::from_desc_i64s(&[1, -3, -1, 5, -1, -3, 1]);
        assert_eq!(s3.at_one(), BigInt::from(-1));
        let f = IntPoly::from_i64s(&[1, 2]);
        assert_eq!(eval_at(&f, &half), BigRational::from_integer(2.into()));
    }

    #[test]
    fn reciprocal() {
        let f = IntPoly::from_desc_i64s(&[1, -3, 1]);
        assert_eq!(reciprocal_star(&f).unwrap(), f);
        assert_eq!(
            reciprocal_star(&IntPoly::from_i64s(&[6, 1])),
            Err(PolyError::NonIntegralReciprocal)
        );
        let g = IntPoly::from_desc_i64s(&[1, 2, 0, 1]);
        assert_eq!(
            reciprocal_star(&g).unwrap(),
            IntPoly::from_desc_i64s(&[1, 0, 2, 1])
        );
        assert!(is_symmetric(&lehmer()).unwrap());
        assert_eq!(
            is_symmetric(&IntPoly::from_i64s(&[0, 1, 1])),
            Err(PolyError::ZeroConstantTerm)
        );
        assert!(!is_symmetric(&IntPoly::from_desc_i64s(&[1, 1, 0, 0, 1])).unwrap());
        assert!(is_symmetric(&IntPoly::linear_root(1)).unwrap());
    }

    #[test]
    fn division() {
        let a = IntPoly::from_i64s(&[-1, 0, 0, 0, 1]);
        let b = IntPoly::from_i64s(&[1, 0, 1]);
        assert_eq!(a.div_exact(&b).unwrap(), IntPoly::from_i64s(&[-1, 0, 1]));
        assert!(a.div_exact(&IntPoly::from_i64s(&[1, 1, 1])).is_none());
        assert!(IntPoly::from_i64s(&[1, 1])
            .div_exact(&IntPoly::from_i64s(&[1, 2]))
            .is_none());
        let r = a.pseudo_rem(&IntPoly::from_i64s(&[1, 2]));
        assert_eq!(r, IntPoly::from_i64s(&[-15]));
    }

    #[test]
    fn display() {
        let s3 = IntPoly::from_desc_i64s(&[1, -3, -1, 5, -1, -3, 1]);
        assert_eq!(s3.to_string(), "x^6 - 3x^5 - x^4 + 5x^3 - x^2 - 3x + 1");
        assert_eq!(IntPoly::from_i64s(&[-2]).to_string(), "-2");
        assert_eq!(IntPoly::from_i64s(&[0, -1]).to_string(), "-x");
    }
}
