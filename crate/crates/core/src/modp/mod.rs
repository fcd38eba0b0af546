//! Polynomials over prime fields: reduction, complete factorization and the
//! self-reciprocal test on irreducible factors.

pub(crate) mod dense;
pub(crate) mod field;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exact_poly::IntPoly;
use dense::Poly;
use field::{BigField, PrimeField, SmallField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModpError {
    #[error("constant term is zero mod p")]
    ZeroConstantTerm,
}

/// Polynomial with residues in `[0, p)`, ascending, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: BigUint,
    coeffs: Vec<BigUint>,
}

impl ModPoly {
    pub fn new(p: BigUint, coeffs: Vec<BigUint>) -> Self {
        let mut coeffs: Vec<BigUint> = coeffs.into_iter().map(|c| c % &p).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn from_u64s(p: u64, coeffs: &[u64]) -> Self {
        Self::new(
            BigUint::from(p),
            coeffs.iter().map(|&c| BigUint::from(c)).collect(),
        )
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Lift with residues in `[0, p)`.
    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigInt::from(c.clone()))
                .collect(),
        )
    }

    fn to_elems<F: PrimeField>(&self, k: &F) -> Poly<F> {
        self.coeffs
            .iter()
            .map(|c| k.embed_bigint(&BigInt::from(c.clone())))
            .collect()
    }

    fn from_elems<F: PrimeField>(k: &F, v: &Poly<F>) -> Self {
        ModPoly::new(k.modulus(), v.iter().map(|c| k.to_biguint(c)).collect())
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lifted = self.to_int_poly();
        write!(f, "{lifted} (mod {})", self.p)
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly({self})")
    }
}

impl Serialize for ModPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_int_poly().to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpFactor {
    pub poly: ModPoly,
    pub multiplicity: usize,
    /// `h = h(0)^{-1} X^{deg h} h(1/X)`; false when `h(0) = 0`.
    pub symmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationFp {
    pub p: BigUint,
    pub unit: BigUint,
    pub factors: Vec<FpFactor>,
}

impl FactorizationFp {
    pub fn product(&self) -> ModPoly {
        let mut acc = ModPoly::new(self.p.clone(), vec![self.unit.clone()]);
        for f in &self.factors {
            for _ in 0..f.multiplicity {
                acc = mul(&acc, &f.poly);
            }
        }
        acc
    }

    pub fn symmetric_factors(&self) -> impl Iterator<Item = &FpFactor> {
        self.factors.iter().filter(|f| f.symmetric)
    }
}

/// Runs `$body` with `$k` bound to the word-sized field when `p < 2^63`.
macro_rules! with_field {
    ($p:expr, $k:ident => $body:expr) => {{
        match $p.to_u64().filter(|&v| v < (1u64 << 63)) {
            Some(small) => {
                let $k = SmallField::new(small);
                $body
            }
            None => {
                let $k = BigField { p: $p.clone() };
                $body
            }
        }
    }};
}

pub fn reduce_mod_p(f: &IntPoly, p: &BigUint) -> ModPoly {
    let pi = BigInt::from(p.clone());
    ModPoly::new(
        p.clone(),
        f.coeffs()
            .iter()
            .map(|c| {
                let r = ((c % &pi) + &pi) % &pi;
                r.to_biguint().expect("nonnegative residue")
            })
            .collect(),
    )
}

pub fn mul(a: &ModPoly, b: &ModPoly) -> ModPoly {
    with_field!(a.p, k => ModPoly::from_elems(&k, &dense::mul(&k, &a.to_elems(&k), &b.to_elems(&k))))
}

/// Monic gcd; the zero polynomial when both inputs are zero.
pub fn gcd_mod_p(a: &ModPoly, b: &ModPoly) -> ModPoly {
    with_field!(a.p, k => ModPoly::from_elems(&k, &dense::gcd(&k, &a.to_elems(&k), &b.to_elems(&k))))
}

/// Remainder of `a` modulo a nonzero `b`.
pub fn rem_mod_p(a: &ModPoly, b: &ModPoly) -> ModPoly {
    with_field!(a.p, k => ModPoly::from_elems(&k, &dense::rem(&k, &a.to_elems(&k), &b.to_elems(&k))))
}

fn symmetric_elems<F: PrimeField>(k: &F, h: &Poly<F>) -> Option<bool> {
    let c0 = h.first()?;
    if k.is_zero(c0) {
        return None;
    }
    let inv = k.inv(c0);
    let star: Vec<F::E> = h.iter().rev().map(|c| k.mul(c, &inv)).collect();
    Some(star == *h)
}

pub fn is_symmetric_mod_p(h: &ModPoly) -> Result<bool, ModpError> {
    with_field!(h.p, k => symmetric_elems(&k, &h.to_elems(&k)).ok_or(ModpError::ZeroConstantTerm))
}

fn factor_with<F: PrimeField>(k: &F, f: &ModPoly, seed: u64) -> FactorizationFp {
    let elems = f.to_elems(k);
    let Some(lc) = elems.last().cloned() else {
        return FactorizationFp {
            p: f.p.clone(),
            unit: BigUint::zero(),
            factors: Vec::new(),
        };
    };
    let monic = dense::monic(k, &elems);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = dense::factor_monic(k, &monic, &mut rng)
        .into_iter()
        .map(|(g, m)| FpFactor {
            symmetric: symmetric_elems(k, &g).unwrap_or(false),
            poly: ModPoly::from_elems(k, &g),
            multiplicity: m,
        })
        .collect();
    FactorizationFp {
        p: f.p.clone(),
        unit: k.to_biguint(&lc),
        factors,
    }
}

/// Complete factorization into monic irreducibles in canonical order.
pub fn factor_mod_p(f: &ModPoly, seed: u64) -> FactorizationFp {
    with_field!(f.p, k => factor_with(&k, f, seed))
}

/// Irreducible factorization of `gcd(f mod p, g mod p)` with symmetry flags.
pub fn common_factors_mod_p(f: &IntPoly, g: &IntPoly, p: &BigUint, seed: u64) -> FactorizationFp {
    let h = gcd_mod_p(&reduce_mod_p(f, p), &reduce_mod_p(g, p));
    if h.is_zero() {
        return FactorizationFp {
            p: p.clone(),
            unit: BigUint::zero(),
            factors: Vec::new(),
        };
    }
    factor_mod_p(&h, seed)
}

/// Irreducibility over `F_p` by the distinct-degree criterion.
pub fn is_irreducible_mod_p(h: &ModPoly) -> bool {
    let Some(d) = h.degree() else { return false };
    if d == 0 {
        return false;
    }
    with_field!(h.p, k => {
        let e = dense::monic(&k, &h.to_elems(&k));
        let sq = dense::gcd(&k, &e, &dense::derivative(&k, &e));
        dense::is_one(&k, &sq) && dense::distinct_degree(&k, &e).len() == 1
            && dense::distinct_degree(&k, &e)[0].1 == d
    })
}
