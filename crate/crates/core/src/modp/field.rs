//! Prime fields with word-sized or arbitrary-precision moduli.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub(crate) trait PrimeField {
    type E: Clone + Eq + Ord + Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn embed_u64(&self, v: u64) -> Self::E;
    fn embed_bigint(&self, v: &BigInt) -> Self::E;
    fn to_biguint(&self, a: &Self::E) -> BigUint;
    fn modulus(&self) -> BigUint;
    /// The modulus when it fits a machine word.
    fn small_modulus(&self) -> Option<u64>;
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::E;
}

/// Moduli below 2^63, so that sums of two residues fit in a `u64`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SmallField {
    pub p: u64,
}

impl SmallField {
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 63)).contains(&p));
        SmallField { p }
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }
}

impl PrimeField for SmallField {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn embed_u64(&self, v: u64) -> u64 {
        v % self.p
    }
    fn embed_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("reduced residue")
    }
    fn to_biguint(&self, a: &u64) -> BigUint {
        BigUint::from(*a)
    }
    fn modulus(&self) -> BigUint {
        BigUint::from(self.p)
    }
    fn small_modulus(&self) -> Option<u64> {
        Some(self.p)
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.gen_range(0..self.p)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct BigField {
    pub p: BigUint,
}

impl PrimeField for BigField {
    type E = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::one()
    }
    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if s >= self.p {
            s - &self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            a + &self.p - b
        }
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.p
    }
    fn neg(&self, a: &BigUint) -> BigUint {
        if a.is_zero() {
            BigUint::zero()
        } else {
            &self.p - a
        }
    }
    fn inv(&self, a: &BigUint) -> BigUint {
        assert!(!a.is_zero(), "inverse of zero");
        a.modpow(&(&self.p - 2u32), &self.p)
    }
    fn embed_u64(&self, v: u64) -> BigUint {
        BigUint::from(v) % &self.p
    }
    fn embed_bigint(&self, v: &BigInt) -> BigUint {
        v.mod_floor(&BigInt::from(self.p.clone()))
            .to_biguint()
            .expect("reduced residue")
    }
    fn to_biguint(&self, a: &BigUint) -> BigUint {
        a.clone()
    }
    fn modulus(&self) -> BigUint {
        self.p.clone()
    }
    fn small_modulus(&self) -> Option<u64> {
        self.p.to_u64()
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> BigUint {
        rng.gen_biguint_below(&self.p)
    }
}
