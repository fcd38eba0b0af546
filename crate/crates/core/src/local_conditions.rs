//! Conditions (C0) and (C1), 2-adic square classes, and the per-prime
//! existence test for even unimodular local lattices with a given
//! characteristic polynomial.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{is_square, valuation};
use crate::exact_poly::IntPoly;
use crate::salem::{decompose_symmetric, SymmetricDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("zero has no square class")]
    ZeroInput,
    #[error("polynomial is not monic symmetric with constant term ±1")]
    NotSymmetric,
}

/// `deg F = r + s`, `F(0) = 1` and `r = s (mod 8)`.
pub fn check_c0(f: &IntPoly, r: usize, s: usize) -> bool {
    !f.is_zero()
        && f.constant_term().is_one()
        && f.deg() == r + s
        && (r as i64 - s as i64).rem_euclid(8) == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct C1Report {
    #[serde(serialize_with = "crate::cli_report::ser_bigint")]
    pub f_at_1: BigInt,
    #[serde(serialize_with = "crate::cli_report::ser_bigint")]
    pub f_at_minus1: BigInt,
    pub abs_squares: (bool, bool),
    pub signed_square: bool,
    pub holds: bool,
}

/// `|F(1)|`, `|F(-1)|` and `(-1)^n F(1) F(-1)` are squares, `deg F = 2n`;
/// zero counts as a square.
pub fn check_c1(f: &IntPoly) -> C1Report {
    let a = f.at_one();
    let b = f.at_minus_one();
    let n = f.deg() / 2;
    let mut prod = &a * &b;
    if n % 2 == 1 {
        prod = -prod;
    }
    let abs_squares = (is_square(&a.abs()), is_square(&b.abs()));
    let signed_square = is_square(&prod);
    C1Report {
        holds: abs_squares.0 && abs_squares.1 && signed_square,
        f_at_1: a,
        f_at_minus1: b,
        abs_squares,
        signed_square,
    }
}

/// `t = 2^valuation * u` with `u` odd and `u = unit_mod8 (mod 8)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoAdicClass {
    pub valuation: u32,
    pub unit_mod8: u8,
}

pub fn two_adic_class(t: &BigInt) -> Result<TwoAdicClass, LocalError> {
    if t.is_zero() {
        return Err(LocalError::ZeroInput);
    }
    let valuation = t.trailing_zeros().expect("nonzero") as u32;
    let u = t >> valuation;
    let unit_mod8 = u
        .mod_floor(&BigInt::from(8))
        .to_u8()
        .expect("residue mod 8");
    Ok(TwoAdicClass {
        valuation,
        unit_mod8,
    })
}

/// The classes of `1` and `-3` in `Q_2^x / Q_2^x2`.
pub fn in_unit_disc_classes(c: TwoAdicClass) -> bool {
    c.valuation.is_multiple_of(2) && (c.unit_mod8 == 1 || c.unit_mod8 == 5)
}

/// Clauses (a), (b), (c) on a decomposition at the prime `p`.
pub fn local_conditions_hold(dec: &SymmetricDecomposition, p: &BigUint) -> bool {
    let f1 = dec.f1();
    let (a1, am1) = (f1.at_one(), f1.at_minus_one());
    // F_1(±1) != 0 since F_1 has no factor X ± 1
    let odd = |v: &BigInt| valuation(v, p).is_some_and(|e| e % 2 == 1);
    if odd(&a1) && dec.n_plus == 0 {
        return false;
    }
    if odd(&am1) && dec.n_minus == 0 {
        return false;
    }
    if *p == BigUint::from(2u32) && dec.n_plus == 0 && dec.n_minus == 0 {
        let mut t = &a1 * &am1;
        if dec.n1() % 2 == 1 {
            t = -t;
        }
        return in_unit_disc_classes(two_adic_class(&t).expect("F_1(±1) nonzero"));
    }
    true
}

/// Existence of an even unimodular `Z_p`-lattice with a semi-simple isometry
/// whose characteristic polynomial is `F`.
pub fn local_even_unimodular_exists(f: &IntPoly, p: &BigUint) -> Result<bool, LocalError> {
    if !f.constant_term().is_one() || f.deg() % 2 == 1 {
        return Err(LocalError::NotSymmetric);
    }
    let dec = decompose_symmetric(f).map_err(|_| LocalError::NotSymmetric)?;
    Ok(local_conditions_hold(&dec, p))
}

/// Primes where the local clauses can fail: 2 and the odd primes dividing
/// `F_1(1) F_1(-1)`.
pub fn relevant_primes(dec: &SymmetricDecomposition) -> Vec<BigUint> {
    let f1 = dec.f1();
    let prod = (f1.at_one() * f1.at_minus_one()).abs();
    let mut out = vec![BigUint::from(2u32)];
    let fac = crate::arith::factor_integer(&prod);
    for p in fac.prime_list() {
        if p != out[0] {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::phi_m;

    fn lehmer() -> IntPoly {
        IntPoly::from_desc_i64s(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    #[test]
    fn c0() {
        let s3 = IntPoly::from_desc_i64s(&[1, -3, -1, 5, -1, -3, 1]);
        let f = &(&s3 * &phi_m(10).pow(2)) * &phi_m(1).pow(8);
        assert!(check_c0(&f, 3, 19));
        assert!(check_c0(&lehmer(), 1, 9));
        assert!(!check_c0(&lehmer(), 3, 7));
    }

    #[test]
    fn c1() {
        let l20 = IntPoly::from_desc_i64s(&[
            1, -1, 0, 0, 0, -1, 1, 0, 0, -1, 1, -1, 0, 0, 1, -1, 0, 0, 0, -1, 1,
        ]);
        let r = check_c1(&l20);
        assert_eq!(
            (r.f_at_1.clone(), r.f_at_minus1.clone()),
            (BigInt::from(-1), BigInt::from(11))
        );
        assert!(!r.holds);
        assert!(check_c1(&lehmer()).holds);
        assert!(check_c1(&phi_m(12)).holds);
    }

    #[test]
    fn two_adic() {
        let c = |t: i64| two_adic_class(&BigInt::from(t)).unwrap();
        assert_eq!(
            c(1),
            TwoAdicClass {
                valuation: 0,
                unit_mod8: 1
            }
        );
        assert!(in_unit_disc_classes(c(1)));
        assert_eq!(
            c(-3),
            TwoAdicClass {
                valuation: 0,
                unit_mod8: 5
            }
        );
        assert!(in_unit_disc_classes(c(-3)));
        assert_eq!(
            c(12),
            TwoAdicClass {
                valuation: 2,
                unit_mod8: 3
            }
        );
        assert!(!in_unit_disc_classes(c(12)));
        assert_eq!(two_adic_class(&BigInt::zero()), Err(LocalError::ZeroInput));
    }

    #[test]
    fn local_existence() {
        let three = BigUint::from(3u32);
        for p in [2u32, 3, 5, 13] {
            assert!(local_even_unimodular_exists(&phi_m(12), &BigUint::from(p)).unwrap());
        }
        assert!(!local_even_unimodular_exists(&phi_m(3), &three).unwrap());
        assert!(local_even_unimodular_exists(&(&phi_m(3) * &phi_m(1).pow(2)), &three).unwrap());
    }
}
