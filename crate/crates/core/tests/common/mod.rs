//! Independent oracles. None of these call into the library's algorithms;
//! they use textbook methods that are slow but easy to trust.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use salemk3::exact_poly::IntPoly;

/// Determinant of the Sylvester matrix (rows of `f` first) by fraction-free
/// Bareiss elimination, which equals `lc(f)^{deg g} prod g(roots of f)`.
pub fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (m, n) = (f.deg(), g.deg());
    if m == 0 {
        return f.lc().pow(n as u32);
    }
    if n == 0 {
        return g.lc().pow(m as u32);
    }
    let size = m + n;
    let mut a = vec![vec![BigInt::zero(); size]; size];
    let fd: Vec<BigInt> = f.coeffs().iter().rev().cloned().collect();
    let gd: Vec<BigInt> = g.coeffs().iter().rev().cloned().collect();
    for i in 0..n {
        for (j, c) in fd.iter().enumerate() {
            a[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in gd.iter().enumerate() {
            a[n + i][i + j] = c.clone();
        }
    }
    bareiss_det(a)
}

pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Power sums `p_1..=p_count` of the roots of a monic polynomial, by Newton's identities.
pub fn power_sums(f: &IntPoly, count: usize) -> Vec<BigInt> {
    let n = f.deg();
    // e-coefficients: f = X^n + c[1] X^{n-1} + ... + c[n].
    let c: Vec<BigInt> = (0..=n).map(|i| f.coeff(n - i)).collect();
    let mut p: Vec<BigInt> = vec![BigInt::zero(); count + 1];
    for k in 1..=count {
        let mut acc = if k <= n {
            BigInt::from(k) * &c[k]
        } else {
            BigInt::zero()
        };
        for i in 1..k.min(n + 1) {
            acc += &c[i] * &p[k - i];
        }
        p[k] = -acc;
    }
    p.remove(0);
    p
}

fn horner_f64(f: &IntPoly, x: f64) -> f64 {
    f.coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap())
}

/// Largest real root above 1, by float bisection; assumes exactly one sign change there.
pub fn largest_root_f64(f: &IntPoly) -> f64 {
    let bound = 1.0
        + f.coeffs()
            .iter()
            .map(|c| c.abs().to_f64().unwrap())
            .sum::<f64>();
    let (mut lo, mut hi) = (1.0 + 1e-12, bound);
    let s_hi = horner_f64(f, hi).signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if horner_f64(f, mid).signum() == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn eval_rat(f: &IntPoly, x: &BigRational) -> BigRational {
    f.coeffs().iter().rev().fold(BigRational::zero(), |acc, c| {
        acc * x + BigRational::from_integer(c.clone())
    })
}

/// Checks `S(x) = x^n R(x + 1/x)` at several rational points.
pub fn trace_identity_holds(s: &IntPoly, r: &IntPoly) -> bool {
    let n = r.deg() as i32;
    [(2, 1), (3, 2), (-5, 3), (7, 11), (1, 4)]
        .iter()
        .all(|&(a, b)| {
            let x = BigRational::new(BigInt::from(a), BigInt::from(b));
            let t = &x + x.recip();
            eval_rat(s, &x) == x.pow(n) * eval_rat(r, &t)
        })
}

/// Dense polynomials over `F_p` for small `p`, ascending coefficients.
pub mod small_fp {
    pub type P = Vec<u64>;

    pub fn trim(mut a: P) -> P {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn from_int(f: &salemk3::exact_poly::IntPoly, p: u64) -> P {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        let pb = num_bigint::BigInt::from(p);
        trim(
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().unwrap())
                .collect(),
        )
    }

    fn inv(a: u64, p: u64) -> u64 {
        let (mut r, mut b, mut e) = (1u128, a as u128, p as u128 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u128;
            }
            b = b * b % p as u128;
            e >>= 1;
        }
        r as u64
    }

    pub fn rem(a: &P, b: &P, p: u64) -> P {
        let mut a = trim(a.clone());
        let b = trim(b.clone());
        let lead = inv(*b.last().unwrap(), p);
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let q = a.last().unwrap() * lead % p;
            for (i, c) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - q * c % p) % p;
            }
            a = trim(a);
        }
        a
    }

    pub fn mulmod(a: &P, b: &P, m: &P, p: u64) -> P {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn gcd(a: &P, b: &P, p: u64) -> P {
        let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        if let Some(&l) = a.last() {
            let li = inv(l, p);
            a.iter_mut().for_each(|c| *c = *c * li % p);
        }
        a
    }

    /// Rabin-style test: no factor of degree `<= n/2` divides `f`.
    pub fn is_irreducible(f: &P, p: u64) -> bool {
        let n = f.len() - 1;
        if n <= 1 {
            return n == 1;
        }
        let mut xp = vec![0, 1];
        for _ in 1..=n / 2 {
            // xp <- xp^p mod f
            let mut acc = vec![1u64];
            let mut base = xp.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, f, p);
                }
                base = mulmod(&base, &base, f, p);
                e >>= 1;
            }
            xp = acc;
            let mut diff = xp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            if gcd(&diff, f, p).len() > 1 {
                return false;
            }
        }
        true
    }

    /// `h = h(0)^{-1} X^n h(1/X)` for monic `h` with `h(0) != 0`.
    pub fn is_self_reciprocal(h: &P, p: u64) -> bool {
        let c0 = inv(h[0], p);
        let rev: P = h.iter().rev().map(|c| c * c0 % p).collect();
        &rev == h
    }

    pub fn divides(d: &P, f: &P, p: u64) -> bool {
        rem(f, d, p).is_empty()
    }
}

/// `Phi_m(x)` at an integer point via the Moebius product over divisors.
pub fn cyclotomic_value(m: u64, x: i64) -> BigRational {
    let mut acc = BigRational::one();
    for d in (1..=m).filter(|d| m.is_multiple_of(*d)) {
        let v = BigRational::from_integer(BigInt::from(x).pow(d as u32) - 1);
        match moebius(m / d) {
            1 => acc *= v,
            -1 => acc /= v,
            _ => {}
        }
    }
    acc
}

fn moebius(mut n: u64) -> i8 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

pub fn gcd_int(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}
