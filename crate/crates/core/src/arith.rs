//! Integer arithmetic: valuations, square tests, p-adic square classes and
//! factorization of the (moderately sized) integers that resultants produce.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_LIMIT: u64 = 10_000;
const POLLARD_BUDGET: u64 = 1 << 21;

/// Primes below `limit`, by a plain sieve.
pub fn primes_below(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(k, _)| k as u64)
        .collect()
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn valuation(n: &BigInt, p: &BigUint) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let mut m = n.magnitude().clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// Splits `n = p^v * u` with `p ∤ u`; `n` must be nonzero.
pub fn split_valuation(n: &BigInt, p: &BigUint) -> (u32, BigInt) {
    let v = valuation(n, p).expect("nonzero input");
    let pv = BigInt::from(p.pow(v));
    (v, n / pv)
}

/// True for 0 and for positive perfect squares.
pub fn is_square(n: &BigInt) -> bool {
    if n.sign() == Sign::Minus {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Legendre symbol (a/p) for an odd prime p.
pub fn legendre(a: &BigInt, p: &BigUint) -> i8 {
    let pi = BigInt::from(p.clone());
    let a = a.mod_floor(&pi).to_biguint().expect("reduced residue");
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    let r = a.modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Whether the nonzero integer `t` is a square in the field of p-adic numbers.
pub fn is_padic_square(t: &BigInt, p: &BigUint) -> bool {
    assert!(!t.is_zero(), "zero has no square class");
    let (v, u) = split_valuation(t, p);
    if v % 2 == 1 {
        return false;
    }
    if *p == BigUint::from(2u32) {
        u.mod_floor(&BigInt::from(8)) == BigInt::one()
    } else {
        legendre(&u, p) == 1
    }
}

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    let mut n = m;
    let mut out = m;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            while n.is_multiple_of(q) {
                n /= q;
            }
            out -= out / q;
        }
        q += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Multiplicative order of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mult_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if a.gcd(&m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % m as u128) as u64;
        k += 1;
    }
    Some(k)
}

/// If `m = q^k` for a prime `q` and `k ≥ 1`, returns `q`.
pub fn prime_power_base(m: u64) -> Option<u64> {
    if m < 2 {
        return None;
    }
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            let mut n = m;
            while n.is_multiple_of(q) {
                n /= q;
            }
            return if n == 1 { Some(q) } else { None };
        }
        q += 1;
    }
    Some(m)
}

fn mulmod64(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn powmod64(mut b: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1 % n;
    b %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod64(r, b, n);
        }
        b = mulmod64(b, b, n);
        e >>= 1;
    }
    r
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const MR_EXTRA: [u64; 16] = [
    41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107,
];

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in MR_BASES.iter() {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for &a in MR_BASES.iter() {
        let mut x = powmod64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod64(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality test: deterministic below 2^64, Miller–Rabin with 28 fixed bases
/// above (a composite passing all of them is not known to exist in range).
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &q in MR_BASES.iter().chain(MR_EXTRA.iter()) {
        if (n % q).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &a in MR_BASES.iter().chain(MR_EXTRA.iter()) {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_brent_u64(n: u64, c: u64, budget: u64) -> Option<u64> {
    let f = |v: u64| (mulmod64(v, v, n) + c) % n;
    let m = 128u64;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let mut x = y;
    let mut ys = y;
    let mut steps = 0;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mulmod64(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += m;
        }
        r *= 2;
        steps += r;
        if steps > budget {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn pollard_brent_big(n: &BigUint, c: u64, budget: u64) -> Option<BigUint> {
    let cc = BigUint::from(c);
    let f = |v: &BigUint| (v * v + &cc) % n;
    let absdiff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let m = 128u64;
    let one = BigUint::one();
    let mut y = BigUint::from(2u32);
    let (mut r, mut q, mut g) = (1u64, one.clone(), one.clone());
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut steps = 0;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (&q * absdiff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        steps += r;
        if steps > budget {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            g = absdiff(&x, &ys).gcd(n);
            if g > one {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

fn find_divisor(n: &BigUint) -> Option<BigUint> {
    for c in 1..=6u64 {
        let d = match n.to_u64() {
            Some(small) => pollard_brent_u64(small, c, POLLARD_BUDGET).map(BigUint::from),
            None => pollard_brent_big(n, c, POLLARD_BUDGET),
        };
        if d.is_some() {
            return d;
        }
    }
    None
}

fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits() as u32;
    for k in (2..=bits).rev() {
        let r = n.nth_root(k);
        if r > BigUint::one() && r.pow(k) == *n {
            return Some((r, k));
        }
    }
    None
}

/// Prime factorization of an integer. Cofactors that resist Pollard–Brent
/// within its budget are kept in `unfactored` rather than guessed at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntFactorization {
    pub sign: i8,
    pub primes: Vec<(BigUint, u32)>,
    pub unfactored: Vec<(BigUint, u32)>,
}

impl IntFactorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }

    pub fn prime_list(&self) -> Vec<BigUint> {
        self.primes.iter().map(|(p, _)| p.clone()).collect()
    }
}

pub fn factor_integer(n: &BigInt) -> IntFactorization {
    let sign = match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    };
    let mut primes: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut unfactored: BTreeMap<BigUint, u32> = BTreeMap::new();
    if sign == 0 {
        return IntFactorization {
            sign,
            primes: vec![],
            unfactored: vec![],
        };
    }
    let mut m = n.magnitude().clone();
    for q in primes_below(TRIAL_LIMIT) {
        if m.is_one() {
            break;
        }
        let qb = BigUint::from(q);
        let mut e = 0;
        loop {
            let (d, r) = m.div_rem(&qb);
            if !r.is_zero() {
                break;
            }
            m = d;
            e += 1;
        }
        if e > 0 {
            *primes.entry(qb).or_insert(0) += e;
        }
    }
    let mut stack = vec![(m, 1u32)];
    while let Some((c, e)) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_probable_prime(&c) {
            *primes.entry(c).or_insert(0) += e;
        } else if let Some((r, k)) = perfect_power(&c) {
            stack.push((r, e * k));
        } else if let Some(d) = find_divisor(&c) {
            let other = &c / &d;
            stack.push((d, e));
            stack.push((other, e));
        } else {
            *unfactored.entry(c).or_insert(0) += e;
        }
    }
    IntFactorization {
        sign,
        primes: primes.into_iter().collect(),
        unfactored: unfactored.into_iter().collect(),
    }
}
