//! Dense polynomial algorithms over a prime field: arithmetic, gcds and
//! complete factorization (squarefree, distinct-degree, equal-degree).
//!
//! Polynomials are ascending coefficient vectors without trailing zeros.

use num_bigint::BigUint;
use num_traits::One;
use rand_chacha::ChaCha8Rng;

use super::field::PrimeField;

pub(crate) type Poly<F> = Vec<<F as PrimeField>::E>;

pub(crate) fn trim<F: PrimeField>(k: &F, mut v: Poly<F>) -> Poly<F> {
    while v.last().is_some_and(|c| k.is_zero(c)) {
        v.pop();
    }
    v
}

pub(crate) fn deg<T>(a: &[T]) -> usize {
    a.len().saturating_sub(1)
}

pub(crate) fn is_one<F: PrimeField>(k: &F, a: &Poly<F>) -> bool {
    a.len() == 1 && a[0] == k.one()
}

pub(crate) fn add<F: PrimeField>(k: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let n = a.len().max(b.len());
    let z = k.zero();
    trim(
        k,
        (0..n)
            .map(|i| k.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect(),
    )
}

pub(crate) fn sub<F: PrimeField>(k: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let n = a.len().max(b.len());
    let z = k.zero();
    trim(
        k,
        (0..n)
            .map(|i| k.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect(),
    )
}

pub(crate) fn scale<F: PrimeField>(k: &F, a: &Poly<F>, c: &F::E) -> Poly<F> {
    trim(k, a.iter().map(|x| k.mul(x, c)).collect())
}

pub(crate) fn mul<F: PrimeField>(k: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] = k.add(&v[i + j], &k.mul(x, y));
        }
    }
    trim(k, v)
}

pub(crate) fn divrem<F: PrimeField>(k: &F, a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let db = b.len() - 1;
    let inv = k.inv(b.last().unwrap());
    let mut r = a.clone();
    let mut q = vec![k.zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = k.mul(&r[i + db], &inv);
        if k.is_zero(&c) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] = k.sub(&r[i + j], &k.mul(&c, y));
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(k, q), trim(k, r))
}

pub(crate) fn rem<F: PrimeField>(k: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    divrem(k, a, b).1
}

pub(crate) fn monic<F: PrimeField>(k: &F, a: &Poly<F>) -> Poly<F> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => scale(k, a, &k.inv(lc)),
    }
}

pub(crate) fn gcd<F: PrimeField>(k: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(k, &x, &y);
        x = y;
        y = r;
    }
    monic(k, &x)
}

/// `(g, s, t)` with `s a + t b = g = gcd(a, b)` monic.
pub(crate) fn xgcd<F: PrimeField>(k: &F, a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![k.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![k.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(k, &r0, &r1);
        let s2 = sub(k, &s0, &mul(k, &q, &s1));
        let t2 = sub(k, &t0, &mul(k, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => (Vec::new(), s0, t0),
        Some(lc) => {
            let inv = k.inv(lc);
            (
                scale(k, &r0, &inv),
                scale(k, &s0, &inv),
                scale(k, &t0, &inv),
            )
        }
    }
}

pub(crate) fn mulmod<F: PrimeField>(k: &F, a: &Poly<F>, b: &Poly<F>, m: &Poly<F>) -> Poly<F> {
    rem(k, &mul(k, a, b), m)
}

pub(crate) fn powmod<F: PrimeField>(k: &F, base: &Poly<F>, e: &BigUint, m: &Poly<F>) -> Poly<F> {
    let mut result = rem(k, &vec![k.one()], m);
    let b = rem(k, base, m);
    for i in (0..e.bits()).rev() {
        result = mulmod(k, &result, &result, m);
        if e.bit(i) {
            result = mulmod(k, &result, &b, m);
        }
    }
    result
}

pub(crate) fn derivative<F: PrimeField>(k: &F, a: &Poly<F>) -> Poly<F> {
    trim(
        k,
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(c, &k.embed_u64(i as u64)))
            .collect(),
    )
}

fn x_poly<F: PrimeField>(k: &F) -> Poly<F> {
    vec![k.zero(), k.one()]
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime
/// squarefree monic parts with their multiplicities.
pub(crate) fn squarefree_decomposition<F: PrimeField>(k: &F, f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let mut out = Vec::new();
    if deg(f) == 0 {
        return out;
    }
    let d = derivative(k, f);
    let mut c = gcd(k, f, &d);
    let mut w = divrem(k, f, &c).0;
    let mut i = 1;
    while !is_one(k, &w) {
        let y = gcd(k, &w, &c);
        let z = divrem(k, &w, &y).0;
        if !is_one(k, &z) {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = divrem(k, &c, &w).0;
    }
    if !is_one(k, &c) {
        // c is a p-th power; its root over F_p takes every p-th coefficient
        let p = k
            .small_modulus()
            .expect("p-th powers only arise when deg >= p") as usize;
        let root: Poly<F> = c.iter().step_by(p).cloned().collect();
        for (g, j) in squarefree_decomposition(k, &root) {
            out.push((g, j * p));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial.
pub(crate) fn distinct_degree<F: PrimeField>(k: &F, f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let p = k.modulus();
    let x = x_poly(k);
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = rem(k, &x, &g);
    let mut d = 0;
    while deg(&g) >= 2 * (d + 1) {
        d += 1;
        h = powmod(k, &h, &p, &g);
        let t = gcd(k, &sub(k, &h, &x), &g);
        if !is_one(k, &t) {
            g = divrem(k, &g, &t).0;
            h = rem(k, &h, &g);
            out.push((t, d));
        }
    }
    if deg(&g) > 0 {
        let n = deg(&g);
        out.push((g, n));
    }
    out
}

fn random_poly<F: PrimeField>(k: &F, below: usize, rng: &mut ChaCha8Rng) -> Poly<F> {
    loop {
        let v = trim(k, (0..below).map(|_| k.random(rng)).collect());
        if deg(&v) >= 1 {
            return v;
        }
    }
}

fn brute_force_roots<F: PrimeField>(k: &F, f: &Poly<F>, p: u64) -> Vec<Poly<F>> {
    let mut out = Vec::new();
    for a in 0..p {
        let x = k.embed_u64(a);
        let val = f
            .iter()
            .rev()
            .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, &x), c));
        if k.is_zero(&val) {
            out.push(vec![k.neg(&x), k.one()]);
        }
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus) of a product of distinct monic
/// irreducibles of degree `d`.
pub(crate) fn equal_degree<F: PrimeField>(
    k: &F,
    f: &Poly<F>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Poly<F>> {
    let n = deg(f);
    if n == d {
        return vec![f.clone()];
    }
    if d == 1 && n <= 3 {
        if let Some(p) = k.small_modulus().filter(|&p| p < 1 << 16) {
            return brute_force_roots(k, f, p);
        }
    }
    let p = k.modulus();
    let two = BigUint::from(2u32);
    let exponent = (p.pow(d as u32) - BigUint::one()) / &two;
    loop {
        let a = random_poly(k, n, rng);
        let mut g = gcd(k, &a, f);
        if is_one(k, &g) {
            let b = if p == two {
                let mut acc = a.clone();
                let mut t = a.clone();
                for _ in 1..d {
                    t = mulmod(k, &t, &t, f);
                    acc = add(k, &acc, &t);
                }
                acc
            } else {
                sub(k, &powmod(k, &a, &exponent, f), &vec![k.one()])
            };
            g = gcd(k, &b, f);
        }
        let dg = deg(&g);
        if dg > 0 && dg < n {
            let h = divrem(k, f, &g).0;
            let mut out = equal_degree(k, &g, d, rng);
            out.extend(equal_degree(k, &monic(k, &h), d, rng));
            return out;
        }
    }
}

/// Canonical factor order: degree, then coefficients from the constant term up.
pub(crate) fn canonical_sort<F: PrimeField>(v: &mut [(Poly<F>, usize)]) {
    v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
}

/// Complete factorization of a monic polynomial into monic irreducibles.
pub(crate) fn factor_monic<F: PrimeField>(
    k: &F,
    f: &Poly<F>,
    rng: &mut ChaCha8Rng,
) -> Vec<(Poly<F>, usize)> {
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(k, f) {
        for (block, d) in distinct_degree(k, &part) {
            for g in equal_degree(k, &block, d, rng) {
                out.push((g, mult));
            }
        }
    }
    canonical_sort::<F>(&mut out);
    out
}

/// Degrees of the irreducible factors of a squarefree monic polynomial,
/// read off the distinct-degree split without equal-degree work.
pub(crate) fn degree_pattern<F: PrimeField>(k: &F, f: &Poly<F>) -> Vec<usize> {
    let mut out = Vec::new();
    for (block, d) in distinct_degree(k, f) {
        for _ in 0..deg(&block) / d {
            out.push(d);
        }
    }
    out.sort_unstable();
    out
}
