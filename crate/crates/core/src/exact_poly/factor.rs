//! Factorization in Z[X]: Yun squarefree decomposition, then for each part a
//! modular factorization at a small good prime, quadratic Hensel lifting
//! along a product tree, and exhaustive subset recombination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{gcd, IntPoly};
use crate::arith::primes_below;
use crate::modp::dense;
use crate::modp::field::{PrimeField, SmallField};

/// `unit * content * prod factors^mult` equals the input. Factors are
/// primitive with positive leading coefficient, irreducible over Q, pairwise
/// distinct and sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationZ {
    pub unit: i8,
    pub content: BigInt,
    pub factors: Vec<(IntPoly, usize)>,
}

impl FactorizationZ {
    pub fn product(&self) -> IntPoly {
        let mut acc = IntPoly::constant(&self.content * BigInt::from(self.unit));
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m as u32);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1 && self.content.is_one()
    }
}

pub fn factor_over_z(f: &IntPoly) -> FactorizationZ {
    assert!(!f.is_zero(), "factorization of the zero polynomial");
    let unit: i8 = if f.lc().is_negative() { -1 } else { 1 };
    let content = f.content();
    let g = f.primitive_part();
    let mut factors = Vec::new();
    for (part, mult) in yun(&g) {
        for h in zassenhaus(&part) {
            factors.push((h, mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    FactorizationZ {
        unit,
        content,
        factors,
    }
}

/// Squarefree decomposition of a primitive polynomial with positive leading
/// coefficient; parts are primitive, pairwise coprime and nonconstant.
fn yun(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative();
    let b = gcd(f, &df).primitive_part();
    let mut c = f.div_exact(&b).expect("gcd divides f");
    let mut d = &df.div_exact(&b).expect("gcd divides f'") - &c.derivative();
    let mut i = 1;
    while c.deg() > 0 {
        let a = gcd(&c, &d).primitive_part();
        c = c.div_exact(&a).expect("gcd divides c");
        d = &d.div_exact(&a).expect("gcd divides d") - &c.derivative();
        if a.deg() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn to_field(k: &SmallField, f: &IntPoly) -> Vec<u64> {
    dense::trim(k, f.coeffs().iter().map(|c| k.embed_bigint(c)).collect())
}

/// Subset sums of the modular degree pattern.
fn achievable_degrees(pattern: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0]);
    for &d in pattern {
        let shifted: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(shifted);
    }
    sums
}

const PRIME_TRIALS: usize = 8;

/// Irreducible factors of a squarefree primitive `f` with positive leading
/// coefficient.
fn zassenhaus(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.lc();
    let mut best: Option<(SmallField, Vec<u64>, usize)> = None;
    let mut allowed: Option<BTreeSet<usize>> = None;
    let mut tried = 0;
    for p in primes_below(1 << 20).into_iter().skip(1) {
        if tried == PRIME_TRIALS {
            break;
        }
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let k = SmallField::new(p);
        let fp = dense::monic(&k, &to_field(&k, f));
        if !dense::is_one(&k, &dense::gcd(&k, &fp, &dense::derivative(&k, &fp))) {
            continue;
        }
        tried += 1;
        let pattern = dense::degree_pattern(&k, &fp);
        let sums = achievable_degrees(&pattern);
        allowed = Some(match allowed {
            None => sums,
            Some(a) => a.intersection(&sums).copied().collect(),
        });
        if best.as_ref().is_none_or(|b| pattern.len() < b.2) {
            best = Some((k, fp, pattern.len()));
        }
        if allowed.as_ref().is_some_and(|a| a.len() <= 2) {
            // only 0 and n remain
            return vec![f.clone()];
        }
    }
    let (k, fp, _) = best.expect("a good prime exists below 2^20 for the degrees handled here");
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let modular: Vec<Vec<u64>> = dense::factor_monic(&k, &fp, &mut rng)
        .into_iter()
        .map(|(g, _)| g)
        .collect();
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let p = BigInt::from(k.p);
    let bound = coefficient_bound(f);
    let mut modulus = p.clone();
    while modulus <= &bound * 2 + 1 {
        modulus = &modulus * &modulus;
    }
    let lifted = hensel_tree(f, &modular, &k, &modulus);
    recombine(f, lifted, &modulus, allowed.unwrap_or_default())
}

/// `|lc f| * 2^n * ||f||_2`, rounded up: bounds `lc(f)/lc(h) * h` for every
/// factor `h` of `f`.
fn coefficient_bound(f: &IntPoly) -> BigInt {
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let root = norm2.sqrt() + 1;
    f.lc().abs() * (BigInt::one() << f.deg()) * root
}

// Polynomial arithmetic modulo an integer `m`, residues kept in [0, m).

fn reduce(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v.iter().map(|c| c.mod_floor(m)).collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn add_m(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect();
    reduce(&v, m)
}

fn sub_m(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect();
    reduce(&v, m)
}

fn mul_m(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    reduce(&v, m)
}

/// Division by a monic `d` modulo `m`.
fn divrem_monic_m(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    debug_assert!(d.last().is_some_and(One::is_one));
    if a.len() < d.len() {
        return (Vec::new(), a.to_vec());
    }
    let dd = d.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].mod_floor(m);
        if !c.is_zero() {
            for (i, dc) in d.iter().enumerate() {
                r[k + i] = (&r[k + i] - &c * dc).mod_floor(m);
            }
        }
        q[k] = c;
    }
    r.truncate(dd);
    (reduce(&q, m), reduce(&r, m))
}

fn lift_field(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// One quadratic Hensel step: from `f = g h (mod m)`, `s g + t h = 1 (mod m)`
/// with `h` monic, to the same relations modulo `m^2`.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> [Vec<BigInt>; 4] {
    let m2 = m * m;
    let e = sub_m(f, &mul_m(g, h, &m2), &m2);
    let (q, r) = divrem_monic_m(&mul_m(s, &e, &m2), h, &m2);
    let g2 = add_m(&add_m(g, &mul_m(t, &e, &m2), &m2), &mul_m(&q, g, &m2), &m2);
    let h2 = add_m(h, &r, &m2);
    let one = [BigInt::one()];
    let b = sub_m(
        &add_m(&mul_m(s, &g2, &m2), &mul_m(t, &h2, &m2), &m2),
        &one,
        &m2,
    );
    let (c, d) = divrem_monic_m(&mul_m(s, &b, &m2), &h2, &m2);
    let s2 = sub_m(s, &d, &m2);
    let t2 = sub_m(
        &sub_m(t, &mul_m(t, &b, &m2), &m2),
        &mul_m(&c, &g2, &m2),
        &m2,
    );
    [g2, h2, s2, t2]
}

/// Lifts `f = lc(f) * prod factors (mod p)` to monic factors modulo `modulus`,
/// a power `p^(2^j)`.
fn hensel_tree(
    f: &IntPoly,
    factors: &[Vec<u64>],
    k: &SmallField,
    modulus: &BigInt,
) -> Vec<Vec<BigInt>> {
    let fm = reduce(f.coeffs(), modulus);
    split_lift(&fm, factors, k, modulus)
}

fn split_lift(
    f: &[BigInt],
    factors: &[Vec<u64>],
    k: &SmallField,
    modulus: &BigInt,
) -> Vec<Vec<BigInt>> {
    let lc = f.last().expect("nonzero").clone();
    if factors.len() == 1 {
        let inv = mod_inverse(&lc, modulus);
        return vec![reduce(
            &f.iter().map(|c| c * &inv).collect::<Vec<_>>(),
            modulus,
        )];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let prod = |fs: &[Vec<u64>]| {
        fs.iter()
            .fold(vec![k.one()], |acc, g| dense::mul(k, &acc, g))
    };
    let a = prod(left);
    let b = prod(right);
    let lc_p = k.embed_bigint(&lc);
    let g0 = dense::scale(k, &a, &lc_p);
    let (one, s0, t0) = dense::xgcd(k, &g0, &b);
    debug_assert!(dense::is_one(k, &one), "modular factors are coprime");
    let p = BigInt::from(k.p);
    let (mut g, mut h, mut s, mut t) = (
        lift_field(&g0),
        lift_field(&b),
        lift_field(&s0),
        lift_field(&t0),
    );
    let mut m = p;
    while &m < modulus {
        let fm = reduce(f, &(&m * &m));
        [g, h, s, t] = hensel_step(&fm, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    debug_assert!(&m == modulus);
    let mut out = split_lift(&g, left, k, modulus);
    out.extend(split_lift(&h, right, k, modulus));
    out
}

fn symmetric_lift(v: &[BigInt], m: &BigInt) -> IntPoly {
    let half: BigInt = m >> 1;
    IntPoly::new(
        v.iter()
            .map(|c| if c > &half { c - m } else { c.clone() })
            .collect(),
    )
}

/// Tries subsets of the lifted factors in increasing size; each candidate is
/// `pp(lc(f) * prod subset)` in symmetric residues, accepted on exact division.
fn recombine(
    f: &IntPoly,
    lifted: Vec<Vec<BigInt>>,
    modulus: &BigInt,
    allowed: BTreeSet<usize>,
) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut remaining = lifted;
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| remaining[i].len() - 1).sum();
            if allowed.is_empty() || allowed.contains(&deg) {
                let lcg = reduce(&[g.lc()], modulus);
                let prod = idx
                    .iter()
                    .fold(lcg, |acc, &i| mul_m(&acc, &remaining[i], modulus));
                let cand = symmetric_lift(&prod, modulus).primitive_part();
                if let Some(q) = g.div_exact(&cand) {
                    out.push(cand);
                    g = q;
                    for &i in idx.iter().rev() {
                        remaining.remove(i);
                    }
                    continue 'outer;
                }
            }
            // next combination in lexicographic order
            let mut i = size;
            loop {
                if i == 0 {
                    size += 1;
                    continue 'outer;
                }
                i -= 1;
                if idx[i] < r - size + i {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    if g.deg() > 0 {
        out.push(g.primitive_part());
    }
    out
}

/// Degree pattern of `f mod p` for squarefree reductions, used by
/// irreducibility cross-checks.
pub fn modular_degree_pattern(f: &IntPoly, p: u64) -> Option<Vec<usize>> {
    let k = SmallField::new(p);
    let fp = to_field(&k, f);
    if fp.len() != f.coeffs().len() {
        return None;
    }
    let fp = dense::monic(&k, &fp);
    if !dense::is_one(&k, &dense::gcd(&k, &fp, &dense::derivative(&k, &fp))) {
        return None;
    }
    Some(dense::degree_pattern(&k, &fp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi10() -> IntPoly {
        IntPoly::from_i64s(&[1, -1, 1, -1, 1])
    }

    #[test]
    fn constructed_powers() {
        let xm1 = IntPoly::from_i64s(&[-1, 1]);
        let f = &phi10().pow(2) * &xm1.pow(8);
        let fac = factor_over_z(&f);
        assert_eq!(fac.factors, vec![(xm1, 8), (phi10(), 2)]);
        assert_eq!(fac.product(), f);
    }

    #[test]
    fn x4_minus_1() {
        let fac = factor_over_z(&IntPoly::from_i64s(&[-1, 0, 0, 0, 1]));
        let polys: Vec<_> = fac.factors.iter().map(|(f, _)| f.clone()).collect();
        assert_eq!(
            polys,
            vec![
                IntPoly::from_i64s(&[-1, 1]),
                IntPoly::from_i64s(&[1, 1]),
                IntPoly::from_i64s(&[1, 0, 1])
            ]
        );
    }

    #[test]
    fn lehmer_irreducible() {
        let s = IntPoly::from_desc_i64s(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        assert!(factor_over_z(&s).is_irreducible());
    }

    #[test]
    fn needs_recombination() {
        // x^4 + 1 splits into quadratics modulo every prime
        let f = IntPoly::from_i64s(&[1, 0, 0, 0, 1]);
        assert!(factor_over_z(&f).is_irreducible());
        // (x^4+1)(x^4+x^3+x^2+x+1)(2x^2-3)
        let g = &(&f * &IntPoly::from_i64s(&[1, 1, 1, 1, 1])) * &IntPoly::from_i64s(&[-3, 0, 2]);
        let fac = factor_over_z(&g);
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.product(), g);
    }

    #[test]
    fn content_and_sign() {
        let f = IntPoly::from_i64s(&[6, 0, -6]);
        let fac = factor_over_z(&f);
        assert_eq!(fac.unit, -1);
        assert_eq!(fac.content, BigInt::from(6));
        assert_eq!(fac.product(), f);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // minimal polynomial of sqrt2 + sqrt3 + sqrt5, degree 8
        let f = IntPoly::from_i64s(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
        assert!(factor_over_z(&f).is_irreducible());
        let sq = &f * &IntPoly::from_i64s(&[-2, 0, 1]);
        assert_eq!(factor_over_z(&sq).factors.len(), 2);
    }
}
