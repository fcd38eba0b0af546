//! Real root counting by Sturm sequences evaluated at exact rationals.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{squarefree_part, IntPoly, PolyError, RatInterval};

/// Sign of `f(x)`: evaluates the cleared numerator `sum c_i p^i q^{d-i}`, `q > 0`.
pub fn sign_at(f: &IntPoly, x: &BigRational) -> i8 {
    if f.is_zero() {
        return 0;
    }
    let p = x.numer();
    let q = x.denom();
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::from(1);
    // Horner in p with a running power of q for the lower terms.
    for c in f.coeffs().iter().rev() {
        acc = acc * p + c * &qpow;
        qpow *= q;
    }
    match acc.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// `f, f', -rem(f, f'), ...`; each remainder is taken primitive with its sign
/// preserved, so sign changes match the classical sequence.
fn sturm_sequence(f: &IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.is_zero() || b.deg() == 0 {
            break;
        }
        let mut r = a.pseudo_rem(b);
        let steps = a.deg() - b.deg() + 1;
        if b.lc().is_negative() && steps % 2 == 1 {
            r = -&r;
        }
        if r.is_zero() {
            break;
        }
        let c = r.content();
        seq.push(-&r.div_scalar_exact(&c));
    }
    seq.retain(|p| !p.is_zero());
    seq
}

fn variations(seq: &[IntPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let s = sign_at(p, x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots strictly inside `interval`.
pub fn sturm_count(f: &IntPoly, interval: &RatInterval) -> Result<usize, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let g = squarefree_part(f);
    if sign_at(&g, &interval.lo) == 0 || sign_at(&g, &interval.hi) == 0 {
        return Err(PolyError::EndpointIsRoot);
    }
    if g.deg() == 0 {
        return Ok(0);
    }
    let seq = sturm_sequence(&g);
    let vlo = variations(&seq, &interval.lo);
    let vhi = variations(&seq, &interval.hi);
    Ok(vlo.saturating_sub(vhi))
}

/// A split point strictly inside `(lo, hi)` that is not a root of `g`.
fn split_point(g: &IntPoly, iv: &RatInterval) -> BigRational {
    let w = iv.width();
    for den in 2i64.. {
        for num in 1..den {
            let t = &iv.lo + &w * BigRational::new(num.into(), den.into());
            if sign_at(g, &t) != 0 {
                return t;
            }
        }
    }
    unreachable!()
}

/// Disjoint isolating intervals, ascending, one root each, endpoints non-roots.
pub fn isolate_real_roots(
    f: &IntPoly,
    interval: &RatInterval,
) -> Result<Vec<RatInterval>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let g = squarefree_part(f);
    if sign_at(&g, &interval.lo) == 0 || sign_at(&g, &interval.hi) == 0 {
        return Err(PolyError::EndpointIsRoot);
    }
    if g.deg() == 0 {
        return Ok(Vec::new());
    }
    let seq = sturm_sequence(&g);
    let count = |iv: &RatInterval| variations(&seq, &iv.lo) - variations(&seq, &iv.hi);
    let mut out = Vec::new();
    let mut stack = vec![interval.clone()];
    while let Some(iv) = stack.pop() {
        match count(&iv) {
            0 => {}
            1 => out.push(iv),
            _ => {
                let m = split_point(&g, &iv);
                stack.push(RatInterval::new(iv.lo.clone(), m.clone()));
                stack.push(RatInterval::new(m, iv.hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Shrinks an isolating interval of a squarefree `g` by bisection until its
/// width is at most `width`.
pub(crate) fn refine_root(g: &IntPoly, iv: &RatInterval, width: &BigRational) -> RatInterval {
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let slo = sign_at(g, &lo);
    debug_assert!(
        slo != 0 && sign_at(g, &hi) == -slo,
        "interval must bracket a sign change"
    );
    let two = BigRational::from_integer(2.into());
    while &(&hi - &lo) > width {
        let m = (&lo + &hi) / &two;
        let sm = sign_at(g, &m);
        if sm == 0 {
            return RatInterval::new(m.clone(), m);
        }
        if sm == slo {
            lo = m;
        } else {
            hi = m;
        }
    }
    RatInterval::new(lo, hi)
}
