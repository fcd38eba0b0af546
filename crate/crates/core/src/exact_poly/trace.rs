//! The trace polynomial `R` of a palindromic `S`: `S(X) = X^n R(X + 1/X)`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{is_palindromic, IntPoly, PolyError};

/// Coefficients of `X^{n-k} (X^2 + 1)^k` for `k = 0..=n`, each of length `2n + 1`.
fn basis(n: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::with_capacity(n + 1);
    let mut pw = vec![BigInt::from(1)];
    for k in 0..=n {
        let mut v = vec![BigInt::zero(); 2 * n + 1];
        for (i, c) in pw.iter().enumerate() {
            v[n - k + i] = c.clone();
        }
        out.push(v);
        let mut next = vec![BigInt::zero(); pw.len() + 2];
        for (i, c) in pw.iter().enumerate() {
            next[i] += c;
            next[i + 2] += c;
        }
        pw = next;
    }
    out
}

/// Solves the unitriangular system in the basis `X^{n-k}(X^2+1)^k`.
pub fn trace_poly(s: &IntPoly) -> Result<IntPoly, PolyError> {
    if s.is_zero() || s.deg() % 2 == 1 || !is_palindromic(s) {
        return Err(PolyError::NotSymmetric);
    }
    let n = s.deg() / 2;
    let b = basis(n);
    let mut t = s.coeffs().to_vec();
    let mut r = vec![BigInt::zero(); n + 1];
    for k in (0..=n).rev() {
        let c = t[n + k].clone();
        if c.is_zero() {
            continue;
        }
        for (ti, bi) in t.iter_mut().zip(b[k].iter()) {
            *ti -= &c * bi;
        }
        r[k] = c;
    }
    if t.iter().any(|c| !c.is_zero()) {
        return Err(PolyError::NotSymmetric);
    }
    Ok(IntPoly::new(r))
}

/// `S(X) = X^n R(X + 1/X)` with `n = deg R`.
pub fn inverse_trace_poly(r: &IntPoly) -> IntPoly {
    if r.is_zero() {
        return IntPoly::zero();
    }
    let n = r.deg();
    let b = basis(n);
    let mut s = vec![BigInt::zero(); 2 * n + 1];
    for (k, c) in r.coeffs().iter().enumerate() {
        for (si, bi) in s.iter_mut().zip(b[k].iter()) {
            *si += c * bi;
        }
    }
    IntPoly::new(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_trace() {
        let s3 = IntPoly::from_desc_i64s(&[1, -3, -1, 5, -1, -3, 1]);
        let r = trace_poly(&s3).unwrap();
        assert_eq!(r, IntPoly::from_desc_i64s(&[1, -3, -4, 11]));
        assert_eq!(inverse_trace_poly(&r), s3);
    }

    #[test]
    fn small_cases() {
        assert_eq!(
            trace_poly(&IntPoly::from_i64s(&[1, 0, 1])).unwrap(),
            IntPoly::x()
        );
        assert_eq!(
            inverse_trace_poly(&IntPoly::x()),
            IntPoly::from_i64s(&[1, 0, 1])
        );
        assert_eq!(
            trace_poly(&IntPoly::from_i64s(&[1, 1, 0])),
            Err(PolyError::NotSymmetric)
        );
        assert_eq!(
            trace_poly(&IntPoly::from_i64s(&[-1, 0, 1])),
            Err(PolyError::NotSymmetric)
        );
    }
}
