//! Salem polynomial certification through the trace polynomial, the type
//! 0/1/2 decomposition of symmetric polynomials, and powers of Salem numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact_poly::{
    factor_over_z, gcd, is_palindromic, is_symmetric, isolate_real_roots, reciprocal_star,
    resultant, sturm_count, trace_poly, IntPoly, RatInterval,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NotSalemReason {
    NotMonic,
    NotSymmetric,
    Reducible,
    RootCountMismatch,
    DegreeTooSmall,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SalemError {
    #[error("not a Salem polynomial: {0:?}")]
    NotSalem(NotSalemReason),
    #[error("internal degeneracy: {0}")]
    InternalDegeneracy(String),
    #[error("polynomial is not monic symmetric with constant term ±1")]
    NotSymmetric,
}

/// Evidence that `s` is a Salem polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SalemCertificate {
    pub s: IntPoly,
    pub degree: usize,
    pub trace_r: IntPoly,
    /// Contains `alpha`, width at most `2^-48`.
    pub alpha_interval: RatInterval,
    /// Roots of `trace_r` in `(-2, 2)` and in `(2, B)`.
    pub root_counts: (usize, usize),
    pub s_at_1: BigInt,
    pub s_at_minus1: BigInt,
}

impl SalemCertificate {
    /// `alpha` as a float, for display only.
    pub fn alpha_f64(&self) -> f64 {
        let (lo, hi) = self.alpha_interval.to_f64_pair();
        (lo + hi) / 2.0
    }

    /// Number of conjugate pairs of roots on the unit circle.
    pub fn pair_count(&self) -> usize {
        self.root_counts.0
    }
}

/// `B = 2 + sum |r_i|`, above every real root of `r`.
fn upper_bound(r: &IntPoly) -> BigInt {
    r.coeffs().iter().map(|c| c.abs()).sum::<BigInt>() + 2
}

fn ratio(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn certify_salem(s: &IntPoly) -> Result<SalemCertificate, SalemError> {
    let not = |r| Err(SalemError::NotSalem(r));
    if !s.is_monic() {
        return not(NotSalemReason::NotMonic);
    }
    let d = s.deg();
    if d < 4 {
        return not(NotSalemReason::DegreeTooSmall);
    }
    if d % 2 == 1 || !s.constant_term().is_one() || !is_palindromic(s) {
        return not(NotSalemReason::NotSymmetric);
    }
    if !factor_over_z(s).is_irreducible() {
        return not(NotSalemReason::Reducible);
    }
    let r = trace_poly(s).map_err(|_| SalemError::NotSalem(NotSalemReason::NotSymmetric))?;
    let n = d / 2;
    let b = upper_bound(&r);
    let inner = RatInterval::from_ints(-2, 2);
    let outer = RatInterval::new(ratio(2), BigRational::from_integer(b));
    let mismatch = |_| SalemError::NotSalem(NotSalemReason::RootCountMismatch);
    let c_in = sturm_count(&r, &inner).map_err(mismatch)?;
    let c_out = sturm_count(&r, &outer).map_err(mismatch)?;
    if c_in != n - 1 || c_out != 1 {
        return not(NotSalemReason::RootCountMismatch);
    }
    let t = isolate_real_roots(&r, &outer).map_err(mismatch)?.remove(0);
    let alpha_interval = alpha_interval_from_trace(&r, &t, 48);
    Ok(SalemCertificate {
        s: s.clone(),
        degree: d,
        s_at_1: s.at_one(),
        s_at_minus1: s.at_minus_one(),
        trace_r: r,
        alpha_interval,
        root_counts: (c_in, c_out),
    })
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// Lower and upper rational bounds for `sqrt(q)`, `q >= 0`, within `2^-bits`.
fn sqrt_bounds(q: &BigRational, bits: u32) -> (BigRational, BigRational) {
    let scale = pow2(bits);
    let scaled = (q.numer() * &scale * &scale) / q.denom();
    let root = scaled.sqrt();
    let lo = BigRational::new(root.clone(), scale.clone());
    let hi = BigRational::new(root + 1, scale);
    (lo, hi)
}

/// `alpha = (t + sqrt(t^2 - 4)) / 2` is increasing in `t > 2`, so an interval
/// for the trace root maps to an interval for `alpha`.
fn alpha_interval_from_trace(r: &IntPoly, t: &RatInterval, bits: u32) -> RatInterval {
    let target = BigRational::new(BigInt::one(), pow2(bits));
    let four = ratio(4);
    let two = ratio(2);
    let mut extra = 8;
    loop {
        let w = BigRational::new(BigInt::one(), pow2(bits + extra));
        let tt = crate::exact_poly::refine_root(r, t, &w);
        let (slo, _) = sqrt_bounds(&(&tt.lo * &tt.lo - &four), bits + extra);
        let (_, shi) = sqrt_bounds(&(&tt.hi * &tt.hi - &four), bits + extra);
        let iv = RatInterval::new((&tt.lo + slo) / &two, (&tt.hi + shi) / &two);
        if iv.width() <= target {
            return iv;
        }
        extra += 16;
    }
}

/// Interval of width at most `2^-precision_bits` containing `alpha`.
pub fn salem_value(cert: &SalemCertificate, precision_bits: u32) -> RatInterval {
    let b = upper_bound(&cert.trace_r);
    let outer = RatInterval::new(ratio(2), BigRational::from_integer(b));
    let t = isolate_real_roots(&cert.trace_r, &outer)
        .expect("certified trace polynomial")
        .remove(0);
    alpha_interval_from_trace(&cert.trace_r, &t, precision_bits.max(1))
}

/// Isolating intervals for the traces `delta + 1/delta` of the unit-circle
/// roots of `S`, in descending order; the index of a conjugate pair is its
/// position here.
pub fn unit_circle_traces(cert: &SalemCertificate) -> Vec<RatInterval> {
    let mut v = isolate_real_roots(&cert.trace_r, &RatInterval::from_ints(-2, 2))
        .expect("certified trace polynomial");
    v.reverse();
    v
}

/// Minimal polynomial of `alpha^k`: `prod (X - beta^k)` over the roots of `S`,
/// interpolated from `Res(x0 - Y^k, S)` at `x0 = 0..=d`.
pub fn power_min_poly(cert: &SalemCertificate, k: u32) -> Result<IntPoly, SalemError> {
    assert!(k >= 1, "power must be positive");
    if k == 1 {
        return Ok(cert.s.clone());
    }
    let d = cert.degree;
    let yk = IntPoly::monomial(BigInt::one(), k as usize);
    let values: Vec<BigInt> = (0..=d as i64)
        .map(|x0| resultant(&(&IntPoly::constant(x0.into()) - &yk), &cert.s))
        .collect();
    let p = interpolate(&values).ok_or_else(|| {
        SalemError::InternalDegeneracy("interpolated power polynomial is not integral".into())
    })?;
    if gcd(&p, &p.derivative()).deg() > 0 {
        return Err(SalemError::InternalDegeneracy(format!(
            "power {k} has a repeated root"
        )));
    }
    certify_salem(&p)
        .map_err(|e| SalemError::InternalDegeneracy(format!("power {k} is not Salem: {e}")))?;
    Ok(p)
}

/// The polynomial of degree `< values.len()` through `(i, values[i])`, via
/// forward differences in the falling-factorial basis.
fn interpolate(values: &[BigInt]) -> Option<IntPoly> {
    let mut diffs: Vec<BigInt> = values.to_vec();
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); values.len()];
    // basis = x (x-1) ... (x-j+1)
    let mut basis: Vec<BigInt> = vec![BigInt::one()];
    let mut factorial = BigInt::one();
    for j in 0..values.len() {
        if j > 0 {
            factorial *= j;
            for i in 0..values.len() - j {
                diffs[i] = &diffs[i + 1] - &diffs[i];
            }
            let mut next = vec![BigInt::zero(); basis.len() + 1];
            for (i, c) in basis.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * (j as i64 - 1);
            }
            basis = next;
        }
        let c = BigRational::new(diffs[0].clone(), factorial.clone());
        for (i, b) in basis.iter().enumerate() {
            acc[i] += &c * BigRational::from_integer(b.clone());
        }
    }
    let coeffs: Option<Vec<BigInt>> = acc
        .into_iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect();
    coeffs.map(IntPoly::new)
}

/// `F = (X-1)^{n+} (X+1)^{n-} prod f^{m_f} prod (g g*)^{m_g}` with the `f`
/// symmetric irreducible of even degree and `g != ±g*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetricDecomposition {
    pub n_plus: usize,
    pub n_minus: usize,
    pub type1: Vec<(IntPoly, usize)>,
    /// `(g, g*, multiplicity)`, with `g` the canonically smaller of the two.
    pub type2: Vec<(IntPoly, IntPoly, usize)>,
}

impl SymmetricDecomposition {
    /// `F_1`, the product of the type-1 part with multiplicities.
    pub fn f1(&self) -> IntPoly {
        self.type1.iter().map(|(f, k)| f.pow(*k as u32)).product()
    }

    pub fn reconstruct(&self) -> IntPoly {
        let mut acc = &IntPoly::linear_root(1).pow(self.n_plus as u32)
            * &IntPoly::linear_root(-1).pow(self.n_minus as u32);
        acc = &acc * &self.f1();
        for (g, gs, k) in &self.type2 {
            acc = &acc * &(g * gs).pow(*k as u32);
        }
        acc
    }

    /// The node set: `X-1` if `n+ > 0`, `X+1` if `n- > 0`, then type-1 factors.
    pub fn nodes(&self) -> Vec<IntPoly> {
        let mut v = Vec::new();
        if self.n_plus > 0 {
            v.push(IntPoly::linear_root(1));
        }
        if self.n_minus > 0 {
            v.push(IntPoly::linear_root(-1));
        }
        v.extend(self.type1.iter().map(|(f, _)| f.clone()));
        v
    }

    pub fn multiplicity(&self, f: &IntPoly) -> usize {
        self.type1
            .iter()
            .find(|(g, _)| g == f)
            .map_or(0, |(_, k)| *k)
    }

    /// Half the degree of `F_1`.
    pub fn n1(&self) -> usize {
        self.type1.iter().map(|(f, k)| f.deg() * k).sum::<usize>() / 2
    }
}

pub fn decompose_symmetric(f: &IntPoly) -> Result<SymmetricDecomposition, SalemError> {
    if !f.is_monic() || !f.constant_term().abs().is_one() || !is_symmetric(f).unwrap_or(false) {
        return Err(SalemError::NotSymmetric);
    }
    let fac = factor_over_z(f);
    let mut out = SymmetricDecomposition {
        n_plus: 0,
        n_minus: 0,
        type1: Vec::new(),
        type2: Vec::new(),
    };
    let mut seen_type2: Vec<IntPoly> = Vec::new();
    for (g, k) in &fac.factors {
        if *g == IntPoly::linear_root(1) {
            out.n_plus = *k;
        } else if *g == IntPoly::linear_root(-1) {
            out.n_minus = *k;
        } else {
            let star = reciprocal_star(g).map_err(|_| SalemError::NotSymmetric)?;
            if star == *g {
                out.type1.push((g.clone(), *k));
            } else if !seen_type2.contains(g) {
                seen_type2.push(star.clone());
                out.type2.push((g.clone(), star, *k));
            }
        }
    }
    Ok(out)
}
