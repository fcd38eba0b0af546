//! Signature maps as finite data, their validation, Salem signature maps
//! `tau_{S,z}`, and the search for cyclotomic complements with trivial
//! obstruction group.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::arith::is_square;
use crate::cyclotomic::{enumerate_products, phi_m, phi_values_at_pm1, CyclotomicProduct};
use crate::exact_poly::{is_symmetric, isolate_real_roots, trace_poly, IntPoly, RatInterval};
use crate::local_conditions::check_c1;
use crate::obstruction::{obstruction_group_from, Exactness, ObstructionGraph, PiCache};
use crate::salem::{
    decompose_symmetric, unit_circle_traces, SalemCertificate, SymmetricDecomposition,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("pair index {index} out of range ({count} unit-circle pairs)")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("S * C has degree {found}, expected {expected}")]
    DegreeMismatch { found: usize, expected: usize },
}

/// A real divisor of `F` that a signature map assigns a pair to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Descriptor {
    /// A rational symmetric factor: `X - 1`, `X + 1`, a type-1 factor, or a
    /// product `g g*` of a type-2 pair.
    Rational(IntPoly),
    /// `X^2 - t X + 1` for the `index`-th trace root `t` of `factor` in
    /// `(-2, 2)`, counted in descending order.
    UnitPair { factor: IntPoly, index: usize },
    /// `(X - a)(X - 1/a)` for the `index`-th real trace root with `|t| > 2`,
    /// in descending order.
    RealPair { factor: IntPoly, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureMapSpec {
    pub f: IntPoly,
    pub maximum: (usize, usize),
    pub assignments: Vec<(Descriptor, (usize, usize))>,
}

impl SignatureMapSpec {
    pub fn get(&self, d: &Descriptor) -> Option<(usize, usize)> {
        self.assignments
            .iter()
            .find(|(k, _)| k == d)
            .map(|(_, v)| *v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: char,
    pub detail: String,
}

fn violation(clause: char, detail: impl Into<String>) -> Violation {
    Violation {
        clause,
        detail: detail.into(),
    }
}

/// Counts of trace roots of a type-1 factor: inside `(-2, 2)`, real outside,
/// and non-real conjugate pairs.
fn trace_root_counts(f: &IntPoly) -> (usize, usize, usize) {
    let r = trace_poly(f).expect("type-1 factors are palindromic of even degree");
    let b = BigRational::from_integer(r.coeffs().iter().map(|c| c.abs()).sum::<BigInt>() + 2);
    let two = BigRational::from_integer(2.into());
    let count = |lo: BigRational, hi: BigRational| {
        isolate_real_roots(&r, &RatInterval::new(lo, hi)).map_or(0, |v| v.len())
    };
    let inside = count(-two.clone(), two.clone());
    let outside = count(-b.clone(), -two.clone()) + count(two, b);
    (inside, outside, (r.deg() - inside - outside) / 2)
}

/// The clauses of the characterization of semi-simple signature maps that
/// `spec` violates; empty iff it is a signature map with maximum `spec.maximum`.
pub fn validate_signature_map(spec: &SignatureMapSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    let (r, s) = spec.maximum;
    let f = &spec.f;
    if !f.is_monic() || !is_symmetric(f).unwrap_or(false) {
        out.push(violation(
            'a',
            "associated polynomial is not monic symmetric",
        ));
        return out;
    }
    if f.deg() != r + s {
        out.push(violation(
            'a',
            format!("deg F = {} but r + s = {}", f.deg(), r + s),
        ));
    }
    let Ok(dec) = decompose_symmetric(f) else {
        out.push(violation(
            'a',
            "F does not decompose into symmetric factors",
        ));
        return out;
    };
    let rational = |g: &IntPoly| spec.get(&Descriptor::Rational(g.clone())).unwrap_or((0, 0));
    let mut total = (0, 0);

    for (sign, n) in [(1i64, dec.n_plus), (-1, dec.n_minus)] {
        let lin = IntPoly::linear_root(sign);
        let v = rational(&lin);
        if v.0 + v.1 != n {
            out.push(violation(
                'd',
                format!("{lin} has sum {} but multiplicity {n}", v.0 + v.1),
            ));
        }
        total = (total.0 + v.0, total.1 + v.1);
    }
    for (g, k) in &dec.type1 {
        let v = rational(g);
        total = (total.0 + v.0, total.1 + v.1);
        // each real pair off the circle is forced to (k, k), each non-real
        // trace pair to (2k, 2k); what remains is a sum of even unit-pair values
        let (_, n_real, n_complex) = trace_root_counts(g);
        let forced = k * n_real + 2 * k * n_complex;
        let rest = (v.0.checked_sub(forced), v.1.checked_sub(forced));
        if !matches!(rest, (Some(x), Some(y)) if x % 2 == 0 && y % 2 == 0) {
            out.push(violation(
                'd',
                format!(
                    "{g} assigned {v:?}, incompatible with the forced part ({forced}, {forced})"
                ),
            ));
        }
        if v.0 + v.1 != g.deg() * k {
            out.push(violation(
                'd',
                format!("{g} has sum {} but deg * n_f = {}", v.0 + v.1, g.deg() * k),
            ));
        }
        out.extend(check_refinement(spec, g, *k, v));
    }
    for (g, gs, k) in &dec.type2 {
        let v = rational(&(g * gs));
        let h = g.deg() * k;
        total = (total.0 + v.0, total.1 + v.1);
        if v != (h, h) {
            out.push(violation(
                'e',
                format!("{g} * {gs} must be hyperbolic ({h}, {h}), got {v:?}"),
            ));
        }
    }
    if total != (r, s) {
        out.push(violation(
            'a',
            format!("tau(F) = {total:?} differs from the maximum ({r}, {s})"),
        ));
    }
    for (d, v) in &spec.assignments {
        if v.0 > r || v.1 > s {
            out.push(violation('a', format!("{d:?} exceeds the maximum")));
        }
        let factor = match d {
            Descriptor::Rational(g)
            | Descriptor::UnitPair { factor: g, .. }
            | Descriptor::RealPair { factor: g, .. } => g,
        };
        let known =
            dec.nodes().contains(factor) || dec.type2.iter().any(|(g, gs, _)| g * gs == *factor);
        if !known && *v != (0, 0) {
            out.push(violation(
                'a',
                format!("{factor} does not divide F but is assigned {v:?}"),
            ));
        }
    }
    out
}

/// Clauses (b), (d), (e) on the real-quadratic refinement of a type-1 factor.
fn check_refinement(
    spec: &SignatureMapSpec,
    g: &IntPoly,
    k: usize,
    total: (usize, usize),
) -> Vec<Violation> {
    let mut out = Vec::new();
    let unit: Vec<(usize, (usize, usize))> = spec
        .assignments
        .iter()
        .filter_map(|(d, v)| match d {
            Descriptor::UnitPair { factor, index } if factor == g => Some((*index, *v)),
            _ => None,
        })
        .collect();
    let real: Vec<(usize, (usize, usize))> = spec
        .assignments
        .iter()
        .filter_map(|(d, v)| match d {
            Descriptor::RealPair { factor, index } if factor == g => Some((*index, *v)),
            _ => None,
        })
        .collect();
    if unit.is_empty() && real.is_empty() {
        return out;
    }
    let (n_unit, n_real, n_complex) = trace_root_counts(g);
    for &(i, v) in &real {
        if i >= n_real {
            out.push(violation('a', format!("{g} has no real pair {i}")));
        } else if v != (k, k) {
            out.push(violation(
                'e',
                format!("real pair {i} of {g} must be ({k}, {k}), got {v:?}"),
            ));
        }
    }
    let mut sum = (
        k * n_real + 2 * k * n_complex,
        k * n_real + 2 * k * n_complex,
    );
    for &(i, v) in &unit {
        if i >= n_unit {
            out.push(violation('a', format!("{g} has no unit-circle pair {i}")));
            continue;
        }
        if v.0 % 2 == 1 || v.1 % 2 == 1 || v.0 + v.1 != 2 * k {
            out.push(violation(
                'd',
                format!("unit pair {i} of {g} assigned {v:?}"),
            ));
        }
        sum = (sum.0 + v.0, sum.1 + v.1);
    }
    let mut seen: Vec<usize> = unit.iter().map(|u| u.0).filter(|&i| i < n_unit).collect();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != n_unit {
        out.push(violation(
            'b',
            format!(
                "refinement of {g} covers {} of {n_unit} unit-circle pairs",
                seen.len()
            ),
        ));
    } else if sum != total {
        out.push(violation(
            'b',
            format!("refinement of {g} sums to {sum:?}, factor assigned {total:?}"),
        ));
    }
    out
}

/// The signature map of maximum `(3, d-3)` and polynomial `S` with `(2,0)` on
/// the `z_index`-th unit-circle pair.
pub fn tau_s_z(
    cert: &SalemCertificate,
    z_index: usize,
) -> Result<SignatureMapSpec, SignatureError> {
    let count = cert.pair_count();
    if z_index >= count {
        return Err(SignatureError::IndexOutOfRange {
            index: z_index,
            count,
        });
    }
    let s = &cert.s;
    let d = cert.degree;
    let mut assignments = vec![(Descriptor::Rational(s.clone()), (3, d - 3))];
    assignments.push((
        Descriptor::RealPair {
            factor: s.clone(),
            index: 0,
        },
        (1, 1),
    ));
    for i in 0..count {
        let v = if i == z_index { (2, 0) } else { (0, 2) };
        assignments.push((
            Descriptor::UnitPair {
                factor: s.clone(),
                index: i,
            },
            v,
        ));
    }
    Ok(SignatureMapSpec {
        f: s.clone(),
        maximum: (3, d - 3),
        assignments,
    })
}

/// The decomposition of `S * C` read off from the factors directly.
pub(crate) fn salem_times_cyclotomic(s: &IntPoly, c: &CyclotomicProduct) -> SymmetricDecomposition {
    let mut type1 = vec![(s.clone(), 1)];
    type1.extend(
        c.factors
            .iter()
            .filter(|f| f.0 >= 3)
            .map(|&(m, k)| (phi_m(m), k)),
    );
    SymmetricDecomposition {
        n_plus: c.multiplicity(1),
        n_minus: c.multiplicity(2),
        type1,
        type2: Vec::new(),
    }
}

/// `(F(1), F(-1))` for `F = S * C`.
fn values_at_pm1(s: &IntPoly, c: &CyclotomicProduct) -> (BigInt, BigInt) {
    let (mut a, mut b) = (s.at_one(), s.at_minus_one());
    for &(m, k) in &c.factors {
        let (x, y) = phi_values_at_pm1(m).expect("cyclotomic values agree with their closed forms");
        a *= x.pow(k as u32);
        b *= y.pow(k as u32);
    }
    (a, b)
}

fn c1_holds(a: &BigInt, b: &BigInt, n: usize) -> bool {
    let mut t = a * b;
    if n % 2 == 1 {
        t = -t;
    }
    is_square(&a.abs()) && is_square(&b.abs()) && is_square(&t)
}

#[derive(Debug, Clone, Serialize)]
pub struct SalemMapSearch {
    pub maximum: (usize, usize),
    pub hit: Option<(CyclotomicProduct, ObstructionGraph)>,
    /// Some candidate passed (C0) and (C1) but its rank stayed open because
    /// of Indeterminate edges.
    pub blocked_by_indeterminate: bool,
    pub candidates_examined: usize,
}

/// Searches complements `C` with `F = S C` of degree `3 + s_total`, `(C0)`
/// at `(3, s_total)`, `(C1)`, and `G_F = 0` exactly.
pub fn exists_trivial_obstruction_salem_map(
    cert: &SalemCertificate,
    target_max: (usize, usize),
    m_cap: u64,
    seed: u64,
) -> SalemMapSearch {
    search_with_cache(cert, target_max, m_cap, &PiCache::new(seed))
}

pub(crate) fn search_with_cache(
    cert: &SalemCertificate,
    target_max: (usize, usize),
    m_cap: u64,
    cache: &PiCache,
) -> SalemMapSearch {
    let (r, s_total) = target_max;
    let mut out = SalemMapSearch {
        maximum: target_max,
        hit: None,
        blocked_by_indeterminate: false,
        candidates_examined: 0,
    };
    let total = r + s_total;
    if total < cert.degree || (r as i64 - s_total as i64).rem_euclid(8) != 0 {
        return out;
    }
    let n = total / 2;
    for c in enumerate_products((total - cert.degree) as u64, m_cap, true) {
        out.candidates_examined += 1;
        // F(0) = (-1)^{n+}
        if c.multiplicity(1) % 2 == 1 {
            continue;
        }
        let (a, b) = values_at_pm1(&cert.s, &c);
        if !c1_holds(&a, &b, n) {
            continue;
        }
        let dec = salem_times_cyclotomic(&cert.s, &c);
        let Ok(graph) = obstruction_group_from(&dec, dec.n_plus, dec.n_minus, cache) else {
            continue;
        };
        if graph.gf_rank == 0 {
            out.hit = Some((c, graph));
            return out;
        }
        if graph.exactness == Exactness::LowerBoundOnly {
            out.blocked_by_indeterminate = true;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PowerVerdict {
    Realizable,
    NotRealizable,
    Inapplicable,
}

/// `F = S Phi_m^k` of degree 22 with `S` and `Phi_m^k` both satisfying (C1)
/// and `G_F != 0`: `tau_z` is realizable for `z` a root of `S` iff
/// `d = 6 (mod 8)`, and for `z` a root of `Phi_m` iff `d = 2 (mod 8)`.
pub fn power_case_rule(
    cert: &SalemCertificate,
    m: u64,
    k: usize,
    z_on_s: bool,
    seed: u64,
) -> Result<PowerVerdict, SignatureError> {
    let c = CyclotomicProduct::from_pairs(&[(m, k)]);
    let found = cert.degree + c.total_degree as usize;
    if found != 22 {
        return Err(SignatureError::DegreeMismatch {
            found,
            expected: 22,
        });
    }
    if m <= 2 && k == 2 {
        return Ok(PowerVerdict::Inapplicable);
    }
    if !check_c1(&cert.s).holds || !check_c1(&c.expand()).holds {
        return Ok(PowerVerdict::Inapplicable);
    }
    let dec = salem_times_cyclotomic(&cert.s, &c);
    let graph = match obstruction_group_from(&dec, dec.n_plus, dec.n_minus, &PiCache::new(seed)) {
        Ok(g) => g,
        Err(_) => return Ok(PowerVerdict::Inapplicable),
    };
    if graph.gf_rank == 0 || graph.exactness != Exactness::Exact {
        return Ok(PowerVerdict::Inapplicable);
    }
    let wanted = if z_on_s { 6 } else { 2 };
    Ok(if cert.degree % 8 == wanted {
        PowerVerdict::Realizable
    } else {
        PowerVerdict::NotRealizable
    })
}

/// Unit-circle pair count and their descending trace intervals, for display.
pub fn pair_traces(cert: &SalemCertificate) -> Vec<(f64, f64)> {
    unit_circle_traces(cert)
        .iter()
        .map(|iv| iv.to_f64_pair())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::salem::certify_salem;

    fn cert(desc: &[i64]) -> SalemCertificate {
        certify_salem(&IntPoly::from_desc_i64s(desc)).unwrap()
    }

    fn lehmer() -> SalemCertificate {
        cert(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    fn s3() -> SalemCertificate {
        cert(&[1, -3, -1, 5, -1, -3, 1])
    }

    #[test]
    fn tau_valid() {
        for i in 0..4 {
            let t = tau_s_z(&lehmer(), i).unwrap();
            assert_eq!(t.maximum, (3, 7));
            assert!(
                validate_signature_map(&t).is_empty(),
                "{:?}",
                validate_signature_map(&t)
            );
        }
        let t = tau_s_z(&s3(), 1).unwrap();
        assert_eq!(t.maximum, (3, 3));
        assert!(validate_signature_map(&t).is_empty());
        assert_eq!(
            tau_s_z(&lehmer(), 99),
            Err(SignatureError::IndexOutOfRange {
                index: 99,
                count: 4
            })
        );
    }

    #[test]
    fn violations() {
        let mut t = tau_s_z(&s3(), 0).unwrap();
        t.assignments[0].1 = (3, 4);
        let v = validate_signature_map(&t);
        assert!(v.iter().any(|x| x.clause == 'a'));
        let mut t = tau_s_z(&s3(), 0).unwrap();
        t.assignments[2].1 = (1, 1);
        let v = validate_signature_map(&t);
        assert!(v.iter().any(|x| x.clause == 'd'));
    }

    #[test]
    fn power_rule() {
        let s = s3();
        assert_eq!(
            power_case_rule(&s, 10, 4, true, 0),
            Ok(PowerVerdict::Realizable)
        );
        assert_eq!(
            power_case_rule(&s, 10, 4, false, 0),
            Ok(PowerVerdict::NotRealizable)
        );
        let s14 = cert(&[1, 0, 0, -1, -1, 0, 0, 1, 0, 0, -1, -1, 0, 0, 1]);
        assert_eq!(
            power_case_rule(&s14, 20, 1, true, 0),
            Ok(PowerVerdict::Realizable)
        );
        assert!(matches!(
            power_case_rule(&s, 10, 3, true, 0),
            Err(SignatureError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn lehmer_search() {
        let r = exists_trivial_obstruction_salem_map(&lehmer(), (3, 19), 66, 0);
        let (c, g) = r.hit.expect("a complement exists");
        assert!([12, 14, 15, 36].iter().any(|&m| c.contains(m)), "{c}");
        assert_eq!(g.gf_rank, 0);
    }
}
