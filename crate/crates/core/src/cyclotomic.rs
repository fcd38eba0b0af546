//! Cyclotomic polynomials, their values at `±1`, and products of cyclotomic
//! polynomials of a prescribed degree.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{prime_power_base, totient};
use crate::exact_poly::{factor_over_z, IntPoly};

/// Largest `m` with `phi(m) <= 20`.
pub const DEFAULT_M_CAP: u64 = 66;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("closed form and evaluation disagree for Phi_{m}: {detail}")]
    Inconsistent { m: u64, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CyclotomicIndex {
    pub m: u64,
    pub phi: u64,
}

impl CyclotomicIndex {
    pub fn new(m: u64) -> Self {
        CyclotomicIndex { m, phi: totient(m) }
    }
}

fn memo() -> &'static RwLock<HashMap<u64, IntPoly>> {
    static TABLE: OnceLock<RwLock<HashMap<u64, IntPoly>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `Phi_m = (X^m - 1) / prod_{d | m, d < m} Phi_d`.
pub fn phi_m(m: u64) -> IntPoly {
    assert!(m >= 1, "cyclotomic index must be positive");
    if let Some(f) = memo().read().expect("memo lock").get(&m) {
        return f.clone();
    }
    let mut f = &IntPoly::monomial(BigInt::one(), m as usize) - &IntPoly::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            f = f.div_exact(&phi_m(d)).expect("Phi_d divides X^m - 1");
        }
    }
    memo().write().expect("memo lock").insert(m, f.clone());
    f
}

/// `(Phi_m(1), Phi_m(-1))`, evaluated and cross-checked against the closed forms.
pub fn phi_values_at_pm1(m: u64) -> Result<(BigInt, BigInt), CyclotomicError> {
    let f = phi_m(m);
    let (at1, atm1) = (f.at_one(), f.at_minus_one());
    if m >= 3 {
        let expected1 = prime_power_base(m).unwrap_or(1);
        let expected_m1 = if m.is_multiple_of(2) {
            prime_power_base(m / 2).unwrap_or(1)
        } else {
            1
        };
        if at1 != BigInt::from(expected1) || atm1 != BigInt::from(expected_m1) {
            return Err(CyclotomicError::Inconsistent {
                m,
                detail: format!("evaluated ({at1}, {atm1}), expected ({expected1}, {expected_m1})"),
            });
        }
    }
    Ok((at1, atm1))
}

/// A multiset of cyclotomic factors, stored as `(m, multiplicity)` sorted by `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CyclotomicProduct {
    pub factors: Vec<(u64, usize)>,
    pub total_degree: u64,
}

impl CyclotomicProduct {
    pub fn empty() -> Self {
        CyclotomicProduct {
            factors: Vec::new(),
            total_degree: 0,
        }
    }

    /// Builds from a list of `(m, multiplicity)` in any order; merges repeats.
    pub fn from_pairs(pairs: &[(u64, usize)]) -> Self {
        let mut map: std::collections::BTreeMap<u64, usize> = Default::default();
        for &(m, k) in pairs {
            if k > 0 {
                *map.entry(m).or_default() += k;
            }
        }
        let factors: Vec<(u64, usize)> = map.into_iter().collect();
        let total_degree = factors.iter().map(|&(m, k)| totient(m) * k as u64).sum();
        CyclotomicProduct {
            factors,
            total_degree,
        }
    }

    pub fn expand(&self) -> IntPoly {
        self.factors
            .iter()
            .map(|&(m, k)| phi_m(m).pow(k as u32))
            .product()
    }

    pub fn multiplicity(&self, m: u64) -> usize {
        self.factors.iter().find(|f| f.0 == m).map_or(0, |f| f.1)
    }

    pub fn factor_count(&self) -> usize {
        self.factors.iter().map(|f| f.1).sum()
    }

    /// `(-1)^{mult of Phi_1}`; every other cyclotomic has constant term 1.
    pub fn constant_term(&self) -> i64 {
        if self.multiplicity(1) % 2 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn contains(&self, m: u64) -> bool {
        self.multiplicity(m) > 0
    }
}

impl fmt::Display for CyclotomicProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(m, k)| {
                if k == 1 {
                    format!("Phi_{m}")
                } else {
                    format!("Phi_{m}^{k}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Cyclotomic indices usable in a product of degree `target`.
fn available_indices(target: u64, m_cap: u64, allow_linear: bool) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    if allow_linear {
        out.extend([(1, 1), (2, 1)]);
    }
    for m in 3..=m_cap {
        let phi = totient(m);
        if phi <= target {
            out.push((m, phi));
        }
    }
    out
}

fn with_k_factors(
    avail: &[(u64, u64)],
    suffix_bounds: &[(u64, u64)],
    start: usize,
    remaining_degree: u64,
    remaining_count: usize,
    current: &mut Vec<u64>,
    out: &mut Vec<CyclotomicProduct>,
) {
    if remaining_count == 0 {
        if remaining_degree == 0 {
            let pairs: Vec<(u64, usize)> = current.iter().map(|&m| (m, 1)).collect();
            out.push(CyclotomicProduct::from_pairs(&pairs));
        }
        return;
    }
    for i in start..avail.len() {
        let (lo, hi) = suffix_bounds[i];
        let k = remaining_count as u64;
        if lo * k > remaining_degree || hi * k < remaining_degree {
            return;
        }
        let (m, phi) = avail[i];
        if phi > remaining_degree {
            continue;
        }
        current.push(m);
        with_k_factors(
            avail,
            suffix_bounds,
            i,
            remaining_degree - phi,
            remaining_count - 1,
            current,
            out,
        );
        current.pop();
    }
}

/// Every multiset of cyclotomic factors of total degree `target`, ordered by
/// the number of factors, then by the nondecreasing sequence of indices.
pub fn enumerate_products(
    target: u64,
    m_cap: u64,
    allow_linear: bool,
) -> impl Iterator<Item = CyclotomicProduct> {
    assert!(m_cap >= 2, "cap must be at least 2");
    let avail = available_indices(target, m_cap, allow_linear);
    // (min, max) degree over avail[i..]
    let mut suffix_bounds = vec![(u64::MAX, 0); avail.len()];
    for i in (0..avail.len()).rev() {
        let (lo, hi) = suffix_bounds.get(i + 1).copied().unwrap_or((u64::MAX, 0));
        suffix_bounds[i] = (lo.min(avail[i].1), hi.max(avail[i].1));
    }
    (0..=target as usize).flat_map(move |k| {
        let mut out = Vec::new();
        with_k_factors(
            &avail,
            &suffix_bounds,
            0,
            target,
            k,
            &mut Vec::new(),
            &mut out,
        );
        out
    })
}

/// The cyclotomic decomposition of a monic `f`, if every irreducible factor
/// is some `Phi_m`.
pub fn is_cyclotomic_product(f: &IntPoly) -> Option<CyclotomicProduct> {
    if !f.is_monic() {
        return None;
    }
    let fac = factor_over_z(f);
    if fac.unit != 1 || !fac.content.is_one() {
        return None;
    }
    let mut pairs = Vec::new();
    for (g, k) in &fac.factors {
        let n = g.deg() as u64;
        // phi(m) >= sqrt(m / 2)
        let m = (1..=2 * n * n + 2).find(|&m| totient(m) == n && phi_m(m) == *g)?;
        pairs.push((m, *k));
    }
    Some(CyclotomicProduct::from_pairs(&pairs))
}
