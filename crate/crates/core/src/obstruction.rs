//! Ramification, the prime sets `Pi_{f,g}` linking symmetric factors, and the
//! obstruction group as the component structure of the resulting graph.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{factor_integer, is_padic_square, valuation};
use crate::exact_poly::{resultant, IntPoly};
use crate::local_conditions::{in_unit_disc_classes, two_adic_class};
use crate::modp::{common_factors_mod_p, FpFactor, ModPoly};
use crate::salem::{decompose_symmetric, SymmetricDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("polynomial is not monic symmetric with constant term ±1")]
    NotSymmetric,
    #[error("resultant vanishes: the polynomials share a factor")]
    ZeroResultant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Membership {
    Member,
    NonMember,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeRule {
    CommonSymmetricFactor,
    OddValuationLinear,
    TwoAdicLinearPair,
    /// The `{2}` edge between `X-1` and `X+1`.
    LinearPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeStatus {
    #[serde(serialize_with = "crate::cli_report::ser_biguint")]
    pub p: BigUint,
    pub status: Membership,
    /// A symmetric irreducible common factor mod `p` (first in canonical order).
    pub witness: Option<ModPoly>,
    /// All irreducible common factors mod `p`, empty for linear targets.
    #[serde(skip)]
    pub common_factors: Vec<FpFactor>,
    pub rule: EdgeRule,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiSetResult {
    pub f: IntPoly,
    pub g: IntPoly,
    pub memberships: Vec<PrimeStatus>,
}

impl PiSetResult {
    pub fn members(&self) -> Vec<BigUint> {
        self.memberships
            .iter()
            .filter(|m| m.status == Membership::Member)
            .map(|m| m.p.clone())
            .collect()
    }

    pub fn has_member(&self) -> bool {
        self.memberships
            .iter()
            .any(|m| m.status == Membership::Member)
    }

    pub fn has_indeterminate(&self) -> bool {
        self.memberships
            .iter()
            .any(|m| m.status == Membership::Indeterminate)
    }

    /// Proven empty: every candidate prime is a NonMember.
    pub fn is_exactly_empty(&self) -> bool {
        self.memberships
            .iter()
            .all(|m| m.status == Membership::NonMember)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum UnramifiedStatus {
    Unramified,
    RamifiedAt(#[serde(serialize_with = "crate::cli_report::ser_biguint_vec")] Vec<BigUint>),
    /// Primes (or unfactored cofactors) dividing `f(1) f(-1)` left undecided.
    Unknown(#[serde(serialize_with = "crate::cli_report::ser_biguint_vec")] Vec<BigUint>),
}

fn two() -> BigUint {
    BigUint::from(2u32)
}

fn odd_valuation(v: &BigInt, p: &BigUint) -> bool {
    valuation(v, p).is_some_and(|e| e % 2 == 1)
}

/// `(-1)^{deg f / 2} f(1) f(-1)` lies outside the classes `{1, -3}`.
fn two_adic_class_fails(f: &IntPoly) -> bool {
    let mut t = f.at_one() * f.at_minus_one();
    if (f.deg() / 2) % 2 == 1 {
        t = -t;
    }
    !in_unit_disc_classes(
        two_adic_class(&t).expect("f(±1) nonzero for irreducible f of even degree"),
    )
}

/// `p` is certified to lie in `Pi^r_f` by an odd valuation at `f(±1)`, or at
/// `p = 2` by the failure of the 2-adic class condition.
fn certified_ramified(f: &IntPoly, p: &BigUint) -> bool {
    let (a, b) = (f.at_one(), f.at_minus_one());
    odd_valuation(&a, p) || odd_valuation(&b, p) || (*p == two() && two_adic_class_fails(f))
}

/// 2 together with the primes dividing `f(1) f(-1)`; only these can ramify.
pub fn ramified_prime_candidates(f: &IntPoly) -> Vec<BigUint> {
    let fac = factor_integer(&(f.at_one() * f.at_minus_one()));
    let mut out = vec![two()];
    out.extend(fac.prime_list().into_iter().filter(|p| *p != two()));
    out.extend(fac.unfactored.into_iter().map(|(c, _)| c));
    out
}

pub fn unramified_status(f: &IntPoly) -> UnramifiedStatus {
    let ab = f.at_one() * f.at_minus_one();
    if ab.abs().is_one() {
        return UnramifiedStatus::Unramified;
    }
    let fac = factor_integer(&ab);
    let mut ramified = Vec::new();
    let mut open = Vec::new();
    // the class test at 2 applies whether or not 2 divides f(1) f(-1)
    if two_adic_class_fails(f) {
        ramified.push(two());
    }
    for p in fac.prime_list() {
        if certified_ramified(f, &p) {
            ramified.push(p);
        } else {
            open.push(p);
        }
    }
    open.extend(fac.unfactored.into_iter().map(|(c, _)| c));
    ramified.sort();
    ramified.dedup();
    if !ramified.is_empty() {
        UnramifiedStatus::RamifiedAt(ramified)
    } else if open.is_empty() {
        UnramifiedStatus::Unramified
    } else {
        UnramifiedStatus::Unknown(open)
    }
}

/// Membership of each prime dividing `Res(f, g)` in `Pi_{f,g}`.
pub fn pi_set(f: &IntPoly, g: &IntPoly, seed: u64) -> Result<PiSetResult, ObstructionError> {
    let r = resultant(f, g);
    if r.is_zero() {
        return Err(ObstructionError::ZeroResultant);
    }
    let bad = f.at_one() * f.at_minus_one() * g.at_one() * g.at_minus_one();
    let fac = factor_integer(&r);
    let mut memberships = Vec::new();
    for p in fac.prime_list() {
        let pi = BigInt::from(p.clone());
        if (&bad % &pi).is_zero() {
            memberships.push(PrimeStatus {
                p,
                status: Membership::Indeterminate,
                witness: None,
                common_factors: Vec::new(),
                rule: EdgeRule::CommonSymmetricFactor,
                note: Some("p divides (fg)(1)(fg)(-1)".into()),
            });
            continue;
        }
        let common = common_factors_mod_p(f, g, &p, seed);
        let witness = common
            .factors
            .iter()
            .find(|h| h.symmetric && h.poly.degree().is_some_and(|d| d % 2 == 0))
            .map(|h| h.poly.clone());
        memberships.push(PrimeStatus {
            p,
            status: if witness.is_some() {
                Membership::Member
            } else {
                Membership::NonMember
            },
            witness,
            common_factors: common.factors,
            rule: EdgeRule::CommonSymmetricFactor,
            note: None,
        });
    }
    for (c, _) in fac.unfactored {
        memberships.push(PrimeStatus {
            p: c,
            status: Membership::Indeterminate,
            witness: None,
            common_factors: Vec::new(),
            rule: EdgeRule::CommonSymmetricFactor,
            note: Some("composite cofactor not factored".into()),
        });
    }
    Ok(PiSetResult {
        f: f.clone(),
        g: g.clone(),
        memberships,
    })
}

/// Membership in `Pi_{f,X-1}` (`sign = 1`) or `Pi_{f,X+1}` (`sign = -1`),
/// where `n_pm` is the multiplicity of the linear factor and `d_pm` its `D`.
pub fn pi_set_linear(f: &IntPoly, sign: i8, n_pm: usize, d_pm: &BigInt) -> PiSetResult {
    let (value, g) = if sign > 0 {
        (f.at_one(), IntPoly::linear_root(1))
    } else {
        (f.at_minus_one(), IntPoly::linear_root(-1))
    };
    let fac = factor_integer(&value);
    let mut memberships = Vec::new();
    let neg_d = -d_pm;
    for p in fac.prime_list() {
        let rule = if p == two() {
            EdgeRule::TwoAdicLinearPair
        } else {
            EdgeRule::OddValuationLinear
        };
        let d_blocks = n_pm == 2 && is_padic_square(&neg_d, &p);
        let (status, note) = if d_blocks {
            (
                Membership::NonMember,
                Some("n = 2 and D = -1 in the square classes".to_string()),
            )
        } else if certified_ramified(f, &p) {
            (Membership::Member, None)
        } else {
            (
                Membership::Indeterminate,
                Some("ramification at p unresolved".to_string()),
            )
        };
        memberships.push(PrimeStatus {
            p,
            status,
            witness: None,
            common_factors: Vec::new(),
            rule,
            note,
        });
    }
    for (c, _) in fac.unfactored {
        memberships.push(PrimeStatus {
            p: c,
            status: Membership::Indeterminate,
            witness: None,
            common_factors: Vec::new(),
            rule: EdgeRule::OddValuationLinear,
            note: Some("composite cofactor not factored".into()),
        });
    }
    PiSetResult {
        f: f.clone(),
        g,
        memberships,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Exactness {
    Exact,
    LowerBoundOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub f: usize,
    pub g: usize,
    #[serde(serialize_with = "crate::cli_report::ser_biguint")]
    pub prime: BigUint,
    pub rule: EdgeRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionGraph {
    pub nodes: Vec<IntPoly>,
    pub edges: Vec<Edge>,
    /// Indeterminate candidate edges, as node index pairs.
    pub undecided: Vec<(usize, usize)>,
    pub components: Vec<Vec<usize>>,
    pub gf_rank: usize,
    pub exactness: Exactness,
}

impl ObstructionGraph {
    pub fn is_trivial_exact(&self) -> bool {
        self.gf_rank == 0 && self.exactness == Exactness::Exact
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Memo of `Pi` computations, for searches that revisit the same factors.
#[derive(Default)]
pub struct PiCache {
    seed: u64,
    pairs: RefCell<HashMap<(IntPoly, IntPoly), PiSetResult>>,
    linear: RefCell<HashMap<(IntPoly, i8, bool, BigInt), PiSetResult>>,
}

impl PiCache {
    pub fn new(seed: u64) -> Self {
        PiCache {
            seed,
            ..Default::default()
        }
    }

    pub fn pair(&self, f: &IntPoly, g: &IntPoly) -> Result<PiSetResult, ObstructionError> {
        let key = if f.canonical_cmp(g).is_le() {
            (f.clone(), g.clone())
        } else {
            (g.clone(), f.clone())
        };
        if let Some(r) = self.pairs.borrow().get(&key) {
            return Ok(r.clone());
        }
        let r = pi_set(&key.0, &key.1, self.seed)?;
        self.pairs.borrow_mut().insert(key, r.clone());
        Ok(r)
    }

    pub fn linear(&self, f: &IntPoly, sign: i8, n_pm: usize, d_pm: &BigInt) -> PiSetResult {
        // only n = 2 consults D
        let d_key = if n_pm == 2 {
            d_pm.clone()
        } else {
            BigInt::zero()
        };
        let key = (f.clone(), sign, n_pm == 2, d_key);
        if let Some(r) = self.linear.borrow().get(&key) {
            return r.clone();
        }
        let r = pi_set_linear(f, sign, n_pm, d_pm);
        self.linear.borrow_mut().insert(key, r.clone());
        r
    }
}

/// `D_+ = (-1)^{s_+} |F_1(1)|` and `D_- = (-1)^{s_-} |F_1(-1)|`.
pub fn d_values(dec: &SymmetricDecomposition, s_plus: usize, s_minus: usize) -> (BigInt, BigInt) {
    let f1 = dec.f1();
    let sign = |s: usize| {
        if s.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    };
    (
        sign(s_plus) * f1.at_one().abs(),
        sign(s_minus) * f1.at_minus_one().abs(),
    )
}

pub fn obstruction_group(
    f: &IntPoly,
    s_plus: usize,
    s_minus: usize,
    seed: u64,
) -> Result<ObstructionGraph, ObstructionError> {
    let dec = decompose_symmetric(f).map_err(|_| ObstructionError::NotSymmetric)?;
    obstruction_group_from(&dec, s_plus, s_minus, &PiCache::new(seed))
}

pub fn obstruction_group_from(
    dec: &SymmetricDecomposition,
    s_plus: usize,
    s_minus: usize,
    cache: &PiCache,
) -> Result<ObstructionGraph, ObstructionError> {
    let nodes = dec.nodes();
    let (d_plus, d_minus) = d_values(dec, s_plus, s_minus);
    let plus_idx = (dec.n_plus > 0).then_some(0);
    let minus_idx = (dec.n_minus > 0).then_some(usize::from(dec.n_plus > 0));
    let first_type1 = usize::from(dec.n_plus > 0) + usize::from(dec.n_minus > 0);
    let mut edges = Vec::new();
    let mut undecided = Vec::new();
    let record = |i: usize,
                  j: usize,
                  res: &PiSetResult,
                  edges: &mut Vec<Edge>,
                  undecided: &mut Vec<(usize, usize)>| {
        if let Some(m) = res
            .memberships
            .iter()
            .find(|m| m.status == Membership::Member)
        {
            edges.push(Edge {
                f: i,
                g: j,
                prime: m.p.clone(),
                rule: m.rule,
            });
        } else if res.has_indeterminate() {
            undecided.push((i, j));
        }
    };
    for i in first_type1..nodes.len() {
        for j in i + 1..nodes.len() {
            let res = cache.pair(&nodes[i], &nodes[j])?;
            record(i, j, &res, &mut edges, &mut undecided);
        }
        if let Some(k) = plus_idx {
            let res = cache.linear(&nodes[i], 1, dec.n_plus, &d_plus);
            record(k, i, &res, &mut edges, &mut undecided);
        }
        if let Some(k) = minus_idx {
            let res = cache.linear(&nodes[i], -1, dec.n_minus, &d_minus);
            record(k, i, &res, &mut edges, &mut undecided);
        }
    }
    if let (Some(a), Some(b)) = (plus_idx, minus_idx) {
        let ok = |n: usize, d: &BigInt| n != 2 || !is_padic_square(&-d, &two());
        if ok(dec.n_plus, &d_plus) && ok(dec.n_minus, &d_minus) {
            edges.push(Edge {
                f: a,
                g: b,
                prime: two(),
                rule: EdgeRule::LinearPair,
            });
        }
    }
    let mut uf = UnionFind::new(nodes.len());
    for e in &edges {
        uf.union(e.f, e.g);
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..nodes.len() {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    let mut components: Vec<Vec<usize>> = groups.into_values().collect();
    components.sort();
    let exactness = if undecided.iter().any(|&(i, j)| uf.find(i) != uf.find(j)) {
        Exactness::LowerBoundOnly
    } else {
        Exactness::Exact
    };
    Ok(ObstructionGraph {
        gf_rank: components.len().saturating_sub(1),
        nodes,
        edges,
        undecided,
        components,
        exactness,
    })
}
