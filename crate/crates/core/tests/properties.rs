//! Property tests for the stated invariants.

mod common;

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use common::small_fp;
use salemk3::arith::{mult_order, primes_below, totient};
use salemk3::classifier::{classify, exclude_any_realization_deg18, Exclusion, SalemPairs};
use salemk3::cli_report::{
    analyze, family_gm10, family_sa, family_smyth18, parse_poly, parse_table, BUNDLED_TABLE,
};
use salemk3::cyclotomic::{enumerate_products, phi_m, CyclotomicProduct};
use salemk3::exact_poly::{
    factor_over_z, inverse_trace_poly, reciprocal_star, resultant, sturm_count, trace_poly,
    IntPoly, RatInterval,
};
use salemk3::local_conditions::{check_c1, local_even_unimodular_exists};
use salemk3::modp::{factor_mod_p, reduce_mod_p, ModPoly};
use salemk3::obstruction::{
    obstruction_group, pi_set, unramified_status, Exactness, Membership, UnramifiedStatus,
};
use salemk3::salem::{
    certify_salem, decompose_symmetric, power_min_poly, salem_value, SalemCertificate,
};
use salemk3::signatures::{
    exists_trivial_obstruction_salem_map, power_case_rule, tau_s_z, validate_signature_map,
    PowerVerdict,
};

fn lehmer() -> IntPoly {
    IntPoly::from_desc_i64s(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
}

fn poly_strategy(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1)
        .prop_map(|c| IntPoly::new(c.into_iter().map(BigInt::from).collect()))
}

fn monic_unit_strategy(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    (
        prop::collection::vec(-4i64..=4, 0..max_deg),
        prop::bool::ANY,
    )
        .prop_map(|(mid, neg)| {
            let mut c = vec![BigInt::from(if neg { -1 } else { 1 })];
            c.extend(mid.into_iter().map(BigInt::from));
            c.push(BigInt::one());
            IntPoly::new(c)
        })
}

fn pool() -> Vec<IntPoly> {
    vec![
        phi_m(1).pow(2),
        phi_m(2).pow(2),
        phi_m(1),
        phi_m(3),
        phi_m(4),
        phi_m(5),
        phi_m(6),
        phi_m(8),
        phi_m(10),
        phi_m(12),
        family_sa(0),
        family_sa(2),
        lehmer(),
        IntPoly::from_i64s(&[1, 0, -3, 0, 1]),
        IntPoly::from_i64s(&[1, -3, 1]),
        IntPoly::from_i64s(&[1, 5, 1]),
        IntPoly::from_i64s(&[1, 2, -5, 2, 1]),
    ]
}

/// Products of pool elements, degree at most 16.
fn symmetric_strategy() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(0usize..17, 1..5).prop_map(|ix| {
        let pool = pool();
        let mut f = IntPoly::one();
        for i in ix {
            if f.deg() + pool[i].deg() <= 16 {
                f = &f * &pool[i];
            }
        }
        f
    })
}

fn corpus() -> Vec<SalemCertificate> {
    let mut out: Vec<SalemCertificate> = parse_table(BUNDLED_TABLE)
        .unwrap()
        .into_iter()
        .map(|e| e.cert)
        .collect();
    for a in 1..=8 {
        out.extend(certify_salem(&family_sa(a)).ok());
        out.extend(certify_salem(&family_gm10(a)).ok());
    }
    out.extend(certify_salem(&family_smyth18(3)).ok());
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn resultant_matches_sylvester(f in poly_strategy(8, 6), g in poly_strategy(8, 6)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert_eq!(resultant(&f, &g), common::sylvester_resultant(&g, &f));
    }

    #[test]
    fn resultant_symmetry_and_multiplicativity(f in poly_strategy(5, 5), g in poly_strategy(5, 5), h in poly_strategy(5, 5)) {
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        let sign = if (f.deg() * g.deg()) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        prop_assert_eq!(resultant(&f, &g), sign * resultant(&g, &f));
        prop_assert_eq!(resultant(&f, &(&g * &h)), resultant(&f, &g) * resultant(&f, &h));
    }

    #[test]
    fn star_is_an_involution(f in monic_unit_strategy(7), g in monic_unit_strategy(5)) {
        let fs = reciprocal_star(&f).unwrap();
        prop_assert_eq!(reciprocal_star(&fs).unwrap(), f.clone());
        prop_assert_eq!(reciprocal_star(&(&f * &g)).unwrap(), &fs * &reciprocal_star(&g).unwrap());
    }

    #[test]
    fn trace_round_trip(r in monic_unit_strategy(8)) {
        let s = inverse_trace_poly(&r);
        prop_assert_eq!(trace_poly(&s).unwrap(), r.clone());
        prop_assert!(common::trace_identity_holds(&s, &r));
    }

    /// Roots are the distinct halves `a/2` and endpoints sit at quarter offsets,
    /// so the count inside an interval is known.
    #[test]
    fn sturm_counts_known_roots(roots in prop::collection::btree_set(-20i64..=20, 1..=6), lo in -25i64..0, width in 1i64..30) {
        let f = roots.iter().fold(IntPoly::one(), |acc, &a| &acc * &IntPoly::from_i64s(&[-a, 2]));
        let (lo4, hi4) = (4 * lo + 1, 4 * (lo + width) + 1);
        let expected = roots.iter().filter(|&&a| lo4 < 2 * a && 2 * a < hi4).count();
        let iv = RatInterval::new(num_rational::BigRational::new(lo4.into(), 4.into()), num_rational::BigRational::new(hi4.into(), 4.into()));
        prop_assert_eq!(sturm_count(&f, &iv).unwrap(), expected);
    }

    #[test]
    fn factor_over_z_reconstructs(f in symmetric_strategy(), g in poly_strategy(4, 4)) {
        let h = &f * &g;
        prop_assume!(!h.is_zero());
        let fz = factor_over_z(&h);
        prop_assert_eq!(fz.product(), h.clone());
        // Mod each good prime, the factors' degree patterns must combine to the
        // pattern of the whole product.
        let mut good = 0;
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
            if good == 3 {
                break;
            }
            let sqf = fz.factors.iter().fold(IntPoly::one(), |acc, (q, _)| &acc * q);
            let sp = small_fp::from_int(&sqf, p);
            if sp.len() != sqf.deg() + 1 || small_fp::gcd(&sp, &derivative_fp(&sp, p), p).len() > 1 {
                continue;
            }
            good += 1;
            let mut whole = pattern(&sqf, p);
            let mut parts: Vec<usize> = fz.factors.iter().flat_map(|(q, _)| pattern(q, p)).collect();
            whole.sort_unstable();
            parts.sort_unstable();
            prop_assert_eq!(whole, parts);
        }
    }

    #[test]
    fn factor_mod_p_reconstructs(f in poly_strategy(10, 50), pi in 0usize..6, seed in 0u64..4) {
        let p = [2u64, 3, 5, 13, 101, 65537][pi];
        let fp = reduce_mod_p(&f, &BigUint::from(p));
        prop_assume!(!fp.is_zero());
        let fac = factor_mod_p(&fp, seed);
        prop_assert_eq!(fac.product(), fp.clone());
        prop_assert_eq!(&factor_mod_p(&fp, seed), &fac);
        for h in &fac.factors {
            let hv: Vec<u64> = h.poly.coeffs().iter().map(|c| u64::try_from(c).unwrap()).collect();
            prop_assert!(h.poly.is_monic());
            prop_assert!(small_fp::is_irreducible(&hv, p));
            if h.symmetric && hv.len() > 2 {
                prop_assert!(hv.len() % 2 == 1, "symmetric irreducible of odd degree {:?}", hv);
            }
            if hv[0] != 0 {
                prop_assert_eq!(h.symmetric, small_fp::is_self_reciprocal(&hv, p));
            }
        }
    }

    #[test]
    fn decomposition_reconstructs(f in symmetric_strategy()) {
        let d = decompose_symmetric(&f).unwrap();
        prop_assert_eq!(d.reconstruct(), f.clone());
        for (g, _) in &d.type1 {
            prop_assert!(g.deg() % 2 == 0 && reciprocal_star(g).unwrap() == *g);
        }
    }

    #[test]
    fn mod_four_lemma(f in symmetric_strategy()) {
        let d = decompose_symmetric(&f).unwrap();
        prop_assume!(d.n_plus == 0 && d.n_minus == 0 && d.type2.is_empty());
        let (a, b) = (f.at_one(), f.at_minus_one());
        let four = BigInt::from(4);
        if (f.deg() / 2) % 2 == 0 {
            prop_assert!((&a - &b).mod_floor(&four).is_zero());
        } else {
            prop_assert!((&a + &b).mod_floor(&four).is_zero());
        }
    }

    #[test]
    fn local_global_equivalence(f in symmetric_strategy()) {
        prop_assume!(f.constant_term().is_one());
        let mut primes: BTreeSet<BigUint> = BTreeSet::from([BigUint::from(2u32)]);
        let d = decompose_symmetric(&f).unwrap();
        let f1 = d.f1();
        for v in [f1.at_one(), f1.at_minus_one()] {
            for p in primes_below(200) {
                if (&v % BigInt::from(p)).is_zero() {
                    primes.insert(BigUint::from(p));
                }
            }
        }
        let local = primes.iter().all(|p| local_even_unimodular_exists(&f, p).unwrap());
        prop_assert_eq!(local, check_c1(&f).holds, "F = {}", f);
    }

    #[test]
    fn pi_members_divide_resultant(i in 0usize..17, j in 0usize..17) {
        let pool = pool();
        let (f, g) = (&pool[i], &pool[j]);
        prop_assume!(f != g && f.deg() >= 2 && g.deg() >= 2 && factor_over_z(f).is_irreducible() && factor_over_z(g).is_irreducible());
        let r = resultant(f, g);
        let res = pi_set(f, g, 0).unwrap();
        for m in &res.memberships {
            prop_assert!((&r % BigInt::from(m.p.clone())).is_zero());
            if m.status == Membership::Member {
                let w = m.witness.clone().expect("member carries a witness");
                let wv: Vec<u64> = w.coeffs().iter().map(|c| u64::try_from(c).unwrap()).collect();
                let pu = u64::try_from(&m.p).unwrap();
                prop_assert!(small_fp::is_irreducible(&wv, pu) && small_fp::is_self_reciprocal(&wv, pu));
                prop_assert!(small_fp::divides(&wv, &small_fp::from_int(f, pu), pu));
                prop_assert!(small_fp::divides(&wv, &small_fp::from_int(g, pu), pu));
            }
        }
    }

    #[test]
    fn rank_is_components_minus_one(f in symmetric_strategy(), keep in prop::collection::vec(prop::bool::ANY, 16)) {
        prop_assume!(f.constant_term().is_one());
        let d = decompose_symmetric(&f).unwrap();
        let g = obstruction_group(&f, d.n_plus, d.n_minus, 0).unwrap();
        prop_assert_eq!(g.gf_rank + 1, g.components.len().max(1));
        prop_assert_eq!(independent_components(g.nodes.len(), g.edges.iter().map(|e| (e.f, e.g))), g.components.len());
        // Dropping edges can only split components.
        let subset = g.edges.iter().enumerate().filter(|(k, _)| keep[k % keep.len()]).map(|(_, e)| (e.f, e.g));
        prop_assert!(independent_components(g.nodes.len(), subset) >= g.components.len());
        if g.undecided.iter().any(|&(a, b)| !g.components.iter().any(|c| c.contains(&a) && c.contains(&b))) {
            prop_assert_eq!(g.exactness, Exactness::LowerBoundOnly);
        }
    }

    #[test]
    fn parser_round_trip(f in poly_strategy(12, 1000)) {
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f.clone());
    }
}

fn pattern(q: &IntPoly, p: u64) -> Vec<usize> {
    factor_mod_p(&reduce_mod_p(q, &BigUint::from(p)), 0)
        .factors
        .iter()
        .map(|h| h.poly.degree().unwrap())
        .collect()
}

fn derivative_fp(f: &[u64], p: u64) -> Vec<u64> {
    small_fp::trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

fn independent_components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    (0..n).filter(|&x| find(&mut parent, x) == x).count()
}

#[test]
fn cyclotomic_product_identity_and_irreducibility() {
    for m in 1..=66u64 {
        let prod = (1..=m)
            .filter(|d| m % d == 0)
            .fold(IntPoly::one(), |acc, d| &acc * &phi_m(d));
        assert_eq!(
            prod,
            &IntPoly::monomial(BigInt::one(), m as usize) - &IntPoly::one(),
            "m = {m}"
        );
        assert_eq!(phi_m(m).deg() as u64, totient(m));
        assert!(factor_over_z(&phi_m(m)).is_irreducible(), "Phi_{m}");
    }
}

#[test]
fn cyclotomic_splitting_law() {
    for p in primes_below(101) {
        for m in (1..=66u64).filter(|m| m % p != 0) {
            let want = mult_order(p % m, m).unwrap_or(1) as usize;
            let fac = factor_mod_p(&reduce_mod_p(&phi_m(m), &BigUint::from(p)), 0);
            assert!(
                fac.factors
                    .iter()
                    .all(|h| h.poly.degree() == Some(want) && h.multiplicity == 1),
                "Phi_{m} mod {p}"
            );
        }
    }
}

/// Counts multisets of allowed degrees summing to `target` by a simple recursion.
fn count_products(target: u64, degrees: &[u64]) -> usize {
    fn go(target: u64, degrees: &[u64]) -> usize {
        if target == 0 {
            return 1;
        }
        match degrees.split_first() {
            None => 0,
            Some((&d, rest)) => (0..=target / d).map(|k| go(target - k * d, rest)).sum(),
        }
    }
    go(target, degrees)
}

#[test]
fn enumeration_counts() {
    for (target, cap, linear) in [
        (4u64, 66u64, true),
        (8, 30, false),
        (10, 66, false),
        (6, 20, true),
        (12, 66, true),
    ] {
        let items: Vec<CyclotomicProduct> = enumerate_products(target, cap, linear).collect();
        let unique: BTreeSet<&CyclotomicProduct> = items.iter().collect();
        assert_eq!(unique.len(), items.len(), "duplicates at {target}/{cap}");
        let mut degrees: Vec<u64> = (3..=cap).map(totient).filter(|&d| d <= target).collect();
        if linear {
            degrees.extend([1, 1]);
        }
        assert_eq!(
            items.len(),
            count_products(target, &degrees),
            "count at {target}/{cap}/{linear}"
        );
        assert!(items
            .iter()
            .all(|c| c.total_degree == target && c.expand().deg() as u64 == target));
    }
}

#[test]
fn seed_determinism_mod_p() {
    let f = reduce_mod_p(&(&phi_m(12) * &phi_m(24)), &BigUint::from(73u32));
    for seed in 0..5 {
        assert_eq!(factor_mod_p(&f, seed), factor_mod_p(&f, seed));
    }
    let w = ModPoly::from_u64s(73, &[1, 0, 1]);
    assert_eq!(factor_mod_p(&w, 1), factor_mod_p(&w, 1));
}

#[test]
fn salem_corpus_invariants() {
    for c in corpus() {
        let (a, b) = (&c.s_at_1, &c.s_at_minus1);
        let half = c.degree / 2;
        assert!(a.is_negative() && b.is_positive(), "{}", c.s);
        assert!(c.degree % 2 == 0);
        assert_eq!(c.root_counts, (half - 1, 1));
        if check_c1(&c.s).holds {
            assert!(half % 2 == 1, "(C1) with d/2 even: {}", c.s);
        }
        if (a * b).abs().is_one() {
            assert!(half % 2 == 1);
            assert_eq!(unramified_status(&c.s), UnramifiedStatus::Unramified);
            assert!(check_c1(&c.s).holds);
        }
        for i in 0..c.pair_count() {
            assert!(validate_signature_map(&tau_s_z(&c, i).unwrap()).is_empty());
        }
    }
}

#[test]
fn power_interval_containment() {
    for c in corpus().into_iter().take(6) {
        let iv = salem_value(&c, 50);
        for k in [2u32, 3] {
            let ck = certify_salem(&power_min_poly(&c, k).unwrap()).unwrap();
            let ivk = salem_value(&ck, 50);
            let slack = num_rational::BigRational::new(1.into(), BigInt::from(1u64 << 40));
            assert!(
                ivk.lo <= iv.hi.pow(k as i32) + &slack && iv.lo.pow(k as i32) - &slack <= ivk.hi
            );
        }
    }
}

#[test]
fn search_monotone_in_cap() {
    let c = certify_salem(&lehmer()).unwrap();
    let mut seen = false;
    for cap in [12u64, 15, 36, 66] {
        let hit = exists_trivial_obstruction_salem_map(&c, (3, 19), cap, 0)
            .hit
            .is_some();
        assert!(!seen || hit, "cap {cap} lost a hit");
        seen |= hit;
    }
    assert!(seen);
}

#[test]
fn power_rule_branches_complementary() {
    let s3 = certify_salem(&family_sa(3)).unwrap();
    for (m, k) in [(10u64, 4usize), (5, 4), (8, 4), (12, 4)] {
        let on_s = power_case_rule(&s3, m, k, true, 0).unwrap();
        let on_phi = power_case_rule(&s3, m, k, false, 0).unwrap();
        match on_s {
            PowerVerdict::Inapplicable => assert_eq!(on_phi, PowerVerdict::Inapplicable),
            PowerVerdict::Realizable => assert_eq!(on_phi, PowerVerdict::NotRealizable),
            PowerVerdict::NotRealizable => assert_eq!(on_phi, PowerVerdict::Realizable),
        }
    }
}

#[test]
fn exclusion_implies_negative_verdict() {
    for a in 1..=4 {
        let s = family_smyth18(a);
        if certify_salem(&s).is_err() {
            continue;
        }
        if exclude_any_realization_deg18(&s) == Ok(Exclusion::Excluded) {
            assert_eq!(
                classify(&s, 0).unwrap().salem_pairs,
                SalemPairs::NotRealizableForRootsOfS
            );
        }
    }
}

#[test]
fn report_is_deterministic() {
    let s = lehmer();
    let a = serde_json::to_string(&analyze("lehmer", &s, 1, 66).unwrap()).unwrap();
    let b = serde_json::to_string(&analyze("lehmer", &s, 1, 66).unwrap()).unwrap();
    assert_eq!(a, b);
}
