//! Realizability verdicts for Salem numbers, exclusion tests for degrees 18
//! and 20, and the classification of orders of automorphisms acting
//! trivially on the Picard lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{factor_integer, is_square, totient};
use crate::cyclotomic::{phi_m, phi_values_at_pm1, CyclotomicProduct, DEFAULT_M_CAP};
use crate::exact_poly::{resultant, IntPoly};
use crate::obstruction::{unramified_status, Membership, PiCache, UnramifiedStatus};
use crate::salem::{certify_salem, SalemCertificate, SalemError};
use crate::signatures::search_with_cache;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    NotSalem(#[from] SalemError),
    #[error("degree {0} outside 4..=22")]
    DegreeOutOfRange(usize),
    #[error("degree {found}, expected {expected}")]
    DegreeMismatch { found: usize, expected: usize },
    #[error("phi({m}) = {phi} exceeds 20")]
    TotientTooLarge { m: u64, phi: u64 },
    #[error("cyclotomic index {0} below 3")]
    IndexTooSmall(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SalemPairs {
    RealizableAllRootsOfS,
    NotRealizableForRootsOfS,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AnyRealization {
    Realizable,
    NotRealizableAtAll,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Projective {
    NotExcluded,
    Excluded,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Exclusion {
    Excluded,
    NotExcluded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictTag {
    #[serde(rename = "CONGR4a")]
    Congr4a,
    #[serde(rename = "THM22")]
    Thm22,
    #[serde(rename = "TAKADA")]
    Takada,
    #[serde(rename = "NBS-i")]
    NbsI,
    #[serde(rename = "NBS-ii")]
    NbsII,
    #[serde(rename = "D18-IFF")]
    D18Iff,
    #[serde(rename = "D10-SUFF")]
    D10Suff,
    #[serde(rename = "QUESTION-10")]
    Question10,
    /// Degree 10 or 18 with square values where ramification is unresolved.
    #[serde(rename = "RAMIFICATION-OPEN")]
    RamificationOpen,
}

impl VerdictTag {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictTag::Congr4a => "CONGR4a",
            VerdictTag::Thm22 => "THM22",
            VerdictTag::Takada => "TAKADA",
            VerdictTag::NbsI => "NBS-i",
            VerdictTag::NbsII => "NBS-ii",
            VerdictTag::D18Iff => "D18-IFF",
            VerdictTag::D10Suff => "D10-SUFF",
            VerdictTag::Question10 => "QUESTION-10",
            VerdictTag::RamificationOpen => "RAMIFICATION-OPEN",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `p` lies in `Pi_{S, Phi_m}`.
    Pi {
        m: u64,
        p: String,
    },
    /// Every listed `Pi_{S, Phi_m}` is proven empty.
    PiEmpty {
        ms: Vec<u64>,
    },
    /// A complement with trivial obstruction group at the given maximum.
    Complement {
        maximum: (usize, usize),
        product: String,
    },
    Values {
        s_at_1: String,
        s_at_minus1: String,
    },
    RamifiedAt {
        primes: Vec<String>,
    },
    /// A named hypothesis verified independently.
    SubCertificate {
        name: String,
    },
    /// `Res(S, Phi_m) = ±1` for the listed `m`, with `|S(1) S(-1)| = 1`.
    UnitResultants {
        ms: Vec<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizabilityVerdict {
    pub salem_pairs: SalemPairs,
    pub any_realization: AnyRealization,
    pub projective: Projective,
    pub tag: VerdictTag,
    pub witnesses: Vec<Witness>,
    pub caveats: Vec<String>,
}

impl RealizabilityVerdict {
    fn new(salem_pairs: SalemPairs, tag: VerdictTag) -> Self {
        let any_realization = match salem_pairs {
            SalemPairs::RealizableAllRootsOfS => AnyRealization::Realizable,
            _ => AnyRealization::Unknown,
        };
        RealizabilityVerdict {
            salem_pairs,
            any_realization,
            projective: Projective::Unknown,
            tag,
            witnesses: Vec::new(),
            caveats: Vec::new(),
        }
    }
}

fn values_witness(cert: &SalemCertificate) -> Witness {
    Witness::Values {
        s_at_1: cert.s_at_1.to_string(),
        s_at_minus1: cert.s_at_minus1.to_string(),
    }
}

pub fn classify(s: &IntPoly, seed: u64) -> Result<RealizabilityVerdict, ClassifyError> {
    classify_with_cap(s, seed, DEFAULT_M_CAP)
}

/// As [`classify`], with the cyclotomic cap of the degree-10 fallback search.
pub fn classify_with_cap(
    s: &IntPoly,
    seed: u64,
    m_cap: u64,
) -> Result<RealizabilityVerdict, ClassifyError> {
    let cert = certify_salem(s)?;
    let d = cert.degree;
    if !(4..=22).contains(&d) {
        return Err(ClassifyError::DegreeOutOfRange(d));
    }
    let (a, b) = (&cert.s_at_1, &cert.s_at_minus1);
    let both_squares = is_square(&a.abs()) && is_square(b);
    let mut v = match d {
        22 => {
            let mut v = if is_square(&a.abs()) && is_square(&b.abs()) {
                RealizabilityVerdict::new(SalemPairs::RealizableAllRootsOfS, VerdictTag::Thm22)
            } else {
                let mut v = RealizabilityVerdict::new(
                    SalemPairs::NotRealizableForRootsOfS,
                    VerdictTag::Thm22,
                );
                v.caveats.push("|S(1)| and |S(-1)| not both squares; realizations with a root of unity are not addressed".into());
                v
            };
            v.witnesses.push(values_witness(&cert));
            v
        }
        20 => degree_twenty(&cert),
        10 | 18 if !both_squares => {
            let mut v =
                RealizabilityVerdict::new(SalemPairs::RealizableAllRootsOfS, VerdictTag::NbsI);
            v.witnesses.push(values_witness(&cert));
            v
        }
        10 | 18 => degree_ten_or_eighteen(&cert, seed, m_cap),
        _ if d % 8 == 0 || d % 8 == 4 || d % 8 == 6 => {
            let mut v =
                RealizabilityVerdict::new(SalemPairs::RealizableAllRootsOfS, VerdictTag::Congr4a);
            v.witnesses.push(Witness::SubCertificate {
                name: format!("d = {d} = {} (mod 8)", d % 8),
            });
            v
        }
        _ => unreachable!("even degrees in 4..=22 are covered"),
    };
    if d == 18 {
        if exclude_any_realization_deg18(s)? == Exclusion::Excluded {
            v.any_realization = AnyRealization::NotRealizableAtAll;
            v.projective = Projective::Excluded;
            debug_assert_eq!(v.salem_pairs, SalemPairs::NotRealizableForRootsOfS);
        } else {
            v.projective = Projective::NotExcluded;
        }
    }
    Ok(v)
}

fn is_squarefree(n: &BigInt) -> bool {
    let f = factor_integer(n);
    f.is_complete() && f.primes.iter().all(|(_, e)| *e == 1)
}

fn degree_twenty(cert: &SalemCertificate) -> RealizabilityVerdict {
    let (a, b) = (&cert.s_at_1, &cert.s_at_minus1);
    let mut v = RealizabilityVerdict::new(SalemPairs::RealizableAllRootsOfS, VerdictTag::Takada);
    v.witnesses.push(values_witness(cert));
    let odd = a.is_odd() && b.is_odd();
    if odd && is_squarefree(a) && is_squarefree(b) && a.gcd(b).is_one() {
        v.witnesses.push(Witness::SubCertificate {
            name: "relatively-prime".into(),
        });
    }
    if odd {
        v.witnesses.push(Witness::SubCertificate {
            name: "odd-values".into(),
        });
    }
    if v.witnesses.len() == 1 {
        v.caveats.push(
            "rests on the known degree-20 realization result alone; no in-tool sufficiency proof applies"
                .into(),
        );
    }
    v.projective = match exclude_projective_deg20(&cert.s) {
        Ok(Exclusion::Excluded) => Projective::Excluded,
        _ => {
            v.caveats.push("projective test is one-sided: finer lattice arguments may still exclude projective realizations".into());
            Projective::NotExcluded
        }
    };
    v
}

fn degree_ten_or_eighteen(cert: &SalemCertificate, seed: u64, m_cap: u64) -> RealizabilityVerdict {
    let d = cert.degree;
    match unramified_status(&cert.s) {
        UnramifiedStatus::RamifiedAt(ps) if ps.iter().any(|p| *p == 2u32.into()) => {
            let mut v =
                RealizabilityVerdict::new(SalemPairs::RealizableAllRootsOfS, VerdictTag::NbsII);
            v.witnesses.push(Witness::RamifiedAt {
                primes: ps.iter().map(|p| p.to_string()).collect(),
            });
            v
        }
        UnramifiedStatus::RamifiedAt(ps) | UnramifiedStatus::Unknown(ps) => {
            let mut v =
                RealizabilityVerdict::new(SalemPairs::Unknown, VerdictTag::RamificationOpen);
            v.witnesses.push(values_witness(cert));
            v.caveats.push(format!(
                "ramification at {} not resolved by the implemented rules",
                ps.iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            v
        }
        UnramifiedStatus::Unramified if d == 18 => degree_eighteen_unramified(cert, seed),
        UnramifiedStatus::Unramified => degree_ten_unramified(cert, seed, m_cap),
    }
}

fn degree_eighteen_unramified(cert: &SalemCertificate, seed: u64) -> RealizabilityVerdict {
    let cache = PiCache::new(seed);
    let mut witnesses = Vec::new();
    let mut open = Vec::new();
    for m in [3u64, 4, 6, 12] {
        let pi = cache
            .pair(&cert.s, &phi_m(m))
            .expect("a Salem polynomial is coprime to every cyclotomic");
        witnesses.extend(pi.members().into_iter().map(|p| Witness::Pi {
            m,
            p: p.to_string(),
        }));
        if pi
            .memberships
            .iter()
            .any(|x| x.status == Membership::Indeterminate)
        {
            open.push(m);
        }
    }
    if !witnesses.is_empty() {
        let mut v =
            RealizabilityVerdict::new(SalemPairs::RealizableAllRootsOfS, VerdictTag::D18Iff);
        v.witnesses = witnesses;
        return v;
    }
    if open.is_empty() {
        let mut v =
            RealizabilityVerdict::new(SalemPairs::NotRealizableForRootsOfS, VerdictTag::D18Iff);
        v.witnesses.push(Witness::PiEmpty {
            ms: vec![3, 4, 6, 12],
        });
        return v;
    }
    let mut v = RealizabilityVerdict::new(SalemPairs::Unknown, VerdictTag::D18Iff);
    v.caveats.push(format!(
        "Indeterminate primes in Pi_(S, Phi_m) for m in {open:?}"
    ));
    v
}

/// `m >= 3` with `phi(m) <= 12`, `m` not 13 or 26.
pub fn degree_ten_indices() -> Vec<u64> {
    (3..=DEFAULT_M_CAP)
        .filter(|&m| totient(m) <= 12 && m != 13 && m != 26)
        .collect()
}

fn degree_ten_unramified(cert: &SalemCertificate, seed: u64, m_cap: u64) -> RealizabilityVerdict {
    let cache = PiCache::new(seed);
    let mut witnesses = Vec::new();
    for m in degree_ten_indices() {
        let pi = cache
            .pair(&cert.s, &phi_m(m))
            .expect("a Salem polynomial is coprime to every cyclotomic");
        witnesses.extend(pi.members().into_iter().map(|p| Witness::Pi {
            m,
            p: p.to_string(),
        }));
    }
    if !witnesses.is_empty() {
        let mut v =
            RealizabilityVerdict::new(SalemPairs::RealizableAllRootsOfS, VerdictTag::D10Suff);
        v.witnesses = witnesses;
        return v;
    }
    let mut blocked = false;
    for maximum in [(3, 19), (3, 11)] {
        let search = search_with_cache(cert, maximum, m_cap, &cache);
        blocked |= search.blocked_by_indeterminate;
        if let Some((c, _)) = search.hit {
            let mut v =
                RealizabilityVerdict::new(SalemPairs::RealizableAllRootsOfS, VerdictTag::D10Suff);
            v.witnesses.push(Witness::Complement {
                maximum,
                product: c.to_string(),
            });
            return v;
        }
    }
    let mut v = RealizabilityVerdict::new(SalemPairs::Unknown, VerdictTag::Question10);
    v.caveats.push(format!(
        "no Pi_(S, Phi_m) member and no trivial-obstruction complement up to m = {m_cap}"
    ));
    if blocked {
        v.caveats
            .push("some complements were blocked only by Indeterminate edges".into());
    }
    v
}

fn require_degree(s: &IntPoly, expected: usize) -> Result<(), ClassifyError> {
    if s.deg() != expected {
        return Err(ClassifyError::DegreeMismatch {
            found: s.deg(),
            expected,
        });
    }
    Ok(())
}

/// `|S(1) S(-1)| = 1` and `Res(S, Phi_m) = ±1` for `m = 3, 4, 6, 12` exclude
/// every realization of the Salem number.
pub fn exclude_any_realization_deg18(s: &IntPoly) -> Result<Exclusion, ClassifyError> {
    require_degree(s, 18)?;
    let unit = |n: BigInt| n.abs().is_one();
    let hit = unit(s.at_one() * s.at_minus_one())
        && [3, 4, 6, 12].iter().all(|&m| unit(resultant(s, &phi_m(m))));
    Ok(if hit {
        Exclusion::Excluded
    } else {
        Exclusion::NotExcluded
    })
}

/// Excluded from projective surfaces when none of: `S(-1)` a square,
/// `|S(1)|` a square, `|S(1)| = 2 m^2` and `S(-1) = 2 n^2`.
pub fn exclude_projective_deg20(s: &IntPoly) -> Result<Exclusion, ClassifyError> {
    require_degree(s, 20)?;
    let (a, b) = (s.at_one().abs(), s.at_minus_one());
    let twice_square =
        |n: &BigInt| n.is_even() && n.sign() != num_bigint::Sign::Minus && is_square(&(n / 2));
    let allowed = is_square(&b) || is_square(&a) || (twice_square(&a) && twice_square(&b));
    Ok(if allowed {
        Exclusion::NotExcluded
    } else {
        Exclusion::Excluded
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum KondoKind {
    Sigma,
    Omega,
    /// Admissible with odd `m`; the full kernel group then has order `2m`.
    FoldsToDouble,
    NotAdmissible(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KondoClass {
    pub m: u64,
    pub class: KondoKind,
}

pub fn kondo_classify(m: u64) -> Result<KondoClass, ClassifyError> {
    if m < 3 {
        return Err(ClassifyError::IndexTooSmall(m));
    }
    let phi = totient(m);
    if phi > 20 {
        return Err(ClassifyError::TotientTooLarge { m, phi });
    }
    let (at1, atm1) =
        phi_values_at_pm1(m).expect("cyclotomic values agree with their closed forms");
    let class = if !atm1.is_one() {
        KondoKind::NotAdmissible(format!("Phi_{m}(-1) = {atm1}"))
    } else if !at1.is_one() {
        KondoKind::Omega
    } else if phi % 8 != 4 {
        KondoKind::NotAdmissible(format!("Phi_{m}(1) = 1 and phi = {phi} not 4 (mod 8)"))
    } else if m.is_multiple_of(2) {
        KondoKind::Sigma
    } else {
        KondoKind::FoldsToDouble
    };
    Ok(KondoClass { m, class })
}

/// Every `m >= 3` with `phi(m) <= 20`, classified.
pub fn kondo_table() -> Vec<KondoClass> {
    (3..=DEFAULT_M_CAP)
        .filter(|&m| totient(m) <= 20)
        .map(|m| kondo_classify(m).expect("in range"))
        .collect()
}

/// The hypothesis forcing `L = L_1 + L_2` for `S C`, `deg S = 18`, `deg C = 4`.
pub fn splitting_check(s: &IntPoly, c: &CyclotomicProduct) -> bool {
    if s.deg() != 18 || c.total_degree != 4 {
        return false;
    }
    let unit = |n: BigInt| n.abs().is_one();
    unit(s.at_one() * s.at_minus_one())
        && [3, 4, 6, 12].iter().all(|&m| unit(resultant(s, &phi_m(m))))
        && c.factors.iter().all(|(m, _)| [1, 2, 3, 4, 6].contains(m))
}
