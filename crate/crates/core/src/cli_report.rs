//! Polynomial parsing, the bundled Salem table, analysis reports, and the
//! parametric family scans.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::classifier::{
    classify_with_cap, exclude_any_realization_deg18, ClassifyError, Exclusion,
    RealizabilityVerdict,
};
use crate::cyclotomic::phi_m;
use crate::exact_poly::{inverse_trace_poly, resultant, IntPoly};
use crate::local_conditions::{check_c1, C1Report};
use crate::obstruction::{Membership, PiCache, UnramifiedStatus};
use crate::salem::{certify_salem, salem_value, SalemCertificate};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Polynomials shipped with the tool, in the table format.
pub const BUNDLED_TABLE: &str = include_str!("../data/salem_table.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

struct Parser {
    /// Non-whitespace characters with their offsets.
    chars: Vec<(usize, char)>,
    idx: usize,
    len: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        let chars: Vec<(usize, char)> = src
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Parser {
            chars,
            idx: 0,
            len: src.chars().count(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.idx).map_or(self.len, |&(p, _)| p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.idx += 1;
        }
        (!s.is_empty()).then_some(s)
    }

    /// `integer | integer? 'x' ('^' unsigned)?`, returning `(coeff, degree)`.
    fn term(&mut self) -> Result<(BigInt, usize), ParseError> {
        let coeff = self
            .digits()
            .map(|d| d.parse::<BigInt>().expect("ascii digits"));
        match self.peek() {
            Some('x' | 'X') => {
                self.idx += 1;
                let mut deg = 1;
                if self.peek() == Some('^') {
                    self.idx += 1;
                    let Some(e) = self.digits() else {
                        return self.err("expected an exponent after '^'");
                    };
                    deg = match e.parse::<usize>() {
                        Ok(v) if v <= 1 << 16 => v,
                        _ => return self.err("exponent too large"),
                    };
                }
                Ok((coeff.unwrap_or_else(|| 1.into()), deg))
            }
            _ => match coeff {
                Some(c) => Ok((c, 0)),
                None => self.err("expected an integer or 'x'"),
            },
        }
    }
}

/// Parses `term (('+'|'-') term)*` with an optional leading sign.
pub fn parse_poly(text: &str) -> Result<IntPoly, ParseError> {
    let mut p = Parser::new(text);
    if p.peek().is_none() {
        return p.err("empty input");
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut sign = 1;
    match p.peek() {
        Some('-') => {
            sign = -1;
            p.idx += 1;
        }
        Some('+') => p.idx += 1,
        _ => {}
    }
    loop {
        let (c, k) = p.term()?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::zero());
        }
        coeffs[k] += if sign < 0 { -c } else { c };
        match p.peek() {
            None => break,
            Some('+') => sign = 1,
            Some('-') => sign = -1,
            Some(c) => return p.err(format!("unexpected '{c}'")),
        }
        p.idx += 1;
    }
    Ok(IntPoly::new(coeffs))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: bad coefficient '{token}'")]
    BadCoefficient { line: usize, token: String },
    #[error("line {line}: not a Salem polynomial ({reason})")]
    NotSalem { line: usize, reason: String },
}

#[derive(Debug, Clone)]
pub struct TableEntry {
    /// One-based line number in the source.
    pub line: usize,
    pub comment: Option<String>,
    pub cert: SalemCertificate,
}

/// Comma-separated descending coefficients per line; `#` starts a comment;
/// a comment line directly above an entry becomes its label.
pub fn parse_table(text: &str) -> Result<Vec<TableEntry>, TableError> {
    let mut out = Vec::new();
    let mut pending: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b.trim(), Some(c.trim().to_string())),
            None => (raw.trim(), None),
        };
        if body.is_empty() {
            pending = if raw.trim().is_empty() { None } else { comment };
            continue;
        }
        let mut desc = Vec::new();
        for tok in body.split(',') {
            let tok = tok.trim();
            desc.push(
                tok.parse::<BigInt>()
                    .map_err(|_| TableError::BadCoefficient {
                        line,
                        token: tok.to_string(),
                    })?,
            );
        }
        desc.reverse();
        let cert = certify_salem(&IntPoly::new(desc)).map_err(|e| TableError::NotSalem {
            line,
            reason: e.to_string(),
        })?;
        out.push(TableEntry {
            line,
            comment: comment.or(pending.take()),
            cert,
        });
    }
    Ok(out)
}

/// Descending comma-separated coefficients, the table line for `f`.
pub fn table_line(f: &IntPoly) -> String {
    f.coeffs()
        .iter()
        .rev()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// `q` rounded half-up to `places` decimals.
pub fn format_decimal(q: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = q * BigRational::from_integer(scale.clone());
    let rounded = (scaled + BigRational::new(1.into(), 2.into()))
        .floor()
        .to_integer();
    let (int, frac) = rounded.abs().div_rem(&scale);
    let sign = if rounded.is_negative() { "-" } else { "" };
    format!("{sign}{int}.{frac:0>width$}", width = places as usize)
}

/// `alpha` to 10 decimals from an interval of width below `10^-12`.
pub fn alpha_decimal(cert: &SalemCertificate) -> String {
    format_decimal(&salem_value(cert, 44).midpoint(), 10)
}

#[derive(Debug, Clone, Serialize)]
pub struct SalemSummary {
    pub degree: usize,
    pub alpha: String,
    #[serde(serialize_with = "ser_bigint")]
    pub s_at_1: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub s_at_minus1: BigInt,
}

#[derive(Debug, Clone, Serialize)]
pub struct PiPrime {
    #[serde(serialize_with = "ser_biguint")]
    pub p: BigUint,
    pub status: Membership,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PiRow {
    pub m: u64,
    pub primes: Vec<PiPrime>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictBlock {
    pub salem_pairs: crate::classifier::SalemPairs,
    pub any_realization: crate::classifier::AnyRealization,
    pub projective: crate::classifier::Projective,
    pub tag: crate::classifier::VerdictTag,
    pub witnesses: Vec<crate::classifier::Witness>,
    pub caveats: Vec<String>,
}

impl From<RealizabilityVerdict> for VerdictBlock {
    fn from(v: RealizabilityVerdict) -> Self {
        VerdictBlock {
            salem_pairs: v.salem_pairs,
            any_realization: v.any_realization,
            projective: v.projective,
            tag: v.tag,
            witnesses: v.witnesses,
            caveats: v.caveats,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub version: &'static str,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub input: String,
    pub salem: SalemSummary,
    pub c1: C1Report,
    pub unramified: String,
    pub pi: Vec<PiRow>,
    pub verdict: VerdictBlock,
    pub meta: Meta,
}

pub fn unramified_label(u: &UnramifiedStatus) -> String {
    let join = |v: &[BigUint]| {
        v.iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    match u {
        UnramifiedStatus::Unramified => "Unramified".into(),
        UnramifiedStatus::RamifiedAt(ps) => format!("RamifiedAt({})", join(ps)),
        UnramifiedStatus::Unknown(ps) => format!("Unknown({})", join(ps)),
    }
}

/// The `Pi_{S, Phi_m}` table for `3 <= m <= m_cap`.
pub fn pi_table(s: &IntPoly, m_cap: u64, seed: u64) -> Vec<PiRow> {
    let cache = PiCache::new(seed);
    (3..=m_cap)
        .map(|m| {
            let primes = match cache.pair(s, &phi_m(m)) {
                Ok(r) => r
                    .memberships
                    .into_iter()
                    .map(|x| PiPrime {
                        p: x.p,
                        status: x.status,
                        witness: x.witness.map(|w| w.to_string()),
                    })
                    .collect(),
                Err(_) => Vec::new(),
            };
            PiRow { m, primes }
        })
        .collect()
}

pub fn analyze(
    input: &str,
    s: &IntPoly,
    seed: u64,
    m_cap: u64,
) -> Result<AnalysisReport, ClassifyError> {
    let cert = certify_salem(s)?;
    let verdict = classify_with_cap(s, seed, m_cap)?;
    Ok(AnalysisReport {
        input: input.to_string(),
        salem: SalemSummary {
            degree: cert.degree,
            alpha: alpha_decimal(&cert),
            s_at_1: cert.s_at_1.clone(),
            s_at_minus1: cert.s_at_minus1.clone(),
        },
        c1: check_c1(s),
        unramified: unramified_label(&crate::obstruction::unramified_status(s)),
        pi: pi_table(s, m_cap, seed),
        verdict: verdict.into(),
        meta: Meta {
            version: VERSION,
            seed,
        },
    })
}

/// Plain-text rendering of a report; only nonempty `Pi` rows are listed.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("input        {}", r.input));
    line(format!("degree       {}", r.salem.degree));
    line(format!("alpha        {}", r.salem.alpha));
    line(format!(
        "S(1), S(-1)  {}, {}",
        r.salem.s_at_1, r.salem.s_at_minus1
    ));
    line(format!(
        "(C1)         {}",
        if r.c1.holds { "holds" } else { "fails" }
    ));
    line(format!("ramification {}", r.unramified));
    for row in r.pi.iter().filter(|row| !row.primes.is_empty()) {
        let cells: Vec<String> = row
            .primes
            .iter()
            .map(|x| match &x.witness {
                Some(w) => format!("{} {:?} [{w}]", x.p, x.status),
                None => format!("{} {:?}", x.p, x.status),
            })
            .collect();
        line(format!("Pi(S, Phi_{:<3}) {}", row.m, cells.join("; ")));
    }
    let v = &r.verdict;
    line(format!(
        "verdict      {:?} / {:?} / projective {:?}",
        v.salem_pairs, v.any_realization, v.projective
    ));
    line(format!("tag          {}", v.tag.as_str()));
    for w in &v.witnesses {
        line(format!(
            "witness      {}",
            serde_json::to_string(w).expect("plain data")
        ));
    }
    for c in &v.caveats {
        line(format!("caveat       {c}"));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sa,
    Gm10,
    B,
    Smyth18,
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sa" => Ok(Family::Sa),
            "gm10" => Ok(Family::Gm10),
            "b" => Ok(Family::B),
            "smyth18" => Ok(Family::Smyth18),
            _ => Err(format!("unknown family '{s}' (sa, gm10, b, smyth18)")),
        }
    }
}

/// `S_a = X^6 - a X^5 - X^4 + (2a-1) X^3 - X^2 - a X + 1`.
pub fn family_sa(a: i64) -> IntPoly {
    IntPoly::from_desc_i64s(&[1, -a, -1, 2 * a - 1, -1, -a, 1])
}

/// `X^5 R(X + 1/X)` with `R = (X+1)^2 (X^2-4)(X-a) - 1`.
pub fn family_gm10(a: i64) -> IntPoly {
    let r = &(&(&IntPoly::from_i64s(&[1, 1]).pow(2) * &IntPoly::from_i64s(&[-4, 0, 1]))
        * &IntPoly::linear_root(a))
        - &IntPoly::one();
    inverse_trace_poly(&r)
}

/// `X^5 R(X + 1/X)` with `R = (X^2-4)(X^3 + a X^2 + (b-1) X + c) - 1`.
pub fn family_b(a: i64, b: i64, c: i64) -> IntPoly {
    let r = &(&IntPoly::from_i64s(&[-4, 0, 1]) * &IntPoly::from_i64s(&[c, b - 1, a, 1]))
        - &IntPoly::one();
    inverse_trace_poly(&r)
}

/// `X^9 R_a(X + 1/X)` with `R_a = X^2 (X^2-4)(X^2-3)(X^2-1)(X-a) - 1`.
pub fn family_smyth18(a: i64) -> IntPoly {
    let r = [
        IntPoly::from_i64s(&[0, 0, 1]),
        IntPoly::from_i64s(&[-4, 0, 1]),
        IntPoly::from_i64s(&[-3, 0, 1]),
        IntPoly::from_i64s(&[-1, 0, 1]),
        IntPoly::linear_root(a),
    ]
    .iter()
    .fold(IntPoly::one(), |acc, f| &acc * f);
    inverse_trace_poly(&(&r - &IntPoly::one()))
}

/// Triples `(a, b, c)` for family `b` indexed by `a`: `c in {0, 1}`,
/// `b in {-1, 0, 1}`, kept when `c >= 0` and `a + c < -|b|`.
pub fn family_b_triples(a: i64) -> Vec<(i64, i64, i64)> {
    let mut v = Vec::new();
    for c in 0..=1 {
        for b in -1..=1i64 {
            if a + c < -b.abs() {
                v.push((a, b, c));
            }
        }
    }
    v
}

#[derive(Debug, Clone, Serialize)]
pub struct FormulaCheck {
    pub name: String,
    #[serde(serialize_with = "ser_bigint")]
    pub value: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub expected: BigInt,
    pub holds: bool,
}

fn check(name: &str, value: &BigInt, expected: BigInt) -> FormulaCheck {
    FormulaCheck {
        name: name.into(),
        holds: *value == expected,
        value: value.clone(),
        expected,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub family: Family,
    pub params: Vec<i64>,
    pub poly: IntPoly,
    pub salem: bool,
    pub checks: Vec<FormulaCheck>,
    pub tag: Option<String>,
    pub salem_pairs: Option<crate::classifier::SalemPairs>,
    pub excluded: Option<Exclusion>,
    pub error: Option<String>,
}

/// Rows of the scan at one parameter value (several for family `b`).
pub fn scan_item(family: Family, a: i64, seed: u64, m_cap: u64) -> Vec<ScanRow> {
    let items: Vec<(Vec<i64>, IntPoly)> = match family {
        Family::Sa => vec![(vec![a], family_sa(a))],
        Family::Gm10 => vec![(vec![a], family_gm10(a))],
        Family::B => family_b_triples(a)
            .into_iter()
            .map(|(x, y, z)| (vec![x, y, z], family_b(x, y, z)))
            .collect(),
        Family::Smyth18 => vec![(vec![a], family_smyth18(a))],
    };
    items
        .into_iter()
        .map(|(params, s)| scan_row(family, params, s, seed, m_cap))
        .collect()
}

fn scan_row(family: Family, params: Vec<i64>, s: IntPoly, seed: u64, m_cap: u64) -> ScanRow {
    let big = |n: i64| BigInt::from(n);
    let res = |m: u64| resultant(&s, &phi_m(m));
    let mut checks = Vec::new();
    match family {
        Family::Sa => {
            let a = params[0];
            let (r3, r4) = (res(3), res(4));
            checks.push(check("Res(S,Phi_3) = 3(a+1)-1", &r3, big(3 * (a + 1) - 1)));
            checks.push(check(
                "Res(S,Phi_3) = (3(a+1)-1)^2",
                &r3,
                big(3 * (a + 1) - 1).pow(2),
            ));
            checks.push(check("Res(S,Phi_4) = 4a-1", &r4, big(4 * a - 1)));
            checks.push(check("Res(S,Phi_4) = (4a-1)^2", &r4, big(4 * a - 1).pow(2)));
        }
        Family::Gm10 => {
            let a = params[0];
            checks.push(check(
                "Res(S,Phi_4) = (4a-1)^2",
                &res(4),
                big(4 * a - 1).pow(2),
            ));
        }
        Family::B => {
            let (a, b, c) = (params[0], params[1], params[2]);
            let r3 = res(3);
            let f = -3 * (a - b + c) - 1;
            checks.push(check("Res(S,Phi_3) = -3(a-b+c)-1", &r3, big(f)));
            checks.push(check("Res(S,Phi_3) = (-3(a-b+c)-1)^2", &r3, big(f).pow(2)));
        }
        Family::Smyth18 => {
            checks.push(check(
                "|S(1)S(-1)| = 1",
                &(s.at_one() * s.at_minus_one()).abs(),
                big(1),
            ));
            for m in [3, 4, 6, 12] {
                checks.push(check(
                    &format!("|Res(S,Phi_{m})| = 1"),
                    &res(m).abs(),
                    big(1),
                ));
            }
        }
    }
    let mut row = ScanRow {
        family,
        params,
        poly: s.clone(),
        salem: false,
        checks,
        tag: None,
        salem_pairs: None,
        excluded: None,
        error: None,
    };
    match classify_with_cap(&s, seed, m_cap) {
        Ok(v) => {
            row.salem = true;
            row.tag = Some(v.tag.as_str().to_string());
            row.salem_pairs = Some(v.salem_pairs);
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    if family == Family::Smyth18 && row.salem {
        row.excluded = exclude_any_realization_deg18(&s).ok();
    }
    row
}

pub fn scan(family: Family, from: i64, to: i64, seed: u64, m_cap: u64) -> Vec<ScanRow> {
    (from..=to)
        .flat_map(|a| scan_item(family, a, seed, m_cap))
        .collect()
}

/// Largest integer every JSON consumer reads exactly.
const JSON_SAFE: u64 = (1 << 53) - 1;

/// Integers beyond 2^53 are written as decimal strings.
pub(crate) fn ser_bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match n.to_i64() {
        Some(v) if v.unsigned_abs() <= JSON_SAFE => s.serialize_i64(v),
        _ => s.collect_str(n),
    }
}

pub(crate) fn ser_biguint<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match n.to_u64() {
        Some(v) if v <= JSON_SAFE => s.serialize_u64(v),
        _ => s.collect_str(n),
    }
}

pub(crate) fn ser_biguint_vec<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct Wrap<'a>(&'a BigUint);
    impl Serialize for Wrap<'_> {
        fn serialize<S2: Serializer>(&self, s: S2) -> Result<S2::Ok, S2::Error> {
            ser_biguint(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for n in v {
        seq.serialize_element(&Wrap(n))?;
    }
    seq.end()
}
