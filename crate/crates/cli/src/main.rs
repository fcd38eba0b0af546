use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use salemk3::classifier::{
    classify_with_cap, kondo_classify, kondo_table, ClassifyError, KondoClass, KondoKind,
};
use salemk3::cli_report::{
    alpha_decimal, analyze, parse_poly, parse_table, render_text, scan_item, Family, ScanRow,
    TableError,
};
use salemk3::cyclotomic::DEFAULT_M_CAP;
use salemk3::exact_poly::{resultant, IntPoly};
use salemk3::local_conditions::check_c1;
use salemk3::obstruction::{obstruction_group, pi_set, ObstructionError};
use salemk3::salem::{
    certify_salem, decompose_symmetric, power_min_poly, SalemCertificate, SalemError,
};

#[derive(Parser)]
#[command(
    name = "salemk3",
    version,
    about = "Salem numbers and automorphisms of K3 surfaces"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SeedArg {
    /// Seed for the randomized factorization steps.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Full realizability report for one polynomial.
    Analyze {
        /// Polynomial such as "x^10+x^9-x^7-...", or @path to read it from a file.
        poly: String,
        #[command(flatten)]
        seed: SeedArg,
        /// Largest cyclotomic index considered.
        #[arg(long, env = "SALEMK3_M_CAP")]
        m_cap: Option<u64>,
    },
    /// Salem certification.
    #[command(subcommand)]
    Salem(SalemCommand),
    /// The set of primes Pi_(f,g) with per-prime status.
    Pi {
        f: String,
        g: String,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Exact resultant of two polynomials.
    Resultant { f: String, g: String },
    /// Obstruction group of a symmetric polynomial.
    Obstruction {
        poly: String,
        /// Defaults to the multiplicity of X-1.
        #[arg(long)]
        s_plus: Option<usize>,
        /// Defaults to the multiplicity of X+1.
        #[arg(long)]
        s_minus: Option<usize>,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Classification of cyclotomic orders for purely non-symplectic automorphisms.
    Kondo {
        m: Option<u64>,
        #[arg(long, conflicts_with = "m")]
        all: bool,
    },
    /// Minimal polynomial of the k-th power of a Salem number.
    Power { poly: String, k: u32 },
    /// Resultant formulas and verdicts over a parametrized family.
    Scan {
        #[arg(long)]
        family: Family,
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
        /// Worker threads; defaults to the number of cores.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Certify (and optionally classify) every polynomial of a Salem table file.
    Table {
        file: String,
        #[arg(long)]
        classify: bool,
        #[command(flatten)]
        seed: SeedArg,
    },
}

#[derive(Subcommand)]
enum SalemCommand {
    /// Certify that a polynomial is Salem and print its Salem number.
    Check { poly: String },
}

enum Failure {
    Input(String),
    Internal(String),
}

type Outcome = Result<(), Failure>;

impl From<SalemError> for Failure {
    fn from(e: SalemError) -> Self {
        match e {
            SalemError::InternalDegeneracy(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::NotSalem(inner) => inner.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<ObstructionError> for Failure {
    fn from(e: ObstructionError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<TableError> for Failure {
    fn from(e: TableError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_source(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure::Input(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn poly_arg(arg: &str) -> Result<IntPoly, Failure> {
    let text = read_source(arg)?;
    parse_poly(&text).map_err(|e| Failure::Input(format!("{e} in \"{text}\"")))
}

fn certify(f: &IntPoly) -> Result<SalemCertificate, Failure> {
    Ok(certify_salem(f)?)
}

// A closed downstream pipe (e.g. `| head`) is not an error worth reporting.
fn emit(json: bool, value: Value, text: impl FnOnce() -> String) {
    let body = if json {
        serde_json::to_string_pretty(&value).expect("serializable") + "\n"
    } else {
        text()
    };
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(body.as_bytes()).and_then(|()| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Analyze { poly, seed, m_cap } => {
            run_analyze(json, &poly, seed.seed, m_cap.unwrap_or(DEFAULT_M_CAP))
        }
        Command::Salem(SalemCommand::Check { poly }) => run_salem_check(json, &poly),
        Command::Pi { f, g, seed } => run_pi(json, &f, &g, seed.seed),
        Command::Resultant { f, g } => {
            let r = resultant(&poly_arg(&f)?, &poly_arg(&g)?);
            emit(json, json!({ "resultant": r.to_string() }), || {
                format!("{r}\n")
            });
            Ok(())
        }
        Command::Obstruction {
            poly,
            s_plus,
            s_minus,
            seed,
        } => run_obstruction(json, &poly, s_plus, s_minus, seed.seed),
        Command::Kondo { m, all } => run_kondo(json, m, all),
        Command::Power { poly, k } => run_power(json, &poly, k),
        Command::Scan {
            family,
            from,
            to,
            jobs,
            seed,
        } => run_scan(json, family, from, to, jobs, seed.seed),
        Command::Table {
            file,
            classify,
            seed,
        } => run_table(json, &file, classify, seed.seed),
    }
}

fn m_cap_from_env() -> Result<u64, Failure> {
    match std::env::var("SALEMK3_M_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("SALEMK3_M_CAP: not a number: {v}"))),
        Err(_) => Ok(DEFAULT_M_CAP),
    }
}

fn run_analyze(json: bool, arg: &str, seed: u64, m_cap: u64) -> Outcome {
    let text = read_source(arg)?;
    let s = parse_poly(&text).map_err(|e| Failure::Input(format!("{e} in \"{text}\"")))?;
    let report = analyze(&text, &s, seed, m_cap)?;
    emit(
        json,
        serde_json::to_value(&report).expect("serializable"),
        || render_text(&report),
    );
    Ok(())
}

fn run_salem_check(json: bool, arg: &str) -> Outcome {
    let f = poly_arg(arg)?;
    let c = certify(&f)?;
    let alpha = alpha_decimal(&c);
    let value = json!({
        "poly": f.to_string(),
        "degree": c.degree,
        "alpha": alpha,
        "trace_poly": c.trace_r.to_string(),
        "s_at_1": c.s_at_1.to_string(),
        "s_at_minus1": c.s_at_minus1.to_string(),
        "c1": check_c1(&f).holds,
    });
    emit(json, value, || {
        format!(
            "Salem, degree {}\nalpha        {alpha}\ntrace poly   {}\nS(1), S(-1)  {}, {}\n",
            c.degree, c.trace_r, c.s_at_1, c.s_at_minus1
        )
    });
    Ok(())
}

fn run_pi(json: bool, f: &str, g: &str, seed: u64) -> Outcome {
    let (f, g) = (poly_arg(f)?, poly_arg(g)?);
    let r = pi_set(&f, &g, seed)?;
    emit(
        json,
        serde_json::to_value(&r).expect("serializable"),
        || {
            let mut out = format!("Res = {}\n", resultant(&f, &g));
            for m in &r.memberships {
                let witness = m
                    .witness
                    .as_ref()
                    .map(|w| format!(" witness {}", w.to_int_poly()))
                    .unwrap_or_default();
                out.push_str(&format!(
                    "p = {:<6} {:?}{witness}\n",
                    m.p.to_string(),
                    m.status
                ));
            }
            let members: Vec<String> = r.members().iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("Pi = {{{}}}\n", members.join(", ")));
            out
        },
    );
    Ok(())
}

fn run_obstruction(
    json: bool,
    arg: &str,
    s_plus: Option<usize>,
    s_minus: Option<usize>,
    seed: u64,
) -> Outcome {
    let f = poly_arg(arg)?;
    let d = decompose_symmetric(&f)?;
    let (sp, sm) = (s_plus.unwrap_or(d.n_plus), s_minus.unwrap_or(d.n_minus));
    let g = obstruction_group(&f, sp, sm, seed)?;
    emit(
        json,
        serde_json::to_value(&g).expect("serializable"),
        || {
            let mut out = String::new();
            for (i, n) in g.nodes.iter().enumerate() {
                out.push_str(&format!("node {i}: {n}\n"));
            }
            for e in &g.edges {
                out.push_str(&format!(
                    "edge {} - {} at p = {} ({:?})\n",
                    e.f, e.g, e.prime, e.rule
                ));
            }
            for (a, b) in &g.undecided {
                out.push_str(&format!("undecided {a} - {b}\n"));
            }
            out.push_str(&format!(
                "components {}\nrank {} ({:?})\n",
                g.components.len(),
                g.gf_rank,
                g.exactness
            ));
            out
        },
    );
    Ok(())
}

fn kondo_label(k: &KondoKind) -> String {
    match k {
        KondoKind::NotAdmissible(why) => format!("not admissible: {why}"),
        other => format!("{other:?}"),
    }
}

fn run_kondo(json: bool, m: Option<u64>, all: bool) -> Outcome {
    let rows: Vec<KondoClass> = match (m, all) {
        (Some(m), _) => vec![kondo_classify(m)?],
        (None, _) => kondo_table(),
    };
    let pick = |want: KondoKind| {
        rows.iter()
            .filter(|r| r.class == want)
            .map(|r| r.m)
            .collect::<Vec<_>>()
    };
    let (sigma, omega) = (pick(KondoKind::Sigma), pick(KondoKind::Omega));
    let full = m.is_none();
    emit(
        json,
        json!({ "rows": rows, "sigma": if full { json!(sigma) } else { Value::Null }, "omega": if full { json!(omega) } else { Value::Null } }),
        || {
            let mut out = String::new();
            for r in &rows {
                out.push_str(&format!("m = {:<3} {}\n", r.m, kondo_label(&r.class)));
            }
            if full {
                out.push_str(&format!("Sigma = {sigma:?}\nOmega = {omega:?}\n"));
            }
            out
        },
    );
    Ok(())
}

fn run_power(json: bool, arg: &str, k: u32) -> Outcome {
    if k == 0 {
        return Err(Failure::Input("k must be positive".into()));
    }
    let c = certify(&poly_arg(arg)?)?;
    let pk = power_min_poly(&c, k)?;
    let ck = certify(&pk)
        .map_err(|_| Failure::Internal(format!("power {k} did not certify as Salem")))?;
    let alpha = alpha_decimal(&ck);
    emit(
        json,
        json!({ "k": k, "poly": pk.to_string(), "alpha": alpha }),
        || format!("{pk}\nalpha^{k} = {alpha}\n"),
    );
    Ok(())
}

fn run_scan(
    json: bool,
    family: Family,
    from: i64,
    to: i64,
    jobs: Option<usize>,
    seed: u64,
) -> Outcome {
    if from > to {
        return Err(Failure::Input(format!("empty range {from}..={to}")));
    }
    let m_cap = m_cap_from_env()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        pool = pool.num_threads(n.max(1));
    }
    let pool = pool.build().map_err(|e| Failure::Internal(e.to_string()))?;
    // `collect` on an indexed parallel iterator keeps input order.
    let rows: Vec<ScanRow> = pool
        .install(|| {
            (from..=to)
                .into_par_iter()
                .map(|a| scan_item(family, a, seed, m_cap))
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
    emit(
        json,
        serde_json::to_value(&rows).expect("serializable"),
        || {
            let mut out = String::new();
            for r in &rows {
                let params: Vec<String> = r.params.iter().map(|p| p.to_string()).collect();
                let checks: Vec<String> = r
                    .checks
                    .iter()
                    .map(|c| format!("{} [{}]", c.name, if c.holds { "ok" } else { "fails" }))
                    .collect();
                let verdict = match (&r.tag, &r.salem_pairs, &r.error) {
                    (Some(t), Some(v), _) => format!("{v:?} ({t})"),
                    (_, _, Some(e)) => e.clone(),
                    _ => String::new(),
                };
                let excluded = r.excluded.map(|e| format!(" {e:?}")).unwrap_or_default();
                out.push_str(&format!(
                    "({}) {} | {verdict}{excluded}\n",
                    params.join(","),
                    checks.join("; ")
                ));
            }
            out
        },
    );
    Ok(())
}

fn run_table(json: bool, file: &str, classify: bool, seed: u64) -> Outcome {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("{file}: {e}")))?;
    let entries = parse_table(&text)?;
    let m_cap = m_cap_from_env()?;
    let mut rows = Vec::new();
    for e in &entries {
        let mut row = json!({
            "line": e.line,
            "comment": e.comment,
            "poly": e.cert.s.to_string(),
            "degree": e.cert.degree,
            "alpha": alpha_decimal(&e.cert),
        });
        if classify {
            let v = classify_with_cap(&e.cert.s, seed, m_cap)?;
            row["tag"] = json!(v.tag.as_str());
            row["salem_pairs"] = json!(v.salem_pairs);
        }
        rows.push(row);
    }
    emit(json, Value::Array(rows.clone()), || {
        let mut out = String::new();
        for r in &rows {
            let verdict = match (r.get("salem_pairs"), r.get("tag")) {
                (Some(v), Some(t)) => format!(
                    " {} ({})",
                    v.as_str().unwrap_or_default(),
                    t.as_str().unwrap_or_default()
                ),
                _ => String::new(),
            };
            out.push_str(&format!(
                "line {:<3} d = {:<2} alpha = {}{verdict}\n",
                r["line"],
                r["degree"],
                r["alpha"].as_str().unwrap_or_default()
            ));
        }
        out
    });
    Ok(())
}
