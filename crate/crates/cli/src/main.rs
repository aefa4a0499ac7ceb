use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use padic_codes::catalog::{self, NamedCode};
use padic_codes::census::{self, CodeReport};
use padic_codes::code::{
    mds_exact, mds_finite, mds_sampled, CyclicCode, CyclicRing, Extension, DEFAULT_BUDGET,
};
use padic_codes::gfp::factor_cyclotomic;
use padic_codes::hensel::{lift_by_pth_powers, lift_factorization};
use padic_codes::verify::{self, VerifyOptions};
use padic_codes::{Error, Poly, Zq, ZqInt};

#[derive(Parser)]
#[command(
    name = "padic-codes",
    version,
    about = "Cyclic codes over Z/p^a and the p-adic integers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor X^n - 1 mod p into irreducibles, lifted when --prec > 1.
    Factor(FactorArgs),
    /// Lift the factorization of X^n - 1 to Z/p^prec.
    Lift(LiftArgs),
    /// Lift a simple root of a polynomial to Z/p^prec.
    Solve(SolveArgs),
    /// Describe one cyclic code.
    Code(CodeArgs),
    /// Enumerate every cyclic code of length n over Z/p^a.
    Census(CensusArgs),
    /// Build a named code.
    Catalog(CatalogArgs),
    /// Run the reproduction battery.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Shape {
    /// Code length.
    #[arg(long)]
    n: usize,
    /// Residue characteristic.
    #[arg(long)]
    p: u64,
}

#[derive(Args)]
struct FactorArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long, default_value_t = 1)]
    prec: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Hensel,
    PthPower,
}

#[derive(Args)]
struct LiftArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long, default_value_t = 8)]
    prec: u32,
    #[arg(long, value_enum, default_value_t = Method::Hensel)]
    method: Method,
}

#[derive(Args)]
struct SolveArgs {
    /// Polynomial, constant term first, e.g. "2,-1,1".
    #[arg(long)]
    poly: String,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 8)]
    prec: u32,
    /// Root mod p to start from.
    #[arg(long, default_value_t = 0)]
    r0: u64,
    /// Print base-p digits, least significant first, instead of the residue.
    #[arg(long)]
    digits: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeAction {
    Info,
    Dual,
    Distance,
    Idempotent,
    Principal,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["gens", "exponents"])))]
struct CodeArgs {
    #[arg(value_enum)]
    action: CodeAction,
    #[command(flatten)]
    shape: Shape,
    /// Precision a of Z/p^a.
    #[arg(long, visible_alias = "prec", default_value_t = 8)]
    a: u32,
    /// Generators separated by ';', each constant term first.
    #[arg(long)]
    gens: Option<String>,
    /// Exponent vector m_0,m_1,... of the ideal.
    #[arg(long)]
    exponents: Option<String>,
    /// zero_sum, one, qr, or an integer appended (times p^j on block j).
    #[arg(long)]
    extend: Option<String>,
    /// Enumerate codewords for minimum distances.
    #[arg(long)]
    distances: bool,
    /// Treat the ring as a working-precision model of the p-adic integers.
    #[arg(long)]
    infinite: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    max_enum: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct CensusArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long, visible_alias = "prec", default_value_t = 8)]
    a: u32,
    #[arg(long)]
    distances: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    max_enum: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Named {
    Hamming,
    Golay2,
    Golay3,
    Qr,
    Bch,
    Rm,
    Lee,
    Table1,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(value_enum)]
    which: Named,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 8)]
    prec: u32,
    /// Quadratic-residue code 1 or 2.
    #[arg(long, default_value_t = 1)]
    code: u8,
    #[arg(long, default_value_t = 2)]
    p: u64,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    delta: Option<usize>,
    /// Largest precision of the Lee table.
    #[arg(long, default_value_t = 6)]
    a_max: u32,
    /// Exhaustive minor checks instead of sampling.
    #[arg(long)]
    full: bool,
    /// Minors sampled when not --full.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long)]
    distances: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    max_enum: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Paper,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFormat {
    Text,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::Paper)]
    suite: Suite,
    /// Exhaustive 12 x 12 Golay minors (slow).
    #[arg(long)]
    full: bool,
    /// Only run these check numbers.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u32>,
    /// Append elapsed times (makes output run-dependent).
    #[arg(long)]
    timings: bool,
    #[arg(long, value_enum, default_value_t = VerifyFormat::Text)]
    format: VerifyFormat,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    max_enum: u64,
}

/// A failure reported as `{code, message, context}` on stderr.
struct Failure {
    code: String,
    message: String,
    exit: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            code: e.code().into(),
            message: e.to_string(),
            exit: 1,
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = match &cli.command {
        Command::Factor(_) => "factor",
        Command::Lift(_) => "lift",
        Command::Solve(_) => "solve",
        Command::Code(_) => "code",
        Command::Census(_) => "census",
        Command::Catalog(_) => "catalog",
        Command::Verify(_) => "verify",
    };
    let result = configure_threads().and_then(|()| run(cli.command));
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let obj =
                json!({ "code": f.code, "message": f.message, "context": { "command": name } });
            eprintln!("{obj}");
            ExitCode::from(f.exit)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("PADIC_THREADS") else {
        return Ok(());
    };
    let threads = v
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure {
            code: "InvalidArgument".into(),
            message: format!("PADIC_THREADS must be a positive integer, got {v:?}"),
            exit: 2,
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure {
            code: "InvalidArgument".into(),
            message: e.to_string(),
            exit: 2,
        })
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Factor(a) => factor(&a),
        Command::Lift(a) => lift(&a),
        Command::Solve(a) => solve(&a),
        Command::Code(a) => code(&a),
        Command::Census(a) => census_cmd(&a),
        Command::Catalog(a) => catalog_cmd(&a),
        Command::Verify(a) => verify_cmd(&a),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn factor(a: &FactorArgs) -> Outcome {
    let base = factor_cyclotomic(a.shape.n, a.shape.p)?;
    let lifted = lift_factorization(&base, a.prec)?;
    let mut out = String::new();
    for (coset, f) in base.cosets().iter().zip(&lifted) {
        writeln!(out, "C{}: {f}", coset[0]).unwrap();
    }
    Ok(out)
}

fn lift(a: &LiftArgs) -> Outcome {
    let base = factor_cyclotomic(a.shape.n, a.shape.p)?;
    let lifted = match a.method {
        Method::Hensel => lift_factorization(&base, a.prec)?,
        Method::PthPower => lift_by_pth_powers(&base, a.prec)?,
    };
    Ok(lifted.iter().map(|f| format!("{f}\n")).collect())
}

fn solve(a: &SolveArgs) -> Outcome {
    let zq = Zq::new(a.p, a.prec)?;
    let f = Poly::parse(&zq, &a.poly)?;
    let root = padic_codes::zq::hensel_root(&f, a.r0)?;
    Ok(format!("{}\n", zq_text(&root, a.digits)))
}

fn zq_text(x: &ZqInt, digits: bool) -> String {
    if !digits {
        return x.residue().to_string();
    }
    let d = x.digits();
    if x.ring().p() <= 10 {
        d.iter().map(|v| v.to_string()).collect()
    } else {
        d.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn parse_extension(text: &str, zq: &Zq) -> Result<Extension, Failure> {
    Ok(match text {
        "zero_sum" => Extension::ZeroSum,
        "one" => Extension::AppendConstant(zq.one()),
        "qr" => Extension::QrSelfDual,
        other => Extension::AppendConstant(zq.parse(other)?),
    })
}

fn parse_exponents(text: &str) -> Result<Vec<u32>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Failure::from(Error::Parse(format!("bad exponent {:?}", t.trim()))))
        })
        .collect()
}

/// Canonical generators in the polynomial text format, `;`-separated.
fn gens_text(code: &CyclicCode) -> String {
    let chain = code.chain();
    if chain.is_empty() {
        return "0".into();
    }
    let p = code.ring().p();
    let parts: Vec<String> = chain
        .iter()
        .map(|e| e.f.scale_int(p.pow(e.m)).to_string())
        .collect();
    parts.join(";")
}

fn code_json(code: &CyclicCode, r: &CodeReport) -> Value {
    json!({
        "n": code.n(),
        "p": code.ring().p(),
        "prec": code.ring().prec(),
        "type": r.type_string,
        "dual_type": r.dual_type,
        "size_exp": r.size_exp,
        "d_hamming": r.distances.and_then(|d| d.hamming),
        "d_lee": r.distances.and_then(|d| d.lee),
        "d_star_hamming": r.extended_distances.and_then(|d| d.hamming),
        "d_star_lee": r.extended_distances.and_then(|d| d.lee),
        "mds": r.mds,
        "ideal": {
            "exponents": r.exponents,
            "string": code.ideal_string(),
            "gens": gens_text(code),
        },
    })
}

fn code(a: &CodeArgs) -> Outcome {
    let ring = CyclicRing::new(a.shape.n, a.shape.p, a.a, a.infinite)?;
    let code = match (&a.gens, &a.exponents) {
        (Some(g), _) => CyclicCode::canonicalize(&ring, &Poly::parse_list(ring.zq(), g)?)?,
        (None, Some(e)) => CyclicCode::from_exponents(&ring, &parse_exponents(e)?)?,
        (None, None) => unreachable!("clap requires one input"),
    };
    let ext = a
        .extend
        .as_deref()
        .map(|t| parse_extension(t, ring.zq()))
        .transpose()?;
    let budget = (a.distances || matches!(a.action, CodeAction::Distance)).then_some(a.max_enum);
    let out = match a.action {
        CodeAction::Info | CodeAction::Distance => {
            code_json(&code, &census::report(&code, ext.as_ref(), budget)?)
        }
        CodeAction::Dual => {
            let dual = code.dual()?;
            code_json(&dual, &census::report(&dual, ext.as_ref(), budget)?)
        }
        CodeAction::Idempotent => json!({
            "ideal": code.ideal_string(),
            "idempotent": code.idempotent()?.to_string(),
        }),
        CodeAction::Principal => json!({
            "ideal": code.ideal_string(),
            "principal_generator": code.principal_generator().to_string(),
        }),
    };
    Ok(pretty(&out))
}

const CENSUS_HEADER: [&str; 11] = [
    "exponents",
    "generators",
    "ideal",
    "type",
    "dual_type",
    "size_exp",
    "d_hamming",
    "d_lee",
    "d_star_hamming",
    "d_star_lee",
    "mds",
];

fn census_fields(r: &CodeReport) -> [String; 11] {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    let exps: Vec<String> = r.exponents.iter().map(u32::to_string).collect();
    [
        exps.join(" "),
        r.generators.clone(),
        r.ideal.clone(),
        r.type_string.clone(),
        r.dual_type.clone(),
        r.size_exp.to_string(),
        opt(r.distances.and_then(|d| d.hamming).map(|v| v.to_string())),
        opt(r.distances.and_then(|d| d.lee).map(|v| v.to_string())),
        opt(r
            .extended_distances
            .and_then(|d| d.hamming)
            .map(|v| v.to_string())),
        opt(r
            .extended_distances
            .and_then(|d| d.lee)
            .map(|v| v.to_string())),
        opt(r.mds.map(|v| v.to_string())),
    ]
}

fn census_cmd(a: &CensusArgs) -> Outcome {
    let entries = census::all_codes(a.shape.n, a.shape.p, a.a, a.distances, a.max_enum)?;
    let reports: Vec<&CodeReport> = entries.iter().map(|e| &e.report).collect();
    Ok(match a.format {
        Format::Json => pretty(&serde_json::to_value(&reports).expect("serializable")),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CENSUS_HEADER).expect("in-memory write");
            for r in &reports {
                w.write_record(census_fields(r)).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flushed")).expect("utf-8")
        }
        Format::Table => {
            let rows: Vec<[String; 11]> = reports.iter().map(|r| census_fields(r)).collect();
            let widths: Vec<usize> = (0..11)
                .map(|i| {
                    rows.iter()
                        .map(|r| r[i].len())
                        .chain([CENSUS_HEADER[i].len()])
                        .max()
                        .unwrap()
                })
                .collect();
            let line = |cells: Vec<&str>| -> String {
                let parts: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c:w$}"))
                    .collect();
                format!("{}\n", parts.join(" | ").trim_end())
            };
            let mut out = line(CENSUS_HEADER.to_vec());
            for r in &rows {
                out.push_str(&line(r.iter().map(String::as_str).collect()));
            }
            out
        }
    })
}

fn named_json(
    name: &str,
    c: &NamedCode,
    mds: Option<Value>,
    a: &CatalogArgs,
) -> Result<Value, Failure> {
    let distances = if a.distances {
        Some(c.extended.distances(a.max_enum)?)
    } else {
        None
    };
    Ok(json!({
        "name": name,
        "n": c.code.n(),
        "p": c.code.ring().p(),
        "prec": c.code.ring().prec(),
        "root_digits": zq_text(&c.root, true),
        "generator": c.generator.to_string(),
        "type": c.code.type_profile().to_string(),
        "extended": {
            "length": c.extended.len(),
            "size_exp": c.extended.size_exp(),
            "self_dual": c.extended.is_self_dual(),
            "distances": distances,
        },
        "mds": mds,
    }))
}

fn required<T: Copy>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure {
        code: "Usage".into(),
        message: format!("missing --{flag}"),
        exit: 2,
    })
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn catalog_cmd(a: &CatalogArgs) -> Outcome {
    let value = match a.which {
        Named::Hamming => {
            let c = catalog::hamming_2adic(a.prec)?;
            let mds = mds_exact(&catalog::hamming_quad_matrix(), Some(&c.root));
            named_json("hamming", &c, Some(to_value(&mds)), a)?
        }
        Named::Golay2 => {
            let c = catalog::golay_2adic(a.prec)?;
            let m = catalog::golay2_quad_matrix();
            let mds = if a.full {
                mds_exact(&m, Some(&c.root))
            } else {
                mds_sampled(&m, a.samples, 0, Some(&c.root))
            };
            named_json("golay2", &c, Some(to_value(&mds)), a)?
        }
        Named::Golay3 => {
            let c = catalog::golay_3adic(a.prec)?;
            let mds = mds_exact(&catalog::golay3_quad_matrix(), Some(&c.root));
            named_json("golay3", &c, Some(to_value(&mds)), a)?
        }
        Named::Qr => {
            let n = required(a.n, "n")?;
            let qr = catalog::qr_code(n, a.code, a.prec)?;
            let extended = if a.code == 1 {
                let ext = catalog::qr_self_dual_extension(n, a.prec)?;
                let samples = (!a.full).then_some((a.samples, 0));
                let distances = if a.distances {
                    Some(ext.distances(a.max_enum)?)
                } else {
                    None
                };
                json!({
                    "length": ext.len(),
                    "size_exp": ext.size_exp(),
                    "self_dual": ext.is_self_dual(),
                    "mds": to_value(&mds_finite(ext.matrix(), samples)),
                    "distances": distances,
                })
            } else {
                Value::Null
            };
            let s = &qr.split;
            json!({
                "name": "qr",
                "n": n,
                "code": a.code,
                "prec": a.prec,
                "generator": qr.code.principal_generator().to_string(),
                "type": qr.code.type_profile().to_string(),
                "alpha": zq_text(&s.alpha, false),
                "beta": zq_text(&s.beta, false),
                "gamma": zq_text(&s.gamma, false),
                "idempotent": qr.idempotent.to_string(),
                "extended": extended,
            })
        }
        Named::Bch => {
            let m = required(a.m, "m")?;
            let delta = required(a.delta, "delta")?;
            let c = catalog::bch_lift(a.p, m, delta, a.prec)?;
            json!({
                "name": "bch",
                "p": a.p,
                "m": m,
                "delta": delta,
                "prec": a.prec,
                "code": code_json(&c, &census::report(&c, None, a.distances.then_some(a.max_enum))?),
                "generator": c.principal_generator().to_string(),
            })
        }
        Named::Rm => {
            let m = required(a.m, "m")?;
            let r = required(a.r, "r")?;
            let c = catalog::rm_lift(r, m, a.prec)?;
            json!({
                "name": "rm",
                "r": r,
                "m": m,
                "prec": a.prec,
                "code": code_json(&c, &census::report(&c, None, a.distances.then_some(a.max_enum))?),
                "generator": c.principal_generator().to_string(),
            })
        }
        Named::Lee => to_value(&catalog::lee_tables(a.a_max, a.max_enum)?),
        Named::Table1 => return Ok(census::table1()?.to_string()),
    };
    Ok(pretty(&value))
}

fn verify_cmd(a: &VerifyArgs) -> Outcome {
    let Suite::Paper = a.suite;
    let opts = VerifyOptions {
        full: a.full,
        budget: a.max_enum,
    };
    let results = if a.only.is_empty() {
        verify::run_all(&opts)
    } else {
        a.only
            .iter()
            .map(|&id| {
                verify::run_check(id, &opts).ok_or_else(|| Failure {
                    code: "Usage".into(),
                    message: format!("no check numbered {id} (1..={})", verify::check_count()),
                    exit: 2,
                })
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    let failed = results.iter().filter(|r| !r.passed).count();
    let out = match a.format {
        VerifyFormat::Json => {
            let items: Vec<Value> = results
                .iter()
                .map(|r| {
                    let mut v = json!({ "id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail });
                    if a.timings {
                        v["elapsed_ms"] = json!(r.elapsed_ms);
                        v["limit_ms"] = json!(r.limit_ms);
                    }
                    v
                })
                .collect();
            pretty(&json!({ "suite": "paper", "passed": failed == 0, "results": items }))
        }
        VerifyFormat::Text => {
            let mut out = String::new();
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                write!(out, "{status} [{:>2}] {}", r.id, r.title).unwrap();
                if a.timings {
                    write!(out, " ({:.1} ms / {} ms)", r.elapsed_ms, r.limit_ms).unwrap();
                }
                writeln!(out, ": {}", r.detail).unwrap();
            }
            writeln!(
                out,
                "{} of {} checks passed",
                results.len() - failed,
                results.len()
            )
            .unwrap();
            out
        }
    };
    if failed > 0 {
        print!("{out}");
        return Err(Failure {
            code: "VerificationFailed".into(),
            message: format!("{failed} check(s) failed"),
            exit: 1,
        });
    }
    Ok(out)
}
