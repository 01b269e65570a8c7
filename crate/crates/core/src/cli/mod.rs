//! Command-line front end.
//!
//! Exit codes: 0 success or realizable, 1 negative or inconclusive, 2 usage
//! error, 3 internal failure.

mod bounds;
mod emit;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use bounds::Bounds;
pub use emit::emit;

use crate::arith::is_prime;
use crate::elliptic::{
    canonical_lift_j, construct_ordinary, construct_supersingular, fixture, fixture_labels, inertia_image_weight2,
    surjectivity, CurveCertificate, EllipticCurve, EllipticError, ReductionType,
};
use crate::gl2::{candidate_requirement, inertia_candidates, Gl2Context, Gl2Error, InertiaCandidate};
use crate::group::spec::{element_from_json, group_to_json, parse_group};
use crate::group::{AbelianType, CommutatorConvention, FiniteGroup};
use crate::local::{
    abelian_realizable, q_realizable_odd, qp_realizable_odd, verify_example_6_2, verify_verdict_json, AbelianWitness,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "inertia-lab", version, about = "Galois groups with prescribed inertia: decisions and certificates")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// JSON file with bound overrides (INERTIA_LAB_BOUNDS and flags take precedence).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Re-validate a JSON witness previously emitted by this tool ("-" reads stdin).
    #[arg(long, value_name = "FILE")]
    pub verify_witness: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Field {
    /// over Q_p
    Qp,
    /// over Q
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReductionKind {
    Supersingular,
    Ordinary,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, element orders and Sylow data of a group given as a JSON spec.
    GroupInfo {
        /// JSON spec, or @path to a file holding one.
        #[arg(long)]
        group: String,
    },
    /// Decide whether abelian (G, I) is realizable with inertia I at p.
    RealizeAbelian {
        #[arg(long)]
        p: u64,
        /// Cyclic factor orders of G, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        g: Vec<u64>,
        /// Cyclic factor orders of I, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        i: Vec<u64>,
    },
    /// Decide realizability of an odd-order group with inertia subgroup I at p.
    RealizeOdd {
        #[arg(long)]
        p: u64,
        /// JSON spec, or @path.
        #[arg(long)]
        group: String,
        /// JSON array of elements generating I.
        #[arg(long)]
        inertia: String,
        #[arg(long, value_enum, default_value_t = Field::Qp)]
        over: Field,
        #[arg(long)]
        index_bound: Option<usize>,
    },
    /// List the inertia candidates in GL2(F_p) up to conjugacy.
    Gl2Candidates {
        #[arg(long)]
        p: u64,
    },
    /// Weight, twist and reduction type required to realize a candidate.
    Gl2Requirement {
        #[arg(long)]
        p: u64,
        /// JSON candidate, e.g. {"kind":"wild","a":0,"b":1}.
        #[arg(long)]
        candidate: String,
    },
    /// Reduction, canonical lift, surjectivity and inertia image of a curve at p.
    CurveAnalyze {
        #[arg(long)]
        p: u64,
        /// a-invariants a1,a2,a3,a4,a6.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["label", "curve"])]
        a: Option<Vec<String>>,
        /// Embedded curve label such as 11.a2.
        #[arg(long, conflicts_with = "curve")]
        label: Option<String>,
        /// Curve spec {"a":[...]} or @path.
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        ell_bound: Option<u64>,
    },
    /// Construct a curve over Q with prescribed reduction at p > 13.
    CurveConstruct {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum)]
        reduction: ReductionKind,
        /// For ordinary reduction: whether inertia acts diagonalizably.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        diagonal: bool,
    },
    /// Rebuild the order-128 example and check its relator and generator ranks.
    #[command(name = "verify-example-6-2")]
    VerifyExample62,
}

#[derive(Debug)]
pub enum CliError {
    /// clap's own error, including help and version requests
    Parse(clap::Error),
    Usage(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(e) if !e.use_stderr() => EXIT_OK,
            CliError::Parse(_) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<EllipticError> for CliError {
    fn from(e: EllipticError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<Gl2Error> for CliError {
    fn from(e: Gl2Error) -> Self {
        match e {
            Gl2Error::InvalidPrime(_) | Gl2Error::PrimeTooLarge(_) | Gl2Error::InvalidParameters(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Internal(other.to_string()),
        }
    }
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// A finished command: exit code plus the report to emit.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

impl Outcome {
    fn new(ok: bool, report: Value) -> Outcome {
        Outcome { code: if ok { EXIT_OK } else { EXIT_NEGATIVE }, report }
    }
}

/// Parses and validates arguments; `argv[0]` is the program name.
pub fn parse_command<I, T>(argv: I) -> Result<Cli, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(CliError::Parse)?;
    if cli.command.is_none() && cli.verify_witness.is_none() {
        return Err(usage("a command or --verify-witness is required"));
    }
    let prime = |p: u64| if is_prime(p) { Ok(()) } else { Err(usage(format!("invalid prime {p}"))) };
    let odd_prime = |p: u64| if p != 2 && is_prime(p) { Ok(()) } else { Err(usage(format!("invalid prime {p}: expected an odd prime"))) };
    match &cli.command {
        Some(Command::RealizeAbelian { p, .. }) | Some(Command::RealizeOdd { p, .. }) => prime(*p)?,
        Some(Command::Gl2Candidates { p })
        | Some(Command::Gl2Requirement { p, .. })
        | Some(Command::CurveAnalyze { p, .. }) => odd_prime(*p)?,
        Some(Command::CurveConstruct { p, .. }) => {
            prime(*p)?;
            if *p <= 13 {
                return Err(usage(format!("constructions need p > 13, got {p}")));
            }
        }
        _ => {}
    }
    if let Some(Command::CurveAnalyze { a, label, curve, .. }) = &cli.command {
        if a.is_none() && label.is_none() && curve.is_none() {
            return Err(usage("curve-analyze needs one of --a, --label or --curve"));
        }
    }
    Ok(cli)
}

/// Runs a parsed command.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let bounds = Bounds::load(cli.config.as_deref())?;
    if let Some(path) = &cli.verify_witness {
        return verify_witness(&read_arg_or_file(&format!("@{}", path.display()))?);
    }
    match cli.command.as_ref().expect("checked in parse_command") {
        Command::GroupInfo { group } => group_info(&load_group(group)?),
        Command::RealizeAbelian { p, g, i } => realize_abelian(*p, g, i),
        Command::RealizeOdd { p, group, inertia, over, index_bound } => {
            let bound = index_bound.unwrap_or(bounds.index_bound);
            realize_odd(*p, &load_group(group)?, inertia, *over, bound)
        }
        Command::Gl2Candidates { p } => gl2_candidates(*p),
        Command::Gl2Requirement { p, candidate } => gl2_requirement(*p, candidate),
        Command::CurveAnalyze { p, a, label, curve, ell_bound } => {
            let e = load_curve(a.as_deref(), label.as_deref(), curve.as_deref())?;
            curve_analyze(&e, *p, ell_bound.unwrap_or(bounds.ell_bound))
        }
        Command::CurveConstruct { p, reduction, diagonal } => curve_construct(*p, *reduction, *diagonal),
        Command::VerifyExample62 => example_6_2(),
    }
}

/// Parses, runs and renders; returns the exit code and the bytes for stdout
/// (on success) or stderr (on failure).
pub fn main_with_args<I, T>(argv: I) -> (i32, String, bool)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = parse_command(argv).and_then(|cli| run(&cli).map(|o| (o, cli.format)));
    match result {
        Ok((o, format)) => (o.code, emit(&o.report, format), false),
        Err(CliError::Parse(e)) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            (code, e.render().to_string(), code != EXIT_OK)
        }
        Err(e) => (e.exit_code(), format!("{e}\n"), true),
    }
}

fn read_arg_or_file(s: &str) -> Result<String, CliError> {
    match s.strip_prefix('@') {
        Some("-") => std::io::read_to_string(std::io::stdin()).map_err(usage),
        Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn parse_json(s: &str) -> Result<Value, CliError> {
    serde_json::from_str(&read_arg_or_file(s)?).map_err(|e| usage(format!("invalid JSON: {e}")))
}

fn load_group(s: &str) -> Result<FiniteGroup, CliError> {
    parse_group(&parse_json(s)?).map_err(usage)
}

fn load_curve(a: Option<&[String]>, label: Option<&str>, spec: Option<&str>) -> Result<EllipticCurve, CliError> {
    let coeffs: Vec<String> = if let Some(a) = a {
        a.to_vec()
    } else if let Some(label) = label {
        return fixture(label)
            .ok_or_else(|| usage(format!("unknown label {label}; known: {}", fixture_labels().join(", "))));
    } else {
        let v = parse_json(spec.expect("checked in parse_command"))?;
        v.get("a")
            .and_then(Value::as_array)
            .ok_or_else(|| usage("curve spec needs \"a\""))?
            .iter()
            .map(|x| match x {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(usage("a-invariants must be integer strings")),
            })
            .collect::<Result<_, _>>()?
    };
    if coeffs.len() != 5 {
        return Err(usage("exactly five a-invariants are required"));
    }
    let mut ints = Vec::with_capacity(5);
    for c in &coeffs {
        ints.push(c.trim().parse::<num_bigint::BigInt>().map_err(|_| usage(format!("not an integer: {c}")))?);
    }
    let arr: [num_bigint::BigInt; 5] = ints.try_into().expect("length checked");
    EllipticCurve::from_bigints(arr).map_err(usage)
}

fn group_info(g: &FiniteGroup) -> Result<Outcome, CliError> {
    let order = g.order();
    let mut hist = std::collections::BTreeMap::new();
    for &o in g.orders() {
        *hist.entry(o).or_insert(0usize) += 1;
    }
    let sylow: Vec<Value> = crate::arith::factor_u64(order as u64)
        .into_iter()
        .map(|(q, _)| {
            let s = g.sylow_subgroup(q);
            json!({"p": q, "order": s.order(), "normal": s.is_normal()})
        })
        .collect();
    let mut report = json!({
        "kind": g.kind_name(),
        "order": order,
        "abelian": g.is_abelian(),
        "element_orders": hist.iter().map(|(o, n)| json!({"order": o, "count": n})).collect::<Vec<_>>(),
        "sylow": sylow,
        "classes": g.class_representatives().len(),
        "spec": group_to_json(g),
    });
    if let Some((q, _)) = crate::arith::factor_u64(order as u64).first().copied() {
        if g.is_p_group(q) {
            report["generator_rank"] = json!(g.generator_rank(q).map_err(internal)?);
        }
    }
    Ok(Outcome::new(true, report))
}

fn realize_abelian(p: u64, g: &[u64], i: &[u64]) -> Result<Outcome, CliError> {
    let gt = AbelianType::from_cyclic_factors(g).map_err(usage)?;
    let it = AbelianType::from_cyclic_factors(i).map_err(usage)?;
    let v = abelian_realizable(&gt, &it, p).map_err(usage)?;
    let mut report = json!({
        "witness_type": "abelian",
        "status": if v.realizable { "realizable" } else { "not_realizable" },
        "p": p,
        "G": gt.factors(),
        "I": it.factors(),
        "reason": v.reason,
    });
    if let Some(w) = &v.witness {
        report["witness"] = serde_json::to_value(w).map_err(internal)?;
    }
    Ok(Outcome::new(v.realizable, report))
}

fn realize_odd(p: u64, g: &FiniteGroup, inertia: &str, over: Field, index_bound: usize) -> Result<Outcome, CliError> {
    let gens = parse_json(inertia)?;
    let elems = gens
        .as_array()
        .ok_or_else(|| usage("--inertia must be a JSON array of elements"))?
        .iter()
        .map(|x| element_from_json(g, x))
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;
    let i = g.subgroup_generated(&elems).map_err(usage)?;
    let v = match over {
        Field::Qp => qp_realizable_odd(g, &i, p),
        Field::Q => q_realizable_odd(g, &i, p, index_bound),
    }
    .map_err(usage)?;
    v.validate().map_err(internal)?;
    let mut report = v.to_json();
    report["witness_type"] = json!("odd");
    report["over"] = json!(match over {
        Field::Qp => "Q_p",
        Field::Q => "Q",
    });
    Ok(Outcome::new(v.is_realizable(), report))
}

fn gl2_candidates(p: u64) -> Result<Outcome, CliError> {
    let ctx = Gl2Context::new(p)?;
    let list: Vec<Value> = inertia_candidates(&ctx)
        .into_iter()
        .map(|c| {
            let s = c.subgroup(&ctx)?;
            let mut v = serde_json::to_value(c).expect("plain enum");
            v["order"] = json!(s.order());
            Ok(v)
        })
        .collect::<Result<_, Gl2Error>>()?;
    Ok(Outcome::new(
        true,
        json!({"p": p, "alpha": ctx.alpha(), "delta": ctx.delta(), "count": list.len(), "candidates": list}),
    ))
}

fn gl2_requirement(p: u64, candidate: &str) -> Result<Outcome, CliError> {
    let ctx = Gl2Context::new(p)?;
    let c: InertiaCandidate = serde_json::from_value(parse_json(candidate)?).map_err(usage)?;
    let req = candidate_requirement(&ctx, c)?;
    Ok(Outcome::new(true, json!({"p": p, "input": c, "requirement": req})))
}

fn curve_analyze(e: &EllipticCurve, p: u64, ell_bound: u64) -> Result<Outcome, CliError> {
    let j = e.j_invariant();
    let mut report = json!({
        "p": p,
        "a": e.coefficients().iter().map(crate::elliptic::rational_string).collect::<Vec<_>>(),
        "j": {"numerator": j.numer().to_string(), "denominator": j.denom().to_string()},
    });
    let data = e.reduction(p)?;
    report["good"] = json!(data.good);
    report["reduction"] = json!(data.kind);
    if data.kind == ReductionType::Bad {
        report["reason"] = json!(format!("bad reduction at {p}"));
        return Ok(Outcome::new(false, report));
    }
    report["a_p"] = json!(data.a);
    report["j_mod_p2"] = json!(e.j_mod(p * p).ok());
    if data.kind == ReductionType::Ordinary {
        let lift = canonical_lift_j(e, p)?;
        report["j_lift_mod_p2"] = json!(lift.j_lift);
        report["lift_discriminant"] = json!(lift.discriminant);
        report["gross_diagonal"] = json!(report["j_mod_p2"] == json!(lift.j_lift));
    }
    let verdict = surjectivity(e, p, ell_bound);
    report["surjectivity"] = serde_json::to_value(&verdict).map_err(internal)?;
    if !verdict.is_surjective() {
        report["inertia_candidate"] = Value::Null;
        report["reason"] = json!("surjectivity not certified");
        return Ok(Outcome::new(false, report));
    }
    let (c, _) = inertia_image_weight2(e, p, ell_bound)?;
    report["inertia_candidate"] = serde_json::to_value(c).map_err(internal)?;
    Ok(Outcome::new(true, report))
}

fn curve_construct(p: u64, kind: ReductionKind, diagonal: bool) -> Result<Outcome, CliError> {
    let (_, cert) = match kind {
        ReductionKind::Supersingular => construct_supersingular(p)?,
        ReductionKind::Ordinary => construct_ordinary(p, diagonal)?,
    };
    cert.validate()?;
    Ok(Outcome::new(true, json!({"witness_type": "curve", "certificate": cert})))
}

fn example_6_2() -> Result<Outcome, CliError> {
    let r = verify_example_6_2().map_err(internal)?;
    let conventions: Vec<Value> = r
        .relator_trivial
        .iter()
        .map(|(c, ok)| {
            let name = match c {
                CommutatorConvention::InverseFirst => "x^-1 y^-1 x y",
                CommutatorConvention::InverseLast => "x y x^-1 y^-1",
            };
            json!({"convention": name, "relator_trivial": ok})
        })
        .collect();
    let ok = r.group_order == 128
        && r.relator_trivial.iter().any(|(_, t)| *t)
        && r.images_generate
        && r.only_whole_rank_at_most_3;
    let report = json!({
        "group_order": r.group_order,
        "relator": conventions,
        "images_generate": r.images_generate,
        "inertia_order": r.inertia_order,
        "quotient_order": r.quotient_order,
        "quotient_cyclic": r.quotient_cyclic,
        "intermediate": r.intermediate,
        "ranks": r.intermediate.iter().map(|x| x.rank).collect::<Vec<_>>(),
        "only_whole_rank_at_most_3": r.only_whole_rank_at_most_3,
    });
    Ok(Outcome::new(ok, report))
}

fn verify_witness(text: &str) -> Result<Outcome, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| usage(format!("invalid JSON: {e}")))?;
    let kind = v.get("witness_type").and_then(Value::as_str).unwrap_or("");
    let result: Result<(), String> = match kind {
        "abelian" => (|| {
            let p = v["p"].as_u64().ok_or("missing p")?;
            let factors = |k: &str| -> Result<AbelianType, String> {
                let f: Vec<u64> = serde_json::from_value(v[k].clone()).map_err(|e| e.to_string())?;
                AbelianType::from_cyclic_factors(&f).map_err(|e| e.to_string())
            };
            let w: AbelianWitness = serde_json::from_value(v["witness"].clone()).map_err(|e| e.to_string())?;
            w.validate(&factors("G")?, &factors("I")?, p)
        })(),
        "odd" => verify_verdict_json(&v).map_err(|e| e.to_string()),
        "curve" => (|| {
            let c: CurveCertificate = serde_json::from_value(v["certificate"].clone()).map_err(|e| e.to_string())?;
            c.validate().map_err(|e| e.to_string())
        })(),
        other => return Err(usage(format!("unknown witness type {other:?}"))),
    };
    let report = match &result {
        Ok(()) => json!({"witness_type": kind, "valid": true}),
        Err(m) => json!({"witness_type": kind, "valid": false, "reason": m}),
    };
    Ok(Outcome::new(result.is_ok(), report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        std::iter::once("inertia-lab".to_string()).chain(s.split_whitespace().map(String::from)).collect()
    }

    #[test]
    fn parses_abelian_query() {
        let cli = parse_command(argv("realize-abelian --p 5 --g 4,4 --i 4")).unwrap();
        match cli.command.unwrap() {
            Command::RealizeAbelian { p, g, i } => assert_eq!((p, g, i), (5, vec![4, 4], vec![4])),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parses_negative_coefficients() {
        let cli = parse_command(argv("curve-analyze --p 3 --a 1,1,1,-1,0")).unwrap();
        match cli.command.unwrap() {
            Command::CurveAnalyze { a, .. } => assert_eq!(a.unwrap(), ["1", "1", "1", "-1", "0"]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn usage_errors() {
        let e = parse_command(argv("gl2-candidates --p 15")).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE);
        assert_eq!(parse_command(argv("frobnicate")).unwrap_err().exit_code(), EXIT_USAGE);
        assert_eq!(parse_command(argv("realize-abelian --p 5")).unwrap_err().exit_code(), EXIT_USAGE);
        assert_eq!(parse_command(argv("--help")).unwrap_err().exit_code(), EXIT_OK);
    }

    #[test]
    fn abelian_negative_exit() {
        let o = run(&parse_command(argv("realize-abelian --p 7 --g 2,2 --i 2,2")).unwrap()).unwrap();
        assert_eq!(o.code, EXIT_NEGATIVE);
        assert_eq!(o.report["reason"], "I is not a quotient of Z_p^x");
    }

    #[test]
    fn witness_round_trip() {
        let o = run(&parse_command(argv("realize-abelian --p 5 --g 4,4 --i 4")).unwrap()).unwrap();
        assert_eq!(o.code, EXIT_OK);
        assert_eq!(verify_witness(&o.report.to_string()).unwrap().code, EXIT_OK);
        let mut bad = o.report.clone();
        bad["witness"]["primes"][0] = json!(4);
        assert_eq!(verify_witness(&bad.to_string()).unwrap().code, EXIT_NEGATIVE);
    }
}
