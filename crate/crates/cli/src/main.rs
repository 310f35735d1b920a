mod basis;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use apery_core::clausen::{clausen, ClausenOrder, RationalAngle};
use apery_core::identities::{
    builtin_registry, load_identities, render_table, reports_to_json, verify_batch, ConstExpr, IdentitySpec, Verdict,
    VerificationReport,
};
use apery_core::numerics::{format_decimal, format_sci, PrecisionContext};
use apery_core::pslq::{find_relation, rediscover, RelationResult};
use apery_core::sequences::Rational;
use apery_core::series::{sum_direct, QuadraticSurd, SeriesKind, DEFAULT_MAX_TERMS};
use apery_core::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

const EXIT_NO_RELATION: u8 = 1;
const EXIT_FAILED: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

#[derive(Parser)]
#[command(name = "apery", version, about = "Verify and discover central-binomial series identities")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Config {
    /// Target decimal digits.
    #[arg(long, global = true, env = "APERY_DIGITS", default_value_t = 50)]
    digits: u32,
    /// Term budget for each series summation.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_TERMS)]
    max_terms: usize,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Parallel identity verifications (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one identity, or `all`.
    Verify {
        selector: String,
        /// Identity file to use instead of the built-in registry.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Evaluate a single quantity.
    Eval {
        #[command(subcommand)]
        target: EvalTarget,
    },
    /// Search for an integer relation between a value and a constant basis.
    Discover {
        /// Identity whose left-hand side is the first value.
        identity: Option<String>,
        /// Decimal value to use instead of an identity.
        #[arg(long, conflicts_with = "identity")]
        value: Option<String>,
        /// Comma-separated: zeta3, pi, pi2, one, log:<surd>, pi2log:<surd>, cl2:<p/q>, cl3:<p/q>.
        #[arg(long)]
        basis: String,
        #[arg(long, default_value_t = 4)]
        max_coeff_digits: u32,
    },
    /// List built-in identities.
    List,
}

#[derive(Subcommand)]
enum EvalTarget {
    /// Cl_m(θ) with θ = (p/q)·π.
    Clausen {
        #[arg(long)]
        order: u32,
        #[arg(long)]
        theta: String,
    },
    /// S1, S2, S3 or F at u, summed directly.
    Series {
        #[arg(long)]
        kind: String,
        /// Quadratic surd such as `2+sqrt3`, or a decimal.
        #[arg(long)]
        u: String,
    },
    /// A constant expression stored as JSON.
    Const {
        #[arg(long)]
        file: PathBuf,
    },
}

/// Error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::UnknownIdentity(_) | Error::Parse(_) | Error::InvalidPrecision(_) => EXIT_USAGE,
            Error::InsufficientPrecision { .. } => EXIT_NO_RELATION,
            Error::Domain(_) | Error::NotConverged { .. } => EXIT_DATA,
        };
        Self { code, message: err.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> std::result::Result<u8, Failure> {
    let config = cli.config;
    match cli.command {
        Command::Verify { selector, file } => {
            check_config(&config)?;
            cmd_verify(&selector, file, &config)
        }
        Command::Eval { target } => {
            check_config(&config)?;
            cmd_eval(target, &config)
        }
        Command::Discover { identity, value, basis, max_coeff_digits } => {
            cmd_discover(identity, value, &basis, max_coeff_digits, &config)
        }
        Command::List => Ok(cmd_list(&config)),
    }
}

fn check_config(config: &Config) -> std::result::Result<(), Failure> {
    if config.digits < 10 {
        return Err(Failure::usage(format!("--digits must be at least 10 (got {})", config.digits)));
    }
    if config.max_terms < 1000 {
        return Err(Failure::usage(format!("--max-terms must be at least 1000 (got {})", config.max_terms)));
    }
    Ok(())
}

fn context(config: &Config) -> Result<PrecisionContext> {
    PrecisionContext::for_terms(config.digits, config.max_terms as u64)
}

fn select(selector: &str, file: Option<PathBuf>) -> std::result::Result<Vec<IdentitySpec>, Failure> {
    let pool = match file {
        Some(path) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            load_identities(&text)?
        }
        None => builtin_registry(),
    };
    if selector == "all" {
        return Ok(pool);
    }
    pool.into_iter()
        .find(|s| s.id == selector)
        .map(|s| vec![s])
        .ok_or_else(|| Error::UnknownIdentity(selector.into()).into())
}

fn cmd_verify(selector: &str, file: Option<PathBuf>, config: &Config) -> std::result::Result<u8, Failure> {
    let specs = select(selector, file)?;
    let ctx = context(config)?;
    let mut reports = verify_batch(&specs, &ctx, config.max_terms, config.jobs);
    reports.sort_by(|a, b| a.identity_id.cmp(&b.identity_id));
    match config.output {
        Output::Json => println!("{}", reports_to_json(&reports)),
        Output::Text => {
            print!("{}", render_table(&reports));
            if let [single] = reports.as_slice() {
                print_single(single);
            }
        }
    }
    Ok(verify_exit_code(&reports))
}

fn print_single(report: &VerificationReport) {
    if report.note.is_some() {
        return;
    }
    let digits = report.target_digits;
    println!("lhs = {}", format_decimal(&report.lhs_value, digits));
    println!("rhs = {}", format_decimal(&report.rhs_value, digits));
}

fn verify_exit_code(reports: &[VerificationReport]) -> u8 {
    if reports.iter().any(|r| r.verdict == Verdict::Failed) {
        EXIT_FAILED
    } else if reports.iter().any(|r| r.verdict == Verdict::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        0
    }
}

fn cmd_eval(target: EvalTarget, config: &Config) -> std::result::Result<u8, Failure> {
    let ctx = context(config)?;
    let digits = config.digits;
    let (label, value, error, terms) = match target {
        EvalTarget::Clausen { order, theta } => {
            let order = ClausenOrder::try_from(order)?;
            let theta: RationalAngle = theta.parse()?;
            let est = clausen(order, theta, &ctx);
            (format!("Cl{}({theta}·π)", u32::from(order)), est.value, est.error, None)
        }
        EvalTarget::Series { kind, u } => {
            let kind: SeriesKind = kind.parse()?;
            let surd: QuadraticSurd = u.parse()?;
            let sum = sum_direct(kind, &surd.value(&ctx), &ctx, config.max_terms)?;
            let error = sum.certified_error();
            (format!("{kind}({surd})"), sum.value, error, Some(sum.terms_used))
        }
        EvalTarget::Const { file } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", file.display())))?;
            let json: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Error::Parse(format!("expression file: {e}")))?;
            let expr = ConstExpr::from_json(&json)?;
            let est = expr.evaluate(&ctx)?;
            (expr.to_string(), est.value, est.error, None)
        }
    };
    match config.output {
        Output::Text => {
            println!("{label} = {}", format_decimal(&value, digits));
            println!("error ≤ {}", format_sci(&error));
            if let Some(n) = terms {
                println!("terms = {n}");
            }
        }
        Output::Json => {
            let mut obj = json!({
                "expression": label,
                "digits": digits,
                "value": format_decimal(&value, digits),
                "error": format_decimal(&error, 6),
            });
            if let Some(n) = terms {
                obj["terms_used"] = json!(n);
            }
            println!("{}", serde_json::to_string_pretty(&obj).expect("json value"));
        }
    }
    Ok(0)
}

fn cmd_discover(
    identity: Option<String>,
    value: Option<String>,
    basis: &str,
    max_coeff_digits: u32,
    config: &Config,
) -> std::result::Result<u8, Failure> {
    let basis_exprs = basis::parse_basis(basis)?;
    let ctx = context(config)?;
    let (subject, outcome) = match (identity, value) {
        (Some(id), None) => {
            let outcome = rediscover(&id, &basis_exprs, &ctx, max_coeff_digits);
            (id, outcome)
        }
        (None, Some(text)) => {
            // A decimal literal is only as good as its printed digits.
            let ctx = value_context(&ctx, &text)?;
            let mut values = vec![ctx.parse_real(&text)?];
            for expr in &basis_exprs {
                values.push(expr.eval(&ctx)?);
            }
            (text, find_relation(&values, &ctx, max_coeff_digits))
        }
        _ => return Err(Failure::usage("give an identity id or --value")),
    };
    let result = match outcome {
        Ok(result) => result,
        Err(err @ Error::InsufficientPrecision { .. }) => {
            eprintln!("no relation: {err}");
            return Ok(EXIT_NO_RELATION);
        }
        Err(err) => return Err(err.into()),
    };
    let oriented = orient(&result);
    match config.output {
        Output::Text => print_relation(&subject, &basis_exprs, &result, oriented.as_deref()),
        Output::Json => {
            let obj = json!({
                "subject": subject,
                "basis": basis_exprs.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                "coefficients": oriented.as_ref().map(|c| c.iter().map(|m| m.to_string()).collect::<Vec<_>>()),
                "residual": if result.found() { Some(format_sci(&result.residual)) } else { None },
                "exclusion_bound": format_sci(&result.exclusion_bound),
                "iterations": result.iterations,
                "confidence": format!("{:.3}", result.confidence),
            });
            println!("{}", serde_json::to_string_pretty(&obj).expect("json value"));
        }
    }
    Ok(if result.found() { 0 } else { EXIT_NO_RELATION })
}

fn value_context(ctx: &PrecisionContext, text: &str) -> Result<PrecisionContext> {
    let supplied = significant_digits(text);
    if supplied >= ctx.work_digits() {
        return Ok(ctx.clone());
    }
    let target = supplied.saturating_sub(ctx.guard_digits()).max(1);
    PrecisionContext::with_guard(target, ctx.guard_digits())
}

fn significant_digits(text: &str) -> u32 {
    let mantissa = text.split(['e', 'E']).next().unwrap_or("");
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    digits.trim_start_matches('0').len() as u32
}

/// The relation signed so that the subject's coefficient is negative, which reads as
/// `d·subject = Σ cᵢ·basisᵢ`.
fn orient(result: &RelationResult) -> Option<Vec<i64>> {
    let mut coeffs = result.coefficients_i64()?;
    if coeffs[0] > 0 {
        coeffs.iter_mut().for_each(|c| *c = -*c);
    }
    Some(coeffs)
}

fn print_relation(subject: &str, basis: &[ConstExpr], result: &RelationResult, coeffs: Option<&[i64]>) {
    let Some(coeffs) = coeffs else {
        println!("no relation found");
        println!("exclusion bound: no relation with norm below {}", format_sci(&result.exclusion_bound));
        return;
    };
    let list: Vec<String> = coeffs.iter().map(i64::to_string).collect();
    println!("relation: {}", list.join(", "));
    println!("residual: {}", format_sci(&result.residual));
    println!("iterations: {}", result.iterations);
    if coeffs[0] != 0 {
        let denom = -coeffs[0];
        let terms: Vec<ConstExpr> = coeffs[1..]
            .iter()
            .zip(basis)
            .filter(|(c, _)| **c != 0)
            .map(|(c, e)| ConstExpr::scaled(Rational::from((*c, denom)), e.clone()))
            .collect();
        if !terms.is_empty() {
            println!("{subject} = {}", ConstExpr::Sum(terms));
        }
    }
}

fn cmd_list(config: &Config) -> u8 {
    let registry = builtin_registry();
    match config.output {
        Output::Json => println!("{}", apery_core::identities::identities_to_json(&registry)),
        Output::Text => {
            let width = registry.iter().map(|s| s.id.len()).max().unwrap_or(0);
            for spec in &registry {
                println!("{:<width$}  {}  [{}]", spec.id, spec.rhs, spec.source);
            }
        }
    }
    0
}
