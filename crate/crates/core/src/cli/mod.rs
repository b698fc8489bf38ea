//! Command-line front end. `run` takes the argument vector and returns what
//! the process should print and its exit code, so it can be tested without
//! spawning the binary.
//!
//! Exit codes: 0 success, 1 usage or malformed input, 2 domain error,
//! 3 a property check failed.

mod operand;
mod table;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::check::{run_suite, CheckOptions, Suite};
use crate::error::{Error, Result};
use crate::groups::{
    f0_evolve, f0_exp, f0_inverse, f0_log, f1_bracket, f1_evolve, f1_exp, f1_inverse, f1_log, s_bracket, s_evolve, s_exp,
    s_inverse, s_log, s_mul,
};
use crate::json::{CurveDoc, JsonCoeff};
use crate::opmatrix::{commutator, nil_exp, opmat_evolve, opmat_inverse, opmat_log, opmat_mul};
use crate::scalar::{Context, Gaussian, Rational, Scalar};
use crate::sheffer::{
    is_appell, is_sheffer, is_umbral, riordan_inverse_transform, riordan_transform, sheffer_factor, sheffer_inverse,
    sheffer_mul, ShefferOp,
};
use crate::tpoly::TPoly;

use operand::{load, Obj};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "sheffer", version, about = "Exact Sheffer operators, Riordan arrays and tensor power series")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Dimension N of the underlying space.
    #[arg(long, global = true)]
    dim: Option<usize>,

    /// Truncation order K.
    #[arg(long, global = true)]
    order: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = RingArg::Rational)]
    ring: RingArg,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Show matrices transposed (lower-triangular).
    #[arg(long, global = true)]
    transpose: bool,

    /// Instances per randomized property.
    #[arg(long, global = true)]
    instances: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sheffer operator of a pair.
    Build { operand: String },
    /// Group product of two elements of the same kind.
    Mul { left: String, right: String },
    /// Group inverse.
    Inverse { operand: String },
    /// Exponential of a Lie algebra element.
    Exp { operand: String },
    /// Logarithm of a group element.
    Log { operand: String },
    /// Lie bracket of two Lie algebra elements.
    Bracket { left: String, right: String },
    /// Time-1 solution of the flow of a time curve.
    Evolve { operand: String },
    /// Pair (A, B) of a Sheffer operator matrix.
    Factor { operand: String },
    /// Sheffer, Appell and umbral membership.
    Membership { operand: String },
    /// Riordan array of a Sheffer operator, or back.
    Riordan { operand: String },
    /// The n-th polynomial p_n(ω) of the sequence.
    Sequence {
        operand: String,
        #[arg(long)]
        n: usize,
        /// Direction ξ as comma-separated scalars; defaults to all ones.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        xi: Option<Vec<String>>,
    },
    /// Run a property suite.
    Check { suite: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RingArg {
    Rational,
    Gaussian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, ..Default::default() }
            } else {
                Outcome { stderr: text, code, ..Default::default() }
            };
        }
    };
    let result = match cli.ring {
        RingArg::Rational => execute::<Rational>(&cli),
        RingArg::Gaussian => execute::<Gaussian>(&cli),
    };
    match result {
        Ok((stdout, code)) => Outcome { stdout, stderr: String::new(), code },
        Err(e) => {
            let code = if e.is_usage() { EXIT_USAGE } else { EXIT_DOMAIN };
            Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code }
        }
    }
}

fn pretty_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn context<S: Scalar>(cli: &Cli) -> Result<Context> {
    let order = cli.order.ok_or_else(|| Error::parse("--order is required"))?;
    Context::of::<S>(cli.dim.unwrap_or(1), order)
}

fn execute<S: Scalar + JsonCoeff>(cli: &Cli) -> Result<(String, i32)>
where
    TPoly<S>: JsonCoeff,
{
    if let Command::Check { suite } = &cli.command {
        return check::<S>(cli, suite);
    }
    let ctx = context::<S>(cli)?;
    let obj = dispatch::<S>(&ctx, &cli.command)?;
    let out = match cli.format {
        Format::Table => table::render(&obj, cli.transpose),
        Format::Json => {
            let mut v = obj.to_json();
            if let (true, Obj::Riordan(r)) = (cli.transpose, &obj) {
                v["lower_triangular"] = json!(table::lower_triangle(r.matrix().matrix()));
            }
            pretty_json(&v)
        }
    };
    Ok((out, 0))
}

fn check<S: Scalar>(cli: &Cli, suite: &str) -> Result<(String, i32)> {
    let suite: Suite = suite.parse()?;
    let context = match (cli.dim, cli.order) {
        (_, Some(k)) => Some((cli.dim.unwrap_or(1), k)),
        (Some(_), None) => return Err(Error::parse("--dim needs --order")),
        (None, None) => None,
    };
    let opts = CheckOptions { context, instances: cli.instances, seed: cli.seed };
    let report = run_suite::<S>(suite, &opts)?;
    let out = match cli.format {
        Format::Json => pretty_json(&report.to_json()),
        Format::Table => report.to_table(),
    };
    Ok((out, if report.ok() { 0 } else { EXIT_CHECK_FAILED }))
}

fn unsupported<S: Scalar + JsonCoeff, T>(op: &str, objs: &[&Obj<S>]) -> Result<T>
where
    TPoly<S>: JsonCoeff,
{
    let kinds: Vec<&str> = objs.iter().map(|o| o.name()).collect();
    Err(Error::Precondition(format!("`{op}` does not apply to {}", kinds.join(" and "))))
}

/// Any operand that determines a Sheffer operator.
fn to_sheffer<S: Scalar + JsonCoeff>(o: Obj<S>) -> Result<ShefferOp<S>>
where
    TPoly<S>: JsonCoeff,
{
    match o {
        Obj::Sheffer(p) => Ok(p),
        Obj::Pair(p) => Ok(ShefferOp::from_pair(p)),
        Obj::Op(m) => ShefferOp::from_matrix(m),
        Obj::Riordan(r) => riordan_inverse_transform(&r),
        other => unsupported("sheffer", &[&other]),
    }
}

fn dispatch<S: Scalar + JsonCoeff>(ctx: &Context, cmd: &Command) -> Result<Obj<S>>
where
    TPoly<S>: JsonCoeff,
{
    match cmd {
        Command::Build { operand } => Ok(Obj::Sheffer(to_sheffer(load(ctx, operand)?)?)),
        Command::Mul { left, right } => mul(load(ctx, left)?, load(ctx, right)?),
        Command::Inverse { operand } => inverse(load(ctx, operand)?),
        Command::Exp { operand } => match load::<S>(ctx, operand)? {
            Obj::Series(s) if s.target_degree() == 0 => Ok(Obj::F0(f0_exp(&s)?)),
            Obj::Series(s) if s.target_degree() == 1 => Ok(Obj::F1(f1_exp(&s)?)),
            Obj::Algebra(w) => Ok(Obj::Pair(s_exp(&w)?)),
            Obj::Nil(v) => Ok(Obj::Op(nil_exp(&v))),
            other => unsupported("exp", &[&other]),
        },
        Command::Log { operand } => match load::<S>(ctx, operand)? {
            Obj::F0(a) => Ok(Obj::Series(f0_log(&a))),
            Obj::F1(b) => Ok(Obj::Series(f1_log(&b))),
            Obj::Pair(p) => Ok(Obj::Algebra(s_log(&p))),
            Obj::Sheffer(p) => Ok(Obj::Algebra(s_log(p.pair()))),
            Obj::Op(m) => Ok(Obj::Nil(opmat_log(&m)?)),
            Obj::Riordan(r) => Ok(Obj::Nil(opmat_log(r.matrix())?)),
            other => unsupported("log", &[&other]),
        },
        Command::Bracket { left, right } => match (load::<S>(ctx, left)?, load::<S>(ctx, right)?) {
            (Obj::Algebra(a), Obj::Algebra(b)) => Ok(Obj::Algebra(s_bracket(&a, &b)?)),
            (Obj::Nil(a), Obj::Nil(b)) => Ok(Obj::Nil(commutator(&a, &b)?)),
            (Obj::Series(a), Obj::Series(b)) if a.target_degree() == 1 && b.target_degree() == 1 => {
                Ok(Obj::Series(f1_bracket(&a, &b)?))
            }
            (a, b) => unsupported("bracket", &[&a, &b]),
        },
        Command::Evolve { operand } => match load::<S>(ctx, operand)? {
            Obj::Curve(CurveDoc::F0(c)) => Ok(Obj::F0(f0_evolve(&c)?)),
            Obj::Curve(CurveDoc::F1(c)) => Ok(Obj::F1(f1_evolve(&c)?)),
            Obj::Curve(CurveDoc::S(c)) => Ok(Obj::Pair(s_evolve(&c)?)),
            Obj::Curve(CurveDoc::Nil(c)) => Ok(Obj::Op(opmat_evolve(&c))),
            other => unsupported("evolve", &[&other]),
        },
        Command::Factor { operand } => match load::<S>(ctx, operand)? {
            Obj::Op(m) => Ok(Obj::Pair(sheffer_factor(&m, true)?)),
            other => Ok(Obj::Pair(to_sheffer(other)?.pair().clone())),
        },
        Command::Membership { operand } => {
            let m = match load::<S>(ctx, operand)? {
                Obj::Op(m) => m,
                other => to_sheffer(other)?.matrix().clone(),
            };
            Ok(Obj::Membership { sheffer: is_sheffer(&m), appell: is_appell(&m), umbral: is_umbral(&m) })
        }
        Command::Riordan { operand } => match load::<S>(ctx, operand)? {
            Obj::Riordan(r) => Ok(Obj::Sheffer(riordan_inverse_transform(&r)?)),
            other => Ok(Obj::Riordan(riordan_transform(&to_sheffer(other)?))),
        },
        Command::Sequence { operand, n, xi } => {
            let xi: Vec<S> = match xi {
                Some(v) => v.iter().map(|s| S::parse(s)).collect::<Result<_>>()?,
                None => vec![S::one(); ctx.dim()],
            };
            let poly = match load::<S>(ctx, operand)? {
                Obj::Op(m) => m.apply(&crate::sheffer::linear_power(ctx, &xi, *n)?)?,
                other => to_sheffer(other)?.sequence(*n, &xi)?,
            };
            Ok(Obj::Poly { n: Some(*n), poly })
        }
        Command::Check { .. } => unreachable!("handled before dispatch"),
    }
}

fn mul<S: Scalar + JsonCoeff>(a: Obj<S>, b: Obj<S>) -> Result<Obj<S>>
where
    TPoly<S>: JsonCoeff,
{
    match (a, b) {
        (Obj::F0(x), Obj::F0(y)) => Ok(Obj::F0(x.mul(&y)?)),
        (Obj::F1(x), Obj::F1(y)) => Ok(Obj::F1(x.compose(&y)?)),
        (Obj::Pair(x), Obj::Pair(y)) => Ok(Obj::Pair(s_mul(&x, &y)?)),
        (Obj::Op(x), Obj::Op(y)) => Ok(Obj::Op(opmat_mul(&x, &y)?)),
        (Obj::Op(x), y @ (Obj::Sheffer(_) | Obj::Pair(_))) => Ok(Obj::Op(opmat_mul(&x, to_sheffer(y)?.matrix())?)),
        (x @ (Obj::Sheffer(_) | Obj::Pair(_)), Obj::Op(y)) => Ok(Obj::Op(opmat_mul(to_sheffer(x)?.matrix(), &y)?)),
        (Obj::Riordan(x), Obj::Riordan(y)) => Ok(Obj::Riordan(x.mul(&y)?)),
        (x @ (Obj::Sheffer(_) | Obj::Pair(_)), y @ (Obj::Sheffer(_) | Obj::Pair(_))) => {
            Ok(Obj::Sheffer(sheffer_mul(&to_sheffer(x)?, &to_sheffer(y)?)?))
        }
        (x, y) => unsupported("mul", &[&x, &y]),
    }
}

fn inverse<S: Scalar + JsonCoeff>(a: Obj<S>) -> Result<Obj<S>>
where
    TPoly<S>: JsonCoeff,
{
    match a {
        Obj::F0(x) => Ok(Obj::F0(f0_inverse(&x))),
        Obj::F1(x) => Ok(Obj::F1(f1_inverse(&x))),
        Obj::Pair(x) => Ok(Obj::Pair(s_inverse(&x))),
        Obj::Op(x) => Ok(Obj::Op(opmat_inverse(&x)?)),
        Obj::Sheffer(x) => Ok(Obj::Sheffer(sheffer_inverse(&x)?)),
        Obj::Riordan(x) => Ok(Obj::Riordan(riordan_transform(&sheffer_inverse(&riordan_inverse_transform(&x)?)?))),
        other => unsupported("inverse", &[&other]),
    }
}
