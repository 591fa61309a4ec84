//! Command dispatch for the `stokes` binary. Documents are JSON; exact
//! rationals travel as `"p/q"` strings and angles as `"a/b·π"`.

use std::io::Read;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_rational::{BigRational, Rational64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::angle::Angle;
use crate::cech::ring::render_matrix;
use crate::cech::{BasisChange, MatrixRep, MonodromyRep, RatMatrix};
use crate::divisor_config::{
    formal_decomposition, stalk_dim, validate, ComponentKind, DivisorComponent, DivisorConfig,
};
use crate::error::Error;
use crate::example_stokes::{compute_n_pi, compute_n_zero, stokes_data, total_monodromy};
use crate::exponent_order::{stokes_directions, total_order, ExponentialFactor, PolarCoefficient};
use crate::fiber::{b_set, h1c_dimension};
use crate::resolution::{resolve, GoodForm, TwistExpression};
use crate::verify;

#[derive(Debug, Parser)]
#[command(name = "stokes", about = "Stokes directions, filtrations and Stokes matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Configuration document; `-` reads stdin. Defaults to the two-factor example.
    #[arg(long, global = true)]
    pub config: Option<String>,
    /// Rank of the local system when no configuration is given.
    #[arg(long, global = true, default_value_t = 1)]
    pub rank: usize,
    /// Direction as a multiple of π, e.g. `1/4`.
    #[arg(long, global = true, default_value = "0")]
    pub theta: String,
    /// Number of equally spaced directions for `dims`.
    #[arg(long, global = true, default_value_t = 24)]
    pub grid: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, conflicts_with = "numeric")]
    pub symbolic: bool,
    /// Evaluate at the configuration's representation, or a random one.
    #[arg(long, global = true)]
    pub numeric: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Stokes directions between all pairs of exponents.
    Directions,
    /// Exponents in increasing order at `--theta`.
    Order,
    /// Formal decomposition into exponents and ranks.
    Decompose,
    /// Stalk dimensions of each filtration step over a grid of directions.
    Dims,
    /// Blow-up charts making each exponent good.
    Resolve,
    /// Supports `B_psi^theta` at `--theta`.
    Fiber,
    /// The matrices `N_π`, `N_0`, `S_0^1`, `S_1^0`.
    Stokes,
    /// Runs the invariant suite.
    Verify,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub rank: usize,
    #[serde(default)]
    pub components: Vec<ComponentDocument>,
    pub rep: Option<RepDocument>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDocument {
    pub kind: String,
    pub label: Option<String>,
    pub q: Option<u32>,
    pub mu0: Option<CoefficientDocument>,
    pub phi_dim: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientDocument {
    pub modulus: String,
    pub argument_pi: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDocument {
    pub backend: String,
    #[serde(rename = "S")]
    pub s: Option<Vec<Vec<String>>>,
    #[serde(rename = "T")]
    pub t: Option<Vec<Vec<String>>>,
    #[serde(rename = "U")]
    pub u: Option<Vec<Vec<String>>>,
}

/// Exit code and the documents written to stdout and stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Validation(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Input(m),
            e => Failure::Validation(e),
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational64, Failure> {
    Rational64::from_str(s.trim()).map_err(|e| Failure::Input(format!("rational {s:?}: {e}")))
}

fn parse_big(s: &str) -> Result<BigRational, Failure> {
    BigRational::from_str(s.trim()).map_err(|e| Failure::Input(format!("rational {s:?}: {e}")))
}

fn component(i: usize, c: &ComponentDocument, rank: usize) -> Result<DivisorComponent, Failure> {
    let kind = match c.kind.as_str() {
        "at_infinity" | "infinity" => ComponentKind::AtInfinity,
        "elsewhere" => ComponentKind::Elsewhere,
        k => return Err(Failure::Input(format!("component {i}: unknown kind {k:?}"))),
    };
    let factor = match &c.mu0 {
        Some(mu) => {
            let modulus = parse_rational(&mu.modulus)?;
            let argument = Angle::from_str(&mu.argument_pi)?;
            ExponentialFactor::polar(c.q.unwrap_or(1), PolarCoefficient::new(modulus, argument)?)?
        }
        None if c.q.is_none() || c.q == Some(1) => ExponentialFactor::inverse_t(),
        None => ExponentialFactor::polar(c.q.unwrap_or(1), PolarCoefficient::real(1))?,
    };
    let default_label = match kind {
        ComponentKind::AtInfinity => format!("S{}", i + 1),
        ComponentKind::Elsewhere => format!("~S{}", i + 1),
    };
    Ok(DivisorComponent {
        kind,
        label: c.label.clone().unwrap_or(default_label),
        factor,
        phi_dim: c.phi_dim.unwrap_or(rank),
    })
}

fn parse_matrix_doc(rows: &[Vec<String>]) -> Result<RatMatrix, Failure> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|x| parse_big(x)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    RatMatrix::from_rows(rows).map_err(|e| Failure::Input(e.to_string()))
}

fn rep_from_doc(doc: &RepDocument) -> Result<MonodromyRep, Failure> {
    match doc.backend.as_str() {
        "symbolic" => Ok(MonodromyRep::Symbolic),
        "matrix" => {
            let get = |m: &Option<Vec<Vec<String>>>, name: &str| {
                m.as_ref()
                    .ok_or_else(|| Failure::Input(format!("matrix backend needs {name}")))
                    .and_then(|rows| parse_matrix_doc(rows))
            };
            let rep = MatrixRep::new(get(&doc.s, "S")?, get(&doc.t, "T")?, get(&doc.u, "U")?)?;
            Ok(MonodromyRep::Matrix(rep))
        }
        b => Err(Failure::Input(format!("unknown backend {b:?}"))),
    }
}

/// Parses a configuration document.
pub fn parse_config(text: &str) -> Result<(DivisorConfig, Option<MonodromyRep>), Error> {
    let conv = |f: Failure| match f {
        Failure::Input(m) => Error::Parse(m),
        Failure::Validation(e) => e,
    };
    let doc: ConfigDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let components = doc
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| component(i, c, doc.rank))
        .collect::<Result<Vec<_>, _>>()
        .map_err(conv)?;
    let rep = doc.rep.as_ref().map(rep_from_doc).transpose().map_err(conv)?;
    Ok((DivisorConfig::new(doc.rank, components), rep))
}

fn rat_str(x: &BigRational) -> String {
    x.to_string()
}

pub fn rat_matrix_json(m: &RatMatrix) -> Value {
    Value::from(
        m.to_rows()
            .iter()
            .map(|r| Value::from(r.iter().map(rat_str).collect::<Vec<_>>()))
            .collect::<Vec<_>>(),
    )
}

pub fn basis_change_json(m: &BasisChange) -> Value {
    match m {
        BasisChange::Symbolic(x) => json!(render_matrix(x)),
        BasisChange::Matrix(x) => rat_matrix_json(x),
    }
}

fn error_json(e: &Error) -> Value {
    let debug = format!("{e:?}");
    let kind = debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or("Error")
        .to_string();
    json!({ "error": { "kind": kind, "message": e.to_string() } })
}

struct Context {
    config: DivisorConfig,
    rep: Option<MonodromyRep>,
    args: Cli,
}

impl Context {
    fn theta(&self) -> Result<Angle, Failure> {
        Ok(Angle::from_str(&self.args.theta)?)
    }

    fn backend(&self) -> MonodromyRep {
        if !self.args.numeric {
            return MonodromyRep::Symbolic;
        }
        match &self.rep {
            Some(r @ MonodromyRep::Matrix(_)) => r.clone(),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.args.seed);
                MonodromyRep::Matrix(MatrixRep::random(self.config.rank.max(1), &mut rng))
            }
        }
    }
}

fn directions(ctx: &Context) -> Result<Value, Failure> {
    validate(&ctx.config)?;
    let exps = ctx.config.exponents();
    let mut all = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..exps.len() {
        for j in i + 1..exps.len() {
            let d = stokes_directions(&exps[i], &exps[j])?;
            pairs.push(json!({
                "left": exps[i].to_string(),
                "right": exps[j].to_string(),
                "directions": d.iter().map(Angle::to_string).collect::<Vec<_>>(),
            }));
            all.extend(d);
        }
    }
    all.sort();
    all.dedup();
    Ok(json!({
        "directions": all.iter().map(Angle::to_string).collect::<Vec<_>>(),
        "pairs": pairs,
    }))
}

fn order(ctx: &Context) -> Result<Value, Failure> {
    validate(&ctx.config)?;
    let theta = ctx.theta()?;
    let sorted = total_order(&ctx.config.exponents(), theta)?;
    Ok(json!({
        "theta": theta.to_string(),
        "order": sorted.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    }))
}

fn decompose(ctx: &Context) -> Result<Value, Failure> {
    let d = formal_decomposition(&ctx.config)?;
    Ok(Value::from(
        d.iter()
            .map(|(f, r)| json!({ "factor": f.to_string(), "rank": r }))
            .collect::<Vec<_>>(),
    ))
}

fn dims(ctx: &Context) -> Result<Value, Failure> {
    validate(&ctx.config)?;
    let grid = ctx.args.grid.max(1) as i64;
    let exps = ctx.config.exponents();
    let mut rows = Vec::new();
    for k in 0..grid {
        let theta = Angle::pi_frac(2 * k, grid);
        let mut entry = serde_json::Map::new();
        for psi in &exps {
            let v = match stalk_dim(&ctx.config, psi, theta) {
                Ok(d) => json!(d),
                Err(Error::StokesDirectionHit { .. }) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            entry.insert(psi.to_string(), v);
        }
        rows.push(json!({ "theta": theta.to_string(), "dims": entry }));
    }
    Ok(json!({ "rows": rows }))
}

fn form_json(f: &GoodForm) -> Value {
    match f {
        GoodForm::Holomorphic => json!({ "form": "holomorphic" }),
        GoodForm::Good { m, n, beta0 } => {
            json!({ "form": "good", "m": m, "n": n, "beta0": beta0.to_string() })
        }
        GoodForm::Bad => json!({ "form": "bad" }),
    }
}

fn resolve_cmd(ctx: &Context) -> Result<Value, Failure> {
    let mut out = Vec::new();
    for psi in ctx.config.exponents() {
        let res = resolve(&TwistExpression { psi }, &ctx.config)?;
        let charts: Vec<Value> = res
            .charts
            .iter()
            .zip(&res.chart_forms)
            .map(|(c, f)| {
                let (t, y) = c.coordinates();
                let mut v = form_json(f);
                v["chart"] = json!(c.label.to_string());
                v["t"] = json!(t.to_string());
                v["y"] = json!(y.to_string());
                v
            })
            .collect();
        let points: Vec<Value> = res
            .intersections
            .iter()
            .map(|i| {
                json!({
                    "component": ctx.config.components[i.component].label,
                    "chart": i.chart.to_string(),
                    "point": [i.point.0.to_string(), i.point.1.to_string()],
                })
            })
            .collect();
        out.push(json!({ "psi": psi.to_string(), "charts": charts, "intersections": points }));
    }
    Ok(Value::from(out))
}

fn fiber(ctx: &Context) -> Result<Value, Failure> {
    let theta = ctx.theta()?;
    let mut out = Vec::new();
    for psi in ctx.config.exponents() {
        let b = b_set(&ctx.config, &psi, theta)?;
        out.push(json!({
            "psi": psi.to_string(),
            "theta": theta.to_string(),
            "punctures": b.punctures,
            "arc": [b.arc.start.to_string(), b.arc.end.to_string()],
            "h1c_dimension": h1c_dimension(&b),
        }));
    }
    Ok(Value::from(out))
}

fn stokes(ctx: &Context) -> Result<Value, Failure> {
    let rep = ctx.backend();
    let n_pi = compute_n_pi(&rep)?;
    let n_zero = compute_n_zero(&rep)?;
    let sd = stokes_data(&rep)?;
    let total = total_monodromy(&sd)?;
    Ok(json!({
        "backend": rep.backend_name(),
        "rank": rep.matrix().map(MatrixRep::rank),
        "N_pi": basis_change_json(&n_pi),
        "N_0": basis_change_json(&n_zero),
        "S_0^1": basis_change_json(&sd.s),
        "S_1^0": basis_change_json(&sd.s_prime),
        "total_monodromy": basis_change_json(&total),
    }))
}

fn verify_cmd(ctx: &Context) -> (bool, Value) {
    let checks = verify::run_all(ctx.args.seed, verify::DEFAULT_TRIALS);
    let ok = checks.iter().all(|c| c.passed);
    (ok, json!({ "passed": ok, "checks": checks }))
}

fn load(args: Cli, stdin: &mut dyn Read) -> Result<Context, Failure> {
    let (config, rep) = match args.config.as_deref() {
        None => (DivisorConfig::worked_example(args.rank), None),
        Some(path) => {
            let mut text = String::new();
            if path == "-" {
                stdin
                    .read_to_string(&mut text)
                    .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            } else {
                text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
            }
            parse_config(&text)?
        }
    };
    Ok(Context { config, rep, args })
}

fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let command = cli.command;
    let result = load(cli, stdin).and_then(|ctx| match command {
        Command::Directions => directions(&ctx).map(|v| (true, v)),
        Command::Order => order(&ctx).map(|v| (true, v)),
        Command::Decompose => decompose(&ctx).map(|v| (true, v)),
        Command::Dims => dims(&ctx).map(|v| (true, v)),
        Command::Resolve => resolve_cmd(&ctx).map(|v| (true, v)),
        Command::Fiber => fiber(&ctx).map(|v| (true, v)),
        Command::Stokes => stokes(&ctx).map(|v| (true, v)),
        Command::Verify => Ok(verify_cmd(&ctx)),
    });
    match result {
        Ok((ok, v)) => Outcome {
            code: if ok { 0 } else { 1 },
            stdout: render(&v),
            stderr: String::new(),
        },
        Err(Failure::Validation(e)) => Outcome {
            code: 1,
            stdout: render(&error_json(&e)),
            stderr: String::new(),
        },
        Err(Failure::Input(m)) => Outcome {
            code: 2,
            stdout: render(&json!({ "error": { "kind": "MalformedInput", "message": m } })),
            stderr: String::new(),
        },
    }
}
