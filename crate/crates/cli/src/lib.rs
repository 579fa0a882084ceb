//! Command-line front-end for `rhpwn-core`.
//!
//! Every subcommand writes one JSON document (or CSV) to standard output.
//! Exit status is 0 on success, 2 for invalid input or arguments outside an
//! operation's domain, and 1 for internal numerical failures.

pub mod wire;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Value};

use rhpwn_core::fock::{self, kernel_values};
use rhpwn_core::nogo::nogo_report;
use rhpwn_core::number::parse_rational;
use rhpwn_core::processes::{
    classical_check, density_p, density_q_scaled, mgf_eval, sample_x, splitting_series_check, Witness,
};
use rhpwn_core::rewrite::{kernel_bruteforce, reduce_truncated, reduce_untruncated};
use rhpwn_core::stirling::{normal_order_expansion, number_operator_form, stirling_first};
use rhpwn_core::{AlgebraTag, Error};

use wire::*;

#[derive(Parser, Debug)]
#[command(name = "rhpwn", version, about = "Exact and numeric tools for renormalized higher powers of white noise")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Where a JSON payload comes from: `--json TEXT`, `--input FILE`, or stdin.
#[derive(Args, Debug, Clone)]
pub struct Payload {
    /// Inline JSON payload.
    #[arg(long, conflicts_with = "input")]
    pub json: Option<String>,
    /// File holding the JSON payload ("-" for stdin, the default).
    #[arg(long)]
    pub input: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bracket of two elements. Payload: {"left": element, "right": element}.
    Commutator {
        #[command(flatten)]
        payload: Payload,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Involution of an element. Payload: element.
    Involute {
        #[command(flatten)]
        payload: Payload,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Signed Stirling number of the first kind s(n, k).
    Stirling {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        k: i64,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Expansion of (b†)^n b^n in powers of b†b; with --k also the
    /// (excess, number-power) form of B^n_k.
    NormalOrder {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Reduce a word acting on the vacuum. Payload: {"word": [...],
    /// "truncated_order": n?}.
    VacuumMoment {
        #[command(flatten)]
        payload: Payload,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Number-vector kernel π_{n,k} and h_{n,k}.
    Kernel {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Gram matrix of exponential vectors. Payload: {"n", "fs", "tol"}.
    Gram {
        #[command(flatten)]
        payload: Payload,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Exponential-vector inner product. Payload: {"n", "f", "g"}.
    InnerProduct {
        #[command(flatten)]
        payload: Payload,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Gram matrix and minors of {B^{2n}_0 Φ, (B^n_0)² Φ}.
    Nogo {
        #[arg(long)]
        n: i64,
        /// Interval measure, e.g. 18 or 37/2.
        #[arg(long)]
        mu: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Exact series check of the splitting formula.
    SplitCheck {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Moment generating function on a grid `start:stop:step` (CSV by default).
    Mgf {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        s_grid: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Density p_t on a grid (CSV by default); with --n the rescaled
    /// order-n density.
    Density {
        #[arg(long)]
        t: f64,
        #[arg(long, allow_hyphen_values = true)]
        x_grid: String,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Samples of X_t, one per line by default.
    Sample {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Classicality of Σ c_{n,k} B^n_k(χ_[0,t]). Payload: {"coeffs": [{n,k,re,im}],
    /// "horizon": ["1/2", ...]}.
    ClassicalCheck {
        #[command(flatten)]
        payload: Payload,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

/// A failed invocation.
#[derive(Debug)]
pub enum CliError {
    Schema(SchemaError),
    Core(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Core(e) if e.is_domain() => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Schema(e) => json!({ "error": { "kind": "schema", "pointer": e.pointer, "message": e.message } }),
            CliError::Core(e) => {
                let kind = if e.is_domain() { "domain" } else { "internal" };
                json!({ "error": { "kind": kind, "message": e.to_string() } })
            }
            CliError::Io(m) => json!({ "error": { "kind": "io", "message": m } }),
        }
    }
}

impl From<SchemaError> for CliError {
    fn from(e: SchemaError) -> Self {
        CliError::Schema(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "{}", CliError::Io(e.to_string()).to_json());
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            e.exit_code()
        }
    }
}

fn read_payload(p: &Payload) -> CliResult<String> {
    if let Some(s) = &p.json {
        return Ok(s.clone());
    }
    let mut text = String::new();
    match p.input.as_deref() {
        None | Some("-") => std::io::stdin().read_to_string(&mut text).map(|_| ()),
        Some(path) => std::fs::read_to_string(path).map(|s| text = s),
    }
    .map_err(|e| CliError::Io(e.to_string()))?;
    Ok(text)
}

/// A float with 17 significant digits; non-finite values become `null`.
pub fn float_json(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(format_float(x).parse().expect("formatted float is valid JSON"))
    } else {
        Value::Null
    }
}

pub fn format_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn complex_float_json(z: Complex64) -> Value {
    json!({ "re": float_json(z.re), "im": float_json(z.im) })
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

/// Grid `start:stop:step`, inclusive of `stop` up to rounding.
pub fn parse_grid(text: &str) -> CliResult<Vec<f64>> {
    let bad = |m: &str| CliError::Schema(SchemaError { pointer: String::new(), message: format!("grid {text:?}: {m}") });
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("expected start:stop:step"));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad("not a number")))
        .collect::<Result<_, _>>()?;
    let (a, b, h) = (nums[0], nums[1], nums[2]);
    if !(h > 0.0) || !a.is_finite() || !b.is_finite() || b < a {
        return Err(bad("need finite start ≤ stop and step > 0"));
    }
    let count = ((b - a) / h + 1e-9).floor() as usize + 1;
    if count > 10_000_000 {
        return Err(bad("too many grid points"));
    }
    Ok((0..count).map(|i| a + i as f64 * h).collect())
}

fn element_csv(x: &[TermJson]) -> String {
    csv(
        &["tag", "n", "k", "a", "b", "re", "im"],
        x.iter().flat_map(|t| {
            let tag = match t.tag {
                AlgebraTag::Rhpwn => "RHPWN",
                AlgebraTag::Winfty => "WINFTY",
            };
            t.pieces
                .iter()
                .map(|p| vec![tag.into(), t.n.to_string(), t.k.to_string(), p.a.clone(), p.b.clone(), p.re.clone(), p.im.clone()])
                .collect::<Vec<_>>()
        }),
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CommutatorPayload {
    left: Vec<TermJson>,
    right: Vec<TermJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VacuumPayload {
    word: Vec<FactorJson>,
    #[serde(default)]
    truncated_order: Option<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GramPayload {
    n: i64,
    fs: Vec<Vec<PieceJson>>,
    #[serde(default = "default_tol")]
    tol: f64,
}

fn default_tol() -> f64 {
    1e-10
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InnerProductPayload {
    n: i64,
    f: Vec<PieceJson>,
    g: Vec<PieceJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassicalPayload {
    coeffs: Vec<CoefficientJson>,
    horizon: Vec<String>,
}

fn output(format: Format, json: impl FnOnce() -> Value, csv: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => render_json(&json()),
        Format::Csv => csv(),
    }
}

/// Runs one command and returns its standard output.
pub fn execute(cmd: &Command) -> CliResult<String> {
    match cmd {
        Command::Commutator { payload, format } => {
            let p: CommutatorPayload = parse_payload(&read_payload(payload)?)?;
            let tag = p.left.first().or(p.right.first()).map(|t| t.tag).unwrap_or(AlgebraTag::Rhpwn);
            let a = element_from_json(&p.left, tag, "/left")?;
            let b = element_from_json(&p.right, tag, "/right")?;
            let c = element_to_json(&a.commutator(&b)?);
            Ok(output(format.unwrap_or(Format::Json), || json!(c), || element_csv(&c)))
        }
        Command::Involute { payload, format } => {
            let p: Vec<TermJson> = parse_payload(&read_payload(payload)?)?;
            let a = element_from_json(&p, AlgebraTag::Rhpwn, "")?;
            let c = element_to_json(&a.involution());
            Ok(output(format.unwrap_or(Format::Json), || json!(c), || element_csv(&c)))
        }
        Command::Stirling { n, k, format } => {
            if *n < 0 || *k < 0 {
                return Err(Error::Index(format!("s({n}, {k}) needs nonnegative indices")).into());
            }
            let v = stirling_first(*n, *k)?.to_string();
            Ok(output(
                format.unwrap_or(Format::Json),
                || json!({ "n": n, "k": k, "value": v }),
                || csv(&["n", "k", "value"], [vec![n.to_string(), k.to_string(), v.clone()]]),
            ))
        }
        Command::NormalOrder { n, k, format } => {
            if *n < 0 {
                return Err(Error::Index(format!("n must be nonnegative, got {n}")).into());
            }
            let terms = normal_order_expansion(*n)?;
            let form = k.map(|k| number_operator_form(*n, k)).transpose()?;
            Ok(output(
                format.unwrap_or(Format::Json),
                || {
                    let mut v = json!({
                        "n": n,
                        "terms": terms.iter().map(|(m, c)| json!({ "m": m, "coeff": c.to_string() })).collect::<Vec<_>>(),
                    });
                    if let (Some((excess, power)), Some(k)) = (form, k) {
                        v["generator"] = json!({ "k": k, "excess": excess, "number_power": power });
                    }
                    v
                },
                || csv(&["m", "coeff"], terms.iter().map(|(m, c)| vec![m.to_string(), c.to_string()])),
            ))
        }
        Command::VacuumMoment { payload, format } => {
            let p: VacuumPayload = parse_payload(&read_payload(payload)?)?;
            let word = word_from_json(&p.word, "/word")?;
            let v = match (p.truncated_order, &word) {
                (Some(n), ParsedWord::Interval(w)) => {
                    let s = reduce_truncated(n, w)?;
                    let vac = s.get(&0).cloned().unwrap_or_else(num_traits::Zero::zero);
                    json!({ "mode": "truncated", "n": n, "mu_poly": mu_poly_to_json(&vac), "state": number_state_to_json(&s) })
                }
                (Some(_), ParsedWord::Concrete(_)) => {
                    return Err(SchemaError {
                        pointer: "/word".into(),
                        message: "the truncated action is defined for single-interval words only".into(),
                    }
                    .into())
                }
                (None, ParsedWord::Interval(w)) => {
                    let s = reduce_untruncated(w);
                    json!({ "mode": "untruncated", "mu_poly": mu_poly_to_json(&s.vacuum_coefficient()), "state": vacuum_state_to_json(&s) })
                }
                (None, ParsedWord::Concrete(w)) => {
                    let s = reduce_untruncated(w);
                    json!({ "mode": "untruncated", "mu_poly": mu_poly_to_json(&s.vacuum_coefficient()), "state": vacuum_state_to_json(&s) })
                }
            };
            let rows = v["mu_poly"]
                .as_array()
                .map(|a| a.iter().enumerate().map(|(i, c)| vec![i.to_string(), c.as_str().unwrap_or("").to_string()]).collect::<Vec<_>>())
                .unwrap_or_default();
            Ok(output(format.unwrap_or(Format::Json), || v, || csv(&["degree", "coeff"], rows)))
        }
        Command::Kernel { n, k, format } => {
            let (pi, h) = kernel_values(*n, *k)?;
            let brute = kernel_bruteforce(*n, *k)?;
            let agrees = brute == pi;
            let (pi_j, h_j) = (real_mu_poly_to_json(&pi), real_mu_poly_to_json(&h));
            Ok(output(
                format.unwrap_or(Format::Json),
                || json!({ "n": n, "k": k, "pi": pi_j, "h": h_j, "bruteforce_agrees": agrees }),
                || {
                    let len = pi_j.len().max(h_j.len());
                    csv(
                        &["degree", "pi", "h"],
                        (0..len).map(|i| {
                            vec![i.to_string(), pi_j.get(i).cloned().unwrap_or_else(|| "0".into()), h_j.get(i).cloned().unwrap_or_else(|| "0".into())]
                        }),
                    )
                },
            ))
        }
        Command::Gram { payload, format } => {
            let p: GramPayload = parse_payload(&read_payload(payload)?)?;
            let fs = p
                .fs
                .iter()
                .enumerate()
                .map(|(i, f)| step_from_json(f, &format!("/fs/{i}")))
                .collect::<Result<Vec<_>, _>>()?;
            let r = fock::gram_psd_check(p.n, &fs, p.tol)?;
            let m = r.matrix.nrows();
            Ok(output(
                format.unwrap_or(Format::Json),
                || {
                    let rows: Vec<Value> = (0..m)
                        .map(|i| Value::Array((0..m).map(|j| complex_float_json(r.matrix[(i, j)])).collect()))
                        .collect();
                    json!({ "n": p.n, "matrix": rows, "min_eigenvalue": float_json(r.min_eigenvalue), "psd": r.psd })
                },
                || {
                    csv(
                        &["i", "j", "re", "im"],
                        (0..m).flat_map(|i| {
                            (0..m)
                                .map(|j| {
                                    let z = r.matrix[(i, j)];
                                    vec![i.to_string(), j.to_string(), format_float(z.re), format_float(z.im)]
                                })
                                .collect::<Vec<_>>()
                        }),
                    )
                },
            ))
        }
        Command::InnerProduct { payload, format } => {
            let p: InnerProductPayload = parse_payload(&read_payload(payload)?)?;
            let f = step_from_json(&p.f, "/f")?;
            let g = step_from_json(&p.g, "/g")?;
            let v = fock::exp_inner_product(p.n, &f, &g)?;
            Ok(output(
                format.unwrap_or(Format::Json),
                || {
                    json!({
                        "n": p.n,
                        "value": complex_float_json(v.value),
                        "exact_exponent": v.exact_exponent.as_ref().map(complex_to_json),
                    })
                },
                || csv(&["re", "im"], [vec![format_float(v.value.re), format_float(v.value.im)]]),
            ))
        }
        Command::Nogo { n, mu, format } => {
            let mu = mu
                .as_deref()
                .map(|s| parse_rational(s).map_err(|e| SchemaError { pointer: String::new(), message: format!("--mu: {e}") }))
                .transpose()?;
            let r = nogo_report(*n, mu)?;
            let verdict = r.psd.map(|p| if p { "PSD" } else { "NOT_PSD" });
            let s = |x: &Option<BigRational>| x.as_ref().map(|v| v.to_string());
            Ok(output(
                format.unwrap_or(Format::Json),
                || {
                    json!({
                        "n": r.n,
                        "entries": r.entries.iter().map(|row| row.iter().map(real_mu_poly_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        "d1": real_mu_poly_to_json(&r.d1),
                        "d2": real_mu_poly_to_json(&r.d2),
                        "threshold": r.threshold.to_string(),
                        "mu": s(&r.mu),
                        "d1_at_mu": s(&r.d1_at_mu),
                        "d2_at_mu": s(&r.d2_at_mu),
                        "verdict": verdict,
                    })
                },
                || {
                    csv(
                        &["n", "threshold", "mu", "d1", "d2", "verdict"],
                        [vec![
                            r.n.to_string(),
                            r.threshold.to_string(),
                            s(&r.mu).unwrap_or_default(),
                            s(&r.d1_at_mu).unwrap_or_default(),
                            s(&r.d2_at_mu).unwrap_or_default(),
                            verdict.unwrap_or_default().to_string(),
                        ]],
                    )
                },
            ))
        }
        Command::SplitCheck { n, order, format } => {
            let r = splitting_series_check(*n, *order)?;
            let vac: Vec<Vec<String>> = r.vacuum_series().iter().map(real_mu_poly_to_json).collect();
            Ok(output(
                format.unwrap_or(Format::Json),
                || {
                    json!({
                        "n": r.n,
                        "order": r.order,
                        "passed": r.passed(),
                        "mismatch": r.mismatch.as_ref().map(|m| json!({
                            "j": m.j, "k": m.k,
                            "lhs": real_mu_poly_to_json(&m.lhs),
                            "rhs": real_mu_poly_to_json(&m.rhs),
                        })),
                        "vacuum_series": vac,
                    })
                },
                || csv(&["n", "order", "passed"], [vec![r.n.to_string(), r.order.to_string(), r.passed().to_string()]]),
            ))
        }
        Command::Mgf { n, t, s_grid, format } => {
            let grid = parse_grid(s_grid)?;
            // validates n and t once; grid points past the singularity give empty cells
            mgf_eval(*n, 0.0, *t)?;
            let vals: Vec<Option<f64>> = grid.iter().map(|&s| mgf_eval(*n, s, *t).ok()).collect();
            Ok(grid_output(format.unwrap_or(Format::Csv), "s", "closed_form", &grid, &vals))
        }
        Command::Density { t, x_grid, n, format } => {
            let grid = parse_grid(x_grid)?;
            let (label, vals) = match n {
                None => {
                    density_p(*t, 0.0)?;
                    ("p", grid.iter().map(|&x| density_p(*t, x)).collect::<Result<Vec<_>, _>>()?)
                }
                Some(n) => ("q", grid.iter().map(|&y| density_q_scaled(*n, *t, y)).collect::<Result<Vec<_>, _>>()?),
            };
            let vals: Vec<Option<f64>> = vals.into_iter().map(Some).collect();
            Ok(grid_output(format.unwrap_or(Format::Csv), "x", label, &grid, &vals))
        }
        Command::Sample { t, count, seed, format } => {
            let xs = sample_x(*t, *count, *seed)?;
            Ok(match format {
                Some(Format::Json) => render_json(&Value::Array(xs.iter().map(|&x| float_json(x)).collect())),
                Some(Format::Csv) => csv(&["x"], xs.iter().map(|&x| vec![format_float(x)])),
                None => {
                    let mut s = String::with_capacity(xs.len() * 24);
                    for x in &xs {
                        let _ = writeln!(s, "{}", format_float(*x));
                    }
                    s
                }
            })
        }
        Command::ClassicalCheck { payload, format } => {
            let p: ClassicalPayload = parse_payload(&read_payload(payload)?)?;
            let coeffs = coefficients_from_json(&p.coeffs, "/coeffs")?;
            let horizon = p
                .horizon
                .iter()
                .enumerate()
                .map(|(i, t)| rational(t, &format!("/horizon/{i}")))
                .collect::<Result<Vec<_>, _>>()?;
            let v = classical_check(&coeffs, &horizon)?;
            let witness = v.witness.as_ref().map(|w| match w {
                Witness::NotHermitian { n, k, c_nk, c_kn } => json!({
                    "kind": "not_hermitian", "n": n, "k": k,
                    "c_nk": complex_to_json(c_nk), "c_kn": complex_to_json(c_kn),
                }),
                Witness::NotSelfAdjoint { t, difference } => json!({
                    "kind": "not_self_adjoint", "t": t.to_string(), "element": element_to_json(difference),
                }),
                Witness::NonCommuting { t, s, commutator } => json!({
                    "kind": "non_commuting", "t": t.to_string(), "s": s.to_string(), "element": element_to_json(commutator),
                }),
            });
            let kind = witness.as_ref().and_then(|w| w["kind"].as_str().map(str::to_string)).unwrap_or_default();
            Ok(output(
                format.unwrap_or(Format::Json),
                || json!({ "classical": v.classical, "witness": witness }),
                || csv(&["classical", "witness"], [vec![v.classical.to_string(), kind]]),
            ))
        }
    }
}

fn grid_output(format: Format, x: &str, y: &str, grid: &[f64], vals: &[Option<f64>]) -> String {
    match format {
        Format::Csv => csv(
            &[x, y],
            grid.iter().zip(vals).map(|(g, v)| vec![format_float(*g), v.map(format_float).unwrap_or_default()]),
        ),
        Format::Json => render_json(&Value::Array(
            grid.iter()
                .zip(vals)
                .map(|(g, v)| {
                    let mut m = serde_json::Map::new();
                    m.insert(x.into(), float_json(*g));
                    m.insert(y.into(), v.map(float_json).unwrap_or(Value::Null));
                    Value::Object(m)
                })
                .collect(),
        )),
    }
}
