//! Job dispatch for the `shintani` binary, kept separate from argument
//! parsing so tests can drive it directly.
//!
//! A job reads one JSON document, runs one library pipeline and produces one
//! JSON document. Object keys come out sorted, so equal jobs give
//! byte-identical output.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use shintani::cocycle::sigma_eval;
use shintani::cocycle::verify::{verify_cocycle, VerifyOptions};
use shintani::cones::{sigma_decompose_with, ConeCombo, ConeComboDoc};
use shintani::exactnum::{CoeffElem, Matrix, RatStr};
use shintani::lvalues::{
    dirichlet_l_closed, dirichlet_l_via_cocycle, norm_character, quad_l_from_s_coeffs, quad_l_value_detailed,
    s_coeffs, CharDoc, RealQuadField,
};
use shintani::pairing::{pair_combo, CoeffDoc, SchwartzDoc, SchwartzFn};
use shintani::{Error, Exec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SCHEMA: i32 = 64;
pub const EXIT_MATH: i32 = 65;
pub const EXIT_TRUNCATION: i32 = 66;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    EvalSigma,
    Decompose,
    Pair,
    VerifyCocycle,
    LvalueQ,
    LvalueQuad,
    SCoeffs,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::EvalSigma => "eval-sigma",
            Command::Decompose => "decompose",
            Command::Pair => "pair",
            Command::VerifyCocycle => "verify-cocycle",
            Command::LvalueQ => "lvalue-q",
            Command::LvalueQuad => "lvalue-quad",
            Command::SCoeffs => "s-coeffs",
        }
    }
}

/// One invocation. Flags override the matching fields of the input document.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    pub input: Option<Value>,
    pub seed: Option<u64>,
    pub dmax: Option<u32>,
    pub trials: Option<usize>,
    pub dim: Option<usize>,
    pub exec: Exec,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec { command, input: None, seed: None, dmax: None, trials: None, dim: None, exec: Exec::default() }
    }
}

/// Exit status and the JSON document to print.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub body: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub exit_code: i32,
    pub code: String,
    pub message: String,
    pub context: Vec<String>,
}

impl Failure {
    pub fn schema(message: impl Into<String>) -> Self {
        Failure { exit_code: EXIT_SCHEMA, code: "schema".into(), message: message.into(), context: Vec::new() }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"code": self.code, "message": self.message, "context": self.context}})
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit_code = match e.root() {
            Error::TruncationTooSmall { .. } => EXIT_TRUNCATION,
            _ => EXIT_MATH,
        };
        Failure { exit_code, code: e.code().into(), message: e.root().to_string(), context: e.contexts() }
    }
}

type Job<T> = std::result::Result<T, Failure>;

pub fn run(job: &JobSpec) -> Outcome {
    let res = match job.command {
        Command::EvalSigma => eval_sigma(job),
        Command::Decompose => decompose(job),
        Command::Pair => pair(job),
        Command::VerifyCocycle => verify(job),
        Command::LvalueQ => lvalue_q(job),
        Command::LvalueQuad => lvalue_quad(job),
        Command::SCoeffs => s_coeffs_job(job),
    };
    match res {
        Ok(body) => Outcome { exit_code: EXIT_OK, body },
        Err(f) => Outcome { exit_code: f.exit_code, body: f.to_json() },
    }
}

/// Parses `--input`: `-` for stdin, inline JSON when it starts with `{` or
/// `[`, a file path otherwise.
pub fn read_input(arg: &str) -> Job<Value> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| Failure::schema(format!("reading stdin: {e}")))?;
        s
    } else if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::schema(format!("reading {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::schema(format!("input is not JSON: {e}")))
}

pub fn render(body: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(body).expect("values serialize")
    } else {
        body.to_string()
    }
}

fn parse<T: DeserializeOwned>(job: &JobSpec) -> Job<T> {
    let v = job.input.clone().ok_or_else(|| Failure::schema(format!("{} needs --input", job.command.name())))?;
    serde_json::from_value(v).map_err(|e| Failure::schema(format!("{} input: {e}", job.command.name())))
}

fn parse_or_default<T: DeserializeOwned + Default>(job: &JobSpec) -> Job<T> {
    match &job.input {
        None => Ok(T::default()),
        Some(_) => parse(job),
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("documents serialize")
}

fn coeff_json(c: &CoeffElem) -> Value {
    to_json(&CoeffDoc::of(c))
}

fn pick_dmax(job: &JobSpec, doc: Option<u32>, default: u32) -> u32 {
    job.dmax.or(doc).unwrap_or(default)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EvalSigmaInput {
    alphas: Vec<Matrix>,
    w: Vec<RatStr>,
}

fn eval_sigma(job: &JobSpec) -> Job<Value> {
    let inp: EvalSigmaInput = parse(job)?;
    let w: Vec<_> = inp.w.into_iter().map(|x| x.0).collect();
    let v = sigma_eval(&inp.alphas, &w)?;
    Ok(json!({ "value": v }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DecomposeInput {
    alphas: Vec<Matrix>,
}

fn decompose(job: &JobSpec) -> Job<Value> {
    let inp: DecomposeInput = parse(job)?;
    let combo = sigma_decompose_with(&inp.alphas, job.exec)?;
    Ok(json!({ "cones": combo.len(), "combo": combo.to_doc() }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairInput {
    combo: ConeComboDoc,
    phi: SchwartzDoc,
    #[serde(rename = "Dmax")]
    dmax: Option<u32>,
}

fn pair(job: &JobSpec) -> Job<Value> {
    let inp: PairInput = parse(job)?;
    let combo = ConeCombo::from_doc(&inp.combo)?;
    let phi = SchwartzFn::from_doc(&inp.phi)?;
    let dmax = pick_dmax(job, inp.dmax, 4);
    let q = pair_combo(&combo, &phi, dmax, job.exec)?;
    // A quotient whose poles cancel is also reported as a power series.
    let reduced = match q.reduce_to_power_series() {
        Ok(s) => Value::Array(
            s.truncate(dmax + 1)
                .terms()
                .map(|(e, c)| json!({"deg": e, "value": coeff_json(c)}))
                .collect(),
        ),
        Err(e) if matches!(e.root(), Error::NotDivisible { .. }) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    Ok(json!({ "quotient": q.to_doc(), "power_series": reduced }))
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyInput {
    n: Option<usize>,
    trials: Option<usize>,
    points_per_trial: Option<usize>,
    degenerate_rate: Option<f64>,
    seed: Option<u64>,
}

fn verify(job: &JobSpec) -> Job<Value> {
    let inp: VerifyInput = parse_or_default(job)?;
    let seed = job
        .seed
        .or(inp.seed)
        .ok_or_else(|| Failure::schema("verify-cocycle needs a seed (--seed or \"seed\")"))?;
    let defaults = VerifyOptions::default();
    let opts = VerifyOptions {
        n: job.dim.or(inp.n).unwrap_or(defaults.n),
        trials: job.trials.or(inp.trials).unwrap_or(defaults.trials),
        points_per_trial: inp.points_per_trial.unwrap_or(defaults.points_per_trial),
        seed,
        degenerate_rate: inp.degenerate_rate.unwrap_or(defaults.degenerate_rate),
        exec: job.exec,
    };
    if opts.n == 0 {
        return Err(Failure::schema("dimension must be at least 1"));
    }
    if !(0.0..=1.0).contains(&opts.degenerate_rate) {
        return Err(Failure::schema("degenerate_rate must lie in [0, 1]"));
    }
    let mut report = to_json(&verify_cocycle(&opts)?);
    report["seed"] = json!(seed);
    Ok(report)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Route {
    Cocycle,
    Closed,
    #[default]
    Both,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LvalueQInput {
    #[serde(default)]
    char: CharDoc,
    r: u32,
    #[serde(rename = "Dmax")]
    dmax: Option<u32>,
    #[serde(default)]
    route: Route,
}

fn lvalue_q(job: &JobSpec) -> Job<Value> {
    let inp: LvalueQInput = parse(job)?;
    let chi = inp.char.to_char()?;
    if inp.r == 0 {
        return Err(Failure::schema("r must be at least 1"));
    }
    let dmax = pick_dmax(job, inp.dmax, inp.r);
    let mut out = json!({
        "modulus": chi.modulus(),
        "conductor": chi.conductor(),
        "r": inp.r,
        "s": 1 - i64::from(inp.r),
    });
    let value = match inp.route {
        Route::Closed => {
            out["route"] = json!("closed");
            dirichlet_l_closed(&chi, inp.r)?
        }
        Route::Cocycle | Route::Both => {
            let v = dirichlet_l_via_cocycle(&chi, inp.r, dmax)?;
            out["route"] = json!("cocycle");
            out["Dmax"] = json!(dmax);
            if inp.route == Route::Both {
                let c = dirichlet_l_closed(&chi, inp.r)?;
                if c != v {
                    return Err(Error::Inconsistent(format!(
                        "cocycle route gives {:?}, closed form gives {:?}",
                        CoeffDoc::of(&v),
                        CoeffDoc::of(&c)
                    ))
                    .into());
                }
                out["closed_form_agrees"] = json!(true);
            }
            v
        }
    };
    out["value"] = coeff_json(&value);
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldDoc {
    #[serde(rename = "D")]
    d: i64,
}

/// The function on `O_K = Z[omega]`: a Dirichlet character through the norm,
/// an explicit table, or the indicator of `O_K` when neither is given.
fn field_function(k: &RealQuadField, chi: Option<&CharDoc>, phi: Option<&SchwartzDoc>) -> Job<SchwartzFn> {
    match (chi, phi) {
        (Some(_), Some(_)) => Err(Failure::schema("give at most one of \"char\" and \"phi\"")),
        (Some(c), None) => Ok(norm_character(k, &c.to_char()?)?),
        (None, Some(p)) => {
            let f = SchwartzFn::from_doc(p)?;
            if f.dim() != 2 {
                return Err(Failure::schema(format!("phi must live on Q^2, got Q^{}", f.dim())));
            }
            Ok(f)
        }
        (None, None) => Ok(SchwartzFn::lattice_indicator(2, k.ring())),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LvalueQuadInput {
    field: FieldDoc,
    char: Option<CharDoc>,
    phi: Option<SchwartzDoc>,
    r: u32,
    #[serde(rename = "Dmax")]
    dmax: Option<u32>,
}

fn lvalue_quad(job: &JobSpec) -> Job<Value> {
    let inp: LvalueQuadInput = parse(job)?;
    if inp.r == 0 {
        return Err(Failure::schema("r must be at least 1"));
    }
    let k = RealQuadField::new(inp.field.d)?;
    k.require_narrow_class_number_one()?;
    let phi = field_function(&k, inp.char.as_ref(), inp.phi.as_ref())?;
    let dmax = pick_dmax(job, inp.dmax, 2 * inp.r + 4);
    let res = quad_l_value_detailed(&k, &phi, inp.r, dmax, job.exec)?;
    Ok(json!({
        "D": k.radicand(),
        "r": inp.r,
        "s": -i64::from(inp.r),
        "value": coeff_json(&res.value),
        "route": "cocycle",
        "Dmax": dmax,
        "cones": res.cones,
        "one_sided": [coeff_json(&res.one_sided.0), coeff_json(&res.one_sided.1)],
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SCoeffsInput {
    field: FieldDoc,
    char: Option<CharDoc>,
    phi: Option<SchwartzDoc>,
    rmax: u32,
    #[serde(rename = "Dmax")]
    dmax: Option<u32>,
}

fn s_coeffs_job(job: &JobSpec) -> Job<Value> {
    let inp: SCoeffsInput = parse(job)?;
    let k = RealQuadField::new(inp.field.d)?;
    let phi = field_function(&k, inp.char.as_ref(), inp.phi.as_ref())?;
    let dmax = pick_dmax(job, inp.dmax, 2 * inp.rmax);
    let s = s_coeffs(&k, &phi, inp.rmax, dmax, job.exec)?;
    let table: Vec<Value> = s.table.iter().map(|(m, c)| json!({"m": [m.0, m.1], "value": coeff_json(c)})).collect();
    let values = (1..=inp.rmax)
        .map(|r| Ok(json!({"r": r, "value": coeff_json(&quad_l_from_s_coeffs(&k, &s, r)?)})))
        .collect::<Job<Vec<Value>>>()?;
    Ok(json!({
        "D": k.radicand(),
        "rmax": inp.rmax,
        "Dmax": dmax,
        "S": table,
        "L": values,
    }))
}
