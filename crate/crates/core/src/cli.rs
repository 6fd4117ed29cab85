//! Batch command-line front end. Reports go to the given writer as JSON (keys
//! sorted) or CSV; diagnostics go to the error writer.

use std::io::Write;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::bent::{
    dual_level_counts, dual_level_counts_closed, extract_profile, BentCandidate, BentError,
    BentFamily,
};
use crate::charsum::{
    build_partition, class_representatives, closed_form_class, pstar_power_negative, w_sum,
    weil_sum_bruteforce, weil_sum_closed, weil_sum_period, weil_sum_period_closed, CharSumError,
    SumMode,
};
use crate::codes::{
    build_defining_set_with_ceiling, defining_set_size_closed, distribution_aggregate,
    griesmer_check, report_json, sample_check, weight_distribution_with, CodeError, CodeSpec,
    Limits, Method, DEFAULT_DIRECT_BUDGET, DEFAULT_PAIR_CEILING,
};
use crate::cyclotomic::CycInt;
use crate::field::{build_field, validate_params, FieldError, FieldTable};
use crate::predict::{predict, prediction_json, PredictError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREEMENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Validate parameters and print the derived field data.
    Params,
    /// Weil sums S(a, b), S(a) and w(u, b) on one b per residue class.
    Weil,
    /// Walsh analysis of a bent candidate.
    Bent,
    /// Build a defining set and report its size.
    Construct,
    /// Weight distribution of a code.
    Spectrum,
    /// Weight distribution predicted by the theorem tables.
    Predict,
    /// Spectrum against prediction.
    Verify,
    /// Seeded direct-versus-closed check on sampled codewords.
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Closed,
    Aggregate,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::Closed => Method::Closed,
            MethodArg::Aggregate => Method::Aggregate,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "weilcodes",
    version,
    about = "Few-weight codes from binomial Weil sums"
)]
pub struct CliConfig {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub ell: u64,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Use the defining set D_u with this u.
    #[arg(long, conflicts_with = "dprime")]
    pub du: Option<u64>,
    /// Use D' with this bent family: square, alphakasami, kasami, coulter.
    #[arg(long)]
    pub dprime: Option<String>,
    /// Exponent parameter of the bent family.
    #[arg(long)]
    pub i: Option<u32>,
    #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
    pub method: MethodArg,
    #[arg(long = "samples", default_value_t = 100)]
    pub sample_size: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Ceiling on q^2 for materialising a defining set.
    #[arg(long, default_value_t = DEFAULT_PAIR_CEILING)]
    pub ceiling: u64,
    /// Ceiling on q^2 * n for the direct spectrum.
    #[arg(long, default_value_t = DEFAULT_DIRECT_BUDGET)]
    pub budget: u128,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Infeasible(String),
    Finding(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Infeasible(_) => EXIT_INFEASIBLE,
            Failure::Finding(_) => EXIT_DISAGREEMENT,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Infeasible(m) | Failure::Finding(m) => m,
        }
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::Overflow { .. } => Failure::Infeasible(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::CeilingExceeded { .. } => Failure::Infeasible(e.to_string()),
            CodeError::InvalidSpec(_) => Failure::Usage(e.to_string()),
            _ => Failure::Finding(e.to_string()),
        }
    }
}

impl From<CharSumError> for Failure {
    fn from(e: CharSumError) -> Self {
        Failure::Finding(e.to_string())
    }
}

impl From<BentError> for Failure {
    fn from(e: BentError) -> Self {
        match e {
            BentError::UnsupportedFamily(_) => Failure::Usage(e.to_string()),
            _ => Failure::Finding(e.to_string()),
        }
    }
}

impl From<PredictError> for Failure {
    fn from(e: PredictError) -> Self {
        match e {
            PredictError::Code(c) => c.into(),
            _ => Failure::Finding(e.to_string()),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match CliConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(err, "{e}");
            code
        }
    }
}

pub fn run(cfg: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Some(n) = cfg.threads {
        // Only the first call can install the global pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match dispatch(cfg) {
        Ok((report, code)) => {
            let _ = writeln!(out, "{report}");
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

type Outcome = Result<(String, i32), Failure>;

fn dispatch(cfg: &CliConfig) -> Outcome {
    let params = validate_params(cfg.p, cfg.ell, cfg.k)?;
    match cfg.command {
        Command::Params => {
            let tbl = build_field(params)?;
            let v = json!({
                "params": params,
                "sqrt_q": params.sqrt_q(),
                "ell_k": params.ell_k(),
                "pstar_power": if pstar_power_negative(&params) { -(params.sqrt_q() as i128) } else { params.sqrt_q() as i128 },
                "modulus": tbl.modulus,
                "t1": params.e % params.p,
                "t2": params.ell_k1() % params.p,
            });
            Ok((pretty(&v), EXIT_OK))
        }
        Command::Weil => cmd_weil(cfg, Arc::new(build_field(params)?)),
        Command::Bent => cmd_bent(cfg, Arc::new(build_field(params)?)),
        _ => {
            let spec = build_spec(cfg, Arc::new(build_field(params)?))?;
            match cfg.command {
                Command::Construct => cmd_construct(cfg, &spec),
                Command::Spectrum => cmd_spectrum(cfg, &spec),
                Command::Predict => cmd_predict(cfg, &spec),
                Command::Verify => cmd_verify(cfg, &spec),
                Command::Sample => cmd_sample(cfg, &spec),
                Command::Params | Command::Weil | Command::Bent => unreachable!(),
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialise")
}

fn limits(cfg: &CliConfig) -> Limits {
    Limits {
        pair_ceiling: cfg.ceiling,
        direct_budget: cfg.budget,
    }
}

fn family(cfg: &CliConfig) -> Result<BentFamily, Failure> {
    let name = cfg
        .dprime
        .as_deref()
        .ok_or_else(|| Failure::Usage("--dprime FAMILY is required".into()))?;
    Ok(BentFamily::from_name(name, cfg.i)?)
}

fn build_spec(cfg: &CliConfig, tbl: Arc<FieldTable>) -> Result<CodeSpec, Failure> {
    match (cfg.du, &cfg.dprime) {
        (Some(u), None) => Ok(CodeSpec::du(tbl, u)?),
        (None, Some(_)) => {
            let cand = BentCandidate::new(family(cfg)?, tbl)?;
            let prof = extract_profile(cand)?;
            Ok(CodeSpec::dprime(Arc::new(prof))?)
        }
        _ => Err(Failure::Usage(
            "exactly one of --du U or --dprime FAMILY is required".into(),
        )),
    }
}

fn cyc_json(v: &CycInt) -> Value {
    json!({"text": v.to_string(), "coeffs": v.coeffs})
}

fn cmd_weil(cfg: &CliConfig, tbl: Arc<FieldTable>) -> Outcome {
    let part = build_partition(&tbl)?;
    let p = tbl.p;
    let (brute, closed) = match cfg.method {
        MethodArg::Direct => (true, false),
        MethodArg::Closed | MethodArg::Aggregate => (false, true),
        MethodArg::Both => (true, true),
    };
    let mut agree = true;
    let mut sums = Vec::new();
    let mut periods = Vec::new();
    for a in 0..p {
        let ae = tbl.from_int(a as i64);
        let mut row = json!({"a": a});
        if brute {
            row["brute"] = cyc_json(&weil_sum_period(&tbl, ae));
        }
        if closed {
            row["closed"] = cyc_json(&weil_sum_period_closed(&tbl.params, a));
        }
        if brute && closed {
            let ok = weil_sum_period(&tbl, ae) == weil_sum_period_closed(&tbl.params, a);
            agree &= ok;
            row["agree"] = ok.into();
        }
        periods.push(row);
    }
    let mut ws = Vec::new();
    for b in class_representatives(&tbl) {
        let b_log = b.log();
        let i_b = tbl.residue_class(b).ok();
        for a in 0..p {
            let ae = tbl.from_int(a as i64);
            let mut row = json!({"a": a, "b_log": b_log, "i_b": i_b, "closed_class": closed_form_class(&tbl, b)});
            let bv = brute.then(|| weil_sum_bruteforce(&tbl, ae, b));
            let cv = if closed {
                Some(weil_sum_closed(&tbl, &part, ae, b)?)
            } else {
                None
            };
            if let Some(v) = &bv {
                row["brute"] = cyc_json(v);
            }
            if let Some(v) = &cv {
                row["closed"] = cyc_json(v);
            }
            if let (Some(x), Some(y)) = (&bv, &cv) {
                agree &= x == y;
                row["agree"] = (x == y).into();
            }
            sums.push(row);
        }
        for u in 0..p {
            let mut row = json!({"u": u, "b_log": b_log});
            let bv = if brute {
                Some(w_sum(&tbl, &part, u, b, SumMode::Brute)?)
            } else {
                None
            };
            let cv = if closed {
                Some(w_sum(&tbl, &part, u, b, SumMode::Closed)?)
            } else {
                None
            };
            if let Some(v) = &bv {
                row["brute"] = cyc_json(v);
            }
            if let Some(v) = &cv {
                row["closed"] = cyc_json(v);
            }
            if let (Some(x), Some(y)) = (&bv, &cv) {
                agree &= x == y;
                row["agree"] = (x == y).into();
            }
            ws.push(row);
        }
    }
    let mut v = json!({"params": tbl.params, "periods": periods, "sums": sums, "w": ws});
    if brute && closed {
        v["agree"] = agree.into();
    }
    let code = if agree { EXIT_OK } else { EXIT_DISAGREEMENT };
    Ok((pretty(&v), code))
}

fn cmd_bent(cfg: &CliConfig, tbl: Arc<FieldTable>) -> Outcome {
    let fam = family(cfg)?;
    let prof = extract_profile(BentCandidate::new(fam, tbl.clone())?)?;
    let counts = dual_level_counts(&prof)?;
    let v = json!({
        "params": tbl.params,
        "family": fam.name(),
        "i": fam.exponent_param(),
        "epsilon": prof.epsilon,
        "l_f": prof.l_f,
        "k_f": prof.k_f,
        "dual_level_counts": counts,
        "dual_level_counts_closed": dual_level_counts_closed(tbl.p, tbl.e, prof.epsilon),
    });
    Ok((pretty(&v), EXIT_OK))
}

fn cmd_construct(cfg: &CliConfig, spec: &CodeSpec) -> Outcome {
    let d = build_defining_set_with_ceiling(spec, cfg.ceiling)?;
    let v = json!({
        "params": spec.params(),
        "spec": spec.describe(),
        "n": d.n(),
        "n_closed": defining_set_size_closed(spec)?,
    });
    Ok((pretty(&v), EXIT_OK))
}

fn cmd_spectrum(cfg: &CliConfig, spec: &CodeSpec) -> Outcome {
    let wd = weight_distribution_with(spec, cfg.method.into(), limits(cfg))?;
    let text = match cfg.format {
        Format::Json => {
            let mut v = report_json(spec, &wd);
            v["method"] = Method::from(cfg.method).to_string().into();
            pretty(&v)
        }
        Format::Csv => wd.to_csv().trim_end().to_string(),
    };
    Ok((text, EXIT_OK))
}

fn cmd_predict(cfg: &CliConfig, spec: &CodeSpec) -> Outcome {
    let pred = predict(spec)?;
    let text = match cfg.format {
        Format::Json => pretty(&prediction_json(spec, &pred)),
        Format::Csv => pred.distribution.to_csv().trim_end().to_string(),
    };
    Ok((text, EXIT_OK))
}

fn cmd_verify(cfg: &CliConfig, spec: &CodeSpec) -> Outcome {
    let observed = weight_distribution_with(spec, cfg.method.into(), limits(cfg))?;
    let pred = predict(spec)?;
    let predicted = &pred.distribution;
    let weights: std::collections::BTreeSet<u64> = observed
        .dist
        .keys()
        .chain(predicted.dist.keys())
        .copied()
        .collect();
    let diff: Vec<Value> = weights
        .into_iter()
        .filter_map(|w| {
            let a = observed.dist.get(&w).copied().unwrap_or(0);
            let b = predicted.dist.get(&w).copied().unwrap_or(0);
            (a != b).then(|| json!({"weight": w, "observed": a, "predicted": b}))
        })
        .collect();
    let agree = diff.is_empty() && observed.n == predicted.n;
    let mut spectrum = report_json(spec, &observed);
    spectrum["method"] = Method::from(cfg.method).to_string().into();
    let v = json!({
        "params": spec.params(),
        "spec": spec.describe(),
        "n": observed.n,
        "dim": observed.dim,
        "d": observed.d_min,
        "spectrum": spectrum,
        "prediction": prediction_json(spec, &pred),
        "diff": diff,
        "agree": agree,
    });
    let code = if agree { EXIT_OK } else { EXIT_DISAGREEMENT };
    Ok((pretty(&v), code))
}

fn cmd_sample(cfg: &CliConfig, spec: &CodeSpec) -> Outcome {
    let d = build_defining_set_with_ceiling(spec, cfg.ceiling)?;
    let report = sample_check(&d, cfg.sample_size, cfg.seed)?;
    let wd = distribution_aggregate(spec)?;
    let g = griesmer_check(wd.n, wd.dim, wd.d_min, spec.field.p);
    let clean = report.mismatches.is_empty();
    let v = json!({
        "params": spec.params(),
        "spec": spec.describe(),
        "n": d.n(),
        "dim": wd.dim,
        "d": wd.d_min,
        "griesmer": g,
        "seed": report.seed,
        "exhaustive": report.exhaustive,
        "samples": report.samples,
        "mismatches": report.mismatches,
    });
    let code = if clean { EXIT_OK } else { EXIT_DISAGREEMENT };
    Ok((pretty(&v), code))
}
