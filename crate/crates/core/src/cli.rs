//! The `pgdus` command-line tool.
//!
//! Every subcommand reads CSV (header `t`) and writes JSON or CSV. JSON
//! documents carry `"schema": "pgdus/1"` and round every real to 12
//! significant digits. Exit codes: 0 success, 1 other failure, 2 malformed
//! input or arguments, 3 an optimiser did not converge (the report is still
//! written).

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::datasets::RELIEF_TIMES_CSV;
use crate::dist::{BaselineKind, Lifetime, PgdusModel};
use crate::error::{Error, Result};
use crate::estimation::{fit_model, FitOptions, FitResult, Method};
use crate::gof::{compare_models, ecdf, fitted_curves, info_criteria, plot_grid, GofOptions};
use crate::reliability::{
    estimate, mc_oracle_r, pool_components, r_multi, MultiComponentSpec, StressStrengthParams,
};
use crate::sample::Sample;
use crate::simulation::{run_study, StudySpec};

pub const SCHEMA: &str = "pgdus/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

const DEFAULT_SEED: u64 = 2024;
const PLOT_POINTS: usize = 512;

#[derive(Debug, Parser)]
#[command(name = "pgdus", version, about = "PGDUS lifetime models: fitting, goodness of fit, simulation and reliability")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a model to a sample and report estimates and AICc/BICc.
    Fit(FitArgs),
    /// Rank models by AICc with KS/AD/CvM bootstrap p-values and write plot data.
    Gof(GofArgs),
    /// Run a bias/MSE simulation study.
    Simulate(SimulateArgs),
    /// Stress-strength reliability, closed form or estimated from two samples.
    Reliability(ReliabilityArgs),
    /// Draw a sample from a model.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Ml,
    Mps,
    Both,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Ml => vec![Method::Ml],
            MethodArg::Mps => vec![Method::Mps],
            MethodArg::Both => Method::BOTH.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    #[value(name = "pgdus-iw")]
    PgdusIw,
    #[value(name = "pgdus-w")]
    PgdusW,
    #[value(name = "pgdus-l")]
    PgdusL,
    #[value(name = "pgdus-ik")]
    PgdusIk,
    #[value(name = "pgdus-e")]
    PgdusE,
}

impl From<ModelArg> for BaselineKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::PgdusIw => BaselineKind::InverseWeibull,
            ModelArg::PgdusW => BaselineKind::Weibull,
            ModelArg::PgdusL => BaselineKind::Lomax,
            ModelArg::PgdusIk => BaselineKind::InverseKumaraswamy,
            ModelArg::PgdusE => BaselineKind::Exponential,
        }
    }
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Input CSV with a header row and a column `t`; the bundled relief-times
    /// data when omitted.
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "pgdus-iw")]
    pub model: ModelArg,
    #[arg(long, value_enum, default_value = "ml")]
    pub method: MethodArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Output JSON path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GofArgs {
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Models to compare; defaults to pgdus-iw, pgdus-w, pgdus-l, pgdus-ik.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub model: Vec<ModelArg>,
    #[arg(long, value_enum, default_value = "ml")]
    pub method: MethodArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Bootstrap replicates per model (0 skips p-values, otherwise >= 100).
    #[arg(long = "B", default_value_t = 500)]
    pub bootstrap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Prefix of the plot-data files `<prefix>.cdf.csv` and `<prefix>.pdf.csv`;
    /// derived from `--out` when omitted, else `gof`.
    #[arg(long)]
    pub plots: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0.6)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.3)]
    pub gamma: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [50, 100, 150, 350])]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    #[arg(long, value_enum, default_value = "both")]
    pub method: MethodArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReliabilityArgs {
    /// Strength exponent for the closed form.
    #[arg(long)]
    pub gamma1: Option<f64>,
    /// Stress exponent for the closed form.
    #[arg(long)]
    pub gamma2: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub c: u32,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Strength CSV; give it `k` times for a multi-component system.
    #[arg(long)]
    pub strength: Vec<PathBuf>,
    /// Stress CSV.
    #[arg(long)]
    pub stress: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "ml")]
    pub method: MethodArg,
    /// Add a Monte Carlo cross-check of the reported value.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = 1_000_000)]
    pub draws: usize,
    /// Shared baseline parameters used by the oracle in closed-form mode.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, value_enum, default_value = "pgdus-iw")]
    pub model: ModelArg,
    /// Baseline parameters followed by gamma, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [1.0, 0.6, 0.3])]
    pub params: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    configure_threads();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn configure_threads() {
    let threads = std::env::var("PGDUS_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    if threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::Io(_)
        | Error::EmptySample
        | Error::NonPositiveObservation { .. }
        | Error::SampleTooSmall { .. }
        | Error::InvalidParameter { .. }
        | Error::ShapeMismatch(_)
        | Error::Domain(_) => EXIT_INPUT,
        _ => EXIT_FAILURE,
    }
}

pub fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Fit(a) => cmd_fit(a),
        Command::Gof(a) => cmd_gof(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Reliability(a) => cmd_reliability(a),
        Command::Sample(a) => cmd_sample(a),
    }
}

fn load(path: Option<&Path>) -> Result<Sample> {
    match path {
        Some(p) => Sample::from_csv_path(p),
        None => Sample::from_csv_str(RELIEF_TIMES_CSV, "relief times"),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Rounds every number in `v` to 12 significant digits.
pub fn round_reals(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if n.is_f64() {
                if let Some(x) = n.as_f64() {
                    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
                    if let Some(r) = serde_json::Number::from_f64(rounded) {
                        *n = r;
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_reals),
        Value::Object(map) => map.values_mut().for_each(round_reals),
        _ => {}
    }
}

fn document(command: &str, body: Map<String, Value>) -> String {
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(SCHEMA));
    doc.insert("command".into(), json!(command));
    doc.extend(body);
    let mut v = Value::Object(doc);
    round_reals(&mut v);
    let mut text = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    text.push('\n');
    text
}

fn params_object(model: &PgdusModel) -> Value {
    let map: Map<String, Value> = model
        .param_names()
        .into_iter()
        .zip(model.to_vec())
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    Value::Object(map)
}

fn fit_json(fit: &FitResult) -> Value {
    let ic = info_criteria(fit).ok();
    json!({
        "model": fit.model.kind().model_name(),
        "method": fit.method,
        "params": params_object(&fit.model),
        "objective": fit.objective,
        "log_likelihood": fit.log_likelihood,
        "converged": fit.converged,
        "on_boundary": fit.on_boundary,
        "iterations": fit.iterations,
        "n": fit.n,
        "aicc": ic.map(|c| c.aicc),
        "bicc": ic.map(|c| c.bicc),
    })
}

fn data_json(path: Option<&Path>, s: &Sample) -> Value {
    json!({
        "path": path.map(|p| p.display().to_string()),
        "n": s.len(),
    })
}

fn cmd_fit(a: &FitArgs) -> Result<i32> {
    let s = load(a.data.as_deref())?;
    let options = FitOptions {
        seed: a.seed,
        ..FitOptions::default()
    };
    let mut fits = Vec::new();
    for method in a.method.methods() {
        fits.push(fit_model(&s, a.model.into(), method, None, &options)?);
    }
    let mut body = Map::new();
    body.insert("data".into(), data_json(a.data.as_deref(), &s));
    body.insert("seed".into(), json!(a.seed));
    body.insert("fits".into(), Value::Array(fits.iter().map(fit_json).collect()));
    emit(a.out.as_deref(), &document("fit", body))?;
    Ok(if fits.iter().all(|f| f.converged) {
        EXIT_OK
    } else {
        EXIT_NOT_CONVERGED
    })
}

fn plot_prefix(a: &GofArgs) -> PathBuf {
    if let Some(p) = &a.plots {
        return p.clone();
    }
    match &a.out {
        Some(out) => out.with_extension(""),
        None => PathBuf::from("gof"),
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn cmd_gof(a: &GofArgs) -> Result<i32> {
    let s = load(a.data.as_deref())?;
    let models: Vec<BaselineKind> = if a.model.is_empty() {
        vec![
            BaselineKind::InverseWeibull,
            BaselineKind::Weibull,
            BaselineKind::Lomax,
            BaselineKind::InverseKumaraswamy,
        ]
    } else {
        a.model.iter().map(|&m| m.into()).collect()
    };
    let options = GofOptions {
        bootstrap: a.bootstrap,
        seed: a.seed,
        fit: FitOptions {
            seed: a.seed,
            ..FitOptions::default()
        },
    };
    let ranked = compare_models(&s, &models, &a.method.methods(), &options)?;

    let rows: Vec<Value> = ranked
        .iter()
        .map(|r| match &r.report {
            Some(rep) => json!({
                "rank": r.rank,
                "model": r.model,
                "method": r.method,
                "ks_stat": rep.ks_stat,
                "ad_stat": rep.ad_stat,
                "cvm_stat": rep.cvm_stat,
                "ks_p": rep.ks_p,
                "ad_p": rep.ad_p,
                "cvm_p": rep.cvm_p,
                "bootstrap_failures": rep.bootstrap_failures,
                "aicc": rep.aicc,
                "bicc": rep.bicc,
                "fit": fit_json(&rep.fit),
                "error": Value::Null,
            }),
            None => json!({
                "rank": r.rank,
                "model": r.model,
                "method": r.method,
                "error": r.error,
            }),
        })
        .collect();

    let fitted: Vec<(String, PgdusModel)> = ranked
        .iter()
        .filter_map(|r| {
            r.report
                .as_ref()
                .map(|rep| (format!("{}_{}", r.model, r.method.to_string().to_lowercase()), rep.fit.model))
        })
        .collect();
    let grid = plot_grid(&s, PLOT_POINTS);
    let models_only: Vec<PgdusModel> = fitted.iter().map(|(_, m)| *m).collect();
    let (cdfs, pdfs) = fitted_curves(&models_only, &grid);

    let prefix = plot_prefix(a);
    let cdf_path = with_suffix(&prefix, ".cdf.csv");
    let pdf_path = with_suffix(&prefix, ".pdf.csv");
    let mut cdf = csv::Writer::from_path(&cdf_path).map_err(|e| Error::Io(e.to_string()))?;
    let mut pdf = csv::Writer::from_path(&pdf_path).map_err(|e| Error::Io(e.to_string()))?;
    let names: Vec<&str> = fitted.iter().map(|(n, _)| n.as_str()).collect();
    let mut header = vec!["t", "ecdf"];
    header.extend(&names);
    cdf.write_record(&header).map_err(|e| Error::Io(e.to_string()))?;
    let mut header = vec!["t"];
    header.extend(&names);
    pdf.write_record(&header).map_err(|e| Error::Io(e.to_string()))?;
    for (i, &t) in grid.iter().enumerate() {
        let mut row = vec![fmt12(t), fmt12(ecdf(&s, t))];
        row.extend(cdfs.iter().map(|c| fmt12(c[i])));
        cdf.write_record(&row).map_err(|e| Error::Io(e.to_string()))?;
        let mut row = vec![fmt12(t)];
        row.extend(pdfs.iter().map(|c| fmt12(c[i])));
        pdf.write_record(&row).map_err(|e| Error::Io(e.to_string()))?;
    }
    cdf.flush()?;
    pdf.flush()?;

    let mut body = Map::new();
    body.insert("data".into(), data_json(a.data.as_deref(), &s));
    body.insert("seed".into(), json!(a.seed));
    body.insert("bootstrap".into(), json!(a.bootstrap));
    body.insert("ranking".into(), Value::Array(rows));
    body.insert(
        "plots".into(),
        json!({
            "cdf": cdf_path.display().to_string(),
            "pdf": pdf_path.display().to_string(),
            "points": PLOT_POINTS,
        }),
    );
    emit(a.out.as_deref(), &document("gof", body))?;
    let converged = ranked
        .iter()
        .all(|r| r.report.as_ref().is_some_and(|rep| rep.fit.converged));
    Ok(if converged { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

fn fmt12(x: f64) -> String {
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    r.to_string()
}

fn cmd_simulate(a: &SimulateArgs) -> Result<i32> {
    let spec = StudySpec {
        true_params: crate::dist::Params::new(a.lambda, a.theta, a.gamma)?,
        sample_sizes: a.sizes.clone(),
        replications: a.reps,
        methods: a.method.methods(),
        seed: a.seed,
    };
    let result = run_study(&spec)?;
    emit(a.out.as_deref(), &result.to_csv())?;
    Ok(EXIT_OK)
}

fn cmd_reliability(a: &ReliabilityArgs) -> Result<i32> {
    let spec = MultiComponentSpec::new(a.c, a.k)?;
    let mut body = Map::new();
    body.insert("c".into(), json!(a.c));
    body.insert("k".into(), json!(a.k));
    body.insert("seed".into(), json!(a.seed));
    let mut code = EXIT_OK;

    if let Some(stress_path) = &a.stress {
        if a.strength.is_empty() {
            return Err(Error::Parse("--stress requires at least one --strength file".into()));
        }
        let stress = Sample::from_csv_path(stress_path)?;
        let strength: Vec<Sample> = a
            .strength
            .iter()
            .map(Sample::from_csv_path)
            .collect::<Result<_>>()?;
        let data = if strength.len() == 1 && spec.k() == 1 {
            crate::reliability::TwoSample::new(strength[0].clone(), stress)
        } else {
            pool_components(&strength, &stress, spec)?
        };
        let options = FitOptions {
            seed: a.seed,
            ..FitOptions::default()
        };
        let mut estimates = Vec::new();
        for method in a.method.methods() {
            let fit = estimate(&data, spec, method, &options)?;
            if !fit.converged {
                code = EXIT_NOT_CONVERGED;
            }
            let mut entry = json!({
                "method": fit.method,
                "r": fit.r_hat,
                "params": fit.params,
                "objective": fit.objective,
                "converged": fit.converged,
                "iterations": fit.iterations,
            });
            if a.oracle {
                let mc = mc_oracle_r(&fit.params, Some(spec), a.draws, a.seed)?;
                entry["oracle"] = oracle_json(mc, fit.r_hat, a.draws);
            }
            estimates.push(entry);
        }
        body.insert("mode".into(), json!("estimate"));
        body.insert("n_strength".into(), json!(data.strength.len()));
        body.insert("n_stress".into(), json!(data.stress.len()));
        body.insert("estimates".into(), Value::Array(estimates));
    } else {
        let (g1, g2) = match (a.gamma1, a.gamma2) {
            (Some(g1), Some(g2)) => (g1, g2),
            _ => {
                return Err(Error::Parse(
                    "give --gamma1 and --gamma2, or --strength and --stress files".into(),
                ))
            }
        };
        let r = r_multi(spec, g1, g2)?;
        body.insert("mode".into(), json!("closed-form"));
        body.insert("gamma1".into(), json!(g1));
        body.insert("gamma2".into(), json!(g2));
        body.insert("r".into(), json!(r));
        if a.oracle {
            let p = StressStrengthParams::new(a.lambda, a.theta, g1, g2)?;
            let mc = mc_oracle_r(&p, Some(spec), a.draws, a.seed)?;
            body.insert("oracle".into(), oracle_json(mc, r, a.draws));
        }
    }
    emit(a.out.as_deref(), &document("reliability", body))?;
    Ok(code)
}

fn oracle_json(mc: f64, r: f64, draws: usize) -> Value {
    let se = (r * (1.0 - r) / draws as f64).sqrt();
    json!({
        "estimate": mc,
        "draws": draws,
        "std_error": se,
        "within_3se": (mc - r).abs() <= 3.0 * se,
    })
}

fn cmd_sample(a: &SampleArgs) -> Result<i32> {
    let model = PgdusModel::from_vec(a.model.into(), &a.params)?;
    let s = model.sample(a.n, a.seed)?;
    emit(a.out.as_deref(), &s.to_csv_string())?;
    Ok(EXIT_OK)
}
