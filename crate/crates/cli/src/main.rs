mod complex;
mod funcs;
mod params;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use qmu::idsuite::{register_all, Expect, RunConfig};
use qmu::qcore::{EvalResult, QError, Truncation};

use complex::{format_complex, format_real, parse_complex};
use params::Params;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Q(QError),
    Io(String),
    /// The identity suite ran but some case did not behave as expected.
    VerifyFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Q(QError::PoleHit(_) | QError::Domain(_)) => 3,
            CliError::Q(QError::Divergent(_) | QError::BudgetExceeded(_)) => 4,
            CliError::Q(QError::UnknownIdentity(_) | QError::DuplicateName(_)) => 2,
            CliError::VerifyFailed => 5,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Io(m) => write!(f, "{m}"),
            CliError::Q(e) => write!(f, "{e}"),
            CliError::VerifyFailed => write!(f, "some identities did not behave as expected"),
        }
    }
}

#[derive(Parser)]
#[command(name = "qmu", version, about = "Generalized Appell-Lerch mu-function and q-series special functions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one function at a point: `qmu eval mu_alpha --u 0.2 --v -0.1 --alpha 0.5 --tau 0.9i`.
    ///
    /// Parameters are `--name value` pairs (complex literals like 0.2-0.05i);
    /// `--tol` sets the series tolerance and `--json` switches the output format.
    /// `qmu eval list` prints every function with its parameters.
    Eval {
        function: String,
        #[arg(allow_hyphen_values = true, trailing_var_arg = true, num_args = 0.., value_name = "PARAMS")]
        params: Vec<String>,
    },
    /// Check the identity suite at random admissible points.
    Verify {
        /// "all", a suite name such as "hermite", or a case name; comma-separated.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Replaces every case's tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Write the full JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// List the registered cases instead of running them.
        #[arg(long)]
        list: bool,
    },
    /// Tabulate a function over one swept parameter (`--n 0..10` or `--q 0.1:0.5:0.05`).
    ///
    /// Rows are `param,re,im,err`; `--format json` emits a JSON array instead of CSV.
    Table {
        function: String,
        #[arg(allow_hyphen_values = true, trailing_var_arg = true, num_args = 0.., value_name = "PARAMS")]
        params: Vec<String>,
    },
}

fn max_terms_override() -> Result<Option<usize>, CliError> {
    match std::env::var("QMU_MAX_TERMS") {
        Err(_) => Ok(None),
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| CliError::Parse(format!("QMU_MAX_TERMS must be a positive integer, got {s:?}"))),
    }
}

fn truncation(tol: Option<&str>) -> Result<Truncation, CliError> {
    let mut tr = Truncation::default();
    if let Some(s) = tol {
        let t: f64 = s.parse().map_err(|_| CliError::Parse(format!("--tol: expected a number, got {s:?}")))?;
        tr = Truncation::new(t, tr.max_terms, tr.settle_count).map_err(|e| CliError::Parse(format!("--tol: {e}")))?;
    }
    if let Some(n) = max_terms_override()? {
        tr = tr.with_max_terms(n);
    }
    Ok(tr)
}

fn input_json(v: &str) -> serde_json::Value {
    if let Ok(z) = parse_complex(v) {
        return json!({ "re": z.re, "im": z.im });
    }
    if v.contains(',') {
        if let Ok(zs) = v.split(',').map(parse_complex).collect::<Result<Vec<_>, _>>() {
            return zs.iter().map(|z| json!({ "re": z.re, "im": z.im })).collect();
        }
    }
    json!(v)
}

fn eval(function: &str, args: &[String]) -> Result<String, CliError> {
    if function == "list" {
        let mut out = String::new();
        for f in funcs::FUNCTIONS {
            let keys: Vec<String> = f.keys.iter().map(|k| format!("--{k}")).collect();
            out.push_str(&format!("{:<12} {:<44} {}\n", f.name, keys.join(" "), f.about));
        }
        return Ok(out);
    }
    let mut p = Params::parse(args)?;
    let tr = truncation(p.take("tol").as_deref())?;
    let r: EvalResult = funcs::evaluate(function, &p, &tr)?;
    if p.switch("json") {
        let inputs: serde_json::Map<String, serde_json::Value> =
            p.entries().map(|(k, v)| (k.to_string(), input_json(v))).collect();
        let doc = json!({
            "function": function,
            "inputs": inputs,
            "value": { "re": r.value.re, "im": r.value.im },
            "err": r.err_estimate,
            "terms": r.terms_used,
        });
        Ok(serde_json::to_string(&doc).expect("eval output serializes") + "\n")
    } else {
        Ok(format!(
            "value         {}\nerr_estimate  {}\nterms_used    {}\n",
            format_complex(r.value),
            format_real(r.err_estimate),
            r.terms_used
        ))
    }
}

fn tabulate(function: &str, args: &[String]) -> Result<String, CliError> {
    let mut p = Params::parse(args)?;
    let tr = truncation(p.take("tol").as_deref())?;
    let json = match p.take("format").as_deref() {
        None | Some("csv") => false,
        Some("json") => true,
        Some(f) => return Err(CliError::Parse(format!("--format: expected csv or json, got {f:?}"))),
    };
    let sweep = table::split_sweep(&mut p)?;
    funcs::lookup(function)?;
    let rows = sweep
        .values
        .iter()
        .map(|v| {
            let r = funcs::evaluate(function, &p.with(&sweep.key, v.clone()), &tr)?;
            Ok(table::Row { param: v.clone(), re: r.value.re, im: r.value.im, err: r.err_estimate })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(if json { table::json(&rows) } else { table::csv(&rows) })
}

fn verify(
    suite: &str,
    samples: usize,
    seed: u64,
    tol: Option<f64>,
    report: Option<&PathBuf>,
    list: bool,
) -> Result<String, CliError> {
    let reg = register_all()?;
    if list {
        let mut out = String::new();
        for c in reg.select("all")? {
            let tag = if c.expected == Expect::Fail { "expected-fail" } else { "" };
            out.push_str(&format!("{:<44} {:<13} tol {:<6e} {}\n", c.name, tag, c.tol, c.anchor));
        }
        return Ok(out);
    }
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(CliError::Parse(format!("--tol must be positive, got {t}")));
        }
    }
    if samples == 0 {
        return Err(CliError::Parse("--samples must be at least 1".into()));
    }
    let mut cfg = RunConfig::new(samples, seed);
    cfg.tol_override = tol;
    if let Some(n) = max_terms_override()? {
        cfg.trunc = cfg.trunc.with_max_terms(n);
    }
    let names: Vec<&str> = suite.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let rep = reg.run(&names, &cfg)?;
    if let Some(path) = report {
        let text = serde_json::to_string_pretty(&rep).expect("report serializes") + "\n";
        std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut out = String::new();
    for c in &rep.cases {
        let status = if c.ok { "PASS" } else { "FAIL" };
        let mut note = match (c.expected, c.pass) {
            (Expect::Fail, false) => "  (fails as expected)".to_string(),
            (Expect::Fail, true) => "  (expected to fail, but passed)".to_string(),
            _ => String::new(),
        };
        if let Some(e) = &c.error {
            note.push_str(&format!("  error: {e}"));
        }
        out.push_str(&format!(
            "{status}  {:<44} max_rel {:<9.2e} tol {:.0e}  rejected {}{note}\n",
            c.name, c.max_rel_residual, c.tol, c.rejected
        ));
    }
    let ok = rep.cases.iter().filter(|c| c.ok).count();
    out.push_str(&format!("{ok} of {} cases as expected\n", rep.cases.len()));
    print!("{out}");
    if rep.all_ok() {
        Ok(String::new())
    } else {
        Err(CliError::VerifyFailed)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Eval { function, params } => eval(function, params),
        Cmd::Table { function, params } => tabulate(function, params),
        Cmd::Verify { suite, samples, seed, tol, report, list } => {
            verify(suite, *samples, *seed, *tol, report.as_ref(), *list)
        }
    };
    match res {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("qmu: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
