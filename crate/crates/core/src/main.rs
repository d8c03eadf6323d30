use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::Value;
use unifact::job::{run, JobSpec, EXIT_INPUT};

/// Certified unipotent factorizations over finite fields.
///
/// Payload flags take JSON text, a bare word (read as a JSON string, e.g. a
/// catalog group name), or `@path` to read the payload from a file.
#[derive(Parser, Debug)]
#[command(name = "unifact", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Certificate or report to check (`verify` only); also accepts `@path`.
    certificate: Option<String>,
    /// Field: prime power `q`, `GF(q)`, or `{"p":..,"k":..,"modulus":[..]}`.
    #[arg(long)]
    field: Option<String>,
    /// Group: catalog name, `{"table":..}` or `{"permutations":..}`.
    #[arg(long)]
    group: Option<String>,
    /// Cocycle: `trivial`, `{"values":..}` or `{"coboundary":[..]}`.
    #[arg(long)]
    cocycle: Option<String>,
    /// Algebra element: `{"coeffs":..}`, `{"basis":g}` or `{"commutator":[u,v]}`.
    #[arg(long)]
    element: Option<String>,
    /// Matrix: array of rows, or `{"rows","cols","entries"}`.
    #[arg(long)]
    matrix: Option<String>,
    /// Factorization method for `sl-factor`.
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Command {
    Radical,
    Wedderburn,
    Factor,
    IsDerived,
    CommutatorWitness,
    Nilfree,
    UnipotentRadical,
    Verify,
    SlFactor,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Auto,
    Transvection,
    Two,
    Three,
}

const ELEMENT_CAP_VAR: &str = "UNIFACT_ELEMENT_CAP";
const UNIT_CAP_VAR: &str = "UNIFACT_UNIT_CAP";

fn payload(raw: &str) -> Result<Value, String> {
    let text = match raw.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?,
        None => raw.to_string(),
    };
    let t = text.trim();
    if let Some(q) = t.strip_prefix("GF(").and_then(|s| s.strip_suffix(')')) {
        return serde_json::from_str(q).map_err(|e| format!("bad field `{t}`: {e}"));
    }
    match serde_json::from_str(t) {
        Ok(v) => Ok(v),
        Err(e) if raw.starts_with('@') || t.starts_with(['{', '[']) => Err(format!("malformed JSON: {e}")),
        Err(_) => Ok(Value::String(t.to_string())),
    }
}

fn env_cap(var: &str) -> Result<Option<u64>, String> {
    match std::env::var(var) {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| format!("{var} must be a non-negative integer")),
        Err(_) => Ok(None),
    }
}

fn build_job(cli: &Cli) -> Result<JobSpec, String> {
    let opt = |s: &Option<String>| s.as_deref().map(payload).transpose();
    let command = cli.command.to_possible_value().expect("no skipped variants").get_name().to_string();
    Ok(JobSpec {
        command,
        field: opt(&cli.field)?,
        group: opt(&cli.group)?,
        cocycle: opt(&cli.cocycle)?,
        element: opt(&cli.element)?,
        matrix: opt(&cli.matrix)?,
        certificate: opt(&cli.certificate)?,
        method: Some(cli.method.to_possible_value().expect("no skipped variants").get_name().to_string()),
        seed: cli.seed,
        element_cap: env_cap(ELEMENT_CAP_VAR)?,
        unit_cap: env_cap(UNIT_CAP_VAR)?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (status, report) = match build_job(&cli) {
        Ok(job) => {
            let o = run(&job);
            (o.status, o.report)
        }
        Err(msg) => (
            EXIT_INPUT,
            serde_json::json!({ "error": { "code": "SchemaError", "message": msg } }),
        ),
    };
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    print!("{text}");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("unifact: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    ExitCode::from(status as u8)
}
