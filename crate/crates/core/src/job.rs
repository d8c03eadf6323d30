//! One operation described as JSON, run to a JSON report and exit status.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::radical;
use crate::certificate::*;
use crate::error::{Error, Result};
use crate::gafact::{derived_membership, factor_three_unipotents, index2_commutator_semisimple, Structure};
use crate::json::*;
use crate::nilfree::nilfree_check;
use crate::slfact::{
    commutator_witness_index2, three_unipotent_factorization, transvection_factorization, two_unipotent_factorization,
};
use crate::unitrad::{unipotent_radical_check, Caps};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_REFUSAL: i32 = 2;

pub const COMMANDS: [&str; 9] = [
    "radical",
    "wedderburn",
    "factor",
    "is-derived",
    "commutator-witness",
    "nilfree",
    "unipotent-radical",
    "verify",
    "sl-factor",
];

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: String,
    #[serde(default)]
    pub field: Option<Value>,
    #[serde(default)]
    pub group: Option<Value>,
    #[serde(default)]
    pub cocycle: Option<Value>,
    #[serde(default)]
    pub element: Option<Value>,
    #[serde(default)]
    pub matrix: Option<Value>,
    #[serde(default)]
    pub certificate: Option<Value>,
    /// `sl-factor` only: `auto` (default), `transvection`, `two` or `three`.
    #[serde(default)]
    pub method: Option<String>,
    #[serde(default)]
    pub seed: u64,
    /// Overrides for enumeration limits (`unipotent-radical`).
    #[serde(default)]
    pub element_cap: Option<u64>,
    #[serde(default)]
    pub unit_cap: Option<u64>,
}

impl JobSpec {
    pub fn from_json(v: &Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Schema(e.to_string()))
    }

    fn need<'a>(&self, v: &'a Option<Value>, name: &str) -> Result<&'a Value> {
        v.as_ref()
            .ok_or_else(|| Error::Schema(format!("`{}` requires --{name}", self.command)))
    }

    fn algebra_input(&self) -> Result<AlgebraInput> {
        let mut obj = serde_json::Map::new();
        obj.insert("field".into(), self.need(&self.field, "field")?.clone());
        obj.insert("group".into(), self.need(&self.group, "group")?.clone());
        obj.insert("cocycle".into(), self.cocycle.clone().unwrap_or(Value::Null));
        AlgebraInput::from_json(&Value::Object(obj))
    }

    fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps { elements: self.element_cap.unwrap_or(d.elements), units: self.unit_cap.unwrap_or(d.units) }
    }
}

/// Outcome of [`run`]: exit status and the report printed by the CLI.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: i32,
    pub report: Value,
}

/// Run a job. Never panics on bad input; every failure becomes a report
/// with an `error` object carrying a machine-readable code.
pub fn run(job: &JobSpec) -> Outcome {
    match execute(job) {
        Ok((report, refused)) => Outcome { status: if refused { EXIT_REFUSAL } else { EXIT_OK }, report },
        Err(e) => Outcome {
            status: if e.is_refusal() { EXIT_REFUSAL } else { EXIT_INPUT },
            report: json!({
                "command": job.command,
                "error": { "code": e.code(), "message": e.to_string() },
            }),
        },
    }
}

/// Like [`run`], from a JSON job description.
pub fn run_json(v: &Value) -> Outcome {
    match JobSpec::from_json(v) {
        Ok(job) => run(&job),
        Err(e) => Outcome {
            status: EXIT_INPUT,
            report: json!({ "command": v.get("command"), "error": { "code": e.code(), "message": e.to_string() } }),
        },
    }
}

fn report(job: &JobSpec, input: Value, certificate: Value, result: Value) -> Value {
    json!({
        "command": job.command,
        "seed": job.seed,
        "input": input,
        "certificate": certificate,
        "result": result,
    })
}

fn algebra_echo(i: &AlgebraInput) -> Value {
    json!({
        "field": field_to_json(&i.field),
        "group": group_to_json(&i.group),
        "cocycle": cocycle_to_json(&i.cocycle),
    })
}

fn execute(job: &JobSpec) -> Result<(Value, bool)> {
    match job.command.as_str() {
        "radical" => {
            let i = job.algebra_input()?;
            let rad = radical(&i.algebra)?;
            let result = json!({
                "dim": rad.dim(),
                "nilpotency_index": rad.nilpotency_index(),
                "quotient_dim": i.algebra.dim() - rad.dim(),
            });
            Ok((report(job, algebra_echo(&i), radical_certificate(&i, &rad), result), false))
        }
        "wedderburn" => {
            let i = job.algebra_input()?;
            let s = Structure::new(i.algebra.clone(), job.seed)?;
            let comps: Vec<Value> = s
                .wedderburn()
                .components()
                .iter()
                .map(|c| json!({ "size": c.size(), "field_order": c.field().order(), "degree_over_base": c.degree_over_base() }))
                .collect();
            let result = json!({ "radical_dim": s.radical().dim(), "components": comps });
            Ok((report(job, algebra_echo(&i), wedderburn_certificate(&i, &s), result), false))
        }
        "factor" | "is-derived" => {
            let i = job.algebra_input()?;
            let alpha = element_from_json(&i.algebra, job.need(&job.element, "element")?)?;
            let mut echo = algebra_echo(&i);
            echo["element"] = element_to_json(&i.algebra, &alpha);
            let s = Structure::new(i.algebra.clone(), job.seed)?;
            if job.command == "factor" {
                let fac = factor_three_unipotents(&s, &alpha)?;
                let result = json!({ "factor_count": fac.factors(&i.algebra).len() });
                Ok((report(job, echo, factor_certificate(&i, &s, &fac), result), false))
            } else {
                let d = derived_membership(&s, &alpha)?;
                let result = json!({ "verdict": d.verdict });
                Ok((report(job, echo, derived_certificate(&i, &s, &alpha, &d)?, result), !d.verdict))
            }
        }
        "commutator-witness" => {
            if let Some(m) = &job.matrix {
                let f = field_from_json(job.need(&job.field, "field")?)?;
                let a = matrix_from_json(&f, m)?;
                let w = commutator_witness_index2(&a)?;
                let echo = json!({ "field": field_to_json(&f), "matrix": matrix_to_json(&a) });
                Ok((report(job, echo, matrix_commutator_certificate(&w)?, json!({ "verified": w.verify() })), false))
            } else {
                let i = job.algebra_input()?;
                let u = element_from_json(&i.algebra, job.need(&job.element, "element or --matrix")?)?;
                let mut echo = algebra_echo(&i);
                echo["element"] = element_to_json(&i.algebra, &u);
                let s = Structure::new(i.algebra.clone(), job.seed)?;
                let w = index2_commutator_semisimple(&s, &u)?;
                let cert = algebra_commutator_certificate(&i, &w)?;
                Ok((report(job, echo, cert, json!({ "verified": w.verify(&i.algebra) })), false))
            }
        }
        "nilfree" => {
            let i = job.algebra_input()?;
            let r = nilfree_check(&i.field, &i.group, &i.cocycle, job.seed)?;
            let result = json!({ "verdict": r.verdict });
            Ok((report(job, algebra_echo(&i), nilfree_certificate(&i, job.seed, &r), result), false))
        }
        "unipotent-radical" => {
            let i = job.algebra_input()?;
            let rad = radical(&i.algebra)?;
            let r = unipotent_radical_check(&i.algebra, &rad, job.caps())?;
            let result = json!({
                "unit_group_order": r.unit_group_order,
                "one_plus_J_order": r.one_plus_j_order,
                "verdict": r.verdict,
            });
            Ok((report(job, algebra_echo(&i), unipotent_radical_certificate(&i, &rad, &r), result), !r.verdict))
        }
        "sl-factor" => {
            let f = field_from_json(job.need(&job.field, "field")?)?;
            let a = matrix_from_json(&f, job.need(&job.matrix, "matrix")?)?;
            let method = job.method.as_deref().unwrap_or("auto");
            let (used, fac) = match method {
                "transvection" => ("transvection", transvection_factorization(&a)?),
                "two" => ("two", two_unipotent_factorization(&a)?),
                "three" => ("three", three_unipotent_factorization(&a)?),
                "auto" => match two_unipotent_factorization(&a) {
                    Err(Error::CentralNonIdentity) => ("three", three_unipotent_factorization(&a)?),
                    r => ("two", r?),
                },
                other => return Err(Error::Schema(format!("unknown method `{other}`"))),
            };
            let echo = json!({ "field": field_to_json(&f), "matrix": matrix_to_json(&a), "method": method });
            let result = json!({ "method": used, "factor_count": fac.len() });
            Ok((report(job, echo, sl_factorization_certificate(used, &fac), result), false))
        }
        "verify" => {
            let cert = job.need(&job.certificate, "certificate")?;
            verify(cert)?;
            let kind = cert.get("certificate").unwrap_or(cert).get("kind").cloned().unwrap_or(Value::Null);
            let out = json!({ "command": "verify", "kind": kind, "result": { "valid": true } });
            Ok((out, false))
        }
        other => Err(Error::Schema(format!("unknown command `{other}`; expected one of {}", COMMANDS.join(", ")))),
    }
}
