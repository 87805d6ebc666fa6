//! Scenario-driven commands behind the `ndalg` binary.
//!
//! Commands return an [`Outcome`] (exit code plus captured output) so they
//! can be driven from tests and from the C interface without a process.

mod format;
mod scenario;

use std::path::Path;

use serde_json::{json, Value};

pub use format::{sig17, sig17_json};
pub use scenario::{ExportFormat, ExportSpec, ProtocolSpec, Scenario};

use crate::ndalgebra::{Decision, GeneralizedFunction};
use crate::ode::{certify_generalized_solution, jump_magnitude, OdeError};
use crate::sampling::linear_grid;
use crate::smoothfn::make_rho;
use crate::symmetry::{compose_descriptors, ActionDescriptor};

pub const EXIT_CERTIFIED: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_MALFORMED: i32 = 64;
pub const EXIT_NOT_A_SOLUTION: i32 = 65;
pub const EXIT_IO: i32 = 74;

/// Environment variable overriding `protocol.index_cap`.
pub const INDEX_CAP_ENV: &str = "NDALG_INDEX_CAP";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("malformed scenario at `{field}`: {message}")]
    Malformed { field: String, message: String },
    #[error(transparent)]
    NotASolution(#[from] OdeError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub(crate) fn malformed(field: &str, message: &str) -> Self {
        CliError::Malformed { field: field.to_string(), message: message.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed { .. } => EXIT_MALFORMED,
            CliError::NotASolution(_) => EXIT_NOT_A_SOLUTION,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn from_error(e: &CliError) -> Self {
        let stdout = match e {
            CliError::NotASolution(OdeError::NotASolution { x, derivative, rhs }) => {
                let v = json!({
                    "error": "not_a_solution",
                    "counterexample": {"x": x, "derivative": derivative, "rhs": rhs},
                });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
            }
            _ => String::new(),
        };
        Outcome { code: e.exit_code(), stdout, stderr: format!("error: {e}\n") }
    }
}

pub fn exit_code_for(decision: Decision) -> i32 {
    match decision {
        Decision::Certified => EXIT_CERTIFIED,
        Decision::Refuted => EXIT_REFUTED,
        Decision::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// Reads [`INDEX_CAP_ENV`]; an unparsable value is a malformed-input error.
pub fn index_cap_from_env() -> Result<Option<u32>, CliError> {
    match std::env::var(INDEX_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::malformed(INDEX_CAP_ENV, &format!("expected a non-negative integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn read_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    Scenario::parse(&text)
}

/// `embed(U)` followed by the action chain, left to right.
pub fn build_generalized(scenario: &Scenario) -> GeneralizedFunction {
    scenario
        .actions
        .iter()
        .fold(GeneralizedFunction::embed(scenario.solution.clone()), |w, a| a.apply(&w))
}

/// Full verification report for a parsed scenario, and the decision.
pub fn verify_scenario(scenario: &Scenario, index_cap_override: Option<u32>) -> Result<(Value, Decision), CliError> {
    scenario.equation.classical_solution(&scenario.solution)?;
    let protocol = scenario.resolve_protocol(index_cap_override)?;
    let witness = scenario.witness();
    let w = build_generalized(scenario);
    let report = certify_generalized_solution(&w, &scenario.equation, &witness, &protocol);

    let probes: Vec<Value> = witness
        .gamma()
        .iter()
        .map(|&a| match jump_magnitude(&w, a, &protocol) {
            Ok(j) => json!({"a": a, "jump": j}),
            Err(e) => json!({"a": a, "error": e.to_string()}),
        })
        .collect();

    let value = json!({
        "equation": scenario.equation,
        "solution": scenario.solution,
        "action_chain": scenario.actions,
        "witness": witness,
        "protocol": protocol,
        "decision": report.decision,
        "check": report,
        "probes": probes,
    });
    Ok((value, report.decision))
}

pub fn cmd_verify(path: &Path, index_cap_override: Option<u32>) -> Outcome {
    let run = || -> Result<Outcome, CliError> {
        let scenario = read_scenario(path)?;
        let (report, decision) = verify_scenario(&scenario, index_cap_override)?;
        Ok(Outcome {
            code: exit_code_for(decision),
            stdout: format!("{}\n", serde_json::to_string_pretty(&report).expect("json")),
            stderr: String::new(),
        })
    };
    run().unwrap_or_else(|e| Outcome::from_error(&e))
}

/// Rows `(ν, x, value)` in output order: `ν` ascending, then `x` ascending.
pub fn export_rows(scenario: &Scenario) -> Result<Vec<(u32, f64, f64)>, CliError> {
    let export = scenario
        .export
        .as_ref()
        .ok_or_else(|| CliError::malformed("export", "scenario has no export block"))?;
    let mut indices = export.indices.clone();
    indices.sort_unstable();
    indices.dedup();
    let (lo, hi, count) = export.grid;
    let xs = linear_grid(lo, hi, count);
    let w = build_generalized(scenario);
    let mut rows = Vec::with_capacity(indices.len() * xs.len());
    for nu in indices {
        let term = w.representative(nu);
        rows.extend(xs.iter().map(|&x| (nu, x, term.eval(x))));
    }
    Ok(rows)
}

pub fn render_export(format: ExportFormat, rows: &[(u32, f64, f64)]) -> String {
    let mut out = String::new();
    match format {
        ExportFormat::Csv => {
            out.push_str("nu,x,value\n");
            for (nu, x, v) in rows {
                out.push_str(&format!("{nu},{},{}\n", sig17(*x), sig17(*v)));
            }
        }
        ExportFormat::Json => {
            out.push_str("{\"rows\":[");
            for (i, (nu, x, v)) in rows.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&format!("\n{{\"nu\":{nu},\"value\":{},\"x\":{}}}", sig17_json(*v), sig17_json(*x)));
            }
            out.push_str("\n]}\n");
        }
    }
    out
}

pub fn cmd_export(path: &Path, out: &Path) -> Outcome {
    let run = || -> Result<Outcome, CliError> {
        let scenario = read_scenario(path)?;
        let rows = export_rows(&scenario)?;
        let format = scenario.export.as_ref().map(|e| e.format).expect("checked by export_rows");
        std::fs::write(out, render_export(format, &rows))
            .map_err(|source| CliError::Io { path: out.display().to_string(), source })?;
        Ok(Outcome {
            code: 0,
            stdout: String::new(),
            stderr: format!("wrote {} rows to {}\n", rows.len(), out.display()),
        })
    };
    run().unwrap_or_else(|e| Outcome::from_error(&e))
}

/// Compose descriptors given as JSON strings. Each argument may be one
/// descriptor or an array of them.
pub fn cmd_compose<S: AsRef<str>>(args: &[S]) -> Outcome {
    let mut chain = Vec::new();
    for (i, arg) in args.iter().enumerate() {
        let parsed: Result<Vec<ActionDescriptor>, _> = match serde_json::from_str::<Value>(arg.as_ref()) {
            Ok(Value::Array(items)) => items.into_iter().map(serde_json::from_value).collect(),
            Ok(v) => serde_json::from_value(v).map(|d| vec![d]),
            Err(e) => Err(e),
        };
        match parsed {
            Ok(ds) => chain.extend(ds),
            Err(e) => return Outcome::from_error(&CliError::malformed(&format!("argument {}", i + 1), &e.to_string())),
        }
    }
    if chain.is_empty() {
        return Outcome::from_error(&CliError::malformed("arguments", "expected at least one action descriptor"));
    }
    let composed = compose_descriptors(&chain);
    let value = if composed.len() == 1 {
        serde_json::to_value(&composed[0])
    } else {
        serde_json::to_value(&composed)
    }
    .expect("json");
    Outcome::ok(format!("{value}\n"))
}

/// Samples of ρ on `n` evenly spaced points of `[lo, hi]`.
pub fn cmd_rho_table(lo: f64, hi: f64, n: usize) -> Outcome {
    if n < 2 || !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Outcome::from_error(&CliError::malformed("--grid", "needs finite lo < hi and n >= 2"));
    }
    let rho = make_rho();
    let mut out = String::from("x,rho\n");
    for x in linear_grid(lo, hi, n) {
        out.push_str(&format!("{},{}\n", sig17(x), sig17(rho.eval(x))));
    }
    Outcome::ok(out)
}
