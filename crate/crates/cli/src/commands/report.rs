//! Aggregates the whole pipeline into one report: structure polynomial
//! facts, the verification checks, origin and boundary expansions, and
//! both limits. The JSON form is validated against the shipped schema
//! before it is emitted, in every format, so the schema cannot drift.

use anyhow::{anyhow, Result};
use serde_json::json;

use peforge_core::asymptotics::{boundary_compactification, origin_smoothness};
use peforge_core::exact::QU;
use peforge_core::pagepope::{p_factored_string, p_poly, q_factored_string};

use crate::commands::{limit_inf, limit_zero, verify, Outcome};
use crate::config::{OutputFormat, RunConfig};
use crate::render::{all_passed, emit, json_body, push_checks, reject_csv, Check};
use crate::schema::validate_report;

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    reject_csv(cfg, "report")?;
    let (document, checks) = document(cfg)?;
    let passed = all_passed(&checks);

    let body = match cfg.output_format() {
        OutputFormat::Json => json_body(&document)?,
        _ => {
            let n = cfg.require_n()?;
            let mut out = format!(
                "report for n = {}, c = {}\n",
                n,
                document["params"]["c"].as_str().unwrap_or("?")
            );
            out.push_str(&format!("Q_{n} = {}\n", document["structure"]["q_factored"].as_str().unwrap_or("")));
            out.push_str(&format!("P_{n} = {}\n", document["structure"]["p_factored"].as_str().unwrap_or("")));
            push_checks(&mut out, &checks);
            out.push_str(if passed { "report: PASS\n" } else { "report: FAIL\n" });
            out
        }
    };
    emit(cfg, &body)?;
    Ok(Outcome::from_passed(passed))
}

/// Builds the full schema-validated report document with its checks.
pub fn document(cfg: &RunConfig) -> Result<(serde_json::Value, Vec<Check>)> {
    let n = cfg.require_n()?;
    let order = cfg.order();

    let (mut checks, verify_payload) = verify::collect(cfg)?;

    let origin = origin_smoothness(n, order)?;
    checks.push(Check::new(
        "origin expansion is even with the flat constants",
        origin.passed(),
        "an origin series constant or parity is off",
    ));
    let boundary = boundary_compactification(n, order)?;
    checks.push(Check::new(
        "boundary expansion has the squashed-sphere limits",
        boundary.passed(),
        "a boundary limit or the fiber-base ratio is off",
    ));

    let inf = limit_inf::summarize(cfg)?;
    checks.extend(inf.checks.iter().cloned());
    let zero = limit_zero::summarize(cfg)?;
    checks.extend(zero.checks.iter().cloned());

    let passed = all_passed(&checks);
    let document = json!({
        "command": "report",
        "params": {
            "n": n,
            "c": verify_payload["c"],
            "chart": cfg.chart()?.to_string(),
            "order": order,
            "precision": cfg.precision(),
        },
        "structure": {
            "q_factored": q_factored_string(n),
            "p_factored": p_factored_string(n),
            "p_expanded": p_poly::<QU>(n, &QU::var_elem()).to_string(),
        },
        "origin": origin,
        "boundary": boundary,
        "limit_infinity": inf.payload,
        "limit_zero": zero.payload,
        "checks": checks,
        "passed": passed,
    });
    validate_report(&document)
        .map_err(|e| anyhow!("the report does not match its schema: {e}"))?;
    Ok((document, checks))
}
