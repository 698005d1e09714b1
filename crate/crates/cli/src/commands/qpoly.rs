//! Prints one radial building block `Q_k` with its exact facts: the
//! factored form, the cofactor past the center zero, and the center value.

use anyhow::{bail, Result};
use serde_json::json;

use peforge_core::exact::{rat, rat_i};
use peforge_core::pagepope::qpoly::r_minus_1_pow;
use peforge_core::pagepope::{q_factored_string, q_poly, q_tilde};

use crate::commands::Outcome;
use crate::config::{OutputFormat, RunConfig};
use crate::render::{all_passed, emit, json_body, push_checks, reject_csv, Check};

pub fn run(k: u32, cfg: &RunConfig) -> Result<Outcome> {
    reject_csv(cfg, "qpoly")?;
    if k == 0 {
        bail!("the building-block index starts at 1");
    }
    if k > 40 {
        bail!("index {k} is past the supported range (1..=40)");
    }

    let q = q_poly(k);
    let cofactor = q_tilde(k);
    let factored = q_factored_string(k);

    let divides = q.exact_div(&r_minus_1_pow(k + 1)).map(|d| d == cofactor);
    let vanishing = Check::new(
        format!("vanishing to order {} at the center", k + 1),
        divides.unwrap_or(false),
        "(r-1)^(k+1) does not divide Q_k",
    );

    let center_value = cofactor.eval(&rat_i(1))?;
    let expected = rat(1i64 << k.min(62), k as i64 + 1);
    let center = Check::new(
        "center value equals 2^k/(k+1)",
        center_value == expected,
        format!("got {center_value}, expected {expected}"),
    );

    let checks = [vanishing, center];
    let body = match cfg.output_format() {
        OutputFormat::Json => json_body(&json!({
            "command": "qpoly",
            "k": k,
            "factored": factored,
            "expanded": q.to_string(),
            "cofactor": cofactor.to_string(),
            "cofactor_at_one": center_value.to_string(),
            "checks": checks,
            "passed": all_passed(&checks),
        }))?,
        _ => {
            let mut out = String::new();
            out.push_str(&format!("Q_{k} = {factored}\n"));
            out.push_str(&format!("expanded: {q}\n"));
            out.push_str(&format!("cofactor Q_{k} / (r-1)^{}: {cofactor}\n", k + 1));
            out.push_str(&format!("value at the center: {center_value}\n"));
            push_checks(&mut out, &checks);
            out
        }
    };
    emit(cfg, &body)?;
    Ok(Outcome::from_passed(all_passed(&checks)))
}
