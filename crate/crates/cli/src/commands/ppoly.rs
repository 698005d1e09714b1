//! Prints the structure polynomial `P_n` over the parameter field with
//! its defining identities: the first-order equation it solves, the
//! hyperbolic specialization, and its shape.

use anyhow::{bail, Result};
use serde_json::json;

use peforge_core::exact::{CoeffField, Rat, QU};
use peforge_core::pagepope::qpoly::r2_minus_1_pow;
use peforge_core::pagepope::{p_factored_string, p_ode_residual, p_poly};

use crate::commands::Outcome;
use crate::config::{OutputFormat, RunConfig};
use crate::render::{all_passed, emit, json_body, push_checks, reject_csv, Check};

pub fn run(n: u32, cfg: &RunConfig) -> Result<Outcome> {
    reject_csv(cfg, "ppoly")?;
    if n < 2 {
        bail!("the family needs n at least 2 (real dimension 2n at least 4), got {n}");
    }
    if n > 40 {
        bail!("dimension parameter {n} is past the supported range (2..=40)");
    }

    let u = QU::var_elem();
    let p = p_poly::<QU>(n, &u);
    let factored = p_factored_string(n);

    let ode = Check::new(
        "first-order equation rP' - P = 2nu(r^2-1)^(n-1) + (2n-1)(r^2-1)^n",
        p_ode_residual::<QU>(n, &u)?.is_zero(),
        "the residual is not identically zero",
    );

    let hyperbolic = {
        let at_one = p_poly::<Rat>(n, &CoeffField::one());
        Check::new(
            "value at u = 1 is (r^2-1)^n",
            at_one == r2_minus_1_pow(n),
            "the hyperbolic member is off",
        )
    };

    let shape = {
        let monic = p.leading_coeff().map(CoeffField::is_one).unwrap_or(false);
        let at_center = p.eval(&QU::one()).map(|v| CoeffField::is_zero(&v)).unwrap_or(false);
        Check::new(
            format!("monic of degree {} with a root at r = 1", 2 * n),
            p.degree() == Some(2 * n as i64) && monic && at_center,
            "degree, leading coefficient, or center root is off",
        )
    };

    let checks = [ode, hyperbolic, shape];
    let body = match cfg.output_format() {
        OutputFormat::Json => json_body(&json!({
            "command": "ppoly",
            "n": n,
            "factored": factored,
            "expanded": p.to_string(),
            "checks": checks,
            "passed": all_passed(&checks),
        }))?,
        _ => {
            let mut out = String::new();
            out.push_str(&format!("P_{n} = {factored}\n"));
            out.push_str(&format!("expanded: {p}\n"));
            push_checks(&mut out, &checks);
            out
        }
    };
    emit(cfg, &body)?;
    Ok(Outcome::from_passed(all_passed(&checks)))
}
