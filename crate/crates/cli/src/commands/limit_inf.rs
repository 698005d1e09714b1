//! Large-parameter limit: the exact complex-hyperbolic normalization
//! identities and the sup-norm tables measuring one extra decimal of decay
//! per decade of the parameter.

use anyhow::Result;
use serde_json::json;

use peforge_core::asymptotics::{
    convergence_table_infinity, extract_p_leading, hyperbolic_identity, normalization_identity,
    pedersen_identity, uniform_grid, ConvergenceTable,
};

use crate::commands::Outcome;
use crate::config::{decades_up, OutputFormat, RunConfig};
use crate::render::{
    all_passed, emit, json_body, push_checks, ratio_lines, table_text, Check,
};

/// The disk window for the sup norms, safely inside the boundary.
const RHO_WINDOW: (f64, f64) = (0.1, 0.9);
/// Deviation derivative orders sampled by the tables.
const MAX_DERIVATIVE: u32 = 2;

pub struct Summary {
    pub checks: Vec<Check>,
    pub tables: Vec<ConvergenceTable>,
    pub payload: serde_json::Value,
    pub text_body: String,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let summary = summarize(cfg)?;
    let passed = all_passed(&summary.checks);
    let body = match cfg.output_format() {
        OutputFormat::Json => json_body(&json!({
            "command": "limit-inf",
            "limit_infinity": summary.payload,
            "checks": summary.checks,
            "passed": passed,
        }))?,
        OutputFormat::Csv => summary.tables[0].to_csv(),
        OutputFormat::Text => {
            let mut out = summary.text_body;
            out.push_str(if passed { "limit-inf: PASS\n" } else { "limit-inf: FAIL\n" });
            out
        }
    };
    emit(cfg, &body)?;
    Ok(Outcome::from_passed(passed))
}

/// Builds the identity checks, tables, JSON payload, and text body shared
/// by `limit-inf` and the aggregate report.
pub fn summarize(cfg: &RunConfig) -> Result<Summary> {
    let n = cfg.require_n()?;
    let c_list = cfg.c_values_or(decades_up)?;
    let grid = uniform_grid(RHO_WINDOW.0, RHO_WINDOW.1, cfg.grid_points())?;

    let p_leading = extract_p_leading(n)?;
    let normalization = normalization_identity(n)?;
    let hyperbolic = hyperbolic_identity(n)?;
    let pedersen = if n == 2 { Some(pedersen_identity()?) } else { None };
    let tables = convergence_table_infinity(n, &grid, &c_list, MAX_DERIVATIVE)?;
    let monotone = tables.iter().all(ConvergenceTable::strictly_decreasing);

    let mut checks = vec![
        Check::new(
            "leading parameter slice of the structure polynomial",
            p_leading.passed(),
            "the top slice in the disk chart is off",
        ),
        Check::new(
            format!("g_inf = ({}) g_CH{}", normalization.scale, n),
            normalization.passed(),
            "the normalized pullback identity fails",
        ),
        Check::new(
            "hyperbolic member at parameter 1",
            hyperbolic.passed(),
            "the parameter-one profile is not hyperbolic",
        ),
    ];
    if let Some(report) = &pedersen {
        checks.push(Check::new(
            "four-dimensional family identities",
            report.passed(),
            "the squashed four-ball member is off",
        ));
    }
    checks.push(Check::new(
        "sup-norm decay across the parameter ladder",
        monotone,
        "a deviation column fails to shrink",
    ));

    let payload = json!({
        "p_leading": p_leading,
        "normalization": normalization,
        "hyperbolic": hyperbolic,
        "pedersen": pedersen,
        "tables": tables,
        "monotone": monotone,
    });

    let mut text = format!(
        "params: n = {}, grid {} points on [{}, {}], c-list {}\n",
        n,
        cfg.grid_points(),
        RHO_WINDOW.0,
        RHO_WINDOW.1,
        c_list.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "),
    );
    push_checks(&mut text, &checks[..checks.len() - 1]);
    text.push_str("deviation sup-norm tables in the disk chart:\n");
    for table in &tables {
        text.push_str(&table_text(table, "  "));
    }
    text.push_str("decay ratios between consecutive rows (plain deviation):\n");
    text.push_str(&ratio_lines(&tables[0], "  "));
    push_checks(&mut text, &checks[checks.len() - 1..]);

    Ok(Summary { checks, tables, payload, text_body: text })
}
