//! Collapse limit: the exact decomposition of the rescaled structure
//! polynomial, the limiting metric on the rescaled window, certified
//! fiber bounds, and sup-norm tables shrinking like the square root of
//! the parameter.

use anyhow::Result;
use serde_json::json;

use peforge_core::asymptotics::{
    collapse_decomposition, convergence_table_zero, fiber_bound_certificates,
    profile_collapse_limit_matches, ConvergenceTable, LimitConstants,
};

use crate::commands::Outcome;
use crate::config::{decades_down, OutputFormat, RunConfig};
use crate::render::{
    all_passed, emit, json_body, push_checks, ratio_lines, table_text, Check,
};

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
            "command": "limit-zero",
            "limit_zero": summary.payload,
            "checks": summary.checks,
            "passed": passed,
        }))?,
        OutputFormat::Csv => summary.tables[0].to_csv(),
        OutputFormat::Text => {
            let mut out = summary.text_body;
            out.push_str(if passed { "limit-zero: PASS\n" } else { "limit-zero: FAIL\n" });
            out
        }
    };
    emit(cfg, &body)?;
    Ok(Outcome::from_passed(passed))
}

/// Builds the collapse checks, tables, JSON payload, and text body shared
/// by `limit-zero` and the aggregate report.
pub fn summarize(cfg: &RunConfig) -> Result<Summary> {
    let n = cfg.require_n()?;
    let r1 = cfg.r1.unwrap_or(0.5);
    let r2 = cfg.r2.unwrap_or(2.0);
    let r_max = cfg.r_max.unwrap_or(5.0);
    let c_list = cfg.c_values_or(decades_down)?;
    let b_n = LimitConstants::new(n)?.b_n;

    let decomposition = collapse_decomposition(n)?;
    let (limit_matches, orders_match) = profile_collapse_limit_matches(n)?;
    let bounds = fiber_bound_certificates(n)?;
    let tables =
        convergence_table_zero(n, r1, r2, r_max, cfg.grid_points(), &c_list, MAX_DERIVATIVE)?;
    let monotone = tables.iter().all(ConvergenceTable::strictly_decreasing);

    let checks = vec![
        Check::new(
            format!("collapse split: P w^{} = t^{} + ({}) t^{} + w Psi", 2 * n, 2 * n, b_n, 2 * n - 2),
            decomposition.passed(),
            "the rescaled structure polynomial does not split this way",
        ),
        Check::new(
            format!("limit metric: dt^2/(t^2+{}) + t^2 g_CP{}", b_n, n - 1),
            limit_matches && orders_match,
            "the rescaled profile misses the claimed limit",
        ),
        Check::new(
            "fiber circumference bounds on the outer window",
            bounds.iter().all(|b| b.passed()),
            "a certified bound fails",
        ),
        Check::new(
            "sup-norm decay across the parameter ladder",
            monotone,
            "a deviation column fails to shrink",
        ),
    ];

    let payload = json!({
        "decomposition": {
            "leading": decomposition.leading.to_string(),
            "psi": decomposition.psi.to_string(),
            "leading_matches": decomposition.leading_matches,
            "psi_polynomial": decomposition.psi_polynomial,
            "fiber_rate": decomposition.fiber_rate.to_string(),
            "fiber_rate_matches": decomposition.fiber_rate_matches,
        },
        "bounds": bounds,
        "tables": tables,
        "monotone": monotone,
    });

    let mut text = format!(
        "params: n = {}, radial window [{}, {}], fiber window (0, {}], c-list {}\n",
        n,
        r1,
        r2,
        r_max,
        c_list.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "),
    );
    text.push_str(&format!("rescaled leading part: {}\n", decomposition.leading));
    text.push_str(&format!("remainder Psi: {}\n", decomposition.psi));
    text.push_str(&format!("fiber rate beta2/c -> {}\n", decomposition.fiber_rate));
    push_checks(&mut text, &checks[..checks.len() - 1]);
    text.push_str(
        "deviation sup-norm tables (alpha and base on the radial window, fiber\ncolumn: sup of pi sqrt(beta2) on the fiber window):\n",
    );
    for table in &tables {
        text.push_str(&table_text(table, "  "));
    }
    text.push_str("decay ratios between consecutive rows (plain deviation):\n");
    text.push_str(&ratio_lines(&tables[0], "  "));
    push_checks(&mut text, &checks[checks.len() - 1..]);

    Ok(Summary { checks, tables, payload, text_body: text })
}
