//! Shared output plumbing: pass/fail lines, table rendering, and the
//! stdout-or-file sink.

use std::fmt;
use std::fs;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use peforge_core::asymptotics::ConvergenceTable;

use crate::config::{OutputFormat, RunConfig};

/// One named verification with its verdict. The detail explains a failure
/// and is shown only then; JSON output carries it always.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "{}: PASS", self.name)
        } else if self.detail.is_empty() {
            write!(f, "{}: FAIL", self.name)
        } else {
            write!(f, "{}: FAIL ({})", self.name, self.detail)
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Appends one line per check to `out`.
pub fn push_checks(out: &mut String, checks: &[Check]) {
    for check in checks {
        out.push_str(&check.to_string());
        out.push('\n');
    }
}

/// One table as indented text, using the same cell format as the CSV form.
pub fn table_text(table: &ConvergenceTable, indent: &str) -> String {
    let mut out = format!("{indent}derivative order {}:\n", table.derivative_order);
    for line in table.to_csv().lines() {
        out.push_str(indent);
        out.push_str("  ");
        out.push_str(line);
        out.push('\n');
    }
    out
}

/// Consecutive-row decay ratios of the plain-deviation table, two decimals.
pub fn ratio_lines(table: &ConvergenceTable, indent: &str) -> String {
    let mut out = String::new();
    for ratio in table.decay_ratios() {
        out.push_str(&format!(
            "{indent}{:.2}, {:.2}, {:.2}\n",
            ratio[0], ratio[1], ratio[2]
        ));
    }
    out
}

/// Refuses the CSV format for commands that have no tabular core.
pub fn reject_csv(cfg: &RunConfig, command: &str) -> Result<()> {
    if cfg.output_format() == OutputFormat::Csv {
        bail!("csv output is only available for limit-inf and limit-zero, not for `{command}`");
    }
    Ok(())
}

/// Pretty JSON with a trailing newline.
pub fn json_body(value: &serde_json::Value) -> Result<String> {
    Ok(format!("{}\n", serde_json::to_string_pretty(value)?))
}

/// Writes the finished body to `--out` or stdout.
pub fn emit(cfg: &RunConfig, body: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => fs::write(path, body)
            .with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use peforge_core::asymptotics::ConvergenceRow;

    #[test]
    fn check_lines_show_detail_only_on_failure() {
        let ok = Check::new("identity", true, "unused");
        assert_eq!(ok.to_string(), "identity: PASS");
        let bad = Check::new("identity", false, "off by one");
        assert_eq!(bad.to_string(), "identity: FAIL (off by one)");
    }

    #[test]
    fn table_text_indents_every_line() {
        let table = ConvergenceTable {
            kind: "demo".into(),
            derivative_order: 1,
            rows: vec![ConvergenceRow {
                c: "10".into(),
                sup_alpha: 0.5,
                sup_beta_or_fiber: 0.25,
                sup_gamma: 0.125,
            }],
        };
        let text = table_text(&table, "  ");
        assert!(text.starts_with("  derivative order 1:\n"));
        assert!(text.contains("    c,sup_alpha,sup_beta_or_fiber,sup_gamma\n"));
        assert!(text.contains("    10,5.000000e-1,2.500000e-1,1.250000e-1\n"));
    }
}
