//! Layered run configuration: built-in defaults, an optional TOML file,
//! and command-line flags, with later layers winning.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use num::Signed;
use serde::{Deserialize, Serialize};

use peforge_core::exact::rational::parse_rat;
use peforge_core::exact::{rat_i, Rat};
use peforge_core::pagepope::{Chart, Perturbation};

/// Rendering target for a finished command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

/// How the family parameter is carried through a command.
#[derive(Debug, Clone, PartialEq)]
pub enum CSpec {
    /// Work over the rational-function field in the parameter.
    Formal,
    /// A concrete positive rational value.
    Rational(Rat),
}

impl CSpec {
    pub fn label(&self) -> String {
        match self {
            CSpec::Formal => "formal".to_string(),
            CSpec::Rational(c) => c.to_string(),
        }
    }
}

/// Every knob of one invocation. All fields are optional so a TOML file
/// and the command line can each fill in any subset; `merged_over` stacks
/// the layers.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    /// Rational literal such as `1`, `1/10`, or `1e-2`, or the word
    /// `formal`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chart: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_list: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturb: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r2: Option<f64>,
    #[serde(rename = "R", skip_serializing_if = "Option::is_none")]
    pub r_max: Option<f64>,
}

macro_rules! merge_fields {
    ($self:ident, $base:ident, $($field:ident),+ $(,)?) => {
        $(if $self.$field.is_none() { $self.$field = $base.$field; })+
    };
}

impl RunConfig {
    /// Returns `self` with holes filled from `base`; set fields win.
    pub fn merged_over(mut self, base: RunConfig) -> RunConfig {
        merge_fields!(
            self, base, n, c, chart, order, grid, c_list, precision, format, out, oracle,
            perturb, r1, r2, r_max
        );
        self
    }

    pub fn from_toml_file(path: &Path) -> Result<RunConfig> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("bad config file {}", path.display()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).context("cannot serialize the configuration")
    }

    pub fn require_n(&self) -> Result<u32> {
        let n = self.n.context("this command needs --n (the ball has real dimension 2n)")?;
        if n < 2 {
            bail!("need --n at least 2, got {n}");
        }
        Ok(n)
    }

    pub fn c_spec(&self) -> Result<CSpec> {
        match self.c.as_deref() {
            None | Some("formal") => Ok(CSpec::Formal),
            Some(text) => {
                let c = parse_rat(text)
                    .map_err(|e| anyhow::anyhow!("--c: {e}"))?;
                if !c.is_positive() {
                    bail!("--c must be positive, got {c}");
                }
                Ok(CSpec::Rational(c))
            }
        }
    }

    pub fn chart(&self) -> Result<Chart> {
        match self.chart.as_deref() {
            None => Ok(Chart::R),
            Some(text) => Chart::from_str(text).map_err(|e| anyhow::anyhow!("{e}")),
        }
    }

    pub fn perturbation(&self) -> Result<Option<Perturbation>> {
        self.perturb
            .as_deref()
            .map(|s| Perturbation::from_str(s).map_err(|e| anyhow::anyhow!("{e}")))
            .transpose()
    }

    /// Parameter values for the limit tables; `default` supplies the
    /// standard decade ladder when no list is given.
    pub fn c_values_or(&self, default: fn() -> Vec<Rat>) -> Result<Vec<Rat>> {
        match &self.c_list {
            None => Ok(default()),
            Some(list) => list
                .iter()
                .map(|s| {
                    let c = parse_rat(s).map_err(|e| anyhow::anyhow!("--c-list: {e}"))?;
                    if !c.is_positive() {
                        bail!("--c-list entries must be positive, got {c}");
                    }
                    Ok(c)
                })
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order.unwrap_or(8)
    }

    pub fn grid_points(&self) -> usize {
        self.grid.unwrap_or(50)
    }

    pub fn precision(&self) -> u32 {
        self.precision.unwrap_or(40)
    }

    pub fn output_format(&self) -> OutputFormat {
        self.format.unwrap_or_default()
    }

    pub fn oracle(&self) -> bool {
        self.oracle.unwrap_or(false)
    }
}

/// `10, 100, 1000, 10000`, the ladder toward the large-parameter limit.
pub fn decades_up() -> Vec<Rat> {
    (1..=4).map(|k| rat_i(10i64.pow(k))).collect()
}

/// `1/10, ..., 1/10000`, the ladder toward the collapse limit.
pub fn decades_down() -> Vec<Rat> {
    (1..=4).map(|k| rat_i(10i64.pow(k)).recip()).collect()
}
