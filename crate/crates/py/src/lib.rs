//! Python bindings for the metric family.
//!
//! The module mirrors the command-line surface: exact metric coefficient
//! profiles, the verification pipeline, and both parameter limits. Exact
//! quantities cross the boundary as strings (rational numbers like
//! `-3` or `4/5`, and polynomial or rational-function displays); floats
//! appear only where the underlying computation is numeric.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::{json, Value};

use peforge_cli::commands::{limit_inf, limit_zero, report, verify};
use peforge_cli::config::RunConfig;
use peforge_core::einstein::oracle::{ORDER_STEP, VALUE_STEP};
use peforge_core::einstein::{
    convergence_order, einstein_constant as core_einstein_constant, residual_report,
    ricci_diagonal, FdOracle,
};
use peforge_core::exact::rational::parse_rat;
use peforge_core::exact::{CoeffField, Rat, QU, QW};
use peforge_core::pagepope::{
    build_profile_perturbed, p_factored_string, p_poly as core_p_poly,
    q_factored_string, q_poly as core_q_poly, CCtx, Chart,
    MetricProfile as CoreProfile, Perturbation,
};

fn value_err(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn anyhow_err(err: anyhow::Error) -> PyErr {
    PyValueError::new_err(format!("{err:#}"))
}

/// Converts a JSON document into plain Python objects.
fn json_to_py(py: Python<'_>, value: &Value) -> PyResult<Py<PyAny>> {
    Ok(match value {
        Value::Null => py.None(),
        Value::Bool(b) => (*b).into_pyobject(py)?.to_owned().into_any().unbind(),
        Value::Number(number) => {
            if let Some(i) = number.as_i64() {
                i.into_pyobject(py)?.into_any().unbind()
            } else {
                number.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind()
            }
        }
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(items) => {
            let converted: Vec<Py<PyAny>> =
                items.iter().map(|v| json_to_py(py, v)).collect::<PyResult<_>>()?;
            PyList::new(py, converted)?.into_any().unbind()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (key, item) in map {
                dict.set_item(key, json_to_py(py, item)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

fn parse_chart(chart: &str) -> PyResult<Chart> {
    chart.parse().map_err(value_err)
}

fn parse_perturb(perturb: Option<&str>) -> PyResult<Option<Perturbation>> {
    perturb.map(|p| p.parse().map_err(value_err)).transpose()
}

fn parse_positive_rat(text: &str) -> PyResult<Rat> {
    let c = parse_rat(text).map_err(value_err)?;
    if c <= Rat::zero() {
        return Err(value_err("c must be positive"));
    }
    Ok(c)
}

/// The factored building-block polynomial of index `k`, or its expansion.
#[pyfunction]
#[pyo3(signature = (k, expanded = false))]
fn q_poly(k: u32, expanded: bool) -> PyResult<String> {
    if !(1..=40).contains(&k) {
        return Err(value_err("the building-block index must be between 1 and 40"));
    }
    Ok(if expanded { core_q_poly(k).to_string() } else { q_factored_string(k) })
}

/// The structure polynomial for complex dimension `n`, factored or expanded.
#[pyfunction]
#[pyo3(signature = (n, expanded = false))]
fn p_poly(n: u32, expanded: bool) -> PyResult<String> {
    if !(2..=40).contains(&n) {
        return Err(value_err("need 2 <= n <= 40"));
    }
    Ok(if expanded {
        core_p_poly::<QU>(n, &QU::var_elem()).to_string()
    } else {
        p_factored_string(n)
    })
}

/// The Einstein constant `-(2n-1)` of the family on the `2n`-ball.
#[pyfunction]
fn einstein_constant(n: u32) -> PyResult<i64> {
    if n < 2 {
        return Err(value_err("need n >= 2"));
    }
    Ok(core_einstein_constant(n))
}

/// Numeric curvature deviation of the four-dimensional member at one
/// chart point, from the independent finite-difference stencil.
#[pyfunction]
#[pyo3(signature = (c, point, step = None))]
fn fd_deviation(c: f64, point: [f64; 4], step: Option<f64>) -> PyResult<f64> {
    if !(c > 0.0) {
        return Err(value_err("c must be positive"));
    }
    Ok(FdOracle::new(c, step.unwrap_or(VALUE_STEP)).einstein_deviation(&point))
}

/// Richardson estimate of the finite-difference convergence order at one
/// chart point; second-order stencils should report close to 2.
#[pyfunction]
#[pyo3(signature = (c, point, step = None))]
fn fd_convergence_order(c: f64, point: [f64; 4], step: Option<f64>) -> PyResult<f64> {
    if !(c > 0.0) {
        return Err(value_err("c must be positive"));
    }
    Ok(convergence_order(c, &point, step.unwrap_or(ORDER_STEP)))
}

/// The exact metric coefficient triple `(alpha^2, beta^2, gamma^2)` in
/// one coordinate chart, formally in the parameter or at a rational value.
#[pyclass]
struct MetricProfile {
    inner: Inner,
    control: Option<Perturbation>,
}

enum Inner {
    /// Coefficients over `Q(u)`, `u = 1/c`.
    FormalU { ctx: CCtx<QU>, profile: CoreProfile<QU> },
    /// Coefficients over `Q(w)`, `w = sqrt(c)`; needed by the collapse chart.
    FormalW { ctx: CCtx<QW>, profile: CoreProfile<QW> },
    /// Coefficients over `Q` at a fixed positive rational parameter.
    Rational { c: Rat, ctx: CCtx<Rat>, profile: CoreProfile<Rat> },
}

impl Inner {
    fn coefficient_strings(&self) -> [String; 3] {
        match self {
            Inner::FormalU { profile, .. } => profile.components().map(|f| f.to_string()),
            Inner::FormalW { profile, .. } => profile.components().map(|f| f.to_string()),
            Inner::Rational { profile, .. } => profile.components().map(|f| f.to_string()),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Inner::FormalU { profile, .. } => profile.to_json(),
            Inner::FormalW { profile, .. } => profile.to_json(),
            Inner::Rational { profile, .. } => profile.to_json(),
        }
    }

    fn n(&self) -> u32 {
        match self {
            Inner::FormalU { profile, .. } => profile.n,
            Inner::FormalW { profile, .. } => profile.n,
            Inner::Rational { profile, .. } => profile.n,
        }
    }

    fn chart(&self) -> Chart {
        match self {
            Inner::FormalU { profile, .. } => profile.chart,
            Inner::FormalW { profile, .. } => profile.chart,
            Inner::Rational { profile, .. } => profile.chart,
        }
    }

    fn c_label(&self) -> String {
        match self {
            Inner::FormalU { .. } | Inner::FormalW { .. } => "formal".to_string(),
            Inner::Rational { c, .. } => c.to_string(),
        }
    }
}

#[pymethods]
impl MetricProfile {
    /// Builds the coefficient profile for complex dimension `n`. Omit `c`
    /// to stay formal in the parameter; pass a rational literal such as
    /// `"1"`, `"1/10"`, or `"1e-2"` to fix it. `chart` picks the radial
    /// coordinate; `perturb` installs a deliberate structural control.
    #[new]
    #[pyo3(signature = (n, c = None, chart = "r", perturb = None))]
    fn new(n: u32, c: Option<&str>, chart: &str, perturb: Option<&str>) -> PyResult<Self> {
        if n < 2 {
            return Err(value_err("need n >= 2 (the ball has real dimension 2n)"));
        }
        let chart = parse_chart(chart)?;
        let control = parse_perturb(perturb)?;
        let inner = match c {
            None | Some("formal") => {
                if chart == Chart::T {
                    // The collapse chart rescales by sqrt(c), so the formal
                    // coefficient field must carry w = sqrt(c).
                    let ctx = CCtx::<QW>::formal_w();
                    let profile =
                        build_profile_perturbed(n, &ctx, chart, control).map_err(value_err)?;
                    Inner::FormalW { ctx, profile }
                } else {
                    let ctx = CCtx::<QU>::formal_u();
                    let profile =
                        build_profile_perturbed(n, &ctx, chart, control).map_err(value_err)?;
                    Inner::FormalU { ctx, profile }
                }
            }
            Some(text) => {
                let c = parse_positive_rat(text)?;
                let ctx = CCtx::rational(c.clone()).map_err(value_err)?;
                let profile =
                    build_profile_perturbed(n, &ctx, chart, control).map_err(value_err)?;
                Inner::Rational { c, ctx, profile }
            }
        };
        Ok(MetricProfile { inner, control })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    /// The parameter label: a rational literal or `"formal"`.
    #[getter]
    fn c(&self) -> String {
        self.inner.c_label()
    }

    #[getter]
    fn chart(&self) -> String {
        self.inner.chart().to_string()
    }

    /// The installed structural control, if any.
    #[getter]
    fn control(&self) -> Option<&'static str> {
        self.control.map(Perturbation::name)
    }

    #[getter]
    fn alpha2(&self) -> String {
        self.inner.coefficient_strings()[0].clone()
    }

    #[getter]
    fn beta2(&self) -> String {
        self.inner.coefficient_strings()[1].clone()
    }

    #[getter]
    fn gamma2(&self) -> String {
        self.inner.coefficient_strings()[2].clone()
    }

    /// The profile as a nested dictionary with exact coefficient data.
    fn as_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        json_to_py(py, &self.inner.to_json())
    }

    /// The three curvature identities and the eigenvalue identity, each
    /// checked exactly. Requires the plain radial chart.
    fn residuals(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let control = self.control.map(|p| p.name().to_string());
        let report = match &self.inner {
            Inner::FormalU { ctx, profile } => {
                residual_report(profile, ctx, "formal", control).map_err(value_err)?
            }
            Inner::FormalW { ctx, profile } => {
                residual_report(profile, ctx, "formal", control).map_err(value_err)?
            }
            Inner::Rational { c, ctx, profile } => {
                residual_report(profile, ctx, &c.to_string(), control).map_err(value_err)?
            }
        };
        let value = serde_json::to_value(&report).map_err(value_err)?;
        json_to_py(py, &value)
    }

    /// The three Ricci eigenvalues as exact functions of the radial
    /// coordinate, in the order radial, fiber, base.
    fn ricci_eigenvalues(&self) -> PyResult<[String; 3]> {
        Ok(match &self.inner {
            Inner::FormalU { profile, .. } => {
                ricci_diagonal(profile).map_err(value_err)?.eigenvalues().map(|f| f.to_string())
            }
            Inner::FormalW { profile, .. } => {
                ricci_diagonal(profile).map_err(value_err)?.eigenvalues().map(|f| f.to_string())
            }
            Inner::Rational { profile, .. } => {
                ricci_diagonal(profile).map_err(value_err)?.eigenvalues().map(|f| f.to_string())
            }
        })
    }

    /// The Ricci eigenvalues exactly evaluated at a rational radius,
    /// returned as rational strings (for a formal profile they remain
    /// functions of the parameter).
    fn ricci_at(&self, r: &str) -> PyResult<[String; 3]> {
        let radius = parse_rat(r).map_err(value_err)?;
        Ok(match &self.inner {
            Inner::FormalU { profile, .. } => {
                let diagonal = ricci_diagonal(profile).map_err(value_err)?;
                let at = QU::from_rat(radius);
                diagonal
                    .eigenvalues()
                    .map(|f| f.eval(&at).map(|v| v.to_string()))
                    .into_iter()
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(value_err)?
                    .try_into()
                    .expect("three eigenvalues")
            }
            Inner::FormalW { profile, .. } => {
                let diagonal = ricci_diagonal(profile).map_err(value_err)?;
                let at = QW::from_rat(radius);
                diagonal
                    .eigenvalues()
                    .map(|f| f.eval(&at).map(|v| v.to_string()))
                    .into_iter()
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(value_err)?
                    .try_into()
                    .expect("three eigenvalues")
            }
            Inner::Rational { profile, .. } => {
                let diagonal = ricci_diagonal(profile).map_err(value_err)?;
                diagonal.eval(&radius).map_err(value_err)?.map(|v| v.to_string())
            }
        })
    }

    /// Whether the Ricci eigenvalues are identically the Einstein
    /// constant. Requires the plain radial chart.
    fn is_einstein(&self) -> PyResult<bool> {
        Ok(match &self.inner {
            Inner::FormalU { profile, .. } => {
                ricci_diagonal(profile).map_err(value_err)?.is_einstein()
            }
            Inner::FormalW { profile, .. } => {
                ricci_diagonal(profile).map_err(value_err)?.is_einstein()
            }
            Inner::Rational { profile, .. } => {
                ricci_diagonal(profile).map_err(value_err)?.is_einstein()
            }
        })
    }

    /// Numeric values of the coefficient triple at one chart point. A
    /// formal profile needs an explicit `c`; a rational one uses its own.
    #[pyo3(signature = (x, c = None))]
    fn coefficients_at(&self, x: f64, c: Option<f64>) -> PyResult<[f64; 3]> {
        let c = match (&self.inner, c) {
            (Inner::Rational { c, .. }, None) => {
                peforge_core::exact::rational::rat_to_f64(c)
            }
            (_, Some(value)) if value > 0.0 => value,
            (_, Some(_)) => return Err(value_err("c must be positive")),
            (_, None) => return Err(value_err("a formal profile needs an explicit c here")),
        };
        Ok(match &self.inner {
            Inner::FormalU { profile, .. } => profile.eval_f64(x, c),
            Inner::FormalW { profile, .. } => profile.eval_f64(x, c),
            Inner::Rational { profile, .. } => profile.eval_f64(x, c),
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "MetricProfile(n={}, c={}, chart={}{})",
            self.inner.n(),
            self.inner.c_label(),
            self.inner.chart(),
            match self.control {
                Some(p) => format!(", control={}", p.name()),
                None => String::new(),
            }
        )
    }
}

/// Runs the full verification pipeline and returns its checks as a
/// dictionary, exactly as the command line would.
#[pyfunction]
#[pyo3(signature = (n, c = None, perturb = None, oracle = false, precision = None))]
fn run_verify(
    py: Python<'_>,
    n: u32,
    c: Option<&str>,
    perturb: Option<&str>,
    oracle: bool,
    precision: Option<u32>,
) -> PyResult<Py<PyAny>> {
    let cfg = RunConfig {
        n: Some(n),
        c: c.map(str::to_string),
        perturb: perturb.map(str::to_string),
        oracle: Some(oracle),
        precision,
        ..RunConfig::default()
    };
    let (_, payload) = verify::collect(&cfg).map_err(anyhow_err)?;
    json_to_py(py, &payload)
}

/// Large-parameter limit summary: the exact complex-hyperbolic
/// normalization identities and the sup-norm decay tables.
#[pyfunction]
#[pyo3(signature = (n, grid = None, c_list = None))]
fn limit_infinity(
    py: Python<'_>,
    n: u32,
    grid: Option<usize>,
    c_list: Option<Vec<String>>,
) -> PyResult<Py<PyAny>> {
    let cfg = RunConfig { n: Some(n), grid, c_list, ..RunConfig::default() };
    let summary = limit_inf::summarize(&cfg).map_err(anyhow_err)?;
    let passed = summary.checks.iter().all(|check| check.passed);
    let document = json!({
        "limit_infinity": summary.payload,
        "checks": summary.checks,
        "passed": passed,
    });
    json_to_py(py, &document)
}

/// Collapse limit summary: the certified decomposition, fiber bounds,
/// and the square-root decay tables.
#[pyfunction]
#[pyo3(signature = (n, grid = None, c_list = None, r1 = None, r2 = None, big_r = None))]
fn limit_collapse(
    py: Python<'_>,
    n: u32,
    grid: Option<usize>,
    c_list: Option<Vec<String>>,
    r1: Option<f64>,
    r2: Option<f64>,
    big_r: Option<f64>,
) -> PyResult<Py<PyAny>> {
    let cfg = RunConfig { n: Some(n), grid, c_list, r1, r2, r_max: big_r, ..RunConfig::default() };
    let summary = limit_zero::summarize(&cfg).map_err(anyhow_err)?;
    let passed = summary.checks.iter().all(|check| check.passed);
    let document = json!({
        "limit_zero": summary.payload,
        "checks": summary.checks,
        "passed": passed,
    });
    json_to_py(py, &document)
}

/// The full aggregate report as a dictionary, validated against the
/// report schema before it is returned.
#[pyfunction]
#[pyo3(signature = (n, c = None, order = None, grid = None, precision = None))]
fn run_report(
    py: Python<'_>,
    n: u32,
    c: Option<&str>,
    order: Option<usize>,
    grid: Option<usize>,
    precision: Option<u32>,
) -> PyResult<Py<PyAny>> {
    let cfg = RunConfig {
        n: Some(n),
        c: c.map(str::to_string),
        order,
        grid,
        precision,
        ..RunConfig::default()
    };
    let (document, _) = report::document(&cfg).map_err(anyhow_err)?;
    json_to_py(py, &document)
}

/// Exact construction and verification of the one-parameter family of
/// Einstein metrics on the even-dimensional ball.
#[pymodule]
fn peforge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<MetricProfile>()?;
    m.add_function(wrap_pyfunction!(q_poly, m)?)?;
    m.add_function(wrap_pyfunction!(p_poly, m)?)?;
    m.add_function(wrap_pyfunction!(einstein_constant, m)?)?;
    m.add_function(wrap_pyfunction!(fd_deviation, m)?)?;
    m.add_function(wrap_pyfunction!(fd_convergence_order, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    m.add_function(wrap_pyfunction!(limit_infinity, m)?)?;
    m.add_function(wrap_pyfunction!(limit_collapse, m)?)?;
    m.add_function(wrap_pyfunction!(run_report, m)?)?;
    Ok(())
}
