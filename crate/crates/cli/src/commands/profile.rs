//! Builds the three metric coefficients in a chosen radial chart, either
//! over the parameter field or at a concrete rational parameter.

use anyhow::Result;
use serde_json::json;

use peforge_core::exact::{CoeffField, QU, QW};
use peforge_core::pagepope::{build_profile_perturbed, CCtx, Chart, MetricProfile, Perturbation};

use crate::commands::Outcome;
use crate::config::{CSpec, OutputFormat, RunConfig};
use crate::render::{emit, json_body, reject_csv};

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    reject_csv(cfg, "profile")?;
    let n = cfg.require_n()?;
    let chart = cfg.chart()?;
    let perturb = cfg.perturbation()?;
    let c_spec = cfg.c_spec()?;

    let body = match &c_spec {
        CSpec::Rational(c) => {
            let ctx = CCtx::rational(c.clone())?;
            let profile = build_profile_perturbed(n, &ctx, chart, perturb)?;
            render(&profile, &c_spec, perturb, cfg)?
        }
        // The collapse chart rescales by the square root of the parameter,
        // so its formal home is the field tracking that root; every other
        // chart stays over the inverse-parameter field.
        CSpec::Formal if chart == Chart::T => {
            let ctx = CCtx::<QW>::formal_w();
            let profile = build_profile_perturbed(n, &ctx, chart, perturb)?;
            render(&profile, &c_spec, perturb, cfg)?
        }
        CSpec::Formal => {
            let ctx = CCtx::<QU>::formal_u();
            let profile = build_profile_perturbed(n, &ctx, chart, perturb)?;
            render(&profile, &c_spec, perturb, cfg)?
        }
    };
    emit(cfg, &body)?;
    Ok(Outcome::Pass)
}

fn render<K: CoeffField>(
    profile: &MetricProfile<K>,
    c_spec: &CSpec,
    perturb: Option<Perturbation>,
    cfg: &RunConfig,
) -> Result<String> {
    let control = perturb.map(|p| p.name().to_string());
    match cfg.output_format() {
        OutputFormat::Json => json_body(&json!({
            "command": "profile",
            "c": c_spec.label(),
            "control": control,
            "profile": profile.to_json(),
        })),
        _ => {
            let mut out = format!(
                "params: n = {}, c = {}, chart = {}\n",
                profile.n,
                c_spec.label(),
                profile.chart
            );
            if let Some(name) = control {
                out.push_str(&format!("control: {name}\n"));
            }
            out.push_str(&format!("alpha2 = {}\n", profile.alpha2));
            out.push_str(&format!("beta2 = {}\n", profile.beta2));
            out.push_str(&format!("gamma2 = {}\n", profile.gamma2));
            Ok(out)
        }
    }
}
