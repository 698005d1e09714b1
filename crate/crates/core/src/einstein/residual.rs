//! Exact residuals of the Einstein condition `Ric = -(2n-1) g`.
//!
//! With `A = alpha^2`, `B = beta^2`, `G = gamma^2` as functions of `r`, the
//! condition collapses to polynomial identities:
//!
//! - transverse: `G G''/2 - (G')^2/4 + c^2 = 0`
//!   (equivalently `gamma^3 gamma'' = -c^2`);
//! - tangential: `-(1 + (2n-3) r^2) B - r (r^2-1) B'
//!   + 2n c (r^2-1) + (2n-1) c^2 (r^2-1)^2 = 0`;
//! - the first-order equation for `P_n`.
//!
//! Each residual is returned as an exact rational function; the profile is
//! Einstein exactly when all three vanish identically.

use serde::Serialize;

use crate::error::GeomError;
use crate::exact::{CoeffField, LaurentPoly, RatFn, Var};
use crate::pagepope::chart::{CCtx, Chart};
use crate::pagepope::profile::MetricProfile;
use crate::pagepope::qpoly::p_ode_residual;

fn require_r_chart<K: CoeffField>(profile: &MetricProfile<K>) -> Result<(), GeomError> {
    if profile.chart != Chart::R {
        return Err(GeomError::ChartMismatch {
            expected: Var::R,
            found: profile.chart.var(),
        });
    }
    Ok(())
}

/// `G G''/2 - (G')^2/4 + c^2` for `G = gamma^2`.
pub fn residual_transverse<K: CoeffField>(
    profile: &MetricProfile<K>,
    ctx: &CCtx<K>,
) -> Result<RatFn<K>, GeomError> {
    require_r_chart(profile)?;
    let g = &profile.gamma2;
    let gp = g.derivative();
    let gpp = gp.derivative();
    let half = K::from_rat(crate::exact::rational::rat(1, 2));
    let quarter = K::from_rat(crate::exact::rational::rat(1, 4));
    let c2 = ctx.c.clone() * ctx.c.clone();
    let out = &(&g.checked_mul(&gpp)?.scale_k(&half) - &gp.pow(2).scale_k(&quarter))
        + &RatFn::constant(Var::R, c2);
    Ok(out)
}

/// The first-order identity satisfied by `B = beta^2`.
pub fn residual_tangential<K: CoeffField>(
    profile: &MetricProfile<K>,
    ctx: &CCtx<K>,
) -> Result<RatFn<K>, GeomError> {
    require_r_chart(profile)?;
    let n = profile.n as i64;
    let b = &profile.beta2;
    let bp = b.derivative();
    let r = RatFn::<K>::var_elem(Var::R);
    let r2m1 = RatFn::from_poly(LaurentPoly::from_terms(
        Var::R,
        [(0, -K::one()), (2, K::one())],
    ));
    let coeff = RatFn::from_poly(LaurentPoly::from_terms(
        Var::R,
        [(0, K::one()), (2, K::from_int(2 * n - 3))],
    ));
    let c2 = ctx.c.clone() * ctx.c.clone();
    let mut out = -&coeff.checked_mul(b)?;
    out = &out - &r.checked_mul(&r2m1)?.checked_mul(&bp)?;
    out = &out + &r2m1.scale_k(&(ctx.c.clone() * K::from_int(2 * n)));
    out = &out + &r2m1.pow(2).scale_k(&(c2 * K::from_int(2 * n - 1)));
    Ok(out)
}

/// Residual of the defining first-order equation for `P_n`.
pub fn residual_structure_ode<K: CoeffField>(
    n: u32,
    ctx: &CCtx<K>,
) -> Result<RatFn<K>, GeomError> {
    Ok(p_ode_residual(n, &ctx.u)?)
}

/// Summary of the three exact residuals for one profile.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub n: u32,
    pub c: String,
    pub chart: String,
    pub perturbation: Option<String>,
    pub transverse_zero: bool,
    pub tangential_zero: bool,
    pub structure_ode_zero: bool,
    pub einstein: bool,
}

pub fn residual_report<K: CoeffField>(
    profile: &MetricProfile<K>,
    ctx: &CCtx<K>,
    c_label: &str,
    perturbation: Option<String>,
) -> Result<ResidualReport, GeomError> {
    let transverse_zero = residual_transverse(profile, ctx)?.is_zero();
    let tangential_zero = residual_tangential(profile, ctx)?.is_zero();
    let structure_ode_zero = residual_structure_ode(profile.n, ctx)?.is_zero();
    let einstein = transverse_zero && tangential_zero && structure_ode_zero;
    Ok(ResidualReport {
        n: profile.n,
        c: c_label.to_string(),
        chart: profile.chart.to_string(),
        perturbation,
        transverse_zero,
        tangential_zero,
        structure_ode_zero,
        einstein,
    })
}
