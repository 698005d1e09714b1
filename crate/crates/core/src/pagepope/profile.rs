//! Metric coefficient profiles.
//!
//! The metric is `g = alpha^2 dr^2 + beta^2 theta^2 + gamma^2 g_base` with
//!
//! - `alpha^2 = (r^2-1)^{n-1} / P_n`,
//! - `beta^2  = c^2 (r^2-1)^{1-n} P_n`,
//! - `gamma^2 = c (r^2-1)`,
//!
//! so `alpha beta = c` identically. In a non-`r` chart the first slot
//! carries the squared Jacobian, i.e. it is the coefficient of
//! `dchart^2`.

use std::fmt;
use std::str::FromStr;

use crate::error::GeomError;
use crate::exact::rational::rat_to_f64;
use crate::exact::{CoeffField, Rat, RatFn, Var};
use crate::pagepope::chart::{jacobian_sq, to_chart, CCtx, Chart};
use crate::pagepope::qpoly::{p_poly, r2_minus_1_pow};

/// How the parameter `c` is carried.
#[derive(Debug, Clone, PartialEq)]
pub enum CParam {
    Rational(Rat),
    FormalU,
    FormalW,
}

impl fmt::Display for CParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CParam::Rational(c) => write!(f, "c = {}", c),
            CParam::FormalU => f.write_str("formal u = 1/c"),
            CParam::FormalW => f.write_str("formal w = sqrt(c)"),
        }
    }
}

/// Profile parameters: the metric lives on the ball of real dimension `2n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricParams {
    pub n: u32,
    pub c: CParam,
}

/// Structural perturbations used as negative controls: each breaks the
/// Einstein property while keeping everything rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perturbation {
    /// Replaces `gamma^2` by `gamma^2 + r`.
    GammaPlusR,
    /// Replaces `P_n` by `P_n + r` before forming the coefficients.
    PPlusR,
    /// Doubles `beta^2`.
    BetaTimesTwo,
}

impl Perturbation {
    pub const ALL: [Perturbation; 3] =
        [Perturbation::GammaPlusR, Perturbation::PPlusR, Perturbation::BetaTimesTwo];

    pub fn name(self) -> &'static str {
        match self {
            Perturbation::GammaPlusR => "gamma2-plus-r",
            Perturbation::PPlusR => "p-plus-r",
            Perturbation::BetaTimesTwo => "beta2-times-2",
        }
    }
}

impl fmt::Display for Perturbation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Perturbation {
    type Err = GeomError;
    fn from_str(s: &str) -> Result<Self, GeomError> {
        Perturbation::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| GeomError::InvalidParams(format!("unknown perturbation `{}`", s)))
    }
}

/// The three metric coefficients as functions of one chart variable.
#[derive(Clone, Debug)]
pub struct MetricProfile<K: CoeffField> {
    pub n: u32,
    pub chart: Chart,
    /// Coefficient of `dchart^2` (Jacobian included outside the `r` chart).
    pub alpha2: RatFn<K>,
    /// Coefficient of `theta^2` for the fiber circle.
    pub beta2: RatFn<K>,
    /// Coefficient of the base metric.
    pub gamma2: RatFn<K>,
}

pub fn build_profile<K: CoeffField>(
    n: u32,
    ctx: &CCtx<K>,
    chart: Chart,
) -> Result<MetricProfile<K>, GeomError> {
    build_profile_perturbed(n, ctx, chart, None)
}

pub fn build_profile_perturbed<K: CoeffField>(
    n: u32,
    ctx: &CCtx<K>,
    chart: Chart,
    perturb: Option<Perturbation>,
) -> Result<MetricProfile<K>, GeomError> {
    if n < 2 {
        return Err(GeomError::InvalidParams(format!(
            "need n >= 2 (real dimension 2n >= 4), got n = {}",
            n
        )));
    }
    let mut p = RatFn::from_poly(p_poly(n, &ctx.u));
    if perturb == Some(Perturbation::PPlusR) {
        p = &p + &RatFn::var_elem(Var::R);
    }
    let lift = |q| {
        RatFn::from_poly(
            r2_minus_1_pow(q)
                .map_coeffs(|c| Ok(K::from_rat(c.clone())))
                .expect("infallible"),
        )
    };
    let pow = lift(n - 1);
    let alpha2 = pow.div(&p)?;
    let mut beta2 = p.div(&pow)?.scale_k(&(ctx.c.clone() * ctx.c.clone()));
    let mut gamma2 = lift(1).scale_k(&ctx.c);
    match perturb {
        Some(Perturbation::GammaPlusR) => {
            gamma2 = &gamma2 + &RatFn::var_elem(Var::R);
        }
        Some(Perturbation::BetaTimesTwo) => {
            beta2 = beta2.scale_k(&K::from_int(2));
        }
        _ => {}
    }
    let (alpha2, beta2, gamma2) = if chart == Chart::R {
        (alpha2, beta2, gamma2)
    } else {
        let j = jacobian_sq(chart, ctx)?;
        (
            &to_chart(&alpha2, chart, ctx)? * &j,
            to_chart(&beta2, chart, ctx)?,
            to_chart(&gamma2, chart, ctx)?,
        )
    };
    Ok(MetricProfile { n, chart, alpha2, beta2, gamma2 })
}

impl<K: CoeffField> MetricProfile<K> {
    pub fn components(&self) -> [&RatFn<K>; 3] {
        [&self.alpha2, &self.beta2, &self.gamma2]
    }

    /// Exact evaluation of the three coefficients at a chart point.
    pub fn eval(&self, x: &K) -> Result<[K; 3], GeomError> {
        Ok([self.alpha2.eval(x)?, self.beta2.eval(x)?, self.gamma2.eval(x)?])
    }

    /// Floating-point evaluation; `c` feeds formal coefficients.
    pub fn eval_f64(&self, x: f64, c: f64) -> [f64; 3] {
        [
            self.alpha2.eval_f64(x, c),
            self.beta2.eval_f64(x, c),
            self.gamma2.eval_f64(x, c),
        ]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "chart": self.chart.to_string(),
            "alpha2": self.alpha2.to_json(),
            "beta2": self.beta2.to_json(),
            "gamma2": self.gamma2.to_json(),
        })
    }
}

impl MetricProfile<Rat> {
    /// Exact rational evaluation converted at the end of the computation.
    pub fn eval_rat_f64(&self, x: &Rat) -> Result<[f64; 3], GeomError> {
        let v = self.eval(x)?;
        Ok([rat_to_f64(&v[0]), rat_to_f64(&v[1]), rat_to_f64(&v[2])])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_i};
    use crate::exact::{LaurentPoly, QU};
    use crate::pagepope::chart::from_chart;

    #[test]
    fn hyperbolic_specialization_at_c_one() {
        // u = 1: P_n = (r^2-1)^n, so alpha^2 = 1/(r^2-1), beta^2 = gamma^2 = r^2-1.
        let ctx = CCtx::rational(rat_i(1)).unwrap();
        let pr = build_profile(2, &ctx, Chart::R).unwrap();
        let g = RatFn::from_poly(LaurentPoly::from_ints(Var::R, 0, &[-1, 0, 1]));
        assert_eq!(pr.alpha2, g.invert().unwrap());
        assert_eq!(pr.beta2, g);
        assert_eq!(pr.gamma2, g);
    }

    #[test]
    fn alpha_beta_product_is_c_squared() {
        for (n, c) in [(2, rat(1, 10)), (3, rat_i(5)), (5, rat(7, 3))] {
            let ctx = CCtx::rational(c.clone()).unwrap();
            let pr = build_profile(n, &ctx, Chart::R).unwrap();
            let prod = &pr.alpha2 * &pr.beta2;
            assert_eq!(prod, RatFn::constant(Var::R, c.clone() * c));
        }
    }

    #[test]
    fn fiber_shrinks_against_base_toward_the_boundary() {
        // beta^2/gamma^2 -> c at r -> infinity, exactly.
        let ctx = CCtx::<QU>::formal_u();
        let pr = build_profile(3, &ctx, Chart::R).unwrap();
        let ratio = pr.beta2.div(&pr.gamma2).unwrap();
        let s = ratio
            .series(crate::exact::ExpansionCenter::Infinity, 0)
            .unwrap();
        assert_eq!(s.coeff(0), QU::c_elem());
    }

    #[test]
    fn chart_transport_is_consistent() {
        let ctx = CCtx::rational(rat(9, 4)).unwrap();
        let in_r = build_profile(2, &ctx, Chart::R).unwrap();
        for chart in [Chart::S, Chart::X, Chart::T, Chart::Rho] {
            let pr = build_profile(2, &ctx, chart).unwrap();
            assert_eq!(from_chart(&pr.beta2, chart, &ctx).unwrap(), in_r.beta2);
            assert_eq!(from_chart(&pr.gamma2, chart, &ctx).unwrap(), in_r.gamma2);
            // alpha^2 carries the Jacobian: strip it by transporting the ratio.
            let j = jacobian_sq(chart, &ctx).unwrap();
            let stripped = pr.alpha2.div(&j).unwrap();
            assert_eq!(from_chart(&stripped, chart, &ctx).unwrap(), in_r.alpha2);
        }
    }

    #[test]
    fn dimension_guard() {
        let ctx = CCtx::rational(rat_i(1)).unwrap();
        assert!(build_profile(1, &ctx, Chart::R).is_err());
    }

    #[test]
    fn perturbations_change_the_profile() {
        let ctx = CCtx::rational(rat_i(1)).unwrap();
        let clean = build_profile(2, &ctx, Chart::R).unwrap();
        for p in Perturbation::ALL {
            let pr = build_profile_perturbed(2, &ctx, Chart::R, Some(p)).unwrap();
            let changed = pr.alpha2 != clean.alpha2
                || pr.beta2 != clean.beta2
                || pr.gamma2 != clean.gamma2;
            assert!(changed, "{} left the profile unchanged", p);
        }
        assert_eq!("p-plus-r".parse::<Perturbation>().unwrap(), Perturbation::PPlusR);
    }
}
