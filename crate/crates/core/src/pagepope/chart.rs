//! Coordinate charts on the ball and exact transitions between them.
//!
//! Everything is expressed through the radial coordinate `r` on `(1, inf)`:
//!
//! - `s = r - 1`, vanishing at the center;
//! - `rho` with `r = (1 + (2u-1) rho^2)/(1 - rho^2)`, the unit-ball
//!   coordinate (`rho^2 = (r-1)/(r-1+2u)`);
//! - `t = w (r - 1)` with `w = sqrt(c)`, the collapse zoom coordinate;
//! - `x = 1/r`, vanishing at the conformal boundary.
//!
//! Transitions are exact rational substitutions; the `rho` chart is
//! invertible on even functions only, through their squares.

use std::fmt;
use std::str::FromStr;

use num::Signed;
use serde::{Deserialize, Serialize};

use crate::error::GeomError;
use crate::exact::{CoeffField, LaurentPoly, Rat, RatFn, Var, QU, QW};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    R,
    S,
    Rho,
    T,
    X,
}

impl Chart {
    pub const ALL: [Chart; 5] = [Chart::R, Chart::S, Chart::Rho, Chart::T, Chart::X];

    pub fn var(self) -> Var {
        match self {
            Chart::R => Var::R,
            Chart::S => Var::S,
            Chart::Rho => Var::RHO,
            Chart::T => Var::T,
            Chart::X => Var::X,
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.var().name())
    }
}

impl FromStr for Chart {
    type Err = GeomError;
    fn from_str(s: &str) -> Result<Self, GeomError> {
        Chart::ALL
            .into_iter()
            .find(|c| c.var().name() == s)
            .ok_or_else(|| GeomError::InvalidParams(format!("unknown chart `{}`", s)))
    }
}

/// The parameter `c` and its companions `u = 1/c` and `w = sqrt(c)` as
/// elements of the working coefficient field. `w` is present only when the
/// square root exists in the field.
#[derive(Clone, Debug)]
pub struct CCtx<K: CoeffField> {
    pub c: K,
    pub u: K,
    pub w: Option<K>,
}

impl CCtx<Rat> {
    /// Numeric mode with an explicit positive rational `c`.
    pub fn rational(c: Rat) -> Result<Self, GeomError> {
        if !c.is_positive() {
            return Err(GeomError::InvalidParams(format!(
                "c must be positive, got {}",
                c
            )));
        }
        let sqrt = |n: &num::BigInt| {
            let s = n.sqrt();
            (&s * &s == *n).then_some(s)
        };
        let w = match (sqrt(c.numer()), sqrt(c.denom())) {
            (Some(a), Some(b)) => Some(Rat::new(a, b)),
            _ => None,
        };
        Ok(CCtx { u: c.recip(), c, w })
    }
}

impl CCtx<QU> {
    /// Formal mode over `Q(u)`.
    pub fn formal_u() -> Self {
        CCtx { c: QU::c_elem(), u: QU::var_elem(), w: None }
    }
}

impl CCtx<QW> {
    /// Formal mode over `Q(w)`.
    pub fn formal_w() -> Self {
        CCtx { c: QW::c_elem(), u: QW::u_elem(), w: Some(QW::var_elem()) }
    }
}

impl<K: CoeffField> CCtx<K> {
    fn require_w(&self, chart: Chart) -> Result<K, GeomError> {
        self.w
            .clone()
            .ok_or_else(|| GeomError::ChartNeedsSqrt { chart: chart.to_string() })
    }
}

/// `r` as a rational function of the chart variable.
pub fn r_in_chart<K: CoeffField>(chart: Chart, ctx: &CCtx<K>) -> Result<RatFn<K>, GeomError> {
    let v = chart.var();
    let x = RatFn::<K>::var_elem(v);
    Ok(match chart {
        Chart::R => x,
        Chart::S => &x + &RatFn::one(v),
        Chart::X => x.invert().expect("nonzero"),
        Chart::T => {
            let w = ctx.require_w(chart)?;
            let winv = w.invert().ok_or(GeomError::InvalidParams("w = 0".into()))?;
            &RatFn::one(v) + &x.scale_k(&winv)
        }
        Chart::Rho => {
            let two_u_minus_1 = ctx.u.clone() + ctx.u.clone() - K::one();
            let num = LaurentPoly::from_terms(v, [(0, K::one()), (2, two_u_minus_1)]);
            let den = LaurentPoly::from_terms(v, [(0, K::one()), (2, -K::one())]);
            RatFn::new(num, den)?
        }
    })
}

/// The chart variable as a rational function of `r`, where single-valued.
/// The `rho` chart has no rational inverse; see [`rho2_in_r`].
pub fn chart_in_r<K: CoeffField>(chart: Chart, ctx: &CCtx<K>) -> Result<RatFn<K>, GeomError> {
    let r = RatFn::<K>::var_elem(Var::R);
    Ok(match chart {
        Chart::R => r,
        Chart::S => &r - &RatFn::one(Var::R),
        Chart::X => r.invert().expect("nonzero"),
        Chart::T => {
            let w = ctx.require_w(chart)?;
            (&r - &RatFn::one(Var::R)).scale_k(&w)
        }
        Chart::Rho => {
            return Err(GeomError::InvalidParams(
                "rho is not a rational function of r; use rho2_in_r".into(),
            ))
        }
    })
}

/// `rho^2 = (r - 1)/(r - 1 + 2u)` as a function of `r`.
pub fn rho2_in_r<K: CoeffField>(ctx: &CCtx<K>) -> RatFn<K> {
    let num = LaurentPoly::from_terms(Var::R, [(0, -K::one()), (1, K::one())]);
    let den = LaurentPoly::from_terms(
        Var::R,
        [(0, ctx.u.clone() + ctx.u.clone() - K::one()), (1, K::one())],
    );
    RatFn::new(num, den).expect("nonzero denominator")
}

/// Squared Jacobian `(dr/dchart)^2` in the chart variable.
pub fn jacobian_sq<K: CoeffField>(chart: Chart, ctx: &CCtx<K>) -> Result<RatFn<K>, GeomError> {
    Ok(r_in_chart(chart, ctx)?.derivative().pow(2))
}

/// Transports a function of `r` to the chart.
pub fn to_chart<K: CoeffField>(
    f: &RatFn<K>,
    chart: Chart,
    ctx: &CCtx<K>,
) -> Result<RatFn<K>, GeomError> {
    if f.var() != Var::R {
        return Err(GeomError::ChartMismatch { expected: Var::R, found: f.var() });
    }
    if chart == Chart::R {
        return Ok(f.clone());
    }
    Ok(f.substitute(&r_in_chart(chart, ctx)?)?)
}

/// Transports a function of the chart variable back to `r`. Functions of
/// `rho` must be even; parity is checked exactly.
pub fn from_chart<K: CoeffField>(
    f: &RatFn<K>,
    chart: Chart,
    ctx: &CCtx<K>,
) -> Result<RatFn<K>, GeomError> {
    if f.var() != chart.var() {
        return Err(GeomError::ChartMismatch { expected: chart.var(), found: f.var() });
    }
    match chart {
        Chart::R => Ok(f.clone()),
        Chart::Rho => {
            let halves = f.compress_even()?;
            Ok(halves.substitute(&rho2_in_r(ctx))?)
        }
        _ => Ok(f.substitute(&chart_in_r(chart, ctx)?)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_i};

    fn sample() -> RatFn<Rat> {
        RatFn::new(
            LaurentPoly::from_ints(Var::R, 0, &[1, 0, 1]),
            LaurentPoly::from_ints(Var::R, 0, &[-2, 1]),
        )
        .unwrap()
    }

    #[test]
    fn rational_ctx_detects_square_c() {
        let ctx = CCtx::rational(rat(4, 9)).unwrap();
        assert_eq!(ctx.w, Some(rat(2, 3)));
        assert_eq!(ctx.u, rat(9, 4));
        assert!(CCtx::rational(rat(2, 1)).unwrap().w.is_none());
        assert!(CCtx::rational(rat(-1, 1)).is_err());
    }

    #[test]
    fn simple_charts_round_trip() {
        let f = sample();
        for chart in [Chart::S, Chart::X] {
            let ctx = CCtx::rational(rat_i(1)).unwrap();
            let g = to_chart(&f, chart, &ctx).unwrap();
            assert_eq!(from_chart(&g, chart, &ctx).unwrap(), f);
        }
    }

    #[test]
    fn zoom_chart_round_trips_with_square_c() {
        let ctx = CCtx::rational(rat_i(4)).unwrap();
        let f = sample();
        let g = to_chart(&f, Chart::T, &ctx).unwrap();
        assert_eq!(from_chart(&g, Chart::T, &ctx).unwrap(), f);
        let no_w = CCtx::rational(rat_i(2)).unwrap();
        assert!(matches!(
            to_chart(&f, Chart::T, &no_w),
            Err(GeomError::ChartNeedsSqrt { .. })
        ));
    }

    #[test]
    fn ball_chart_round_trips_through_squares() {
        let ctx = CCtx::rational(rat(1, 3)).unwrap();
        let f = sample();
        let g = to_chart(&f, Chart::Rho, &ctx).unwrap();
        assert!(g.is_even());
        assert_eq!(from_chart(&g, Chart::Rho, &ctx).unwrap(), f);
    }

    #[test]
    fn ball_jacobian_closed_form() {
        // dr/drho = 4 u rho / (1 - rho^2)^2
        let ctx = CCtx::<QU>::formal_u();
        let j = jacobian_sq(Chart::Rho, &ctx).unwrap();
        let u = QU::var_elem();
        let num = LaurentPoly::monomial(Var::RHO, 2, QU::from_int(16) * u.clone() * u);
        let den = LaurentPoly::from_terms(
            Var::RHO,
            [(0, QU::one()), (2, QU::from_int(-2)), (4, QU::one())],
        )
        .pow(2);
        assert_eq!(j, RatFn::new(num, den).unwrap());
    }

    #[test]
    fn ball_square_transition_matches_inverse() {
        // Substituting rho^2(r) into r(rho^2) returns r.
        let ctx = CCtx::<QU>::formal_u();
        let fwd = r_in_chart(Chart::Rho, &ctx).unwrap();
        let halves = fwd.compress_even().unwrap();
        let back = halves.substitute(&rho2_in_r(&ctx)).unwrap();
        assert_eq!(back, RatFn::var_elem(Var::R));
    }

    #[test]
    fn chart_names_parse() {
        for chart in Chart::ALL {
            assert_eq!(chart.to_string().parse::<Chart>().unwrap(), chart);
        }
        assert!("q".parse::<Chart>().is_err());
    }
}
