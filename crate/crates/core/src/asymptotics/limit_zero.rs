//! Small-parameter collapse onto a cone over the base.
//!
//! In the rescaled chart `r = 1 + t/sqrt(c)` the structure polynomial,
//! cleared of its parameter powers, splits into a parameter-free leading
//! part `t^{2n} + b_n t^{2n-2}` plus `sqrt(c)` times a polynomial
//! remainder. That exact split drives everything else in this module: the
//! radial and base coefficients converge to `1/(t^2+b_n)` and `t^2`, the
//! fiber length shrinks like `sqrt(c)`, and the fiber circles collapse.

use std::f64::consts::PI;

use num::Signed;
use serde::Serialize;

use crate::asymptotics::table::{
    derivative_ladder, sup_abs_on_grid, ConvergenceRow, ConvergenceTable,
};
use crate::asymptotics::LimitConstants;
use crate::error::{AlgebraError, GeomError};
use crate::exact::rational::{rat_i, rat_pow, rat_to_f64};
use crate::exact::{
    formal_limit_at_zero, CoeffField, Formal, LaurentPoly, Rat, RatFn, Var, WParam, QW,
};
use crate::pagepope::{build_profile, p_poly, to_chart, CCtx, Chart};

/// Exact split of the rescaled structure polynomial.
pub struct CollapseDecomposition {
    pub n: u32,
    /// The parameter-free part, expected `t^{2n} + b_n t^{2n-2}`.
    pub leading: LaurentPoly<Rat>,
    /// The remainder after one factor of `sqrt(c)` is pulled out.
    pub psi: LaurentPoly<QW>,
    /// True when the leading part matches the expected binomial.
    pub leading_matches: bool,
    /// True when the remainder is polynomial in `sqrt(c)`.
    pub psi_polynomial: bool,
    /// Limit of `beta^2 / c`, expected `t^2 + b_n`; its square root is
    /// the first-order fiber length per unit `sqrt(c)`.
    pub fiber_rate: RatFn<Rat>,
    /// True when the fiber rate matches `t^2 + b_n`.
    pub fiber_rate_matches: bool,
}

impl CollapseDecomposition {
    pub fn passed(&self) -> bool {
        self.leading_matches && self.psi_polynomial && self.fiber_rate_matches
    }
}

/// Splits `P(1 + t w^{-1}) w^{2n}` over `Q(w)` into its value at `w = 0`
/// plus `w` times a polynomial remainder, and extracts the exact
/// first-order rate of the fiber length.
pub fn collapse_decomposition(n: u32) -> Result<CollapseDecomposition, GeomError> {
    let constants = LimitConstants::new(n)?;
    let ctx = CCtx::<QW>::formal_w();
    let p = RatFn::from_poly(p_poly::<QW>(n, &ctx.u));
    let rescaled = to_chart(&p, Chart::T, &ctx)?.scale_k(&QW::var_pow(2 * n as i64));
    if !rescaled.den().is_one() {
        return Err(GeomError::Construction(
            "rescaled structure polynomial is not polynomial in t".into(),
        ));
    }
    let num = rescaled.num();

    let leading = num.map_coeffs(|k| {
        k.value_at_zero()
            .ok_or(AlgebraError::FormalPole { var: Var::W })
    })?;
    let expected = LaurentPoly::from_terms(
        Var::T,
        [
            (2 * n as i64, Rat::from_integer(1.into())),
            (2 * n as i64 - 2, constants.b_n.clone()),
        ],
    );
    let leading_matches = leading == expected;

    let lifted = leading.map_coeffs(|k| Ok(QW::from_rat(k.clone())))?;
    let remainder = num.checked_sub(&lifted)?;
    let w_inv = Formal::<WParam>::var_pow(-1);
    let psi = remainder.map_coeffs(|k| Ok(k.clone() * w_inv.clone()))?;
    let psi_polynomial = psi
        .terms()
        .all(|(_, k)| k.poly_coeffs().is_ok());

    let profile = build_profile(n, &ctx, Chart::T)?;
    let fiber_rate =
        formal_limit_at_zero(&profile.beta2.scale_k(&QW::var_pow(-2)))?;
    let expected_rate = RatFn::from_poly(LaurentPoly::from_terms(
        Var::T,
        [(2, Rat::from_integer(1.into())), (0, constants.b_n.clone())],
    ));
    let fiber_rate_matches = fiber_rate == expected_rate;

    Ok(CollapseDecomposition {
        n,
        leading,
        psi,
        leading_matches,
        psi_polynomial,
        fiber_rate,
        fiber_rate_matches,
    })
}

/// The collapsed limit triple `(1/(t^2+b_n), 0, t^2)`; the zero marks the
/// direction whose circles shrink away.
pub fn g_zero_triple(n: u32) -> Result<[RatFn<Rat>; 3], GeomError> {
    let b = LimitConstants::new(n)?.b_n;
    let den = LaurentPoly::from_terms(
        Var::T,
        [(2, Rat::from_integer(1.into())), (0, b)],
    );
    Ok([
        RatFn::new(LaurentPoly::one(Var::T), den)?,
        RatFn::zero(Var::T),
        RatFn::from_poly(LaurentPoly::monomial(Var::T, 2, rat_i(1))),
    ])
}

/// Returns (limits match, deviations have the expected order): the
/// rescaled profile over `Q(w)` tends to the collapsed triple as
/// `w -> 0`; the radial and base deviations are first order in `w` and
/// the fiber coefficient is second order.
pub fn profile_collapse_limit_matches(n: u32) -> Result<(bool, bool), GeomError> {
    let ctx = CCtx::<QW>::formal_w();
    let profile = build_profile(n, &ctx, Chart::T)?;
    let g_zero = g_zero_triple(n)?;
    let mut matches = true;
    let mut order_ok = true;
    let orders = [1_i64, 2, 1];
    for ((slot, limit), w_order) in profile.components().iter().zip(&g_zero).zip(orders) {
        let lifted = limit.map_coeffs(|k| Ok(QW::from_rat(k.clone())))?;
        let dev = slot.checked_sub(&lifted)?;
        matches &= formal_limit_at_zero(&dev)?.is_zero();
        order_ok &=
            formal_limit_at_zero(&dev.scale_k(&QW::var_pow(-w_order))).is_ok();
    }
    Ok((matches, order_ok))
}

/// Sup-norm tables for the collapse, one per derivative order. The outer
/// columns report the deviation of the radial and base coefficients from
/// the collapsed triple on `[r1, r2]`; the middle column always reports
/// the sup of the fiber diameter `pi beta` on a geometric grid in
/// `(0, big_r]`, independent of the derivative order.
pub fn convergence_table_zero(
    n: u32,
    r1: f64,
    r2: f64,
    big_r: f64,
    grid_points: usize,
    c_list: &[Rat],
    max_deriv: u32,
) -> Result<Vec<ConvergenceTable>, GeomError> {
    if !(r1 > 0.0 && r2 > r1 && big_r > 0.0) {
        return Err(GeomError::InvalidParams(format!(
            "need 0 < r1 < r2 and big_r > 0, got r1 = {}, r2 = {}, big_r = {}",
            r1, r2, big_r
        )));
    }
    if c_list.is_empty() {
        return Err(GeomError::InvalidParams(
            "need at least one parameter value".into(),
        ));
    }
    let base_grid = crate::asymptotics::table::uniform_grid(r1, r2, grid_points.max(2))?;
    let fiber_grid = crate::asymptotics::table::geometric_grid(big_r, 2.0, grid_points.max(2))?;

    let ctx = CCtx::<QW>::formal_w();
    let profile = build_profile(n, &ctx, Chart::T)?;
    let g_zero = g_zero_triple(n)?;
    let lift = |f: &RatFn<Rat>| f.map_coeffs(|k| Ok(QW::from_rat(k.clone())));
    let alpha_dev = profile.alpha2.checked_sub(&lift(&g_zero[0])?)?;
    let gamma_dev = profile.gamma2.checked_sub(&lift(&g_zero[2])?)?;
    let alpha_ladder = derivative_ladder(&alpha_dev, max_deriv);
    let gamma_ladder = derivative_ladder(&gamma_dev, max_deriv);

    let fiber_sup = |c: f64| -> f64 {
        fiber_grid
            .iter()
            .map(|&t| PI * profile.beta2.eval_f64(t, c).max(0.0).sqrt())
            .fold(0.0_f64, f64::max)
    };

    let tables = (0..=max_deriv)
        .map(|order| {
            let rows = c_list
                .iter()
                .map(|c| {
                    let cf = rat_to_f64(c);
                    ConvergenceRow {
                        c: c.to_string(),
                        sup_alpha: sup_abs_on_grid(&alpha_ladder[order as usize], &base_grid, cf),
                        sup_beta_or_fiber: fiber_sup(cf),
                        sup_gamma: sup_abs_on_grid(&gamma_ladder[order as usize], &base_grid, cf),
                    }
                })
                .collect();
            ConvergenceTable {
                kind: "deviation from the collapsed limit, fiber diameter in the middle column"
                    .into(),
                derivative_order: order,
                rows,
            }
        })
        .collect();
    Ok(tables)
}

/// One exact sup bound for a monomial against the fiber denominator.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCertificate {
    pub n: u32,
    pub k: i64,
    /// The bound `2^{k-2(n-1)}` on `s^k / (s^2+2s)^{n-1}` for `s > 0`.
    pub bound: String,
    /// True when `bound * (s^2+2s)^{n-1} - s^k` has only nonnegative
    /// coefficients, which proves the bound on the whole half line.
    pub nonnegative_combination: bool,
    /// Ratio and bound evaluated at `s = 2`, an interior spot check.
    pub value_at_two: [String; 2],
    /// True when the ratio stays below the bound on a sample grid.
    pub grid_ok: bool,
}

impl BoundCertificate {
    pub fn passed(&self) -> bool {
        self.nonnegative_combination && self.grid_ok
    }
}

/// Certifies `s^k / (s^2+2s)^{n-1} <= 2^{k-2(n-1)}` on `s > 0` for every
/// monomial degree `k` between `n-1` and `2(n-1)`. These bound the
/// fiber coefficient uniformly on bounded sets for small parameter.
pub fn fiber_bound_certificates(n: u32) -> Result<Vec<BoundCertificate>, GeomError> {
    if n < 2 {
        return Err(GeomError::InvalidParams(format!(
            "need n >= 2, got n = {}",
            n
        )));
    }
    let m = n as i64 - 1;
    let base = LaurentPoly::from_ints(Var::S, 1, &[2, 1]).pow(n - 1);
    let mut certs = Vec::new();
    for k in m..=2 * m {
        let bound = rat_pow(&rat_i(2), k - 2 * m);
        let diff = base
            .scale(&bound)
            .checked_sub(&LaurentPoly::monomial(Var::S, k, rat_i(1)))?;
        let nonnegative_combination =
            diff.terms().all(|(_, c)| !c.is_negative());

        let two = rat_i(2);
        let ratio_at_two = rat_pow(&two, k)
            / rat_pow(&rat_i(8), m);
        let grid_ok = (1..=40).all(|i| {
            let s = 0.25 * i as f64;
            let ratio = s.powi(k as i32) / (s * s + 2.0 * s).powi(m as i32);
            ratio <= rat_to_f64(&bound) + 1e-12
        });
        certs.push(BoundCertificate {
            n,
            k,
            bound: bound.to_string(),
            nonnegative_combination,
            value_at_two: [ratio_at_two.to_string(), bound.to_string()],
            grid_ok,
        });
    }
    Ok(certs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn decomposition_small_dimensions() {
        for n in 2..=6 {
            let d = collapse_decomposition(n).unwrap();
            assert!(d.leading_matches, "n = {}", n);
            assert!(d.psi_polynomial, "n = {}", n);
            assert!(d.fiber_rate_matches, "n = {}", n);
            assert!(d.passed());
        }
    }

    #[test]
    fn four_dimensional_split_is_explicit() {
        // P(1 + t/w) w^4 = t^4 + 4 t^2 + 4 w t^3.
        let d = collapse_decomposition(2).unwrap();
        assert_eq!(d.leading, LaurentPoly::from_ints(Var::T, 2, &[4, 0, 1]));
        let psi_expected =
            LaurentPoly::monomial(Var::T, 3, QW::from_int(4));
        assert_eq!(d.psi, psi_expected);
    }

    #[test]
    fn collapsed_triple_for_n3() {
        let g = g_zero_triple(3).unwrap();
        let expect_alpha = RatFn::new(
            LaurentPoly::one(Var::T),
            LaurentPoly::from_ints(Var::T, 0, &[2, 0, 1]),
        )
        .unwrap();
        assert_eq!(g[0], expect_alpha);
        assert!(g[1].is_zero());
        assert_eq!(g[2], RatFn::from_poly(LaurentPoly::monomial(Var::T, 2, rat_i(1))));
    }

    #[test]
    fn rescaled_profile_collapses_small_dimensions() {
        for n in 2..=6 {
            let (matches, order_ok) = profile_collapse_limit_matches(n).unwrap();
            assert!(matches, "n = {}", n);
            assert!(order_ok, "n = {}", n);
        }
    }

    #[test]
    fn collapse_table_shrinks_like_sqrt_c() {
        let c_list: Vec<Rat> = (1..=4).map(|k| rat_pow(&rat_i(10), -k)).collect();
        let tables = convergence_table_zero(2, 0.5, 2.0, 5.0, 30, &c_list, 2).unwrap();
        assert_eq!(tables.len(), 3);
        for table in &tables {
            assert!(table.strictly_decreasing(), "order {}", table.derivative_order);
        }
        for ratios in tables[0].decay_ratios() {
            let fiber_ratio = ratios[1];
            assert!(
                fiber_ratio > 2.0 && fiber_ratio < 5.0,
                "fiber per-decade ratio {}",
                fiber_ratio
            );
        }
    }

    #[test]
    fn invalid_ranges_are_rejected() {
        let cs = [rat(1, 10)];
        assert!(convergence_table_zero(2, -1.0, 2.0, 5.0, 10, &cs, 0).is_err());
        assert!(convergence_table_zero(2, 2.0, 0.5, 5.0, 10, &cs, 0).is_err());
        assert!(convergence_table_zero(2, 0.5, 2.0, 0.0, 10, &cs, 0).is_err());
        assert!(convergence_table_zero(2, 0.5, 2.0, 5.0, 10, &[], 0).is_err());
    }

    #[test]
    fn monomial_bounds_small_dimensions() {
        for n in 2..=6 {
            for cert in fiber_bound_certificates(n).unwrap() {
                assert!(cert.nonnegative_combination, "n = {} k = {}", cert.n, cert.k);
                assert!(cert.grid_ok, "n = {} k = {}", cert.n, cert.k);
                assert!(cert.passed());
            }
        }
    }

    #[test]
    fn six_dimensional_bounds_match_the_known_values() {
        let certs = fiber_bound_certificates(3).unwrap();
        let bounds: Vec<&str> = certs.iter().map(|c| c.bound.as_str()).collect();
        assert_eq!(bounds, ["1/4", "1/2", "1"]);
        for cert in &certs {
            // Strict at the interior point s = 2.
            let ratio: f64 = rat_to_f64(&cert.value_at_two[0].parse().unwrap());
            let bound: f64 = rat_to_f64(&cert.value_at_two[1].parse().unwrap());
            assert!(ratio < bound);
        }
    }
}
