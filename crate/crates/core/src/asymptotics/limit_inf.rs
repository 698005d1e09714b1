//! Large-parameter limit onto the complex-hyperbolic metric.
//!
//! As the parameter grows, the disk-chart coefficients converge to a fixed
//! triple of rational functions. A further substitution of the radial
//! coordinate turns that triple into a constant multiple of the standard
//! complex-hyperbolic ball metric; the multiple is `(n+1)/(2n-1)`. The
//! exact statements here are coefficientwise identities of rational
//! functions; the numeric statement is a sup-norm table whose rows decay
//! at the first-order rate in the inverse parameter.

use serde::Serialize;

use crate::asymptotics::table::{
    derivative_ladder, sup_abs_on_grid, ConvergenceRow, ConvergenceTable,
};
use crate::asymptotics::LimitConstants;
use crate::error::GeomError;
use crate::exact::rational::{rat_i, rat_pow, rat_to_f64};
use crate::exact::{
    formal_limit_at_zero, CoeffField, LaurentPoly, Rat, RatFn, Var, QU,
};
use crate::pagepope::{build_profile, p_poly, CCtx, Chart};

/// `1 - rho^2` as a polynomial.
fn one_minus_rho2<K: CoeffField>() -> LaurentPoly<K> {
    LaurentPoly::from_terms(Var::RHO, [(0, K::one()), (2, -K::one())])
}

/// `1 + a rho^2` as a polynomial.
fn one_plus_scaled_rho2(a: &Rat) -> LaurentPoly<Rat> {
    LaurentPoly::from_terms(Var::RHO, [(0, Rat::from_integer(1.into())), (2, a.clone())])
}

/// The limiting coefficient triple in the disk chart:
/// `4/((1-rho^2)^2 (1+a rho^2))`, `4 rho^2 (1+a rho^2)/(1-rho^2)^2`,
/// `4 rho^2/(1-rho^2)` with `a = 3(n-1)/(n+1)`.
pub fn g_infinity_triple(n: u32) -> Result<[RatFn<Rat>; 3], GeomError> {
    let a = LimitConstants::new(n)?.a_n;
    let four = LaurentPoly::constant(Var::RHO, rat_i(4));
    let four_rho2 = LaurentPoly::monomial(Var::RHO, 2, rat_i(4));
    let d = one_minus_rho2::<Rat>();
    let squash = one_plus_scaled_rho2(&a);
    Ok([
        RatFn::new(four, &d.pow(2) * &squash)?,
        RatFn::new(&four_rho2 * &squash, d.pow(2))?,
        RatFn::new(four_rho2, d)?,
    ])
}

/// The complex-hyperbolic ball metric pulled back through the radial
/// substitution `y = (1+a) rho^2 / (1+a rho^2)` (the square of the new
/// radius). Slot order matches the profile: radial, fiber, base.
pub fn ch_pullback_triple(n: u32) -> Result<[RatFn<Rat>; 3], GeomError> {
    let a = LimitConstants::new(n)?.a_n;
    let one_plus_a = LaurentPoly::monomial(Var::RHO, 2, &a + &rat_i(1));
    let y = RatFn::new(one_plus_a, one_plus_scaled_rho2(&a))?;
    let one = RatFn::one(Var::RHO);
    let two = RatFn::from_int(Var::RHO, 2);
    let one_minus_y = one.checked_sub(&y)?;
    let dy = y.derivative();
    // Radial slot (dy)^2 / (2 y (1-y)^2): the radial part dy~^2/...
    // written through y = rho~^2, dy~ = dy / (2 rho~).
    let radial = dy.pow(2).div(
        &two.checked_mul(&y)?.checked_mul(&one_minus_y.pow(2))?,
    )?;
    let fiber = two.checked_mul(&y)?.div(&one_minus_y.pow(2))?;
    let base = two.checked_mul(&y)?.div(&one_minus_y)?;
    Ok([radial, fiber, base])
}

/// Exact content of the large-parameter theorem.
#[derive(Debug, Clone, Serialize)]
pub struct NormalizationReport {
    pub n: u32,
    /// The normalization constant `(n+1)/(2n-1)`.
    pub scale: String,
    /// True when the limit triple equals `scale` times the pulled-back
    /// complex-hyperbolic triple, slot by slot.
    pub identity_holds: bool,
    /// True when the formal limit of the profile at infinite parameter is
    /// the limit triple.
    pub limit_matches: bool,
    /// True when the deviation is exactly one order in the inverse
    /// parameter (finite after dividing once).
    pub deviation_order_one: bool,
}

impl NormalizationReport {
    pub fn passed(&self) -> bool {
        self.identity_holds && self.limit_matches && self.deviation_order_one
    }
}

/// Verifies the two exact halves of the large-parameter limit: the
/// profile tends to the limit triple at first order, and the limit triple
/// is the normalized complex-hyperbolic metric.
pub fn normalization_identity(n: u32) -> Result<NormalizationReport, GeomError> {
    let constants = LimitConstants::new(n)?;
    let g_inf = g_infinity_triple(n)?;
    let pullback = ch_pullback_triple(n)?;
    let identity_holds = g_inf
        .iter()
        .zip(&pullback)
        .all(|(lhs, rhs)| *lhs == rhs.scale_k(&constants.scale));
    let (limit_matches, deviation_order_one) = profile_limit_at_infinity_matches(n)?;
    Ok(NormalizationReport {
        n,
        scale: constants.scale.to_string(),
        identity_holds,
        limit_matches,
        deviation_order_one,
    })
}

/// Returns (limit matches, deviation is first order): the disk-chart
/// profile over `Q(u)` tends to the limit triple as `u -> 0`, and each
/// deviation divided by `u` stays finite there.
pub fn profile_limit_at_infinity_matches(n: u32) -> Result<(bool, bool), GeomError> {
    let ctx = CCtx::<QU>::formal_u();
    let profile = build_profile(n, &ctx, Chart::Rho)?;
    let g_inf = g_infinity_triple(n)?;
    let u_inv = QU::var_pow(-1);
    let mut matches = true;
    let mut order_one = true;
    for (slot, limit) in profile.components().iter().zip(&g_inf) {
        let lifted = limit.map_coeffs(|k| Ok(QU::from_rat(k.clone())))?;
        let dev = slot.checked_sub(&lifted)?;
        matches &= formal_limit_at_zero(&dev)?.is_zero();
        order_one &= formal_limit_at_zero(&dev.scale_k(&u_inv)).is_ok();
    }
    Ok((matches, order_one))
}

/// Outcome of the structure-polynomial leading-slice check.
#[derive(Debug, Clone, Serialize)]
pub struct PLeadingReport {
    pub n: u32,
    /// True when the top slice in the inverse parameter matches
    /// `4^n rho^{2n} (1+a rho^2) / (1-rho^2)^{n+1}`.
    pub slice_matches: bool,
    /// Both sides evaluated at `rho = 1/2`, equal when the slice matches.
    pub value_at_half: [String; 2],
    /// Display form of the closed slice.
    pub formula: String,
}

impl PLeadingReport {
    pub fn passed(&self) -> bool {
        self.slice_matches
    }
}

/// The structure polynomial in the disk chart as an exact fraction
/// `N / (1-rho^2)^{2n}` with the numerator kept as a polynomial over
/// `Q(u)` in `rho`, so slices in the parameter can be read off without
/// any cancellation against the denominator.
pub(crate) fn p_ball_parts(n: u32) -> Result<(LaurentPoly<QU>, LaurentPoly<QU>), GeomError> {
    let p = p_poly::<QU>(n, &QU::var_elem());
    // r = A/D with A = 1 + (2u-1) rho^2 and D = 1 - rho^2.
    let a = LaurentPoly::from_terms(
        Var::RHO,
        [
            (0, QU::one()),
            (2, QU::var_pow(1) + QU::var_pow(1) - QU::one()),
        ],
    );
    let d = one_minus_rho2::<QU>();
    let deg = p.degree().expect("structure polynomial is nonzero") as u32;
    let mut num = LaurentPoly::zero(Var::RHO);
    for (e, k) in p.terms() {
        let e = e as u32;
        let term = &(&a.pow(e) * &d.pow(deg - e)).scale(k);
        num = &num + term;
    }
    Ok((num, d.pow(deg)))
}

/// Extracts the coefficient of the `(n+1)`-st power of the inverse
/// parameter from the structure polynomial in the disk chart and compares
/// it with the closed form that drives the large-parameter limit.
pub fn extract_p_leading(n: u32) -> Result<PLeadingReport, GeomError> {
    let constants = LimitConstants::new(n)?;
    let (num, den) = p_ball_parts(n)?;
    let slice_of = |p: &LaurentPoly<QU>, power: usize| -> Result<LaurentPoly<Rat>, GeomError> {
        Ok(p.map_coeffs(|k| {
            Ok(k.poly_coeffs()?.get(power).cloned().unwrap_or_else(Rat::zero))
        })?)
    };
    let power = n as usize + 1;
    let num_slice = slice_of(&num, power)?;
    let den_stays = slice_of(&den, 0)?;
    let lhs = RatFn::new(num_slice, den_stays)?;

    let closed_num = LaurentPoly::monomial(Var::RHO, 2 * n as i64, rat_pow(&rat_i(4), n as i64))
        .checked_mul(&one_plus_scaled_rho2(&constants.a_n))?;
    let rhs = RatFn::new(closed_num, one_minus_rho2::<Rat>().pow(n + 1))?;

    let half = crate::exact::rational::rat(1, 2);
    let value_at_half = [
        lhs.eval(&half)?.to_string(),
        rhs.eval(&half)?.to_string(),
    ];
    Ok(PLeadingReport {
        n,
        slice_matches: lhs == rhs,
        value_at_half,
        formula: rhs.to_string(),
    })
}

/// Sup-norm tables of the deviation from the limit triple over a disk
/// grid, one table per derivative order `0 ..= max_deriv`.
pub fn convergence_table_infinity(
    n: u32,
    grid: &[f64],
    c_list: &[Rat],
    max_deriv: u32,
) -> Result<Vec<ConvergenceTable>, GeomError> {
    if grid.is_empty() || c_list.is_empty() {
        return Err(GeomError::InvalidParams(
            "need at least one grid point and one parameter value".into(),
        ));
    }
    if grid.iter().any(|&x| x <= 0.0 || x >= 1.0) {
        return Err(GeomError::OutOfRange(
            "disk grid must stay strictly between 0 and 1".into(),
        ));
    }
    let ctx = CCtx::<QU>::formal_u();
    let profile = build_profile(n, &ctx, Chart::Rho)?;
    let g_inf = g_infinity_triple(n)?;
    let mut ladders = Vec::with_capacity(3);
    for (slot, limit) in profile.components().iter().zip(&g_inf) {
        let lifted = limit.map_coeffs(|k| Ok(QU::from_rat(k.clone())))?;
        let dev = slot.checked_sub(&lifted)?;
        ladders.push(derivative_ladder(&dev, max_deriv));
    }
    let tables = (0..=max_deriv)
        .map(|order| {
            let rows = c_list
                .iter()
                .map(|c| {
                    let cf = rat_to_f64(c);
                    ConvergenceRow {
                        c: c.to_string(),
                        sup_alpha: sup_abs_on_grid(&ladders[0][order as usize], grid, cf),
                        sup_beta_or_fiber: sup_abs_on_grid(&ladders[1][order as usize], grid, cf),
                        sup_gamma: sup_abs_on_grid(&ladders[2][order as usize], grid, cf),
                    }
                })
                .collect();
            ConvergenceTable {
                kind: "deviation from the large-parameter limit".into(),
                derivative_order: order,
                rows,
            }
        })
        .collect();
    Ok(tables)
}
