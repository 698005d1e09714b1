//! Regularity at the conformal boundary.
//!
//! After weighting by the defining-function powers, the three metric
//! coefficients extend analytically across infinity of the outer chart:
//! `r^2 alpha^2 -> 1`, `r^-2 beta^2 -> c^2`, `r^-2 gamma^2 -> c` as exact
//! series in `x = 1/r` over `Q(u)`. The squashing of the boundary sphere
//! is the ratio `beta^2/gamma^2 -> c`: the boundary circle over the base
//! is scaled by the parameter, which is the conformal-infinity data of
//! the family.

use serde::Serialize;

use crate::error::GeomError;
use crate::exact::{CoeffField, ExpansionCenter, Formal, LaurentPoly, RatFn, UParam, Var, QU};
use crate::pagepope::{build_profile, CCtx, Chart};

/// Outcome of the boundary regularity check.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryReport {
    pub n: u32,
    pub order: usize,
    /// Boundary values of the weighted slots, as elements of `Q(u)`.
    pub limits: [String; 3],
    /// True when the limits are `(1, c^2, c)`.
    pub limits_match: bool,
    /// Boundary value of `beta^2/gamma^2`.
    pub fiber_base_ratio: String,
    /// True when the ratio tends to `c`.
    pub ratio_is_c: bool,
    /// Truncated series in `x = 1/r`, for display.
    pub series: [String; 3],
}

impl BoundaryReport {
    pub fn passed(&self) -> bool {
        self.limits_match && self.ratio_is_c
    }
}

/// Expands `r^2 alpha^2`, `r^-2 beta^2`, `r^-2 gamma^2` at infinity of
/// the outer chart through `order`, over `Q(u)`.
pub fn boundary_compactification(n: u32, order: usize) -> Result<BoundaryReport, GeomError> {
    let ctx = CCtx::<QU>::formal_u();
    let profile = build_profile(n, &ctx, Chart::R)?;
    let r_sq = RatFn::from_poly(LaurentPoly::monomial(Var::R, 2, QU::one()));
    let r_inv_sq = RatFn::from_poly(LaurentPoly::monomial(Var::R, -2, QU::one()));
    let slots = [
        profile.alpha2.checked_mul(&r_sq)?,
        profile.beta2.checked_mul(&r_inv_sq)?,
        profile.gamma2.checked_mul(&r_inv_sq)?,
    ];

    let c = Formal::<UParam>::c_elem();
    let expected = [QU::one(), c.clone() * c.clone(), c.clone()];
    let mut limits = Vec::with_capacity(3);
    let mut series = Vec::with_capacity(3);
    let mut limits_match = true;
    for (slot, want) in slots.iter().zip(&expected) {
        let s = slot.series(ExpansionCenter::Infinity, order)?;
        limits_match &= s.coeff(0) == *want;
        limits.push(s.coeff(0).to_string());
        series.push(s.truncation().rev_exponents().rename(Var::X).to_string());
    }

    let ratio = profile.beta2.div(&profile.gamma2)?;
    let ratio_limit = ratio.series(ExpansionCenter::Infinity, 2)?.coeff(0);
    let ratio_is_c = ratio_limit == c;

    Ok(BoundaryReport {
        n,
        order,
        limits: limits.try_into().expect("three slots"),
        limits_match,
        fiber_base_ratio: ratio_limit.to_string(),
        ratio_is_c,
        series: series.try_into().expect("three slots"),
    })
}
