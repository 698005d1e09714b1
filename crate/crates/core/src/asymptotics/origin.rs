//! Smooth closure at the center of the ball.
//!
//! In the disk chart the metric coefficients, with the area factors
//! divided out of the sphere slots, must extend to even functions of the
//! radius with common flat value `4` at the origin. That is the exact
//! content of smoothness at the center, checked here as a statement about
//! series coefficients over `Q(u)` so one run covers every parameter
//! value at once.

use serde::Serialize;

use crate::error::GeomError;
use crate::exact::{CoeffField, ExpansionCenter, LaurentPoly, RatFn, Var, QU};
use crate::pagepope::{build_profile, CCtx, Chart};

/// Outcome of the center parity and flatness check.
#[derive(Debug, Clone, Serialize)]
pub struct OriginReport {
    pub n: u32,
    pub order: usize,
    /// Values of the three slots at the origin, as elements of `Q(u)`.
    pub constants: [String; 3],
    /// True when all three origin values equal `4`.
    pub constants_are_four: bool,
    /// True when every odd series coefficient vanishes identically.
    pub odd_zero: bool,
    /// Truncated series of the three slots, for display.
    pub series: [String; 3],
}

impl OriginReport {
    pub fn passed(&self) -> bool {
        self.constants_are_four && self.odd_zero
    }
}

/// Expands `alpha~^2`, `beta^2/rho^2`, `gamma^2/rho^2` at the origin of
/// the disk chart through `order`, over `Q(u)`.
pub fn origin_smoothness(n: u32, order: usize) -> Result<OriginReport, GeomError> {
    if order % 2 != 0 || order < 4 {
        return Err(GeomError::InvalidParams(format!(
            "series order must be even and at least 4, got {}",
            order
        )));
    }
    let ctx = CCtx::<QU>::formal_u();
    let profile = build_profile(n, &ctx, Chart::Rho)?;
    let rho_inv_sq =
        RatFn::from_poly(LaurentPoly::monomial(Var::RHO, -2, QU::one()));
    let slots = [
        profile.alpha2.clone(),
        profile.beta2.checked_mul(&rho_inv_sq)?,
        profile.gamma2.checked_mul(&rho_inv_sq)?,
    ];

    let four = QU::from_int(4);
    let mut constants = Vec::with_capacity(3);
    let mut series = Vec::with_capacity(3);
    let mut constants_are_four = true;
    let mut odd_zero = true;
    for slot in &slots {
        let s = slot.series(ExpansionCenter::Zero, order)?;
        constants_are_four &= s.coeff(0) == four;
        odd_zero &= s.odd_coeffs_vanish();
        constants.push(s.coeff(0).to_string());
        series.push(s.truncation().to_string());
    }
    Ok(OriginReport {
        n,
        order,
        constants: constants.try_into().expect("three slots"),
        constants_are_four,
        odd_zero,
        series: series.try_into().expect("three slots"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat_i;
    use crate::exact::Rat;

    #[test]
    fn rejects_odd_or_tiny_order() {
        assert!(origin_smoothness(2, 5).is_err());
        assert!(origin_smoothness(2, 2).is_err());
    }

    #[test]
    fn flat_even_origin_for_small_dimensions() {
        for n in 2..=6 {
            let report = origin_smoothness(n, 8).unwrap();
            assert!(report.constants_are_four, "n = {}", n);
            assert!(report.odd_zero, "n = {}", n);
            assert!(report.passed());
        }
    }

    #[test]
    fn hyperbolic_series_matches_geometric_square() {
        // At c = 1 every slot is 4/(1-x)^2 in x = rho^2, whose series is
        // 4 + 8x + 12x^2 + ...; the same coefficients must appear at the
        // even slots of the disk-chart series.
        let ctx = CCtx::rational(rat_i(1)).unwrap();
        let profile = build_profile(2, &ctx, Chart::Rho).unwrap();
        let s = profile
            .alpha2
            .series(ExpansionCenter::Zero, 6)
            .unwrap();
        let expect = [4, 0, 8, 0, 12, 0, 16];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(s.coeff(i), Rat::from_integer((*e).into()), "coeff {}", i);
        }
    }
}
