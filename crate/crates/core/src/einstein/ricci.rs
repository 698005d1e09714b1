//! Closed-form Ricci curvature of the ansatz in an orthonormal frame.
//!
//! The frame is `e0` along `dr`, `e1` along the fiber circle and
//! `e2..e_{2n-1}` along the base. By symmetry the Ricci endomorphism is
//! diagonal with three eigenvalues: radial, fiber, and base (the last with
//! multiplicity `2n-2`). All three are rational in `A = alpha^2`,
//! `B = beta^2`, `G = gamma^2` and their derivatives:
//!
//! with `L_F = F'/(2F)` and `F''/F |_frame = F''/(2F) - (F')^2/(4F^2)`,
//!
//! - radial = `(1/A)(-b'' + L_A L_B) + (2n-2)(1/A)(-g'' + L_A L_G)`
//! - fiber  = `(1/A)(-b'' + L_A L_B) + (2n-2)(-L_B L_G / A + B/G^2)`
//! - base   = `(1/A)(-g'' + L_A L_G - L_B L_G - (2n-3) L_G^2) - 2B/G^2 + 2n/G`
//!
//! where `b'' = beta''/beta`, `g'' = gamma''/gamma`, the `B/G^2` terms are
//! the fibration obstruction and `2n/G` carries the base curvature.

use crate::error::GeomError;
use crate::exact::rational::rat;
use crate::exact::{CoeffField, Rat, RatFn, Var};
use crate::pagepope::chart::Chart;
use crate::pagepope::profile::MetricProfile;

/// The target constant `-(2n-1)` of the Einstein condition.
pub fn einstein_constant(n: u32) -> i64 {
    -(2 * n as i64 - 1)
}

/// The three Ricci eigenvalues as exact rational functions of `r`.
#[derive(Debug, Clone)]
pub struct RicciDiagonal<K: CoeffField> {
    pub n: u32,
    pub radial: RatFn<K>,
    pub fiber: RatFn<K>,
    pub base: RatFn<K>,
}

fn log_half<K: CoeffField>(f: &RatFn<K>) -> Result<RatFn<K>, GeomError> {
    // F'/(2F)
    Ok(f.derivative().div(f)?.scale_k(&K::from_rat(rat(1, 2))))
}

fn frame_second<K: CoeffField>(f: &RatFn<K>) -> Result<RatFn<K>, GeomError> {
    // F''/(2F) - (F')^2/(4F^2), i.e. sqrt(F)''/sqrt(F)
    let fp = f.derivative();
    let a = fp.derivative().div(f)?.scale_k(&K::from_rat(rat(1, 2)));
    let b = fp.pow(2).div(&f.pow(2))?.scale_k(&K::from_rat(rat(1, 4)));
    Ok(&a - &b)
}

pub fn ricci_diagonal<K: CoeffField>(
    profile: &MetricProfile<K>,
) -> Result<RicciDiagonal<K>, GeomError> {
    if profile.chart != Chart::R {
        return Err(GeomError::ChartMismatch {
            expected: Var::R,
            found: profile.chart.var(),
        });
    }
    let n = profile.n;
    let m = K::from_int(2 * n as i64 - 2);
    let (a, b, g) = (&profile.alpha2, &profile.beta2, &profile.gamma2);
    let ainv = a.invert()?;
    let la = log_half(a)?;
    let lb = log_half(b)?;
    let lg = log_half(g)?;
    let bdd = frame_second(b)?;
    let gdd = frame_second(g)?;
    let obstruction = b.div(&g.pow(2))?;

    let radial_fiber_shared = ainv.checked_mul(&(&la.checked_mul(&lb)? - &bdd))?;
    let radial_base = ainv.checked_mul(&(&la.checked_mul(&lg)? - &gdd))?;
    let radial = &radial_fiber_shared + &radial_base.scale_k(&m);

    let fiber_mixed = &obstruction - &ainv.checked_mul(&lb.checked_mul(&lg)?)?;
    let fiber = &radial_fiber_shared + &fiber_mixed.scale_k(&m);

    let base_bracket = &(&la.checked_mul(&lg)? - &gdd)
        - &(&lb.checked_mul(&lg)? + &lg.pow(2).scale_k(&K::from_int(2 * n as i64 - 3)));
    let base = &(&ainv.checked_mul(&base_bracket)?
        - &obstruction.scale_k(&K::from_int(2)))
        + &g.invert()?.scale_k(&K::from_int(2 * n as i64));

    Ok(RicciDiagonal { n, radial, fiber, base })
}

impl<K: CoeffField> RicciDiagonal<K> {
    pub fn eigenvalues(&self) -> [&RatFn<K>; 3] {
        [&self.radial, &self.fiber, &self.base]
    }

    /// Whether all three eigenvalues are identically `-(2n-1)`.
    pub fn is_einstein(&self) -> bool {
        let target = RatFn::from_int(Var::R, einstein_constant(self.n));
        self.eigenvalues().into_iter().all(|e| *e == target)
    }
}

impl RicciDiagonal<Rat> {
    /// Exact evaluation of the three eigenvalues at a radius.
    pub fn eval(&self, r: &Rat) -> Result<[Rat; 3], GeomError> {
        Ok([self.radial.eval(r)?, self.fiber.eval(r)?, self.base.eval(r)?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_i};
    use crate::exact::QU;
    use crate::pagepope::chart::CCtx;
    use crate::pagepope::profile::{build_profile, build_profile_perturbed, Perturbation};

    #[test]
    fn diagonal_is_constant_einstein_formally() {
        let ctx = CCtx::<QU>::formal_u();
        for n in [2, 3] {
            let pr = build_profile(n, &ctx, Chart::R).unwrap();
            let ric = ricci_diagonal(&pr).unwrap();
            assert!(ric.is_einstein());
        }
    }

    #[test]
    fn diagonal_is_constant_einstein_at_rational_c() {
        for (n, c) in [(2u32, rat(1, 3)), (4, rat_i(9)), (5, rat(22, 7))] {
            let ctx = CCtx::rational(c).unwrap();
            let pr = build_profile(n, &ctx, Chart::R).unwrap();
            let ric = ricci_diagonal(&pr).unwrap();
            assert!(ric.is_einstein());
            let vals = ric.eval(&rat(17, 10)).unwrap();
            for v in vals {
                assert_eq!(v, rat_i(einstein_constant(n)));
            }
        }
    }

    #[test]
    fn perturbed_profiles_are_not_einstein() {
        let ctx = CCtx::rational(rat_i(2)).unwrap();
        for p in [Perturbation::GammaPlusR, Perturbation::BetaTimesTwo] {
            let pr = build_profile_perturbed(2, &ctx, Chart::R, Some(p)).unwrap();
            let ric = ricci_diagonal(&pr).unwrap();
            assert!(!ric.is_einstein(), "{} undetected", p);
        }
    }

    #[test]
    fn integration_constant_shift_stays_locally_einstein() {
        // The shifted structure polynomial still solves the curvature
        // equations away from the center, so the diagonal stays at the
        // Einstein constant; only the center gate can reject this profile.
        let ctx = CCtx::rational(rat_i(2)).unwrap();
        let pr =
            build_profile_perturbed(2, &ctx, Chart::R, Some(Perturbation::PPlusR)).unwrap();
        let ric = ricci_diagonal(&pr).unwrap();
        assert!(ric.is_einstein());
    }
}
