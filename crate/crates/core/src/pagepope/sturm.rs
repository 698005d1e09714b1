//! Exact real-root counting and the positivity gate for `P_n`.
//!
//! The metric coefficients are smooth and positive on the open ball exactly
//! when `P_n` has no root in `(1, infinity)`. Root counting uses a Sturm
//! chain over `Q`; the search window `(1, M]` comes from a Cauchy bound, so
//! no roots exist beyond it and the count on the window is the count on the
//! whole ray.

use num::Signed;
use serde::Serialize;

use crate::error::GeomError;
use crate::exact::rational::{rat_i, rat_to_f64};
use crate::exact::{CoeffField, LaurentPoly, Rat};
use crate::pagepope::qpoly::{p_poly, r_minus_1_pow};

/// Sturm chain of a squarefree-or-not polynomial; signs are preserved under
/// the scaling used to keep coefficients small.
pub fn sturm_chain(p: &LaurentPoly<Rat>) -> Vec<LaurentPoly<Rat>> {
    fn tame(p: LaurentPoly<Rat>) -> LaurentPoly<Rat> {
        if p.is_zero() {
            return p;
        }
        let scale = p.content().abs().recip();
        p.scale(&scale)
    }
    let mut chain = vec![tame(p.clone())];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(tame(d));
    loop {
        let k = chain.len();
        let (_, rem) = chain[k - 2].div_rem(&chain[k - 1]).expect("nonzero divisor");
        if rem.is_zero() {
            break;
        }
        chain.push(tame(-&rem));
    }
    chain
}

fn sign_changes_at(chain: &[LaurentPoly<Rat>], x: &Rat) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| {
            let v = p.eval(x).expect("honest polynomial");
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|s| *s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in `(a, b]`. Requires `p(a) != 0` and
/// `p(b) != 0`.
pub fn count_roots(p: &LaurentPoly<Rat>, a: &Rat, b: &Rat) -> Result<usize, GeomError> {
    if a >= b {
        return Err(GeomError::InvalidParams(format!("empty interval ({}, {}]", a, b)));
    }
    for (name, x) in [("left", a), ("right", b)] {
        if p.eval(x).expect("honest polynomial").is_zero() {
            return Err(GeomError::OutOfRange(format!(
                "{} endpoint {} is a root",
                name, x
            )));
        }
    }
    let chain = sturm_chain(p);
    let va = sign_changes_at(&chain, a);
    let vb = sign_changes_at(&chain, b);
    Ok(va.saturating_sub(vb))
}

/// `1 + max |a_i / a_d|`: every real root lies strictly inside `(-M, M)`.
pub fn cauchy_bound(p: &LaurentPoly<Rat>) -> Rat {
    let lead = p.leading_coeff().expect("nonzero polynomial").clone();
    let mut m = Rat::from_integer(0.into());
    let deg = p.degree().unwrap();
    for (e, c) in p.terms() {
        if e == deg {
            continue;
        }
        let q = (c.clone() / lead.clone()).abs();
        if q > m {
            m = q;
        }
    }
    m + rat_i(1)
}

/// Outcome of the root gate for one `(n, c)`.
#[derive(Debug, Clone, Serialize)]
pub struct RootGateReport {
    pub n: u32,
    pub c: String,
    /// Degree of `P_n/(r-1)^n`, the part that could vanish past the center.
    pub deflated_degree: i64,
    /// Right end of the search window from the Cauchy bound.
    pub window_end: f64,
    pub roots_in_window: usize,
    /// `P_n/(r-1)^n` at `r = 1` (equals `2^n/c`, positive).
    pub value_at_center: String,
    pub positive: bool,
}

/// Checks `P_n > 0` on `(1, infinity)` exactly.
pub fn positivity_gate(n: u32, c: &Rat) -> Result<RootGateReport, GeomError> {
    if !c.is_positive() {
        return Err(GeomError::InvalidParams(format!("c must be positive, got {}", c)));
    }
    let u = c.recip();
    positivity_gate_for(n, c, &p_poly::<Rat>(n, &u))
}

/// The same gate for an explicitly supplied structure polynomial. Besides
/// positivity past the center, this checks the `(r-1)^n` factor that makes
/// the metric close smoothly at `r = 1`; a polynomial with a shifted
/// integration constant fails here even though it still solves the
/// curvature equations away from the center.
pub fn positivity_gate_for(
    n: u32,
    c: &Rat,
    p: &LaurentPoly<Rat>,
) -> Result<RootGateReport, GeomError> {
    if !c.is_positive() {
        return Err(GeomError::InvalidParams(format!("c must be positive, got {}", c)));
    }
    let deflated = p
        .exact_div(&r_minus_1_pow(n))
        .map_err(|_| {
            GeomError::Construction(
                "center does not close: (r-1)^n does not divide the structure polynomial".into(),
            )
        })?;
    let one = rat_i(1);
    let value_at_center = deflated.eval(&one).expect("honest polynomial");
    let mut window_end = cauchy_bound(&deflated);
    if window_end <= one {
        window_end = rat_i(2);
    }
    let roots = count_roots(&deflated, &one, &window_end)?;
    let positive = roots == 0 && value_at_center.is_positive();
    if !positive {
        return Err(GeomError::RootInInterval { count: roots.max(1) });
    }
    Ok(RootGateReport {
        n,
        c: c.to_string(),
        deflated_degree: deflated.degree().unwrap_or(0),
        window_end: rat_to_f64(&window_end),
        roots_in_window: roots,
        value_at_center: value_at_center.to_string(),
        positive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::exact::Var;

    fn poly(coeffs: &[i64]) -> LaurentPoly<Rat> {
        LaurentPoly::from_ints(Var::R, 0, coeffs)
    }

    #[test]
    fn counts_known_roots() {
        // (r-2)(r-3)(r+1) = r^3 - 4r^2 + r + 6
        let p = poly(&[6, 1, -4, 1]);
        assert_eq!(count_roots(&p, &rat_i(1), &rat_i(4)).unwrap(), 2);
        assert_eq!(count_roots(&p, &rat(5, 2), &rat_i(10)).unwrap(), 1);
        assert_eq!(count_roots(&poly(&[1, 0, 1]), &rat_i(-5), &rat_i(5)).unwrap(), 0);
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (r-2)^2 (r-5)
        let p = poly(&[-20, 24, -9, 1]);
        assert_eq!(count_roots(&p, &rat_i(0), &rat_i(10)).unwrap(), 2);
    }

    #[test]
    fn root_endpoints_are_rejected() {
        let p = poly(&[-2, 1]);
        assert!(count_roots(&p, &rat_i(2), &rat_i(3)).is_err());
    }

    #[test]
    fn bound_contains_all_roots() {
        let p = poly(&[6, 1, -4, 1]);
        let m = cauchy_bound(&p);
        assert!(m >= rat_i(3));
    }

    #[test]
    fn gate_passes_across_the_family() {
        for n in 2..=6 {
            for c in [rat(1, 10), rat_i(1), rat_i(10), rat(355, 113)] {
                let report = positivity_gate(n, &c).unwrap();
                assert!(report.positive);
                assert_eq!(report.roots_in_window, 0);
            }
        }
    }

    #[test]
    fn gate_value_at_center_is_two_pow_n_over_c() {
        let report = positivity_gate(3, &rat(1, 4)).unwrap();
        assert_eq!(report.value_at_center, "32");
    }
}
