//! The structure polynomials `Q_k` and `P_n`.
//!
//! `Q_k(r) = r * int_1^r t^-2 (t^2-1)^k dt` is a polynomial of degree `2k`
//! divisible by `(r-1)^{k+1}`, and
//! `P_n = (2n-1) Q_n + 2n u Q_{n-1}` with `u = 1/c` drives every metric
//! coefficient. `P_n` satisfies the first-order equation
//! `(r^-1 P_n)' = 2n u r^-2 (r^2-1)^{n-1} + (2n-1) r^-2 (r^2-1)^n`.

use crate::error::AlgebraError;
use crate::exact::rational::rat_i;
use crate::exact::{CoeffField, LaurentPoly, Rat, RatFn, Var};

/// `(r^2 - 1)^k` as a polynomial in `r`.
pub fn r2_minus_1_pow(k: u32) -> LaurentPoly<Rat> {
    LaurentPoly::from_ints(Var::R, 0, &[-1, 0, 1]).pow(k)
}

/// `(r - 1)^k` as a polynomial in `r`.
pub fn r_minus_1_pow(k: u32) -> LaurentPoly<Rat> {
    LaurentPoly::from_ints(Var::R, 0, &[-1, 1]).pow(k)
}

/// `Q_k` via its integral definition; degree `2k`, with
/// `Q_k(1) = Q_k'(1) = 0` and `Q_k'' = 2k (r^2-1)^{k-1}`.
pub fn q_poly(k: u32) -> LaurentPoly<Rat> {
    let integrand = r2_minus_1_pow(k).mul_monomial(-2, &Rat::one());
    let f = integrand
        .antiderivative_from_one()
        .expect("integrand has even exponents only");
    f.mul_monomial(1, &Rat::one())
}

/// The cofactor `Q_k / (r-1)^{k+1}`; its value at `1` is `2^k/(k+1)`.
pub fn q_tilde(k: u32) -> LaurentPoly<Rat> {
    q_poly(k)
        .exact_div(&r_minus_1_pow(k + 1))
        .expect("divisible by (r-1)^{k+1}")
}

/// `P_n` over any coefficient field, given `u = 1/c` as a field element.
pub fn p_poly<K: CoeffField>(n: u32, u: &K) -> LaurentPoly<K> {
    assert!(n >= 2, "profile dimension parameter must be at least 2");
    let lift = |p: &LaurentPoly<Rat>| -> LaurentPoly<K> {
        p.map_coeffs(|c| Ok(K::from_rat(c.clone()))).expect("infallible")
    };
    let a = lift(&q_poly(n)).scale(&K::from_int(2 * n as i64 - 1));
    let b = lift(&q_poly(n - 1)).scale(&(u.clone() * K::from_int(2 * n as i64)));
    &a + &b
}

/// Left-hand minus right-hand side of the defining first-order equation
/// for `P_n`; identically zero.
pub fn p_ode_residual<K: CoeffField>(n: u32, u: &K) -> Result<RatFn<K>, AlgebraError> {
    let p = RatFn::from_poly(p_poly(n, u));
    let rinv = RatFn::<K>::var_elem(Var::R).invert()?;
    let lhs = p.checked_mul(&rinv)?.derivative();
    let lift = |q: LaurentPoly<Rat>| -> RatFn<K> {
        RatFn::from_poly(q.map_coeffs(|c| Ok(K::from_rat(c.clone()))).expect("infallible"))
    };
    let rinv2 = rinv.pow(2);
    let fiber = lift(r2_minus_1_pow(n - 1))
        .scale_k(&(u.clone() * K::from_int(2 * n as i64)))
        .checked_mul(&rinv2)?;
    let base = lift(r2_minus_1_pow(n))
        .scale_k(&K::from_int(2 * n as i64 - 1))
        .checked_mul(&rinv2)?;
    lhs.checked_sub(&fiber.checked_add(&base)?)
}

/// Compact factored rendering of `Q_k`, e.g. `(1/3)(r-1)^3(r+3)`.
pub fn q_factored_string(k: u32) -> String {
    let tilde = q_tilde(k);
    let content = tilde.content();
    let prim = tilde.primitive_part();
    let mut out = String::new();
    push_content(&mut out, &content);
    push_power(&mut out, "r-1", k as i64 + 1);
    push_primitive(&mut out, &prim);
    out
}

/// Compact factored rendering of `P_n`, e.g. `(r-1)^3(r+3) + 4u(r-1)^2`.
pub fn p_factored_string(n: u32) -> String {
    fn head(out: &mut String, k: u32, coeff: Rat) -> LaurentPoly<Rat> {
        let tilde = q_tilde(k);
        push_content(out, &(coeff * tilde.content()));
        tilde.primitive_part()
    }
    let mut out = String::new();
    let prim_n = head(&mut out, n, rat_i(2 * n as i64 - 1));
    push_power(&mut out, "r-1", n as i64 + 1);
    push_primitive(&mut out, &prim_n);
    out.push_str(" + ");
    let prim_m = head(&mut out, n - 1, rat_i(2 * n as i64));
    out.push('u');
    push_power(&mut out, "r-1", n as i64);
    push_primitive(&mut out, &prim_m);
    out
}

fn push_content(out: &mut String, c: &Rat) {
    if c.is_one() {
        return;
    }
    if c.is_integer() {
        out.push_str(&c.to_string());
    } else {
        out.push('(');
        out.push_str(&c.to_string());
        out.push(')');
    }
}

fn push_power(out: &mut String, base: &str, e: i64) {
    out.push('(');
    out.push_str(base);
    out.push(')');
    if e != 1 {
        out.push('^');
        out.push_str(&e.to_string());
    }
}

fn push_primitive(out: &mut String, prim: &LaurentPoly<Rat>) {
    if prim.is_one() {
        return;
    }
    out.push('(');
    out.push_str(&prim.to_string().replace([' ', '*'], ""));
    out.push(')');
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_pow};
    use crate::exact::QU;

    #[test]
    fn small_cases_match_hand_integration() {
        assert_eq!(q_poly(1), r_minus_1_pow(2));
        // Q_2 = (r^4 - 6r^2 + 8r - 3)/3
        let q2 = LaurentPoly::from_rats(
            Var::R,
            0,
            &[rat(-1, 1), rat(8, 3), rat(-2, 1), rat(0, 1), rat(1, 3)],
        );
        assert_eq!(q_poly(2), q2);
        // Q_3 = (r-1)^4 (r^2 + 4r + 5) / 5
        let q3 = r_minus_1_pow(4)
            .checked_mul(&LaurentPoly::from_ints(Var::R, 0, &[5, 4, 1]))
            .unwrap()
            .scale(&rat(1, 5));
        assert_eq!(q_poly(3), q3);
    }

    #[test]
    fn divisibility_and_cofactor_value() {
        for k in 0..=20u32 {
            let q = q_poly(k);
            let expected_deg = if k == 0 { 1 } else { 2 * k as i64 };
            assert_eq!(q.degree(), Some(expected_deg));
            let tilde = q_tilde(k);
            assert_eq!(
                tilde.eval(&rat_i(1)).unwrap(),
                rat_pow(&rat_i(2), k as i64) * rat(1, k as i64 + 1)
            );
        }
    }

    #[test]
    fn vanishing_and_curvature_characterization() {
        for k in 1..=8u32 {
            let q = q_poly(k);
            assert!(q.eval(&rat_i(1)).unwrap().is_zero());
            assert!(q.derivative().eval(&rat_i(1)).unwrap().is_zero());
            let second = q.derivative().derivative();
            let expected = r2_minus_1_pow(k - 1).scale(&rat_i(2 * k as i64));
            assert_eq!(second, expected);
        }
    }

    #[test]
    fn p_poly_closed_forms() {
        let u = QU::var_elem();
        // P_2 = (r-1)^3 (r+3) + 4u (r-1)^2
        let lift = |p: &LaurentPoly<Rat>| p.map_coeffs(|c| Ok(QU::from_rat(c.clone()))).unwrap();
        let p2 = &lift(
            &r_minus_1_pow(3)
                .checked_mul(&LaurentPoly::from_ints(Var::R, 0, &[3, 1]))
                .unwrap(),
        ) + &lift(&r_minus_1_pow(2)).scale(&(u.clone() * QU::from_int(4)));
        assert_eq!(p_poly(2, &u), p2);
        // P_3 = (r-1)^4 (r^2+4r+5) + 2u (r-1)^3 (r+3)
        let p3 = &lift(
            &r_minus_1_pow(4)
                .checked_mul(&LaurentPoly::from_ints(Var::R, 0, &[5, 4, 1]))
                .unwrap(),
        ) + &lift(
            &r_minus_1_pow(3)
                .checked_mul(&LaurentPoly::from_ints(Var::R, 0, &[3, 1]))
                .unwrap(),
        )
        .scale(&(u.clone() * QU::from_int(2)));
        assert_eq!(p_poly(3, &u), p3);
    }

    #[test]
    fn first_order_equation_holds_formally() {
        let u = QU::var_elem();
        for n in 2..=6 {
            assert!(p_ode_residual(n, &u).unwrap().is_zero());
        }
    }

    #[test]
    fn factored_strings() {
        assert_eq!(q_factored_string(1), "(r-1)^2");
        assert_eq!(q_factored_string(2), "(1/3)(r-1)^3(r+3)");
        assert_eq!(q_factored_string(3), "(1/5)(r-1)^4(r^2+4r+5)");
        assert_eq!(p_factored_string(2), "(r-1)^3(r+3) + 4u(r-1)^2");
        assert_eq!(p_factored_string(3), "(r-1)^4(r^2+4r+5) + 2u(r-1)^3(r+3)");
    }
}
