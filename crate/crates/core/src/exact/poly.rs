//! Sparse Laurent polynomials over a coefficient field.
//!
//! Terms live in a `BTreeMap` keyed by exponent; zero coefficients are never
//! stored, so structural equality is semantic equality. Each polynomial
//! carries its variable symbol and cross-variable arithmetic is rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{Signed, Zero};

use crate::error::AlgebraError;
use crate::exact::rational::rat;
use crate::exact::{CoeffField, FieldTag, Rat, RatFn, Var};

/// Arithmetic operations on polynomial pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, PartialEq)]
pub struct LaurentPoly<K: CoeffField> {
    var: Var,
    terms: BTreeMap<i64, K>,
}

impl<K: CoeffField> LaurentPoly<K> {
    pub fn zero(var: Var) -> Self {
        LaurentPoly { var, terms: BTreeMap::new() }
    }

    pub fn constant(var: Var, k: K) -> Self {
        Self::monomial(var, 0, k)
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, K::one())
    }

    pub fn var(var: Var) -> Self {
        Self::monomial(var, 1, K::one())
    }

    pub fn monomial(var: Var, exp: i64, k: K) -> Self {
        let mut p = Self::zero(var);
        if !k.is_zero() {
            p.terms.insert(exp, k);
        }
        p
    }

    pub fn from_terms(var: Var, it: impl IntoIterator<Item = (i64, K)>) -> Self {
        let mut p = Self::zero(var);
        for (e, k) in it {
            p.insert_add(e, k);
        }
        p
    }

    /// Dense constructor from `Q` coefficients, lowest exponent first.
    pub fn from_rats(var: Var, lowest: i64, coeffs: &[Rat]) -> Self {
        Self::from_terms(
            var,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (lowest + i as i64, K::from_rat(c.clone()))),
        )
    }

    pub fn var_symbol(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn trailing_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, exp: i64) -> K {
        self.terms.get(&exp).cloned().unwrap_or_else(K::zero)
    }

    pub fn leading_coeff(&self) -> Option<&K> {
        self.terms.values().next_back()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &K)> {
        self.terms.iter().map(|(e, k)| (*e, k))
    }

    fn insert_add(&mut self, exp: i64, k: K) {
        if k.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            None => {
                self.terms.insert(exp, k);
            }
            Some(prev) => {
                let s = prev + k;
                if !s.is_zero() {
                    self.terms.insert(exp, s);
                }
            }
        }
    }

    pub(crate) fn check_var(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(AlgebraError::VariableMismatch { expected: self.var, found: other.var })
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_var(rhs)?;
        let mut out = self.clone();
        for (e, k) in rhs.terms() {
            out.insert_add(e, k.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_var(rhs)?;
        let mut out = self.clone();
        for (e, k) in rhs.terms() {
            out.insert_add(e, -k.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_var(rhs)?;
        let mut out = Self::zero(self.var);
        for (e1, k1) in self.terms() {
            for (e2, k2) in rhs.terms() {
                let e = e1.checked_add(e2).expect("exponent overflow");
                out.insert_add(e, k1.clone() * k2.clone());
            }
        }
        Ok(out)
    }

    pub fn arith(a: &Self, b: &Self, op: PolyOp) -> Result<Self, AlgebraError> {
        match op {
            PolyOp::Add => a.checked_add(b),
            PolyOp::Sub => a.checked_sub(b),
            PolyOp::Mul => a.checked_mul(b),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.var);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, k: &K) -> Self {
        Self::from_terms(self.var, self.terms().map(|(e, c)| (e, c.clone() * k.clone())))
    }

    /// Multiplies by `k * var^exp`.
    pub fn mul_monomial(&self, exp: i64, k: &K) -> Self {
        Self::from_terms(
            self.var,
            self.terms().map(|(e, c)| {
                (e.checked_add(exp).expect("exponent overflow"), c.clone() * k.clone())
            }),
        )
    }

    /// Term-by-term derivative; the `x^0` term vanishes, `x^-1` maps to `-x^-2`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.var,
            self.terms()
                .filter(|(e, _)| *e != 0)
                .map(|(e, k)| (e - 1, k.clone() * K::from_int(e))),
        )
    }

    /// The antiderivative `F` with `F(1) = 0`.
    /// Fails on an `x^-1` term, which would integrate to a logarithm.
    pub fn antiderivative_from_one(&self) -> Result<Self, AlgebraError> {
        if !self.coeff(-1).is_zero() {
            return Err(AlgebraError::LogarithmicTerm { var: self.var });
        }
        let mut out = Self::zero(self.var);
        let mut at_one = K::zero();
        for (e, k) in self.terms() {
            let inv = K::from_int(e + 1).invert().expect("e != -1");
            let c = k.clone() * inv;
            at_one = at_one + c.clone();
            out.insert_add(e + 1, c);
        }
        out.insert_add(0, -at_one);
        Ok(out)
    }

    /// Exact evaluation. Negative exponents at a zero argument are rejected.
    pub fn eval(&self, x: &K) -> Result<K, AlgebraError> {
        let mut acc = K::zero();
        for (e, k) in self.terms() {
            let p = if e >= 0 {
                pow_k(x, e as u32)
            } else {
                let inv = x.invert().ok_or(AlgebraError::NegativeExponentAtZero)?;
                pow_k(&inv, (-e) as u32)
            };
            acc = acc + k.clone() * p;
        }
        Ok(acc)
    }

    /// Floating-point evaluation; `c` feeds formal parameter coefficients.
    pub fn eval_f64(&self, x: f64, c: f64) -> f64 {
        self.terms().map(|(e, k)| k.eval_with_c(c) * x.powi(e as i32)).sum()
    }

    pub fn rename(&self, var: Var) -> Self {
        LaurentPoly { var, terms: self.terms.clone() }
    }

    /// Mirror map `x -> 1/x` (negates every exponent).
    pub fn rev_exponents(&self) -> Self {
        Self::from_terms(self.var, self.terms().map(|(e, k)| (-e, k.clone())))
    }

    pub fn map_coeffs<L: CoeffField>(
        &self,
        mut f: impl FnMut(&K) -> Result<L, AlgebraError>,
    ) -> Result<LaurentPoly<L>, AlgebraError> {
        let mut out = LaurentPoly::zero(self.var);
        for (e, k) in self.terms() {
            out.insert_add(e, f(k)?);
        }
        Ok(out)
    }

    /// Substitutes a rational function for the variable.
    pub fn substitute(&self, sub: &RatFn<K>) -> Result<RatFn<K>, AlgebraError> {
        let var = sub.var();
        let mut acc = RatFn::zero(var);
        let mut inv: Option<RatFn<K>> = None;
        for (e, k) in self.terms() {
            let p = if e >= 0 {
                sub.pow(e as u32)
            } else {
                let i = match &inv {
                    Some(i) => i.clone(),
                    None => {
                        let i = sub.invert()?;
                        inv = Some(i.clone());
                        i
                    }
                };
                i.pow((-e) as u32)
            };
            acc = &acc + &p.scale_k(&k.clone());
        }
        Ok(acc)
    }

    /// Quotient and remainder. Both operands must be honest polynomials
    /// (no negative exponents).
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), AlgebraError> {
        self.check_var(d)?;
        if d.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        debug_assert!(self.trailing_degree().unwrap_or(0) >= 0);
        debug_assert!(d.trailing_degree().unwrap_or(0) >= 0);
        let dlead = d.degree().unwrap();
        let dinv = d.leading_coeff().unwrap().invert().expect("nonzero leading");
        let mut quo = Self::zero(self.var);
        let mut rem = self.clone();
        while let Some(rl) = rem.degree() {
            if rl < dlead {
                break;
            }
            let c = rem.leading_coeff().unwrap().clone() * dinv.clone();
            let m = Self::monomial(self.var, rl - dlead, c);
            quo = &quo + &m;
            rem = &rem - &(&m * d);
        }
        Ok((quo, rem))
    }

    /// Exact division; fails with a nonzero remainder.
    pub fn exact_div(&self, d: &Self) -> Result<Self, AlgebraError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::InexactDivision)
        }
    }

    /// Monic gcd of honest polynomials (zero when both inputs are zero).
    pub fn gcd(a: &Self, b: &Self) -> Result<Self, AlgebraError> {
        a.check_var(b)?;
        if a.is_zero() {
            return Ok(b.monic());
        }
        if b.is_zero() {
            return Ok(a.monic());
        }
        if a.degree() == Some(0) || b.degree() == Some(0) || Self::proven_coprime(a, b) {
            return Ok(Self::one(a.var));
        }
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y)?;
            x = y;
            y = r.monic();
        }
        Ok(x.monic())
    }

    /// One-sided coprimality certificate for formal coefficient fields.
    ///
    /// Specializing the formal parameter at a point where every coefficient
    /// stays finite and both leading coefficients stay nonzero can only merge
    /// factors, never split them, so a degree-zero gcd after specialization
    /// proves the inputs were coprime. A `false` answer proves nothing and
    /// callers fall back to the Euclidean algorithm.
    fn proven_coprime(a: &Self, b: &Self) -> bool {
        if K::TAG == FieldTag::Q {
            return false;
        }
        const SAMPLES: [(i64, i64); 3] = [(17, 13), (23, 7), (101, 37)];
        for (p, q) in SAMPLES {
            let x = rat(p, q);
            let (sa, sb) = match (a.specialize_at(&x), b.specialize_at(&x)) {
                (Some(sa), Some(sb)) => (sa, sb),
                _ => continue,
            };
            return LaurentPoly::<Rat>::gcd(&sa, &sb)
                .map(|g| g.degree() == Some(0))
                .unwrap_or(false);
        }
        false
    }

    /// Coefficient-wise specialization of the formal parameter; `None` when
    /// any coefficient has a pole at `x` or the leading coefficient vanishes.
    fn specialize_at(&self, x: &Rat) -> Option<LaurentPoly<Rat>> {
        let deg = self.degree()?;
        let mut out = LaurentPoly::zero(self.var);
        for (e, k) in self.terms() {
            let v = k.spec_rat(x)?;
            if e == deg && CoeffField::is_zero(&v) {
                return None;
            }
            out.insert_add(e, v);
        }
        Some(out)
    }

    /// Scales so the leading coefficient is one (identity on zero).
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.invert().expect("nonzero leading")),
        }
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// Halves every exponent of an even polynomial: `p(x) = q(x^2)` yields `q`.
    pub fn compress_even(&self) -> Result<Self, AlgebraError> {
        if !self.is_even() {
            return Err(AlgebraError::NotEven { var: self.var });
        }
        Ok(Self::from_terms(self.var, self.terms().map(|(e, k)| (e / 2, k.clone()))))
    }

    /// Doubles every exponent: `q` yields `q(x^2)`.
    pub fn expand_double(&self) -> Self {
        Self::from_terms(
            self.var,
            self.terms().map(|(e, k)| (e.checked_mul(2).expect("exponent overflow"), k.clone())),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "var": self.var.name(),
            "field": K::TAG.to_string(),
            "terms": self
                .terms()
                .map(|(e, k)| serde_json::json!({"exp": e, "coeff": k.to_json()}))
                .collect::<Vec<_>>(),
        })
    }
}

impl LaurentPoly<Rat> {
    /// Dense integer constructor, lowest exponent first.
    pub fn from_ints(var: Var, lowest: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            var,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (lowest + i as i64, Rat::from_integer((*c).into()))),
        )
    }

    /// Rational content: gcd of numerators over lcm of denominators, carrying
    /// the sign of the leading coefficient. `self = content * primitive_part`.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Zero::zero();
        }
        let mut num_gcd = num::BigInt::from(0);
        let mut den_lcm = num::BigInt::from(1);
        for (_, k) in self.terms() {
            num_gcd = num::Integer::gcd(&num_gcd, k.numer());
            den_lcm = num::Integer::lcm(&den_lcm, k.denom());
        }
        let mut c = Rat::new(num_gcd, den_lcm);
        if self.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        c
    }

    /// `self / content()`: integer coefficients with positive leading one.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.content().recip();
        self.scale(&inv)
    }
}

impl<K: CoeffField> Add for &LaurentPoly<K> {
    type Output = LaurentPoly<K>;
    fn add(self, rhs: Self) -> LaurentPoly<K> {
        self.checked_add(rhs).expect("variable mismatch")
    }
}

impl<K: CoeffField> Sub for &LaurentPoly<K> {
    type Output = LaurentPoly<K>;
    fn sub(self, rhs: Self) -> LaurentPoly<K> {
        self.checked_sub(rhs).expect("variable mismatch")
    }
}

impl<K: CoeffField> Mul for &LaurentPoly<K> {
    type Output = LaurentPoly<K>;
    fn mul(self, rhs: Self) -> LaurentPoly<K> {
        self.checked_mul(rhs).expect("variable mismatch")
    }
}

impl<K: CoeffField> Neg for &LaurentPoly<K> {
    type Output = LaurentPoly<K>;
    fn neg(self) -> LaurentPoly<K> {
        LaurentPoly::from_terms(self.var, self.terms().map(|(e, k)| (e, -k.clone())))
    }
}

fn pow_k<K: CoeffField>(x: &K, e: u32) -> K {
    let mut acc = K::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

impl<K: CoeffField> fmt::Display for LaurentPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, k) in self.terms.iter().rev() {
            let (sign, mag) = split_sign(k);
            if first {
                if sign {
                    f.write_str("-")?;
                }
                first = false;
            } else if sign {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            write_term(f, &mag, *e, self.var)?;
        }
        Ok(())
    }
}

impl<K: CoeffField> fmt::Debug for LaurentPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Splits off a leading minus sign for display when the coefficient is a
/// negative rational; formal coefficients display as-is.
fn split_sign<K: CoeffField>(k: &K) -> (bool, K) {
    let s = k.to_string();
    if let Some(rest) = s.strip_prefix('-') {
        if !rest.contains(['+', '-']) {
            return (true, -k.clone());
        }
    }
    (false, k.clone())
}

fn write_term<K: CoeffField>(f: &mut fmt::Formatter<'_>, k: &K, e: i64, var: Var) -> fmt::Result {
    let coeff_str = if k.needs_parens() {
        format!("({})", k)
    } else {
        k.to_string()
    };
    if e == 0 {
        return f.write_str(&coeff_str);
    }
    if !k.is_one() {
        write!(f, "{}*", coeff_str)?;
    }
    if e == 1 {
        write!(f, "{}", var)
    } else {
        write!(f, "{}^{}", var, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_i};
    use crate::exact::QU;

    fn p(coeffs: &[i64]) -> LaurentPoly<Rat> {
        LaurentPoly::from_ints(Var::R, 0, coeffs)
    }

    #[test]
    fn arithmetic_and_zero_stripping() {
        let a = p(&[1, 2]);
        let b = p(&[-1, -2, 5]);
        let s = &a + &b;
        assert_eq!(s, LaurentPoly::from_ints(Var::R, 2, &[5]));
        assert_eq!(&s - &s, LaurentPoly::zero(Var::R));
        let prod = &p(&[-1, 1]) * &p(&[1, 1]);
        assert_eq!(prod, p(&[-1, 0, 1]));
    }

    #[test]
    fn variable_mismatch_is_rejected() {
        let a = p(&[1]);
        let b = LaurentPoly::<Rat>::from_ints(Var::S, 0, &[1]);
        assert!(matches!(
            a.checked_add(&b),
            Err(AlgebraError::VariableMismatch { .. })
        ));
    }

    #[test]
    fn derivative_of_laurent_terms() {
        let q = LaurentPoly::<Rat>::from_ints(Var::R, -2, &[3, 0, 5, 0, 7]);
        let d = q.derivative();
        assert_eq!(d.coeff(-3), rat_i(-6));
        assert_eq!(d.coeff(1), rat_i(14));
        assert_eq!(d.coeff(-1), rat_i(0));
    }

    #[test]
    fn antiderivative_vanishes_at_one_and_rejects_log() {
        let q = LaurentPoly::<Rat>::from_ints(Var::R, -2, &[1, 0, 2]);
        let f = q.antiderivative_from_one().unwrap();
        assert_eq!(f.eval(&rat_i(1)).unwrap(), rat_i(0));
        assert_eq!(f.derivative(), q);
        let bad = LaurentPoly::<Rat>::from_ints(Var::R, -1, &[1]);
        assert!(matches!(
            bad.antiderivative_from_one(),
            Err(AlgebraError::LogarithmicTerm { .. })
        ));
    }

    #[test]
    fn division_and_gcd() {
        let n = &p(&[-1, 0, 1]) * &p(&[3, 1]);
        let (q, r) = n.div_rem(&p(&[1, 1])).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, &p(&[-1, 1]) * &p(&[3, 1]));
        let g = LaurentPoly::gcd(&n, &p(&[2, 2])).unwrap();
        assert_eq!(g, p(&[1, 1]));
        assert!(p(&[1, 1, 1]).exact_div(&p(&[1, 1])).is_err());
    }

    #[test]
    fn content_and_primitive_part() {
        let q = LaurentPoly::<Rat>::from_terms(
            Var::R,
            [(0, rat(2, 3)), (1, rat(-4, 9))],
        );
        assert_eq!(q.content(), rat(-2, 9));
        assert_eq!(q.primitive_part(), LaurentPoly::from_ints(Var::R, 0, &[-3, 2]));
    }

    #[test]
    fn eval_handles_negative_exponents() {
        let q = LaurentPoly::<Rat>::from_ints(Var::R, -1, &[1, 0, 1]);
        assert_eq!(q.eval(&rat_i(2)).unwrap(), rat(5, 2));
        assert!(matches!(
            q.eval(&rat_i(0)),
            Err(AlgebraError::NegativeExponentAtZero)
        ));
    }

    #[test]
    fn even_compression_round_trips() {
        let q = p(&[1, 0, -3, 0, 2]);
        let c = q.compress_even().unwrap();
        assert_eq!(c, p(&[1, -3, 2]));
        assert_eq!(c.expand_double(), q);
        assert!(p(&[0, 1]).compress_even().is_err());
    }

    #[test]
    fn display_matches_handwritten_forms() {
        assert_eq!(p(&[3, -6, 0, 8]).to_string(), "8*r^3 - 6*r + 3");
        assert_eq!(p(&[0]).to_string(), "0");
        assert_eq!(
            LaurentPoly::<Rat>::from_ints(Var::R, -2, &[1]).to_string(),
            "r^-2"
        );
        let f = LaurentPoly::<QU>::from_terms(
            Var::R,
            [(1, QU::var_elem() + QU::from_int(3)), (0, QU::from_int(1))],
        );
        assert_eq!(f.to_string(), "(u + 3)*r + 1");
    }

    #[test]
    fn formal_coefficient_arithmetic() {
        let u = QU::var_elem();
        let c = QU::c_elem();
        assert!( (u.clone() * c.clone()).is_one());
        let q = LaurentPoly::<QU>::from_terms(Var::R, [(2, u.clone()), (0, -u)]);
        let d = q.derivative();
        assert_eq!(d.coeff(1), QU::var_elem() * QU::from_int(2));
    }
}
