//! Rational functions in one variable over a coefficient field.
//!
//! Every value is kept in a canonical form: numerator and denominator share
//! no polynomial factor, negative exponents are cleared so both parts are
//! honest polynomials with at least one nonzero constant term between them,
//! and the denominator is monic. Structural equality is therefore semantic
//! equality, and the zero function is `0/1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::AlgebraError;
use crate::exact::{CoeffField, LaurentPoly, PolyOp, Var};

#[derive(Clone, PartialEq)]
pub struct RatFn<K: CoeffField> {
    num: LaurentPoly<K>,
    den: LaurentPoly<K>,
}

impl<K: CoeffField> RatFn<K> {
    pub fn new(num: LaurentPoly<K>, den: LaurentPoly<K>) -> Result<Self, AlgebraError> {
        if num.var_symbol() != den.var_symbol() {
            return Err(AlgebraError::VariableMismatch {
                expected: num.var_symbol(),
                found: den.var_symbol(),
            });
        }
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        let var = num.var_symbol();
        if num.is_zero() {
            return Ok(RatFn { num, den: LaurentPoly::one(var) });
        }
        let shift = num.trailing_degree().unwrap().min(den.trailing_degree().unwrap());
        let mut num = num.mul_monomial(-shift, &K::one());
        let mut den = den.mul_monomial(-shift, &K::one());
        let g = LaurentPoly::gcd(&num, &den)?;
        if g.degree() != Some(0) {
            num = num.exact_div(&g)?;
            den = den.exact_div(&g)?;
        }
        let lead = den.leading_coeff().unwrap().invert().expect("nonzero leading");
        num = num.scale(&lead);
        den = den.scale(&lead);
        Ok(RatFn { num, den })
    }

    /// Assembles a value whose parts already share no polynomial factor,
    /// applying only the exponent-shift and monic normalizations.
    fn from_reduced(num: LaurentPoly<K>, den: LaurentPoly<K>) -> Self {
        let var = num.var_symbol();
        if num.is_zero() {
            return RatFn { num, den: LaurentPoly::one(var) };
        }
        let shift = num.trailing_degree().unwrap().min(den.trailing_degree().unwrap());
        let (num, den) = if shift != 0 {
            (num.mul_monomial(-shift, &K::one()), den.mul_monomial(-shift, &K::one()))
        } else {
            (num, den)
        };
        let lead = den.leading_coeff().unwrap().clone();
        if lead.is_one() {
            return RatFn { num, den };
        }
        let inv = lead.invert().expect("nonzero leading");
        RatFn { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: LaurentPoly<K>) -> Self {
        let var = p.var_symbol();
        Self::from_reduced(p, LaurentPoly::one(var))
    }

    pub fn constant(var: Var, k: K) -> Self {
        Self::from_poly(LaurentPoly::constant(var, k))
    }

    pub fn from_rat(var: Var, r: crate::exact::Rat) -> Self {
        Self::constant(var, K::from_rat(r))
    }

    pub fn from_int(var: Var, n: i64) -> Self {
        Self::constant(var, K::from_int(n))
    }

    pub fn zero(var: Var) -> Self {
        Self::constant(var, K::zero())
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, K::one())
    }

    /// The identity function `x`.
    pub fn var_elem(var: Var) -> Self {
        Self::from_poly(LaurentPoly::var(var))
    }

    pub fn num(&self) -> &LaurentPoly<K> {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly<K> {
        &self.den
    }

    pub fn var(&self) -> Var {
        self.num.var_symbol()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// A constant value, if the function is one.
    pub fn as_const(&self) -> Option<K> {
        if self.den.is_one() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.add_sub(rhs, PolyOp::Add)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.add_sub(rhs, PolyOp::Sub)
    }

    /// Addition and subtraction over the least common denominator: only the
    /// true common factors of the denominators are ever computed, so the
    /// result needs no full-product gcd.
    fn add_sub(&self, rhs: &Self, op: PolyOp) -> Result<Self, AlgebraError> {
        self.num.check_var(&rhs.num)?;
        if self.den == rhs.den {
            let n = LaurentPoly::arith(&self.num, &rhs.num, op)?;
            return Self::new(n, self.den.clone());
        }
        let g = LaurentPoly::gcd(&self.den, &rhs.den)?;
        if g.degree() == Some(0) {
            let t = LaurentPoly::arith(&(&self.num * &rhs.den), &(&rhs.num * &self.den), op)?;
            return Ok(Self::from_reduced(t, &self.den * &rhs.den));
        }
        let e1 = self.den.exact_div(&g)?;
        let e2 = rhs.den.exact_div(&g)?;
        let t = LaurentPoly::arith(&(&self.num * &e2), &(&rhs.num * &e1), op)?;
        let h = LaurentPoly::gcd(&t, &g)?;
        let (t, d1) = if h.degree() == Some(0) {
            (t, self.den.clone())
        } else {
            (t.exact_div(&h)?, self.den.exact_div(&h)?)
        };
        Ok(Self::from_reduced(t, &d1 * &e2))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.num.check_var(&rhs.num)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.var()));
        }
        let g1 = LaurentPoly::gcd(&self.num, &rhs.den)?;
        let g2 = LaurentPoly::gcd(&rhs.num, &self.den)?;
        let (n1, d2) = if g1.degree() == Some(0) {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.exact_div(&g1)?, rhs.den.exact_div(&g1)?)
        };
        let (n2, d1) = if g2.degree() == Some(0) {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.exact_div(&g2)?, self.den.exact_div(&g2)?)
        };
        Ok(Self::from_reduced(&n1 * &n2, &d1 * &d2))
    }

    pub fn invert(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroInverse);
        }
        Ok(Self::from_reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.checked_mul(&rhs.invert()?)
    }

    /// Powers of a reduced fraction stay reduced, so this needs no gcd.
    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one(self.var());
        }
        Self::from_reduced(self.num.pow(e), self.den.pow(e))
    }

    pub fn pow_i(&self, e: i64) -> Result<Self, AlgebraError> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.invert()?.pow((-e) as u32))
        }
    }

    /// Multiplies by a field scalar.
    pub fn scale_k(&self, k: &K) -> Self {
        if k.is_zero() {
            return Self::zero(self.var());
        }
        RatFn { num: self.num.scale(k), den: self.den.clone() }
    }

    /// Quotient-rule derivative. The common factor `gcd(den, den')` of the
    /// raw quotient-rule parts is split off analytically, so repeated
    /// denominator factors are never rebuilt only to be re-reduced.
    pub fn derivative(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        let dd = self.den.derivative();
        let g = LaurentPoly::gcd(&self.den, &dd).expect("same variable");
        let (reduced_dd, dhat) = if g.degree() == Some(0) {
            (dd, self.den.clone())
        } else {
            (
                dd.exact_div(&g).expect("gcd divides"),
                self.den.exact_div(&g).expect("gcd divides"),
            )
        };
        let n = &(&self.num.derivative() * &dhat) - &(&self.num * &reduced_dd);
        Self::new(n, &self.den * &dhat).expect("nonzero denominator")
    }

    /// Composition `self(sub)`. Constant substitutions are rejected; use
    /// `eval` for those.
    pub fn substitute(&self, sub: &Self) -> Result<Self, AlgebraError> {
        if sub.as_const().is_some() {
            return Err(AlgebraError::ConstantSubstitution);
        }
        let n = self.num.substitute(sub)?;
        let d = self.den.substitute(sub)?;
        n.div(&d)
    }

    /// Order of vanishing at `x = 0` (`None` for zero, negative at a pole).
    pub fn ord_at_zero(&self) -> Option<i64> {
        let tn = self.num.trailing_degree()?;
        let td = self.den.trailing_degree().expect("nonzero denominator");
        Some(tn - td)
    }

    /// Exact evaluation; fails at a pole of the denominator.
    pub fn eval(&self, x: &K) -> Result<K, AlgebraError> {
        let d = self.den.eval(x)?;
        let dinv = d.invert().ok_or(AlgebraError::EvalAtPole)?;
        Ok(self.num.eval(x)? * dinv)
    }

    /// Floating-point evaluation; `c` feeds formal parameter coefficients.
    pub fn eval_f64(&self, x: f64, c: f64) -> f64 {
        self.num.eval_f64(x, c) / self.den.eval_f64(x, c)
    }

    pub fn map_coeffs<L: CoeffField>(
        &self,
        mut f: impl FnMut(&K) -> Result<L, AlgebraError>,
    ) -> Result<RatFn<L>, AlgebraError> {
        RatFn::new(self.num.map_coeffs(&mut f)?, self.den.map_coeffs(&mut f)?)
    }

    /// Renames the variable (a pure relabeling).
    pub fn rename(&self, var: Var) -> Self {
        RatFn { num: self.num.rename(var), den: self.den.rename(var) }
    }

    /// Whether the function is even in its variable.
    pub fn is_even(&self) -> bool {
        self.num.is_even() && self.den.is_even()
    }

    /// For an even function `f`, returns `g` with `f(x) = g(x^2)`.
    pub fn compress_even(&self) -> Result<Self, AlgebraError> {
        Ok(RatFn {
            num: self.num.compress_even()?,
            den: self.den.compress_even()?,
        })
    }

    /// Cross-multiplied equality check (redundant given canonical forms,
    /// but independent of them).
    pub fn equivalent(&self, rhs: &Self) -> bool {
        (&self.num * &rhs.den).checked_sub(&(&rhs.num * &self.den))
            .map(|d| d.is_zero())
            .unwrap_or(false)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "num": self.num.to_json(),
            "den": self.den.to_json(),
        })
    }
}

impl<K: CoeffField> Add for &RatFn<K> {
    type Output = RatFn<K>;
    fn add(self, rhs: Self) -> RatFn<K> {
        self.checked_add(rhs).expect("variable mismatch")
    }
}

impl<K: CoeffField> Sub for &RatFn<K> {
    type Output = RatFn<K>;
    fn sub(self, rhs: Self) -> RatFn<K> {
        self.checked_sub(rhs).expect("variable mismatch")
    }
}

impl<K: CoeffField> Mul for &RatFn<K> {
    type Output = RatFn<K>;
    fn mul(self, rhs: Self) -> RatFn<K> {
        self.checked_mul(rhs).expect("variable mismatch")
    }
}

impl<K: CoeffField> Neg for &RatFn<K> {
    type Output = RatFn<K>;
    fn neg(self) -> RatFn<K> {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl<K: CoeffField> fmt::Display for RatFn<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return fmt::Display::fmt(&self.num, f);
        }
        let n = if self.num.term_count() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let d = if self.den.term_count() > 1 {
            format!("({})", self.den)
        } else {
            self.den.to_string()
        };
        write!(f, "{}/{}", n, d)
    }
}

impl<K: CoeffField> fmt::Debug for RatFn<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_i};
    use crate::exact::{Rat, QU};

    fn p(coeffs: &[i64]) -> LaurentPoly<Rat> {
        LaurentPoly::from_ints(Var::R, 0, coeffs)
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFn<Rat> {
        RatFn::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn canonical_form_reduces_and_normalizes() {
        // (r^2 - 1) / (2r + 2) reduces to (r - 1)/2 with monic denominator.
        let f = rf(&[-1, 0, 1], &[2, 2]);
        assert_eq!(f.num(), &LaurentPoly::from_rats(Var::R, 0, &[rat(-1, 2), rat(1, 2)]));
        assert!(f.den().is_one());
    }

    #[test]
    fn laurent_inputs_are_cleared() {
        // r^-1 / (1 + r^-2) = r / (r^2 + 1)
        let num = LaurentPoly::<Rat>::from_ints(Var::R, -1, &[1]);
        let den = LaurentPoly::<Rat>::from_ints(Var::R, -2, &[1, 0, 1]);
        let f = RatFn::new(num, den).unwrap();
        assert_eq!(f, rf(&[0, 1], &[1, 0, 1]));
        assert_eq!(f.ord_at_zero(), Some(1));
    }

    #[test]
    fn field_operations_round_trip() {
        let f = rf(&[0, 1], &[1, 1]);
        let g = rf(&[2], &[0, 0, 1]);
        let h = f.div(&g).unwrap();
        assert_eq!(&h * &g, f);
        let back = &(&f + &g) - &g;
        assert_eq!(back, f);
        assert!((&f - &f).is_zero());
        assert!(f.div(&RatFn::zero(Var::R)).is_err());
    }

    #[test]
    fn derivative_uses_quotient_rule() {
        // d/dr [ 1/(r-1) ] = -1/(r-1)^2
        let f = rf(&[1], &[-1, 1]);
        assert_eq!(f.derivative(), rf(&[-1], &[1, -2, 1]));
    }

    #[test]
    fn substitution_composes() {
        // f(r) = r^2, sub r -> (s+1): f(sub) = s^2 + 2s + 1
        let f = rf(&[0, 0, 1], &[1]);
        let sub = RatFn::<Rat>::from_poly(LaurentPoly::from_ints(Var::S, 0, &[1, 1]));
        let g = f.substitute(&sub).unwrap();
        assert_eq!(g, RatFn::from_poly(LaurentPoly::from_ints(Var::S, 0, &[1, 2, 1])));
        assert!(matches!(
            f.substitute(&RatFn::one(Var::S)),
            Err(AlgebraError::ConstantSubstitution)
        ));
    }

    #[test]
    fn evaluation_and_poles() {
        let f = rf(&[1], &[-1, 1]);
        assert_eq!(f.eval(&rat_i(3)).unwrap(), rat(1, 2));
        assert!(matches!(f.eval(&rat_i(1)), Err(AlgebraError::EvalAtPole)));
    }

    #[test]
    fn formal_coefficients_reduce_too() {
        let u = QU::var_elem();
        // (u r) / u = r
        let num = LaurentPoly::<QU>::monomial(Var::R, 1, u.clone());
        let den = LaurentPoly::<QU>::constant(Var::R, u);
        let f = RatFn::new(num, den).unwrap();
        assert_eq!(f, RatFn::var_elem(Var::R));
    }

    #[test]
    fn even_compression() {
        // (1 - x^2)^2 / x^2 compresses to (1 - y)^2 / y
        let f = rf(&[1, 0, -2, 0, 1], &[0, 0, 1]);
        let g = f.compress_even().unwrap();
        assert_eq!(g, rf(&[1, -2, 1], &[0, 1]));
        assert!(rf(&[0, 1], &[1]).compress_even().is_err());
    }
}
