//! Pluggable coefficient fields: `Q`, `Q(u)` and `Q(w)`.
//!
//! `u` and `w` are formal transcendentals with `u = 1/c` and `w = sqrt(c)`,
//! so `c = u^-1 = w^2`. Elements of the formal fields are canonical rational
//! functions over `Q` in the reserved variable; the tower stops at depth two.

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::exact::rational::rat_to_f64;
use crate::exact::{LaurentPoly, Rat, RatFn, Var};

/// Which coefficient field a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldTag {
    Q,
    QU,
    QW,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldTag::Q => "Q",
            FieldTag::QU => "Q(u)",
            FieldTag::QW => "Q(w)",
        })
    }
}

/// A coefficient field for polynomials and rational functions.
///
/// Arithmetic is exact; `invert` returns `None` on zero. Field mismatches are
/// impossible at runtime because the field is part of the type.
pub trait CoeffField:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Sized
{
    const TAG: FieldTag;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rat(r: Rat) -> Self;
    fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(n.into()))
    }
    fn invert(&self) -> Option<Self>;
    fn field_div(&self, other: &Self) -> Option<Self> {
        other.invert().map(|i| self.clone() * i)
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    /// Canonical JSON form (decimal-string big integers).
    fn to_json(&self) -> serde_json::Value;
    /// Numeric value given a concrete `c > 0` (`u := 1/c`, `w := sqrt(c)`).
    fn eval_with_c(&self, c: f64) -> f64;
    /// Display hint: wrap in parentheses when used as a coefficient.
    fn needs_parens(&self) -> bool;
    /// Specializes the formal parameter at a sample rational (identity on
    /// `Q`); `None` at a pole of the coefficient. Backs the fast coprimality
    /// certificate used by polynomial gcds.
    fn spec_rat(&self, x: &Rat) -> Option<Rat>;
}

impl CoeffField for Rat {
    const TAG: FieldTag = FieldTag::Q;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn invert(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "num": self.numer().to_string(),
            "den": self.denom().to_string(),
        })
    }
    fn eval_with_c(&self, _c: f64) -> f64 {
        rat_to_f64(self)
    }
    fn needs_parens(&self) -> bool {
        false
    }
    fn spec_rat(&self, _x: &Rat) -> Option<Rat> {
        Some(self.clone())
    }
}

/// Marker for a reserved formal parameter variable.
pub trait FormalVar: Clone + Copy + PartialEq + Eq + fmt::Debug + 'static {
    const VAR: Var;
    const TAG: FieldTag;
    /// Exponent `p` with `c = var^p`.
    const C_POWER: i64;
    fn eval_var(c: f64) -> f64;
}

/// The variable `u = 1/c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UParam;

impl FormalVar for UParam {
    const VAR: Var = Var::U;
    const TAG: FieldTag = FieldTag::QU;
    const C_POWER: i64 = -1;
    fn eval_var(c: f64) -> f64 {
        1.0 / c
    }
}

/// The variable `w = sqrt(c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WParam;

impl FormalVar for WParam {
    const VAR: Var = Var::W;
    const TAG: FieldTag = FieldTag::QW;
    const C_POWER: i64 = 2;
    fn eval_var(c: f64) -> f64 {
        c.sqrt()
    }
}

/// An element of `Q(var)` for a reserved formal variable.
#[derive(Clone, PartialEq)]
pub struct Formal<V: FormalVar> {
    inner: RatFn<Rat>,
    _marker: PhantomData<V>,
}

/// Elements of `Q(u)`.
pub type QU = Formal<UParam>;
/// Elements of `Q(w)`.
pub type QW = Formal<WParam>;

impl<V: FormalVar> Formal<V> {
    pub fn new(inner: RatFn<Rat>) -> Result<Self, AlgebraError> {
        if inner.var() != V::VAR {
            return Err(AlgebraError::VariableMismatch {
                expected: V::VAR,
                found: inner.var(),
            });
        }
        Ok(Self::wrap(inner))
    }

    fn wrap(inner: RatFn<Rat>) -> Self {
        Formal { inner, _marker: PhantomData }
    }

    pub fn inner(&self) -> &RatFn<Rat> {
        &self.inner
    }

    /// The formal variable itself (`u` or `w`).
    pub fn var_elem() -> Self {
        Self::wrap(RatFn::var_elem(V::VAR))
    }

    /// `var^e` for any integer `e`.
    pub fn var_pow(e: i64) -> Self {
        Self::wrap(RatFn::var_elem(V::VAR).pow_i(e).expect("nonzero base"))
    }

    /// The parameter `c` as a field element (`u^-1` resp. `w^2`).
    pub fn c_elem() -> Self {
        Self::var_pow(V::C_POWER)
    }

    /// `1/c` as a field element.
    pub fn u_elem() -> Self {
        Self::var_pow(-V::C_POWER)
    }

    /// Substitutes a concrete rational for the formal variable.
    /// This is a field homomorphism onto `Q` wherever it is defined.
    pub fn specialize(&self, v: &Rat) -> Result<Rat, AlgebraError> {
        self.inner.eval(v)
    }

    /// Order of vanishing at `var = 0` (`None` for the zero element,
    /// negative for a pole).
    pub fn order_at_zero(&self) -> Option<i64> {
        self.inner.ord_at_zero()
    }

    /// Value at `var = 0`, or `None` on a pole.
    pub fn value_at_zero(&self) -> Option<Rat> {
        self.inner.eval(&<Rat as CoeffField>::zero()).ok()
    }

    /// Dense polynomial coefficients in the formal variable, lowest first.
    /// Fails if the element has a nontrivial denominator or negative powers.
    pub fn poly_coeffs(&self) -> Result<Vec<Rat>, AlgebraError> {
        let err = AlgebraError::NonPolynomialCoefficient { var: V::VAR };
        if !self.inner.den().is_one() {
            return Err(err);
        }
        let num = self.inner.num();
        if num.is_zero() {
            return Ok(vec![]);
        }
        if num.trailing_degree().unwrap() < 0 {
            return Err(err);
        }
        let deg = num.degree().unwrap();
        Ok((0..=deg).map(|e| num.coeff(e)).collect())
    }

    /// The element as a constant rational, if it is one.
    pub fn as_const(&self) -> Option<Rat> {
        if self.inner.den().is_one() && self.inner.num().degree().unwrap_or(0) == 0 {
            Some(self.inner.num().coeff(0))
        } else {
            None
        }
    }
}

/// Limit of a rational function with `Q(var)` coefficients as the formal
/// variable goes to zero, returned over `Q`.
///
/// Numerator and denominator are rescaled by the common power of the formal
/// variable that makes the denominator finite and nonvanishing at zero; a
/// pole remaining in a numerator coefficient means the limit does not exist
/// and is reported as such.
pub fn formal_limit_at_zero<V: FormalVar>(
    f: &RatFn<Formal<V>>,
) -> Result<RatFn<Rat>, AlgebraError> {
    let min_den_ord = f
        .den()
        .terms()
        .filter_map(|(_, k)| k.order_at_zero())
        .min()
        .expect("nonzero denominator");
    let scale = Formal::<V>::var_pow(-min_den_ord);
    let at_zero = |p: &LaurentPoly<Formal<V>>| -> Result<LaurentPoly<Rat>, AlgebraError> {
        p.map_coeffs(|k| {
            (k.clone() * scale.clone())
                .value_at_zero()
                .ok_or(AlgebraError::FormalPole { var: V::VAR })
        })
    };
    RatFn::new(at_zero(f.num())?, at_zero(f.den())?)
}

impl<V: FormalVar> CoeffField for Formal<V> {
    const TAG: FieldTag = V::TAG;

    fn zero() -> Self {
        Self::wrap(RatFn::zero(V::VAR))
    }
    fn one() -> Self {
        Self::wrap(RatFn::one(V::VAR))
    }
    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }
    fn from_rat(r: Rat) -> Self {
        Self::wrap(RatFn::constant(V::VAR, r))
    }
    fn invert(&self) -> Option<Self> {
        self.inner.invert().ok().map(Self::wrap)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "num": self.inner.num().to_json(),
            "den": self.inner.den().to_json(),
        })
    }
    fn eval_with_c(&self, c: f64) -> f64 {
        self.inner.eval_f64(V::eval_var(c), c)
    }
    fn needs_parens(&self) -> bool {
        !self.inner.den().is_one() || self.inner.num().term_count() > 1
    }
    fn spec_rat(&self, x: &Rat) -> Option<Rat> {
        self.inner.eval(x).ok()
    }
}

impl<V: FormalVar> Add for Formal<V> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::wrap(&self.inner + &rhs.inner)
    }
}

impl<V: FormalVar> Sub for Formal<V> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::wrap(&self.inner - &rhs.inner)
    }
}

impl<V: FormalVar> Mul for Formal<V> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::wrap(&self.inner * &rhs.inner)
    }
}

impl<V: FormalVar> Neg for Formal<V> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::wrap(-&self.inner)
    }
}

impl<V: FormalVar> fmt::Display for Formal<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.inner, f)
    }
}

impl<V: FormalVar> fmt::Debug for Formal<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.inner, f)
    }
}
