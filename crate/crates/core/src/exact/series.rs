//! Truncated power series of rational functions at `0` or at infinity.
//!
//! Expansion at infinity mirrors the function through `x -> 1/x` and reuses
//! the expansion at zero, so there is a single division routine. Functions
//! with a pole at the center are rejected with the pole order.

use std::fmt;

use crate::error::AlgebraError;
use crate::exact::{CoeffField, LaurentPoly, RatFn, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionCenter {
    Zero,
    Infinity,
}

impl fmt::Display for ExpansionCenter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExpansionCenter::Zero => "zero",
            ExpansionCenter::Infinity => "infinity",
        })
    }
}

/// Coefficients of `x^i` (center zero) or `x^-i` (center infinity) for
/// `i = 0 ..= order`.
#[derive(Clone, PartialEq)]
pub struct SeriesExpansion<K: CoeffField> {
    var: Var,
    center: ExpansionCenter,
    coeffs: Vec<K>,
}

impl<K: CoeffField> RatFn<K> {
    /// Taylor expansion about the center through the given order.
    pub fn series(
        &self,
        center: ExpansionCenter,
        order: usize,
    ) -> Result<SeriesExpansion<K>, AlgebraError> {
        match center {
            ExpansionCenter::Zero => series_at_zero(self, order),
            ExpansionCenter::Infinity => {
                let mirrored =
                    RatFn::new(self.num().rev_exponents(), self.den().rev_exponents())?;
                let mut s = series_at_zero(&mirrored, order)?;
                s.center = ExpansionCenter::Infinity;
                Ok(s)
            }
        }
    }
}

fn series_at_zero<K: CoeffField>(
    f: &RatFn<K>,
    order: usize,
) -> Result<SeriesExpansion<K>, AlgebraError> {
    let var = f.var();
    if f.is_zero() {
        return Ok(SeriesExpansion {
            var,
            center: ExpansionCenter::Zero,
            coeffs: vec![K::zero(); order + 1],
        });
    }
    let tn = f.num().trailing_degree().unwrap();
    let td = f.den().trailing_degree().unwrap();
    if tn < td {
        return Err(AlgebraError::PoleAtCenter { order: td - tn });
    }
    let n: Vec<K> = (0..=order as i64).map(|i| f.num().coeff(i)).collect();
    let d: Vec<K> = (0..=order as i64).map(|i| f.den().coeff(i)).collect();
    let d0inv = d[0].invert().expect("regular at center");
    let mut coeffs: Vec<K> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = n[k].clone();
        for j in 1..=k {
            acc = acc - d[j].clone() * coeffs[k - j].clone();
        }
        coeffs.push(acc * d0inv.clone());
    }
    Ok(SeriesExpansion { var, center: ExpansionCenter::Zero, coeffs })
}

impl<K: CoeffField> SeriesExpansion<K> {
    pub fn var(&self) -> Var {
        self.var
    }

    pub fn center(&self) -> ExpansionCenter {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs[i].clone()
    }

    pub fn odd_coeffs_vanish(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(K::is_zero)
    }

    /// The truncation as a Laurent polynomial (negative powers for the
    /// expansion at infinity).
    pub fn truncation(&self) -> LaurentPoly<K> {
        let sign = match self.center {
            ExpansionCenter::Zero => 1,
            ExpansionCenter::Infinity => -1,
        };
        LaurentPoly::from_terms(
            self.var,
            self.coeffs.iter().enumerate().map(|(i, k)| (sign * i as i64, k.clone())),
        )
    }

    pub fn eval_f64(&self, x: f64, c: f64) -> f64 {
        self.truncation().eval_f64(x, c)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "var": self.var.name(),
            "center": self.center.to_string(),
            "coeffs": self.coeffs.iter().map(CoeffField::to_json).collect::<Vec<_>>(),
        })
    }
}

impl<K: CoeffField> fmt::Display for SeriesExpansion<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tail_exp = self.coeffs.len() as i64;
        let (var, exp) = match self.center {
            ExpansionCenter::Zero => (self.var, tail_exp),
            ExpansionCenter::Infinity => (self.var, -tail_exp),
        };
        write!(f, "{} + O({}^{})", self.truncation(), var, exp)
    }
}

impl<K: CoeffField> fmt::Debug for SeriesExpansion<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
