//! Big-rational scalars and numeric conversion helpers.
//!
//! `Rat` is `num`'s arbitrary-precision rational, which already maintains the
//! invariants we need: lowest terms and a positive denominator.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

pub type Rat = BigRational;

/// `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as an exact rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `b^e` for integer exponents of any sign. `0^negative` panics.
pub fn rat_pow(b: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let p = b.pow(e.unsigned_abs() as u32 as i32);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// 10^-digits as an exact rational, for tolerance comparisons.
pub fn rat_ten_pow_neg(digits: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(10u32).pow(digits))
}

/// Parses an exact rational from integer (`-3`), fraction (`3/4`), decimal
/// (`0.25`) or scientific (`1e-2`, `2.5e3`) notation.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational literal".into());
    }
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| format!("bad numerator {n:?}"))?;
        let den: BigInt = d.trim().parse().map_err(|_| format!("bad denominator {d:?}"))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(Rat::new(num, den));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e.parse().map_err(|_| format!("bad exponent {e:?}"))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(format!("bad rational literal {s:?}"));
    }
    let num: BigInt = digits.parse().map_err(|_| format!("bad rational literal {s:?}"))?;
    let scale = frac_part.len() as i64 - exp;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rat::new(num, ten.pow(scale as u32))
    } else {
        Rat::from_integer(num * ten.pow((-scale) as u32))
    })
}

/// Lossy conversion to `f64`, robust for ratios whose parts overflow `f64`.
pub fn rat_to_f64(r: &Rat) -> f64 {
    let direct = bigint_to_f64(r.numer()) / bigint_to_f64(r.denom());
    if direct.is_finite() {
        return direct;
    }
    // Scale both parts down to ~60 bits and divide, tracking the exponent.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let n = bigint_to_f64(&(r.numer() >> shift_n));
    let d = bigint_to_f64(&(r.denom() >> shift_d));
    (n / d) * 2f64.powi((shift_n - shift_d).clamp(-1_000_000, 1_000_000) as i32)
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    use num::ToPrimitive;
    x.to_f64().unwrap_or(match x.sign() {
        Sign::Minus => f64::NEG_INFINITY,
        _ => f64::INFINITY,
    })
}

/// Renders `r` as a decimal string with `digits` digits after the point,
/// rounding half away from zero. Exact input, deterministic output.
pub fn dec_string(r: &Rat, digits: u32) -> String {
    let neg = r.is_negative();
    let abs = r.abs();
    let scale = BigInt::from(10u32).pow(digits);
    // round(|r| * 10^digits)
    let scaled = abs * Rat::from_integer(scale.clone());
    let (q, rem) = num::Integer::div_rem(scaled.numer(), scaled.denom());
    let q = if &(rem * 2) >= scaled.denom() { q + 1 } else { q };
    let (int, frac) = num::Integer::div_rem(&q, &scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac:0>width$}", width = digits as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-7").unwrap(), rat_i(-7));
        assert_eq!(parse_rat("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rat("1e-2").unwrap(), rat(1, 100));
        assert_eq!(parse_rat("2.5e3").unwrap(), rat_i(2500));
        assert_eq!(parse_rat("1E4").unwrap(), rat_i(10000));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(dec_string(&rat(1, 3), 10), "0.3333333333");
        assert_eq!(dec_string(&rat(-3, 1), 4), "-3.0000");
        assert_eq!(dec_string(&rat(1, 2), 0), "1");
        assert_eq!(dec_string(&rat(2, 3), 3), "0.667");
    }

    #[test]
    fn f64_conversion_survives_huge_ratios() {
        let huge = rat_pow(&rat_i(10), 400);
        let x = huge.clone() / (huge.clone() + Rat::one());
        let v = rat_to_f64(&x);
        assert!((v - 1.0).abs() < 1e-12, "got {v}");
        assert_eq!(rat_to_f64(&rat(1, 3)), 1.0 / 3.0);
    }
}
