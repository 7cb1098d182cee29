//! Small helpers around exact integers and rationals.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Decimal rendering truncated toward zero to `places` digits, with trailing
/// zeros removed (`0.75`, `-0.7777`, `1`, `0`).
pub fn truncate_decimal(value: &BigRational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = value.numer().abs() * &scale;
    // floor of |x| * 10^places is truncation toward zero of x
    let digits = scaled.div_floor(value.denom());
    if digits.is_zero() {
        return "0".to_string();
    }
    let (whole, frac) = digits.div_rem(&scale);
    let mut out = String::new();
    if value.is_negative() {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if !frac.is_zero() && places > 0 {
        let frac = format!("{:0>width$}", frac.to_string(), width = places);
        out.push('.');
        out.push_str(frac.trim_end_matches('0'));
    }
    out
}

pub fn to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// `log2(value)` for arbitrarily large integers, using the leading 64 bits as
/// mantissa.
pub fn log2_biguint(value: &BigUint) -> f64 {
    if value.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = value.bits();
    if bits <= 64 {
        return (value.to_u64().expect("fits in u64") as f64).log2();
    }
    let shift = bits - 64;
    let top = (value >> shift).to_u64().expect("64 leading bits");
    (top as f64).log2() + shift as f64
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Ceiling of `num / den` for positive integers.
pub fn ceil_div(num: &BigUint, den: &BigUint) -> BigUint {
    (num + den - 1u32) / den
}

/// Serializes a rational as `{ "num": "...", "den": "..." }`.
pub struct RationalJson<'a>(pub &'a BigRational);

impl Serialize for RationalJson<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Rational", 2)?;
        s.serialize_field("num", &self.0.numer().to_string())?;
        s.serialize_field("den", &self.0.denom().to_string())?;
        s.end()
    }
}

pub fn serialize_rational<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    RationalJson(value).serialize(s)
}

pub fn serialize_opt_rational<S: Serializer>(value: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => RationalJson(v).serialize(s),
        None => s.serialize_none(),
    }
}

pub fn serialize_biguint<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

pub fn serialize_rationals<S: Serializer>(values: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(RationalJson))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_not_rounding() {
        assert_eq!(truncate_decimal(&rat(5, 12), 4), "0.4166");
        assert_eq!(truncate_decimal(&rat(-7, 9), 4), "-0.7777");
        assert_eq!(truncate_decimal(&rat(3, 4), 4), "0.75");
        assert_eq!(truncate_decimal(&rat(1, 1), 4), "1");
        assert_eq!(truncate_decimal(&rat(0, 1), 4), "0");
        assert_eq!(truncate_decimal(&rat(-1, 100_000), 4), "0");
        assert_eq!(truncate_decimal(&rat(-5, 4), 4), "-1.25");
        assert_eq!(truncate_decimal(&rat(1, 20), 4), "0.05");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 2), BigUint::from(28u32));
        assert_eq!(binomial(5, 0), BigUint::one());
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn log2_of_large_integers() {
        let v = BigUint::one() << 300u32;
        assert!((log2_biguint(&v) - 300.0).abs() < 1e-12);
        assert!((log2_biguint(&BigUint::from(277u32)) - 277f64.log2()).abs() < 1e-15);
        let v = BigUint::from(3u32).pow(500);
        assert!((log2_biguint(&v) - 500.0 * 3f64.log2()).abs() < 1e-9);
    }
}
