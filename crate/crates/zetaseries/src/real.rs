//! Fixed-point decimal arithmetic on top of `num-bigint`.
//!
//! A [`Real`] stores an integer mantissa `m` and a decimal scale `s` and
//! represents exactly `m / 10^s`. Addition and subtraction of equally scaled
//! values are exact; multiplication, division and rescaling round the result
//! to the operand scale with round-half-to-even. Callers that need headroom
//! (series engines, argument reduction) work at an elevated scale and round
//! back down at the end.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::{Rational, Result};

/// `10^k` as a big integer.
pub(crate) fn pow10(k: u32) -> BigInt {
    BigInt::from(10u8).pow(k)
}

/// Rounds `n / d` to the nearest integer, ties to even. `d` must be nonzero.
pub(crate) fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(!d.is_zero(), "division by zero in div_round");
    let negative = (n.sign() == Sign::Minus) != (d.sign() == Sign::Minus);
    let (q, r) = n.magnitude().div_rem(d.magnitude());
    let twice: BigUint = &r << 1;
    let q = match twice.cmp(d.magnitude()) {
        Ordering::Greater => q + 1u32,
        Ordering::Less => q,
        Ordering::Equal => {
            if q.is_odd() {
                q + 1u32
            } else {
                q
            }
        }
    };
    if negative {
        -BigInt::from(q)
    } else {
        BigInt::from(q)
    }
}

/// Fixed-point decimal number: `mant / 10^scale`.
#[derive(Clone)]
pub struct Real {
    mant: BigInt,
    scale: u32,
}

impl Real {
    /// Builds a value directly from a mantissa at the given scale.
    pub fn from_mantissa(mant: BigInt, scale: u32) -> Self {
        Real { mant, scale }
    }

    pub fn zero(scale: u32) -> Self {
        Real { mant: BigInt::ZERO, scale }
    }

    pub fn one(scale: u32) -> Self {
        Real { mant: pow10(scale), scale }
    }

    pub fn from_int(n: i64, scale: u32) -> Self {
        Real { mant: BigInt::from(n) * pow10(scale), scale }
    }

    /// Rounds an exact rational to the given scale.
    pub fn from_rational(r: &Rational, scale: u32) -> Self {
        let num = r.numer() * pow10(scale);
        Real { mant: div_round(&num, r.denom()), scale }
    }

    /// `num / den` rounded to the given scale.
    pub fn from_ratio(num: i64, den: i64, scale: u32) -> Self {
        debug_assert!(den != 0);
        let n = BigInt::from(num) * pow10(scale);
        Real { mant: div_round(&n, &BigInt::from(den)), scale }
    }

    /// Parses a plain decimal literal (`-12.345`, `0.5`, `7`) and rounds it
    /// to the given scale.
    pub fn parse(text: &str, scale: u32) -> Result<Self> {
        let bad = || Error::InvalidDomain(alloc::format!("not a decimal number: {text:?}"));
        let (negative, body) = match text.as_bytes().first() {
            Some(b'-') => (true, &text[1..]),
            Some(b'+') => (false, &text[1..]),
            _ => (false, text),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let int_mant = if int_part.is_empty() {
            BigInt::ZERO
        } else {
            int_part.parse::<BigInt>().map_err(|_| bad())?
        };
        let mut mant = int_mant * pow10(scale);
        if !frac_part.is_empty() {
            let frac = frac_part.parse::<BigInt>().map_err(|_| bad())?;
            let len = frac_part.len() as u32;
            // frac / 10^len, brought to `scale` fractional digits.
            mant += div_round(&(frac * pow10(scale)), &pow10(len));
        }
        if negative {
            mant = -mant;
        }
        Ok(Real { mant, scale })
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn into_mantissa(self) -> BigInt {
        self.mant
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Real {
        Real { mant: self.mant.abs(), scale: self.scale }
    }

    /// One unit in the last place at this value's scale.
    pub fn ulp(&self) -> Real {
        Real { mant: BigInt::from(1), scale: self.scale }
    }

    /// Rescales, rounding half-to-even when digits are dropped.
    pub fn with_scale(&self, scale: u32) -> Real {
        match scale.cmp(&self.scale) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => Real {
                mant: &self.mant * pow10(scale - self.scale),
                scale,
            },
            Ordering::Less => Real {
                mant: div_round(&self.mant, &pow10(self.scale - scale)),
                scale,
            },
        }
    }

    /// Multiplication by a machine integer (exact in the mantissa).
    pub fn mul_int(&self, k: i64) -> Real {
        Real { mant: &self.mant * k, scale: self.scale }
    }

    /// Division by a machine integer, rounded at this scale.
    pub fn div_int(&self, k: i64) -> Real {
        Real { mant: div_round(&self.mant, &BigInt::from(k)), scale: self.scale }
    }

    /// Multiplication by a big integer (exact in the mantissa).
    pub fn mul_bigint(&self, k: &BigInt) -> Real {
        Real { mant: &self.mant * k, scale: self.scale }
    }

    /// Division by a big integer, rounded at this scale.
    pub fn div_bigint(&self, k: &BigInt) -> Real {
        Real { mant: div_round(&self.mant, k), scale: self.scale }
    }

    /// Integer power with round-to-nearest at each multiplication.
    pub fn powi(&self, exp: u32) -> Real {
        let mut result = Real::one(self.scale);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact conversion to a rational (`mant / 10^scale`).
    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mant.clone(), pow10(self.scale))
    }

    /// Approximate base-10 logarithm of `|self|`; `None` for zero.
    ///
    /// Accurate to well below one percent, which is all the convergence
    /// bookkeeping needs.
    pub fn log10_magnitude(&self) -> Option<f64> {
        if self.mant.is_zero() {
            return None;
        }
        let m = self.mant.magnitude();
        let bits = m.bits();
        let (top, shift) = if bits <= 64 {
            (m.to_f64()?, 0u64)
        } else {
            ((m >> (bits - 64)).to_f64()?, bits - 64)
        };
        Some(libm::log10(top) + shift as f64 * core::f64::consts::LOG10_2 - self.scale as f64)
    }

    /// Lossy conversion for reporting. Values far outside the f64 range
    /// saturate to infinity.
    pub fn to_f64(&self) -> f64 {
        match self.log10_magnitude() {
            None => 0.0,
            Some(lg) => {
                let mag = libm::pow(10.0, lg);
                if self.mant.is_negative() {
                    -mag
                } else {
                    mag
                }
            }
        }
    }

    /// Renders the value with exactly `frac_digits` digits after the decimal
    /// point, rounding half-to-even at the cut.
    pub fn to_decimal_string(&self, frac_digits: u32) -> String {
        let r = self.with_scale(frac_digits);
        let negative = r.mant.is_negative();
        let m = r.mant.magnitude();
        let (int, frac) = m.div_rem(pow10(frac_digits).magnitude());
        let sign = if negative && !m.is_zero() { "-" } else { "" };
        if frac_digits == 0 {
            alloc::format!("{sign}{int}")
        } else {
            let digits = frac.to_str_radix(10);
            let width = frac_digits as usize;
            alloc::format!("{sign}{int}.{digits:0>width$}")
        }
    }

    fn aligned(&self, other: &Real) -> (BigInt, BigInt, u32) {
        match self.scale.cmp(&other.scale) {
            Ordering::Equal => (self.mant.clone(), other.mant.clone(), self.scale),
            Ordering::Less => (
                &self.mant * pow10(other.scale - self.scale),
                other.mant.clone(),
                other.scale,
            ),
            Ordering::Greater => (
                self.mant.clone(),
                &other.mant * pow10(self.scale - other.scale),
                self.scale,
            ),
        }
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string(self.scale))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({} * 10^-{})", self.mant, self.scale)
    }
}

impl core::ops::Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { mant: -&self.mant, scale: self.scale }
    }
}

impl core::ops::Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { mant: -self.mant, scale: self.scale }
    }
}

impl core::ops::Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        let (a, b, scale) = self.aligned(rhs);
        Real { mant: a + b, scale }
    }
}

impl core::ops::Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        let (a, b, scale) = self.aligned(rhs);
        Real { mant: a - b, scale }
    }
}

impl core::ops::Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        // Product carries scale (sa + sb); round back to max(sa, sb).
        let scale = self.scale.max(rhs.scale);
        let prod = &self.mant * &rhs.mant;
        let drop = self.scale.min(rhs.scale);
        if drop == 0 {
            Real { mant: prod, scale }
        } else {
            Real { mant: div_round(&prod, &pow10(drop)), scale }
        }
    }
}

impl core::ops::Div for &Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        assert!(!rhs.mant.is_zero(), "division by zero Real");
        let scale = self.scale.max(rhs.scale);
        // round(a.mant * 10^(scale - sa + sb) / b.mant) at the target scale.
        let shift = scale - self.scale + rhs.scale;
        let num = &self.mant * pow10(shift);
        Real { mant: div_round(&num, &rhs.mant), scale }
    }
}

macro_rules! forward_value_binop {
    ($trait:ident, $method:ident) => {
        impl core::ops::$trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl core::ops::$trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl core::ops::$trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

forward_value_binop!(Add, add);
forward_value_binop!(Sub, sub);
forward_value_binop!(Mul, mul);
forward_value_binop!(Div, div);

impl core::ops::AddAssign<&Real> for Real {
    fn add_assign(&mut self, rhs: &Real) {
        *self = &*self + rhs;
    }
}

impl core::ops::SubAssign<&Real> for Real {
    fn sub_assign(&mut self, rhs: &Real) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(text: &str, scale: u32) -> Real {
        Real::parse(text, scale).unwrap()
    }

    #[test]
    fn parse_and_render_round_trip() {
        let x = r("12.345", 5);
        assert_eq!(x.to_decimal_string(5), "12.34500");
        assert_eq!(x.to_decimal_string(2), "12.34"); // tie at the cut, rounds to even
        let y = r("-0.5", 3);
        assert_eq!(y.to_decimal_string(3), "-0.500");
        assert_eq!(r("7", 2).to_decimal_string(2), "7.00");
        assert_eq!(r("+0.25", 4).to_decimal_string(4), "0.2500");
    }

    #[test]
    fn parse_rounds_excess_digits() {
        // 0.123456789 at scale 4: 0.1235 (half-even on the 5th digit 5678...)
        assert_eq!(r("0.123456789", 4).to_decimal_string(4), "0.1235");
        assert_eq!(r("0.99995", 4).to_decimal_string(4), "1.0000");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Real::parse("", 5).is_err());
        assert!(Real::parse("1.2.3", 5).is_err());
        assert!(Real::parse("12a", 5).is_err());
        assert!(Real::parse(".", 5).is_err());
        assert!(Real::parse("-", 5).is_err());
    }

    #[test]
    fn ties_round_to_even() {
        assert_eq!(r("0.25", 1).to_decimal_string(1), "0.2");
        assert_eq!(r("0.35", 1).to_decimal_string(1), "0.4");
        assert_eq!(r("-0.25", 1).to_decimal_string(1), "-0.2");
    }

    #[test]
    fn arithmetic_matches_exact_rationals() {
        let a = r("3.1415", 8);
        let b = r("2.7182", 8);
        let sum = &a + &b;
        assert_eq!(sum.to_decimal_string(8), "5.85970000");
        let diff = &a - &b;
        assert_eq!(diff.to_decimal_string(8), "0.42330000");
        let prod = &a * &b;
        // 3.1415 * 2.7182 = 8.53922530 exactly
        assert_eq!(prod.to_decimal_string(8), "8.53922530");
        let quot = &r("1", 20) / &r("3", 20);
        assert_eq!(quot.to_decimal_string(20), "0.33333333333333333333");
    }

    #[test]
    fn mixed_scale_operands_take_wider_scale() {
        let a = r("1.5", 2);
        let b = r("0.25", 6);
        assert_eq!((&a + &b).scale(), 6);
        assert_eq!((&a + &b).to_decimal_string(6), "1.750000");
        assert_eq!((&a * &b).to_decimal_string(6), "0.375000");
    }

    #[test]
    fn powers_and_integers() {
        let half = Real::from_ratio(1, 2, 12);
        assert_eq!(half.powi(10).to_decimal_string(12), "0.000976562500");
        assert_eq!(Real::from_int(-3, 4).mul_int(7).to_decimal_string(4), "-21.0000");
        assert_eq!(Real::from_int(1, 10).div_int(8).to_decimal_string(10), "0.1250000000");
        assert_eq!(half.powi(0), Real::one(12));
    }

    #[test]
    fn comparisons_ignore_representation_scale() {
        assert_eq!(r("1.50", 4), r("1.5", 9));
        assert!(r("-2", 3) < r("0.001", 6));
        assert!(r("0.001", 6) > Real::zero(1));
    }

    #[test]
    fn rational_round_trip() {
        let q = Rational::new(BigInt::from(22), BigInt::from(7));
        let x = Real::from_rational(&q, 30);
        let back = x.to_rational();
        let err = (&q - &back).abs();
        let bound = Rational::new(BigInt::from(1), pow10(29));
        assert!(err < bound);
    }

    #[test]
    fn log10_magnitude_tracks_size() {
        let x = r("1000", 5);
        let lg = x.log10_magnitude().unwrap();
        assert!((lg - 3.0).abs() < 1e-9);
        let tiny = Real::from_mantissa(BigInt::from(1), 40);
        assert!((tiny.log10_magnitude().unwrap() + 40.0).abs() < 1e-9);
        assert!(Real::zero(10).log10_magnitude().is_none());
        // a mantissa far beyond f64 range still reports a finite magnitude
        let huge = Real::from_mantissa(pow10(500), 10);
        assert!((huge.log10_magnitude().unwrap() - 490.0).abs() < 1e-6);
    }

    #[test]
    fn division_rounds_to_nearest() {
        // 2/3 at scale 4 = 0.6667
        let q = &Real::from_int(2, 4) / &Real::from_int(3, 4);
        assert_eq!(q.to_decimal_string(4), "0.6667");
        // negative: -2/3 = -0.6667
        let q = &Real::from_int(-2, 4) / &Real::from_int(3, 4);
        assert_eq!(q.to_decimal_string(4), "-0.6667");
    }
}
