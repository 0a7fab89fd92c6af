//! Elementary functions on [`Real`]: pi, ln, exp, sin, cos, sqrt.
//!
//! Field operations on `Real` are correctly rounded; the functions here are
//! faithful to within a few units in the last place of the requested scale.
//! Each one computes at an internally elevated scale and rounds once at the
//! end, so callers can treat the results as exact to their own guard digits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::context::EvalContext;
use crate::error::Error;
use crate::real::{div_round, pow10, Real};
use crate::Result;

/// Extra digits carried inside every function before the final rounding.
const ELEVATION: u32 = 8;

/// `atan(1/x)` as a mantissa scaled by `unit = 10^scale`, by the Taylor
/// series with floor divisions. The accumulated floor error stays below the
/// term count, far inside [`ELEVATION`].
fn atan_inv_mant(x: u64, unit: &BigInt) -> BigInt {
    let xx = BigInt::from(x) * x;
    let mut power = unit / x;
    let mut total = power.clone();
    let mut k = 1u64;
    loop {
        power /= &xx;
        if power.is_zero() {
            break;
        }
        let term = &power / (2 * k + 1);
        if k.is_odd() {
            total -= term;
        } else {
            total += term;
        }
        k += 1;
    }
    total
}

/// `atanh(1/x)` as a mantissa scaled by `unit`, same contract as
/// [`atan_inv_mant`].
fn atanh_inv_mant(x: u64, unit: &BigInt) -> BigInt {
    let xx = BigInt::from(x) * x;
    let mut power = unit / x;
    let mut total = power.clone();
    let mut k = 1u64;
    loop {
        power /= &xx;
        if power.is_zero() {
            break;
        }
        total += &power / (2 * k + 1);
        k += 1;
    }
    total
}

/// pi via Machin's formula `pi = 16 atan(1/5) - 4 atan(1/239)`.
///
/// Callers normally go through [`EvalContext::pi_at`], which memoizes.
pub(crate) fn pi_uncached(scale: u32) -> Real {
    let work = scale + ELEVATION;
    let unit = pow10(work);
    let mant = atan_inv_mant(5, &unit) * 16 - atan_inv_mant(239, &unit) * 4;
    Real::from_mantissa(div_round(&mant, &pow10(ELEVATION)), scale)
}

/// ln 2 = 2 atanh(1/3).
pub(crate) fn ln2_uncached(scale: u32) -> Real {
    let work = scale + ELEVATION;
    let unit = pow10(work);
    let mant = atanh_inv_mant(3, &unit) * 2;
    Real::from_mantissa(div_round(&mant, &pow10(ELEVATION)), scale)
}

/// pi at the context's working scale.
pub fn pi(ctx: &EvalContext) -> Real {
    ctx.pi()
}

/// ln 2 at the context's working scale.
pub fn ln2(ctx: &EvalContext) -> Real {
    ctx.ln2()
}

/// ln pi at the context's working scale.
pub fn ln_pi(ctx: &EvalContext) -> Real {
    ctx.ln_pi()
}

/// Natural logarithm, rounded to the context's working scale.
pub fn ln(x: &Real, ctx: &EvalContext) -> Result<Real> {
    ln_at(x, ctx.working_scale(), ctx)
}

/// Natural logarithm at an explicit target scale.
///
/// Reduces `x = m * 2^k` with `m` in `[1, 2)`, then sums
/// `ln m = 2 atanh((m-1)/(m+1))` whose ratio is below 1/3.
pub(crate) fn ln_at(x: &Real, scale: u32, ctx: &EvalContext) -> Result<Real> {
    if x.is_zero() || x.is_negative() {
        return Err(Error::NonPositiveArgument(alloc::format!(
            "ln({}) is undefined",
            x
        )));
    }
    let es = scale + ELEVATION + 4;
    let mut m = x.with_scale(es);
    let one = Real::one(es);
    let two = Real::from_int(2, es);
    let mut k: i64 = 0;
    while m >= two {
        m = m.div_int(2);
        k += 1;
    }
    while m < one {
        m = m.mul_int(2);
        k -= 1;
    }
    let r = &(&m - &one) / &(&m + &one);
    let r2 = &r * &r;
    let mut power = r.clone();
    let mut sum = r.clone();
    let mut j = 1i64;
    loop {
        power = &power * &r2;
        let term = power.div_int(2 * j + 1);
        if term.is_zero() {
            break;
        }
        sum += &term;
        j += 1;
    }
    let mut result = sum.mul_int(2);
    if k != 0 {
        result = &result + &ctx.ln2_at(es).mul_int(k);
    }
    Ok(result.with_scale(scale))
}

/// Exponential, rounded to the context's working scale.
///
/// Reduces `x = k ln 2 + r` with `|r| <= ln2 / 2`, sums the Taylor series in
/// `r`, and rescales by `2^k`.
pub fn exp(x: &Real, ctx: &EvalContext) -> Real {
    let scale = ctx.working_scale();
    let es = scale + ELEVATION + 4;
    let xs = x.with_scale(es);
    let ln2 = ctx.ln2_at(es);
    let k = div_round((&xs / &ln2).mantissa(), &pow10(es));
    let r = &xs - &ln2.mul_bigint(&k);
    let mut term = Real::one(es);
    let mut sum = Real::one(es);
    let mut j = 1i64;
    loop {
        term = (&term * &r).div_int(j);
        if term.is_zero() {
            break;
        }
        sum += &term;
        j += 1;
    }
    // sum * 2^k, exactly on the mantissa.
    let mant = sum.into_mantissa();
    let shifted = match u32::try_from(&k) {
        Ok(up) => mant << up,
        Err(_) => {
            let down = u32::try_from(-&k).expect("exp argument out of supported range");
            div_round(&mant, &(BigInt::from(1) << down))
        }
    };
    Real::from_mantissa(shifted, es).with_scale(scale)
}

/// Sine, rounded to the context's working scale.
pub fn sin(x: &Real, ctx: &EvalContext) -> Real {
    sin_at(x, ctx.working_scale(), ctx)
}

/// Cosine, rounded to the context's working scale.
pub fn cos(x: &Real, ctx: &EvalContext) -> Real {
    cos_at(x, ctx.working_scale(), ctx)
}

/// Reduces `x` modulo 2 pi into `(-pi, pi]` at scale `es` (plus at most one
/// ulp of slack at the boundary).
pub(crate) fn reduce_mod_tau(x: &Real, es: u32, ctx: &EvalContext) -> Real {
    // Elevate by the argument magnitude so the reduced value keeps es digits.
    let mag = x.log10_magnitude().map(|l| l.max(0.0) as u32 + 1).unwrap_or(0);
    let inner = es + mag + 4;
    let tau = ctx.pi_at(inner).mul_int(2);
    let xs = x.with_scale(inner);
    let q = div_round((&xs / &tau).mantissa(), &pow10(inner));
    (&xs - &tau.mul_bigint(&q)).with_scale(es)
}

/// Odd/even Taylor cores on `[0, pi/2]`.
fn taylor_sin(a: &Real) -> Real {
    let a2 = a * a;
    let mut term = a.clone();
    let mut sum = a.clone();
    let mut j = 1i64;
    loop {
        term = (&term * &a2).div_int(-(2 * j) * (2 * j + 1));
        if term.is_zero() {
            break;
        }
        sum += &term;
        j += 1;
    }
    sum
}

fn taylor_cos(a: &Real) -> Real {
    let a2 = a * a;
    let mut term = Real::one(a.scale());
    let mut sum = term.clone();
    let mut j = 1i64;
    loop {
        term = (&term * &a2).div_int(-(2 * j - 1) * (2 * j));
        if term.is_zero() {
            break;
        }
        sum += &term;
        j += 1;
    }
    sum
}

pub(crate) fn sin_at(x: &Real, scale: u32, ctx: &EvalContext) -> Real {
    let es = scale + ELEVATION;
    let y = reduce_mod_tau(x, es, ctx);
    let negative = y.is_negative();
    let mut a = y.abs();
    let half_pi = ctx.pi_at(es).div_int(2);
    if a > half_pi {
        a = &ctx.pi_at(es) - &a;
    }
    let s = taylor_sin(&a);
    let s = if negative { -s } else { s };
    s.with_scale(scale)
}

pub(crate) fn cos_at(x: &Real, scale: u32, ctx: &EvalContext) -> Real {
    let es = scale + ELEVATION;
    let a = reduce_mod_tau(x, es, ctx).abs();
    let half_pi = ctx.pi_at(es).div_int(2);
    let c = if a > half_pi {
        -taylor_cos(&(&ctx.pi_at(es) - &a))
    } else {
        taylor_cos(&a)
    };
    c.with_scale(scale)
}

/// Square root at the argument's own scale, round-to-nearest.
pub fn sqrt(x: &Real) -> Result<Real> {
    if x.is_negative() {
        return Err(Error::InvalidDomain(alloc::format!(
            "sqrt({}) of a negative number",
            x
        )));
    }
    let scale = x.scale();
    // sqrt(m / 10^s) = sqrt(m * 10^s) / 10^s.
    let wide = x.mantissa() * pow10(scale);
    let mut root = wide.magnitude().sqrt();
    // Floor root; bump when the remainder passes the midpoint (q + 1/2)^2.
    let rem = wide.magnitude() - &root * &root;
    if rem > root {
        root += 1u32;
    }
    Ok(Real::from_mantissa(BigInt::from(root), scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Precision;

    fn ctx(digits: u32) -> EvalContext {
        EvalContext::new(Precision::new(digits))
    }

    /// Gauss arithmetic-geometric-mean computation of pi, used only as an
    /// independent check on the Machin evaluation.
    fn pi_agm(scale: u32) -> Real {
        let es = scale + 10;
        let mut a = Real::one(es);
        let mut b = (&Real::one(es) / &sqrt(&Real::from_int(2, es)).unwrap()).with_scale(es);
        let mut t = Real::from_ratio(1, 4, es);
        let mut p: i64 = 1;
        for _ in 0..12 {
            let an = (&a + &b).div_int(2);
            let bn = sqrt(&(&a * &b)).unwrap();
            let d = &a - &an;
            t = &t - &(&d * &d).mul_int(p);
            p *= 2;
            a = an;
            b = bn;
        }
        let s = &a + &b;
        (&(&s * &s) / &t.mul_int(4)).with_scale(scale)
    }

    #[test]
    fn machin_pi_matches_agm_oracle() {
        let machin = pi_uncached(40);
        let agm = pi_agm(40);
        let diff = (&machin - &agm).abs();
        assert!(
            diff <= Real::from_mantissa(BigInt::from(5), 38),
            "machin={machin} agm={agm}"
        );
    }

    #[test]
    fn pi_known_digits() {
        assert_eq!(pi_uncached(15).to_decimal_string(15), "3.141592653589793");
        // Self-consistency across scales: the wider value rounds onto the
        // narrower one.
        let wide = pi_uncached(80);
        assert_eq!(wide.with_scale(50), pi_uncached(50));
    }

    #[test]
    fn ln2_known_digits() {
        assert_eq!(ln2_uncached(15).to_decimal_string(15), "0.693147180559945");
    }

    #[test]
    fn ln_of_one_is_zero() {
        let c = ctx(30);
        let v = ln(&Real::one(40), &c).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn ln_is_additive_over_products() {
        let c = ctx(30);
        let six = ln(&Real::from_int(6, 40), &c).unwrap();
        let two = ln(&Real::from_int(2, 40), &c).unwrap();
        let three = ln(&Real::from_int(3, 40), &c).unwrap();
        let diff = (&six - &(&two + &three)).abs();
        assert!(diff <= Real::from_mantissa(BigInt::from(3), 40));
    }

    #[test]
    fn ln_of_series_e_is_one() {
        let c = ctx(30);
        // e from its defining series, summed exactly at scale 45.
        let mut e = Real::zero(45);
        let mut term = Real::one(45);
        let mut j = 1i64;
        while !term.is_zero() {
            e += &term;
            term = term.div_int(j);
            j += 1;
        }
        let v = ln(&e, &c).unwrap();
        let diff = (&v - &Real::one(40)).abs();
        assert!(diff <= Real::from_mantissa(BigInt::from(3), 40), "ln(e) = {v}");
    }

    #[test]
    fn ln_rejects_non_positive() {
        let c = ctx(10);
        assert!(matches!(
            ln(&Real::zero(10), &c),
            Err(Error::NonPositiveArgument(_))
        ));
        assert!(ln(&Real::from_int(-3, 10), &c).is_err());
    }

    #[test]
    fn ln_half_pi_has_known_digits() {
        // Cross-checked against exp: exp(v) must reproduce pi/2.
        let c = ctx(25);
        let half_pi = c.pi_at(40).div_int(2);
        let v = ln(&half_pi, &c).unwrap();
        assert_eq!(v.to_decimal_string(20), "0.45158270528945486473");
        let back = exp(&v, &c);
        let diff = (&back - &half_pi.with_scale(35)).abs();
        assert!(diff <= Real::from_mantissa(BigInt::from(10), 35));
    }

    #[test]
    fn exp_known_values() {
        let c = ctx(30);
        assert_eq!(exp(&Real::zero(40), &c), Real::one(40));
        let e = exp(&Real::one(40), &c);
        assert_eq!(e.to_decimal_string(15), "2.718281828459045");
        // exp(-1) * exp(1) = 1
        let inv = exp(&Real::from_int(-1, 40), &c);
        let prod = &e * &inv;
        let diff = (&prod - &Real::one(40)).abs();
        assert!(diff <= Real::from_mantissa(BigInt::from(3), 40));
    }

    #[test]
    fn sin_cos_special_points() {
        let c = ctx(30);
        let pi = c.pi();
        assert!(sin(&Real::zero(40), &c).is_zero());
        assert_eq!(cos(&Real::zero(40), &c), Real::one(40));
        // sin(pi) collapses to the ulp floor of the reduction.
        let sp = sin(&pi, &c).abs();
        assert!(sp <= Real::from_mantissa(BigInt::from(10), 40), "sin(pi) = {sp}");
        let s2 = sin(&pi.div_int(2), &c);
        assert!((&s2 - &Real::one(40)).abs() <= Real::from_mantissa(BigInt::from(3), 40));
        // sin(pi/6) = 1/2, cos(pi/3) = 1/2
        let s6 = sin(&pi.div_int(6), &c);
        assert!((&s6 - &Real::from_ratio(1, 2, 40)).abs()
            <= Real::from_mantissa(BigInt::from(3), 40));
        let c3 = cos(&pi.div_int(3), &c);
        assert!((&c3 - &Real::from_ratio(1, 2, 40)).abs()
            <= Real::from_mantissa(BigInt::from(3), 40));
    }

    #[test]
    fn sin_cos_pythagorean_and_periodicity() {
        let c = ctx(30);
        let tau = c.pi_at(40).mul_int(2);
        for text in ["0.37", "1.9", "-2.6", "100", "-55.25"] {
            let x = Real::parse(text, 40).unwrap();
            let s = sin(&x, &c);
            let co = cos(&x, &c);
            let norm = &(&s * &s) + &(&co * &co);
            let diff = (&norm - &Real::one(40)).abs();
            assert!(diff <= Real::from_mantissa(BigInt::from(10), 40), "x={text}");
            let shifted = sin(&(&x + &tau), &c);
            let drift = (&shifted - &s).abs();
            assert!(drift <= Real::from_mantissa(BigInt::from(10), 40), "x={text}");
        }
    }

    #[test]
    fn sqrt_known_values() {
        let two = Real::from_int(2, 15);
        assert_eq!(sqrt(&two).unwrap().to_decimal_string(15), "1.414213562373095");
        let x = Real::parse("7.29", 30).unwrap();
        let r = sqrt(&x).unwrap();
        assert_eq!(r.to_decimal_string(10), "2.7000000000");
        assert!(sqrt(&Real::from_int(-1, 5)).is_err());
        assert!(sqrt(&Real::zero(5)).unwrap().is_zero());
    }

    #[test]
    fn reduction_lands_in_symmetric_interval() {
        let c = ctx(20);
        let pi = c.pi_at(34);
        for text in ["6.4", "-6.4", "300.5", "-300.5", "3.2"] {
            let x = Real::parse(text, 30).unwrap();
            let y = reduce_mod_tau(&x, 30, &c);
            assert!(y.abs() <= &pi.with_scale(30) + &Real::from_mantissa(BigInt::from(9), 30));
        }
    }
}
