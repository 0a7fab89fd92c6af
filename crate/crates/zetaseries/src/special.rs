//! Exact integer/rational sequences and the classical closed forms built
//! from them: Bernoulli and Euler numbers, harmonic numbers, zeta at even
//! arguments and beta at odd arguments.

use core::mem;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::context::EvalContext;
use crate::error::Error;
use crate::real::{div_round, pow10, Real};
use crate::{Rational, Result};

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut f = BigInt::one();
    for j in 2..=n {
        f *= j;
    }
    f
}

/// Binomial coefficient over big integers.
pub fn binomial(n: u64, k: u64) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// The n-th Bernoulli number, with the `B_1 = -1/2` convention, memoized on
/// the context.
///
/// Generated by the defining recurrence
/// `B_m = -(1/(m+1)) * sum_{j=0}^{m-1} C(m+1, j) B_j`, evaluated over exact
/// rationals.
pub fn bernoulli(n: usize, ctx: &EvalContext) -> Rational {
    {
        let caches = ctx.caches.borrow();
        if let Some(b) = caches.bernoulli.get(n) {
            return b.clone();
        }
    }
    let mut table = mem::take(&mut ctx.caches.borrow_mut().bernoulli);
    if table.is_empty() {
        table.push(Rational::one());
    }
    for m in table.len()..=n {
        let mut sum = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                sum += b * Rational::from(binomial(m as u64 + 1, j as u64));
            }
        }
        table.push(-sum / Rational::from(BigInt::from(m + 1)));
    }
    let result = table[n].clone();
    ctx.caches.borrow_mut().bernoulli = table;
    result
}

/// The n-th Euler number (integer sequence: 1, 0, -1, 0, 5, 0, -61, ...),
/// memoized on the context.
///
/// Odd indices vanish; even ones satisfy
/// `sum_{j=0}^{n} C(2n, 2j) E_{2j} = 0`.
pub fn euler_number(n: usize, ctx: &EvalContext) -> BigInt {
    if n % 2 == 1 {
        return BigInt::ZERO;
    }
    let half = n / 2;
    {
        let caches = ctx.caches.borrow();
        if let Some(e) = caches.euler.get(half) {
            return e.clone();
        }
    }
    let mut table = mem::take(&mut ctx.caches.borrow_mut().euler);
    if table.is_empty() {
        table.push(BigInt::one());
    }
    for m in table.len()..=half {
        let mut sum = BigInt::ZERO;
        for (j, e) in table.iter().enumerate() {
            sum += binomial(2 * m as u64, 2 * j as u64) * e;
        }
        table.push(-sum);
    }
    let result = table[half].clone();
    ctx.caches.borrow_mut().euler = table;
    result
}

/// The n-th harmonic number as an exact rational. `harmonic(0) = 0`.
pub fn harmonic(n: u64) -> Rational {
    let mut h = Rational::zero();
    for l in 1..=n {
        h += Rational::new(BigInt::one(), BigInt::from(l));
    }
    h
}

/// Checks `H_{2n+1} = -sum_{l=1}^{2n+1} ((-1)^l / l) C(2n+1, l)` exactly.
pub fn harmonic_binomial_identity_check(n: u32) -> bool {
    let m = 2 * u64::from(n) + 1;
    let mut rhs = Rational::zero();
    for l in 1..=m {
        let term = Rational::new(binomial(m, l), BigInt::from(l));
        if l % 2 == 1 {
            rhs += term;
        } else {
            rhs -= term;
        }
    }
    harmonic(m) == rhs
}

/// zeta(2n) for n >= 1 at the working scale, memoized on the context.
///
/// Low orders use the Bernoulli closed form
/// `zeta(2n) = (-1)^(n-1) 2^(2n-1) B_{2n} pi^(2n) / (2n)!`; once `2n`
/// exceeds a third of the working digits the direct power sum is cheaper
/// than the exact rational coefficient, so the evaluation switches over.
pub fn zeta_even(n: u32, ctx: &EvalContext) -> Result<Real> {
    if n == 0 {
        return Err(Error::InvalidDomain(alloc::string::String::from(
            "zeta_even requires n >= 1 (the argument is 2n)",
        )));
    }
    if let Some(v) = ctx.caches.borrow().zeta_even.get(&n) {
        return Ok(v.clone());
    }
    let work = ctx.working_scale();
    let es = work + 6;
    let value = if 2 * n > work / 3 {
        direct_even_power_sum(2 * n, es)
    } else {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let coeff = bernoulli(2 * n as usize, ctx)
            * Rational::from(BigInt::from(sign) << (2 * n - 1))
            / Rational::from(factorial(2 * u64::from(n)));
        &Real::from_rational(&coeff, es) * &ctx.pi_at(es).powi(2 * n)
    }
    .with_scale(work);
    ctx.caches.borrow_mut().zeta_even.insert(n, value.clone());
    Ok(value)
}

/// Plain `sum_{j>=1} j^(-s)` for even `s` large enough that the sum dies
/// within a handful of terms at scale `es`.
fn direct_even_power_sum(s: u32, es: u32) -> Real {
    let unit = pow10(es);
    let mut total = unit.clone();
    let mut j = 2u64;
    loop {
        let term = div_round(&unit, &BigInt::from(j).pow(s));
        if term.is_zero() {
            break;
        }
        total += term;
        j += 1;
    }
    Real::from_mantissa(total, es)
}

/// beta(2n+1) for n >= 0 at the working scale:
/// `beta(2n+1) = (-1)^n E_{2n} pi^(2n+1) / (2^(2n+2) (2n)!)`.
pub fn beta_odd(n: u32, ctx: &EvalContext) -> Real {
    let work = ctx.working_scale();
    let es = work + 6;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let coeff = Rational::new(
        BigInt::from(sign) * euler_number(2 * n as usize, ctx),
        BigInt::one() << (2 * n + 2),
    ) / Rational::from(factorial(2 * u64::from(n)));
    (&Real::from_rational(&coeff, es) * &ctx.pi_at(es).powi(2 * n + 1)).with_scale(work)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Precision;

    fn ctx(digits: u32) -> EvalContext {
        EvalContext::new(Precision::new(digits))
    }

    fn rat(num: i64, den: i64) -> Rational {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    /// Akiyama-Tanigawa triangle, an independent Bernoulli generator. It
    /// produces the `B_1 = +1/2` convention, so only even indices are
    /// compared.
    fn bernoulli_at(n: usize) -> Rational {
        let mut row: Vec<Rational> = (0..=n)
            .map(|j| Rational::new(BigInt::one(), BigInt::from(j as u64 + 1)))
            .collect();
        for i in 1..=n {
            for j in 0..=(n - i) {
                let d = &row[j] - &row[j + 1];
                row[j] = d * Rational::from(BigInt::from(j as u64 + 1));
            }
        }
        row[0].clone()
    }

    #[test]
    fn bernoulli_known_values() {
        let c = ctx(20);
        assert_eq!(bernoulli(0, &c), Rational::one());
        assert_eq!(bernoulli(1, &c), rat(-1, 2));
        assert_eq!(bernoulli(2, &c), rat(1, 6));
        assert_eq!(bernoulli(3, &c), Rational::zero());
        assert_eq!(bernoulli(12, &c), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_matches_akiyama_tanigawa() {
        let c = ctx(20);
        for n in (0..=24).step_by(2) {
            assert_eq!(bernoulli(n, &c), bernoulli_at(n), "B_{n}");
        }
    }

    #[test]
    fn bernoulli_defining_sum_vanishes() {
        let c = ctx(20);
        for n in 1..=40usize {
            let mut sum = Rational::zero();
            for j in 0..=n {
                sum += bernoulli(j, &c) * Rational::from(binomial(n as u64 + 1, j as u64));
            }
            assert!(sum.is_zero(), "n={n}");
        }
    }

    /// Reciprocal of the cosh power series over exact rationals; the
    /// half-degree coefficients of sech give the Euler numbers.
    fn euler_from_sech(m: usize) -> BigInt {
        let cosh: Vec<Rational> = (0..=m)
            .map(|j| Rational::new(BigInt::one(), factorial(2 * j as u64)))
            .collect();
        let mut sech: Vec<Rational> = Vec::with_capacity(m + 1);
        sech.push(Rational::one());
        for k in 1..=m {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += &cosh[j] * &sech[k - j];
            }
            sech.push(-s);
        }
        let e = &sech[m] * Rational::from(factorial(2 * m as u64));
        assert!(e.denom().is_one());
        e.numer().clone()
    }

    #[test]
    fn euler_known_values_and_sech_oracle() {
        let c = ctx(20);
        let expected: [i64; 6] = [1, -1, 5, -61, 1385, -50521];
        for (m, want) in expected.iter().enumerate() {
            assert_eq!(euler_number(2 * m, &c), BigInt::from(*want), "E_{}", 2 * m);
        }
        assert_eq!(euler_number(7, &c), BigInt::ZERO);
        for m in 0..=10 {
            assert_eq!(euler_number(2 * m, &c), euler_from_sech(m), "E_{}", 2 * m);
        }
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), Rational::zero());
        assert_eq!(harmonic(1), Rational::one());
        assert_eq!(harmonic(3), rat(11, 6));
        assert_eq!(harmonic(5), rat(137, 60));
    }

    #[test]
    fn harmonic_binomial_identity_holds() {
        for n in 1..=20 {
            assert!(harmonic_binomial_identity_check(n), "n={n}");
        }
    }

    #[test]
    fn zeta_even_low_orders_match_pi_powers() {
        let c = ctx(30);
        let pi = c.pi();
        let z2 = zeta_even(1, &c).unwrap();
        let want = (&pi * &pi).div_int(6);
        assert!((&z2 - &want).abs() <= Real::from_mantissa(BigInt::from(5), 40));
        assert_eq!(z2.to_decimal_string(15), "1.644934066848226");
        let z4 = zeta_even(2, &c).unwrap();
        let want4 = pi.powi(4).div_int(90);
        assert!((&z4 - &want4).abs() <= Real::from_mantissa(BigInt::from(5), 40));
    }

    #[test]
    fn zeta_even_switchover_agrees_with_closed_form() {
        // At 30 requested digits the switch to direct summation happens for
        // 2n > 13; spot-check a direct-path value against the Bernoulli form.
        let c = ctx(30);
        let n = 8u32;
        let direct = zeta_even(n, &c).unwrap();
        let coeff = bernoulli(2 * n as usize, &c)
            * Rational::from(-(BigInt::one() << (2 * n - 1)))
            / Rational::from(factorial(2 * u64::from(n)));
        let closed = (&Real::from_rational(&coeff, 46) * &c.pi_at(46).powi(2 * n)).with_scale(40);
        assert!((&direct - &closed).abs() <= Real::from_mantissa(BigInt::from(9), 40));
    }

    #[test]
    fn zeta_even_far_tail_digits() {
        // zeta(60) = 1 + 2^-60 + ... = 1.000000000000000000867...
        let c = ctx(25);
        let z = zeta_even(30, &c).unwrap();
        assert_eq!(z.to_decimal_string(21), "1.000000000000000000867");
    }

    #[test]
    fn zeta_even_rejects_zero() {
        let c = ctx(10);
        assert!(matches!(zeta_even(0, &c), Err(Error::InvalidDomain(_))));
    }

    #[test]
    fn beta_odd_closed_forms() {
        let c = ctx(30);
        let pi = c.pi();
        let b1 = beta_odd(0, &c);
        assert!((&b1 - &pi.div_int(4)).abs() <= Real::from_mantissa(BigInt::from(5), 40));
        let b3 = beta_odd(1, &c);
        assert!((&b3 - &pi.powi(3).div_int(32)).abs() <= Real::from_mantissa(BigInt::from(5), 40));
        let b5 = beta_odd(2, &c);
        let want = pi.powi(5).mul_int(5).div_int(1536);
        assert!((&b5 - &want).abs() <= Real::from_mantissa(BigInt::from(5), 40));
    }
}
