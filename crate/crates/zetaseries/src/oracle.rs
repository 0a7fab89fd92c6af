//! Independent reference evaluators. Nothing here reuses the identity
//! machinery in [`crate::engine`]; every function goes back to a defining
//! series (plus classical acceleration), so agreement between the two layers
//! is a genuine cross-check rather than a tautology.

use alloc::string::String;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::context::EvalContext;
use crate::engine::SeriesEvaluation;
use crate::error::Error;
use crate::functions;
use crate::real::{div_round, pow10, Real};
use crate::special::{bernoulli, factorial};
use crate::{Rational, Result};

/// Ceiling on automatically chosen rotation counts in [`clausen_direct`].
/// Reaching it widens the reported error bound instead of failing.
const ROTATION_CAP: usize = 2_000_000;

/// Default cap for the central-binomial series (they converge like 4^-k, so
/// the cap only matters when callers force tiny explicit limits).
const BINOMIAL_SERIES_CAP: usize = 100_000;

/// A directly summed value together with how much work it took and a bound
/// on the error committed.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub value: Real,
    pub terms_used: usize,
    /// Bound on |true value - value| from the tail estimates and the
    /// accumulated rounding drift; at least one ulp of the working scale.
    pub error_bound: Real,
}

/// sum_{k>=0} (k + p/q)^{-s} for integer s >= 2 and 0 < p <= q, by direct
/// summation of `n` leading terms plus Euler-Maclaurin corrections at the
/// cut X = n + p/q:
///
///   tail = X^{1-s}/(s-1) + X^{-s}/2
///        + sum_{j>=1} B_{2j}/(2j)! (s)_{2j-1} X^{-s-2j+1}
///
/// The correction series is asymptotic; terms shrink until roughly
/// 2j ~ 2 pi X and then grow. `n` is chosen (and on the rare miss enlarged)
/// so the smallest term undercuts the target precision first.
fn hurwitz_shifted(s: u32, p: u32, q: u32, direct_terms: Option<u64>, ctx: &EvalContext) -> Real {
    debug_assert!(s >= 2 && p >= 1 && p <= q);
    let work = ctx.working_scale();
    let es = work + 12;
    let unit = pow10(es);
    let threshold = Real::from_mantissa(BigInt::one(), es);
    let accept = Real::from_mantissa(pow10(6), es);
    let mut n_terms = direct_terms.unwrap_or(2 * (u64::from(s) + u64::from(es)));
    for attempt in 0..4 {
        let qs_unit = BigInt::from(q).pow(s) * &unit;
        let mut acc = BigInt::zero();
        for k in 0..n_terms {
            let den = BigInt::from(k * u64::from(q) + u64::from(p)).pow(s);
            let term = div_round(&qs_unit, &den);
            if term.is_zero() {
                break;
            }
            acc += term;
        }
        let x_den = BigInt::from(n_terms) * q + p;
        let qp_unit = BigInt::from(q).pow(s - 1) * &unit;
        acc += div_round(&qp_unit, &(x_den.pow(s - 1) * (s - 1)));
        acc += div_round(&qs_unit, &(x_den.pow(s) * 2u32));

        let x_inv = Real::from_rational(&Rational::new(BigInt::from(q), x_den.clone()), es);
        let x_inv2 = &x_inv * &x_inv;
        let mut xpow = x_inv.powi(s + 1);
        let mut poch = BigInt::from(s);
        let mut corr = Real::zero(es);
        let mut prev: Option<Real> = None;
        let mut floor_mag = Real::zero(es);
        for j in 1..=u64::from(es) {
            let coeff = bernoulli(2 * j as usize, ctx)
                * Rational::new(poch.clone(), factorial(2 * j));
            let term = &Real::from_rational(&coeff, es) * &xpow;
            let mag = term.abs();
            if let Some(p_mag) = &prev {
                if &mag >= p_mag {
                    floor_mag = mag;
                    break;
                }
            }
            corr += &term;
            floor_mag = mag.clone();
            if mag < threshold {
                break;
            }
            prev = Some(mag);
            poch *= (u64::from(s) + 2 * j - 1) * (u64::from(s) + 2 * j);
            xpow = &xpow * &x_inv2;
        }
        if floor_mag < accept || attempt == 3 || direct_terms.is_some() {
            return (&Real::from_mantissa(acc, es) + &corr).with_scale(work);
        }
        n_terms *= 4;
    }
    unreachable!("the retry loop always returns on its last attempt");
}

/// zeta(s) for integer s >= 2 by direct summation with Euler-Maclaurin
/// acceleration. Entirely independent of the Bernoulli closed forms used by
/// [`crate::special::zeta_even`] and of the series engine.
pub fn zeta_direct(s: u32, ctx: &EvalContext) -> Result<Real> {
    if s == 1 {
        return Err(Error::InvalidDomain(String::from(
            "zeta(1) diverges: the zeta function has a simple pole at s = 1",
        )));
    }
    if s == 0 {
        return Err(Error::InvalidDomain(String::from(
            "zeta_direct requires s >= 2",
        )));
    }
    Ok(hurwitz_shifted(s, 1, 1, None, ctx))
}

/// [`zeta_direct`] with a caller-pinned number of directly summed terms,
/// for stability studies; the correction depth still adapts.
#[cfg(test)]
fn zeta_direct_n(s: u32, direct_terms: u64, ctx: &EvalContext) -> Result<Real> {
    if s < 2 {
        return Err(Error::InvalidDomain(String::from(
            "zeta_direct requires s >= 2",
        )));
    }
    Ok(hurwitz_shifted(s, 1, 1, Some(direct_terms.max(8)), ctx))
}

/// beta(s) = sum_{k>=0} (-1)^k (2k+1)^{-s} for s >= 1, accelerated with the
/// Chebyshev-weight scheme for alternating series: with d fixed below,
///
///   b_{-1} = -1, c_{-1} = -d,
///   c_k = b_{k-1} - c_{k-1},  accumulate c_k a_k,
///   b_k = b_{k-1} 2(k+n)(k-n) / ((2k+1)(k+1)),
///
/// and the estimate is the accumulated sum divided by d. The error after n
/// steps shrinks like (3+sqrt(8))^-n, about 0.766 digits per term.
pub fn beta_direct(s: u32, ctx: &EvalContext) -> Result<Real> {
    beta_direct_n(s, None, ctx)
}

pub(crate) fn beta_direct_n(s: u32, steps: Option<usize>, ctx: &EvalContext) -> Result<Real> {
    if s == 0 {
        return Err(Error::InvalidDomain(String::from(
            "beta_direct requires s >= 1",
        )));
    }
    let work = ctx.working_scale();
    let es = work + 10;
    let n = steps.unwrap_or_else(|| libm::ceil(1.31 * f64::from(es)) as usize + 2);
    let sqrt8 = functions::sqrt(&Real::from_int(8, es)).expect("8 is positive");
    let base = &Real::from_int(3, es) + &sqrt8;
    let dpow = base.powi(u32::try_from(n).expect("step count fits in u32"));
    let d = (&dpow + &(&Real::one(es) / &dpow)).div_int(2);
    let unit = pow10(es);
    let mut b = -Real::one(es);
    let mut c = -d.clone();
    let mut acc = Real::zero(es);
    for k in 0..n {
        c = &b - &c;
        let ak = Real::from_mantissa(
            div_round(&unit, &BigInt::from(2 * k as u64 + 1).pow(s)),
            es,
        );
        acc += &(&c * &ak);
        let ki = k as i64;
        let ni = n as i64;
        b = b
            .mul_int(2 * (ki + ni) * (ki - ni))
            .div_int((2 * ki + 1) * (ki + 1));
    }
    Ok((&acc / &d).with_scale(work))
}

/// beta(2n) through the Hurwitz-zeta route, a third voice fully independent
/// of both the alternating acceleration and the series engine:
///
///   beta(2n) = zeta(2n, 1/4) / 2^{4n-1}
///            - (2^{2n}-1) |B_{2n}| pi^{2n} / (2 (2n)!)
pub fn kolbig_beta(n: u32, ctx: &EvalContext) -> Result<Real> {
    if n == 0 {
        return Err(Error::InvalidDomain(String::from(
            "kolbig_beta requires n >= 1 (the argument is 2n)",
        )));
    }
    let work = ctx.working_scale();
    let es = work + 6;
    let hurwitz = hurwitz_shifted(2 * n, 1, 4, None, ctx);
    let piece1 = hurwitz
        .with_scale(es)
        .div_bigint(&(BigInt::one() << (4 * n - 1)));
    let b_abs = bernoulli(2 * n as usize, ctx).abs();
    let weight = (BigInt::one() << (2 * n)) - BigInt::one();
    let coeff = b_abs * Rational::new(weight, 2 * factorial(2 * u64::from(n)));
    let piece2 = &Real::from_rational(&coeff, es) * &ctx.pi_at(es).powi(2 * n);
    Ok((&piece1 - &piece2).with_scale(work))
}

/// Cl_{2m}(theta) = sum_{l>=1} sin(l theta) / l^{2m} by literal rotation of
/// (sin(l theta), cos(l theta)) through `l = 1..K`, plus an oscillatory
/// Euler-Maclaurin tail. Converges for any theta; the argument is first
/// reduced modulo 2 pi into (-pi, pi].
pub fn clausen_direct(m: u32, theta: &Real, ctx: &EvalContext) -> Result<Real> {
    Ok(clausen_direct_detailed(m, theta, None, ctx)?.value)
}

/// [`clausen_direct`] with the bookkeeping exposed and an optional pinned
/// rotation count (used by stability tests; `None` sizes automatically).
pub fn clausen_direct_detailed(
    m: u32,
    theta: &Real,
    rotations: Option<usize>,
    ctx: &EvalContext,
) -> Result<DirectSum> {
    if m == 0 {
        return Err(Error::InvalidDomain(String::from(
            "clausen_direct requires m >= 1 (the function order is 2m)",
        )));
    }
    let work = ctx.working_scale();
    let s = 2 * m;
    let reduce_scale = work + 30;
    let reduced = functions::reduce_mod_tau(theta, reduce_scale, ctx);
    let tiny = Real::from_mantissa(pow10(reduce_scale - work - 10), reduce_scale);
    if reduced.abs() < tiny {
        // The sine sum at |theta| < 10^-(work+10) is below one working ulp
        // even for m = 1, where it behaves like theta (1 - ln theta).
        return Ok(DirectSum {
            value: Real::zero(work),
            terms_used: 0,
            error_bound: Real::one(work).ulp(),
        });
    }
    let negative = reduced.is_negative();
    let t_abs = reduced.abs();

    // Rotation count and elevated scale fix each other (the scale carries
    // log10(K) digits of rotation-drift headroom), so iterate to agreement.
    let t_f = t_abs.to_f64();
    let mut es = work + 16;
    let mut k_terms = rotations.unwrap_or(64).max(8);
    for _ in 0..4 {
        if rotations.is_none() {
            let ideal = 8.0 * (f64::from(s) + 1.2 * f64::from(es)) / t_f;
            k_terms = if ideal >= ROTATION_CAP as f64 {
                ROTATION_CAP
            } else {
                (libm::ceil(ideal) as usize).max(64)
            };
        }
        es = work + 14 + libm::ceil(libm::log10(k_terms as f64)) as u32;
    }

    let t = t_abs.with_scale(es);
    let unit = pow10(es);
    let sin_step = functions::sin_at(&t, es, ctx);
    let cos_step = functions::cos_at(&t, es, ctx);
    let (sm, cm) = (sin_step.mantissa().clone(), cos_step.mantissa().clone());
    let mut sin_l = sm.clone();
    let mut cos_l = cm.clone();
    let mut acc = BigInt::zero();
    for l in 1..=(k_terms as u64) {
        acc += div_round(&sin_l, &BigInt::from(l).pow(s));
        let next_sin = div_round(&(&sin_l * &cm + &cos_l * &sm), &unit);
        let next_cos = div_round(&(&cos_l * &cm - &sin_l * &sm), &unit);
        sin_l = next_sin;
        cos_l = next_cos;
    }
    let mut total = Real::from_mantissa(acc, es);

    // Euler-Maclaurin tail for sum_{l>a} sin(l t) l^{-s} at a = K + 1, kept
    // oscillatory: the integral is expanded by parts (never absolutely),
    // so each stage gains a factor (s+r)/(t a) ~ 1/8 by the sizing above.
    let a = k_terms as u64 + 1;
    let a_big = BigInt::from(a);
    let a_pow_s = BigInt::from(a).pow(s);
    let arg = t.mul_int(a as i64);
    let sin_a = functions::sin_at(&arg, es, ctx);
    let cos_a = functions::cos_at(&arg, es, ctx);
    let threshold = Real::from_mantissa(pow10(4), es);

    let inv_ta = &Real::one(es) / &t.mul_bigint(&a_big);
    let mut w = &Real::one(es) / &t.mul_bigint(&a_pow_s);
    let mut ibp_floor = Real::zero(es);
    let mut r: u32 = 0;
    loop {
        let trig = if r % 2 == 0 { &cos_a } else { &sin_a };
        let contrib = &w * trig;
        if r % 4 < 2 {
            total += &contrib;
        } else {
            total -= &contrib;
        }
        let next = (&w * &inv_ta).mul_int(i64::from(s + r));
        if next.abs() >= w.abs() || r > 8 * es {
            ibp_floor = next.abs();
            break;
        }
        w = next;
        r += 1;
        if w.abs() < threshold {
            break;
        }
    }

    // f(a)/2 with f(l) = sin(l t) l^{-s}.
    total += &sin_a.div_bigint(&a_pow_s).div_int(2);

    // -sum_j B_{2j}/(2j)! f^(2j-1)(a). The derivative expands by Leibniz
    // over (sin part, power part); the inner loop walks i downward from r
    // so the dominant t^r a^-s term comes first and underflow only ever
    // truncates negligible contributions.
    let inv_a_s = Real::one(es).div_bigint(&a_pow_s);
    let ta = t.mul_bigint(&a_big);
    let t2 = &t * &t;
    let mut top = &t * &inv_a_s;
    let mut corr_floor = Real::zero(es);
    let mut prev: Option<Real> = None;
    let mut j: u32 = 1;
    loop {
        let r_ord = 2 * j - 1;
        let mut g = BigInt::one();
        let mut u = top.clone();
        let mut deriv = Real::zero(es);
        let mut i = r_ord;
        loop {
            if !u.is_zero() {
                let mag = u.mul_bigint(&g);
                let trig = if i % 2 == 0 { &sin_a } else { &cos_a };
                let mut term = &mag * trig;
                if i % 4 >= 2 {
                    term = -term;
                }
                if (r_ord - i) % 2 == 1 {
                    term = -term;
                }
                deriv += &term;
            }
            if i == 0 || u.is_zero() {
                break;
            }
            g = g * i * (u64::from(s) + u64::from(r_ord) - u64::from(i));
            g /= u64::from(r_ord) - u64::from(i) + 1;
            u = &u / &ta;
            i -= 1;
        }
        // B_{2j}/(2j)! shrinks like (2 pi)^-2j while the derivative grows
        // like t^{2j-1}; the product is moderate but neither factor may be
        // rounded to the working scale on its own, so multiply exactly.
        let coeff = bernoulli(2 * j as usize, ctx)
            * Rational::new(BigInt::one(), factorial(2 * u64::from(j)));
        let corr = deriv.mul_bigint(coeff.numer()).div_bigint(coeff.denom());
        let mag = corr.abs();
        let diverged = prev.as_ref().is_some_and(|p_mag| &mag >= p_mag) || j > 4 * es;
        if diverged {
            // asymptotic floor reached; drop the growing term
            corr_floor = mag;
            break;
        }
        total -= &corr;
        if mag < threshold {
            break;
        }
        prev = Some(mag);
        j += 1;
        top = &top * &t2;
    }

    let drift = Real::from_mantissa(BigInt::from(4 * k_terms as u64 + 64), es);
    let mut bound = (&(&ibp_floor.mul_int(2) + &corr_floor.mul_int(2)) + &drift).with_scale(work);
    if bound.is_zero() {
        bound = Real::one(work).ulp();
    }
    let value = if negative { -total } else { total };
    Ok(DirectSum {
        value: value.with_scale(work),
        terms_used: k_terms,
        error_bound: bound,
    })
}

/// Streaming terms of the accelerated zeta(3) series
/// (5/2) sum_{k>=1} (-1)^{k+1} / (k^3 binom(2k,k)); roughly 0.6 digits per
/// term. Ends (returns None) once terms underflow the stream's scale.
pub(crate) struct AperyTerms {
    k: u64,
    binom: BigInt,
    five_unit: BigInt,
    scale: u32,
}

impl AperyTerms {
    pub(crate) fn new(scale: u32) -> Self {
        AperyTerms {
            k: 0,
            binom: BigInt::from(2),
            five_unit: 5 * pow10(scale),
            scale,
        }
    }
}

impl Iterator for AperyTerms {
    type Item = Real;

    fn next(&mut self) -> Option<Real> {
        self.k += 1;
        let k = self.k;
        if k > 1 {
            self.binom = &self.binom * (2 * (2 * k - 1));
            self.binom = &self.binom / k;
        }
        let den = &self.binom * BigInt::from(2u128 * u128::from(k).pow(3));
        let mant = div_round(&self.five_unit, &den);
        if mant.is_zero() {
            return None;
        }
        let signed = if k % 2 == 1 { mant } else { -mant };
        Some(Real::from_mantissa(signed, self.scale))
    }
}

/// Streaming terms of the Catalan-constant series remainder
/// (3/8) sum_{n>=0} 1 / ((2n+1)^2 binom(2n,n)); the constant itself also
/// needs the (pi/8) ln(2+sqrt(3)) prefix, see [`ramanujan_catalan`].
pub(crate) struct CatalanBinomialTerms {
    n: u64,
    started: bool,
    binom: BigInt,
    three_unit: BigInt,
    scale: u32,
}

impl CatalanBinomialTerms {
    pub(crate) fn new(scale: u32) -> Self {
        CatalanBinomialTerms {
            n: 0,
            started: false,
            binom: BigInt::one(),
            three_unit: 3 * pow10(scale),
            scale,
        }
    }
}

impl Iterator for CatalanBinomialTerms {
    type Item = Real;

    fn next(&mut self) -> Option<Real> {
        if self.started {
            self.n += 1;
            self.binom = &self.binom * (2 * (2 * self.n - 1));
            self.binom = &self.binom / self.n;
        }
        self.started = true;
        let n = self.n;
        let den = &self.binom * BigInt::from(8 * (2 * n + 1) * (2 * n + 1));
        let mant = div_round(&self.three_unit, &den);
        if mant.is_zero() {
            return None;
        }
        Some(Real::from_mantissa(mant, self.scale))
    }
}

/// The accelerated central-binomial series for zeta(3). `max_terms` forces a
/// truncation; `None` runs to full working precision.
pub fn apery_series(max_terms: Option<usize>, ctx: &EvalContext) -> SeriesEvaluation {
    let work = ctx.working_scale();
    let es = work + 6;
    let cap = max_terms.unwrap_or(BINOMIAL_SERIES_CAP);
    let mut acc = Real::zero(es);
    let mut last = Real::zero(es);
    let mut used = 0usize;
    let mut truncated = true;
    let mut terms = AperyTerms::new(es);
    while used < cap {
        match terms.next() {
            Some(t) => {
                acc += &t;
                last = t.abs();
                used += 1;
            }
            None => {
                truncated = false;
                break;
            }
        }
    }
    SeriesEvaluation {
        value: acc.with_scale(work),
        terms_used: used,
        last_term_magnitude: last,
        truncated_by_cap: truncated,
    }
}

/// Catalan's constant as (pi/8) ln(2+sqrt(3)) plus the central-binomial
/// series; about 0.6 digits per series term.
pub fn ramanujan_catalan(max_terms: Option<usize>, ctx: &EvalContext) -> SeriesEvaluation {
    let work = ctx.working_scale();
    let es = work + 6;
    let cap = max_terms.unwrap_or(BINOMIAL_SERIES_CAP);
    let prefix = catalan_prefix(es, ctx);
    let mut acc = prefix;
    let mut last = Real::zero(es);
    let mut used = 0usize;
    let mut truncated = true;
    let mut terms = CatalanBinomialTerms::new(es);
    while used < cap {
        match terms.next() {
            Some(t) => {
                acc += &t;
                last = t.abs();
                used += 1;
            }
            None => {
                truncated = false;
                break;
            }
        }
    }
    SeriesEvaluation {
        value: acc.with_scale(work),
        terms_used: used,
        last_term_magnitude: last,
        truncated_by_cap: truncated,
    }
}

/// (pi/8) ln(2 + sqrt(3)) at the requested scale.
pub(crate) fn catalan_prefix(scale: u32, ctx: &EvalContext) -> Real {
    let sqrt3 = functions::sqrt(&Real::from_int(3, scale + 4)).expect("3 is positive");
    let base = &Real::from_int(2, scale + 4) + &sqrt3;
    let ln_base = functions::ln_at(&base, scale, ctx).expect("2 + sqrt(3) is positive");
    &ctx.pi_at(scale).div_int(8) * &ln_base
}
