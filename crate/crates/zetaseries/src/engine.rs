//! The master series `M(m, x) = sum_{k>=1} (2k-1)!/(2m+2k-1)! zeta(2k) x^{2k}`
//! and the identity solves that extract zeta(2n+1), beta(2n) and the
//! even-order Clausen values Cl_{2m}(theta) from it.
//!
//! Every term of the series is positive for x != 0, the factorial ratio and
//! zeta(2k) both decrease in k, and x^{2k} decays geometrically for |x| < 1,
//! so partial sums increase monotonically and the next term is bounded by
//! the current one times x^2. The stopping rule leans on that bound.

use alloc::string::String;

use num_bigint::BigInt;
use num_traits::One;

use crate::context::EvalContext;
use crate::error::Error;
use crate::functions;
use crate::oracle;
use crate::real::Real;
use crate::special::{self, factorial, harmonic};
use crate::{Rational, Result};

/// Default cap on summed terms. Only reachable for |x| = 1, where the terms
/// decay polynomially instead of geometrically.
pub const DEFAULT_TERM_CAP: usize = 1_000_000;

/// Validated arguments for the master series.
#[derive(Debug, Clone)]
pub struct MasterSeriesParams {
    order: u32,
    x: Real,
    term_cap: usize,
}

impl MasterSeriesParams {
    /// Requires `order >= 1` and `0 < |x| <= 1`.
    pub fn new(order: u32, x: Real) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidDomain(String::from(
                "master series order m must be at least 1",
            )));
        }
        if x.is_zero() || x.abs() > Real::one(x.scale()) {
            return Err(Error::InvalidDomain(alloc::format!(
                "master series argument must satisfy 0 < |x| <= 1, got {x}"
            )));
        }
        Ok(MasterSeriesParams { order, x, term_cap: DEFAULT_TERM_CAP })
    }

    /// Replaces the term cap (used both as a safety net at |x| = 1 and to
    /// force short truncations).
    pub fn with_term_cap(mut self, cap: usize) -> Self {
        assert!(cap >= 1, "term cap must be positive");
        self.term_cap = cap;
        self
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn x(&self) -> &Real {
        &self.x
    }

    pub fn term_cap(&self) -> usize {
        self.term_cap
    }
}

/// Outcome of a series summation.
#[derive(Debug, Clone)]
pub struct SeriesEvaluation {
    pub value: Real,
    pub terms_used: usize,
    pub last_term_magnitude: Real,
    /// True when the term cap stopped the sum before the convergence rule
    /// did; the value is then a deliberate truncation.
    pub truncated_by_cap: bool,
}

/// Streaming generator of master-series terms; the engine, the analyzer and
/// the truncation studies all draw from this single implementation.
pub(crate) struct MasterTerms<'c> {
    ctx: &'c EvalContext,
    order: u32,
    pub(crate) x2: Real,
    ratio: Real,
    xpow: Real,
    k: u32,
    /// From this index on, zeta(2k) - 1 < 10^-(work+8) and the factor is
    /// taken as exactly 1; keeps long |x| = 1 runs from growing the cache.
    zeta_one_from: u32,
}

impl<'c> MasterTerms<'c> {
    pub(crate) fn new(params: &MasterSeriesParams, ctx: &'c EvalContext) -> Self {
        let work = ctx.working_scale();
        let x = params.x().with_scale(work);
        let x2 = &x * &x;
        // The k = 1 factorial ratio is 1!/(2m+1)!; each step multiplies by
        // (2k)(2k+1) / ((2k+2m)(2k+2m+1)).
        let ratio = Real::from_rational(
            &Rational::new(BigInt::one(), factorial(2 * u64::from(params.order()) + 1)),
            work,
        );
        // 2k log10(2) > work + 8 makes zeta(2k) round to 1 at the working
        // scale; 60206 / 100000 is a lower bound on 2 log10(2).
        let zeta_one_from = 2 + (u64::from(work) + 8) * 100_000 / 60_206;
        MasterTerms {
            ctx,
            order: params.order(),
            x2,
            ratio,
            xpow: Real::one(work),
            k: 0,
            zeta_one_from: zeta_one_from.min(u64::from(u32::MAX)) as u32,
        }
    }
}

impl Iterator for MasterTerms<'_> {
    type Item = Real;

    fn next(&mut self) -> Option<Real> {
        self.k += 1;
        if self.k > 1 {
            let j = i64::from(self.k) - 1;
            let m = i64::from(self.order);
            self.ratio = self
                .ratio
                .mul_int(2 * j * (2 * j + 1))
                .div_int((2 * j + 2 * m) * (2 * j + 2 * m + 1));
        }
        self.xpow = &self.xpow * &self.x2;
        if self.k >= self.zeta_one_from {
            return Some(&self.ratio * &self.xpow);
        }
        let z = special::zeta_even(self.k, self.ctx)
            .expect("master series indices start at k = 1");
        Some(&(&self.ratio * &z) * &self.xpow)
    }
}

/// Sums the master series until the current term drops below the working
/// threshold relative to the running sum and the forecast next term (current
/// term times x^2, a rigorous bound) does too, or until the cap binds.
pub fn master_series(params: &MasterSeriesParams, ctx: &EvalContext) -> Result<SeriesEvaluation> {
    let work = ctx.working_scale();
    let eps = ctx.epsilon();
    let one = Real::one(work);
    let mut terms = MasterTerms::new(params, ctx);
    let x2 = terms.x2.clone();
    let mut sum = Real::zero(work);
    let mut last = Real::zero(work);
    let mut used = 0usize;
    let mut truncated = true;
    while used < params.term_cap() {
        let t = terms.next().expect("master terms never end");
        sum += &t;
        last = t.abs();
        used += 1;
        let gate = if sum.abs() > one { &sum.abs() * &eps } else { eps.clone() };
        if last < gate && (&last * &x2) < gate {
            truncated = false;
            break;
        }
    }
    Ok(SeriesEvaluation {
        value: sum,
        terms_used: used,
        last_term_magnitude: last,
        truncated_by_cap: truncated,
    })
}

/// zeta(2n+1) for n >= 1 at the working scale, memoized on the context.
pub fn zeta_odd(n: u32, ctx: &EvalContext) -> Result<Real> {
    if n == 0 {
        return Err(Error::InvalidDomain(String::from(
            "zeta(1) diverges: the zeta function has a simple pole at s = 1",
        )));
    }
    if let Some(v) = ctx.caches.borrow().zeta_odd.get(&n) {
        return Ok(v.clone());
    }
    let (value, _) = zeta_odd_eval(n, ctx, DEFAULT_TERM_CAP)?;
    ctx.caches.borrow_mut().zeta_odd.insert(n, value.clone());
    Ok(value)
}

/// The zeta(2n+1) solve with an explicit cap on the top-level series. Lower
/// odd zeta values feeding the solve are always fully converged (and cached);
/// only the outermost series is truncated.
pub fn zeta_odd_eval(
    n: u32,
    ctx: &EvalContext,
    term_cap: usize,
) -> Result<(Real, SeriesEvaluation)> {
    if n == 0 {
        return Err(Error::InvalidDomain(String::from(
            "zeta(1) diverges: the zeta function has a simple pole at s = 1",
        )));
    }
    for j in 1..n {
        zeta_odd(j, ctx)?;
    }
    let work = ctx.working_scale();
    let x = Real::from_ratio(1, 2, work);
    let params = MasterSeriesParams::new(n + 1, x)?.with_term_cap(term_cap);
    let ev = master_series(&params, ctx)?;
    let (offset, factor) = zeta_odd_affine(n, ctx)?;
    let value = &offset + &(&factor * &ev.value);
    Ok((value, ev))
}

/// Affine form of the solve: `zeta(2n+1) = offset + factor * M(n+1, 1/2)`.
///
/// offset = s_n pi^{2n} [ (ln pi - H_{2n+1})/(2n+1)!
///          - sum_{k=1}^{n-1} (-1)^k zeta(2k+1) / ((2n-2k+1)! pi^{2k}) ]
/// factor = -2 s_n pi^{2n},   s_n = (-1)^n.
pub(crate) fn zeta_odd_affine(n: u32, ctx: &EvalContext) -> Result<(Real, Real)> {
    let work = ctx.working_scale();
    let pi = ctx.pi();
    let pi2 = &pi * &pi;
    let h = Real::from_rational(&harmonic(2 * u64::from(n) + 1), work);
    let mut inner = (&ctx.ln_pi() - &h).div_bigint(&factorial(2 * u64::from(n) + 1));
    let mut pipow = Real::one(work);
    for k in 1..n {
        pipow = &pipow * &pi2;
        let term = zeta_odd(k, ctx)?
            .div_bigint(&factorial(2 * u64::from(n - k) + 1))
            / &pipow;
        if k % 2 == 1 {
            inner += &term;
        } else {
            inner -= &term;
        }
    }
    let pi2n = pi.powi(2 * n);
    let negate = n % 2 == 1;
    let offset = &pi2n * &inner;
    let factor = pi2n.mul_int(-2);
    Ok(if negate { (-offset, -factor) } else { (offset, factor) })
}

/// The same constant extracted from the x = 1/2 statement arranged the other
/// way round (series on the left, zeta values on the right). Numerically it
/// must agree with [`zeta_odd`]; the pair guards the sign conventions.
pub fn zeta_odd_rearranged(n: u32, ctx: &EvalContext) -> Result<Real> {
    if n == 0 {
        return Err(Error::InvalidDomain(String::from(
            "zeta(1) diverges: the zeta function has a simple pole at s = 1",
        )));
    }
    for j in 1..n {
        zeta_odd(j, ctx)?;
    }
    let work = ctx.working_scale();
    let pi = ctx.pi();
    let pi2 = &pi * &pi;
    let x = Real::from_ratio(1, 2, work);
    let ev = master_series(&MasterSeriesParams::new(n + 1, x)?, ctx)?;
    // 2 M(n+1, 1/2) = (ln pi - H_{2n+1})/(2n+1)!
    //               + sum_{m=1}^{n} (-1)^{m+1} zeta(2m+1) / (pi^{2m} (2n-2m+1)!)
    // with the m = n summand isolated and solved for.
    let h = Real::from_rational(&harmonic(2 * u64::from(n) + 1), work);
    let mut rest = (&ctx.ln_pi() - &h).div_bigint(&factorial(2 * u64::from(n) + 1));
    let mut pipow = Real::one(work);
    for m in 1..n {
        pipow = &pipow * &pi2;
        let term = zeta_odd(m, ctx)?
            .div_bigint(&factorial(2 * u64::from(n - m) + 1))
            / &pipow;
        if m % 2 == 1 {
            rest += &term;
        } else {
            rest -= &term;
        }
    }
    let isolated = &ev.value.mul_int(2) - &rest;
    let value = &pi.powi(2 * n) * &isolated;
    Ok(if n % 2 == 1 { value } else { -value })
}

/// beta(2n) for n >= 1 at the working scale.
pub fn beta_even(n: u32, ctx: &EvalContext) -> Result<Real> {
    Ok(beta_even_eval(n, ctx, DEFAULT_TERM_CAP)?.0)
}

/// The beta(2n) solve with an explicit cap on the top-level series.
pub fn beta_even_eval(
    n: u32,
    ctx: &EvalContext,
    term_cap: usize,
) -> Result<(Real, SeriesEvaluation)> {
    if n == 0 {
        return Err(Error::InvalidDomain(String::from(
            "beta_even requires n >= 1 (the argument is 2n)",
        )));
    }
    let work = ctx.working_scale();
    let x = Real::from_ratio(1, 4, work);
    let params = MasterSeriesParams::new(n, x)?.with_term_cap(term_cap);
    let ev = master_series(&params, ctx)?;
    let (offset, factor) = beta_even_affine(n, ctx)?;
    let value = &offset + &(&factor * &ev.value);
    Ok((value, ev))
}

/// Affine form: `beta(2n) = offset + factor * M(n, 1/4)`.
///
/// offset = s_n (pi/2)^{2n-1} [ (ln(pi/2) - H_{2n-1})/(2n-1)!
///          - sum_{k=1}^{n-1} (-1)^k zeta(2k+1) / ((2n-2k-1)! (pi/2)^{2k}) ]
/// factor = -2 s_n (pi/2)^{2n-1},   s_n = (-1)^n.
pub(crate) fn beta_even_affine(n: u32, ctx: &EvalContext) -> Result<(Real, Real)> {
    for j in 1..n {
        zeta_odd(j, ctx)?;
    }
    let work = ctx.working_scale();
    let hp = ctx.pi().div_int(2);
    let hp2 = &hp * &hp;
    let ln_hp = &ctx.ln_pi() - &ctx.ln2();
    let h = Real::from_rational(&harmonic(2 * u64::from(n) - 1), work);
    let mut inner = (&ln_hp - &h).div_bigint(&factorial(2 * u64::from(n) - 1));
    let mut hppow = Real::one(work);
    for k in 1..n {
        hppow = &hppow * &hp2;
        let term = zeta_odd(k, ctx)?
            .div_bigint(&factorial(2 * u64::from(n - k) - 1))
            / &hppow;
        if k % 2 == 1 {
            inner += &term;
        } else {
            inner -= &term;
        }
    }
    let lead = hp.powi(2 * n - 1);
    let negate = n % 2 == 1;
    let offset = &lead * &inner;
    let factor = lead.mul_int(-2);
    Ok(if negate { (-offset, -factor) } else { (offset, factor) })
}

/// Cl_{2m}(theta) for m >= 1 and 0 < |theta| <= 2 pi.
pub fn clausen_even(m: u32, theta: &Real, ctx: &EvalContext) -> Result<Real> {
    Ok(clausen_even_eval(m, theta, ctx, DEFAULT_TERM_CAP)?.0)
}

/// The Clausen solve with an explicit cap on the top-level series.
///
/// At |theta| = 2 pi the series argument reaches |x| = 1 and converges only
/// polynomially; the evaluation then reports a cap truncation instead of
/// full working precision.
pub fn clausen_even_eval(
    m: u32,
    theta: &Real,
    ctx: &EvalContext,
    term_cap: usize,
) -> Result<(Real, SeriesEvaluation)> {
    if m == 0 {
        return Err(Error::InvalidDomain(String::from(
            "Clausen order parameter m must be at least 1 (the function order is 2m)",
        )));
    }
    let work = ctx.working_scale();
    let th = theta.with_scale(work);
    let tau = ctx.pi().mul_int(2);
    let slack = Real::from_mantissa(BigInt::from(4), work);
    if th.is_zero() || th.abs() > &tau + &slack {
        return Err(Error::InvalidDomain(alloc::format!(
            "clausen_even requires 0 < |theta| <= 2 pi, got {th}"
        )));
    }
    for j in 1..m {
        zeta_odd(j, ctx)?;
    }
    let mut x = &th / &tau;
    if x.abs() > Real::one(work) {
        // theta == 2 pi up to representation slack; pin the ratio at 1.
        x = if x.is_negative() { -Real::one(work) } else { Real::one(work) };
    }
    let params = MasterSeriesParams::new(m, x)?.with_term_cap(term_cap);
    let ev = master_series(&params, ctx)?;
    let ln_t = functions::ln(&th.abs(), ctx)?;
    let h = Real::from_rational(&harmonic(2 * u64::from(m) - 1), work);
    let mut inner = (&ln_t - &h).div_bigint(&factorial(2 * u64::from(m) - 1));
    let t2 = &th * &th;
    let mut tpow = Real::one(work);
    for k in 1..m {
        tpow = &tpow * &t2;
        let term = zeta_odd(k, ctx)?
            .div_bigint(&factorial(2 * u64::from(m - k) - 1))
            / &tpow;
        if k % 2 == 1 {
            inner += &term;
        } else {
            inner -= &term;
        }
    }
    inner -= &ev.value.mul_int(2);
    let value = &th.powi(2 * m - 1) * &inner;
    Ok((if m % 2 == 1 { -value } else { value }, ev))
}

/// Which sign the sine series carries on the left-hand side of the
/// zeta(2n+1) sine-series identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SineSeriesSign {
    /// The correct convention: the sine sum is subtracted from zeta(2n+1).
    Subtracted,
    /// The flipped convention. With it the "identity" is false; the residual
    /// stays of the order of zeta(2n+1) instead of vanishing as x -> 0.
    Added,
}

/// Residual of the sine-series identity at index n and argument x:
///
/// LHS  = zeta(2n+1) - (1/(2 pi x)) sum_{l>=1} sin(2 pi l x) / l^{2n+2}
/// RHS  = (-1)^{n-1} (2 pi x)^{2n} [ (H_{2n+1} - ln(2 pi |x|))/(2n+1)!
///        + sum_{k=1}^{n-1} (-1)^k zeta(2k+1)/((2n-2k+1)! (2 pi x)^{2k})
///        + 2 M(n+1, x) ]
///
/// The sine sum is evaluated by the independent direct-summation oracle, so
/// a vanishing residual cross-checks the whole pipeline.
pub fn theorem3_residual(n: u32, x: &Real, ctx: &EvalContext) -> Result<Real> {
    theorem3_residual_signed(n, x, ctx, SineSeriesSign::Subtracted)
}

/// [`theorem3_residual`] with a selectable sine-series sign; `Added`
/// reproduces the rejected sign convention for demonstration.
pub fn theorem3_residual_signed(
    n: u32,
    x: &Real,
    ctx: &EvalContext,
    sign: SineSeriesSign,
) -> Result<Real> {
    if n == 0 {
        return Err(Error::InvalidDomain(String::from(
            "the sine-series identity residual requires n >= 1",
        )));
    }
    let work = ctx.working_scale();
    let xs = x.with_scale(work);
    if xs.is_zero() || xs.abs() > Real::one(work) {
        return Err(Error::InvalidDomain(alloc::format!(
            "the sine-series identity requires 0 < |x| <= 1, got {xs}"
        )));
    }
    let tau = ctx.pi().mul_int(2);
    let y = &tau * &xs;
    let zeta_top = zeta_odd(n, ctx)?;
    let sine_sum = oracle::clausen_direct(n + 1, &y, ctx)?;
    let scaled = &sine_sum / &y;
    let lhs = match sign {
        SineSeriesSign::Subtracted => &zeta_top - &scaled,
        SineSeriesSign::Added => &zeta_top + &scaled,
    };
    let h = Real::from_rational(&harmonic(2 * u64::from(n) + 1), work);
    let ln_y = functions::ln(&y.abs(), ctx)?;
    let mut inner = (&h - &ln_y).div_bigint(&factorial(2 * u64::from(n) + 1));
    let y2 = &y * &y;
    let mut ypow = Real::one(work);
    for k in 1..n {
        ypow = &ypow * &y2;
        let term = zeta_odd(k, ctx)?
            .div_bigint(&factorial(2 * u64::from(n - k) + 1))
            / &ypow;
        if k % 2 == 1 {
            inner -= &term;
        } else {
            inner += &term;
        }
    }
    let ev = master_series(&MasterSeriesParams::new(n + 1, xs)?, ctx)?;
    inner += &ev.value.mul_int(2);
    let rhs = &y.powi(2 * n) * &inner;
    let rhs = if n % 2 == 1 { rhs } else { -rhs };
    Ok(&lhs - &rhs)
}

/// Residual of the alternating-weight identity tying the x = 1/2 and x = 1/4
/// series to beta(2n), ln 2 and the odd zeta values:
///
/// LHS = M(n, 1/2) - M(n, 1/4)
/// RHS = (-1)^n 2^{2n-2} beta(2n) / pi^{2n-1} + n ln2 / (2n)!
///       + (1/2) sum_{m=1}^{n-1} (-1)^m (2^{2m}-1) zeta(2m+1)
///         / (pi^{2m} (2n-2m-1)!)
pub fn eq3_residual(n: u32, ctx: &EvalContext) -> Result<Real> {
    if n == 0 {
        return Err(Error::InvalidDomain(String::from(
            "the alternating-weight identity residual requires n >= 1",
        )));
    }
    for j in 1..n {
        zeta_odd(j, ctx)?;
    }
    let work = ctx.working_scale();
    let pi = ctx.pi();
    let pi2 = &pi * &pi;
    let half = Real::from_ratio(1, 2, work);
    let quarter = Real::from_ratio(1, 4, work);
    let m_half = master_series(&MasterSeriesParams::new(n, half)?, ctx)?;
    let m_quarter = master_series(&MasterSeriesParams::new(n, quarter)?, ctx)?;
    let lhs = &m_half.value - &m_quarter.value;

    let beta = beta_even(n, ctx)?;
    let lead = beta
        .mul_bigint(&(BigInt::one() << (2 * n - 2)))
        / &pi.powi(2 * n - 1);
    let mut rhs = if n % 2 == 1 { -lead } else { lead };
    rhs += &ctx
        .ln2()
        .mul_int(i64::from(n))
        .div_bigint(&factorial(2 * u64::from(n)));
    let mut pipow = Real::one(work);
    for m in 1..n {
        pipow = &pipow * &pi2;
        let weight = (BigInt::one() << (2 * m)) - BigInt::one();
        let term = zeta_odd(m, ctx)?
            .mul_bigint(&weight)
            .div_bigint(&factorial(2 * u64::from(n - m) - 1))
            .div_int(2)
            / &pipow;
        if m % 2 == 1 {
            rhs -= &term;
        } else {
            rhs += &term;
        }
    }
    Ok(&lhs - &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Precision;
    use crate::oracle;

    fn ctx(digits: u32) -> EvalContext {
        EvalContext::new(Precision::new(digits))
    }

    fn tol(mant: i64, scale: u32) -> Real {
        Real::from_mantissa(BigInt::from(mant), scale)
    }

    #[test]
    fn master_series_order_one_half_closed_form() {
        // 2 M(1, 1/2) = ln pi - 1
        let c = ctx(30);
        let params = MasterSeriesParams::new(1, Real::from_ratio(1, 2, 40)).unwrap();
        let ev = master_series(&params, &c).unwrap();
        assert!(!ev.truncated_by_cap);
        let want = (&c.ln_pi() - &Real::one(40)).div_int(2);
        assert!((&ev.value - &want).abs() < tol(100, 40), "M(1,1/2) = {}", ev.value);
    }

    #[test]
    fn master_series_ten_terms_reach_ten_decimals() {
        let c = ctx(30);
        let x = Real::from_ratio(1, 2, 40);
        let full = master_series(&MasterSeriesParams::new(2, x.clone()).unwrap(), &c).unwrap();
        let short = master_series(
            &MasterSeriesParams::new(2, x).unwrap().with_term_cap(10),
            &c,
        )
        .unwrap();
        assert_eq!(short.terms_used, 10);
        assert!(short.truncated_by_cap);
        assert!(!full.truncated_by_cap);
        assert!((&full.value - &short.value).abs() < tol(5, 11));
    }

    #[test]
    fn master_series_partial_sums_increase() {
        let c = ctx(20);
        let params = MasterSeriesParams::new(1, Real::parse("0.9", 30).unwrap()).unwrap();
        let mut terms = MasterTerms::new(&params, &c);
        let mut sum = Real::zero(30);
        for _ in 0..50 {
            let t = terms.next().unwrap();
            assert!(!t.is_negative() && !t.is_zero());
            let next = &sum + &t;
            assert!(next > sum);
            sum = next;
        }
    }

    #[test]
    fn master_series_cap_flags_truncation() {
        let c = ctx(20);
        let params = MasterSeriesParams::new(1, Real::one(30))
            .unwrap()
            .with_term_cap(200);
        let ev = master_series(&params, &c).unwrap();
        assert!(ev.truncated_by_cap);
        assert_eq!(ev.terms_used, 200);
        assert!(!ev.last_term_magnitude.is_zero());
    }

    #[test]
    fn master_series_domain_checks() {
        assert!(MasterSeriesParams::new(0, Real::from_ratio(1, 2, 10)).is_err());
        assert!(MasterSeriesParams::new(1, Real::zero(10)).is_err());
        assert!(MasterSeriesParams::new(1, Real::parse("1.001", 10).unwrap()).is_err());
        // negative x inside the unit interval is fine
        assert!(MasterSeriesParams::new(1, Real::from_ratio(-1, 3, 10)).is_ok());
    }

    #[test]
    fn zeta_odd_matches_direct_oracle() {
        let c = ctx(30);
        for n in 1..=4u32 {
            let solved = zeta_odd(n, &c).unwrap();
            let direct = oracle::zeta_direct(2 * n + 1, &c).unwrap();
            assert!(
                (&solved - &direct).abs() < tol(1, 33),
                "n={n}: solved={solved} direct={direct}"
            );
        }
    }

    #[test]
    fn zeta_odd_thirty_digit_value() {
        let c = ctx(30);
        let z3 = zeta_odd(1, &c).unwrap();
        assert_eq!(
            z3.to_decimal_string(30),
            "1.202056903159594285399738161511"
        );
    }

    #[test]
    fn zeta_odd_rearranged_agrees() {
        let c = ctx(30);
        for n in 1..=5u32 {
            let a = zeta_odd(n, &c).unwrap();
            let b = zeta_odd_rearranged(n, &c).unwrap();
            assert!((&a - &b).abs() < tol(1, 33), "n={n}");
        }
    }

    #[test]
    fn zeta_odd_rejects_the_pole() {
        let c = ctx(10);
        let err = zeta_odd(0, &c).unwrap_err();
        let msg = alloc::format!("{err}");
        assert!(msg.contains("simple pole at s = 1"), "{msg}");
    }

    #[test]
    fn beta_even_matches_alternating_oracle() {
        let c = ctx(30);
        for n in 1..=3u32 {
            let solved = beta_even(n, &c).unwrap();
            let direct = oracle::beta_direct(2 * n, &c).unwrap();
            assert!(
                (&solved - &direct).abs() < tol(1, 34),
                "n={n}: solved={solved} direct={direct}"
            );
        }
    }

    #[test]
    fn beta_even_catalan_thirty_digits() {
        let c = ctx(30);
        let g = beta_even(1, &c).unwrap();
        assert_eq!(
            g.to_decimal_string(30),
            "0.915965594177219015054603514932"
        );
    }

    #[test]
    fn beta_even_rejects_zero() {
        assert!(beta_even(0, &ctx(10)).is_err());
    }

    #[test]
    fn clausen_vanishes_at_pi_and_matches_beta_at_half_pi() {
        let c = ctx(30);
        let pi = c.pi();
        for m in 1..=3u32 {
            let at_pi = clausen_even(m, &pi, &c).unwrap();
            assert!(at_pi.abs() < tol(1, 34), "m={m}: {at_pi}");
            let at_half = clausen_even(m, &pi.div_int(2), &c).unwrap();
            let b = beta_even(m, &c).unwrap();
            assert!((&at_half - &b).abs() < tol(1, 34), "m={m}");
        }
    }

    #[test]
    fn clausen_is_odd_in_theta() {
        let c = ctx(25);
        let th = Real::parse("2.3", 35).unwrap();
        let plus = clausen_even(1, &th, &c).unwrap();
        let minus = clausen_even(1, &(-&th), &c).unwrap();
        assert!((&plus + &minus).abs() < tol(100, 35));
    }

    #[test]
    fn clausen_full_turn_truncates_but_stays_small() {
        // theta = 2 pi sits at |x| = 1 where the series only converges
        // polynomially; the cap must flag the truncation and the value (which
        // is exactly 0 in the limit) must still be small.
        let c = ctx(20);
        let tau = c.pi().mul_int(2);
        let (v, ev) = clausen_even_eval(1, &tau, &c, 6000).unwrap();
        assert!(ev.truncated_by_cap);
        assert!(v.abs() < Real::parse("0.001", 30).unwrap(), "{v}");
    }

    #[test]
    fn clausen_domain_checks() {
        let c = ctx(10);
        assert!(clausen_even(0, &c.pi(), &c).is_err());
        assert!(clausen_even(1, &Real::zero(20), &c).is_err());
        assert!(clausen_even(1, &Real::from_int(7, 20), &c).is_err());
    }

    #[test]
    fn sine_identity_residuals_vanish() {
        let c = ctx(25);
        for (n, num, den) in [(1u32, 1i64, 2i64), (2, -1, 3), (3, 1, 4)] {
            let x = Real::from_ratio(num, den, 35);
            let r = theorem3_residual(n, &x, &c).unwrap();
            assert!(r.abs() < tol(100_000, 35), "n={n} x={num}/{den}: {r}");
        }
    }

    #[test]
    fn sine_identity_left_side_scales_like_x_squared() {
        // As x -> 0 the left side shrinks like (2 pi x)^2 (within a factor
        // ~10); at n = 1, x = 10^-3 it is nowhere near zeta(3).
        let c = ctx(20);
        let x = Real::parse("0.001", 30).unwrap();
        let y2 = (&c.pi().mul_int(2) * &x).powi(2);
        let z3 = zeta_odd(1, &c).unwrap();
        let sine = oracle::clausen_direct(2, &(&c.pi().mul_int(2) * &x), &c).unwrap();
        let lhs = &z3 - &(&sine / &(&c.pi().mul_int(2) * &x));
        assert!(lhs.abs() < y2.mul_int(10), "lhs={lhs}");
        assert!(lhs.abs() > y2.div_int(10), "lhs={lhs}");
    }

    #[test]
    fn flipped_sine_sign_breaks_the_identity() {
        let c = ctx(20);
        let x = Real::parse("0.1", 30).unwrap();
        let ok = theorem3_residual_signed(1, &x, &c, SineSeriesSign::Subtracted).unwrap();
        let broken = theorem3_residual_signed(1, &x, &c, SineSeriesSign::Added).unwrap();
        assert!(ok.abs() < tol(100_000, 30));
        let z3 = zeta_odd(1, &c).unwrap();
        assert!(broken.abs() > z3.div_int(10), "broken residual = {broken}");
    }

    #[test]
    fn alternating_weight_residuals_vanish() {
        let c = ctx(25);
        for n in 1..=3u32 {
            let r = eq3_residual(n, &c).unwrap();
            assert!(r.abs() < tol(100_000, 35), "n={n}: {r}");
        }
    }
}
