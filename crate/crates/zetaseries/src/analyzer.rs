//! Convergence measurement and prediction.
//!
//! The terms of the master series behave like x^{2k} / (2k)^{2n+2} (with n
//! the solve index; the factorial ratio contributes the power, zeta(2k) tends
//! to 1). This module turns that model into predicted term counts and checks
//! them against measured counts: the smallest truncation whose partial sum
//! already agrees with the fully converged reference to a requested number
//! of digits.
//!
//! Solved constants are measured in the delivered scale: the solve maps the
//! series sum S through an affine offset + factor * S, so the partial sums
//! compared against the reference are the partially summed constants
//! themselves, not the bare series.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::context::EvalContext;
use crate::engine::{self, MasterSeriesParams, MasterTerms};
use crate::error::Error;
use crate::oracle;
use crate::real::{div_round, pow10, Real};
use crate::Result;

/// Cap on the term index while searching for a predicted count.
pub const PREDICTION_CAP: u64 = 1_000_000;

/// Measurement caps: the defining series of zeta and beta converge so slowly
/// that waiting for ten digits is hopeless; they get a short leash.
const MEASURE_CAP: u64 = 200_000;
const NAIVE_CAP: u64 = 10_000;

/// A series whose convergence can be measured.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesKind {
    /// The bare master series of a given order at argument x.
    Master { order: u32, x: Real },
    /// zeta(2n+1) through the x = 1/2 solve, measured in constant scale.
    ZetaOddSolve { n: u32 },
    /// beta(2n) through the x = 1/4 solve, measured in constant scale.
    BetaEvenSolve { n: u32 },
    /// The alternating central-binomial series for zeta(3).
    Apery,
    /// (pi/8) ln(2+sqrt(3)) plus the central-binomial series for Catalan.
    RamanujanCatalan,
    /// The defining series sum 1/k^s.
    NaiveZeta { s: u32 },
    /// The defining alternating series sum (-1)^k/(2k+1)^s.
    NaiveBeta { s: u32 },
}

impl SeriesKind {
    pub fn label(&self) -> String {
        match self {
            SeriesKind::Master { order, x } => {
                alloc::format!("master(m={order}, x={})", trim_decimal(x))
            }
            SeriesKind::ZetaOddSolve { n } => alloc::format!("zeta({}) solve", 2 * n + 1),
            SeriesKind::BetaEvenSolve { n } => alloc::format!("beta({}) solve", 2 * n),
            SeriesKind::Apery => String::from("zeta(3) central-binomial"),
            SeriesKind::RamanujanCatalan => String::from("catalan central-binomial"),
            SeriesKind::NaiveZeta { s } => alloc::format!("zeta({s}) defining series"),
            SeriesKind::NaiveBeta { s } => alloc::format!("beta({s}) defining series"),
        }
    }
}

fn trim_decimal(x: &Real) -> String {
    let mut s = alloc::format!("{x}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// How one series fared against a digit target.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub series_id: String,
    pub target_digits: u32,
    /// Model-predicted term count; None for series the power model does not
    /// describe. Saturates at [`PREDICTION_CAP`].
    pub predicted_terms: Option<u64>,
    /// Smallest truncation whose partial sum matches the reference to the
    /// target (absolute tolerance 0.5 * 10^-digits, relative for values
    /// above one).
    pub measured_terms: u64,
    /// log10 of each term magnitude, up to the measured truncation.
    pub per_term_log10: Vec<f64>,
}

/// log10 of the modeled term magnitude x^{2k} / (2k)^{2n+2} at index k, with
/// n the solve index (a master series of order m corresponds to n = m - 1).
pub fn predicted_log10_magnitude(k: u64, n: u32, x: &Real) -> f64 {
    let lx = match x.log10_magnitude() {
        Some(v) => v,
        None => return f64::NEG_INFINITY,
    };
    2.0 * k as f64 * lx - f64::from(2 * n + 2) * libm::log10(2.0 * k as f64)
}

/// The modeled term magnitude itself.
pub fn predicted_magnitude(k: u64, n: u32, x: &Real) -> f64 {
    libm::pow(10.0, predicted_log10_magnitude(k, n, x))
}

/// First index whose modeled magnitude drops below 10^-digits, saturating at
/// [`PREDICTION_CAP`] (relevant at |x| = 1, where decay is polynomial).
pub fn predicted_terms(target_digits: u32, n: u32, x: &Real) -> u64 {
    let goal = -f64::from(target_digits);
    for k in 1..=PREDICTION_CAP {
        if predicted_log10_magnitude(k, n, x) < goal {
            return k;
        }
    }
    PREDICTION_CAP
}

/// Measures how many terms the series actually needs for `target_digits`
/// agreement with its fully converged reference value.
pub fn measure_convergence(
    kind: &SeriesKind,
    target_digits: u32,
    ctx: &EvalContext,
) -> Result<ConvergenceReport> {
    let work = ctx.working_scale();
    if work < target_digits + 5 {
        return Err(Error::InvalidDomain(alloc::format!(
            "measuring {target_digits} digits needs a context with at least \
             {} working digits, got {work}",
            target_digits + 5
        )));
    }
    let label = kind.label();
    match kind {
        SeriesKind::Master { order, x } => {
            let params = MasterSeriesParams::new(*order, x.clone())?
                .with_term_cap(MEASURE_CAP as usize);
            let full = engine::master_series(&params, ctx)?;
            if full.truncated_by_cap {
                return Err(Error::NoConvergence {
                    series: label,
                    cap: MEASURE_CAP as usize,
                });
            }
            let terms = MasterTerms::new(&params, ctx);
            drive(
                label,
                target_digits,
                Some(predicted_terms(target_digits, order - 1, x)),
                &full.value,
                Real::zero(work),
                terms,
                MEASURE_CAP,
                ctx,
            )
        }
        SeriesKind::ZetaOddSolve { n } => {
            let reference = engine::zeta_odd(*n, ctx)?;
            let (offset, factor) = engine::zeta_odd_affine(*n, ctx)?;
            let x = Real::from_ratio(1, 2, work);
            let params = MasterSeriesParams::new(n + 1, x.clone())?;
            let terms = MasterTerms::new(&params, ctx).map(move |t| &factor * &t);
            drive(
                label,
                target_digits,
                Some(predicted_terms(target_digits, *n, &x)),
                &reference,
                offset,
                terms,
                MEASURE_CAP,
                ctx,
            )
        }
        SeriesKind::BetaEvenSolve { n } => {
            let reference = engine::beta_even(*n, ctx)?;
            let (offset, factor) = engine::beta_even_affine(*n, ctx)?;
            let x = Real::from_ratio(1, 4, work);
            let params = MasterSeriesParams::new(*n, x.clone())?;
            let terms = MasterTerms::new(&params, ctx).map(move |t| &factor * &t);
            drive(
                label,
                target_digits,
                Some(predicted_terms(target_digits, n - 1, &x)),
                &reference,
                offset,
                terms,
                MEASURE_CAP,
                ctx,
            )
        }
        SeriesKind::Apery => {
            let reference = oracle::apery_series(None, ctx).value;
            let terms = oracle::AperyTerms::new(work);
            drive(
                label,
                target_digits,
                None,
                &reference,
                Real::zero(work),
                terms,
                MEASURE_CAP,
                ctx,
            )
        }
        SeriesKind::RamanujanCatalan => {
            let reference = oracle::ramanujan_catalan(None, ctx).value;
            let prefix = oracle::catalan_prefix(work, ctx);
            let terms = oracle::CatalanBinomialTerms::new(work);
            drive(
                label,
                target_digits,
                None,
                &reference,
                prefix,
                terms,
                MEASURE_CAP,
                ctx,
            )
        }
        SeriesKind::NaiveZeta { s } => {
            let reference = oracle::zeta_direct(*s, ctx)?;
            let s = *s;
            let unit = pow10(work);
            let mut k = 0u64;
            let terms = core::iter::from_fn(move || {
                k += 1;
                Some(Real::from_mantissa(
                    div_round(&unit, &BigInt::from(k).pow(s)),
                    work,
                ))
            });
            drive(
                label,
                target_digits,
                None,
                &reference,
                Real::zero(work),
                terms,
                NAIVE_CAP,
                ctx,
            )
        }
        SeriesKind::NaiveBeta { s } => {
            let reference = oracle::beta_direct(*s, ctx)?;
            let s = *s;
            let unit = pow10(work);
            let mut k = 0u64;
            let terms = core::iter::from_fn(move || {
                let mant = div_round(&unit, &BigInt::from(2 * k + 1).pow(s));
                let signed = if k % 2 == 0 { mant } else { -mant };
                k += 1;
                Some(Real::from_mantissa(signed, work))
            });
            drive(
                label,
                target_digits,
                None,
                &reference,
                Real::zero(work),
                terms,
                NAIVE_CAP,
                ctx,
            )
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn drive(
    label: String,
    target_digits: u32,
    predicted: Option<u64>,
    reference: &Real,
    start: Real,
    mut terms: impl Iterator<Item = Real>,
    cap: u64,
    ctx: &EvalContext,
) -> Result<ConvergenceReport> {
    let work = ctx.working_scale();
    let half_ulp = Real::from_mantissa(BigInt::from(5), target_digits + 1);
    let tolerance = if reference.abs() > Real::one(work) {
        &half_ulp * &reference.abs()
    } else {
        half_ulp
    };
    let log_floor = -f64::from(work) - 6.0;
    let mut partial = start;
    let mut logs: Vec<f64> = Vec::new();
    let mut k = 0u64;
    while k < cap {
        let Some(t) = terms.next() else { break };
        k += 1;
        logs.push(t.log10_magnitude().unwrap_or(log_floor));
        partial += &t;
        if (&partial - reference).abs() < tolerance {
            return Ok(ConvergenceReport {
                series_id: label,
                target_digits,
                predicted_terms: predicted,
                measured_terms: k,
                per_term_log10: logs,
            });
        }
    }
    Err(Error::NoConvergence {
        series: label,
        cap: cap as usize,
    })
}

/// One row of a [`compare`] run.
#[derive(Debug)]
pub struct RaceEntry {
    pub label: String,
    pub outcome: Result<ConvergenceReport>,
}

/// Measures every series against the same digit target and ranks them:
/// converged entries first, fastest first; non-converging entries keep their
/// input order at the tail.
pub fn compare(kinds: &[SeriesKind], target_digits: u32, ctx: &EvalContext) -> Vec<RaceEntry> {
    let mut entries: Vec<RaceEntry> = kinds
        .iter()
        .map(|kind| RaceEntry {
            label: kind.label(),
            outcome: measure_convergence(kind, target_digits, ctx),
        })
        .collect();
    entries.sort_by(|a, b| match (&a.outcome, &b.outcome) {
        (Ok(x), Ok(y)) => x.measured_terms.cmp(&y.measured_terms),
        (Ok(_), Err(_)) => core::cmp::Ordering::Less,
        (Err(_), Ok(_)) => core::cmp::Ordering::Greater,
        (Err(_), Err(_)) => core::cmp::Ordering::Equal,
    });
    entries
}
