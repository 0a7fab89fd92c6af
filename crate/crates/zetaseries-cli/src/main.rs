//! Command-line front end: evaluates the library's constants, re-checks the
//! identities behind them at any precision, and races series against each
//! other to a digit target.

use clap::{Parser, Subcommand, ValueEnum};
use core::fmt::Write;
use serde::Serialize;
use std::io::Write as IoWrite;
use zetaseries::analyzer::{self, SeriesKind};
use zetaseries::context::{EvalContext, Precision};
use zetaseries::engine::{self, SeriesEvaluation, SineSeriesSign};
use zetaseries::error::Error;
use zetaseries::real::Real;
use zetaseries::{oracle, special};

#[derive(Parser)]
#[command(
    name = "zetaseries",
    version,
    about = "High-precision zeta(2n+1), beta(2n) and Clausen values via even-zeta series"
)]
struct Cli {
    /// Fractional digits in printed values.
    #[arg(
        long,
        global = true,
        env = "ZETASERIES_DIGITS",
        default_value_t = 30,
        value_parser = clap::value_parser!(u32).range(1..=100_000)
    )]
    digits: u32,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single constant.
    Compute {
        #[command(subcommand)]
        constant: ConstantCmd,
    },
    /// Re-derive the identities at the requested precision; exits 1 when any
    /// residual exceeds the tolerance 10^-(digits-5).
    Verify {
        /// Largest index n to check.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=8))]
        n_max: u32,
        /// Flip the sign of the sine-series term, demonstrating that the
        /// residuals vanish only with the subtracted convention.
        #[arg(long)]
        simulate_katsurada_sign: bool,
    },
    /// Race series against each other to a digit target.
    Race {
        /// Comma-separated list drawn from: paper-zeta3, paper-catalan,
        /// apery, ramanujan, naive-zeta3, naive-beta2.
        #[arg(long, required = true, value_delimiter = ',')]
        series: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ConstantCmd {
    /// zeta(2n+1) for n >= 1, e.g. n = 1 for zeta(3).
    ZetaOdd {
        n: u32,
        /// Cap on the number of series terms; the output then reports the
        /// truncation honestly in error_estimate.
        #[arg(long)]
        max_terms: Option<usize>,
    },
    /// beta(2n) for n >= 1, e.g. n = 1 for Catalan's constant.
    BetaEven {
        n: u32,
        #[arg(long)]
        max_terms: Option<usize>,
    },
    /// Cl_{2m}(theta) for m >= 1. theta accepts a decimal or the tokens
    /// pi, pi/2, pi/3, pi/4, 2pi, each optionally preceded by '-'.
    Clausen {
        m: u32,
        #[arg(allow_hyphen_values = true)]
        theta: String,
        #[arg(long)]
        max_terms: Option<usize>,
    },
    /// zeta(2n) for n >= 1 in closed form.
    ZetaEven { n: u32 },
    /// beta(2n+1) for n >= 0 in closed form.
    BetaOdd { n: u32 },
}

#[derive(Serialize)]
struct OutputRecord {
    constant: String,
    digits: u32,
    value: String,
    terms_used: u64,
    method: String,
    error_estimate: String,
}

fn main() {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match dispatch(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NoConvergence { .. } => 1,
                _ => 2,
            }
        }
    };
    // A closed pipe on the reading side is not an error worth a panic.
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    std::process::exit(code);
}

fn dispatch(cli: Cli, out: &mut String) -> Result<i32, Error> {
    match cli.command {
        Command::Compute { constant } => run_compute(constant, cli.digits, cli.format, out),
        Command::Verify { n_max, simulate_katsurada_sign } => {
            run_verify(cli.digits, n_max, simulate_katsurada_sign, cli.format, out)
        }
        Command::Race { series } => run_race(cli.digits, &series, cli.format, out),
    }
}

/// 10^-p, for tolerance thresholds.
fn pow10_neg(p: u32) -> Real {
    Real::one(p).ulp()
}

/// "m.me{exp}" rendering of a magnitude given its decimal log.
fn sci_from_log10(lg: f64) -> String {
    let mut exp = lg.floor() as i64;
    let mut mant = 10f64.powf(lg - exp as f64);
    if mant >= 9.95 {
        mant /= 10.0;
        exp += 1;
    }
    format!("{mant:.1}e{exp}")
}

fn sci(x: &Real) -> String {
    match x.log10_magnitude() {
        Some(lg) => sci_from_log10(lg),
        None => String::from("0"),
    }
}

/// Error estimate for a record: half an ulp of the printed value when the
/// series ran to convergence, otherwise a forecast of the discarded tail
/// (geometric continuation of the last term, polynomial at |x| = 1) scaled
/// by the weight the solve applies to the series.
fn error_estimate(
    digits: u32,
    ev: &SeriesEvaluation,
    weight_log10: f64,
    x_abs: f64,
    order: u32,
) -> String {
    if !ev.truncated_by_cap {
        return format!("5e-{}", u64::from(digits) + 1);
    }
    let last = match ev.last_term_magnitude.log10_magnitude() {
        Some(lg) => lg,
        None => return format!("5e-{}", u64::from(digits) + 1),
    };
    let x2 = x_abs * x_abs;
    let tail_factor = if x2 < 0.999 {
        (x2 / (1.0 - x2)).log10()
    } else {
        (ev.terms_used as f64 / f64::from(2 * order - 1)).max(1.0).log10()
    };
    sci_from_log10(last + weight_log10 + tail_factor)
}

fn parse_theta(token: &str, ctx: &EvalContext) -> Result<Real, Error> {
    let (negated, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    let value = match body {
        "pi" => ctx.pi(),
        "pi/2" => ctx.pi().div_int(2),
        "pi/3" => ctx.pi().div_int(3),
        "pi/4" => ctx.pi().div_int(4),
        "2pi" => ctx.pi().mul_int(2),
        text => Real::parse(text, ctx.working_scale())?,
    };
    Ok(if negated { -value } else { value })
}

fn run_compute(
    constant: ConstantCmd,
    digits: u32,
    format: Format,
    out: &mut String,
) -> Result<i32, Error> {
    let ctx = EvalContext::new(Precision::new(digits));
    let pi_log10 = std::f64::consts::PI.log10();
    let cap_of = |max_terms: Option<usize>| -> Result<usize, Error> {
        match max_terms {
            Some(0) => Err(Error::InvalidDomain(String::from(
                "--max-terms must be at least 1",
            ))),
            Some(c) => Ok(c),
            None => Ok(engine::DEFAULT_TERM_CAP),
        }
    };
    let record = match constant {
        ConstantCmd::ZetaOdd { n, max_terms } => {
            let (value, ev) = engine::zeta_odd_eval(n, &ctx, cap_of(max_terms)?)?;
            let weight = 2f64.log10() + f64::from(2 * n) * pi_log10;
            OutputRecord {
                constant: format!("zeta({})", 2 * n + 1),
                digits,
                value: value.to_decimal_string(digits),
                terms_used: ev.terms_used as u64,
                method: String::from("even-zeta series solve at x = 1/2"),
                error_estimate: error_estimate(digits, &ev, weight, 0.5, n + 1),
            }
        }
        ConstantCmd::BetaEven { n, max_terms } => {
            let (value, ev) = engine::beta_even_eval(n, &ctx, cap_of(max_terms)?)?;
            let weight = 2f64.log10() + f64::from(2 * n - 1) * (pi_log10 - 2f64.log10());
            OutputRecord {
                constant: format!("beta({})", 2 * n),
                digits,
                value: value.to_decimal_string(digits),
                terms_used: ev.terms_used as u64,
                method: String::from("even-zeta series solve at x = 1/4"),
                error_estimate: error_estimate(digits, &ev, weight, 0.25, n),
            }
        }
        ConstantCmd::Clausen { m, theta, max_terms } => {
            let angle = parse_theta(&theta, &ctx)?;
            let (value, ev) = engine::clausen_even_eval(m, &angle, &ctx, cap_of(max_terms)?)?;
            let t_abs = angle.to_f64().abs();
            let weight = if m >= 1 && t_abs > 0.0 {
                2f64.log10() + f64::from(2 * m - 1) * t_abs.log10()
            } else {
                0.0
            };
            let x_abs = t_abs / (2.0 * std::f64::consts::PI);
            OutputRecord {
                constant: format!("Cl_{}({theta})", 2 * m),
                digits,
                value: value.to_decimal_string(digits),
                terms_used: ev.terms_used as u64,
                method: String::from("even-zeta series solve at x = theta/(2 pi)"),
                error_estimate: error_estimate(digits, &ev, weight, x_abs, m),
            }
        }
        ConstantCmd::ZetaEven { n } => {
            let value = special::zeta_even(n, &ctx)?;
            OutputRecord {
                constant: format!("zeta({})", 2 * n),
                digits,
                value: value.to_decimal_string(digits),
                terms_used: 0,
                method: String::from("Bernoulli closed form"),
                error_estimate: format!("5e-{}", u64::from(digits) + 1),
            }
        }
        ConstantCmd::BetaOdd { n } => {
            let value = special::beta_odd(n, &ctx);
            OutputRecord {
                constant: format!("beta({})", 2 * n + 1),
                digits,
                value: value.to_decimal_string(digits),
                terms_used: 0,
                method: String::from("Euler closed form"),
                error_estimate: format!("5e-{}", u64::from(digits) + 1),
            }
        }
    };
    print_record(&record, format, out);
    Ok(0)
}

fn print_record(record: &OutputRecord, format: Format, out: &mut String) {
    match format {
        Format::Text => {
            let _ = writeln!(out, "constant        {}", record.constant);
            let _ = writeln!(out, "digits          {}", record.digits);
            let _ = writeln!(out, "value           {}", record.value);
            let _ = writeln!(out, "terms_used      {}", record.terms_used);
            let _ = writeln!(out, "method          {}", record.method);
            let _ = writeln!(out, "error_estimate  {}", record.error_estimate);
        }
        Format::Json => {
            let _ = writeln!(out, 
                "{}",
                serde_json::to_string_pretty(record).expect("record serializes")
            );
        }
        Format::Csv => {
            let _ = writeln!(out, "constant,digits,value,terms_used,method,error_estimate");
            let _ = writeln!(out, 
                "{},{},{},{},{},{}",
                record.constant,
                record.digits,
                record.value,
                record.terms_used,
                record.method,
                record.error_estimate
            );
        }
    }
}

struct Check {
    name: String,
    magnitude: Real,
    passed: bool,
}

fn run_verify(
    digits: u32,
    n_max: u32,
    flip_sign: bool,
    format: Format,
    out: &mut String,
) -> Result<i32, Error> {
    let ctx = EvalContext::new(Precision::new(digits));
    let w = ctx.working_scale();
    let tol_exp = digits.saturating_sub(5).max(5);
    let tol = pow10_neg(tol_exp);
    let sign = if flip_sign { SineSeriesSign::Added } else { SineSeriesSign::Subtracted };

    let mut checks: Vec<Check> = Vec::new();
    let mut push = |name: String, magnitude: Real| {
        let passed = magnitude < tol;
        checks.push(Check { name, magnitude, passed });
    };

    let half = Real::from_ratio(1, 2, w);
    let quarter = Real::from_ratio(1, 4, w);
    for n in 1..=n_max {
        for (tag, x) in [("x = 1/2", &half), ("x = 1/4", &quarter)] {
            let r = engine::theorem3_residual_signed(n, x, &ctx, sign)?.abs();
            push(format!("sine-series identity, n = {n}, {tag}"), r);
        }
    }
    for n in 1..=n_max {
        let r = engine::eq3_residual(n, &ctx)?.abs();
        push(format!("alternating-weight identity, n = {n}"), r);
    }
    let pi = ctx.pi();
    let half_pi = pi.div_int(2);
    for m in 1..=n_max {
        let r = engine::clausen_even(m, &pi, &ctx)?.abs();
        push(format!("Cl_{}(pi) = 0", 2 * m), r);
        let d = (&engine::clausen_even(m, &half_pi, &ctx)? - &engine::beta_even(m, &ctx)?).abs();
        push(format!("Cl_{}(pi/2) = beta({})", 2 * m, 2 * m), d);
    }
    for n in 1..=n_max.min(2) {
        let d = (&engine::zeta_odd(n, &ctx)? - &oracle::zeta_direct(2 * n + 1, &ctx)?).abs();
        push(format!("zeta({}) solve vs direct sum", 2 * n + 1), d);
        let d = (&engine::beta_even(n, &ctx)? - &oracle::beta_direct(2 * n, &ctx)?).abs();
        push(format!("beta({}) solve vs alternating sum", 2 * n), d);
    }

    let all_passed = checks.iter().all(|c| c.passed);
    let worst = checks
        .iter()
        .max_by(|a, b| a.magnitude.cmp(&b.magnitude))
        .expect("at least one check ran");

    match format {
        Format::Text => {
            for c in &checks {
                let _ = writeln!(out, 
                    "{:<44} {:>10}  {}",
                    c.name,
                    sci(&c.magnitude),
                    if c.passed { "ok" } else { "FAIL" }
                );
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            if all_passed {
                let _ = writeln!(out, 
                    "all {} checks passed at tolerance 1e-{tol_exp}; worst residual {} ({})",
                    checks.len(),
                    sci(&worst.magnitude),
                    worst.name
                );
            } else {
                let _ = writeln!(out, 
                    "{failed} of {} checks FAILED at tolerance 1e-{tol_exp}; worst residual {} ({})",
                    checks.len(),
                    sci(&worst.magnitude),
                    worst.name
                );
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = checks
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "name": c.name,
                        "magnitude": sci(&c.magnitude),
                        "passed": c.passed,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "digits": digits,
                "tolerance": format!("1e-{tol_exp}"),
                "checks": rows,
                "passed": all_passed,
                "worst": { "name": worst.name, "magnitude": sci(&worst.magnitude) },
            });
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("doc serializes"));
        }
        Format::Csv => {
            let _ = writeln!(out, "name,magnitude,tolerance,passed");
            for c in &checks {
                let _ = writeln!(out, 
                    "{},{},1e-{tol_exp},{}",
                    c.name.replace(',', ";"),
                    sci(&c.magnitude),
                    c.passed
                );
            }
        }
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn run_race(
    digits: u32,
    tokens: &[String],
    format: Format,
    out: &mut String,
) -> Result<i32, Error> {
    let mut kinds = Vec::new();
    for token in tokens {
        kinds.push(match token.trim() {
            "paper-zeta3" => SeriesKind::ZetaOddSolve { n: 1 },
            "paper-catalan" => SeriesKind::BetaEvenSolve { n: 1 },
            "apery" => SeriesKind::Apery,
            "ramanujan" => SeriesKind::RamanujanCatalan,
            "naive-zeta3" => SeriesKind::NaiveZeta { s: 3 },
            "naive-beta2" => SeriesKind::NaiveBeta { s: 2 },
            other => {
                return Err(Error::InvalidDomain(format!(
                    "unknown series '{other}'; expected one of paper-zeta3, paper-catalan, \
                     apery, ramanujan, naive-zeta3, naive-beta2"
                )))
            }
        });
    }
    // Measurement wants headroom over the target so the reference values are
    // beyond doubt at the compared digit.
    let ctx = EvalContext::new(Precision::new(digits + 15));
    let entries = analyzer::compare(&kinds, digits, &ctx);

    match format {
        Format::Text => {
            let _ = writeln!(out, "race to {digits} digits");
            let _ = writeln!(out, "{:<4} {:<28} {:>9} {:>9}  status", "rank", "series", "predicted", "measured");
            for (i, e) in entries.iter().enumerate() {
                match &e.outcome {
                    Ok(r) => {
                        let _ = writeln!(
                            out,
                            "{:<4} {:<28} {:>9} {:>9}  converged",
                            i + 1,
                            e.label,
                            r.predicted_terms.map_or(String::from("-"), |p| p.to_string()),
                            r.measured_terms
                        );
                    }
                    Err(err) => {
                        let _ = writeln!(
                            out,
                            "{:<4} {:<28} {:>9} {:>9}  {err}",
                            i + 1,
                            e.label,
                            "-",
                            "-"
                        );
                    }
                }
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = entries
                .iter()
                .enumerate()
                .map(|(i, e)| match &e.outcome {
                    Ok(r) => serde_json::json!({
                        "rank": i + 1,
                        "label": e.label,
                        "predicted_terms": r.predicted_terms,
                        "measured_terms": r.measured_terms,
                        "converged": true,
                        "status": "converged",
                    }),
                    Err(err) => serde_json::json!({
                        "rank": i + 1,
                        "label": e.label,
                        "predicted_terms": null,
                        "measured_terms": null,
                        "converged": false,
                        "status": err.to_string(),
                    }),
                })
                .collect();
            let doc = serde_json::json!({ "target_digits": digits, "entries": rows });
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("doc serializes"));
        }
        Format::Csv => {
            let _ = writeln!(out, "rank,label,predicted_terms,measured_terms,converged");
            for (i, e) in entries.iter().enumerate() {
                match &e.outcome {
                    Ok(r) => {
                        let _ = writeln!(
                            out,
                            "{},{},{},{},true",
                            i + 1,
                            e.label,
                            r.predicted_terms.map_or(String::from(""), |p| p.to_string()),
                            r.measured_terms
                        );
                    }
                    Err(_) => {
                        let _ = writeln!(out, "{},{},,,false", i + 1, e.label);
                    }
                }
            }
        }
    }
    Ok(0)
}
