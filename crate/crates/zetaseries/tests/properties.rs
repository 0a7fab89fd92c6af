//! Randomised invariants for the arithmetic layer and the series engine.
//!
//! Case counts are kept modest: every case runs multi-hundred-digit bigint
//! arithmetic, and the goal is to sweep the seams (parsing, rounding,
//! argument reduction) rather than to soak-test.

use num_bigint::BigInt;
use num_rational::BigRational as Rational;
use num_traits::Signed;
use proptest::prelude::*;
use zetaseries::context::{EvalContext, Precision};
use zetaseries::engine::{MasterSeriesParams, master_series};
use zetaseries::functions;
use zetaseries::real::Real;

fn ctx(digits: u32) -> EvalContext {
    EvalContext::new(Precision::new(digits))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Rounding a rational to 50 fractional digits loses less than 1e-48.
    #[test]
    fn rational_round_trip_is_tight(num in -1_000_000_000i64..1_000_000_000, den in 1i64..1_000_000_000) {
        let r = Rational::new(BigInt::from(num), BigInt::from(den));
        let x = Real::from_rational(&r, 50);
        let back = x.to_rational();
        let err = (&r - &back).abs();
        // Half an ulp at scale 50, with slack.
        let bound = Rational::new(BigInt::from(1), BigInt::from(10u8).pow(48));
        prop_assert!(err < bound, "{}/{} lost {}", num, den, err);
    }

    /// ln and exp invert each other to within a few ulps on (0.01, 10].
    #[test]
    fn ln_exp_round_trip(milli in 11i64..10_000) {
        let c = ctx(30);
        let x = Real::from_ratio(milli, 1000, c.working_scale());
        let back = functions::exp(&functions::ln(&x, &c).unwrap(), &c);
        let err = (&back - &x).abs();
        let bound = x.ulp().mul_int(10);
        prop_assert!(err <= bound, "x={} err={}", x, err);
    }

    /// sin^2 + cos^2 stays within a few ulps of 1 across several periods.
    #[test]
    fn pythagorean_identity(milli in -20_000i64..20_000) {
        let c = ctx(30);
        let x = Real::from_ratio(milli, 1000, c.working_scale());
        let s = functions::sin(&x, &c);
        let co = functions::cos(&x, &c);
        let norm = &(&s * &s) + &(&co * &co);
        let err = (&norm - &Real::one(c.working_scale())).abs();
        prop_assert!(err <= Real::one(c.working_scale()).ulp().mul_int(20), "x={} err={}", x, err);
    }

    /// sin is 2 pi periodic at working precision.
    #[test]
    fn sine_period(milli in -3_000i64..3_000) {
        let c = ctx(30);
        let x = Real::from_ratio(milli, 1000, c.working_scale());
        let shifted = &x + &c.pi().mul_int(2);
        let err = (&functions::sin(&shifted, &c) - &functions::sin(&x, &c)).abs();
        prop_assert!(err <= Real::one(c.working_scale()).ulp().mul_int(50), "x={} err={}", x, err);
    }

    /// Master-series terms are positive for x != 0, so partial sums rise.
    #[test]
    fn master_partial_sums_increase(order in 1u32..4, num in 1i64..99) {
        let c = ctx(20);
        let x = Real::from_ratio(num, 100, c.working_scale());
        let short = master_series(&MasterSeriesParams::new(order, x.clone()).unwrap().with_term_cap(4), &c).unwrap();
        let long = master_series(&MasterSeriesParams::new(order, x).unwrap().with_term_cap(9), &c).unwrap();
        prop_assert!(long.value > short.value);
    }

    /// Printing at the parse scale and re-parsing is the identity.
    #[test]
    fn parse_print_round_trip(int in -999i64..999, frac in 0u64..1_000_000_000) {
        let text = format!("{}{}.{:09}", if int == 0 && frac % 2 == 1 { "-" } else { "" }, int, frac);
        let x = Real::parse(&text, 9).unwrap();
        let again = Real::parse(&x.to_decimal_string(9), 9).unwrap();
        prop_assert_eq!(x, again);
    }
}
