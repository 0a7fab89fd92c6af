//! Precision configuration and the shared evaluation context.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_bigint::BigInt;

use crate::functions;
use crate::real::Real;
use crate::Rational;

/// Requested output digits plus internal guard digits.
///
/// All kernel and series computations run at `decimal_digits + guard_digits`
/// fractional decimal digits (the working scale) and results are rounded back
/// to `decimal_digits` for presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    decimal_digits: u32,
    guard_digits: u32,
}

impl Precision {
    /// Default number of guard digits; enough for every solve in this crate
    /// at the argument ranges the engine accepts.
    pub const DEFAULT_GUARD: u32 = 10;

    /// A precision with the default guard. `decimal_digits` must be >= 1.
    pub fn new(decimal_digits: u32) -> Self {
        Self::with_guard(decimal_digits, Self::DEFAULT_GUARD)
    }

    /// A precision with an explicit guard. `decimal_digits` must be >= 1.
    pub fn with_guard(decimal_digits: u32, guard_digits: u32) -> Self {
        assert!(decimal_digits >= 1, "decimal_digits must be at least 1");
        Precision { decimal_digits, guard_digits }
    }

    pub fn decimal_digits(&self) -> u32 {
        self.decimal_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// Scale at which intermediate arithmetic runs.
    pub fn working_digits(&self) -> u32 {
        self.decimal_digits + self.guard_digits
    }
}

#[derive(Default)]
pub(crate) struct Caches {
    /// pi keyed by scale.
    pub(crate) pi: BTreeMap<u32, Real>,
    /// ln 2 keyed by scale.
    pub(crate) ln2: BTreeMap<u32, Real>,
    /// ln pi keyed by scale.
    pub(crate) ln_pi: BTreeMap<u32, Real>,
    /// B_0, B_1, B_2, ... as exact rationals.
    pub(crate) bernoulli: Vec<Rational>,
    /// E_0, E_2, E_4, ... (even-index Euler numbers; odd ones vanish).
    pub(crate) euler: Vec<BigInt>,
    /// zeta(2n) at the working scale, keyed by n.
    pub(crate) zeta_even: BTreeMap<u32, Real>,
    /// zeta(2n+1) at the working scale, keyed by n.
    pub(crate) zeta_odd: BTreeMap<u32, Real>,
}

/// Shared precision plus memoized constants and sequence values.
///
/// A context is cheap to create and intended to live for one computation
/// session at one precision. It is deliberately not `Sync`: evaluation is
/// single-threaded by design, and the interior-mutability caches enforce
/// that at the type level. Create one context per thread if parallelism is
/// ever needed; cached values are pure functions of the precision, so
/// contexts never disagree.
pub struct EvalContext {
    precision: Precision,
    pub(crate) caches: RefCell<Caches>,
}

impl EvalContext {
    pub fn new(precision: Precision) -> Self {
        EvalContext { precision, caches: RefCell::new(Caches::default()) }
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// Scale used for intermediate arithmetic.
    pub fn working_scale(&self) -> u32 {
        self.precision.working_digits()
    }

    /// `10^-working_scale`, the smallest representable working-scale step.
    pub fn epsilon(&self) -> Real {
        Real::from_mantissa(BigInt::from(1), self.working_scale())
    }

    /// pi at the working scale.
    pub fn pi(&self) -> Real {
        self.pi_at(self.working_scale())
    }

    /// pi at an arbitrary scale, memoized per scale.
    pub fn pi_at(&self, scale: u32) -> Real {
        if let Some(v) = self.caches.borrow().pi.get(&scale) {
            return v.clone();
        }
        let v = functions::pi_uncached(scale);
        self.caches.borrow_mut().pi.insert(scale, v.clone());
        v
    }

    /// ln 2 at the working scale.
    pub fn ln2(&self) -> Real {
        self.ln2_at(self.working_scale())
    }

    pub fn ln2_at(&self, scale: u32) -> Real {
        if let Some(v) = self.caches.borrow().ln2.get(&scale) {
            return v.clone();
        }
        let v = functions::ln2_uncached(scale);
        self.caches.borrow_mut().ln2.insert(scale, v.clone());
        v
    }

    /// ln pi at the working scale.
    pub fn ln_pi(&self) -> Real {
        self.ln_pi_at(self.working_scale())
    }

    pub fn ln_pi_at(&self, scale: u32) -> Real {
        if let Some(v) = self.caches.borrow().ln_pi.get(&scale) {
            return v.clone();
        }
        let pi = self.pi_at(scale + 8);
        let v = functions::ln_at(&pi, scale, self)
            .expect("pi is positive; its logarithm always exists");
        self.caches.borrow_mut().ln_pi.insert(scale, v.clone());
        v
    }
}
