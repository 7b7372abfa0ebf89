//! Outward-rounded interval arithmetic.
//!
//! Every operation returns an interval that contains the exact real range of
//! that operation over its operands. For `+ − × ÷` the endpoints are the
//! correctly rounded directed values: the operation is evaluated once in
//! round-to-nearest, the rounding error is recovered exactly (two-sum for
//! addition, an FMA residual for multiplication and division), and the
//! endpoint is nudged one step outward only when the error has the wrong
//! sign. This avoids touching the floating-point environment, so values are
//! plain `f64`s and every operation is pure and thread-safe.
//!
//! Endpoints of `exp`, `ln`, `sin` and `cos` are evaluated in round-to-nearest
//! and widened by one ulp on each side, since correctly rounded transcendental
//! functions are not universally available; that costs at most two ulps of
//! slack but never containment.
//!
//! An interval is always non-empty. Operations that can produce an empty set
//! (intersection) return `Option<Interval>` instead of a sentinel value.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Errors reported by interval and box operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    /// Endpoints were NaN, inverted, or otherwise not a valid interval.
    #[error("invalid interval endpoints [{lo}, {hi}]")]
    InvalidEndpoints { lo: f64, hi: f64 },
    /// Division (or negative power) by an interval containing zero.
    #[error("divisor contains zero")]
    ZeroInDivisor,
    /// Operand outside the mathematical domain of the operation.
    #[error("{0}")]
    DomainViolation(&'static str),
    /// Midpoint requested for a box with a non-finite coordinate.
    #[error("box has a non-finite coordinate; midpoint undefined")]
    UnboundedBox,
    /// Two boxes of different dimension were combined.
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    /// A box was constructed with no axes.
    #[error("box must have at least one axis")]
    EmptyBox,
}

// Below this magnitude the FMA residual of a product or quotient can itself
// be inexact (the exact error underflows), so endpoints are widened one ulp
// instead of consulting the residual.
const RESIDUAL_SAFE: f64 = 1e-300;

#[inline]
pub(crate) fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_infinite() {
        // +inf can only arise from overflow of a finite sum (no +inf enters a
        // lower-endpoint sum), so MAX is a valid lower bound; -inf already is.
        return if s > 0.0 { f64::MAX } else { s };
    }
    let bv = s - a;
    let err = (a - (s - bv)) + (b - bv);
    if err < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
pub(crate) fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_infinite() {
        return if s < 0.0 { -f64::MAX } else { s };
    }
    let bv = s - a;
    let err = (a - (s - bv)) + (b - bv);
    if err > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub(crate) fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

#[inline]
fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        // Also covers 0·±inf, which bounds the limit of an unbounded operand.
        return 0.0;
    }
    let p = a * b;
    if p.is_infinite() {
        return if p > 0.0 { f64::MAX } else { p };
    }
    if p.abs() < RESIDUAL_SAFE {
        return p.next_down();
    }
    let err = f64::mul_add(a, b, -p);
    if err < 0.0 {
        p.next_down()
    } else {
        p
    }
}

#[inline]
fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_infinite() {
        return if p < 0.0 { -f64::MAX } else { p };
    }
    if p.abs() < RESIDUAL_SAFE {
        return p.next_up();
    }
    let err = f64::mul_add(a, b, -p);
    if err > 0.0 {
        p.next_up()
    } else {
        p
    }
}

#[inline]
fn div_down(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    if b.is_infinite() {
        // finite/±inf: the corner's limiting value is 0.
        return 0.0;
    }
    if a.is_infinite() {
        return if (a > 0.0) == (b > 0.0) {
            f64::MAX
        } else {
            f64::NEG_INFINITY
        };
    }
    let q = a / b;
    if q.is_infinite() {
        return if q > 0.0 { f64::MAX } else { q };
    }
    if q.abs() < RESIDUAL_SAFE {
        return q.next_down();
    }
    let r = f64::mul_add(q, b, -a); // exact: r = q·b − a, so a/b = q − r/b
    if r == 0.0 {
        q
    } else if (r > 0.0) == (b > 0.0) {
        q.next_down()
    } else {
        q
    }
}

#[inline]
fn div_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    if b.is_infinite() {
        return 0.0;
    }
    if a.is_infinite() {
        return if (a > 0.0) == (b > 0.0) {
            f64::INFINITY
        } else {
            -f64::MAX
        };
    }
    let q = a / b;
    if q.is_infinite() {
        return if q < 0.0 { -f64::MAX } else { q };
    }
    if q.abs() < RESIDUAL_SAFE {
        return q.next_up();
    }
    let r = f64::mul_add(q, b, -a);
    if r == 0.0 {
        q
    } else if (r < 0.0) == (b > 0.0) {
        q.next_up()
    } else {
        q
    }
}

/// One ulp downward, saturating +inf (from overflow) to MAX.
#[inline]
fn widen_down(v: f64) -> f64 {
    if v == f64::INFINITY {
        f64::MAX
    } else {
        v.next_down()
    }
}

/// One ulp upward, saturating -inf (from overflow) to -MAX.
#[inline]
fn widen_up(v: f64) -> f64 {
    if v == f64::NEG_INFINITY {
        -f64::MAX
    } else {
        v.next_up()
    }
}

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Conservative test for "phase + 2πk ∈ [lo, hi] for some integer k".
///
/// Errs on the side of `true`: a spurious hit merely widens a trig range to
/// its extremum, a miss would break containment.
fn contains_phase(lo: f64, hi: f64, phase: f64) -> bool {
    let t1 = (lo - phase) / TWO_PI;
    let t2 = (hi - phase) / TWO_PI;
    let margin = 1e-12 * (1.0 + t1.abs().max(t2.abs()));
    (t2 + margin).floor() >= (t1 - margin).ceil()
}

/// Closed, non-empty real interval with outward-rounded endpoints.
///
/// Invariants: `lo ≤ hi`, neither endpoint is NaN, `lo < +inf`, `hi > -inf`.
/// The endpoints may be infinite to represent an unbounded range (e.g. after
/// overflow), but constructors reject intervals that are empty as a set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Everything: [-inf, +inf].
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    /// Builds [lo, hi], rejecting NaN, inverted or all-infinite-on-one-side
    /// endpoints.
    pub fn new(lo: f64, hi: f64) -> Result<Interval, IntervalError> {
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY
        {
            return Err(IntervalError::InvalidEndpoints { lo, hi });
        }
        Ok(Interval::raw(lo, hi))
    }

    /// The degenerate interval [v, v].
    pub fn point(v: f64) -> Interval {
        debug_assert!(v.is_finite());
        Interval::raw(v, v)
    }

    #[inline]
    fn raw(lo: f64, hi: f64) -> Interval {
        debug_assert!(!lo.is_nan() && !hi.is_nan() && lo <= hi);
        debug_assert!(lo < f64::INFINITY && hi > f64::NEG_INFINITY);
        // Normalize -0.0 so endpoint equality and display are unambiguous.
        let lo = if lo == 0.0 { 0.0 } else { lo };
        let hi = if hi == 0.0 { 0.0 } else { hi };
        Interval { lo, hi }
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    /// Width `hi − lo`, rounded upward; +inf for unbounded intervals.
    pub fn width(self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// A point inside the interval, as close to the center as rounding allows.
    pub fn midpoint(self) -> f64 {
        let m = 0.5 * (self.lo + self.hi);
        if m.is_finite() {
            return m.clamp(self.lo, self.hi);
        }
        let m = 0.5 * self.lo + 0.5 * self.hi; // endpoint sum overflowed
        if m.is_finite() {
            m.clamp(self.lo, self.hi)
        } else if self.lo.is_finite() {
            self.lo
        } else if self.hi.is_finite() {
            self.hi
        } else {
            0.0
        }
    }

    /// True iff `x` lies in the closed interval.
    #[inline]
    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// True iff `other` is a subset of `self`.
    #[inline]
    pub fn contains_interval(self, other: Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// True iff every real in `self` is strictly below every real in `other`
    /// (shared endpoints do not count).
    #[inline]
    pub fn strictly_less(self, other: Interval) -> bool {
        self.hi < other.lo
    }

    /// True iff the two intervals share at least one point (point contact
    /// counts).
    #[inline]
    pub fn intersects(self, other: Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Common subset, or `None` when the intervals are disjoint.
    pub fn intersection(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then(|| Interval::raw(lo, hi))
    }

    /// Smallest interval containing both operands.
    pub fn hull(self, other: Interval) -> Interval {
        Interval::raw(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    /// `|midpoint(self) − midpoint(other)|`, rounded downward.
    pub fn midpoint_distance(self, other: Interval) -> f64 {
        let (a, b) = (self.midpoint(), other.midpoint());
        if a >= b {
            sub_down(a, b)
        } else {
            sub_down(b, a)
        }
    }

    /// Quotient; errors when the divisor contains zero.
    // Fallible, so the `std::ops::Div` operator (which cannot report the
    // zero-in-divisor case) is deliberately not implemented.
    #[allow(clippy::should_implement_trait)]
    pub fn div(self, rhs: Interval) -> Result<Interval, IntervalError> {
        if rhs.contains(0.0) {
            return Err(IntervalError::ZeroInDivisor);
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for a in [self.lo, self.hi] {
            for b in [rhs.lo, rhs.hi] {
                if a.is_infinite() && b.is_infinite() {
                    continue; // indeterminate corner, never decisive
                }
                lo = lo.min(div_down(a, b));
                hi = hi.max(div_up(a, b));
            }
        }
        Ok(Interval::raw(lo, hi))
    }

    /// Square, evaluated as a range (tighter than `self * self`).
    pub fn sqr(self) -> Interval {
        let mag = self.lo.abs().max(self.hi.abs());
        let lo = if self.contains(0.0) {
            0.0
        } else {
            let mig = self.lo.abs().min(self.hi.abs());
            mul_down(mig, mig)
        };
        Interval::raw(lo, mul_up(mag, mag))
    }

    /// Integer power, evaluated as a range. `k = 0` yields [1, 1]; negative
    /// `k` errors when the base contains zero.
    pub fn pow_int(self, k: i32) -> Result<Interval, IntervalError> {
        if k == 0 {
            return Ok(Interval::point(1.0));
        }
        if k < 0 {
            if self.contains(0.0) {
                return Err(IntervalError::ZeroInDivisor);
            }
            return Interval::point(1.0).div(self.pow_positive(k.unsigned_abs()));
        }
        Ok(self.pow_positive(k as u32))
    }

    fn pow_positive(self, k: u32) -> Interval {
        debug_assert!(k >= 1);
        if k % 2 == 0 {
            let mag = self.lo.abs().max(self.hi.abs());
            let lo = if self.contains(0.0) {
                0.0
            } else {
                let mig = self.lo.abs().min(self.hi.abs());
                pow_down(mig, k)
            };
            Interval::raw(lo, pow_up(mag, k))
        } else {
            Interval::raw(spow_down(self.lo, k), spow_up(self.hi, k))
        }
    }

    /// Exponential; endpoints widened one ulp, clamped to stay ≥ 0.
    pub fn exp(self) -> Interval {
        let lo = widen_down(self.lo.exp()).max(0.0);
        let hi = if self.hi == f64::INFINITY {
            f64::INFINITY
        } else {
            widen_up(self.hi.exp())
        };
        Interval::raw(lo, hi)
    }

    /// Natural logarithm; errors unless the interval is strictly positive.
    pub fn ln(self) -> Result<Interval, IntervalError> {
        if self.lo <= 0.0 {
            return Err(IntervalError::DomainViolation(
                "ln requires a strictly positive interval",
            ));
        }
        Ok(Interval::raw(
            widen_down(self.lo.ln()),
            widen_up(self.hi.ln()),
        ))
    }

    /// Sine range, accounting for interior extrema.
    pub fn sin(self) -> Interval {
        if self.lo.is_infinite() || self.hi.is_infinite() {
            return Interval::raw(-1.0, 1.0);
        }
        let (slo, shi) = (self.lo.sin(), self.hi.sin());
        let mut lo = widen_down(slo).min(widen_down(shi));
        let mut hi = widen_up(slo).max(widen_up(shi));
        if contains_phase(self.lo, self.hi, std::f64::consts::FRAC_PI_2) {
            hi = 1.0;
        }
        if contains_phase(self.lo, self.hi, -std::f64::consts::FRAC_PI_2) {
            lo = -1.0;
        }
        Interval::raw(lo.max(-1.0), hi.min(1.0))
    }

    /// Cosine range, accounting for interior extrema.
    pub fn cos(self) -> Interval {
        if self.lo.is_infinite() || self.hi.is_infinite() {
            return Interval::raw(-1.0, 1.0);
        }
        let (clo, chi) = (self.lo.cos(), self.hi.cos());
        let mut lo = widen_down(clo).min(widen_down(chi));
        let mut hi = widen_up(clo).max(widen_up(chi));
        if contains_phase(self.lo, self.hi, 0.0) {
            hi = 1.0;
        }
        if contains_phase(self.lo, self.hi, std::f64::consts::PI) {
            lo = -1.0;
        }
        Interval::raw(lo.max(-1.0), hi.min(1.0))
    }
}

fn pow_down(x: f64, k: u32) -> f64 {
    debug_assert!(x >= 0.0);
    let mut base = x;
    let mut k = k;
    let mut acc = 1.0f64;
    loop {
        if k & 1 == 1 {
            acc = mul_down(acc, base);
        }
        k >>= 1;
        if k == 0 {
            return acc;
        }
        base = mul_down(base, base);
    }
}

fn pow_up(x: f64, k: u32) -> f64 {
    debug_assert!(x >= 0.0);
    let mut base = x;
    let mut k = k;
    let mut acc = 1.0f64;
    loop {
        if k & 1 == 1 {
            acc = mul_up(acc, base);
        }
        k >>= 1;
        if k == 0 {
            return acc;
        }
        base = mul_up(base, base);
    }
}

fn spow_down(x: f64, k: u32) -> f64 {
    if x >= 0.0 {
        pow_down(x, k)
    } else {
        -pow_up(-x, k)
    }
}

fn spow_up(x: f64, k: u32) -> f64 {
    if x >= 0.0 {
        pow_up(x, k)
    } else {
        -pow_down(-x, k)
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval::raw(add_down(self.lo, rhs.lo), add_up(self.hi, rhs.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, rhs: Interval) -> Interval {
        Interval::raw(sub_down(self.lo, rhs.hi), sub_up(self.hi, rhs.lo))
    }
}

impl Mul for Interval {
    type Output = Interval;

    fn mul(self, rhs: Interval) -> Interval {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for a in [self.lo, self.hi] {
            for b in [rhs.lo, rhs.hi] {
                lo = lo.min(mul_down(a, b));
                hi = hi.max(mul_up(a, b));
            }
        }
        Interval::raw(lo, hi)
    }
}

impl Neg for Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval::raw(-self.hi, -self.lo)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
