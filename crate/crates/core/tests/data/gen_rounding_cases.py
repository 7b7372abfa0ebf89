#!/usr/bin/env python3
"""Generate the frozen interval-rounding fixture.

For each arithmetic case the true range endpoints are computed exactly with
rationals (fractions.Fraction); for transcendentals with mpmath at 200-bit
precision. Each true endpoint is then directed-rounded to the nearest f64
(down for lo, up for hi). The Rust test asserts that the library's computed
interval contains [lo, hi] and that each computed endpoint is within a pinned
number of ulps of the correctly rounded endpoint.
"""
import json
import math
import random
from fractions import Fraction

import mpmath

mpmath.mp.prec = 200

rng = random.Random(20260815)


def f64_down_frac(q: Fraction) -> float:
    f = float(q)  # CPython int/int truediv is correctly rounded
    if Fraction(f) <= q:
        return f
    return math.nextafter(f, -math.inf)


def f64_up_frac(q: Fraction) -> float:
    f = float(q)
    if Fraction(f) >= q:
        return f
    return math.nextafter(f, math.inf)


def f64_down_mpf(x) -> float:
    f = float(x)
    # conversion rounding mode is not guaranteed; fix up by comparison
    while mpmath.mpf(f) > x:
        f = math.nextafter(f, -math.inf)
    while mpmath.mpf(math.nextafter(f, math.inf)) <= x:
        f = math.nextafter(f, math.inf)
    return f


def f64_up_mpf(x) -> float:
    f = float(x)
    while mpmath.mpf(f) < x:
        f = math.nextafter(f, math.inf)
    while mpmath.mpf(math.nextafter(f, -math.inf)) >= x:
        f = math.nextafter(f, -math.inf)
    return f


def rand_scalar(scale_exp_range=(-30, 30)):
    regime = rng.random()
    if regime < 0.15:
        return float(rng.randint(-8, 8))  # exact small integers
    if regime < 0.3:
        return rng.randint(-64, 64) / 16.0  # exact dyadics
    m = rng.uniform(-1.0, 1.0)
    e = rng.randint(*scale_exp_range)
    return m * (2.0 ** e)


def rand_interval(scale_exp_range=(-30, 30), allow_thin=True):
    a = rand_scalar(scale_exp_range)
    if allow_thin and rng.random() < 0.1:
        return (a, a)
    b = rand_scalar(scale_exp_range)
    return (min(a, b), max(a, b))


cases = []


def emit(op, a, b=None, k=None, lo=None, hi=None):
    rec = {"op": op, "a": [a[0], a[1]], "lo": lo, "hi": hi}
    if b is not None:
        rec["b"] = [b[0], b[1]]
    if k is not None:
        rec["k"] = k
    cases.append(rec)


N = 80

# --- add / sub -------------------------------------------------------------
for _ in range(N):
    a = rand_interval()
    b = rand_interval()
    lo = Fraction(a[0]) + Fraction(b[0])
    hi = Fraction(a[1]) + Fraction(b[1])
    emit("add", a, b=b, lo=f64_down_frac(lo), hi=f64_up_frac(hi))

for _ in range(N):
    a = rand_interval()
    b = rand_interval()
    lo = Fraction(a[0]) - Fraction(b[1])
    hi = Fraction(a[1]) - Fraction(b[0])
    emit("sub", a, b=b, lo=f64_down_frac(lo), hi=f64_up_frac(hi))

# --- mul -------------------------------------------------------------------
for _ in range(N):
    a = rand_interval()
    b = rand_interval()
    prods = [Fraction(x) * Fraction(y) for x in a for y in b]
    emit("mul", a, b=b, lo=f64_down_frac(min(prods)), hi=f64_up_frac(max(prods)))

# --- div (divisor excludes 0) ----------------------------------------------
for _ in range(N):
    a = rand_interval()
    while True:
        b = rand_interval(allow_thin=False)
        if b[0] > 0 or b[1] < 0:
            break
        # shift away from zero, keeping sign of the wider side
        w = b[1] - b[0]
        if w == 0:
            continue
        b = (b[0] + 2 * w, b[1] + 2 * w) if b[1] > -b[0] else (b[0] - 2 * w, b[1] - 2 * w)
        if b[0] > 0 or b[1] < 0:
            break
    quots = [Fraction(x) / Fraction(y) for x in a for y in b]
    emit("div", a, b=b, lo=f64_down_frac(min(quots)), hi=f64_up_frac(max(quots)))

# --- neg -------------------------------------------------------------------
for _ in range(16):
    a = rand_interval()
    emit("neg", a, lo=-a[1], hi=-a[0])

# --- sqr -------------------------------------------------------------------
for _ in range(N):
    a = rand_interval()
    sq = [Fraction(a[0]) ** 2, Fraction(a[1]) ** 2]
    if a[0] <= 0.0 <= a[1]:
        lo, hi = Fraction(0), max(sq)
    else:
        lo, hi = min(sq), max(sq)
    emit("sqr", a, lo=f64_down_frac(lo), hi=f64_up_frac(hi))

# --- pow_int ---------------------------------------------------------------
for _ in range(N):
    a = rand_interval(scale_exp_range=(-8, 8))
    k = rng.choice([-3, -2, -1, 0, 1, 2, 3, 4, 5, 6, 7, 8])
    if k < 0 and a[0] <= 0.0 <= a[1]:
        a = (abs(a[0]) + 0.5, abs(a[0]) + 0.5 + (a[1] - a[0]))
    fa, fb = Fraction(a[0]), Fraction(a[1])
    if k == 0:
        lo = hi = Fraction(1)
    elif k % 2 == 1:  # odd: monotone increasing (also for negative odd on one-signed)
        if k > 0:
            lo, hi = fa ** k, fb ** k
        else:
            lo, hi = fb ** k, fa ** k
    else:  # even
        mag = max(abs(fa), abs(fb))
        mig = Fraction(0) if fa <= 0 <= fb else min(abs(fa), abs(fb))
        if k > 0:
            lo, hi = mig ** k, mag ** k
        else:
            lo, hi = mag ** k, mig ** k  # mig > 0 guaranteed above
    emit("pow_int", a, k=k, lo=f64_down_frac(lo), hi=f64_up_frac(hi))

# --- exp / ln --------------------------------------------------------------
for _ in range(N):
    a = rand_interval(scale_exp_range=(-6, 7))
    a = (max(a[0], -300.0), min(a[1], 300.0))
    lo = mpmath.exp(mpmath.mpf(a[0]))
    hi = mpmath.exp(mpmath.mpf(a[1]))
    emit("exp", a, lo=f64_down_mpf(lo), hi=f64_up_mpf(hi))

for _ in range(N):
    while True:
        a = rand_interval(scale_exp_range=(-30, 30))
        if a[0] > 0:
            break
    lo = mpmath.log(mpmath.mpf(a[0]))
    hi = mpmath.log(mpmath.mpf(a[1]))
    emit("ln", a, lo=f64_down_mpf(lo), hi=f64_up_mpf(hi))

# --- sin / cos -------------------------------------------------------------
def trig_range(fn, crit_max_offset, crit_min_offset, a):
    """Range of fn over [a0,a1]: endpoints plus any interior critical values."""
    lo_x, hi_x = mpmath.mpf(a[0]), mpmath.mpf(a[1])
    two_pi = 2 * mpmath.pi
    vals = [fn(lo_x), fn(hi_x)]
    # maxima of fn at crit_max_offset + 2k*pi, minima at crit_min_offset + 2k*pi
    for offset, val in ((crit_max_offset, mpmath.mpf(1)), (crit_min_offset, mpmath.mpf(-1))):
        kmin = mpmath.ceil((lo_x - offset) / two_pi)
        kmax = mpmath.floor((hi_x - offset) / two_pi)
        if kmin <= kmax:
            vals.append(val)
    return min(vals), max(vals)


for _ in range(N):
    c = rng.uniform(-20.0, 20.0)
    w = rng.choice([0.0, rng.uniform(0, 0.5), rng.uniform(0, 3.0), rng.uniform(0, 8.0)])
    a = (c - w, c + w)
    lo, hi = trig_range(mpmath.sin, mpmath.pi / 2, -mpmath.pi / 2, a)
    emit("sin", a, lo=f64_down_mpf(lo), hi=f64_up_mpf(hi))

for _ in range(N):
    c = rng.uniform(-20.0, 20.0)
    w = rng.choice([0.0, rng.uniform(0, 0.5), rng.uniform(0, 3.0), rng.uniform(0, 8.0)])
    a = (c - w, c + w)
    lo, hi = trig_range(mpmath.cos, mpmath.mpf(0), mpmath.pi, a)
    emit("cos", a, lo=f64_down_mpf(lo), hi=f64_up_mpf(hi))

out = json.dumps({"cases": cases}, indent=None, separators=(",", ":"))
print(out)
