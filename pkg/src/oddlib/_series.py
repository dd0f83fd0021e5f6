"""Rigorous interval evaluation of the supported elementary functions.

Intervals are pairs of dyadic :class:`Fraction` endpoints.  Every operation
rounds its lower endpoint down and its upper endpoint up to ``prec``
significant bits, so each result encloses the exact set image.  Series
truncation errors are bounded explicitly and added to the enclosure.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple


class Interval(NamedTuple):
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, v) -> bool:
        return self.lo <= v <= self.hi


def point(q) -> Interval:
    q = Fraction(q)
    return Interval(q, q)


def _round(q: Fraction, prec: int, up: bool) -> Fraction:
    n, d = q.numerator, q.denominator
    if n == 0 or (d & (d - 1) == 0 and abs(n).bit_length() <= prec):
        return q
    neg = n < 0
    a = -n if neg else n
    shift = prec - (a.bit_length() - d.bit_length())
    if shift >= 0:
        m, r = divmod(a << shift, d)
    else:
        m, r = divmod(a, d << -shift)
    if r and up != neg:
        m += 1
    if neg:
        m = -m
    if shift >= 0:
        return Fraction(m, 1 << shift)
    return Fraction(m << -shift)


def down(q: Fraction, prec: int) -> Fraction:
    return _round(q, prec, False)


def up(q: Fraction, prec: int) -> Fraction:
    return _round(q, prec, True)


def add(a: Interval, b: Interval, prec: int) -> Interval:
    return Interval(down(a.lo + b.lo, prec), up(a.hi + b.hi, prec))


def sub(a: Interval, b: Interval, prec: int) -> Interval:
    return Interval(down(a.lo - b.hi, prec), up(a.hi - b.lo, prec))


def neg(a: Interval) -> Interval:
    return Interval(-a.hi, -a.lo)


def mul(a: Interval, b: Interval, prec: int) -> Interval:
    if a.lo >= 0 and b.lo >= 0:
        return Interval(down(a.lo * b.lo, prec), up(a.hi * b.hi, prec))
    ps = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return Interval(down(min(ps), prec), up(max(ps), prec))


def div(a: Interval, b: Interval, prec: int) -> Interval:
    if b.lo <= 0 <= b.hi:
        raise ZeroDivisionError("interval divisor contains zero")
    qs = (a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi)
    return Interval(down(min(qs), prec), up(max(qs), prec))


def div_int(a: Interval, k: int, prec: int) -> Interval:
    return Interval(down(a.lo / k, prec), up(a.hi / k, prec))


def scale2(a: Interval, k: int) -> Interval:
    f = Fraction(1 << k) if k >= 0 else Fraction(1, 1 << -k)
    return Interval(a.lo * f, a.hi * f)


def widen(a: Interval, err: Fraction) -> Interval:
    return Interval(a.lo - err, a.hi + err)


def magnitude(a: Interval) -> Fraction:
    return max(abs(a.lo), abs(a.hi))


def _terms_needed(bound: float, prec: int, step) -> int:
    """Smallest N with step(N) <= 2**-prec, where step is a log2 tail estimate."""
    n = 1
    while step(n) > -prec:
        n += 1
    return n


def _log2f(q: Fraction) -> float:
    if q == 0:
        return -math.inf
    return math.log2(q.numerator) - math.log2(q.denominator)


def _lgamma2(k: int) -> float:
    return math.lgamma(k + 1) / math.log(2)


# --- constants ----------------------------------------------------------


def atanh_series(z: Fraction, prec: int) -> Interval:
    """atanh(z) for an exact rational ``|z| <= 1/3``."""
    if z == 0:
        return point(0)
    az = abs(z)
    lz = _log2f(az)
    n = _terms_needed(lz, prec + 4, lambda k: 2 * k * lz)
    z2 = mul(point(z), point(z), prec)
    power = point(z)
    total = point(z)
    for i in range(1, n):
        power = mul(power, z2, prec)
        total = add(total, div_int(power, 2 * i + 1, prec), prec)
    tail = up(az ** (2 * n + 1) * Fraction(9, 8) / (2 * n + 1), 32)
    return widen(total, tail)


def atan_series(z: Fraction, prec: int) -> Interval:
    """atan(z) for an exact rational ``0 < |z| < 1/2``; alternating series."""
    az = abs(z)
    lz = _log2f(az)
    n = _terms_needed(lz, prec + 4, lambda k: 2 * k * lz)
    z2 = mul(point(z), point(z), prec)
    power = point(z)
    total = point(z)
    for i in range(1, n):
        power = mul(power, z2, prec)
        term = div_int(power, 2 * i + 1, prec)
        total = sub(total, term, prec) if i % 2 else add(total, term, prec)
    tail = up(az ** (2 * n + 1) / (2 * n + 1), 32)
    return widen(total, tail)


@lru_cache(maxsize=None)
def ln2(prec: int) -> Interval:
    return scale2(atanh_series(Fraction(1, 3), prec + 2), 1)


@lru_cache(maxsize=None)
def ln10(prec: int) -> Interval:
    # ln 10 = 3 ln 2 + ln(5/4) and ln(5/4) = 2 atanh(1/9)
    w = prec + 4
    three_ln2 = mul(point(3), ln2(w), w)
    return add(three_ln2, scale2(atanh_series(Fraction(1, 9), w), 1), prec)


@lru_cache(maxsize=None)
def pi(prec: int) -> Interval:
    w = prec + 6
    a = scale2(atan_series(Fraction(1, 5), w), 4)
    b = scale2(atan_series(Fraction(1, 239), w), 2)
    return sub(a, b, prec)


# --- exponential family -------------------------------------------------


def exp_small(r: Interval, prec: int) -> Interval:
    """exp(r) for ``|r| <= 1/2``."""
    R = magnitude(r)
    if R == 0:
        return point(1)
    if R > Fraction(1, 2):
        raise ValueError("exp_small argument out of range")
    lr = _log2f(R)
    n = _terms_needed(lr, prec + 4, lambda k: k * lr - _lgamma2(k))
    total = point(1)
    term = point(1)
    for i in range(1, n):
        term = div_int(mul(term, r, prec), i, prec)
        total = add(total, term, prec)
    tail = up(2 * R ** n / math.factorial(n), 32)
    return widen(total, tail)


def exp_interval(x: Interval, prec: int) -> Interval:
    """exp over a narrow interval ``x``; reduces by multiples of ln 2."""
    mid = (x.lo + x.hi) / 2
    k = round(mid / Fraction(0.6931471805599453))
    w = prec + 6
    if k:
        c = ln2(w + abs(k).bit_length() + 4)
        r = sub(x, mul(point(k), c, w + abs(k).bit_length() + 4), w)
    else:
        r = x
    # k is chosen from a float ratio, so |r| is a hair above ln2/2 at most.
    if magnitude(r) > Fraction(1, 2):
        half = exp_interval(Interval(x.lo / 2, x.hi / 2), prec + 2)
        return mul(half, half, prec)
    return scale2(exp_small(r, w), k)


def exp(x: Fraction, prec: int) -> Interval:
    return exp_interval(point(x), prec)


def exp2(x: Fraction, prec: int) -> Interval:
    m = round(x)
    f = x - m
    w = prec + 6
    if f == 0:
        return scale2(point(1), m)
    arg = mul(point(f), ln2(w), w)
    return scale2(exp_small(arg, w), m)


def exp10(x: Fraction, prec: int) -> Interval:
    if x == 0:
        return point(1)
    mag_bits = max(0, math.ceil(_log2f(abs(x)) + 2))
    w = prec + 6 + mag_bits
    arg = mul(point(x), ln10(w), w)
    return exp_interval(arg, prec + 4)


def sinh(x: Fraction, prec: int) -> Interval:
    if x == 0:
        return point(0)
    w = prec + 6
    ax = abs(x)
    if ax < 1:
        lx = _log2f(ax)
        n = _terms_needed(lx, w, lambda k: 2 * k * lx - _lgamma2(2 * k + 1))
        x2 = mul(point(x), point(x), w)
        term = point(x)
        total = point(x)
        for i in range(1, n):
            term = div_int(mul(term, x2, w), (2 * i) * (2 * i + 1), w)
            total = add(total, term, w)
        tail = up(2 * ax ** (2 * n + 1) / math.factorial(2 * n + 1), 32)
        return widen(total, tail)
    ep = exp(x, w)
    en = exp(-x, w)
    return scale2(sub(ep, en, prec + 2), -1)


def cosh(x: Fraction, prec: int) -> Interval:
    w = prec + 6
    return scale2(add(exp(x, w), exp(-x, w), prec + 2), -1)


# --- logarithms ---------------------------------------------------------


def ln(x: Fraction, prec: int) -> Interval:
    if x <= 0:
        raise ValueError("ln of non-positive value")
    e = x.numerator.bit_length() - x.denominator.bit_length()
    t = x / (Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e))
    if t < 1:
        t *= 2
        e -= 1
    if t >= Fraction(3, 2):
        t /= 2
        e += 1
    w = prec + 6
    z = (t - 1) / (t + 1)
    lt = scale2(atanh_series(z, w), 1)
    if e == 0:
        return lt
    c = ln2(w + abs(e).bit_length() + 2)
    return add(mul(point(e), c, w + abs(e).bit_length() + 2), lt, prec + 2)


def log2(x: Fraction, prec: int) -> Interval:
    w = prec + 6
    return div(ln(x, w), ln2(w), prec + 2)


def log10(x: Fraction, prec: int) -> Interval:
    w = prec + 6
    return div(ln(x, w), ln10(w), prec + 2)


# --- trigonometric (argument in half-turns) -----------------------------


def _sin_small(a: Interval, prec: int) -> Interval:
    A = magnitude(a)
    if A == 0:
        return point(0)
    la = _log2f(A)
    n = _terms_needed(la, prec + 4, lambda k: 2 * k * la - _lgamma2(2 * k + 1))
    a2 = mul(a, a, prec)
    term = a
    total = a
    for i in range(1, n):
        term = div_int(mul(term, a2, prec), (2 * i) * (2 * i + 1), prec)
        total = sub(total, term, prec) if i % 2 else add(total, term, prec)
    tail = up(A ** (2 * n + 1) / math.factorial(2 * n + 1), 32)
    return widen(total, tail)


def _cos_small(a: Interval, prec: int) -> Interval:
    A = magnitude(a)
    if A == 0:
        return point(1)
    la = _log2f(A)
    n = _terms_needed(la, prec + 4, lambda k: 2 * k * la - _lgamma2(2 * k))
    a2 = mul(a, a, prec)
    term = point(1)
    total = point(1)
    for i in range(1, n):
        term = div_int(mul(term, a2, prec), (2 * i - 1) * (2 * i), prec)
        total = sub(total, term, prec) if i % 2 else add(total, term, prec)
    tail = up(A ** (2 * n) / math.factorial(2 * n), 32)
    return widen(total, tail)


def sinpi(x: Fraction, prec: int) -> Interval:
    r = x - 2 * math.floor(x / 2)  # r in [0, 2)
    sign = 1
    if r >= 1:
        r -= 1
        sign = -1
    if r > Fraction(1, 2):
        r = 1 - r
    w = prec + 6
    if r <= Fraction(1, 4):
        v = _sin_small(mul(point(r), pi(w), w), w)
    else:
        v = _cos_small(mul(point(Fraction(1, 2) - r), pi(w), w), w)
    return v if sign > 0 else neg(v)


def cospi(x: Fraction, prec: int) -> Interval:
    return sinpi(x + Fraction(1, 2), prec)
