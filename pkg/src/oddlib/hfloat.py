"""Simulated arithmetic in the evaluation format H.

Values are exact :class:`Fraction` objects that happen to be representable
in H, or the float markers ``math.inf`` / ``-math.inf`` / ``math.nan`` once
an operation overflows.  Every operation computes the exact result and then
rounds it to nearest-even in H, which is what a hardware unit of that width
would return.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .formats import DOUBLE, FPBits, FPFormat, Value, value_of
from .rounding import RoundingMode, magnitude_components, round_value

__all__ = [
    "DEFAULT_H",
    "rn",
    "round_down",
    "round_up",
    "h_add",
    "h_sub",
    "h_mul",
    "horner_h",
    "ulp",
    "next_up",
    "next_down",
    "to_bits",
    "from_bits",
]

DEFAULT_H = DOUBLE


def _decode(fmt: FPFormat, mag: int) -> Fraction:
    mbits = fmt.mantissa_bits
    e_field = mag >> mbits
    frac = mag & ((1 << mbits) - 1)
    if e_field == 0:
        sig, exp = frac, fmt.denormal_exponent
    else:
        sig, exp = frac | (1 << mbits), e_field - fmt.bias - mbits
    return Fraction(sig << exp) if exp >= 0 else Fraction(sig, 1 << -exp)


def rn(fmt: FPFormat, q: Value) -> Value:
    """Round ``q`` to nearest-even in ``fmt`` and return the value."""
    if isinstance(q, float):
        return q
    num, den = q.numerator, q.denominator
    if num == 0:
        return Fraction(0)
    neg = num < 0
    if neg:
        num = -num
    mag, rb, sticky = magnitude_components(fmt, num, den)
    if rb and (sticky or mag & 1):
        mag += 1
    if mag >= fmt.inf_magnitude:
        return -math.inf if neg else math.inf
    v = _decode(fmt, mag)
    return -v if neg else v


def round_down(fmt: FPFormat, q: Fraction) -> Value:
    """Largest value of ``fmt`` that is <= q."""
    return value_of(round_value(fmt, RoundingMode.RD, q))


def round_up(fmt: FPFormat, q: Fraction) -> Value:
    """Smallest value of ``fmt`` that is >= q."""
    return value_of(round_value(fmt, RoundingMode.RU, q))


def _exact(op, a: Value, b: Value) -> Value:
    if isinstance(a, float) or isinstance(b, float):
        r = op(float(a), float(b))
        return r if math.isinf(r) or math.isnan(r) else Fraction(r)
    return op(a, b)


def h_add(fmt: FPFormat, a: Value, b: Value) -> Value:
    return rn(fmt, _exact(lambda u, v: u + v, a, b))


def h_sub(fmt: FPFormat, a: Value, b: Value) -> Value:
    return rn(fmt, _exact(lambda u, v: u - v, a, b))


def h_mul(fmt: FPFormat, a: Value, b: Value) -> Value:
    return rn(fmt, _exact(lambda u, v: u * v, a, b))


def horner_h(fmt: FPFormat, coeffs: Sequence[Value], x: Value) -> Value:
    """Evaluate sum(coeffs[i] * x**i) by Horner's rule with every step rounded in ``fmt``.

    ``coeffs`` is dense, lowest power first; absent powers are zeros.
    """
    if not coeffs:
        return Fraction(0)
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = h_add(fmt, h_mul(fmt, acc, x), c)
    return acc


def to_bits(fmt: FPFormat, v: Value) -> FPBits:
    """Pattern of an H value (exactly representable)."""
    from .formats import from_value

    return from_value(fmt, v)


def from_bits(b: FPBits) -> Value:
    return value_of(b)


def next_up(fmt: FPFormat, v: Fraction) -> Value:
    """Successor of the H value ``v``."""
    from .formats import from_value, succ

    return value_of(succ(from_value(fmt, v)))


def next_down(fmt: FPFormat, v: Fraction) -> Value:
    from .formats import from_value, pred

    return value_of(pred(from_value(fmt, v)))


def ulp(fmt: FPFormat, v: Fraction) -> Fraction:
    """Spacing of ``fmt`` just above |v|."""
    base = round_down(fmt, abs(Fraction(v)))
    if base == fmt.max_value:
        return base - next_down(fmt, base)
    return next_up(fmt, base) - base
