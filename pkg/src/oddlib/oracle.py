"""Correctly rounded reference results for the ten supported functions.

The oracle is a Ziv loop over rigorous interval enclosures: when both ends
of an enclosure share their rounding components the rounded result is
decided, otherwise precision doubles.  Outputs that are rational (and so
may sit exactly on a rounding boundary) are certified up front by
:func:`exact_result` and never reach the loop.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional

from . import _series
from .formats import FPBits, FPFormat, Value, is_representable, value_of
from .rounding import (RoundingComponents, RoundingMode, components,
                       round_from_components)

__all__ = [
    "Func",
    "Enclosure",
    "PrecisionExhausted",
    "eval_enclosure",
    "exact_result",
    "special_result",
    "in_domain",
    "decide_components",
    "correctly_rounded",
    "rno_result",
    "singleton_census",
    "start_precision",
    "MAX_PRECISION",
]

MAX_PRECISION = 4096


class Func(str, enum.Enum):
    LN = "ln"
    LOG2 = "log2"
    LOG10 = "log10"
    EXP = "exp"
    EXP2 = "exp2"
    EXP10 = "exp10"
    SINH = "sinh"
    COSH = "cosh"
    SINPI = "sinpi"
    COSPI = "cospi"

    def __str__(self):
        return self.value

    @property
    def is_log(self) -> bool:
        return self in (Func.LN, Func.LOG2, Func.LOG10)

    @property
    def is_exp(self) -> bool:
        return self in (Func.EXP, Func.EXP2, Func.EXP10)


_EVALUATORS: dict[Func, Callable[[Fraction, int], _series.Interval]] = {
    Func.LN: _series.ln,
    Func.LOG2: _series.log2,
    Func.LOG10: _series.log10,
    Func.EXP: _series.exp,
    Func.EXP2: _series.exp2,
    Func.EXP10: _series.exp10,
    Func.SINH: _series.sinh,
    Func.COSH: _series.cosh,
    Func.SINPI: _series.sinpi,
    Func.COSPI: _series.cospi,
}


class PrecisionExhausted(RuntimeError):
    """The Ziv loop hit MAX_PRECISION: an exact case was not certified."""


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, v) -> bool:
        return self.lo <= v <= self.hi


def in_domain(f: Func, x: Fraction) -> bool:
    """Whether finite ``x`` lies in the open real domain of ``f``."""
    if f.is_log:
        return x > 0
    return True


def eval_enclosure(f: Func, x: Fraction, p: int) -> Enclosure:
    """Two-sided enclosure of f(x) with relative width about 2**-p."""
    f = Func(f)
    x = Fraction(x)
    if not in_domain(f, x):
        raise ValueError(f"{f}({x}) is outside the domain")
    iv = _cached_interval(f, x, p)
    return Enclosure(iv.lo, iv.hi)


@lru_cache(maxsize=1 << 16)
def _cached_interval(f: Func, x: Fraction, p: int) -> _series.Interval:
    return _EVALUATORS[f](x, p + 8)


def _is_int(x: Fraction) -> bool:
    return x.denominator == 1


def _power_of(base: int, x: Fraction) -> Optional[int]:
    """k with x == base**k for integer k (any sign), else None."""
    if x <= 0:
        return None
    n, d = x.numerator, x.denominator
    if d == 1:
        k = 0
        while n % base == 0:
            n //= base
            k += 1
        return k if n == 1 else None
    if n != 1:
        return None
    k = 0
    while d % base == 0:
        d //= base
        k += 1
    return -k if d == 1 else None


def exact_result(f: Func, x: Fraction) -> Optional[Fraction]:
    """f(x) when it is certified rational, else None.

    Uses Lindemann-Weierstrass for exp/ln/sinh/cosh, integer powers for the
    base-2 and base-10 pairs, and Niven's theorem for sinpi/cospi.
    """
    f = Func(f)
    x = Fraction(x)
    if f is Func.LN:
        return Fraction(0) if x == 1 else None
    if f in (Func.EXP, Func.COSH):
        return Fraction(1) if x == 0 else None
    if f is Func.SINH:
        return Fraction(0) if x == 0 else None
    if f is Func.EXP2:
        if _is_int(x):
            k = x.numerator
            return Fraction(1 << k) if k >= 0 else Fraction(1, 1 << -k)
        return None
    if f is Func.EXP10:
        if _is_int(x):
            k = x.numerator
            return Fraction(10 ** k) if k >= 0 else Fraction(1, 10 ** -k)
        return None
    if f is Func.LOG2:
        k = _power_of(2, x)
        return Fraction(k) if k is not None else None
    if f is Func.LOG10:
        k = _power_of(10, x)
        return Fraction(k) if k is not None else None
    if f is Func.SINPI:
        twice = 2 * x
        if not _is_int(twice):
            return None
        t = twice.numerator % 4
        return Fraction((0, 1, 0, -1)[t])
    if f is Func.COSPI:
        twice = 2 * x
        if not _is_int(twice):
            return None
        t = twice.numerator % 4
        return Fraction((1, 0, -1, 0)[t])
    raise ValueError(f"unknown function {f}")


def special_result(f: Func, x: Value, negative_zero: bool = False) -> Optional[Value]:
    """Result for NaN, infinite, zero-signed and out-of-domain inputs.

    Returns a value marker (``math.nan``, ``+-math.inf``, ``+-0.0``) or
    ``None`` when ``x`` takes the regular path.
    """
    f = Func(f)
    if isinstance(x, float):
        if math.isnan(x):
            return math.nan
        if math.isinf(x):
            pos = x > 0
            if f.is_log:
                return math.inf if pos else math.nan
            if f.is_exp:
                return math.inf if pos else 0.0
            if f is Func.SINH:
                return x
            if f is Func.COSH:
                return math.inf
            return math.nan
        x = Fraction(x)
    if f.is_log:
        if x == 0:
            return -math.inf
        if x < 0:
            return math.nan
        return None
    if x == 0 and f in (Func.SINH, Func.SINPI):
        return -0.0 if negative_zero else 0.0
    return None


def special_for_bits(f: Func, b: FPBits) -> Optional[Value]:
    return special_result(f, value_of(b), negative_zero=b.is_zero and b.negative)


def start_precision(fmt: FPFormat) -> int:
    return 2 * fmt.total_bits + 16


# log2 of the base for the exponential family; an upper bound and a lower
# bound are both within 1e-12 of the truth, far inside the 2-unit margins.
_LOG2_BASE = {Func.EXP: 1.4426950408889634, Func.EXP2: 1.0,
              Func.EXP10: 3.321928094887362, Func.SINH: 1.4426950408889634,
              Func.COSH: 1.4426950408889634}


def _saturated(f: Func, x: Fraction, fmt: FPFormat) -> Optional[Fraction]:
    """A stand-in with the same rounding components when |f(x)| is off-scale.

    Any value at or beyond 2**(emax+1) has components (max, 1, 1); any
    positive value below half the smallest denormal has (0, 0, 1).
    """
    if f not in _LOG2_BASE:
        return None
    y = float(x) * _LOG2_BASE[f] if abs(x) < 1e300 else math.copysign(math.inf, x)
    big = fmt.emax + 4
    tiny = fmt.denormal_exponent - 4
    if f.is_exp:
        if y > big:
            return 2 * fmt.overflow_threshold
        if y < tiny:
            return fmt.min_denormal / 4
        return None
    # sinh/cosh: |f(x)| >= 2**(|x| log2 e - 1)
    if abs(y) - 1 > big:
        v = 2 * fmt.overflow_threshold
        return -v if (f is Func.SINH and x < 0) else v
    return None


def decide_components(f: Func, x: Fraction, fmt: FPFormat,
                      p0: Optional[int] = None,
                      p_max: int = MAX_PRECISION) -> RoundingComponents:
    """Rounding components of f(x) in ``fmt``, which fix the result in every mode."""
    f = Func(f)
    x = Fraction(x)
    # saturation first: an off-scale exact power would be a huge integer
    stand_in = _saturated(f, x, fmt)
    if stand_in is not None:
        return components(fmt, stand_in)
    r = exact_result(f, x)
    if r is not None:
        return components(fmt, r)
    p = p0 if p0 is not None else start_precision(fmt)
    while p <= p_max:
        enc = eval_enclosure(f, x, p)
        lo = components(fmt, enc.lo)
        if lo == components(fmt, enc.hi):
            return lo
        p *= 2
    raise PrecisionExhausted(f"{f}({x}) unresolved at {p_max} bits in {fmt}")


def correctly_rounded(f: Func, x: Fraction, fmt: FPFormat, mode: RoundingMode,
                      p0: Optional[int] = None,
                      p_max: int = MAX_PRECISION) -> FPBits:
    """round(fmt, mode, f(x)) for finite in-domain ``x``."""
    return round_from_components(fmt, mode, decide_components(f, x, fmt, p0, p_max))


def rno_result(f: Func, fmt: FPFormat, x: FPBits) -> FPBits:
    """Round-to-odd result of f(x) in ``fmt`` (T_{n+2}) for a regular input."""
    v = value_of(x)
    if not isinstance(v, Fraction):
        raise ValueError(f"rno_result expects a finite input, got {x}")
    return correctly_rounded(f, v, fmt, RoundingMode.RO)


def singleton_census(f: Func, tn: FPFormat, tn2: FPFormat) -> list[tuple[FPBits, Fraction]]:
    """Inputs of ``tn`` whose f(x) is rational and exactly representable in ``tn2``.

    Candidates come from the exactness arguments, not from scanning ``tn``,
    so 32-bit formats are cheap.  Sorted by input value.
    """
    from .formats import from_value

    f = Func(f)
    found: dict[Fraction, Fraction] = {}

    def consider(x: Fraction):
        if not is_representable(tn, x) or abs(x) > tn.max_value:
            return
        if not in_domain(f, x):
            return
        y = exact_result(f, x)
        if y is None:
            return
        if abs(y) > tn2.max_value or not is_representable(tn2, y):
            return
        found[x] = y

    if f is Func.LN:
        consider(Fraction(1))
    elif f in (Func.EXP, Func.COSH, Func.SINH):
        consider(Fraction(0))
    elif f is Func.EXP2:
        for k in range(tn2.denormal_exponent, tn2.emax + 1):
            consider(Fraction(k))
    elif f is Func.EXP10:
        k = 0
        while 10 ** k <= tn2.max_value:
            consider(Fraction(k))
            k += 1
    elif f is Func.LOG2:
        for k in range(tn.denormal_exponent, tn.emax + 1):
            consider(Fraction(2) ** k)
    elif f is Func.LOG10:
        k = 0
        while 10 ** k <= tn.max_value:
            consider(Fraction(10) ** k)
            k += 1
    else:
        for x in _half_multiples(tn):
            consider(x)
    return [(from_value(tn, x), y) for x, y in sorted(found.items())]


def _half_multiples(fmt: FPFormat) -> Iterable[Fraction]:
    """Every finite value of ``fmt`` that is a multiple of 1/2."""
    yield Fraction(0)
    for e in range(-1, fmt.emax + 1):
        step_exp = e - fmt.mantissa_bits
        base = Fraction(2) ** e
        step = Fraction(2) ** max(step_exp, -1)
        count = int(base / step)
        for i in range(count):
            v = base + i * step
            if is_representable(fmt, v):
                yield v
                yield -v
