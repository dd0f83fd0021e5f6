"""Range reduction and output compensation, both carried out in H.

Three families are supported:

* ``identity``: the polynomial sees x itself and its value is the result.
* ``log2_family``: x = t * 2**m with t in [1, 2); result = P(t) + m*K.
* ``exp2_family``: x' = x*K, m = floor(x'), r = x' - m; result = 2**m * P(r).

K is a constant held as an H value (1 for the base-2 functions, for example
ln 2 for the natural logarithm).  Compensation is monotone in the
polynomial's value, so the set of H values that compensate into a target
interval is itself an interval, found by exact inversion plus an endpoint
check.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import _series
from .formats import FPFormat, Value
from .hfloat import (DEFAULT_H, h_add, h_mul, h_sub, next_down, next_up, rn,
                     round_down, round_up)
from .oracle import Func

__all__ = [
    "ReductionKind",
    "RangeReduction",
    "ReductionError",
    "default_reduction",
    "reduction_for",
]


class ReductionKind(str, enum.Enum):
    IDENTITY = "identity"
    LOG2_FAMILY = "log2_family"
    EXP2_FAMILY = "exp2_family"

    def __str__(self):
        return self.value


class ReductionError(ValueError):
    """A target interval has no H value left after inversion and guarding."""


@dataclass(frozen=True)
class RangeReduction:
    kind: ReductionKind
    K: Fraction = Fraction(1)
    h: FPFormat = field(default=DEFAULT_H)
    guard: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", ReductionKind(self.kind))

    @property
    def domain(self) -> Optional[tuple[Fraction, Fraction]]:
        """Interval the reduced input lives in, or None for identity."""
        if self.kind is ReductionKind.LOG2_FAMILY:
            return Fraction(1), Fraction(2)
        if self.kind is ReductionKind.EXP2_FAMILY:
            return Fraction(0), Fraction(1)
        return None

    def reduce(self, x: Fraction) -> tuple[Fraction, int]:
        """(reduced input, integer m) for a finite in-domain ``x``."""
        if self.kind is ReductionKind.IDENTITY:
            return x, 0
        if self.kind is ReductionKind.LOG2_FAMILY:
            if x <= 0:
                raise ValueError("log2_family needs a positive input")
            m = x.numerator.bit_length() - x.denominator.bit_length()
            t = x / _pow2(m)
            if t < 1:
                t *= 2
                m -= 1
            return t, m
        xs = h_mul(self.h, x, self.K)
        if isinstance(xs, float):
            raise ValueError(f"reduction of {x} overflows H")
        m = math.floor(xs)
        return h_sub(self.h, xs, Fraction(m)), m

    def offset(self, m: int) -> Value:
        """The H value added by log2_family compensation."""
        return rn(self.h, m * self.K)

    def compensate(self, p: Value, m: int) -> Value:
        if self.kind is ReductionKind.IDENTITY:
            return p
        if self.kind is ReductionKind.LOG2_FAMILY:
            return h_add(self.h, p, self.offset(m))
        if isinstance(p, float):
            return p
        return rn(self.h, p * _pow2(m))

    def inverse_compensate(self, lo: Fraction, hi: Fraction, m: int) -> tuple[Fraction, Fraction]:
        """Exact real preimage of [lo, hi] under the unrounded compensation."""
        if self.kind is ReductionKind.IDENTITY:
            return lo, hi
        if self.kind is ReductionKind.LOG2_FAMILY:
            c = self.offset(m)
            return lo - c, hi - c
        s = _pow2(-m)
        return lo * s, hi * s

    def reduce_interval(self, lo: Fraction, hi: Fraction, m: int,
                        label: object = None) -> tuple[Fraction, Fraction]:
        """H interval [lo', hi'] whose every member compensates into [lo, hi]."""
        a, b = self.inverse_compensate(lo, hi, m)
        a, b = round_up(self.h, a), round_down(self.h, b)
        for _ in range(self.guard):
            if a >= b:
                break
            a, b = next_up(self.h, a), next_down(self.h, b)
        while a <= b and _below(self.compensate(a, m), lo):
            a = next_up(self.h, a)
        while a <= b and _above(self.compensate(b, m), hi):
            b = next_down(self.h, b)
        if isinstance(a, float) or isinstance(b, float) or a > b:
            raise ReductionError(f"empty reduced interval for input {label}")
        return a, b

    def descriptor(self) -> str:
        return f"{self.kind} {self.K.numerator}/{self.K.denominator}"


def _below(v: Value, lo: Fraction) -> bool:
    return (isinstance(v, float) and (math.isnan(v) or v < 0)) or v < lo


def _above(v: Value, hi: Fraction) -> bool:
    return (isinstance(v, float) and (math.isnan(v) or v > 0)) or v > hi


def _pow2(e: int) -> Fraction:
    return Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)


@lru_cache(maxsize=None)
def _constant(name: str, h: FPFormat) -> Fraction:
    """Correctly rounded (nearest) H value of a named constant."""
    p = 2 * h.total_bits + 32
    while True:
        ln2 = _series.ln2(p)
        ln10 = _series.ln10(p)
        if name == "ln2":
            iv = ln2
        elif name == "log10_2":
            iv = _series.div(ln2, ln10, p)
        elif name == "log2_e":
            iv = _series.div(_series.point(1), ln2, p)
        elif name == "log2_10":
            iv = _series.div(ln10, ln2, p)
        else:
            raise KeyError(name)
        a, b = rn(h, iv.lo), rn(h, iv.hi)
        if a == b:
            return a
        p *= 2


_DEFAULTS = {
    Func.LN: ReductionKind.IDENTITY,
    Func.LOG2: ReductionKind.LOG2_FAMILY,
    Func.LOG10: ReductionKind.LOG2_FAMILY,
    Func.EXP: ReductionKind.EXP2_FAMILY,
    Func.EXP2: ReductionKind.EXP2_FAMILY,
    Func.EXP10: ReductionKind.EXP2_FAMILY,
    Func.SINH: ReductionKind.IDENTITY,
    Func.COSH: ReductionKind.IDENTITY,
    Func.SINPI: ReductionKind.IDENTITY,
    Func.COSPI: ReductionKind.IDENTITY,
}

_FAMILY_CONSTANTS = {
    (Func.LN, ReductionKind.LOG2_FAMILY): "ln2",
    (Func.LOG2, ReductionKind.LOG2_FAMILY): None,
    (Func.LOG10, ReductionKind.LOG2_FAMILY): "log10_2",
    (Func.EXP, ReductionKind.EXP2_FAMILY): "log2_e",
    (Func.EXP2, ReductionKind.EXP2_FAMILY): None,
    (Func.EXP10, ReductionKind.EXP2_FAMILY): "log2_10",
}

# rounded additions in log2_family compensation get a small safety margin
_DEFAULT_GUARD = {ReductionKind.IDENTITY: 0, ReductionKind.LOG2_FAMILY: 2,
                  ReductionKind.EXP2_FAMILY: 0}


def reduction_for(f: Func, kind: ReductionKind | str, h: FPFormat = DEFAULT_H,
                  guard: Optional[int] = None) -> RangeReduction:
    """The reduction of family ``kind`` for ``f``; errors when it does not apply."""
    f, kind = Func(f), ReductionKind(kind)
    if guard is None:
        guard = _DEFAULT_GUARD[kind]
    if kind is ReductionKind.IDENTITY:
        return RangeReduction(kind, Fraction(1), h, guard)
    key = (f, kind)
    if key not in _FAMILY_CONSTANTS:
        raise ValueError(f"{kind} does not apply to {f}")
    name = _FAMILY_CONSTANTS[key]
    K = Fraction(1) if name is None else _constant(name, h)
    return RangeReduction(kind, K, h, guard)


def default_reduction(f: Func, h: FPFormat = DEFAULT_H) -> RangeReduction:
    return reduction_for(f, _DEFAULTS[Func(f)], h)
