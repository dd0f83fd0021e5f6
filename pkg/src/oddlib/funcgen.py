"""Runtime of a generated function.

Order of evaluation: special-value table, saturation clamps, singleton
table, then range reduction, piecewise Horner evaluation and output
compensation, all in simulated H.  :func:`evaluate_rno` rounds the H
value to odd in T_{n+2}; :func:`evaluate` rounds the same H value
directly into any narrower T_k with a standard mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .formats import FPBits, FPFormat, Value, value_marker, value_of
from .hfloat import DEFAULT_H
from .oracle import Func, special_result
from .polygen import PiecewisePolynomial
from .reduction import RangeReduction, ReductionKind, default_reduction, reduction_for
from .rounding import STANDARD_MODES, RoundingMode, round_value

__all__ = [
    "GeneratedFunction",
    "Clamp",
    "SPECIAL_CLASSES",
    "special_class",
    "special_table",
    "evaluate_rno",
    "evaluate",
    "result_value",
    "embed",
    "RangeReduction",
    "ReductionKind",
    "default_reduction",
    "reduction_for",
]

SPECIAL_CLASSES = ("nan", "+inf", "-inf", "+0", "-0", "negative")


def special_class(x: FPBits) -> Optional[str]:
    if x.is_nan:
        return "nan"
    if x.is_inf:
        return "-inf" if x.negative else "+inf"
    if x.is_zero:
        return "-0" if x.negative else "+0"
    if x.negative:
        return "negative"
    return None


def special_table(f: Func) -> dict[str, Value]:
    """Special-class results for ``f``; absent classes take the regular path."""
    reps = {
        "nan": (math.nan, False),
        "+inf": (math.inf, False),
        "-inf": (-math.inf, False),
        "+0": (Fraction(0), False),
        "-0": (Fraction(0), True),
        "negative": (Fraction(-1), False),
    }
    out = {}
    for name, (v, negz) in reps.items():
        r = special_result(f, v, negative_zero=negz)
        if r is not None:
            out[name] = r
    return out


@dataclass(frozen=True)
class Clamp:
    """Every input at or beyond ``x`` (``above``: x' >= x, ``below``: x' <= x) maps to ``y``."""

    side: str
    x: FPBits
    y: FPBits

    def covers(self, v: Fraction) -> bool:
        bound = value_of(self.x)
        return v >= bound if self.side == "above" else v <= bound


@dataclass(frozen=True)
class GeneratedFunction:
    func: Func
    tn: FPFormat
    tn2: FPFormat
    h: FPFormat
    rr: RangeReduction
    poly: PiecewisePolynomial
    singletons: Mapping[Fraction, FPBits] = field(default_factory=dict)
    clamps: tuple[Clamp, ...] = ()
    specials: Mapping[str, Value] = field(default_factory=dict)
    verified: bool = False

    def special(self, x: FPBits) -> Optional[Value]:
        cls = special_class(x)
        if cls is None:
            return None
        return self.specials.get(cls)

    def lookup(self, v: Fraction) -> Optional[FPBits]:
        for c in self.clamps:
            if c.covers(v):
                return c.y
        return self.singletons.get(v)

    def h_value(self, v: Fraction) -> Value:
        """Polynomial path: reduce, evaluate the piece, compensate."""
        xr, m = self.rr.reduce(v)
        p = self.poly.evaluate_h(self.h, xr)
        return self.rr.compensate(p, m)

    def targets(self) -> range:
        """Valid T_k widths: |E|+1 < k <= n."""
        return range(self.tn.exponent_bits + 2, self.tn.total_bits + 1)


def evaluate_rno(g: GeneratedFunction, x: FPBits) -> FPBits:
    """Round-to-odd result in T_{n+2} for any bit pattern ``x`` of T_n."""
    ro = RoundingMode.RO
    sp = g.special(x)
    if sp is not None:
        return round_value(g.tn2, ro, sp)
    v = value_of(x)
    y = g.lookup(v)
    if y is not None:
        return y
    return round_value(g.tn2, ro, g.h_value(v))


def embed(x: FPBits, tn: FPFormat) -> FPBits:
    """Widen a pattern of T_k into T_n by zero-extending the mantissa."""
    tk = x.format
    if tk.exponent_bits != tn.exponent_bits or tk.total_bits > tn.total_bits:
        raise ValueError(f"{tk} does not embed into {tn}")
    shift = tn.total_bits - tk.total_bits
    sign = tn.sign_mask if x.negative else 0
    return FPBits(tn, sign | (x.magnitude << shift))


def evaluate(g: GeneratedFunction, x: FPBits, k: Optional[int] = None,
             mode: RoundingMode | str = RoundingMode.RN) -> FPBits:
    """Result in T_k = x.format rounded with ``mode`` straight from the H value."""
    mode = RoundingMode(mode)
    if mode not in STANDARD_MODES:
        raise ValueError(f"{mode} is not a standard rounding mode")
    tk = x.format
    if k is not None and k != tk.total_bits:
        raise ValueError(f"input has {tk.total_bits} bits, expected {k}")
    if tk.exponent_bits != g.tn.exponent_bits or tk.total_bits not in g.targets():
        raise ValueError(f"{tk} is not a valid target for {g.tn}")
    return round_value(tk, mode, result_value(g, embed(x, g.tn)))


def result_value(g: GeneratedFunction, xn: FPBits) -> Value:
    """The value the pipeline produces for a T_n pattern before any final rounding.

    Special results are value markers, singletons and clamps give their
    stored T_{n+2} value, everything else the compensated H value.
    """
    sp = g.special(xn)
    if sp is not None:
        return sp
    v = value_of(xn)
    y = g.lookup(v)
    if y is not None:
        return value_marker(y)
    return g.h_value(v)
