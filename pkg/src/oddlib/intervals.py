"""Odd intervals: the H values that round to odd to a given result.

For an odd round-to-odd result y in T_{n+2}, every real strictly between
its two neighbours rounds back to y, so the closed H interval
[succ_H(pred(y)), pred_H(succ(y))] is the constraint a polynomial has to
meet.  An even y can only come from an exact result, leaving a singleton.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

from .formats import FPBits, FPFormat, from_value, pred, succ, value_of
from .reduction import RangeReduction

__all__ = [
    "IntervalConstraint",
    "SingletonEntry",
    "ReducedConstraint",
    "odd_interval",
    "calc_odd_intervals",
    "reduce_constraints",
    "merge_reduced",
    "dump_constraints",
    "load_constraints",
]


@dataclass(frozen=True)
class IntervalConstraint:
    x: FPBits
    lo: Fraction
    hi: Fraction
    y: FPBits


@dataclass(frozen=True)
class SingletonEntry:
    x: FPBits
    y: FPBits


@dataclass(frozen=True)
class ReducedConstraint:
    """lo <= P(xr) <= hi, all three exact H values."""

    xr: Fraction
    lo: Fraction
    hi: Fraction
    m: int = 0
    source: object = None


def _h_neighbour(h: FPFormat, v, up: bool) -> Fraction:
    b = from_value(h, v)
    return value_of(succ(b) if up else pred(b))


def odd_interval(y: FPBits, h: FPFormat) -> tuple[Fraction, Fraction]:
    """Closed H interval of values whose round-to-odd result is the odd pattern ``y``."""
    if not y.is_finite:
        raise ValueError(f"{y} is not finite")
    if not y.bits & 1:
        raise ValueError(f"{y} is even; its odd interval is a singleton")
    lo = _h_neighbour(h, value_of(pred(y)), up=True)
    hi = _h_neighbour(h, value_of(succ(y)), up=False)
    return lo, hi


def calc_odd_intervals(results: Iterable[tuple[FPBits, FPBits]], h: FPFormat
                       ) -> tuple[list[IntervalConstraint], list[SingletonEntry]]:
    """Split (x, round-to-odd y) pairs into interval constraints and singletons."""
    constraints: list[IntervalConstraint] = []
    singletons: list[SingletonEntry] = []
    for x, y in results:
        if not y.is_finite:
            raise ValueError(f"result {y} for input {x} belongs in the special table")
        if y.bits & 1:
            lo, hi = odd_interval(y, h)
            constraints.append(IntervalConstraint(x, lo, hi, y))
        else:
            singletons.append(SingletonEntry(x, y))
    return constraints, singletons


def reduce_constraints(constraints: Sequence[IntervalConstraint],
                       rr: RangeReduction) -> list[ReducedConstraint]:
    """Map each constraint through the inverse output compensation of ``rr``."""
    out = []
    for c in constraints:
        x = value_of(c.x)
        xr, m = rr.reduce(x)
        lo, hi = rr.reduce_interval(c.lo, c.hi, m, label=c.x)
        out.append(ReducedConstraint(xr, lo, hi, m, c.x))
    return out


def merge_reduced(constraints: Iterable[ReducedConstraint]) -> list[ReducedConstraint]:
    """Intersect constraints sharing a reduced input; sorted by that input.

    Raises ``ValueError`` when two of them leave nothing in common.
    """
    merged: dict[Fraction, ReducedConstraint] = {}
    for c in constraints:
        prev = merged.get(c.xr)
        if prev is None:
            merged[c.xr] = c
            continue
        lo, hi = max(prev.lo, c.lo), min(prev.hi, c.hi)
        if lo > hi:
            raise ValueError(
                f"inputs {prev.source} and {c.source} reduce to {c.xr} with disjoint intervals")
        merged[c.xr] = ReducedConstraint(c.xr, lo, hi, prev.m, prev.source)
    return [merged[k] for k in sorted(merged)]


def dump_constraints(constraints: Iterable[IntervalConstraint], h: FPFormat,
                     out: TextIO) -> None:
    """One ``x_hex lo_hex hi_hex`` line per constraint."""
    for c in constraints:
        lo = from_value(h, c.lo).hex()
        hi = from_value(h, c.hi).hex()
        out.write(f"{c.x.hex()} {lo} {hi}\n")


def load_constraints(text: Iterable[str], tn: FPFormat, tn2: FPFormat,
                     h: FPFormat) -> list[IntervalConstraint]:
    """Inverse of :func:`dump_constraints`.  The odd result is rebuilt from the bounds."""
    from .rounding import RoundingMode, round_value

    out = []
    for line in text:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        xs, los, his = line.split()
        lo = value_of(FPBits.from_hex(h, los))
        hi = value_of(FPBits.from_hex(h, his))
        y = round_value(tn2, RoundingMode.RO, lo)
        out.append(IntervalConstraint(FPBits.from_hex(tn, xs), lo, hi, y))
    return out
