"""Polynomial synthesis against interval constraints.

A candidate polynomial is found by exact LP on a sample of the constraints,
its coefficients are rounded to H, and the rounded polynomial is evaluated
with H-rounded Horner steps on every constraint.  Violated constraints are
added to the sample with slightly tightened bounds and the LP is solved
again.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .formats import FPFormat, from_value
from .hfloat import DEFAULT_H, horner_h, rn, ulp
from .intervals import ReducedConstraint
from .lp import LPStats, feasible_point

__all__ = [
    "TermStructure",
    "PolynomialSpec",
    "IndexRule",
    "PiecewisePolynomial",
    "PieceLog",
    "GenerationLog",
    "powers_for",
    "solve_lp",
    "cegis_generate",
    "gen_piecewise",
    "DEFAULT_SAMPLE_CAP",
    "DEFAULT_MAX_ITERS",
]

DEFAULT_SAMPLE_CAP = 96
DEFAULT_MAX_ITERS = 24


class TermStructure(str, enum.Enum):
    ALL = "all"
    ODD = "odd"
    EVEN = "even"

    def __str__(self):
        return self.value


def powers_for(degree: int, structure: TermStructure | str = TermStructure.ALL) -> tuple[int, ...]:
    structure = TermStructure(structure)
    if structure is TermStructure.ODD:
        return tuple(range(1, degree + 1, 2))
    if structure is TermStructure.EVEN:
        return tuple(range(0, degree + 1, 2))
    return tuple(range(degree + 1))


@dataclass(frozen=True)
class PolynomialSpec:
    powers: tuple[int, ...]
    coeffs_exact: tuple[Fraction, ...]
    coeffs_h: tuple[Fraction, ...]

    def __post_init__(self):
        if not (len(self.powers) == len(self.coeffs_exact) == len(self.coeffs_h)):
            raise ValueError("powers and coefficients differ in length")

    @property
    def degree(self) -> int:
        return max(self.powers, default=0)

    @property
    def terms(self) -> int:
        return len(self.powers)

    def dense_h(self) -> list[Fraction]:
        out = [Fraction(0)] * (self.degree + 1)
        for p, c in zip(self.powers, self.coeffs_h):
            out[p] = c
        return out

    def evaluate_h(self, h: FPFormat, x: Fraction):
        return horner_h(h, self.dense_h(), x)

    @classmethod
    def zero(cls) -> "PolynomialSpec":
        return cls((0,), (Fraction(0),), (Fraction(0),))


@dataclass(frozen=True)
class IndexRule:
    """Maps a reduced input to one of ``2**bits`` pieces.

    ``linear`` splits [lo, hi] uniformly in value; ``ordinal`` splits the
    run of H bit patterns between lo and hi uniformly, which is close to a
    logarithmic split and suits inputs spanning many binades.
    """

    kind: str
    lo: Fraction
    hi: Fraction
    bits: int = 0

    def __post_init__(self):
        if self.kind not in ("linear", "ordinal"):
            raise ValueError(f"unknown index rule {self.kind!r}")

    @property
    def count(self) -> int:
        return 1 << self.bits

    def with_bits(self, bits: int) -> "IndexRule":
        return IndexRule(self.kind, self.lo, self.hi, bits)

    def index(self, xr: Fraction, h: FPFormat) -> int:
        if self.bits == 0:
            return 0
        if self.kind == "linear":
            span = self.hi - self.lo
            i = int((xr - self.lo) * self.count // span) if span else 0
        else:
            a = from_value(h, self.lo).ordinal()
            b = from_value(h, self.hi).ordinal()
            o = from_value(h, xr).ordinal()
            i = (o - a) * self.count // (b - a + 1)
        return min(max(i, 0), self.count - 1)

    def describe(self) -> str:
        return f"{self.kind} {self.lo} {self.hi} {self.bits}"


@dataclass(frozen=True)
class PiecewisePolynomial:
    index_rule: IndexRule
    pieces: tuple[PolynomialSpec, ...]

    def __post_init__(self):
        if len(self.pieces) != self.index_rule.count:
            raise ValueError("piece count does not match the index rule")

    @property
    def piece_count(self) -> int:
        return len(self.pieces)

    def piece_for(self, xr: Fraction, h: FPFormat) -> PolynomialSpec:
        return self.pieces[self.index_rule.index(xr, h)]

    def evaluate_h(self, h: FPFormat, xr: Fraction):
        return self.piece_for(xr, h).evaluate_h(h, xr)


Constraint = ReducedConstraint


def _as_triple(c) -> tuple[Fraction, Fraction, Fraction]:
    if isinstance(c, ReducedConstraint):
        return c.xr, c.lo, c.hi
    x, lo, hi = c
    return Fraction(x), Fraction(lo), Fraction(hi)


def solve_lp(constraints: Sequence, powers: Sequence[int],
             stats: Optional[LPStats] = None) -> Optional[list[Fraction]]:
    """Exact coefficients meeting every (x', lo', hi') for the given powers, or None."""
    trip = [_as_triple(c) for c in constraints]
    rows = [[x ** p for p in powers] for x, _, _ in trip]
    c = feasible_point(rows, [t[1] for t in trip], [t[2] for t in trip], stats)
    if c is None:
        return None
    for r, (_, lo, hi) in zip(rows, trip):
        v = sum(a * b for a, b in zip(r, c))
        if not lo <= v <= hi:
            raise ArithmeticError("LP solution failed the exact re-check")
    return c


def _stride_sample(n: int, cap: int) -> list[int]:
    if n <= cap:
        return list(range(n))
    return sorted({(i * (n - 1)) // (cap - 1) for i in range(cap)})


@dataclass
class PieceLog:
    index: int
    constraints: int
    degree: Optional[int] = None
    terms: int = 0
    iterations: int = 0
    lp_rows: int = 0


@dataclass
class GenerationLog:
    pieces: list[PieceLog] = field(default_factory=list)
    attempts: list[tuple[int, Optional[int]]] = field(default_factory=list)
    failed_piece: Optional[PieceLog] = None


def cegis_generate(constraints: Sequence, powers: Sequence[int], h: FPFormat = DEFAULT_H,
                   sample_cap: int = DEFAULT_SAMPLE_CAP,
                   max_iters: int = DEFAULT_MAX_ITERS,
                   log: Optional[PieceLog] = None) -> Optional[PolynomialSpec]:
    """Counterexample-guided search for H coefficients satisfying all constraints."""
    powers = tuple(powers)
    trip = [_as_triple(c) for c in constraints]
    if sample_cap < len(powers):
        raise ValueError("sample_cap is smaller than the number of unknowns")
    sample = set(_stride_sample(len(trip), sample_cap))
    tighten: dict[int, int] = {}
    degree = max(powers, default=0)
    for it in range(1, max_iters + 1):
        idx = sorted(sample)
        rows, los, his = [], [], []
        for i in idx:
            x, lo, hi = trip[i]
            k = tighten.get(i, 0)
            if k:
                lo2 = lo + k * ulp(h, lo)
                hi2 = hi - k * ulp(h, hi)
                if lo2 > hi2:
                    lo2 = hi2 = (lo + hi) / 2
                lo, hi = lo2, hi2
            rows.append([x ** p for p in powers])
            los.append(lo)
            his.append(hi)
        if log is not None:
            log.iterations = it
            log.lp_rows = len(rows)
        c = feasible_point(rows, los, his)
        if c is None:
            return None
        ch = [rn(h, v) for v in c]
        if any(isinstance(v, float) for v in ch):
            return None
        dense = [Fraction(0)] * (degree + 1)
        for p, v in zip(powers, ch):
            dense[p] = v
        bad = []
        for i, (x, lo, hi) in enumerate(trip):
            y = horner_h(h, dense, x)
            if isinstance(y, float) or not lo <= y <= hi:
                bad.append(i)
        if not bad:
            return PolynomialSpec(powers, tuple(c), tuple(ch))
        for i in bad:
            sample.add(i)
            tighten[i] = 2 * tighten[i] if tighten.get(i) else 1
    return None


def gen_piecewise(constraints: Sequence[ReducedConstraint], max_degree: int,
                  max_pieces: int, rule: IndexRule, h: FPFormat = DEFAULT_H,
                  structure: TermStructure | str = TermStructure.ALL,
                  sample_cap: int = DEFAULT_SAMPLE_CAP,
                  max_iters: int = DEFAULT_MAX_ITERS,
                  log: Optional[GenerationLog] = None) -> Optional[PiecewisePolynomial]:
    """Fewest pieces (1, 2, 4, ...) for which every piece fits within ``max_degree``.

    Each piece takes its own smallest working degree.  On failure ``log``
    names the piece that could not be fitted at the largest piece count.
    """
    if max_pieces < 1 or max_pieces & (max_pieces - 1):
        raise ValueError("max_pieces must be a power of two")
    structure = TermStructure(structure)
    degrees = [d for d in range(1, max_degree + 1) if powers_for(d, structure)
               and (d == max(powers_for(d, structure)))]
    log = log if log is not None else GenerationLog()
    bits = 0
    while (1 << bits) <= max_pieces:
        r = rule.with_bits(bits)
        buckets: list[list[ReducedConstraint]] = [[] for _ in range(r.count)]
        for c in constraints:
            buckets[r.index(c.xr, h)].append(c)
        pieces: list[PolynomialSpec] = []
        plogs: list[PieceLog] = []
        for i, bucket in enumerate(buckets):
            plog = PieceLog(i, len(bucket))
            if not bucket:
                plog.degree = 0
                pieces.append(PolynomialSpec.zero())
                plogs.append(plog)
                continue
            found = None
            for d in degrees:
                found = cegis_generate(bucket, powers_for(d, structure), h,
                                       sample_cap, max_iters, plog)
                if found is not None:
                    plog.degree, plog.terms = found.degree, found.terms
                    break
            if found is None:
                log.failed_piece = plog
                break
            pieces.append(found)
            plogs.append(plog)
        log.attempts.append((r.count, None if len(pieces) < r.count else
                             max(p.degree for p in pieces)))
        if len(pieces) == r.count:
            log.pieces = plogs
            log.failed_piece = None
            return PiecewisePolynomial(r, tuple(pieces))
        bits += 1
    return None
