"""End-to-end generation of a function for T_n from its round-to-odd results."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .formats import FPBits, FPFormat, enumerate_finite, value_of
from .funcgen import Clamp, GeneratedFunction, special_class, special_table
from .hfloat import DEFAULT_H
from .intervals import calc_odd_intervals, merge_reduced, reduce_constraints
from .oracle import Func, rno_result
from .polygen import (DEFAULT_MAX_ITERS, DEFAULT_SAMPLE_CAP, GenerationLog,
                      IndexRule, TermStructure, gen_piecewise)
from .reduction import ReductionKind, default_reduction, reduction_for

__all__ = ["GenerationConfig", "GenerationResult", "GenerationFailed",
           "generate", "oracle_results", "regular_inputs"]


class GenerationFailed(RuntimeError):
    def __init__(self, message: str, log: Optional[GenerationLog] = None):
        super().__init__(message)
        self.log = log


@dataclass(frozen=True)
class GenerationConfig:
    func: Func
    n: int
    exponent_bits: int
    h: FPFormat = DEFAULT_H
    reduction: Optional[ReductionKind] = None
    max_degree: int = 8
    max_pieces: int = 64
    sample_cap: int = DEFAULT_SAMPLE_CAP
    max_iters: int = DEFAULT_MAX_ITERS
    guard: Optional[int] = None
    structure: TermStructure = TermStructure.ALL
    jobs: int = 1

    @property
    def tn(self) -> FPFormat:
        return FPFormat(self.n, self.exponent_bits)

    @property
    def tn2(self) -> FPFormat:
        return FPFormat(self.n + 2, self.exponent_bits)


@dataclass
class GenerationResult:
    function: GeneratedFunction
    log: GenerationLog
    constraints: int = 0
    reduced_constraints: int = 0
    stats: dict = field(default_factory=dict)


def regular_inputs(f: Func, tn: FPFormat) -> list[FPBits]:
    """Finite inputs of ``tn`` not answered by the special table, ascending."""
    table = special_table(f)
    return [x for x in enumerate_finite(tn) if special_class(x) not in table]


def _rno_chunk(args):
    f, tn2, xs = args
    return [rno_result(f, tn2, x) for x in xs]


def oracle_results(f: Func, tn: FPFormat, tn2: FPFormat, jobs: int = 1
                   ) -> list[tuple[FPBits, FPBits]]:
    xs = regular_inputs(f, tn)
    if jobs <= 1 or len(xs) < 256:
        ys = [rno_result(f, tn2, x) for x in xs]
    else:
        step = -(-len(xs) // (4 * jobs))
        chunks = [(f, tn2, xs[i:i + step]) for i in range(0, len(xs), step)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            ys = [y for part in ex.map(_rno_chunk, chunks) for y in part]
    return list(zip(xs, ys))


def _saturating(y: FPBits) -> bool:
    return y.is_finite and y.magnitude in (1, y.format.max_magnitude)


def find_clamps(results: Sequence[tuple[FPBits, FPBits]]) -> tuple[list[Clamp], int, int]:
    """Clamp rules for saturated runs at either end of the sorted results.

    Returns the clamps plus the number of leading and trailing results they
    absorb.
    """
    clamps = []
    lead = trail = 0
    if not results:
        return clamps, 0, 0
    y0 = results[0][1]
    if _saturating(y0):
        while lead < len(results) and results[lead][1] == y0:
            lead += 1
        clamps.append(Clamp("below", results[lead - 1][0], y0))
    y1 = results[-1][1]
    if _saturating(y1) and lead < len(results):
        while trail < len(results) - lead and results[-1 - trail][1] == y1:
            trail += 1
        clamps.append(Clamp("above", results[-trail][0], y1))
    return clamps, lead, trail


def generate(cfg: GenerationConfig) -> GenerationResult:
    f = Func(cfg.func)
    tn, tn2, h = cfg.tn, cfg.tn2, cfg.h
    if cfg.reduction is None:
        rr = default_reduction(f, h)
        if cfg.guard is not None:
            rr = reduction_for(f, rr.kind, h, cfg.guard)
    else:
        rr = reduction_for(f, cfg.reduction, h, cfg.guard)
    results = oracle_results(f, tn, tn2, cfg.jobs)
    clamps, lead, trail = find_clamps(results)
    body = results[lead:len(results) - trail]
    constraints, singles = calc_odd_intervals(body, h)
    reduced = merge_reduced(reduce_constraints(constraints, rr))
    if rr.domain is not None:
        rule = IndexRule("linear", *rr.domain)
    elif reduced and reduced[0].xr < 0 < reduced[-1].xr:
        # H has so many patterns near zero that an ordinal split across a
        # sign change would crowd every input into the two outer pieces
        rule = IndexRule("linear", reduced[0].xr, reduced[-1].xr)
    elif reduced:
        rule = IndexRule("ordinal", reduced[0].xr, reduced[-1].xr)
    else:
        rule = IndexRule("ordinal", Fraction(0), Fraction(0))
    log = GenerationLog()
    poly = gen_piecewise(reduced, cfg.max_degree, cfg.max_pieces, rule, h,
                         cfg.structure, cfg.sample_cap, cfg.max_iters, log)
    if poly is None:
        bad = log.failed_piece
        where = f"piece {bad.index} ({bad.constraints} constraints)" if bad else "unknown piece"
        raise GenerationFailed(
            f"no polynomial of degree <= {cfg.max_degree} with <= {cfg.max_pieces} pieces; "
            f"most constrained: {where}", log)
    g = GeneratedFunction(
        f, tn, tn2, h, rr, poly,
        singletons={value_of(s.x): s.y for s in singles},
        clamps=tuple(clamps),
        specials=special_table(f),
    )
    return GenerationResult(g, log, len(constraints), len(reduced),
                            {"inputs": len(results), "singletons": len(singles),
                             "clamped": lead + trail})
