"""Line-oriented text form of a generated function.

::

    oddlib-artifact 1
    func ln
    tn 5 2
    tn2 7 2
    h 64 11
    reduction identity 1/1 0
    index ordinal <lo H-hex> <hi H-hex> <bits>
    piece <i> <powers,comma,separated>
    coeff <i> <power> <num/den> <H-hex>
    singleton <x hex> <y hex>
    clamp above|below <x hex> <y hex>
    special <class> nan|inf|-inf|0|-0
    end

H values are stored as bit patterns so a round trip is bit exact; the
rational next to each coefficient is the exact LP solution it came from.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from .formats import FPBits, FPFormat, from_value, value_of
from .funcgen import Clamp, GeneratedFunction
from .oracle import Func
from .polygen import IndexRule, PiecewisePolynomial, PolynomialSpec
from .reduction import RangeReduction

__all__ = ["HEADER", "dumps", "loads", "write", "read", "ArtifactError"]

HEADER = "oddlib-artifact 1"


class ArtifactError(ValueError):
    pass


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _marker(v) -> str:
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "-inf" if v < 0 else "inf"
        return "-0" if math.copysign(1.0, v) < 0 else "0"
    return _frac(Fraction(v))


def _parse_marker(s: str):
    table = {"nan": math.nan, "inf": math.inf, "-inf": -math.inf, "0": 0.0, "-0": -0.0}
    if s in table:
        return table[s]
    return Fraction(s)


def dumps(g: GeneratedFunction) -> str:
    h = g.h
    lines = [
        HEADER,
        f"func {g.func}",
        f"tn {g.tn.total_bits} {g.tn.exponent_bits}",
        f"tn2 {g.tn2.total_bits} {g.tn2.exponent_bits}",
        f"h {h.total_bits} {h.exponent_bits}",
        f"reduction {g.rr.kind} {_frac(g.rr.K)} {g.rr.guard}",
    ]
    r = g.poly.index_rule
    lines.append(f"index {r.kind} {from_value(h, r.lo).hex()} {from_value(h, r.hi).hex()} {r.bits}")
    for i, p in enumerate(g.poly.pieces):
        lines.append(f"piece {i} {','.join(map(str, p.powers))}")
        for pw, ce, ch in zip(p.powers, p.coeffs_exact, p.coeffs_h):
            lines.append(f"coeff {i} {pw} {_frac(Fraction(ce))} {from_value(h, ch).hex()}")
    for x in sorted(g.singletons):
        lines.append(f"singleton {from_value(g.tn, x).hex()} {g.singletons[x].hex()}")
    for c in g.clamps:
        lines.append(f"clamp {c.side} {c.x.hex()} {c.y.hex()}")
    for cls in sorted(g.specials):
        lines.append(f"special {cls} {_marker(g.specials[cls])}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def loads(text: str) -> GeneratedFunction:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != HEADER:
        raise ArtifactError(f"missing header {HEADER!r}")
    fields: dict[str, list[str]] = {}
    pieces: dict[int, list] = {}
    singletons = {}
    clamps = []
    specials = {}
    index = None
    fmts = {}
    for ln in lines[1:]:
        key, *rest = ln.split()
        if key == "end":
            break
        if key in ("tn", "tn2", "h"):
            fmts[key] = FPFormat(int(rest[0]), int(rest[1]))
        elif key in ("func", "reduction"):
            fields[key] = rest
        elif key == "index":
            index = rest
        elif key == "piece":
            pieces[int(rest[0])] = [tuple(int(p) for p in rest[1].split(",")), {}]
        elif key == "coeff":
            i, pw = int(rest[0]), int(rest[1])
            pieces[i][1][pw] = (Fraction(rest[2]), rest[3])
        elif key == "singleton":
            singletons[rest[0]] = rest[1]
        elif key == "clamp":
            clamps.append(tuple(rest))
        elif key == "special":
            specials[rest[0]] = _parse_marker(rest[1])
        else:
            raise ArtifactError(f"unknown line {ln!r}")
    try:
        tn, tn2, h = fmts["tn"], fmts["tn2"], fmts["h"]
        func = Func(fields["func"][0])
        kind, K, guard = fields["reduction"]
    except KeyError as e:
        raise ArtifactError(f"missing field {e}") from None
    rr = RangeReduction(kind, Fraction(K), h, int(guard))
    if index is None:
        raise ArtifactError("missing index rule")
    rule = IndexRule(index[0], value_of(FPBits.from_hex(h, index[1])),
                     value_of(FPBits.from_hex(h, index[2])), int(index[3]))
    specs = []
    for i in range(len(pieces)):
        powers, coeffs = pieces[i]
        ce = tuple(coeffs[p][0] for p in powers)
        ch = tuple(value_of(FPBits.from_hex(h, coeffs[p][1])) for p in powers)
        specs.append(PolynomialSpec(powers, ce, ch))
    poly = PiecewisePolynomial(rule, tuple(specs))
    sing = {value_of(FPBits.from_hex(tn, x)): FPBits.from_hex(tn2, y)
            for x, y in singletons.items()}
    cl = tuple(Clamp(side, FPBits.from_hex(tn, x), FPBits.from_hex(tn2, y))
               for side, x, y in clamps)
    return GeneratedFunction(func, tn, tn2, h, rr, poly, sing, cl, specials)


def write(g: GeneratedFunction, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(g))


def read(path) -> GeneratedFunction:
    with open(path) as fh:
        return loads(fh.read())
