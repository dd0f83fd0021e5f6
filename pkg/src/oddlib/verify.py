"""Exhaustive checks of generated functions and of the rounding facts they rest on."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .formats import (FPBits, FPFormat, enumerate_finite, from_value, is_representable,
                      pred, succ, value_marker, value_of)
from .funcgen import GeneratedFunction, embed, result_value
from .oracle import decide_components, special_for_bits, start_precision
from .rounding import (STANDARD_MODES, RoundingMode, components,
                       extended_or_from, extended_prefix, round_from_components,
                       round_value)

__all__ = [
    "Cell",
    "VerificationReport",
    "check_all",
    "component_representatives",
    "OddCompositionResult",
    "check_odd_composition",
    "check_theorem2",
    "find_naive_double_rounding_bug",
    "LemmaReport",
    "lemma_formats",
    "check_lemmas",
]


@dataclass
class Cell:
    k: int
    mode: RoundingMode
    checked: int = 0
    fail_count: int = 0
    first_counterexample: Optional[dict] = None
    exhaustive: bool = True

    @property
    def passed(self) -> bool:
        return self.fail_count == 0 and self.checked > 0


@dataclass
class VerificationReport:
    function: str
    tn: FPFormat
    tn2: FPFormat
    cells: dict[tuple[int, str], Cell] = field(default_factory=dict)
    lemmas: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells.values())

    def failures(self) -> list[Cell]:
        return [c for c in self.cells.values() if not c.passed]

    def to_text(self) -> str:
        ks = sorted({k for k, _ in self.cells})
        modes = [m for m in (str(m) for m in STANDARD_MODES)
                 if any((k, m) in self.cells for k in ks)]
        head = f"{self.function}  T_n={self.tn}  T_n+2={self.tn2}"
        rows = [head, "k   " + "".join(f"{m:>4}" for m in modes)]
        for k in ks:
            marks = []
            for m in modes:
                c = self.cells.get((k, m))
                marks.append("-" if c is None else ("✓" if c.passed else "✗"))
            rows.append(f"{k:<4}" + "".join(f"{mk:>4}" for mk in marks))
        sampled = sorted({c.k for c in self.cells.values() if not c.exhaustive})
        if sampled:
            rows.append("sampled, not exhaustive: k=" + ",".join(map(str, sampled)))
        for c in self.failures():
            rows.append(f"k={c.k} {c.mode}: {c.fail_count} mismatches, e.g. {c.first_counterexample}")
        return "\n".join(rows)

    def to_json(self) -> str:
        return json.dumps({
            "function": self.function,
            "tn": str(self.tn),
            "tn2": str(self.tn2),
            "passed": self.passed,
            "cells": [
                {"k": c.k, "mode": str(c.mode), "checked": c.checked,
                 "exhaustive": c.exhaustive, "fail_count": c.fail_count,
                 "first_counterexample": c.first_counterexample}
                for c in sorted(self.cells.values(), key=lambda c: (c.k, str(c.mode)))
            ],
            "lemmas": self.lemmas,
        }, indent=2, sort_keys=True)


# widest target checked on every pattern; wider ones are sampled
EXHAUSTIVE_BITS = 16
SAMPLE_SIZE = 1 << 16


def _patterns(g: GeneratedFunction, tk: FPFormat, exhaustive_bits: int) -> tuple[list[int], bool]:
    """Bit patterns of T_k to check and whether that is all of them.

    Past ``exhaustive_bits`` this is a stride sample over all patterns plus
    every input of the singleton and clamp tables representable in T_k and
    its two neighbours.
    """
    total = 1 << tk.total_bits
    if tk.total_bits <= exhaustive_bits:
        return list(range(total)), True
    picked = set(range(0, total, max(1, total // SAMPLE_SIZE)))
    picked.update((tk.inf(False).bits, tk.inf(True).bits, tk.nan().bits, tk.sign_mask))
    anchors = list(g.singletons) + [value_of(c.x) for c in g.clamps]
    for v in anchors:
        if is_representable(tk, v) and abs(v) <= tk.max_value:
            b = from_value(tk, v)
            picked.update(n.bits for n in (b, succ(b), pred(b)))
    return sorted(picked), False


def check_all(g: GeneratedFunction, targets: Optional[Iterable[int]] = None,
              modes: Optional[Iterable[RoundingMode]] = None,
              exhaustive_bits: int = EXHAUSTIVE_BITS) -> VerificationReport:
    """Compare ``evaluate`` with the oracle on every bit pattern of every T_k.

    Targets wider than ``exhaustive_bits`` are sampled instead; their cells
    say so in ``exhaustive``.
    """
    ks = sorted(targets) if targets is not None else list(g.targets())
    mode_list = [RoundingMode(m) for m in modes] if modes is not None else list(STANDARD_MODES)
    for k in ks:
        if k not in g.targets():
            raise ValueError(f"k={k} is outside {g.targets()}")
    report = VerificationReport(str(g.func), g.tn, g.tn2)
    p0 = start_precision(g.tn2)
    produced: dict[int, object] = {}
    for k in ks:
        tk = FPFormat(k, g.tn.exponent_bits)
        patterns, exhaustive = _patterns(g, tk, exhaustive_bits)
        for m in mode_list:
            report.cells[(k, str(m))] = Cell(k, m, exhaustive=exhaustive)
        for pattern in patterns:
            x = FPBits(tk, pattern)
            xn = embed(x, g.tn)
            if xn.bits not in produced:
                produced[xn.bits] = result_value(g, xn)
            got_value = produced[xn.bits]
            special = special_for_bits(g.func, x)
            rc = None
            if special is None:
                rc = decide_components(g.func, value_of(x), tk, p0)
            for m in mode_list:
                cell = report.cells[(k, str(m))]
                cell.checked += 1
                got = round_value(tk, m, got_value)
                want = (round_value(tk, m, special) if rc is None
                        else round_from_components(tk, m, rc))
                if got != want:
                    cell.fail_count += 1
                    if cell.first_counterexample is None:
                        cell.first_counterexample = {
                            "x": x.hex(), "x_value": str(value_of(x)),
                            "got": got.hex(), "expected": want.hex()}
    return report


def component_representatives(fmt: FPFormat, signed: bool = True) -> list[Fraction]:
    """One value per realizable rounding-component class of ``fmt``.

    For each finite w >= 0 with gap to the next value: w, w + gap/4,
    w + gap/2 and w + 3gap/4; then a few values at and beyond 2**(emax+1).
    """
    reps: list[Fraction] = []
    finite = enumerate_finite(fmt, lambda b: not b.negative)
    values = [value_of(b) for b in finite]
    top = fmt.overflow_threshold
    for i, w in enumerate(values):
        nxt = values[i + 1] if i + 1 < len(values) else top
        gap = nxt - w
        reps.extend((w, w + gap / 4, w + gap / 2, w + 3 * gap / 4))
    reps.extend((top, top + top / 8, 3 * top, 4 * top))
    if signed:
        reps.extend([-v for v in reps if v])
    return reps


@dataclass
class OddCompositionResult:
    tn2: FPFormat
    ks: list[int]
    representatives: int
    distinct_classes: int
    expected_classes: int
    violations: list[tuple[Fraction, int, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations and self.distinct_classes == self.expected_classes


def check_odd_composition(tn2: FPFormat, ks: Iterable[int]) -> OddCompositionResult:
    """Round to odd in ``tn2`` and then to T_k equals rounding to T_k directly.

    Checked on every component class of ``tn2``, including values beyond
    its largest finite number, for all five standard modes.
    """
    ks = sorted(ks)
    E = tn2.exponent_bits
    for k in ks:
        if not E + 1 < k <= tn2.total_bits - 2:
            raise ValueError(f"k={k} is not a valid target for {tn2}")
    reps = component_representatives(tn2)
    classes = set()
    result = OddCompositionResult(tn2, ks, len(reps), 0,
                            4 * len(enumerate_finite(tn2, lambda b: not b.negative)))
    tks = [FPFormat(k, E) for k in ks]
    for v in reps:
        rc = components(tn2, v)
        if rc.s > 0:
            classes.add((rc.v_minus.bits, rc.rb, rc.sticky))
        ro = value_of(round_from_components(tn2, RoundingMode.RO, rc))
        for tk in tks:
            direct = components(tk, v)
            twice = components(tk, ro)
            for m in STANDARD_MODES:
                if round_from_components(tk, m, direct) != round_from_components(tk, m, twice):
                    result.violations.append((v, tk.total_bits, str(m)))
    result.distinct_classes = len(classes)
    return result


check_theorem2 = check_odd_composition


def find_naive_double_rounding_bug(mid: FPFormat, target: FPFormat,
                                   mode: RoundingMode | str) -> Optional[Fraction]:
    """A value whose same-mode double rounding through ``mid`` differs from direct rounding.

    Every component class of ``mid`` is tried; since ``mid`` is finer than
    ``target`` these classes decide both roundings, so None means no
    witness exists at all.
    """
    mode = RoundingMode(mode)
    if mid.exponent_bits != target.exponent_bits or mid.total_bits <= target.total_bits:
        raise ValueError("mid must be strictly more precise than target with the same exponent width")
    for v in component_representatives(mid):
        once = round_value(target, mode, v)
        # overflow in mid gives an infinity marker and -0 keeps its sign
        twice = round_value(target, mode, value_marker(round_value(mid, mode, v)))
        if once != twice:
            return v
    return None


@dataclass
class LemmaReport:
    checked: dict[str, int] = field(default_factory=dict)
    violations: dict[str, list] = field(default_factory=dict)

    def record(self, name: str, ok: bool, witness=None):
        self.checked[name] = self.checked.get(name, 0) + 1
        self.violations.setdefault(name, [])
        if not ok and len(self.violations[name]) < 10:
            self.violations[name].append(witness)
        if not ok:
            self.checked[name + ".failed"] = self.checked.get(name + ".failed", 0) + 1

    def failures(self, name: str) -> int:
        return self.checked.get(name + ".failed", 0)

    @property
    def passed(self) -> bool:
        return all(not k.endswith(".failed") for k in self.checked)


def lemma_formats(max_bits: int = 10) -> list[FPFormat]:
    """Formats F(m, E) with m <= max_bits whose m-1 prefix is itself a format."""
    return [FPFormat(m, E) for E in range(2, max_bits) for m in range(E + 3, max_bits + 1)]


def _random_value(rng: random.Random, fmt: FPFormat) -> Fraction:
    e = rng.randint(fmt.denormal_exponent - 3, fmt.emax + 3)
    if rng.random() < 0.5:
        bits = rng.randint(1, 48)
        mant = Fraction(rng.getrandbits(bits) | (1 << bits), 1 << bits)
    else:
        mant = 1 + Fraction(rng.randint(0, 10 ** 6), rng.randint(1, 10 ** 6))
    v = mant * (Fraction(2) ** e)
    return -v if rng.random() < 0.5 else v


def _boundary_values(fmt: FPFormat) -> list[Fraction]:
    """Every exact value and every midpoint of ``fmt``, both signs."""
    return component_representatives(fmt)


def _class_partner(rng: random.Random, fmt: FPFormat, v: Fraction) -> Fraction:
    """Uniform draw from the component class of ``v``."""
    rc = components(fmt, v)
    if rc.exact:
        return v
    lo = value_of(rc.v_minus)
    mbits = fmt.mantissa_bits
    e_field = rc.v_minus.magnitude >> mbits
    e = max(e_field, 1) - fmt.bias - mbits
    gap = Fraction(2) ** e
    if rc.v_minus.magnitude == fmt.max_magnitude and rc.rb and rc.sticky:
        a, b = lo + gap / 2, 4 * fmt.overflow_threshold
    elif rc.rb and not rc.sticky:
        return v
    elif rc.rb:
        a, b = lo + gap / 2, lo + gap
    else:
        a, b = lo, lo + gap / 2
    t = Fraction(rng.randint(1, (1 << 30) - 1), 1 << 30)
    w = a + (b - a) * t
    return w if rc.s > 0 else -w


def check_lemmas(formats: Optional[Sequence[FPFormat]] = None, samples: int = 10 ** 5,
                 pairs: int = 10 ** 4, seed: int = 0,
                 include_boundaries: bool = True) -> LemmaReport:
    """Sign, prefix, sticky-bit and component-equality properties of round to odd."""
    formats = lemma_formats() if formats is None else list(formats)
    rng = random.Random(seed)
    report = LemmaReport()
    ro = RoundingMode.RO
    for fmt in formats:
        E, m = fmt.exponent_bits, fmt.total_bits
        values = [_random_value(rng, fmt) for _ in range(samples)]
        if include_boundaries:
            values.extend(_boundary_values(fmt))
        for v in values:
            y = round_value(fmt, ro, v)
            if v:
                report.record("sign", y.negative == (v < 0), (str(fmt), v))
            report.record("prefix", (y.bits >> 1) == extended_prefix(v, E, m - 1), (str(fmt), v))
            report.record("sticky", (y.bits & 1) == extended_or_from(v, E, m), (str(fmt), v))
    modes = list(STANDARD_MODES) + [ro]
    for _ in range(pairs):
        fmt = rng.choice(formats)
        v1 = _random_value(rng, fmt)
        v2 = _class_partner(rng, fmt, v1)
        same = components(fmt, v1) == components(fmt, v2)
        ok = same and all(round_value(fmt, md, v1) == round_value(fmt, md, v2) for md in modes)
        report.record("classes", ok, (str(fmt), v1, v2))
    return report
