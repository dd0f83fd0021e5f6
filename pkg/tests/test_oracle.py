import math
import random
from fractions import Fraction
from functools import lru_cache

import mpmath
import pytest

from oddlib import oracle
from oddlib.formats import FPFormat, enumerate_finite, from_value, is_representable, value_of
from oddlib.oracle import (Func, PrecisionExhausted, correctly_rounded,
                           eval_enclosure, exact_result, in_domain, rno_result,
                           singleton_census, special_result)
from oddlib.rounding import RoundingMode, round_value

from conftest import F52, F72

RO = RoundingMode.RO

_MP = {
    Func.LN: mpmath.log,
    Func.LOG2: lambda x: mpmath.log(x, 2),
    Func.LOG10: mpmath.log10,
    Func.EXP: mpmath.exp,
    Func.EXP2: lambda x: mpmath.power(2, x),
    Func.EXP10: lambda x: mpmath.power(10, x),
    Func.SINH: mpmath.sinh,
    Func.COSH: mpmath.cosh,
    Func.SINPI: mpmath.sinpi,
    Func.COSPI: mpmath.cospi,
}


def mp_value(f, x, prec=256):
    """f(x) from mpmath at ``prec`` bits, as an exact Fraction."""
    with mpmath.workprec(prec):
        y = _MP[f](mpmath.mpf(x.numerator) / x.denominator)
        sign, man, exp, _ = mpmath.mpf(y)._mpf_
    man = -int(man) if sign else int(man)
    return Fraction(man * 2 ** exp) if exp >= 0 else Fraction(man, 2 ** -exp)


def test_enclosure_examples():
    e = eval_enclosure(Func.EXP, Fraction(0), 40)
    assert e.lo == e.hi == 1
    e = eval_enclosure(Func.SINPI, Fraction(1, 2), 40)
    assert e.lo == e.hi == 1
    e = eval_enclosure(Func.LN, Fraction(3, 2), 64)
    assert e.width <= Fraction(1, 2 ** 60)
    assert mp_value(Func.LN, Fraction(3, 2), 300) in e


def test_domain_violation():
    with pytest.raises(ValueError):
        eval_enclosure(Func.LN, Fraction(-1), 40)
    with pytest.raises(ValueError):
        eval_enclosure(Func.LOG2, Fraction(0), 40)


@pytest.mark.parametrize("f", list(Func))
def test_enclosures_are_sound_tight_and_nested(f):
    rng = random.Random(hash(f.value) & 0xffff)
    for _ in range(25):
        x = Fraction(rng.randint(1, 1 << 16), 1 << rng.randint(0, 16))
        if not f.is_log and rng.random() < 0.5:
            x = -x
        if exact_result(f, x) is not None:
            continue
        truth = mp_value(f, x, 600)
        for p in (48, 120):
            e = eval_enclosure(f, x, p)
            assert truth in e
            assert e.width <= Fraction(4, 2 ** p) * abs(truth)
            inner = eval_enclosure(f, x, p + 32)
            assert e.lo <= inner.lo and inner.hi <= e.hi


def test_exact_result_examples():
    assert exact_result(Func.LN, Fraction(1)) == 0
    assert exact_result(Func.EXP2, Fraction(-3)) == Fraction(1, 8)
    assert exact_result(Func.COSPI, Fraction(7, 2)) == 0
    assert exact_result(Func.SINPI, Fraction(3, 2)) == -1
    assert exact_result(Func.SINPI, Fraction(-7, 2)) == 1
    assert exact_result(Func.COSPI, Fraction(3)) == -1
    assert exact_result(Func.LOG10, Fraction(1, 1000)) == -3
    assert exact_result(Func.LOG2, Fraction(3)) is None
    assert exact_result(Func.EXP, Fraction(1)) is None
    assert exact_result(Func.EXP10, Fraction(1, 2)) is None


def test_rno_examples():
    x = from_value(F52, Fraction(3, 2))
    assert value_of(rno_result(Func.LN, F72, x)) == Fraction(7, 16)
    assert rno_result(Func.LN, F72, from_value(F52, Fraction(1))) == F72.zero()
    assert value_of(rno_result(Func.EXP2, F72, x)) == Fraction(23, 8)


def test_special_values():
    assert math.isnan(special_result(Func.LN, math.nan))
    assert special_result(Func.LN, Fraction(0)) == -math.inf
    assert math.isnan(special_result(Func.LOG10, Fraction(-2)))
    assert special_result(Func.EXP, -math.inf) == 0
    assert special_result(Func.SINH, -math.inf) == -math.inf
    assert special_result(Func.COSH, -math.inf) == math.inf
    assert math.isnan(special_result(Func.SINPI, math.inf))
    z = special_result(Func.SINPI, Fraction(0), negative_zero=True)
    assert z == 0 and math.copysign(1.0, z) < 0
    assert special_result(Func.EXP, Fraction(0)) is None


def test_precision_exhaustion_is_an_error(monkeypatch):
    # an enclosure that always straddles a rounding boundary
    def stuck(f, x, p):
        eps = Fraction(1, 2 ** p)
        return oracle.Enclosure(Fraction(1, 2) - eps, Fraction(1, 2) + eps)
    monkeypatch.setattr(oracle, "eval_enclosure", stuck)
    with pytest.raises(PrecisionExhausted):
        correctly_rounded(Func.LN, Fraction(3, 2), F72, RO, p_max=256)


def _small_formats():
    return [FPFormat(n, e) for e in range(2, 7) for n in range(e + 2, 10)]


@lru_cache(maxsize=None)
def _rno_table(f, tn):
    tn2 = FPFormat(tn.total_bits + 2, tn.exponent_bits)
    return {x: rno_result(f, tn2, x) for x in enumerate_finite(tn)
            if in_domain(f, value_of(x))}


def _off_scale(f, x, tn2, y):
    """An off-scale result is past the overflow threshold or under a quarter denormal."""
    with mpmath.workprec(64):
        t = _MP[f](mpmath.mpf(x.numerator) / x.denominator)
        top = mpmath.mpf(tn2.overflow_threshold.numerator) / tn2.overflow_threshold.denominator
        low = mpmath.mpf(tn2.min_denormal.numerator) / tn2.min_denormal.denominator / 4
        if abs(t) >= top:
            return y == round_value(tn2, RO, tn2.overflow_threshold * (-1 if t < 0 else 1))
        return 0 < t < low and y == round_value(tn2, RO, tn2.min_denormal / 8)


@pytest.mark.parametrize("f", list(Func))
def test_oracle_matches_a_256_bit_midpoint(f):
    bad = []
    for tn in _small_formats():
        tn2 = FPFormat(tn.total_bits + 2, tn.exponent_bits)
        for x, y in _rno_table(f, tn).items():
            v = value_of(x)
            if oracle._saturated(f, v, tn2) is not None:
                if not _off_scale(f, v, tn2, y):
                    bad.append((str(tn), v))
                continue
            if exact_result(f, v) is not None:
                continue
            if round_value(tn2, RO, mp_value(f, v)) != y:
                bad.append((str(tn), v))
    assert bad == []


@pytest.mark.parametrize("f", list(Func))
def test_census_is_complete_on_small_formats(f):
    for tn in _small_formats():
        tn2 = FPFormat(tn.total_bits + 2, tn.exponent_bits)
        even = {value_of(x) for x, y in _rno_table(f, tn).items() if not y.bits & 1}
        census = {value_of(x) for x, y in singleton_census(f, tn, tn2)
                  if not from_value(tn2, y).bits & 1}
        assert even == census, (f, tn)


T32, T34 = FPFormat(32, 8), FPFormat(34, 8)


def _brute_count(f, candidates):
    """Candidates whose result, computed with plain integer arithmetic, fits T_{n+2}."""
    n = 0
    for x, y in candidates:
        if is_representable(T32, x) and y <= T34.max_value and is_representable(T34, y):
            n += 1
    return n


def test_full_size_census():
    exp2 = singleton_census(Func.EXP2, T32, T34)
    assert len(exp2) == 279
    assert [value_of(x) for x, _ in exp2] == list(range(-151, 128))
    exp10 = singleton_census(Func.EXP10, T32, T34)
    assert [value_of(x) for x, _ in exp10] == list(range(0, 12))
    log10 = singleton_census(Func.LOG10, T32, T34)
    assert len(log10) == 11
    # brute force over generous integer ranges
    two = [(Fraction(k), Fraction(2) ** k) for k in range(-400, 400)]
    ten = [(Fraction(k), Fraction(10) ** k) for k in range(-60, 60)]
    tens = [(Fraction(10) ** k, Fraction(k)) for k in range(-60, 60)]
    assert _brute_count(Func.EXP2, two) == 279
    assert _brute_count(Func.EXP10, ten) == 12
    assert _brute_count(Func.LOG10, tens) == 11
