import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oddlib.formats import FPFormat, from_value, value_of
from oddlib.rounding import (STANDARD_MODES, RoundingMode, components,
                             extended_or_from, extended_prefix,
                             round_from_components, round_value)

from conftest import F52, F72, brute_neighbours

RN, RA, RZ, RU, RD, RO = (RoundingMode.RN, RoundingMode.RA, RoundingMode.RZ,
                          RoundingMode.RU, RoundingMode.RD, RoundingMode.RO)


def test_component_examples():
    rc = components(F52, Fraction(9, 8))
    assert (rc.s, value_of(rc.v_minus), rc.rb, rc.sticky) == (1, 1, 1, 0)
    rc = components(F72, Fraction(4055, 10000))  # near ln 1.5
    assert (value_of(rc.v_minus), rc.rb, rc.sticky) == (Fraction(3, 8), 0, 1)
    rc = components(F52, Fraction(-3, 16))
    assert (rc.s, rc.v_minus.bits, rc.rb, rc.sticky) == (-1, 0, 1, 1)


def test_mode_examples():
    F42 = FPFormat(4, 2)
    v = Fraction(27, 10)
    assert value_of(round_value(F42, RD, v)) == 2
    assert value_of(round_value(F42, RU, v)) == 3
    assert value_of(round_value(F52, RZ, Fraction(5))) == Fraction(7, 2)
    assert value_of(round_value(F52, RO, Fraction(5))) == Fraction(7, 2)


def test_overflow_follows_the_unbounded_exponent_range():
    # max = 3.5, next binade step 0.5: 3.75 is a tie, 2**(emax+1) = 4 clamps
    assert round_value(F52, RN, Fraction(15, 4)) == F52.inf()
    assert round_value(F52, RA, Fraction(15, 4)) == F52.inf()
    assert round_value(F52, RN, Fraction(37, 10)) == F52.max_finite()
    assert round_value(F52, RN, Fraction(4)) == F52.inf()
    assert round_value(F52, RZ, Fraction(100)) == F52.max_finite()
    assert round_value(F52, RD, Fraction(-100)) == F52.inf(negative=True)
    assert round_value(F52, RU, Fraction(-100)) == F52.max_finite(negative=True)
    assert round_value(F52, RO, Fraction(100)) == F52.max_finite()
    rc = components(F52, Fraction(4))
    assert (rc.v_minus, rc.rb, rc.sticky) == (F52.max_finite(), 1, 1)


def test_markers():
    assert round_value(F52, RN, math.inf) == F52.inf()
    assert round_value(F52, RU, -0.0) == F52.zero(negative=True)
    assert round_value(F52, RN, math.nan) == F52.nan()


def _reference(fmt, mode, v):
    """Rounding by the textbook definition over an explicit value list."""
    lo, hi = brute_neighbours(fmt, abs(v))
    top = fmt.max_value
    if lo is not None and hi is None:
        # beyond the largest finite value: pretend the top binade continues
        step = top - brute_neighbours(fmt, top - Fraction(1, 1 << 40))[0]
        hi = top + step
        if abs(v) >= fmt.overflow_threshold:
            lo, hi = top, top + step
    neg = v < 0
    if lo == abs(v):
        pick = lo
    else:
        if mode is RZ or (mode is RD and not neg) or (mode is RU and neg):
            pick = lo
        elif mode in (RU, RD):
            pick = hi
        elif mode is RO:
            pick = lo if from_value(fmt, lo).bits & 1 else hi
        else:
            mid = (lo + hi) / 2
            if abs(v) != mid:
                pick = lo if abs(v) < mid else hi
            elif mode is RA:
                pick = hi
            else:
                pick = lo if not from_value(fmt, lo).bits & 1 else hi
    if pick > top:
        return fmt.inf(neg)
    b = from_value(fmt, pick)
    return b.with_sign(neg) if v else b


rationals = st.builds(lambda n, d, e: Fraction(n, d) * Fraction(2) ** e,
                      st.integers(-10 ** 6, 10 ** 6), st.integers(1, 10 ** 6),
                      st.integers(-12, 6))


@settings(max_examples=400)
@given(rationals, st.sampled_from([FPFormat(5, 2), FPFormat(7, 3), FPFormat(9, 3)]))
def test_all_modes_match_the_definition(v, fmt):
    for mode in list(STANDARD_MODES) + [RO]:
        assert round_value(fmt, mode, v) == _reference(fmt, mode, v), (v, mode)


@settings(max_examples=300)
@given(rationals)
def test_components_decide_rounding(v):
    rc = components(F72, v)
    for mode in list(STANDARD_MODES) + [RO]:
        assert round_from_components(F72, mode, rc) == round_value(F72, mode, v)


def test_prefix_and_sticky_helpers():
    v = Fraction(9, 8)
    # F(inf,2): 1.001; the first 5 bits are 0 01 00, the rest hold a 1
    assert extended_prefix(v, 2, 5) == 0b00100
    assert extended_or_from(v, 2, 6) == 1
    assert extended_or_from(v, 2, 7) == 0
    assert extended_prefix(-v, 2, 5) == 0b10100


@settings(max_examples=300)
@given(rationals)
def test_directed_modes_bracket_nearest(v):
    fmt = FPFormat(7, 3)
    d, n, u = (value_of(round_value(fmt, m, v)) for m in (RD, RN, RU))
    assert d <= n <= u


def test_tie_examples():
    rc = components(F52, Fraction(9, 8))
    assert value_of(round_from_components(F52, RN, rc)) == 1
    assert value_of(round_from_components(F52, RA, rc)) == Fraction(5, 4)


def test_signed_zero_results():
    tiny = Fraction(1, 64)
    assert round_value(F52, RD, tiny) == F52.zero()
    assert round_value(F52, RU, -tiny) == F52.zero(negative=True)
