import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oddlib.formats import (DENORMAL, INFINITY, NAN, NORMAL, ZERO, FPBits,
                            FPFormat, classify, enumerate_finite, from_value,
                            is_odd, is_representable, pred, succ, value_marker,
                            value_of)

from conftest import F52, F72


def test_layout_of_f52():
    assert (F52.mantissa_bits, F52.bias, F52.emax, F52.emin) == (2, 1, 1, 0)
    assert F52.denormal_exponent == -2
    assert F52.max_value == Fraction(7, 2)
    assert F52.min_denormal == Fraction(1, 4)
    assert F52.overflow_threshold == 4


def test_decoding_examples():
    assert value_of(FPBits(F52, 0b01001)) == Fraction(5, 2)
    assert value_of(FPBits(F52, 0b00001)) == Fraction(1, 4)
    assert value_of(FPBits(F52, 0b01010)) == 3
    assert value_of(FPBits(F52, 0b10000)) == 0
    assert value_of(FPBits(F52, 0b01100)) == math.inf
    assert value_of(FPBits(F52, 0b11100)) == -math.inf
    assert math.isnan(value_of(FPBits(F52, 0b01101)))


def test_f52_has_24_finite_patterns():
    # 32 patterns less 2 infinities and 6 NaNs; both zeros included
    finite = [b for b in map(F52.bits, F52.patterns()) if b.is_finite]
    assert len(finite) == 24
    positive = sorted(value_of(b) for b in finite if not b.negative and not b.is_zero)
    assert len(positive) == 11
    assert positive[0] == Fraction(1, 4) and positive[-1] == Fraction(7, 2)


def test_classes():
    assert classify(FPBits(F52, 0)) == ZERO
    assert classify(FPBits(F52, 0b00011)) == DENORMAL
    assert classify(FPBits(F52, 0b00100)) == NORMAL
    assert classify(F52.inf()) == INFINITY
    assert classify(F52.nan()) == NAN


def test_succ_pred_around_zero_and_infinity():
    assert succ(F52.zero()) == FPBits(F52, 1)
    assert succ(F52.zero(negative=True)) == FPBits(F52, 1)
    assert pred(F52.zero()) == FPBits(F52, F52.sign_mask | 1)
    assert succ(F52.max_finite()) == F52.inf()
    assert pred(F52.inf(negative=True).__neg__()) == F52.max_finite()
    assert succ(F52.inf(negative=True)) == F52.max_finite(negative=True)
    with pytest.raises(ValueError):
        succ(F52.inf())
    with pytest.raises(ValueError):
        pred(F52.inf(negative=True))
    with pytest.raises(ValueError):
        succ(F52.nan())


def test_pred_example():
    x = from_value(F72, Fraction(7, 16))
    assert value_of(pred(x)) == Fraction(3, 8)


@pytest.mark.parametrize("fmt", [FPFormat(5, 2), FPFormat(7, 3), FPFormat(8, 4)])
def test_succ_walks_every_value_in_order(fmt):
    vals = [value_of(b) for b in enumerate_finite(fmt)]
    assert vals == sorted(vals) and len(set(vals)) == len(vals)
    b = fmt.max_finite(negative=True)
    walked = [value_of(b)]
    while b != fmt.max_finite():
        b = succ(b)
        walked.append(value_of(b))  # -0 stands in for zero; succ(-0) skips +0
    assert walked == vals


def test_ordinal_is_monotone():
    fmt = FPFormat(7, 3)
    bs = enumerate_finite(fmt)
    assert [b.ordinal() for b in bs] == sorted(b.ordinal() for b in bs)


def test_odd_and_text():
    b = from_value(F72, Fraction(7, 16))
    assert is_odd(b)
    assert b.binary() == "0 00 0111"
    assert b.hex() == "07"
    assert FPBits.from_hex(F72, "07") == b
    with pytest.raises(ValueError):
        is_odd(F72.inf())


def test_invalid_formats():
    with pytest.raises(ValueError):
        FPFormat(5, 1)
    with pytest.raises(ValueError):
        FPFormat(4, 3)
    with pytest.raises(ValueError):
        FPBits(F52, 32)


def test_from_value_rejects_inexact():
    with pytest.raises(ValueError):
        from_value(F52, Fraction(1, 3))
    assert not is_representable(F52, Fraction(9, 8))
    assert from_value(F52, -0.0) == F52.zero(negative=True)
    assert from_value(F52, -math.inf) == F52.inf(negative=True)


def test_value_marker_keeps_negative_zero():
    m = value_marker(F52.zero(negative=True))
    assert m == 0 and math.copysign(1.0, m) < 0


@given(st.integers(0, (1 << 10) - 1))
def test_every_finite_pattern_roundtrips(bits):
    fmt = FPFormat(10, 4)
    b = FPBits(fmt, bits)
    if b.is_finite and not (b.is_zero and b.negative):
        assert from_value(fmt, value_of(b)) == b
