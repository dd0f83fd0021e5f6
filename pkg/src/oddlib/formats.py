"""Parametric binary floating-point formats F(n, |E|) with exact decoding.

Every bit-pattern of an ``n``-bit format is a valid :class:`FPBits`; finite
patterns decode to exact :class:`fractions.Fraction` values, infinities to
``math.inf`` / ``-math.inf`` and NaNs to ``math.nan``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterator, Optional, Union

__all__ = [
    "FPFormat",
    "FPBits",
    "Value",
    "ZERO",
    "NORMAL",
    "DENORMAL",
    "INFINITY",
    "NAN",
    "classify",
    "value_of",
    "value_marker",
    "succ",
    "pred",
    "is_odd",
    "enumerate_finite",
    "from_value",
    "is_representable",
    "positive_nonzero",
    "DOUBLE",
]

Value = Union[Fraction, float]

ZERO = "zero"
DENORMAL = "denormal"
NORMAL = "normal"
INFINITY = "infinity"
NAN = "nan"


@dataclass(frozen=True)
class FPFormat:
    """The format F(total_bits, exponent_bits)."""

    total_bits: int
    exponent_bits: int

    def __post_init__(self):
        if self.exponent_bits < 2:
            raise ValueError(f"exponent_bits must be >= 2, got {self.exponent_bits}")
        if self.total_bits < self.exponent_bits + 2:
            raise ValueError(
                f"F({self.total_bits},{self.exponent_bits}) has no mantissa bit"
            )

    def __str__(self):
        return f"F({self.total_bits},{self.exponent_bits})"

    @property
    def mantissa_bits(self) -> int:
        return self.total_bits - 1 - self.exponent_bits

    @property
    def precision(self) -> int:
        """Significand precision including the implicit bit."""
        return self.mantissa_bits + 1

    @property
    def bias(self) -> int:
        return (1 << (self.exponent_bits - 1)) - 1

    @property
    def emax(self) -> int:
        """Unbiased exponent of the largest binade."""
        return (1 << self.exponent_bits) - 2 - self.bias

    @property
    def emin(self) -> int:
        """Unbiased exponent of the smallest normal binade."""
        return 1 - self.bias

    @property
    def denormal_exponent(self) -> int:
        """log2 of the smallest positive denormal."""
        return self.emin - self.mantissa_bits

    @property
    def sign_mask(self) -> int:
        return 1 << (self.total_bits - 1)

    @property
    def magnitude_mask(self) -> int:
        return self.sign_mask - 1

    @property
    def inf_magnitude(self) -> int:
        return ((1 << self.exponent_bits) - 1) << self.mantissa_bits

    @property
    def max_magnitude(self) -> int:
        """Pattern of the largest finite value."""
        return self.inf_magnitude - 1

    @cached_property
    def max_value(self) -> Fraction:
        return _decode_magnitude(self, self.max_magnitude)

    @cached_property
    def min_denormal(self) -> Fraction:
        return _pow2(self.denormal_exponent)

    @cached_property
    def overflow_threshold(self) -> Fraction:
        """2**(emax+1): the end of the dynamic range of F(inf, |E|)."""
        return _pow2(self.emax + 1)

    def bits(self, pattern: int) -> "FPBits":
        return FPBits(self, pattern)

    def zero(self, negative: bool = False) -> "FPBits":
        return FPBits(self, self.sign_mask if negative else 0)

    def inf(self, negative: bool = False) -> "FPBits":
        return FPBits(self, self.inf_magnitude | (self.sign_mask if negative else 0))

    def nan(self) -> "FPBits":
        """The canonical quiet NaN."""
        return FPBits(self, self.inf_magnitude | (1 << (self.mantissa_bits - 1)))

    def max_finite(self, negative: bool = False) -> "FPBits":
        return FPBits(self, self.max_magnitude | (self.sign_mask if negative else 0))

    def patterns(self) -> range:
        return range(1 << self.total_bits)


DOUBLE = FPFormat(64, 11)


def _pow2(e: int) -> Fraction:
    return Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)


def _decode_magnitude(fmt: FPFormat, mag: int) -> Fraction:
    e_field = mag >> fmt.mantissa_bits
    frac = mag & ((1 << fmt.mantissa_bits) - 1)
    if e_field == 0:
        sig, exp = frac, fmt.denormal_exponent
    else:
        sig, exp = frac | (1 << fmt.mantissa_bits), e_field - fmt.bias - fmt.mantissa_bits
    if exp >= 0:
        return Fraction(sig << exp)
    return Fraction(sig, 1 << -exp)


@dataclass(frozen=True, order=False)
class FPBits:
    """An ``n``-bit pattern interpreted in ``format``."""

    format: FPFormat
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << self.format.total_bits):
            raise ValueError(f"pattern {self.bits:#x} does not fit {self.format}")

    @property
    def negative(self) -> bool:
        return bool(self.bits & self.format.sign_mask)

    @property
    def magnitude(self) -> int:
        return self.bits & self.format.magnitude_mask

    @property
    def exponent_field(self) -> int:
        return self.magnitude >> self.format.mantissa_bits

    @property
    def mantissa_field(self) -> int:
        return self.bits & ((1 << self.format.mantissa_bits) - 1)

    def classify(self) -> str:
        return classify(self)

    @property
    def is_finite(self) -> bool:
        return self.magnitude < self.format.inf_magnitude

    @property
    def is_nan(self) -> bool:
        return self.magnitude > self.format.inf_magnitude

    @property
    def is_inf(self) -> bool:
        return self.magnitude == self.format.inf_magnitude

    @property
    def is_zero(self) -> bool:
        return self.magnitude == 0

    def value(self) -> Value:
        return value_of(self)

    def with_sign(self, negative: bool) -> "FPBits":
        mag = self.magnitude
        return FPBits(self.format, mag | (self.format.sign_mask if negative else 0))

    def __neg__(self) -> "FPBits":
        return FPBits(self.format, self.bits ^ self.format.sign_mask)

    def ordinal(self) -> int:
        """Monotone integer key: ordinal(a) < ordinal(b) iff a < b (finite, +0 == -0)."""
        mag = self.magnitude
        return -mag if self.negative else mag

    def hex(self) -> str:
        width = (self.format.total_bits + 3) // 4
        return f"{self.bits:0{width}x}"

    def binary(self) -> str:
        """Grouped binary ``s eee mmmm``."""
        fmt = self.format
        s = format(self.bits, f"0{fmt.total_bits}b")
        return f"{s[0]} {s[1:1 + fmt.exponent_bits]} {s[1 + fmt.exponent_bits:]}"

    def __str__(self):
        v = self.value()
        if isinstance(v, Fraction):
            shown = str(v) if v.denominator != 1 else str(v.numerator)
            if self.is_zero and self.negative:
                shown = "-0"
        else:
            shown = str(v)
        return f"{self.binary()} ({shown})"

    @classmethod
    def from_hex(cls, fmt: FPFormat, text: str) -> "FPBits":
        return cls(fmt, int(text, 16))


def classify(b: FPBits) -> str:
    """One of ``zero``, ``denormal``, ``normal``, ``infinity``, ``nan``."""
    fmt = b.format
    e_field = b.exponent_field
    if e_field == 0:
        return ZERO if b.mantissa_field == 0 else DENORMAL
    if e_field == (1 << fmt.exponent_bits) - 1:
        return INFINITY if b.mantissa_field == 0 else NAN
    return NORMAL


def value_of(b: FPBits) -> Value:
    """Exact value of a pattern.  Zero of either sign decodes to ``Fraction(0)``."""
    fmt = b.format
    mag = b.magnitude
    if mag >= fmt.inf_magnitude:
        if mag > fmt.inf_magnitude:
            return math.nan
        return -math.inf if b.negative else math.inf
    v = _decode_magnitude(fmt, mag)
    return -v if b.negative else v


def value_marker(b: FPBits) -> Value:
    """Like :func:`value_of` but -0 comes back as ``-0.0`` so re-rounding keeps its sign."""
    if b.is_zero and b.negative:
        return -0.0
    return value_of(b)


def succ(b: FPBits) -> FPBits:
    """Next pattern in value order.  succ(-0) and succ(+0) are the smallest denormal."""
    fmt = b.format
    if b.is_nan:
        raise ValueError("succ of NaN")
    if b.is_inf and not b.negative:
        raise ValueError("succ(+infinity) is undefined")
    mag = b.magnitude
    if mag == 0:
        return FPBits(fmt, 1)
    if b.negative:
        if mag == 1:
            return fmt.zero(negative=True)
        return FPBits(fmt, b.bits - 1)
    return FPBits(fmt, b.bits + 1)


def pred(b: FPBits) -> FPBits:
    """Previous pattern in value order; mirror of :func:`succ`."""
    fmt = b.format
    if b.is_nan:
        raise ValueError("pred of NaN")
    if b.is_inf and b.negative:
        raise ValueError("pred(-infinity) is undefined")
    mag = b.magnitude
    if mag == 0:
        return FPBits(fmt, fmt.sign_mask | 1)
    if b.negative:
        return FPBits(fmt, b.bits + 1)
    if mag == 1:
        return fmt.zero()
    return FPBits(fmt, b.bits - 1)


def is_odd(b: FPBits) -> bool:
    if not b.is_finite:
        raise ValueError("is_odd expects a finite pattern")
    return bool(b.bits & 1)


def enumerate_finite(
    fmt: FPFormat,
    predicate: Optional[Callable[[FPBits], bool]] = None,
    signed_zeros: bool = False,
) -> list[FPBits]:
    """All finite patterns of ``fmt`` satisfying ``predicate``, ascending by value.

    Only +0 is produced unless ``signed_zeros`` is set.
    """
    out = []
    for b in _finite_ascending(fmt, signed_zeros):
        if predicate is None or predicate(b):
            out.append(b)
    return out


def _finite_ascending(fmt: FPFormat, signed_zeros: bool) -> Iterator[FPBits]:
    top = fmt.max_magnitude
    for mag in range(top, 0, -1):
        yield FPBits(fmt, fmt.sign_mask | mag)
    if signed_zeros:
        yield FPBits(fmt, fmt.sign_mask)
    yield FPBits(fmt, 0)
    for mag in range(1, top + 1):
        yield FPBits(fmt, mag)


def positive_nonzero(b: FPBits) -> bool:
    return not b.negative and not b.is_zero


def from_value(fmt: FPFormat, v: Value) -> FPBits:
    """Encode an exactly representable value; raise ``ValueError`` otherwise."""
    from .rounding import RoundingMode, components, round_from_components

    if isinstance(v, float):
        if math.isnan(v):
            return fmt.nan()
        if math.isinf(v):
            return fmt.inf(v < 0)
        if v == 0:
            return fmt.zero(math.copysign(1.0, v) < 0)
        v = Fraction(v)
    rc = components(fmt, Fraction(v))
    if rc.rb or rc.sticky:
        raise ValueError(f"{v} is not representable in {fmt}")
    return round_from_components(fmt, RoundingMode.RZ, rc)


def is_representable(fmt: FPFormat, v: Fraction) -> bool:
    from .rounding import components

    rc = components(fmt, Fraction(v))
    return not (rc.rb or rc.sticky)
