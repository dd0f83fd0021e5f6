"""Rounding components and the IEEE-754 rounding modes plus round-to-odd.

A real value ``v`` is rounded in two steps: :func:`components` extracts
``(s, v_minus, rb, sticky)`` by exact integer arithmetic, and
:func:`round_from_components` makes the mode decision from those four
pieces alone.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .formats import FPBits, FPFormat, Value

__all__ = [
    "RoundingMode",
    "STANDARD_MODES",
    "RoundingComponents",
    "components",
    "round_from_components",
    "round_value",
    "magnitude_components",
    "extended_prefix",
    "extended_or_from",
]


class RoundingMode(str, enum.Enum):
    RN = "rn"  # nearest, ties to even
    RA = "ra"  # nearest, ties away from zero
    RZ = "rz"  # toward zero
    RU = "ru"  # toward +infinity
    RD = "rd"  # toward -infinity
    RO = "ro"  # round to odd

    def __str__(self):
        return self.value


STANDARD_MODES = (RoundingMode.RN, RoundingMode.RA, RoundingMode.RZ,
                  RoundingMode.RU, RoundingMode.RD)


@dataclass(frozen=True)
class RoundingComponents:
    s: int  # +1 or -1
    v_minus: FPBits  # truncated magnitude, sign bit clear
    rb: int
    sticky: int

    @property
    def exact(self) -> bool:
        return not (self.rb or self.sticky)

    def key(self) -> tuple:
        return (self.s, self.v_minus.bits, self.rb, self.sticky)


def magnitude_components(fmt: FPFormat, num: int, den: int) -> tuple[int, int, int]:
    """Truncated magnitude pattern, rounding bit and sticky bit of ``num/den > 0``.

    Values at or beyond 2**(emax+1) lie outside F(inf, |E|) and are clamped to
    the all-ones mantissa of the top binade, i.e. ``(max, 1, 1)``.
    """
    mbits = fmt.mantissa_bits
    e = num.bit_length() - den.bit_length()
    if e >= 0:
        if num < (den << e):
            e -= 1
    elif (num << -e) < den:
        e -= 1
    if e > fmt.emax:
        return fmt.max_magnitude, 1, 1
    emin = 1 - fmt.bias
    e_eff = e if e > emin else emin
    shift = mbits - e_eff
    if shift >= 0:
        q, r = divmod(num << shift, den)
    else:
        den <<= -shift
        q, r = divmod(num, den)
    mag = q + ((e_eff + fmt.bias - 1) << mbits)
    if r == 0:
        return mag, 0, 0
    r2 = r << 1
    if r2 >= den:
        return mag, 1, int(r2 != den)
    return mag, 0, 1


def components(fmt: FPFormat, v: Union[Fraction, int]) -> RoundingComponents:
    """Rounding components of a finite rational ``v`` with respect to ``fmt``."""
    if not isinstance(v, Fraction):
        v = Fraction(v)
    num, den = v.numerator, v.denominator
    if num == 0:
        return RoundingComponents(1, FPBits(fmt, 0), 0, 0)
    s = 1
    if num < 0:
        s, num = -1, -num
    mag, rb, sticky = magnitude_components(fmt, num, den)
    return RoundingComponents(s, FPBits(fmt, mag), rb, sticky)


def _rounds_up(mode: RoundingMode, s: int, mag: int, rb: int, sticky: int) -> bool:
    if not (rb or sticky):
        return False
    if mode is RoundingMode.RN:
        return bool(rb and (sticky or (mag & 1)))
    if mode is RoundingMode.RA:
        return bool(rb)
    if mode is RoundingMode.RZ:
        return False
    if mode is RoundingMode.RU:
        return s > 0
    if mode is RoundingMode.RD:
        return s < 0
    if mode is RoundingMode.RO:
        return not (mag & 1)
    raise ValueError(f"unknown rounding mode {mode!r}")


def round_from_components(fmt: FPFormat, mode: RoundingMode,
                          rc: RoundingComponents) -> FPBits:
    """Decide between ``v_minus`` and its successor; the result carries sign ``s``.

    The successor of the largest finite magnitude is the infinity pattern.
    """
    mode = RoundingMode(mode)
    mag = rc.v_minus.magnitude
    if _rounds_up(mode, rc.s, mag, rc.rb, rc.sticky):
        mag += 1
    return FPBits(fmt, mag | (fmt.sign_mask if rc.s < 0 else 0))


def round_value(fmt: FPFormat, mode: RoundingMode, v: Value) -> FPBits:
    """Round an exact value to ``fmt``.

    Floats are accepted only as markers: ``math.inf``, ``-math.inf``,
    ``math.nan`` and signed zeros map to their patterns.
    """
    mode = RoundingMode(mode)
    if isinstance(v, float):
        if math.isnan(v):
            return fmt.nan()
        if math.isinf(v):
            return fmt.inf(v < 0)
        if v == 0:
            return fmt.zero(math.copysign(1.0, v) < 0)
        v = Fraction(v)
    elif not isinstance(v, Fraction):
        v = Fraction(v)
    num, den = v.numerator, v.denominator
    if num == 0:
        return FPBits(fmt, 0)
    s = 1
    if num < 0:
        s, num = -1, -num
    mag, rb, sticky = magnitude_components(fmt, num, den)
    if _rounds_up(mode, s, mag, rb, sticky):
        mag += 1
    return FPBits(fmt, mag | (fmt.sign_mask if s < 0 else 0))


def extended_prefix(v: Fraction, exponent_bits: int, length: int) -> int:
    """First ``length`` bits (sign included) of ``v`` in F(inf, |E|), as an integer."""
    fmt = FPFormat(length, exponent_bits)
    rc = components(fmt, v)
    return rc.v_minus.bits | (fmt.sign_mask if rc.s < 0 else 0)


def extended_or_from(v: Fraction, exponent_bits: int, position: int) -> int:
    """Bitwise OR of the bits of ``v`` in F(inf, |E|) from 1-based ``position`` on."""
    rc = components(FPFormat(position - 1, exponent_bits), v)
    return int(not rc.exact)
