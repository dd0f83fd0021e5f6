"""Correctly rounded elementary functions for families of small binary formats.

One polynomial is generated per function against round-to-odd results in a
format two bits wider than the largest target; its H-precision output then
rounds correctly into every narrower format of the family under all five
standard rounding modes.
"""

from .formats import FPBits, FPFormat, from_value, value_of
from .funcgen import GeneratedFunction, evaluate, evaluate_rno
from .generator import GenerationConfig, generate
from .oracle import Func, rno_result, singleton_census
from .rounding import RoundingMode, components, round_value
from .verify import check_all, check_lemmas, check_odd_composition, find_naive_double_rounding_bug

__all__ = [
    "FPBits",
    "FPFormat",
    "Func",
    "GeneratedFunction",
    "GenerationConfig",
    "RoundingMode",
    "check_all",
    "check_lemmas",
    "check_odd_composition",
    "components",
    "evaluate",
    "evaluate_rno",
    "find_naive_double_rounding_bug",
    "from_value",
    "generate",
    "rno_result",
    "round_value",
    "singleton_census",
    "value_of",
]
