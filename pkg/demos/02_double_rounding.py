# coding: utf-8

# # Why round to odd
#
# Rounding to nearest twice, first to a 9-bit format and then to a 7-bit one,
# can give a different answer than rounding once.  Rounding to odd in the
# intermediate format never does, for any of the five standard modes.

from oddlib import FPFormat, RoundingMode, check_odd_composition, find_naive_double_rounding_bug, round_value, value_of
from oddlib.formats import value_marker

mid, target = FPFormat(9, 3), FPFormat(7, 3)
w = find_naive_double_rounding_bug(mid, target, "rn")
print("witness:", w, "=", float(w))

once = round_value(target, "rn", w)
step = round_value(mid, "rn", w)
twice = round_value(target, "rn", value_marker(step))
print("rn once:", value_of(once), " rn via", mid, ":", value_of(step), "->", value_of(twice))

odd = round_value(mid, RoundingMode.RO, w)
print("ro in", mid, ":", value_of(odd), "then rn:", value_of(round_value(target, "rn", value_marker(odd))))

# rz, ru and rd compose safely even without round to odd; ra does not.

for m in ("rz", "ru", "rd", "ra"):
    print(m, "witness:", find_naive_double_rounding_bug(mid, target, m))

# The general statement, checked over one value per rounding-component class.

res = check_odd_composition(FPFormat(9, 3), [6, 7])
print(res.representatives, "representatives,", res.distinct_classes, "classes,",
      len(res.violations), "violations")
