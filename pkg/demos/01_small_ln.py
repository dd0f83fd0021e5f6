# coding: utf-8

# # A correctly rounded ln for 5-bit floats
#
# T_n = F(5,2) has a sign bit, 2 exponent bits and 2 mantissa bits.  We build
# ln for it by fitting one polynomial to the round-to-odd results in the
# 7-bit format F(7,2), then check every input in every rounding mode.

from fractions import Fraction

from oddlib import FPFormat, Func, GenerationConfig, check_all, evaluate, from_value, generate, value_of
from oddlib.formats import enumerate_finite

tn = FPFormat(5, 2)
print("finite values of", tn, sorted({value_of(b) for b in enumerate_finite(tn)}))

# Generation: oracle, odd intervals, LP, done.

res = generate(GenerationConfig(Func.LN, 5, 2, max_degree=4, max_pieces=1))
g = res.function
print("singletons:", {str(x): str(value_of(y)) for x, y in g.singletons.items()})
print("constraints:", res.constraints)
piece = g.poly.pieces[0]
for p, c in zip(piece.powers, piece.coeffs_h):
    print(f"  x^{p}: {float(c):+.17g}")

# ln(1.5) = 0.405...; the stored round-to-odd result is 7/16 in F(7,2) and
# each mode then rounds that into the 5-bit target.

x = from_value(tn, Fraction(3, 2))
for mode in ("rn", "rz", "ru", "rd", "ra"):
    print(f"ln(1.5) {mode} -> {value_of(evaluate(g, x, mode=mode))}")

# Every input of F(4,2) and F(5,2), five modes each.

print(check_all(g).to_text())
