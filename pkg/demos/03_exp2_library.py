# coding: utf-8

# # exp2 for every format from 7 to 12 bits
#
# One generated function serves F(7,5) through F(12,5).  Range reduction
# splits x into an integer m and r in [0,1], so a single low degree
# polynomial covers all the inputs that do not saturate.  This run takes a
# few seconds.

import time

from oddlib import FPFormat, Func, GenerationConfig, check_all, evaluate, from_value, generate, value_of

t0 = time.perf_counter()
res = generate(GenerationConfig(Func.EXP2, 12, 5))
g = res.function
print(f"generated in {time.perf_counter() - t0:.1f} s:", res.stats)
print("clamps:", [(c.side, str(value_of(c.x)), str(value_of(c.y))) for c in g.clamps])
print("polynomial degree", g.poly.pieces[0].degree)

# The same function rounded into two different targets.

for k in (7, 12):
    x = from_value(FPFormat(k, 5), 0.75)
    print(f"exp2(0.75) in F({k},5):", {m: float(value_of(evaluate(g, x, mode=m)))
                                       for m in ("rn", "rd", "ru")})

t0 = time.perf_counter()
rep = check_all(g)
print(rep.to_text())
print(f"verified {sum(c.checked for c in rep.cells.values())} results "
      f"in {time.perf_counter() - t0:.1f} s")
