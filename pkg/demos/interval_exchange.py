"""
Rauzy induction with exact lengths
==================================
"""
from fractions import Fraction

from coverforge import (IETConfig, KeaneTie, induced_substitution_check, induction_window,
                        iet_rauzy_induction, rauzy_step)

# rational lengths always end in a tie
cfg = IETConfig((Fraction(13, 21), Fraction(8, 21)), (2, 1))
try:
    iet_rauzy_induction(cfg, 20)
except KeaneTie as e:
    print("tie at step", e.step, "tape", e.tape)
    for s in e.substitutions:
        print(" ", s)

# each step is the first-return map to the kept window
c = cfg
for _ in range(4):
    kind, sub, nxt = rauzy_step(c)
    print(kind, sub, induced_substitution_check(c, induction_window(c), 10) == sub)
    c = nxt

# three intervals
run = iet_rauzy_induction(IETConfig((Fraction(3, 10), Fraction(5, 10), Fraction(2, 10)),
                                    (3, 2, 1)), 5)
print(run.tape)
