"""
Threads and itineraries
=======================
"""
from coverforge import (IndeterminateAtDepth, full_shift_oracle, itinerary, minimal_thread,
                        odometer_cover, orbit, ostrowski_cover, project, rauzy_tower, step,
                        step_resolved, sturmian_word)

# the golden Ostrowski cover codes the Sturmian word
t = ostrowski_cover((1,) * 20, 20)
x = minimal_thread(t)
w = itinerary(t, x, 60)
print(w)
print(w == sturmian_word((1,) * 40, 60))

# the odometer returns after 2^n steps
o = odometer_cover(2, 5)
y = minimal_thread(o)
print([orbit(o, y, 2 ** n)[-1].footprint(n) == y.footprint(n) for n in range(6)])

# in the full shift the successor is not determined by a finite thread
f = rauzy_tower(full_shift_oracle(2, 5), 4)
z = project(f, 1, f.levels[1].label_index["01"])
try:
    step(f, z)
except IndeterminateAtDepth as e:
    print("undetermined:", e.candidates)
print("truncated:", step_resolved(f, z, truncate=True))
