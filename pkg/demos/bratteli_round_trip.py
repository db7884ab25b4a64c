"""
Covers and ordered Bratteli diagrams
====================================

Cover to diagram, diagram back to cover, and the Vershik map.
"""
from coverforge import (MaxPath, bv_to_cover, cover_to_bv, io, levels_isomorphic,
                        minimal_bv_path, ostrowski_cover, raw_source_classes, sadic_to_cover,
                        SAdicSystem, Substitution, truncate, vershik_step)

t = sadic_to_cover(SAdicSystem.stationary(
    Substitution.from_dict({"1": "12", "2": "13", "3": "123"}), 5))
d = cover_to_bv(t)
print(io.print_diagram(d))

# vertices of the cover are clusters of arrow ends under the follower relation
back = bv_to_cover(d)
print("complete:", back.complete, "depth:", back.tower.depth)
print("vertices per level:", [len(g.vertices) for g in back.tower.levels])
print("isomorphic to truncation:", levels_isomorphic(back.tower, truncate(t, back.tower.depth)))

# without the transitive hull, level 1 would split into several classes
print("raw classes:", [sorted(c) for c in raw_source_classes(d, 1)])

# the Vershik map runs through all 33 paths of the a=3 diagram
d = cover_to_bv(ostrowski_cover((3, 3, 3), 3))
p, count = minimal_bv_path(d, "0"), 1
while True:
    try:
        p = vershik_step(d, p)
        count += 1
    except MaxPath:
        break
print("paths visited:", count)
