"""
Rauzy graphs of a Sturmian word and of the full shift
=====================================================
"""
from coverforge import (classify_sturmian_level, full_shift_oracle, measure_value_bound,
                        rauzy_tower, special_vertex_counts, sturmian_oracle, validate_tower)

# golden-mean Sturmian language, factors up to length 13
t = rauzy_tower(sturmian_oracle((1,) * 40, 13), 12)
for n in range(1, 13):
    g = t.levels[n]
    c = special_vertex_counts(g)
    print(f"G_{n}: {len(g.vertices)} vertices, {len(g.arrows)} arrows, "
          f"{classify_sturmian_level(g, t.levels[n + 1] if n < 12 else None)}, "
          f"specials {(c.left, c.right, c.bispecial)}, bound {measure_value_bound(g)}")

# the bispecial factor at length six
g6 = t.levels[6]
print([v for v in g6.vertices if len(g6.in_arrows[v]) == 2 and len(g6.out_arrows[v]) == 2])

# de Bruijn graphs: every vertex bispecial, bonding maps not negative directional
full = rauzy_tower(full_shift_oracle(2, 4), 3)
print(validate_tower(full))
