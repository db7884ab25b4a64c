"""
Ostrowski numeration as a weighted cover
========================================

Two loops per level; arrow weights are convergent denominators.
"""
from coverforge import (convergent_denominators, io, ostrowski_cover, validate_tower,
                        weights_vector, winding_matrix)

cf = (3, 3, 3)
t = ostrowski_cover(cf, 3)

# the bonding maps glue a_n copies of one loop to the other
print(io.print_tower(t))
print("legal:", validate_tower(t).legal, "bi-directional:", validate_tower(t).bi_directional)

# weights follow the winding matrices from an all-ones base
for n in range(4):
    print(n, weights_vector(t, n).tolist())
print("convergent denominators:", convergent_denominators(cf))
print("W^2 =", winding_matrix(t, 2).tolist())

# a bit-stable picture of all levels
print(io.to_dot(t))
