"""
Kakutani-Rokhlin towers as graph covers
=======================================
"""
from coverforge import (contract_regular, kr_column_matrix, kr_to_cover,
                        substitution_kr_tower, validate_kr, validate_tower, weights_vector)

# squared Fibonacci substitution read through its fixed point
k = substitution_kr_tower(["aba", "ab"], "ab", 4)
print("heights:", k.heights)
print("problems:", validate_kr(k).problems)
print([kr_column_matrix(k, n).tolist() for n in range(1, 5)])

# atoms become vertices; contracting regular chains gives a weighted cover
t = kr_to_cover(k)
print(t, validate_tower(t).legal)
c = contract_regular(t)
print(c, [weights_vector(c, n).tolist() for n in range(5)])

# the plain Fibonacci data has a column that never meets the other one
print(validate_kr(substitution_kr_tower(["ab", "a"], "ab", 3)).problems)
