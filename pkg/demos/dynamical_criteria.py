"""
Minimality, unique ergodicity, odometers and linear recurrence
==============================================================
"""
from coverforge import (SAdicSystem, Substitution, check_minimal, check_transitive,
                        linear_recurrence_constants, odometer_cover, ostrowski_cover,
                        return_words, sadic_to_cover, uniform_rigidity_check,
                        unique_ergodicity_diameters)


def stationary(rules, depth):
    return sadic_to_cover(SAdicSystem.stationary(Substitution.from_dict(rules), depth))


# a loop of bounded weight prevents minimality
print(check_minimal(stationary({"1": "1", "2": "1221"}, 5)))
print(check_minimal(ostrowski_cover((3,) * 6, 6), 2))
print(check_transitive(ostrowski_cover((2,) * 5, 5), 0, 4))

# cone contraction for Fibonacci, none for the squares tower
fib = stationary({"0": "01", "1": "0"}, 20)
print([round(c.diameter, 8) for c in unique_ergodicity_diameters(fib)[-3:]])
subs = [Substitution.from_dict({"a": "a" * n * n + "b", "b": "a" + "b" * n * n})
        for n in range(1, 31)]
print(unique_ergodicity_diameters(sadic_to_cover(SAdicSystem(subs)), base=1)[-1].diameter)

# odometers have nested covering loops
print(uniform_rigidity_check(odometer_cover(3, 5)))
print(uniform_rigidity_check(ostrowski_cover((1,) * 8, 8)))

# linear recurrence constants for Fibonacci
rc = linear_recurrence_constants(stationary({"0": "01", "1": "0"}, 20), 10_000, 6)
print(rc)
print(return_words("0100101001001010010100100101001001", "010"))
