"""
Classifying ped2(n) modulo 8
============================

The residue of ped2(n) mod 8 is decided by the prime factorization of 4n+1.
This notebook runs the classifier, compares it with the series, and looks
at the representation counts that drive it.
"""

# %%
from collections import Counter

from pedcong.classifier import (ResidueClass, classify, classify_range, criteria_from_triple,
                                mismatches_against, theta_triple)
from pedcong.quadforms import (factorize, rep_count_enumerate, rep_count_formula_x2_y2,
                               residue_profile, squarefree_decompose)
from pedcong.series import Ring, ped2_series

# %%
for n in (0, 1, 2, 6, 12, 30, 1000):
    f = factorize(4 * n + 1)
    print(f"n={n:<5} 4n+1={f}  class={classify(n).value}")

# %%
# the arithmetic data the classifier looks at
f = factorize(4 * 1234 + 1)
print(f, squarefree_decompose(4 * 1234 + 1), residue_profile(f), sep="\n")

# %%
# representation counts: enumeration and closed form agree
print([(n, rep_count_enumerate(n, 1), rep_count_formula_x2_y2(n)) for n in (5, 25, 65, 21)])

# %%
n_max = 20000
series = ped2_series(n_max, Ring(8)).coeffs
print("disagreements with the series:", mismatches_against(series, n_max))

# %%
counts = Counter(c.value for c in classify_range(n_max))
print(counts)

# %%
# the same classes from the theta convolution triple
for n in (3, 17, 40):
    t = theta_triple(n)
    print(n, t, criteria_from_triple(t).value, classify(n).value)
    assert criteria_from_triple(t) == classify(n)

# %%
# ResidueClass knows which residues belong to it
print([c.value for c in ResidueClass if c.contains(4)])
