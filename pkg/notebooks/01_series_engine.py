"""
Truncated power series and eta quotients
========================================

A tour of the series engine: building the two generating functions,
checking them against direct partition counts, and timing the fast paths.
"""

# %%
import time

import numpy as np

from pedcong.series import (EXACT, PED2_SPEC, PED_SPEC, Ring, euler_product, eta_quotient,
                            ped2_series, ped_series, series_div, series_mul)

# %% [markdown]
# ped(n) counts partitions of n in which even parts are distinct. Its generating
# function is the eta quotient (q^4;q^4)/(q;q).

# %%
ped = ped_series(30)
print(PED_SPEC.canonical())
print(ped.tolist())

# %%
# ped2 is the same quotient squared
ped2 = ped2_series(20)
print(PED2_SPEC.canonical(), ped2.tolist())
assert (series_mul(ped.truncate(20), ped.truncate(20)).tolist() == ped2.tolist())

# %% [markdown]
# Every operation is tied to a coefficient ring. Working mod 8 keeps residues in
# small integer arrays, which is what makes orders in the millions practical.

# %%
ped8 = ped_series(1000, Ring(8))
exact = ped_series(1000)
print(np.array_equal(ped8.coeffs, np.array(exact.tolist(), dtype=object) % 8))

# %%
# division by a sparse denominator has two strategies; they agree
num = euler_product(4, 1, 5000, Ring(8))
den = euler_product(1, 1, 5000, Ring(8))
for method in ("recurrence", "newton"):
    t = time.perf_counter()
    q = series_div(num, den, method=method)
    print(f"{method:>10}: {time.perf_counter() - t:.3f}s")
print(np.array_equal(series_div(num, den, method="recurrence").coeffs,
                     series_div(num, den, method="newton").coeffs))

# %%
# a general eta quotient, written by its factors
t = time.perf_counter()
big = eta_quotient(PED_SPEC, 10**6, Ring(8))
print(f"ped mod 8 to 1e6 in {time.perf_counter() - t:.2f}s, "
      f"{np.count_nonzero(big.coeffs == 0)} coefficients divisible by 8")

# %%
# exact big integers are available too
print(ped_series(500, EXACT)[500])
