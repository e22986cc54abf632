"""
Theta series behind ped and ped2
================================

Both generating functions can be rewritten with classical theta series.
Here we expand those forms and compare them with the eta quotients.
"""

# %%
from pedcong.series import Ring, ped2_series, ped_series
from pedcong.theta import (ThetaSpec, off_progression_nonzero, ped2_mod8_theta_form,
                           theta_series, verify_identity_2_1, verify_identity_2_2)

# %%
signed = theta_series(ThetaSpec.signed_squares(), 30)
odd = theta_series(ThetaSpec.odd_squares(two_sided=False), 30)
print("signed squares:", signed.tolist())
print("odd squares:   ", odd.tolist())

# %%
# the two classical identities, checked coefficient by coefficient
for rep in (verify_identity_2_1(20000), verify_identity_2_2(20000)):
    print(rep.to_dict())

# %% [markdown]
# Only the progression 8k+1 survives in the odd-square series, so the
# off-progression coefficients vanish identically.

# %%
wide = theta_series(ThetaSpec.odd_squares(), 2000)
print(off_progression_nonzero(wide, 8, 1).size)

# %%
# the mod 8 rewrite of ped2 in terms of lattice theta series
n_max = 20000
theta_form = ped2_mod8_theta_form(n_max)
direct = ped2_series(n_max, Ring(8)).coeffs
print("mod 8 rewrite matches:", bool((theta_form == direct).all()))

# %%
# a consequence of the odd-square series: ped(n) is odd exactly at triangular numbers
parity = ped_series(200, Ring(2)).coeffs
print([n for n in range(200) if parity[n]])
