"""
Congruences in arithmetic progressions
======================================

Each congruence family is a rule sending (p, r, alpha, n) to an argument.
We evaluate the series at those arguments and look for counterexamples.
"""

# %%
from pedcong.congruences import (admissible_r, arg_ped_mod8, audit_printed_mod8_map,
                                 check_parity_theorem_1_4, ped2_mod3_a, ped2_mod4_family,
                                 ped_mod4_family, ped_mod8_family, verify_family)
from pedcong.series import Ring, ped2_series, ped_series

# %%
print("admissible r for p=7:", admissible_r(7, 8))
print([arg_ped_mod8(7, r, 0, 0) for r in admissible_r(7, 8)])

# %%
ped8 = ped_series(300000, Ring(8))
rep = verify_family(ped_mod8_family(7), 1, None, ped8, arg_limit=ped8.order)
print(rep.to_json(timing=True))

# %%
rep = verify_family(ped_mod4_family(3), 2, None, ped8, arg_limit=ped8.order)
print(rep.family, rep.status, rep.checked)

# %%
# the argument map as printed does not even give integers in general
print(audit_printed_mod8_map(7).to_dict())

# %%
ped2_24 = ped2_series(100000, Ring(24))
for fam in (ped2_mod4_family(3), ped2_mod3_a()):
    r = verify_family(fam, 1, None, ped2_24, arg_limit=ped2_24.order)
    print(fam.id, r.status, r.checked)

# %%
print(check_parity_theorem_1_4(20000, ped2_24).status)
