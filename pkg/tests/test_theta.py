import numpy as np
import pytest

from pedcong.series import EXACT, Ring, ped2_series, ped_series
from pedcong.theta import (ThetaSpec, identity_2_1_sides, identity_2_2_sides,
                           off_progression_nonzero, ped2_from_theta, ped2_mod8_theta_form,
                           ped_from_theta, progression_coefficients, theta_series,
                           verify_identity_2_1, verify_identity_2_2)


class TestThetaSeries:
    def test_signed(self):
        assert theta_series(ThetaSpec.signed_squares(), 9).tolist() == [1, -2, 0, 0, 2, 0, 0, 0, 0, -2]

    def test_odd_one_sided(self):
        s = theta_series(ThetaSpec.odd_squares(two_sided=False), 25)
        assert list(s.nonzero()) == [1, 9, 25]
        assert set(s.coeffs[s.nonzero()]) == {1}

    def test_odd_two_sided_weights(self):
        s = theta_series(ThetaSpec.odd_squares(), 121)
        assert list(s.nonzero()) == [1, 9, 25, 49, 81, 121]
        assert set(s.coeffs[s.nonzero()]) == {2}

    def test_even_lattice_8(self):
        s = theta_series(ThetaSpec.even_lattice(8), 32)
        assert {int(i): s[i] for i in s.nonzero()} == {0: 1, 8: 2, 32: 2}

    @pytest.mark.parametrize("a", [4, 8, 16])
    def test_even_lattice_invariant(self, a):
        s = theta_series(ThetaSpec.even_lattice(a), 3000)
        nz = s.nonzero()
        assert s[0] == 1
        assert all(s[i] == 2 and (i % a == 0) and int((i // a) ** 0.5) ** 2 == i // a for i in nz[1:])

    def test_bad_lattice(self):
        with pytest.raises(ValueError):
            ThetaSpec.even_lattice(3)

    def test_modular(self):
        s = theta_series(ThetaSpec.signed_squares(), 9, Ring(8))
        assert s.tolist() == [1, 6, 0, 0, 2, 0, 0, 0, 0, 6]


class TestIdentities:
    @pytest.mark.parametrize("order", [0, 1, 100])
    def test_2_1(self, order):
        rep = verify_identity_2_1(order)
        assert rep.ok and rep.first_mismatch is None and rep.order == order

    def test_2_1_by_hand(self):
        lhs, rhs = identity_2_1_sides(1)
        assert lhs.tolist() == rhs.tolist() == [1, -2]

    @pytest.mark.parametrize("order", [0, 9, 200])
    def test_2_2(self, order):
        assert verify_identity_2_2(order).ok

    def test_2_2_by_hand(self):
        lhs, rhs = identity_2_2_sides(9)
        assert lhs.tolist() == rhs.tolist() == [0, 1, 0, 0, 0, 0, 0, 0, 0, 1]
        lhs, rhs = identity_2_2_sides(0)
        assert lhs.tolist() == rhs.tolist() == [0]

    def test_mismatch_is_reported(self):
        # the two-sided odd-square series differs from the one-sided one at q^1
        lhs, _ = identity_2_2_sides(30)
        two = theta_series(ThetaSpec.odd_squares(), 30)
        from pedcong.theta import _compare
        rep = _compare("2.2-two-sided", lhs, two)
        assert rep.status == "mismatch" and rep.first_mismatch == 1

    def test_report_json_fields(self):
        d = verify_identity_2_1(5).to_dict()
        assert set(d) == {"identity", "order", "status", "first_mismatch"}


class TestReductionChains:
    def test_ped_chain(self):
        vals, s = ped_from_theta(10_000)
        assert np.array_equal(vals, ped_series(10_000, Ring(8)).coeffs)
        assert off_progression_nonzero(s, 8, 1).size == 0

    def test_ped2_chain(self):
        vals, s = ped2_from_theta(10_000)
        assert np.array_equal(vals, ped2_series(10_000, Ring(8)).coeffs)
        assert off_progression_nonzero(s, 4, 1).size == 0

    def test_ped2_truncated_form(self):
        assert np.array_equal(ped2_mod8_theta_form(5000), ped2_series(5000, Ring(8)).coeffs)

    def test_ped_chain_exact(self):
        vals, _ = ped_from_theta(300, EXACT)
        assert list(vals) == ped_series(300).tolist()

    def test_progression_helper(self):
        s = theta_series(ThetaSpec.odd_squares(two_sided=False), 49)
        assert list(progression_coefficients(s, 8, 1)) == [1, 1, 0, 1, 0, 0, 1]
