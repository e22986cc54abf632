import pytest
from hypothesis import given, settings, strategies as st

from pedcong.classifier import (ResidueClass, ThetaConvolutionTriple, classify,
                                criteria_from_triple, mismatches_against, theta_triple,
                                theta_triples_series)
from pedcong.quadforms import UnsupportedInput, factorize
from pedcong.series import Ring, ped2_series


@pytest.mark.parametrize("n,cls,value", [
    (2, ResidueClass.ODD, 5),
    (3, ResidueClass.TWO_MOD_4, 10),
    (5, ResidueClass.ZERO_MOD_8, 32),
    (0, ResidueClass.ODD, 1),
    (1, ResidueClass.TWO_MOD_4, 2),
])
def test_examples(n, cls, value, ped2_exact_2000):
    assert classify(n) is cls
    assert ped2_exact_2000[n] == value
    assert cls.contains(value)


def test_of_value():
    assert [str(ResidueClass.of_value(v)) for v in range(9)] == [
        "ZeroMod8", "Odd", "TwoMod4", "Odd", "FourMod8", "Odd", "TwoMod4", "Odd", "ZeroMod8"]


def test_each_case_reached(ped2_exact_2000):
    # 4n+1 = 125 = 5^3 (ord 3 mod 8); 4n+1 = 65 = 5*13 (two primes 1 mod 4);
    # 4n+1 = 5^5 (ord 5 = 1 mod 4); 4n+1 = 5^7 (ord 7: other cases)
    assert classify(31) is ResidueClass.FOUR_MOD_8 and ped2_exact_2000[31] % 8 == 4
    assert classify(16) is ResidueClass.FOUR_MOD_8 and ped2_exact_2000[16] % 8 == 4
    assert classify((5**5 - 1) // 4) is ResidueClass.TWO_MOD_4
    assert classify((5**7 - 1) // 4) is ResidueClass.ZERO_MOD_8


def test_oracle_agreement_small(ped2_exact_2000):
    assert mismatches_against(ped2_exact_2000.coeffs) == []


def test_parity_bridge():
    for n in range(20_000):
        k = 4 * n + 1
        assert (classify(n) is ResidueClass.ODD) == (int(k**0.5) ** 2 == k)


def test_bound():
    with pytest.raises(UnsupportedInput):
        classify(2**62)
    with pytest.raises(ValueError):
        classify(-1)


def test_large_n():
    n = (7**21 * 11 - 1) // 4  # 4n+1 = 7^21 * 11 -> squarefree part 77
    assert 4 * n + 1 == 7**21 * 11
    assert classify(n) is ResidueClass.ZERO_MOD_8


@settings(max_examples=200, deadline=None)
@given(st.integers(0, (2**63 - 1) // 4))
def test_classify_total(n):
    assert isinstance(classify(n), ResidueClass)


class TestTriple:
    def test_examples(self):
        # 9 = 3^2 = 1^2 + 8*1^2: b(2) counts (+-3, 0) and (+-1, +-1)
        assert sum(1 for x in range(-3, 4, 2) for y in range(-1, 2) if x * x + 8 * y * y == 9) == 6
        assert theta_triple(2) == ThetaConvolutionTriple(2, 6, 2)
        assert criteria_from_triple(theta_triple(2)) is ResidueClass.ODD
        assert theta_triple(0).a == 2
        assert theta_triple(1).a == 4

    @pytest.mark.parametrize("t,cls", [
        (ThetaConvolutionTriple(2, 2, 2), ResidueClass.ODD),
        (ThetaConvolutionTriple(4, 0, 0), ResidueClass.TWO_MOD_4),
        (ThetaConvolutionTriple(0, 0, 0), ResidueClass.ZERO_MOD_8),
        (ThetaConvolutionTriple(8, 0, 0), ResidueClass.FOUR_MOD_8),
    ])
    def test_criteria(self, t, cls):
        assert criteria_from_triple(t) is cls

    def test_a_even(self):
        with pytest.raises(ValueError):
            criteria_from_triple(ThetaConvolutionTriple(3, 0, 0))

    def test_series_vs_direct(self):
        ts = theta_triples_series(3000)
        assert all(ts[n] == theta_triple(n) for n in range(3001))
        assert all(t.a % 2 == 0 for t in ts)

    def test_criteria_vs_classify(self):
        ts = theta_triples_series(3000)
        assert all(criteria_from_triple(ts[n]) is classify(n) for n in range(3001))


def test_unconditioned_two_prime_reading_fails():
    # Reading case (4) without "p_i = 1 mod 4" would put 4n+1 = N^2 p1 p2 with
    # p_i = 3 mod 4 into FourMod8; the series says otherwise.
    vals = ped2_series(5000, Ring(8)).coeffs
    hits = []
    for n in range(5001):
        odd = [(p, e) for p, e in factorize(4 * n + 1).factors if e % 2]
        if len(odd) == 2 and all(p % 4 == 3 and e % 4 == 1 for p, e in odd):
            hits.append(n)
    assert hits
    assert all(vals[n] % 8 == 0 for n in hits)
