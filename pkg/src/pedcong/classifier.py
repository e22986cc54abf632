"""ped_{-2}(n) mod 8 from the factorization of 4n+1.

Write ``4n + 1 = N^2 M`` with M squarefree.  Then ped_{-2}(n) is

* odd                    if M = 1,
* 2 mod 4                if M = p and ord_p(4n+1) = 1 mod 4,
* 4 mod 8                if M = p and ord_p(4n+1) = 3 mod 8,
* 4 mod 8                if M = p1 p2, p_i = 1 mod 4, ord_{p_i}(4n+1) = 1 mod 4,
* 0 mod 8                otherwise.

The same four classes also follow from the theta counts a(n), b(n), c(n):
coefficients of q^{4n+1} in the two-sided odd-square theta series times
sum q^{4m^2}, sum q^{8m^2} and sum q^{16m^2}.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import isqrt

from .quadforms import MAX_INPUT, UnsupportedInput, factorize
from .series import series_mul
from .theta import ThetaSpec, progression_coefficients, theta_series


class ResidueClass(enum.Enum):
    ODD = "Odd"
    TWO_MOD_4 = "TwoMod4"
    FOUR_MOD_8 = "FourMod8"
    ZERO_MOD_8 = "ZeroMod8"

    def __str__(self):
        return self.value

    @classmethod
    def of_value(cls, v: int) -> "ResidueClass":
        """Class of an integer (or of its residue mod 8)."""
        v = int(v) % 8
        if v % 2:
            return cls.ODD
        if v % 4 == 2:
            return cls.TWO_MOD_4
        return cls.FOUR_MOD_8 if v == 4 else cls.ZERO_MOD_8

    def contains(self, v: int) -> bool:
        return ResidueClass.of_value(v) is self


def classify(n: int) -> ResidueClass:
    """Residue class of ped_{-2}(n) mod 8.

    >>> classify(2), classify(3), classify(5)
    (<ResidueClass.ODD: 'Odd'>, <ResidueClass.TWO_MOD_4: 'TwoMod4'>, <ResidueClass.ZERO_MOD_8: 'ZeroMod8'>)
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    k = 4 * n + 1
    if k > MAX_INPUT:
        raise UnsupportedInput(f"4n+1 = {k} exceeds 2**63")
    odd_exp = [(p, e) for p, e in factorize(k).factors if e % 2]
    if not odd_exp:
        return ResidueClass.ODD
    if len(odd_exp) == 1:
        _, e = odd_exp[0]
        if e % 4 == 1:
            return ResidueClass.TWO_MOD_4
        if e % 8 == 3:
            return ResidueClass.FOUR_MOD_8
        return ResidueClass.ZERO_MOD_8
    if len(odd_exp) == 2 and all(p % 4 == 1 and e % 4 == 1 for p, e in odd_exp):
        return ResidueClass.FOUR_MOD_8
    return ResidueClass.ZERO_MOD_8


@dataclass(frozen=True)
class ThetaConvolutionTriple:
    a: int
    b: int
    c: int


def _direct_count(k: int, lattice: int) -> int:
    # pairs (x odd, y) in Z^2 with x^2 + lattice*y^2 = k
    total = 0
    for y in range(isqrt(k // lattice) + 1):
        r = k - lattice * y * y
        x = isqrt(r)
        if x * x == r and x % 2 == 1:
            total += 2 if y == 0 else 4
    return total


def theta_triple(n: int) -> ThetaConvolutionTriple:
    """a(n), b(n), c(n) by direct counting of ``4n+1 = x^2 + {4,8,16} y^2``, x odd."""
    k = 4 * n + 1
    return ThetaConvolutionTriple(_direct_count(k, 4), _direct_count(k, 8), _direct_count(k, 16))


def theta_triples_series(n_max: int) -> list[ThetaConvolutionTriple]:
    """Same triples for ``0..n_max`` read off the theta products."""
    order = 4 * n_max + 1
    odd = theta_series(ThetaSpec.odd_squares(two_sided=True), order)
    cols = []
    for a in (4, 8, 16):
        prod = series_mul(odd, theta_series(ThetaSpec.even_lattice(a), order))
        cols.append(progression_coefficients(prod, 4, 1))
    return [ThetaConvolutionTriple(int(a), int(b), int(c)) for a, b, c in zip(*cols)]


def criteria_from_triple(t: ThetaConvolutionTriple) -> ResidueClass:
    """Four-way class from ``a/2 + b - c``.

    >>> criteria_from_triple(ThetaConvolutionTriple(4, 0, 0))
    <ResidueClass.TWO_MOD_4: 'TwoMod4'>
    """
    if t.a % 2:
        raise ValueError("a(n) is always even")
    half = t.a // 2
    if half % 2:
        return ResidueClass.ODD
    s = half + t.b - t.c
    if s % 4 == 2:
        return ResidueClass.TWO_MOD_4
    if s % 8 == 4:
        return ResidueClass.FOUR_MOD_8
    return ResidueClass.ZERO_MOD_8


def classify_range(n_max: int) -> list[ResidueClass]:
    return [classify(n) for n in range(n_max + 1)]


def mismatches_against(values, n_max: int | None = None) -> list[int]:
    """Indices where ``classify(n)`` disagrees with the residue in ``values``."""
    n_max = len(values) - 1 if n_max is None else n_max
    return [n for n in range(n_max + 1) if not classify(n).contains(int(values[n]))]
